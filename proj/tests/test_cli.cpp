// Runs the ltl binary through the shell and checks output and exit codes.

#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run sh(const std::string& args, const std::string& stdin_text = "")
{
    namespace fs = std::filesystem;
    static int counter = 0;
    fs::path in = fs::temp_directory_path() / ("ltl_cli_in_" + std::to_string(counter++));
    std::ofstream(in, std::ios::binary) << stdin_text;
    std::string cmd = std::string("'") + LTL_CLI + "' " + args + " < '" + in.string() + "' 2>/dev/null";
    Run r{0, {}};
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    fs::remove(in);
    return r;
}

std::string write_temp(const std::string& name, const std::string& content)
{
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
}

const std::string kRules =
    "template(element(top,_,[A,A]),[text(T)]):-\n"
    "   A=element(a,_,_),transform(A//p#1,T).\n";
const std::string kTop = "<top><a><q><p>w</p></q><p>z</p></a><a><q><p>w</p></q><p>z</p></a></top>";

}  // namespace

TEST_CASE("canon")
{
    auto r = sh("canon", "<a z=\"1\" b=\"2\"/>");
    CHECK(r.code == 0);
    CHECK(r.out == "<a b=\"2\" z=\"1\"/>\n");
    CHECK(sh("canon", r.out).out == r.out);
    CHECK(sh("canon --xml-decl", "<a/>").out == "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<a/>\n");
    CHECK(sh("canon", "<a><b></a>").code == 1);
    CHECK(sh("canon", "<a x='1' x='2'/>").code == 1);
    CHECK(sh("canon /nonexistent/file.xml").code == 1);
}

TEST_CASE("encode and decode")
{
    const std::string doc = "<a k=\"v\"><!--c--><b><?p d?></b>t</a>";
    auto enc = sh("encode", doc);
    CHECK(enc.code == 0);
    CHECK(enc.out.find("<!--") == std::string::npos);
    auto dec = sh("decode", enc.out);
    CHECK(dec.code == 0);
    CHECK(dec.out == doc + "\n");

    CHECK(sh("encode --sentinels 3C0,3BA,3C9", doc).out.find("\xCF\x89" "v") != std::string::npos);
    CHECK(sh("encode --sentinels E000,E000,E001", doc).code == 2);
    CHECK(sh("encode", "<a>\xEE\x80\x80</a>").code == 1);
}

TEST_CASE("query")
{
    auto r = sh("query -p '//p#1/#'", kTop);
    CHECK(r.code == 0);
    CHECK(r.out == "w\n");
    CHECK(sh("query -p '//p' --all-solutions", kTop).out == "<p>w</p>\n<p>z</p>\n<p>w</p>\n<p>z</p>\n");
    CHECK(sh("query -p count", kTop).out == "2\n");
    CHECK(sh("query -p '//nothing'", kTop).out.empty());
    CHECK(sh("query -p '#0'", kTop).code == 1);
    CHECK(sh("query", kTop).code == 2);
}

TEST_CASE("transform")
{
    auto rules = write_temp("ltl_cli_rules.ltl", kRules);
    auto r = sh("transform -r '" + rules + "'", kTop);
    CHECK(r.code == 3);
    CHECK(r.out == "w\n");
    r = sh("transform --wrap out -r '" + rules + "'", kTop);
    CHECK(r.code == 0);
    CHECK(r.out == "<out>w</out>\n");

    auto copy = write_temp("ltl_cli_copy.ltl", "template(element(top,_,C),[element(doc,[],R)]) :- template(C,R).\n");
    r = sh("transform --default-copy-text -r '" + copy + "'", "<top><x>1</x>2</top>");
    CHECK(r.code == 0);
    CHECK(r.out == "<doc>12</doc>\n");
    r = sh("transform -r '" + copy + "'", "<top><x>1</x>2</top>");
    CHECK(r.out == "<doc/>\n");

    auto out = std::filesystem::temp_directory_path() / "ltl_cli_out.xml";
    CHECK(sh("transform -r '" + copy + "' -o '" + out.string() + "'", "<top/>").code == 0);
    std::ifstream in(out);
    std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(written == "<doc/>\n");

    auto broken = write_temp("ltl_cli_broken.ltl", "template(element(a,_,_),[text(T)]).\n");
    CHECK(sh("transform -r '" + broken + "'", "<a/>").code == 1);
}

TEST_CASE("metrics")
{
    auto script = write_temp("ltl_cli_id.ltl", "template(text(X),[text(X)]).\n");
    auto r = sh("metrics --kv '" + script + "'");
    CHECK(r.code == 0);
    CHECK(r.out.find("eta1=3\n") != std::string::npos);
    CHECK(r.out.find("N2=2\n") != std::string::npos);
    r = sh("metrics '" + script + "'");
    CHECK(r.out.rfind("# census:", 0) == 0);
    CHECK(sh("metrics --dialect xslt", "<xsl:stylesheet><xsl:template match=\"/\"/></xsl:stylesheet>").code == 0);
    CHECK(sh("metrics --dialect cobol", "").code == 2);
}

TEST_CASE("relalg")
{
    auto facts = write_temp("ltl_cli_facts.ltl", "r(1,a).\nr(2,b).\ns(2,b).\n");
    auto r = sh("relalg -r '" + facts + "' -e 'difference(r,s)'");
    CHECK(r.code == 0);
    CHECK(r.out == "t(1,a).\n");
    CHECK(sh("relalg -r '" + facts + "' -e 'union(r,s)'").out == "t(1,a).\nt(2,b).\n");
    CHECK(sh("relalg -r '" + facts + "' -e 'project(r,[9])'").code == 1);
}

TEST_CASE("usage errors")
{
    CHECK(sh("").code == 2);
    CHECK(sh("frobnicate").code == 2);
    CHECK(sh("--help").code == 0);
}

TEST_CASE("corpus transforms are deterministic")
{
    for (const auto& entry : std::filesystem::directory_iterator(LTL_CORPUS)) {
        if (entry.path().extension() != ".ltl")
            continue;
        auto xml = entry.path();
        xml.replace_extension(".xml");
        if (!std::filesystem::exists(xml))
            continue;
        std::string cmd = "transform -r '" + entry.path().string() + "' '" + xml.string() + "'";
        auto a = sh(cmd);
        auto b = sh(cmd);
        CHECK(a.code != 1);
        CHECK(a.out == b.out);
        CHECK(a.code == b.code);

        auto expected_path = xml;
        expected_path.replace_extension(".out");
        std::ifstream in(expected_path, std::ios::binary);
        REQUIRE(in);
        std::string expected((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK_MESSAGE(a.out == expected, xml.string());
    }
}
