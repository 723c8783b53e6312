// Command-line front end over the C interface.
//
// Exit codes: 0 success, 1 parse/load/evaluation error, 2 usage error,
// 3 transform output that is not a single element.

#include "ltl/ltl.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotWellFormed = 3;

struct Failure {
    int code;
};

struct DocDeleter {
    void operator()(ltl_document* d) const { ltl_document_free(d); }
};
struct RulesDeleter {
    void operator()(ltl_ruleset* r) const { ltl_ruleset_free(r); }
};
struct ResultsDeleter {
    void operator()(ltl_results* r) const { ltl_results_free(r); }
};
using DocPtr = std::unique_ptr<ltl_document, DocDeleter>;
using RulesPtr = std::unique_ptr<ltl_ruleset, RulesDeleter>;
using ResultsPtr = std::unique_ptr<ltl_results, ResultsDeleter>;

std::string take_string(char* s)
{
    std::string out = s ? s : "";
    ltl_string_free(s);
    return out;
}

// Prints "file:line:col: Kind: message" and aborts the subcommand.
void check(ltl_status st, const std::string& origin)
{
    if (st == LTL_OK)
        return;
    std::cerr << "ltl: ";
    if (!origin.empty())
        std::cerr << origin << ':';
    if (ltl_last_error_line() > 0)
        std::cerr << ltl_last_error_line() << ':' << ltl_last_error_column() << ':';
    std::cerr << (origin.empty() && ltl_last_error_line() == 0 ? "" : " ") << ltl_status_name(st) << ": "
              << ltl_last_error() << '\n';
    throw Failure{st == LTL_ERR_INVALID_ARGUMENT ? kExitUsage : kExitError};
}

std::string read_input(const std::string& path)
{
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "ltl: cannot read " << path << '\n';
        throw Failure{kExitError};
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string origin_name(const std::string& path) { return path.empty() || path == "-" ? "<stdin>" : path; }

void write_output(const std::string& text, const std::string& path)
{
    std::string body = text;
    if (!body.empty() && body.back() != '\n')
        body += '\n';
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << body)) {
        std::cerr << "ltl: cannot write " << path << '\n';
        throw Failure{kExitError};
    }
}

DocPtr load_document(const std::string& path)
{
    std::string xml = read_input(path);
    ltl_document* doc = nullptr;
    check(ltl_document_parse(xml.data(), xml.size(), &doc), origin_name(path));
    return DocPtr(doc);
}

std::string serialize(const ltl_document* doc, bool xml_decl)
{
    char* out = nullptr;
    check(ltl_document_serialize(doc, xml_decl ? 1 : 0, &out), "");
    return take_string(out);
}

ltl_sentinels resolve_sentinels(const std::string& flag)
{
    ltl_sentinels s;
    ltl_sentinels_default(&s);
    std::string text = flag;
    if (text.empty()) {
        if (const char* env = std::getenv("LTL_SENTINELS"))
            text = env;
    }
    if (!text.empty())
        check(ltl_sentinels_parse(text.c_str(), &s), "");
    return s;
}

struct Options {
    std::string input;
    std::string output;
    std::string sentinels;
    std::string path;
    std::string rules;
    std::string expression;
    std::string dialect = "ltl";
    std::string wrap;
    bool all_solutions = false;
    bool default_copy_text = false;
    bool no_text_coercion = false;
    bool xml_decl = false;
    bool kv = false;
};

int run_canon(const Options& o)
{
    DocPtr doc = load_document(o.input);
    ltl_document* canon = nullptr;
    check(ltl_document_canonicalize(doc.get(), &canon), origin_name(o.input));
    DocPtr owned(canon);
    write_output(serialize(owned.get(), o.xml_decl), o.output);
    return 0;
}

int run_encode(const Options& o, bool encode)
{
    ltl_sentinels s = resolve_sentinels(o.sentinels);
    DocPtr doc = load_document(o.input);
    ltl_document* result = nullptr;
    auto fn = encode ? ltl_document_encode : ltl_document_decode;
    check(fn(doc.get(), &s, &result), origin_name(o.input));
    DocPtr owned(result);
    write_output(serialize(owned.get(), o.xml_decl), o.output);
    return 0;
}

int run_query(const Options& o)
{
    DocPtr doc = load_document(o.input);
    ltl_results* raw = nullptr;
    check(ltl_query(doc.get(), o.path.c_str(), o.all_solutions ? LTL_ALL_SOLUTIONS : LTL_FIRST_ONLY, &raw), "path");
    ResultsPtr results(raw);
    std::string text;
    for (std::size_t i = 0; i < ltl_results_count(results.get()); ++i) {
        text += ltl_results_text(results.get(), i);
        text += '\n';
    }
    if (!text.empty())
        write_output(text, o.output);
    return 0;
}

int run_transform(const Options& o)
{
    std::string source = read_input(o.rules);
    ltl_ruleset* raw = nullptr;
    check(ltl_ruleset_load(source.data(), source.size(), &raw), o.rules);
    RulesPtr rules(raw);
    DocPtr doc = load_document(o.input);

    ltl_transform_options opts;
    ltl_transform_options_init(&opts);
    opts.mode = o.all_solutions ? LTL_ALL_SOLUTIONS : LTL_FIRST_ONLY;
    opts.default_copy_text = o.default_copy_text ? 1 : 0;
    opts.text_coercion = o.no_text_coercion ? 0 : 1;
    opts.wrap_root = o.wrap.empty() ? nullptr : o.wrap.c_str();
    opts.xml_declaration = o.xml_decl ? 1 : 0;

    char* out = nullptr;
    int well_formed = 0;
    check(ltl_transform(rules.get(), doc.get(), &opts, &out, &well_formed), origin_name(o.input));
    write_output(take_string(out), o.output);
    if (well_formed || !o.wrap.empty())
        return 0;
    std::cerr << "ltl: output is not a single element\n";
    return kExitNotWellFormed;
}

int run_metrics(const Options& o)
{
    std::string script = read_input(o.input);
    ltl_metrics m;
    ltl_dialect d = o.dialect == "xslt" ? LTL_DIALECT_XSLT : LTL_DIALECT_LTL;
    check(ltl_metrics_compute(script.data(), script.size(), d, &m), origin_name(o.input));

    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    if (o.kv) {
        out << "dialect=" << o.dialect << '\n'
            << "eta1=" << m.eta1 << "\neta2=" << m.eta2 << "\nN1=" << m.n1_total << "\nN2=" << m.n2_total << '\n'
            << "N=" << m.length << "\nN_T=" << m.theoretical_length << "\neta=" << m.vocabulary << '\n'
            << "V=" << m.volume << "\nL=" << m.level << "\nlambda=" << m.abstraction
            << "\ndelta_N=" << m.length_delta << '\n';
    } else {
        if (d == LTL_DIALECT_LTL) {
            out << "# census: operators = functors, path steps, ':-', goal ',', '=', '[]';"
                   " operands = variables, '_', atoms, numbers, strings\n";
        } else {
            out << "# census: operators = element tag names; operands = attribute values\n";
        }
        out << "operators (eta1)       " << m.eta1 << '\n'
            << "operands (eta2)        " << m.eta2 << '\n'
            << "operator total (N1)    " << m.n1_total << '\n'
            << "operand total (N2)     " << m.n2_total << '\n'
            << "length N               " << m.length << '\n'
            << "theoretical length N_T " << m.theoretical_length << '\n'
            << "vocabulary eta         " << m.vocabulary << '\n'
            << "volume V               " << m.volume << '\n'
            << "level L                " << m.level << '\n'
            << "abstraction lambda     " << m.abstraction << '\n'
            << "delta_N                " << m.length_delta << '\n';
    }
    write_output(out.str(), o.output);
    return 0;
}

int run_relalg(const Options& o)
{
    std::string facts = read_input(o.rules);
    char* out = nullptr;
    check(ltl_relalg_eval(facts.data(), facts.size(), o.expression.c_str(), &out), o.rules);
    std::string text = take_string(out);
    if (!text.empty())
        write_output(text, o.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Logic-based XML transformation"};
    app.set_version_flag("--version", std::string(ltl_version()));
    app.require_subcommand(1);
    Options o;

    auto input = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", o.input, what)->option_text("FILE");
    };
    auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Write to FILE instead of stdout"); };

    auto* canon = app.add_subcommand("canon", "Sort attributes and reserialize");
    input(canon, "XML input (default stdin)");
    output(canon);
    canon->add_flag("--xml-decl", o.xml_decl, "Emit an XML declaration");

    auto* encode = app.add_subcommand("encode", "Rewrite PIs, comments and attributes as elements and text");
    auto* decode = app.add_subcommand("decode", "Invert encode");
    for (auto* sub : {encode, decode}) {
        input(sub, "XML input (default stdin)");
        output(sub);
        sub->add_option("--sentinels", o.sentinels, "PI,comment,attribute marks as hex code points (E000,E001,E002)")
            ->envname("LTL_SENTINELS");
        sub->add_flag("--xml-decl", o.xml_decl, "Emit an XML declaration");
    }

    auto* query = app.add_subcommand("query", "Evaluate a path expression from the root");
    query->add_option("-p,--path", o.path, "Path expression, e.g. //p#1/#")->required();
    input(query, "XML input (default stdin)");
    output(query);
    query->add_flag("--all-solutions", o.all_solutions, "Print every result instead of the first");

    auto* transform = app.add_subcommand("transform", "Apply a rule file to a document");
    transform->add_option("-r,--rules", o.rules, "Rule file")->required();
    input(transform, "XML input (default stdin)");
    output(transform);
    transform->add_flag("--all-solutions", o.all_solutions, "Emit output for every goal solution");
    transform->add_flag("--default-copy-text", o.default_copy_text, "Copy unmatched text nodes");
    transform->add_flag("--no-text-coercion", o.no_text_coercion, "Do not read element text through #");
    transform->add_option("--wrap", o.wrap, "Wrap output that is not a single element in NAME");
    transform->add_flag("--xml-decl", o.xml_decl, "Emit an XML declaration");

    auto* metrics = app.add_subcommand("metrics", "Halstead metrics of a rule file or stylesheet");
    input(metrics, "Script (default stdin)");
    output(metrics);
    metrics->add_option("--dialect", o.dialect, "ltl or xslt")->check(CLI::IsMember({"ltl", "xslt"}));
    metrics->add_flag("--kv", o.kv, "key=value output");

    auto* relalg = app.add_subcommand("relalg", "Evaluate a relational operator expression over fact clauses");
    relalg->add_option("-r,--rules", o.rules, "File with fact clauses")->required();
    relalg->add_option("-e,--expr", o.expression, "Expression, e.g. difference(r,s)")->required();
    output(relalg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*canon)
            return run_canon(o);
        if (*encode)
            return run_encode(o, true);
        if (*decode)
            return run_encode(o, false);
        if (*query)
            return run_query(o);
        if (*transform)
            return run_transform(o);
        if (*metrics)
            return run_metrics(o);
        if (*relalg)
            return run_relalg(o);
    } catch (const Failure& f) {
        return f.code;
    }
    return kExitUsage;
}
