#include "ltl/error.hpp"
#include "ltl/metrics.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ltl;

namespace {

TokenCounts counts(std::size_t eta1, std::size_t eta2, std::size_t n1, std::size_t n2)
{
    TokenCounts c;
    c.eta1 = eta1;
    c.eta2 = eta2;
    c.n1_total = n1;
    c.n2_total = n2;
    return c;
}

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace

TEST_CASE("closed-form examples")
{
    auto m = compute_metrics(counts(2, 2, 2, 2));
    CHECK(m.theoretical_length == 4.0);
    CHECK(m.length == 4.0);
    CHECK(m.vocabulary == 4.0);
    CHECK(m.volume == 8.0);

    m = compute_metrics(counts(10, 8, 20, 13));
    CHECK(std::fabs(m.theoretical_length - 57.2192809488736) < 1e-9);
    CHECK(std::fabs(m.length_delta - std::fabs(57.2192809488736 - 33.0)) < 1e-9);
    CHECK(std::fabs(m.level - (2.0 / 10.0) * (8.0 / 13.0)) < 1e-12);
    CHECK(std::fabs(m.abstraction - m.volume * m.level) < 1e-12);

    m = compute_metrics(TokenCounts{});
    CHECK(m.theoretical_length == 0.0);
    CHECK(m.volume == 0.0);
    CHECK(m.level == 0.0);
    CHECK(m.length_delta == 0.0);
}

TEST_CASE("formulas hold on random counts")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> d(0, 60);
    for (int k = 0; k < 1000; ++k) {
        std::size_t e1 = d(rng), e2 = d(rng);
        std::size_t n1 = e1 + d(rng), n2 = e2 + d(rng);
        auto m = compute_metrics(counts(e1, e2, n1, n2));
        double N = static_cast<double>(n1 + n2);
        double nt = xlog2x(static_cast<double>(e1)) + xlog2x(static_cast<double>(e2));
        double eta = static_cast<double>(e1 + e2);
        CHECK(m.length == N);
        CHECK(std::fabs(m.theoretical_length - nt) < 1e-9);
        CHECK(std::fabs(m.length_delta - std::fabs(nt - N)) < 1e-9);
        CHECK(std::fabs(m.volume - (eta > 0 ? N * std::log2(eta) : 0.0)) < 1e-9);
        double L = (e1 > 0 && n2 > 0) ? (2.0 / static_cast<double>(e1)) * (static_cast<double>(e2) / static_cast<double>(n2)) : 0.0;
        CHECK(std::fabs(m.level - L) < 1e-12);

        auto bigger = compute_metrics(counts(e1 + 1, e2, n1 + 1, n2));
        CHECK(bigger.theoretical_length >= m.theoretical_length);
    }
}

TEST_CASE("census of the identity rule")
{
    auto c = count_tokens("template(text(X),[text(X)]).", Dialect::ltl);
    CHECK(c.eta1 == 3);
    CHECK(c.n1_total == 4);
    CHECK(c.eta2 == 1);
    CHECK(c.n2_total == 2);
    CHECK(c.operators.at("template") == 1);
    CHECK(c.operators.at("text") == 2);
    CHECK(c.operators.at("[]") == 1);
    CHECK(c.operands.at("X") == 2);

    auto empty = count_tokens("", Dialect::ltl);
    CHECK(empty.eta1 == 0);
    CHECK(empty.eta2 == 0);
    CHECK(empty.n1_total == 0);
    CHECK(empty.n2_total == 0);
}

TEST_CASE("census of the top rule")
{
    const char* top =
        "template(element(top,_,[A,A]),[text(T)]):-\n"
        "   A=element(a,_,_),transform(A//p#1,T).\n";
    auto c = count_tokens(top, Dialect::ltl);
    auto id = count_tokens("template(text(X),[text(X)]).", Dialect::ltl);
    CHECK(c.eta1 > id.eta1);
    // template element text transform [] :- = , // #
    CHECK(c.eta1 == 10);
    CHECK(c.operators.at(":-") == 1);
    CHECK(c.operators.at(",") == 1);
    CHECK(c.operators.at("//") == 1);
    CHECK(c.operators.at("#") == 1);
    CHECK(c.operators.at("element") == 2);
    CHECK(c.operators.at("[]") == 2);
    // A x4, T x2, _ x3, top, a, p, 1
    CHECK(c.operands.at("A") == 4);
    CHECK(c.operands.at("_") == 3);
    CHECK(c.operands.at("p") == 1);
    CHECK(c.operands.at("1") == 1);
    CHECK(c.eta2 == 7);
    CHECK(c.n2_total == 13);
}

TEST_CASE("census is stable under whitespace and comments")
{
    auto a = count_tokens("template(element(b,_,C),[element(c,[],R)]) :- template(C,R).", Dialect::ltl);
    auto b = count_tokens(
        "% heading\n"
        "template( element(b, _, C),\n"
        "          [ element(c, [], R) ] )   % trailing\n"
        "   :-  template(C, R) .\n",
        Dialect::ltl);
    CHECK(a.operators == b.operators);
    CHECK(a.operands == b.operands);
    CHECK(a.n1_total == b.n1_total);
}

TEST_CASE("census rejects scripts that do not parse")
{
    CHECK_THROWS_AS(count_tokens("template(text(X),[text(X)])", Dialect::ltl), Error);
    CHECK_THROWS_AS(count_tokens("<xsl:template", Dialect::xslt), Error);
}

TEST_CASE("xslt dialect counts tags and attribute values")
{
    const char* xsl =
        "<xsl:stylesheet version=\"1.0\" xmlns:xsl=\"http://www.w3.org/1999/XSL/Transform\">"
        "<xsl:template match=\"top[a[1]=a[2]]\"><xsl:value-of select=\"a//p[1]\"/></xsl:template>"
        "</xsl:stylesheet>";
    auto c = count_tokens(xsl, Dialect::xslt);
    CHECK(c.eta1 == 3);
    CHECK(c.n1_total == 3);
    CHECK(c.eta2 == 4);
    CHECK(c.n2_total == 4);
    CHECK(c.operands.count("a//p[1]") == 1);
}
