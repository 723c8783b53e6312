#include "ltl/metrics.hpp"

#include "lexer.hpp"
#include "ltl/rules.hpp"
#include "ltl/xml_io.hpp"

#include <cmath>
#include <vector>

namespace ltl {

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

void tally(std::map<std::string, std::size_t>& m, const std::string& key) { ++m[key]; }

bool is_path_keyword(const std::string& s)
{
    return s == "child" || s == "descendant" || s == "last" || s == "count" || s == "lvl";
}

TokenCounts census_ltl(std::string_view script)
{
    // Syntax check first so that the census only runs on loadable scripts.
    parse_rules(script);

    TokenCounts c;
    Lexer lx(script);

    // Bracket stack of '(' / '['; `path_depth` is the depth of the transform/2
    // call whose first argument is a path.
    std::vector<char> stack;
    bool in_body = false;
    bool in_path = false;
    std::size_t path_depth = 0;

    while (lx.peek().kind != Tok::end) {
        const Token t = lx.next();
        switch (t.kind) {
        case Tok::atom:
        case Tok::qatom:
            if (lx.peek().kind == Tok::lparen && lx.adjacent()) {
                tally(c.operators, t.text);
                if (t.text == "transform" && in_body) {
                    in_path = true;
                    path_depth = stack.size() + 1;
                }
            } else if (in_path && t.kind == Tok::atom && is_path_keyword(t.text)) {
                tally(c.operators, t.text);
            } else {
                tally(c.operands, t.text);
            }
            break;
        case Tok::var:
        case Tok::anon:
        case Tok::integer:
            tally(c.operands, t.text);
            break;
        case Tok::string:
            tally(c.operands, "\"" + t.text + "\"");
            break;
        case Tok::hash_index:
            tally(c.operators, "#");
            tally(c.operands, t.text.substr(1));
            break;
        case Tok::slash:
        case Tok::dslash:
        case Tok::at:
            tally(c.operators, t.text);
            if (in_path) {
                if (t.kind == Tok::dslash && lx.raw_next_char() == '*') {
                    lx.next();
                    tally(c.operands, "*");
                } else if (t.kind == Tok::slash && lx.raw_next_char() == '#') {
                    // "/#" is the text step; the '#' is counted on its own.
                } else {
                    tally(c.operands, lx.read_xml_name());
                }
            }
            break;
        case Tok::hash:
        case Tok::question:
        case Tok::neck:
        case Tok::eq:
            tally(c.operators, t.text);
            if (t.kind == Tok::neck)
                in_body = true;
            break;
        case Tok::star:
            tally(c.operands, "*");
            break;
        case Tok::lbrack:
            tally(c.operators, "[]");
            stack.push_back('[');
            break;
        case Tok::lparen:
            stack.push_back('(');
            break;
        case Tok::rbrack:
        case Tok::rparen:
            if (!stack.empty())
                stack.pop_back();
            if (in_path && stack.size() < path_depth)
                in_path = false;
            break;
        case Tok::comma:
            if (in_path && stack.size() == path_depth)
                in_path = false;
            if (in_body && stack.empty())
                tally(c.operators, ",");
            break;
        case Tok::dot:
            in_body = false;
            in_path = false;
            stack.clear();
            break;
        case Tok::end:
            break;
        }
    }
    return c;
}

void census_xslt_node(const Node& n, TokenCounts& c)
{
    if (!n.is_element())
        return;
    tally(c.operators, n.name());
    for (const auto& a : n.attributes())
        tally(c.operands, a.value);
    for (const auto& child : n.children())
        census_xslt_node(child, c);
}

double ld_term(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace

TokenCounts count_tokens(std::string_view script, Dialect dialect)
{
    TokenCounts c;
    if (dialect == Dialect::ltl) {
        c = census_ltl(script);
    } else {
        bool blank = script.find_first_not_of(" \t\r\n") == std::string_view::npos;
        if (!blank)
            census_xslt_node(parse_xml(script), c);
    }
    c.eta1 = c.operators.size();
    c.eta2 = c.operands.size();
    for (const auto& [k, v] : c.operators)
        c.n1_total += v;
    for (const auto& [k, v] : c.operands)
        c.n2_total += v;
    return c;
}

MetricsReport compute_metrics(const TokenCounts& counts)
{
    MetricsReport r;
    r.counts = counts;
    const double eta1 = static_cast<double>(counts.eta1);
    const double eta2 = static_cast<double>(counts.eta2);
    r.length = static_cast<double>(counts.n1_total + counts.n2_total);
    r.theoretical_length = ld_term(eta1) + ld_term(eta2);
    r.vocabulary = eta1 + eta2;
    r.volume = r.vocabulary > 0 ? r.length * std::log2(r.vocabulary) : 0.0;
    r.level = (counts.eta1 > 0 && counts.n2_total > 0) ? (2.0 / eta1) * (eta2 / static_cast<double>(counts.n2_total))
                                                      : 0.0;
    r.abstraction = r.volume * r.level;
    r.length_delta = std::fabs(r.theoretical_length - r.length);
    return r;
}

}  // namespace ltl
