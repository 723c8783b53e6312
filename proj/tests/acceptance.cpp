// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include "ltl/error.hpp"
#include "ltl/metrics.hpp"
#include "ltl/node.hpp"
#include "ltl/query.hpp"
#include "ltl/relalg.hpp"
#include "ltl/rules.hpp"
#include "ltl/term.hpp"
#include "ltl/xml_io.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

using namespace ltl;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail)
{
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!ok)
        ++failures;
}

// Runs a criterion; an escaping exception is a failure.
void criterion(const std::string& name, const std::function<bool(std::ostringstream&)>& body)
{
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << " exception: " << e.what();
    }
    report(ok, name, detail.str());
}

Node el(std::string name, std::vector<Attribute> attrs = {}, Hedge kids = {})
{
    return Node::element(std::move(name), std::move(attrs), std::move(kids));
}
Node tx(std::string s) { return Node::text(std::move(s)); }

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool worked_example(std::ostringstream& d)
{
    auto start = std::chrono::steady_clock::now();
    RuleSet rs = parse_rules(
        "template(element(top,_,[A,A]),[text(T)]):-\n"
        "   A=element(a,_,_),transform(A//p#1,T).\n");
    auto a_child = [](const char* word) {
        return el("a", {}, {el("q", {}, {el("p", {}, {tx(word)})}), el("p", {}, {tx("other")})});
    };
    Hedge good = apply_templates(rs, el("top", {}, {a_child("w"), a_child("w")}));
    Hedge mutated = apply_templates(rs, el("top", {}, {a_child("w"), a_child("v")}));
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool ok = good == Hedge{tx("w")} && mutated.empty() && ms < 1000.0;
    d << "output " << serialize(good) << ", mutated output size " << mutated.size() << ", " << ms << " ms";
    return ok;
}

bool round_trips(std::ostringstream& d)
{
    testing::DocumentGenerator gen(2024, 6, 40);
    std::size_t bad_xml = 0, bad_core = 0, not_core = 0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        Node doc = gen.document();
        if (!(parse_xml(serialize(doc)) == doc))
            ++bad_xml;
        Node enc = encode_core(doc);
        if (!(decode_core(enc) == doc))
            ++bad_core;
        // Independent traversal: only elements without attributes and text.
        for (const auto& v : testing::preorder_oracle(enc)) {
            if (!(v.is_text() || (v.is_element() && v.attributes().empty())))
                ++not_core;
        }
    }
    d << n << " documents; parse.serialize failures " << bad_xml << ", decode.encode failures " << bad_core
      << ", non-core nodes " << not_core;
    return bad_xml == 0 && bad_core == 0 && not_core == 0;
}

using TupleSet = std::set<Tuple>;

bool oracle_equivalence(std::ostringstream& d)
{
    testing::DocumentGenerator gen(77);
    std::size_t doc_mismatch = 0;
    const int docs = 500;
    for (int i = 0; i < docs; ++i) {
        Node doc = gen.document();
        for (const char* name : {"a", "b", "p", "item", "x:y", "*"}) {
            std::vector<Node> expected;
            for (const auto& v : testing::preorder_oracle(doc)) {
                if (v.is_element() && (std::string(name) == "*" || v.name() == name))
                    expected.push_back(v);
            }
            if (descendant_or_self_by_name(doc, name).collect() != expected)
                ++doc_mismatch;
        }
    }

    std::mt19937 rng(78);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto scalar = [&]() -> Scalar {
        switch (pick(0, 2)) {
        case 0: return Scalar::integer(pick(0, 3));
        case 1: return Scalar::atom(pick(0, 1) ? "a" : "b");
        default: return Scalar::string(pick(0, 1) ? "s" : "t u");
        }
    };
    auto relation = [&](std::size_t arity) {
        Relation r("r", arity);
        for (int k = pick(0, 5); k > 0; --k) {
            Tuple t;
            for (std::size_t c = 0; c < arity; ++c)
                t.push_back(scalar());
            r.insert(t);
        }
        return r;
    };
    std::size_t rel_mismatch = 0;
    const int pairs = 200;
    for (int i = 0; i < pairs; ++i) {
        std::size_t arity = static_cast<std::size_t>(pick(1, 3));
        Relation r = relation(arity), s = relation(arity);
        Relation q = relation(static_cast<std::size_t>(pick(1, 3)));
        const TupleSet &R = r.tuples(), &S = s.tuples(), &Q = q.tuples();

        TupleSet uni = R, diff, inter, prod, proj;
        uni.insert(S.begin(), S.end());
        for (const auto& t : R) {
            (S.count(t) ? inter : diff).insert(t);
            for (const auto& u : Q) {
                Tuple w = t;
                w.insert(w.end(), u.begin(), u.end());
                prod.insert(w);
            }
        }
        std::vector<std::size_t> cols;
        for (int c = pick(1, 3); c > 0; --c)
            cols.push_back(static_cast<std::size_t>(pick(1, static_cast<int>(arity))));
        for (const auto& t : R) {
            Tuple w;
            for (auto c : cols)
                w.push_back(t[c - 1]);
            proj.insert(w);
        }
        bool ok = union_of(r, s).tuples() == uni && difference(r, s).tuples() == diff
               && select(r, s).tuples() == inter && cartesian(r, q).tuples() == prod
               && project(r, cols).tuples() == proj && rename(r, "z").tuples() == R
               && rename(r, "z").name() == "z";
        if (!ok)
            ++rel_mismatch;
    }
    d << docs << " documents x 6 names, " << doc_mismatch << " mismatches; " << pairs
      << " relation pairs x 6 operators, " << rel_mismatch << " mismatches";
    return doc_mismatch == 0 && rel_mismatch == 0;
}

// Equal up to a bijective renaming of variables.
bool variant(const Term& x, const Term& y, std::map<std::string, std::string>& fwd,
             std::map<std::string, std::string>& back)
{
    if (x.is_var() && y.is_var()) {
        auto i = fwd.emplace(x.text(), y.text()).first;
        auto j = back.emplace(y.text(), x.text()).first;
        return i->second == y.text() && j->second == x.text();
    }
    if (x.kind() != y.kind() || x.text() != y.text() || x.value() != y.value() || x.args().size() != y.args().size())
        return false;
    for (std::size_t k = 0; k < x.args().size(); ++k) {
        if (!variant(x.args()[k], y.args()[k], fwd, back))
            return false;
    }
    return true;
}

bool unification_laws(std::ostringstream& d)
{
    testing::TermGenerator gen(4242);
    const int n = 10000;
    std::size_t unified = 0, unsound = 0, asymmetric = 0, not_idempotent = 0, occurs = 0, incomplete = 0;
    for (int i = 0; i < n; ++i) {
        std::size_t counter = 0;
        Term x = rename_anonymous(gen.term(4), counter);
        Term y = rename_anonymous(gen.term(4), counter);
        auto xy = unify(x, y);
        auto yx = unify(y, x);
        if (xy.has_value() != yx.has_value()) {
            ++asymmetric;
        } else if (xy) {
            ++unified;
            Term ax = apply_subst(*xy, x);
            if (!(ax == apply_subst(*xy, y)))
                ++unsound;
            if (!(apply_subst(*xy, ax) == ax))
                ++not_idempotent;
            std::map<std::string, std::string> fwd, back;
            if (!variant(ax, apply_subst(*yx, x), fwd, back))
                ++asymmetric;
        }

        // A variable never unifies with a compound containing it.
        std::vector<std::string> vars;
        y.collect_vars(vars);
        Term v = Term::var(vars.empty() ? "Occ" : vars.front());
        Term host = (y.is_var() || vars.empty()) ? Term::compound("g", {y, v}) : y;
        if (unify(v, host))
            ++occurs;

        // A pattern always unifies with its own ground instances.
        std::map<std::string, Term> chosen;
        if (!unify(x, gen.instance(x, chosen)))
            ++incomplete;
    }
    d << n << " pairs (" << unified << " unifiable); soundness " << unsound << ", symmetry " << asymmetric
      << ", idempotence " << not_idempotent << ", occurs check " << occurs << ", instance completeness "
      << incomplete << " violations";
    return unsound == 0 && asymmetric == 0 && not_idempotent == 0 && occurs == 0 && incomplete == 0
        && unified > 0;
}

bool operator_rules(std::ostringstream& d)
{
    using V = std::vector<Node>;
    using S = std::vector<std::string>;
    auto mismatch = [](const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind() == ErrorKind::type_mismatch;
        }
        return false;
    };
    auto b1 = el("b"), b2 = el("b", {{"c", "1"}});
    auto mixed = el("a", {}, {tx("x"), el("b")});
    auto rt = el("r", {}, {el("a"), el("b", {}, {tx("t")})});
    auto top = el("top", {}, {el("a"), el("b"), el("a")});
    std::vector<std::pair<const char*, bool>> rules{
        {"/", child_by_name(el("a", {}, {b1, tx("x"), b2}), "b").collect() == V{b1, b2}},
        {"// self", descendant_or_self_by_name(el("p"), "p").collect() == V{el("p")}},
        {"// fail on leaf", descendant_or_self_by_name(el("x"), "p").collect().empty()},
        {"// recursive",
         descendant_or_self_by_name(el("a", {}, {el("q", {}, {el("p", {}, {tx("h")})}), el("p", {}, {tx("w")})}), "p")
                 .collect()
             == V{el("p", {}, {tx("h")}), el("p", {}, {tx("w")})}},
        {"@", attr_value(el("a", {{"b", "1"}}), "b") == std::optional<std::string>("1")},
        {"@ fail on empty attributes", !attr_value(el("a"), "b")},
        {"id", attr_name_by_value(el("a", {{"b", "1"}}), "1").collect() == S{"b"}},
        {"id fail on empty attributes", attr_name_by_value(el("a"), "1").collect().empty()},
        {"#", text_value(tx("hello")) == std::optional<std::string>("hello")},
        {"?", pi_value(Node::pi("xml-stylesheet")) == std::optional<std::string>("xml-stylesheet")},
        {"child", children(mixed).collect() == V{tx("x"), el("b")}},
        {"descendant fail on leaf", descendants(el("a")).collect().empty()},
        {"descendant", descendants(el("a", {}, {el("b", {}, {tx("t")})})).collect() == V{el("b", {}, {tx("t")}), tx("t")}},
        {"/ on text", mismatch([] { child_by_name(tx("x"), "b"); })},
        {"last", last_child(mixed) == std::optional<Node>(el("b"))},
        {"count", count_children(mixed) == 2},
        {"lvl", lvl(rt, tx("t")).collect() == std::vector<IndexPath>{IndexPath{{2, 1}}}},
        {"copy", copy(el("a", {{"b", "1"}}, {tx("t")})) == el("a", {{"b", "1"}}, {tx("t")})},
        {"copy_of", copy_of(el("a", {{"b", "1"}}, {tx("t")})) == el("a", {{"b", "1"}})},
        {"remEl", rem_el(top, "a") == std::optional<Node>(el("top", {}, {el("b"), el("a")}))},
        {"rem", rem(el("top", {}, {tx("x"), tx("y"), tx("x")}), tx("x"))
                      == std::optional<Node>(el("top", {}, {tx("y"), tx("x")}))},
    };
    std::size_t passed = 0;
    std::string failed;
    for (const auto& [name, ok] : rules) {
        if (ok)
            ++passed;
        else
            failed += std::string(" [") + name + "]";
    }
    d << passed << "/" << rules.size() << " directed rule tests" << failed;
    return passed == rules.size();
}

bool one_step_manipulation(std::ostringstream& d)
{
    testing::DocumentGenerator gen(91);
    const int target = 500;
    int n = 0, rem_el_cases = 0, rem_cases = 0, bad = 0;
    while ((rem_el_cases < target || rem_cases < target) && n < 20 * target) {
        ++n;
        Node doc = gen.document();
        const auto& kids = doc.children();
        // Name of some element child when there is one, so most cases remove.
        std::string name = gen.name();
        for (const auto& c : kids) {
            if (c.is_element() && gen.pick(0, 1)) {
                name = c.name();
                break;
            }
        }
        std::size_t first = kids.size();
        for (std::size_t k = 0; k < kids.size(); ++k) {
            if (kids[k].is_element() && kids[k].name() == name) {
                first = k;
                break;
            }
        }
        auto got = rem_el(doc, name);
        if (first == kids.size()) {
            if (got)
                ++bad;
        } else {
            ++rem_el_cases;
            Hedge expected;
            for (std::size_t k = 0; k < kids.size(); ++k) {
                if (k != first)
                    expected.push_back(kids[k]);
            }
            if (!got || got->children().size() + 1 != kids.size() || got->children() != expected)
                ++bad;
        }

        if (kids.empty())
            continue;
        ++rem_cases;
        Node target = kids[static_cast<std::size_t>(gen.pick(0, static_cast<int>(kids.size()) - 1))];
        std::size_t pos = 0;
        while (!(kids[pos] == target))
            ++pos;
        Hedge expected;
        for (std::size_t k = 0; k < kids.size(); ++k) {
            if (k != pos)
                expected.push_back(kids[k]);
        }
        auto got2 = rem(doc, target);
        if (!got2 || got2->children().size() + 1 != kids.size() || got2->children() != expected)
            ++bad;
    }
    d << rem_el_cases << " remEl removals, " << rem_cases << " rem removals over " << n << " documents, " << bad
      << " violations";
    return bad == 0 && rem_el_cases >= target && rem_cases >= target;
}

// Every ordered tree shape with `nodes` nodes, as a Dyck word over the
// root's subtrees ('(' opens a child, ')' closes it).
void dyck_words(std::size_t pairs, std::string& word, std::size_t open, std::size_t closed,
                const std::function<void(const std::string&)>& visit)
{
    if (closed == pairs) {
        visit(word);
        return;
    }
    if (open < pairs) {
        word.push_back('(');
        dyck_words(pairs, word, open + 1, closed, visit);
        word.pop_back();
    }
    if (closed < open) {
        word.push_back(')');
        dyck_words(pairs, word, open, closed + 1, visit);
        word.pop_back();
    }
}

Node tree_from_word(const std::string& word, std::size_t& pos)
{
    Hedge kids;
    while (pos < word.size() && word[pos] == '(') {
        ++pos;
        kids.push_back(tree_from_word(word, pos));
        ++pos;  // ')'
    }
    return el("n", {}, std::move(kids));
}

bool reachability(std::ostringstream& d)
{
    const std::size_t max_nodes = 15;
    std::size_t trees = 0, pairs = 0, bad = 0, longest = 0;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        std::string word;
        dyck_words(n - 1, word, 0, 0, [&](const std::string& w) {
            std::size_t pos = 0;
            Node root = tree_from_word(w, pos);
            ++trees;
            auto nodes = testing::all_paths(root);
            std::vector<const Node*> chain;
            std::vector<std::size_t> at;
            for (const auto& [up, u] : nodes) {
                for (const auto& [vp, v] : nodes) {
                    ++pairs;
                    auto moves = reachable(root, IndexPath{up}, IndexPath{vp});
                    longest = std::max(longest, moves.size());
                    // Replay the moves on an explicit ancestor chain; the
                    // final index path identifies the node reached.
                    chain.assign(1, &root);
                    at.clear();
                    for (auto i : up) {
                        chain.push_back(&chain.back()->children()[i - 1]);
                        at.push_back(i);
                    }
                    bool ok = moves.size() + 1 <= n;
                    for (const auto& m : moves) {
                        if (!ok)
                            break;
                        if (m.kind == Move::Kind::up) {
                            ok = chain.size() > 1;
                            if (ok) {
                                chain.pop_back();
                                at.pop_back();
                            }
                        } else {
                            ok = m.index >= 1 && m.index <= chain.back()->children().size();
                            if (ok) {
                                chain.push_back(&chain.back()->children()[m.index - 1]);
                                at.push_back(m.index);
                            }
                        }
                    }
                    if (!ok || at != vp || chain.back()->kind() != v.kind())
                        ++bad;
                }
            }
        });
    }
    d << trees << " tree shapes of 1.." << max_nodes << " nodes, " << pairs << " ordered pairs, " << bad
      << " invalid or over-long move sequences (longest " << longest << ")";
    return bad == 0;
}

bool metrics_exactness(std::ostringstream& d)
{
    auto counts = [](std::size_t e1, std::size_t e2, std::size_t n1, std::size_t n2) {
        TokenCounts c;
        c.eta1 = e1;
        c.eta2 = e2;
        c.n1_total = n1;
        c.n2_total = n2;
        return c;
    };
    auto nt22 = compute_metrics(counts(2, 2, 2, 2));
    bool ok = nt22.theoretical_length == 4.0 && nt22.volume == 8.0;

    // 10 ld 10 + 8 ld 8 = 10 ln 10 / ln 2 + 24.
    const double expected = 10.0 * std::log(10.0) / std::log(2.0) + 24.0;
    double nt108 = compute_metrics(counts(10, 8, 20, 13)).theoretical_length;
    ok = ok && std::fabs(nt108 - expected) < 1e-9 && std::fabs(nt108 - 57.2193) < 5e-5;

    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> dist(0, 200);
    std::size_t bad_delta = 0;
    for (int i = 0; i < 100; ++i) {
        std::size_t e1 = dist(rng), e2 = dist(rng), n1 = e1 + dist(rng), n2 = e2 + dist(rng);
        auto m = compute_metrics(counts(e1, e2, n1, n2));
        auto xl = [](double x) { return x == 0 ? 0.0 : x * std::log(x) / std::log(2.0); };
        double nt = xl(static_cast<double>(e1)) + xl(static_cast<double>(e2));
        double delta = std::fabs(nt - static_cast<double>(n1 + n2));
        if (std::fabs(m.length_delta - delta) >= 1e-9 || std::fabs(m.length_delta - std::fabs(m.theoretical_length - m.length)) >= 1e-9)
            ++bad_delta;
    }
    ok = ok && bad_delta == 0;
    d.precision(10);
    d << "N_T(2,2)=" << nt22.theoretical_length << ", V(4,4)=" << nt22.volume << ", N_T(10,8)=" << nt108
      << ", delta_N violations " << bad_delta << "/100";
    return ok;
}

bool red_cut_determinism(std::ostringstream& d)
{
    namespace fs = std::filesystem;
    std::size_t checked = 0, changed = 0, paired = 0;
    std::vector<fs::path> scripts;
    for (const auto& entry : fs::directory_iterator(LTL_CORPUS)) {
        if (entry.path().extension() == ".ltl")
            scripts.push_back(entry.path());
    }
    std::sort(scripts.begin(), scripts.end());
    for (const auto& script : scripts) {
        auto xml = script;
        xml.replace_extension(".xml");
        if (!fs::exists(xml))
            continue;
        ++paired;
        std::string source = slurp(script);
        RuleSet base = parse_rules(source);
        // A copy of the first rule is shadowed by it; a head no node matches
        // is never reached.
        RuleSet more = parse_rules(source + "\ntemplate(element('never-matches',_,_),[text(\"x\")]).\n");
        if (!base.rules.empty())
            more.rules.push_back(base.rules.front());
        Node doc = parse_xml(slurp(xml));
        for (auto mode : {SolutionMode::first_only, SolutionMode::all_solutions}) {
            base.options.mode = more.options.mode = mode;
            auto a = transform_document(base, doc);
            auto b = transform_document(more, doc);
            ++checked;
            if (serialize(a.hedge) != serialize(b.hedge) || a.well_formed != b.well_formed)
                ++changed;
        }
    }
    d << checked << " corpus transforms (" << paired << " document/rule pairs, both solution modes), " << changed
      << " changed by appended rules";
    return checked > 0 && changed == 0;
}

}  // namespace

int main()
{
    criterion("worked example end-to-end", worked_example);
    criterion("round trips", round_trips);
    criterion("oracle equivalence", oracle_equivalence);
    criterion("unification laws", unification_laws);
    criterion("operator rule table", operator_rules);
    criterion("one-step manipulation", one_step_manipulation);
    criterion("reachability sweep", reachability);
    criterion("metrics exactness", metrics_exactness);
    criterion("red-cut determinism", red_cut_determinism);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
