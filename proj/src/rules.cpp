#include "ltl/rules.hpp"

#include "lexer.hpp"
#include "path_parser.hpp"

#include <algorithm>

namespace ltl {

using detail::Lexer;
using detail::Tok;
using detail::Token;

namespace {

bool is_attribute_name(const std::string& s)
{
    if (s.empty())
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-'
            || c == '.' || c == ':' || static_cast<unsigned char>(c) >= 0x80;
    });
}

// 'name="value"' written as one quoted atom, as in the term notation of
// documents, becomes =(name,"value").
std::optional<Term> quoted_attribute(const std::string& text)
{
    auto eq = text.find('=');
    if (eq == std::string::npos || text.size() < eq + 3 || text[eq + 1] != '"' || text.back() != '"')
        return std::nullopt;
    std::string name = text.substr(0, eq);
    std::string value = text.substr(eq + 2, text.size() - eq - 3);
    if (!is_attribute_name(name) || value.find('"') != std::string::npos)
        return std::nullopt;
    return Term::compound("=", {Term::atom(std::move(name)), Term::str(std::move(value))});
}

class RuleParser {
public:
    explicit RuleParser(std::string_view source) : lx_(source) {}

    RuleSet parse()
    {
        RuleSet rs;
        while (lx_.peek().kind != Tok::end)
            parse_clause(rs);
        return rs;
    }

    Term parse_single_term()
    {
        Term t = parse_term(true);
        lx_.accept(Tok::dot);
        if (lx_.peek().kind != Tok::end)
            throw lx_.error_here(std::string("unexpected ") + detail::describe(lx_.peek().kind) + " after term");
        return t;
    }

private:
    Lexer lx_;

    bool functor_follows()
    {
        Token t = lx_.next();
        bool yes = lx_.peek().kind == Tok::lparen && lx_.adjacent();
        pending_ = std::move(t);
        return yes;
    }

    // One-token pushback used by functor_follows().
    std::optional<Token> pending_;

    Token take()
    {
        if (pending_) {
            Token t = std::move(*pending_);
            pending_.reset();
            return t;
        }
        return lx_.next();
    }

    const Token& look()
    {
        return pending_ ? *pending_ : lx_.peek();
    }

    void parse_clause(RuleSet& rs)
    {
        const Token head = look();
        if (head.kind != Tok::atom && head.kind != Tok::qatom)
            throw lx_.error_at(head, std::string("expected a clause, found ") + detail::describe(head.kind));
        if (head.kind == Tok::atom && head.text == "template" && functor_follows()) {
            take();
            rs.rules.push_back(parse_template(head));
            return;
        }
        Term fact = parse_term(false);
        if (look().kind == Tok::neck)
            throw lx_.error_at(look(), "only template clauses may have a body");
        expect(Tok::dot, "'.' at the end of a clause");
        add_fact(rs, fact, head);
    }

    Token expect(Tok kind, const char* what)
    {
        if (look().kind != kind)
            throw lx_.error_at(look(), std::string("expected ") + what + ", found " + detail::describe(look().kind));
        return take();
    }

    bool accept(Tok kind)
    {
        if (look().kind != kind)
            return false;
        take();
        return true;
    }

    void add_fact(RuleSet& rs, const Term& fact, const Token& at)
    {
        std::vector<Term> args;
        if (fact.kind() == TermKind::compound)
            args = fact.args();
        else if (fact.kind() != TermKind::atom)
            throw lx_.error_at(at, "a fact must be name(value, ...)");
        Tuple row;
        for (const auto& a : args) {
            if (a.kind() != TermKind::atom && a.kind() != TermKind::integer && a.kind() != TermKind::str)
                throw lx_.error_at(at, "fact values must be atoms, integers or strings: " + to_string(fact));
            row.push_back(to_scalar(a));
        }
        auto it = rs.facts.find(fact.text());
        if (it == rs.facts.end())
            it = rs.facts.emplace(fact.text(), Relation(fact.text(), row.size())).first;
        if (it->second.arity() != row.size())
            throw lx_.error_at(at, "fact " + to_string(fact) + " does not match the arity "
                                       + std::to_string(it->second.arity()) + " of relation " + fact.text());
        it->second.insert(std::move(row));
    }

    Rule parse_template(const Token& head)
    {
        Rule rule;
        rule.line = head.line;
        expect(Tok::lparen, "'('");
        rule.head = parse_term(true);
        expect(Tok::comma, "',' after the template pattern");
        const Token out_at = look();
        Term output = parse_term(true);
        if (output.kind() != TermKind::seq)
            throw lx_.error_at(out_at, "the template output must be a list");
        rule.output = output.args();
        expect(Tok::rparen, "')'");
        if (accept(Tok::neck)) {
            do {
                rule.goals.push_back(parse_goal());
            } while (accept(Tok::comma));
        }
        expect(Tok::dot, "'.' at the end of a clause");
        check_output_bound(rule, head);
        return rule;
    }

    Goal parse_goal()
    {
        const Token t = look();
        if (t.kind == Tok::atom && (t.text == "transform" || t.text == "template" || t.text == "not")
            && functor_follows()) {
            take();
            expect(Tok::lparen, "'('");
            if (t.text == "transform") {
                if (pending_)
                    throw lx_.error_at(*pending_, "internal: unexpected pushback");
                const Token at = lx_.peek();
                if (at.kind != Tok::var)
                    throw lx_.error_at(at, "a transform path starts with a variable");
                PathExpr path = detail::parse_path_steps(lx_);
                expect(Tok::comma, "',' after the path");
                Term result = parse_term(true);
                expect(Tok::rparen, "')'");
                return Goal::transform_goal(std::move(path), std::move(result));
            }
            if (t.text == "template") {
                Term node = parse_term(true);
                expect(Tok::comma, "','");
                Term result = parse_term(true);
                expect(Tok::rparen, "')'");
                return Goal::apply_templates_goal(std::move(node), std::move(result));
            }
            Goal inner = parse_goal();
            expect(Tok::rparen, "')'");
            return Goal::negation_goal(std::move(inner));
        }
        Term lhs = parse_term(false);
        expect(Tok::eq, "'=' in goal");
        Term rhs = parse_term(false);
        return Goal::unify_goal(std::move(lhs), std::move(rhs));
    }

    // `allow_eq` admits the infix attribute form name="value" inside
    // argument and list positions.
    Term parse_term(bool allow_eq)
    {
        Term t = parse_primary();
        if (allow_eq && look().kind == Tok::eq) {
            take();
            Term r = parse_primary();
            return Term::compound("=", {std::move(t), std::move(r)});
        }
        return t;
    }

    std::vector<Term> parse_list(Tok close, const char* what)
    {
        std::vector<Term> items;
        if (accept(close))
            return items;
        do {
            items.push_back(parse_term(true));
        } while (accept(Tok::comma));
        expect(close, what);
        return items;
    }

    Term parse_primary()
    {
        const Token& t = look();
        switch (t.kind) {
        case Tok::var: return Term::var(take().text);
        case Tok::anon: take(); return Term::anonymous();
        case Tok::integer: return Term::integer(take().value);
        case Tok::string: return Term::str(take().text);
        case Tok::lbrack: take(); return Term::seq(parse_list(Tok::rbrack, "']'"));
        case Tok::atom:
        case Tok::qatom: {
            bool functor = pending_ ? false : functor_follows();
            Token name = take();
            if (!pending_ && functor && look().kind == Tok::lparen) {
                take();
                return Term::compound(name.text, parse_list(Tok::rparen, "')'"));
            }
            if (name.kind == Tok::qatom) {
                if (auto attr = quoted_attribute(name.text))
                    return *attr;
            }
            return Term::atom(name.text);
        }
        default:
            throw lx_.error_at(t, std::string("expected a term, found ") + detail::describe(t.kind));
        }
    }

    void check_output_bound(const Rule& rule, const Token& at)
    {
        std::vector<std::string> bindable;
        rule.head.collect_vars(bindable);
        for (const auto& g : rule.goals) {
            switch (g.kind) {
            case Goal::Kind::unify:
            case Goal::Kind::apply_templates:
                g.lhs.collect_vars(bindable);
                g.rhs.collect_vars(bindable);
                break;
            case Goal::Kind::transform:
                g.rhs.collect_vars(bindable);
                break;
            case Goal::Kind::negation:
                break;
            }
        }
        std::vector<std::string> used;
        for (const auto& o : rule.output)
            o.collect_vars(used);
        for (const auto& v : used) {
            if (std::find(bindable.begin(), bindable.end(), v) == bindable.end())
                throw lx_.error_at(at, "template at line " + std::to_string(rule.line) + ": output variable " + v
                                           + " is bound neither by the pattern nor by a goal");
        }
    }
};

}  // namespace

RuleSet parse_rules(std::string_view source) { return RuleParser(source).parse(); }

Term parse_term(std::string_view text) { return RuleParser(text).parse_single_term(); }

std::string to_string(const Goal& g)
{
    switch (g.kind) {
    case Goal::Kind::unify: return to_string(g.lhs) + "=" + to_string(g.rhs);
    case Goal::Kind::transform: return "transform(" + to_string(g.path) + "," + to_string(g.rhs) + ")";
    case Goal::Kind::apply_templates: return "template(" + to_string(g.lhs) + "," + to_string(g.rhs) + ")";
    case Goal::Kind::negation: return "not(" + to_string(g.inner.at(0)) + ")";
    }
    return {};
}

namespace {

Term result_to_term(const Result& r)
{
    struct Visitor {
        Term operator()(const Node& n) const { return node_to_term(n); }
        Term operator()(const std::string& s) const { return Term::str(s); }
        Term operator()(std::size_t v) const { return Term::integer(static_cast<std::int64_t>(v)); }
        Term operator()(const IndexPath& p) const
        {
            std::vector<Term> items;
            for (auto i : p.indices)
                items.push_back(Term::integer(static_cast<std::int64_t>(i)));
            return Term::seq(std::move(items));
        }
    };
    return std::visit(Visitor{}, r);
}

Hedge nodes_of(const Term& t)
{
    if (t.kind() == TermKind::seq) {
        Hedge out;
        for (const auto& item : t.args()) {
            Hedge part = nodes_of(item);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    return {term_to_node(t)};
}

Node bound_node(const Substitution& theta, const std::string& var)
{
    const Term* bound = theta.lookup(var);
    if (!bound)
        throw Error(ErrorKind::instantiation, "transform: path start variable " + var + " is not bound");
    if (!bound->is_ground())
        throw Error(ErrorKind::instantiation, "transform: " + var + " is only partially bound: " + to_string(*bound));
    return term_to_node(*bound);
}

Hedge run_templates(const RuleSet& rs, const Node& n, const Node& root);

Stream<Substitution> solve_from(const RuleSet& rs, const std::vector<Goal>& goals, std::size_t i,
                                const Substitution& theta, const Node& root);

Stream<Substitution> solve_goal(const RuleSet& rs, const Goal& g, const Substitution& theta, const Node& root)
{
    switch (g.kind) {
    case Goal::Kind::unify: {
        auto s = unify(g.lhs, g.rhs, theta);
        return s ? Stream<Substitution>::single(std::move(*s)) : Stream<Substitution>();
    }
    case Goal::Kind::transform: {
        Node start = bound_node(theta, g.path.start);
        PathExpr path = g.path;
        if (rs.options.text_coercion && path.steps.back().kind == StepKind::index)
            path.steps.push_back({StepKind::text_value, {}, 0});
        PathOptions popts;
        popts.text_coercion = rs.options.text_coercion;
        popts.root = root;
        Term result = g.rhs;
        return eval_path(start, path, rs.options.mode, popts)
            .flat_map([theta, result](Result r) {
                auto s = unify(result, result_to_term(r), theta);
                return s ? Stream<Substitution>::single(std::move(*s)) : Stream<Substitution>();
            });
    }
    case Goal::Kind::apply_templates: {
        Term target = apply_subst(theta, g.lhs);
        if (!target.is_ground())
            throw Error(ErrorKind::instantiation, "template/2: node argument is not bound: " + to_string(target));
        Hedge out;
        for (const auto& n : nodes_of(target)) {
            Hedge part = run_templates(rs, n, root);
            out.insert(out.end(), part.begin(), part.end());
        }
        auto s = unify(g.rhs, hedge_to_term(out), theta);
        return s ? Stream<Substitution>::single(std::move(*s)) : Stream<Substitution>();
    }
    case Goal::Kind::negation: {
        if (solve_from(rs, g.inner, 0, theta, root).next())
            return Stream<Substitution>();
        return Stream<Substitution>::single(theta);
    }
    }
    return Stream<Substitution>();
}

Stream<Substitution> solve_from(const RuleSet& rs, const std::vector<Goal>& goals, std::size_t i,
                                const Substitution& theta, const Node& root)
{
    if (i == goals.size())
        return Stream<Substitution>::single(theta);
    const RuleSet* rsp = &rs;
    const std::vector<Goal>* gp = &goals;
    return solve_goal(rs, goals[i], theta, root).flat_map([rsp, gp, i, root](Substitution s) {
        return solve_from(*rsp, *gp, i + 1, s, root);
    });
}

void emit(const Rule& rule, const Substitution& theta, Hedge& out)
{
    for (const auto& item : rule.output) {
        Term t = apply_subst(theta, item);
        std::vector<std::string> vars;
        t.collect_vars(vars);
        if (!vars.empty())
            throw Error(ErrorKind::unbound_output, "template at line " + std::to_string(rule.line)
                                                       + ": output variable " + vars.front() + " is unbound");
        if (!t.is_ground())
            throw Error(ErrorKind::unbound_output,
                        "template at line " + std::to_string(rule.line) + ": output contains '_'");
        try {
            Hedge part = nodes_of(t);
            out.insert(out.end(), part.begin(), part.end());
        } catch (const Error& e) {
            throw Error(e.kind(), "template at line " + std::to_string(rule.line) + ": " + e.what());
        }
    }
}

void visit(const RuleSet& rs, const Node& n, const Node& root, Hedge& out)
{
    const Term term = node_to_term(n);
    for (const auto& rule : rs.rules) {
        auto theta = unify(rule.head, term);
        if (!theta)
            continue;
        auto solutions = solve_from(rs, rule.goals, 0, *theta, root);
        if (rs.options.mode == SolutionMode::first_only) {
            auto first = solutions.next();
            if (!first)
                continue;
            emit(rule, *first, out);
            return;
        }
        bool fired = false;
        while (auto s = solutions.next()) {
            fired = true;
            emit(rule, *s, out);
        }
        if (fired)
            return;
    }
    if (n.is_element()) {
        for (const auto& c : n.children())
            visit(rs, c, root, out);
    } else if (n.is_text() && rs.options.default_copy_text) {
        out.push_back(n);
    }
}

Hedge run_templates(const RuleSet& rs, const Node& n, const Node& root)
{
    Hedge out;
    visit(rs, n, root, out);
    return out;
}

}  // namespace

Stream<Substitution> solve_goals(const RuleSet& rs, const std::vector<Goal>& goals, const Substitution& theta,
                                 const Node& root)
{
    return solve_from(rs, goals, 0, theta, root);
}

Hedge apply_templates(const RuleSet& rs, const Node& n) { return run_templates(rs, n, n); }

TransformResult transform_document(const RuleSet& rs, const Node& doc)
{
    TransformResult r;
    r.hedge = apply_templates(rs, doc);
    r.well_formed = r.hedge.size() == 1 && r.hedge.front().is_element();
    return r;
}

}  // namespace ltl
