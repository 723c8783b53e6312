#include "ltl/relalg.hpp"

#include "ltl/error.hpp"
#include "ltl/rules.hpp"

namespace ltl {

Term to_term(const Scalar& s)
{
    switch (s.kind) {
    case Scalar::Kind::atom: return Term::atom(s.text);
    case Scalar::Kind::integer: return Term::integer(s.value);
    case Scalar::Kind::string: return Term::str(s.text);
    }
    return Term::atom(s.text);
}

Scalar to_scalar(const Term& t)
{
    switch (t.kind()) {
    case TermKind::atom: return Scalar::atom(t.text());
    case TermKind::integer: return Scalar::integer(t.value());
    case TermKind::str: return Scalar::string(t.text());
    default: throw Error(ErrorKind::shape, "not a scalar value: " + to_string(t));
    }
}

Relation::Relation(std::string name, std::size_t arity) : name_(std::move(name)), arity_(arity) {}

Relation::Relation(std::string name, std::size_t arity, const std::vector<Tuple>& tuples)
    : Relation(std::move(name), arity)
{
    for (const auto& t : tuples)
        insert(t);
}

void Relation::insert(Tuple t)
{
    if (t.size() != arity_)
        throw Error(ErrorKind::arity, "relation " + name_ + "/" + std::to_string(arity_) + " cannot hold a tuple of "
                                          + std::to_string(t.size()) + " values");
    tuples_.insert(std::move(t));
}

namespace {

// Body literal over one of the operand tables.
struct Literal {
    bool negated;
    const Relation* table;
    std::vector<Term> args;
};

struct Clause {
    std::vector<Term> head;
    std::vector<Literal> body;
};

Term tuple_term(const std::string& functor, std::vector<Term> args)
{
    return Term::compound(functor.empty() ? "t" : functor, std::move(args));
}

Term tuple_term(const Relation& r, const Tuple& t)
{
    std::vector<Term> args;
    args.reserve(t.size());
    for (const auto& s : t)
        args.push_back(to_term(s));
    return tuple_term(r.name(), std::move(args));
}

bool has_solution(const Literal& lit, const Substitution& theta)
{
    Term goal = apply_subst(theta, tuple_term(lit.table->name(), lit.args));
    for (const auto& row : lit.table->tuples()) {
        if (unify(goal, tuple_term(*lit.table, row), theta))
            return true;
    }
    return false;
}

// Depth-first resolution of the clause body against the tables, with
// negation as failure over finite tables.
void solve(const Clause& c, std::size_t i, const Substitution& theta, Relation& out)
{
    if (i == c.body.size()) {
        Tuple row;
        row.reserve(c.head.size());
        for (const auto& h : c.head)
            row.push_back(to_scalar(apply_subst(theta, h)));
        out.insert(std::move(row));
        return;
    }
    const Literal& lit = c.body[i];
    if (lit.negated) {
        if (!has_solution(lit, theta))
            solve(c, i + 1, theta, out);
        return;
    }
    Term goal = tuple_term(lit.table->name(), lit.args);
    for (const auto& row : lit.table->tuples()) {
        if (auto next = unify(goal, tuple_term(*lit.table, row), theta))
            solve(c, i + 1, *next, out);
    }
}

Relation derive(std::size_t arity, const std::vector<Clause>& clauses)
{
    Relation out("t", arity);
    for (const auto& c : clauses)
        solve(c, 0, Substitution{}, out);
    return out;
}

std::vector<Term> vars(const char* prefix, std::size_t n)
{
    std::vector<Term> out;
    out.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back(Term::var(prefix + std::to_string(i)));
    return out;
}

void require_same_arity(const Relation& r, const Relation& s, const char* op)
{
    if (r.arity() != s.arity())
        throw Error(ErrorKind::arity, std::string(op) + " needs equal arities, got " + r.name() + "/"
                                          + std::to_string(r.arity()) + " and " + s.name() + "/"
                                          + std::to_string(s.arity()));
}

}  // namespace

Relation union_of(const Relation& r, const Relation& s)
{
    require_same_arity(r, s, "union");
    auto x = vars("X", r.arity());
    auto y = vars("Y", s.arity());
    return derive(r.arity(), {Clause{x, {Literal{false, &r, x}}}, Clause{y, {Literal{false, &s, y}}}});
}

Relation difference(const Relation& r, const Relation& s)
{
    require_same_arity(r, s, "difference");
    auto x = vars("X", r.arity());
    return derive(r.arity(), {Clause{x, {Literal{false, &r, x}, Literal{true, &s, x}}}});
}

Relation cartesian(const Relation& r, const Relation& s)
{
    auto x = vars("X", r.arity());
    auto y = vars("Y", s.arity());
    std::vector<Term> head = x;
    head.insert(head.end(), y.begin(), y.end());
    return derive(r.arity() + s.arity(), {Clause{head, {Literal{false, &r, x}, Literal{false, &s, y}}}});
}

Relation project(const Relation& r, const std::vector<std::size_t>& columns)
{
    auto x = vars("X", r.arity());
    std::vector<Term> head;
    for (auto c : columns) {
        if (c < 1 || c > r.arity())
            throw Error(ErrorKind::column, "column " + std::to_string(c) + " is out of range for " + r.name() + "/"
                                               + std::to_string(r.arity()));
        head.push_back(x[c - 1]);
    }
    return derive(columns.size(), {Clause{head, {Literal{false, &r, x}}}});
}

Relation select(const Relation& r, const Relation& s)
{
    require_same_arity(r, s, "select");
    auto x = vars("X", r.arity());
    return derive(r.arity(), {Clause{x, {Literal{false, &r, x}, Literal{false, &s, x}}}});
}

Relation select_where(const Relation& r, const std::function<bool(const Tuple&)>& keep)
{
    Relation out("t", r.arity());
    for (const auto& t : r.tuples()) {
        if (keep(t))
            out.insert(t);
    }
    return out;
}

Relation rename(const Relation& r, const std::string& new_name)
{
    if (new_name.empty())
        throw Error(ErrorKind::invalid_argument, "relation name must not be empty");
    auto x = vars("X", r.arity());
    Relation derived = derive(r.arity(), {Clause{x, {Literal{false, &r, x}}}});
    Relation out(new_name, r.arity());
    for (const auto& t : derived.tuples())
        out.insert(t);
    return out;
}

namespace {

[[noreturn]] void bad_expression(const Term& t, const std::string& why)
{
    throw Error(ErrorKind::invalid_argument, why + ": " + to_string(t));
}

const std::string& name_of(const Term& t)
{
    if (t.kind() != TermKind::atom)
        bad_expression(t, "expected a relation name");
    return t.text();
}

}  // namespace

Relation evaluate(const Term& expr, const FactBase& facts)
{
    if (expr.kind() == TermKind::atom) {
        auto it = facts.find(expr.text());
        if (it == facts.end())
            bad_expression(expr, "unknown relation");
        return it->second;
    }
    if (expr.kind() != TermKind::compound)
        bad_expression(expr, "expected a relation or an operator");
    const auto& op = expr.text();
    const auto& args = expr.args();
    auto binary = [&]() -> std::pair<Relation, Relation> {
        if (args.size() != 2)
            bad_expression(expr, op + " takes two operands");
        return {evaluate(args[0], facts), evaluate(args[1], facts)};
    };
    if (op == "union") {
        auto [r, s] = binary();
        return union_of(r, s);
    }
    if (op == "difference") {
        auto [r, s] = binary();
        return difference(r, s);
    }
    if (op == "product" || op == "cartesian") {
        auto [r, s] = binary();
        return cartesian(r, s);
    }
    if (op == "select") {
        auto [r, s] = binary();
        return select(r, s);
    }
    if (op == "rename") {
        if (args.size() != 2)
            bad_expression(expr, "rename takes a relation and a name");
        return rename(evaluate(args[0], facts), name_of(args[1]));
    }
    if (op == "project") {
        if (args.size() != 2 || args[1].kind() != TermKind::seq)
            bad_expression(expr, "project takes a relation and a column list");
        std::vector<std::size_t> cols;
        for (const auto& c : args[1].args()) {
            if (c.kind() != TermKind::integer || c.value() < 1)
                throw Error(ErrorKind::column, "columns are positive integers: " + to_string(c));
            cols.push_back(static_cast<std::size_t>(c.value()));
        }
        return project(evaluate(args[0], facts), cols);
    }
    bad_expression(expr, "unknown operator '" + op + "'");
}

Relation evaluate(std::string_view expr, const FactBase& facts) { return evaluate(parse_term(expr), facts); }

std::string format_relation(const Relation& r)
{
    std::string out;
    for (const auto& t : r.tuples()) {
        std::vector<Term> args;
        for (const auto& s : t)
            args.push_back(to_term(s));
        out += (args.empty() ? r.name() : to_string(Term::compound(r.name(), std::move(args)))) + ".\n";
    }
    return out;
}

}  // namespace ltl
