#include "ltl/term.hpp"

#include "ltl/error.hpp"

#include <algorithm>

namespace ltl {

Term Term::var(std::string name) { return Term(TermKind::var, std::move(name), 0, {}); }
Term Term::anonymous() { return Term(TermKind::anonymous, "_", 0, {}); }
Term Term::atom(std::string text) { return Term(TermKind::atom, std::move(text), 0, {}); }
Term Term::str(std::string text) { return Term(TermKind::str, std::move(text), 0, {}); }
Term Term::integer(std::int64_t value) { return Term(TermKind::integer, {}, value, {}); }

Term Term::compound(std::string functor, std::vector<Term> args)
{
    if (functor.empty())
        throw Error(ErrorKind::invalid_argument, "compound functor must not be empty");
    return Term(TermKind::compound, std::move(functor), 0, std::move(args));
}

Term Term::seq(std::vector<Term> items) { return Term(TermKind::seq, {}, 0, std::move(items)); }

bool Term::is_ground() const
{
    if (kind_ == TermKind::var || kind_ == TermKind::anonymous)
        return false;
    return std::all_of(args_.begin(), args_.end(), [](const Term& t) { return t.is_ground(); });
}

void Term::collect_vars(std::vector<std::string>& out) const
{
    if (kind_ == TermKind::var) {
        if (std::find(out.begin(), out.end(), text_) == out.end())
            out.push_back(text_);
        return;
    }
    for (const auto& a : args_)
        a.collect_vars(out);
}

namespace {

bool is_plain_atom(const std::string& s)
{
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

std::string quote(const std::string& s, char q)
{
    std::string out(1, q);
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c == q)
                out += '\\';
            out += c;
        }
    }
    out += q;
    return out;
}

void print(std::string& out, const Term& t)
{
    switch (t.kind()) {
    case TermKind::var:
    case TermKind::anonymous:
        out += t.text();
        return;
    case TermKind::atom:
        out += is_plain_atom(t.text()) ? t.text() : quote(t.text(), '\'');
        return;
    case TermKind::str:
        out += quote(t.text(), '"');
        return;
    case TermKind::integer:
        out += std::to_string(t.value());
        return;
    case TermKind::compound:
        if (t.text() == "=" && t.args().size() == 2) {
            print(out, t.args()[0]);
            out += '=';
            print(out, t.args()[1]);
            return;
        }
        out += is_plain_atom(t.text()) ? t.text() : quote(t.text(), '\'');
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i)
                out += ',';
            print(out, t.args()[i]);
        }
        out += ')';
        return;
    case TermKind::seq:
        out += '[';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i)
                out += ',';
            print(out, t.args()[i]);
        }
        out += ']';
        return;
    }
}

}  // namespace

std::string to_string(const Term& t)
{
    std::string out;
    print(out, t);
    return out;
}

const Term* Substitution::lookup(const std::string& var) const
{
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

std::string to_string(const Substitution& s)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [name, term] : s.bindings()) {
        if (!first)
            out += ", ";
        first = false;
        out += name + " -> " + to_string(term);
    }
    return out + "}";
}

Term node_to_term(const Node& n)
{
    switch (n.kind()) {
    case NodeKind::text: return Term::compound("text", {Term::str(n.content())});
    case NodeKind::pi: return Term::compound("pi", {Term::str(n.content())});
    case NodeKind::comment: return Term::compound("comment", {Term::str(n.content())});
    case NodeKind::element: break;
    }
    std::vector<Term> attrs;
    attrs.reserve(n.attributes().size());
    for (const auto& a : n.attributes())
        attrs.push_back(Term::compound("=", {Term::atom(a.name), Term::str(a.value)}));
    return Term::compound("element", {Term::atom(n.name()), Term::seq(std::move(attrs)), hedge_to_term(n.children())});
}

Term hedge_to_term(const Hedge& h)
{
    std::vector<Term> items;
    items.reserve(h.size());
    for (const auto& n : h)
        items.push_back(node_to_term(n));
    return Term::seq(std::move(items));
}

namespace {

[[noreturn]] void shape_error(const Term& t, const std::string& why)
{
    throw Error(ErrorKind::shape, why + ": " + to_string(t));
}

void require_ground(const Term& t)
{
    std::vector<std::string> vars;
    t.collect_vars(vars);
    if (!vars.empty())
        throw Error(ErrorKind::unbound_output, "unbound variable " + vars.front() + " in " + to_string(t));
    if (!t.is_ground())
        throw Error(ErrorKind::unbound_output, "anonymous variable _ in " + to_string(t));
}

// Names and text values may be written as atoms, strings or integers.
std::string scalar_text(const Term& t, const Term& context)
{
    switch (t.kind()) {
    case TermKind::atom:
    case TermKind::str:
        return t.text();
    case TermKind::integer:
        return std::to_string(t.value());
    default:
        shape_error(context, "expected a name or text value");
    }
}

}  // namespace

Node term_to_node(const Term& t)
{
    require_ground(t);
    if (t.kind() != TermKind::compound)
        shape_error(t, "not a node term");
    const auto& args = t.args();
    const auto& f = t.text();
    if ((f == "text" || f == "pi" || f == "comment") && args.size() == 1) {
        std::string content = scalar_text(args[0], t);
        if (f == "text")
            return Node::text(std::move(content));
        if (f == "pi")
            return Node::pi(std::move(content));
        return Node::comment(std::move(content));
    }
    if (f != "element" || args.size() != 3)
        shape_error(t, "not a node term");
    std::string name = scalar_text(args[0], t);
    if (name.empty())
        shape_error(t, "empty element name");
    if (args[1].kind() != TermKind::seq || args[2].kind() != TermKind::seq)
        shape_error(t, "element attributes and children must be lists");
    std::vector<Attribute> attrs;
    for (const auto& a : args[1].args()) {
        if (a.kind() != TermKind::compound || a.text() != "=" || a.args().size() != 2)
            shape_error(a, "not an attribute term");
        attrs.push_back({scalar_text(a.args()[0], a), scalar_text(a.args()[1], a)});
        if (attrs.back().name.empty())
            shape_error(a, "empty attribute name");
    }
    Hedge children;
    for (const auto& c : args[2].args()) {
        // Nested lists splice into the hedge.
        if (c.kind() == TermKind::seq) {
            for (const auto& inner : c.args())
                children.push_back(term_to_node(inner));
        } else {
            children.push_back(term_to_node(c));
        }
    }
    return Node::element(std::move(name), std::move(attrs), std::move(children));
}

namespace {

using Bindings = std::map<std::string, Term>;

const Term& walk(const Term& t, const Bindings& b)
{
    const Term* cur = &t;
    while (cur->is_var()) {
        auto it = b.find(cur->text());
        if (it == b.end())
            break;
        cur = &it->second;
    }
    return *cur;
}

bool occurs(const std::string& var, const Term& t, const Bindings& b)
{
    const Term& w = walk(t, b);
    if (w.is_var())
        return w.text() == var;
    for (const auto& a : w.args()) {
        if (occurs(var, a, b))
            return true;
    }
    return false;
}

bool unify_rec(const Term& x, const Term& y, Bindings& b)
{
    const Term& a = walk(x, b);
    const Term& c = walk(y, b);
    if (a.kind() == TermKind::anonymous || c.kind() == TermKind::anonymous)
        return true;
    if (a.is_var() && c.is_var() && a.text() == c.text())
        return true;
    if (a.is_var()) {
        if (occurs(a.text(), c, b))
            return false;
        b.emplace(a.text(), c);
        return true;
    }
    if (c.is_var()) {
        if (occurs(c.text(), a, b))
            return false;
        b.emplace(c.text(), a);
        return true;
    }
    if (a.kind() != c.kind())
        return false;
    switch (a.kind()) {
    case TermKind::atom:
    case TermKind::str:
        return a.text() == c.text();
    case TermKind::integer:
        return a.value() == c.value();
    case TermKind::compound:
        if (a.text() != c.text())
            return false;
        [[fallthrough]];
    case TermKind::seq: {
        if (a.args().size() != c.args().size())
            return false;
        // std::map keeps references stable while `b` grows.
        const auto& left = a.args();
        const auto& right = c.args();
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (!unify_rec(left[i], right[i], b))
                return false;
        }
        return true;
    }
    default:
        return false;
    }
}

Term resolve(const Term& t, const Bindings& b)
{
    const Term& w = walk(t, b);
    if (w.args().empty())
        return w;
    std::vector<Term> args;
    args.reserve(w.args().size());
    for (const auto& a : w.args())
        args.push_back(resolve(a, b));
    return w.kind() == TermKind::seq ? Term::seq(std::move(args)) : Term::compound(w.text(), std::move(args));
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& base)
{
    Bindings working = base.bindings_;
    if (!unify_rec(a, b, working))
        return std::nullopt;
    Substitution out;
    for (const auto& [name, term] : working)
        out.bindings_.emplace(name, resolve(term, working));
    return out;
}

std::optional<Substitution> unify(const Term& a, const Term& b) { return unify(a, b, Substitution{}); }

Term apply_subst(const Substitution& theta, const Term& t)
{
    if (t.is_var()) {
        const Term* bound = theta.lookup(t.text());
        return bound ? *bound : t;
    }
    if (t.args().empty() || theta.empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args())
        args.push_back(apply_subst(theta, a));
    return t.kind() == TermKind::seq ? Term::seq(std::move(args)) : Term::compound(t.text(), std::move(args));
}

Term rename_anonymous(const Term& t, std::size_t& counter)
{
    if (t.kind() == TermKind::anonymous)
        return Term::var("_G" + std::to_string(counter++));
    if (t.args().empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args())
        args.push_back(rename_anonymous(a, counter));
    return t.kind() == TermKind::seq ? Term::seq(std::move(args)) : Term::compound(t.text(), std::move(args));
}

}  // namespace ltl
