#pragma once

#include "ltl/node.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ltl {

enum class TermKind { var, anonymous, atom, str, integer, compound, seq };

// Pattern term. Documents embed as ground compound/seq/str terms:
//   element(Name, [Attr...], [Child...]), text("..."), pi("..."),
//   comment("..."), and attributes as =(name, "value").
class Term {
public:
    static Term var(std::string name);
    static Term anonymous();
    static Term atom(std::string text);
    static Term str(std::string text);
    static Term integer(std::int64_t value);
    static Term compound(std::string functor, std::vector<Term> args);
    static Term seq(std::vector<Term> items);

    TermKind kind() const noexcept { return kind_; }
    bool is_var() const noexcept { return kind_ == TermKind::var; }

    // Variable name, atom text, string content or functor.
    const std::string& text() const noexcept { return text_; }
    std::int64_t value() const noexcept { return value_; }
    // Compound arguments or sequence items.
    const std::vector<Term>& args() const noexcept { return args_; }

    bool is_ground() const;
    void collect_vars(std::vector<std::string>& out) const;

    friend bool operator==(const Term&, const Term&) = default;

private:
    Term(TermKind kind, std::string text, std::int64_t value, std::vector<Term> args)
        : kind_(kind), text_(std::move(text)), value_(value), args_(std::move(args))
    {
    }

    TermKind kind_;
    std::string text_;
    std::int64_t value_ = 0;
    std::vector<Term> args_;
};

// Prints a term in rule-file syntax.
std::string to_string(const Term& t);

// Solved-form variable bindings: no bound variable occurs in any image.
class Substitution {
public:
    Substitution() = default;

    const Term* lookup(const std::string& var) const;
    bool empty() const noexcept { return bindings_.empty(); }
    std::size_t size() const noexcept { return bindings_.size(); }
    const std::map<std::string, Term>& bindings() const noexcept { return bindings_; }

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    friend std::optional<Substitution> unify(const Term&, const Term&, const Substitution&);
    std::map<std::string, Term> bindings_;
};

std::string to_string(const Substitution& s);

Term node_to_term(const Node& n);
Term hedge_to_term(const Hedge& h);
// Throws Error{unbound_output} on variables, Error{shape} on anything that is
// not node-shaped.
Node term_to_node(const Term& t);

// Most general unifier with occurs check. Each anonymous variable matches
// anything without binding. `base` must be in solved form; the result extends
// it.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& base);
std::optional<Substitution> unify(const Term& a, const Term& b);

Term apply_subst(const Substitution& theta, const Term& t);

// Replaces every anonymous occurrence with a distinct fresh variable named
// _G<n>, advancing `counter`.
Term rename_anonymous(const Term& t, std::size_t& counter);

}  // namespace ltl
