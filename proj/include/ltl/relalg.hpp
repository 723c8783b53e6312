#pragma once

#include "ltl/term.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ltl {

struct Scalar {
    enum class Kind { atom, integer, string };

    Kind kind = Kind::atom;
    std::string text;
    std::int64_t value = 0;

    static Scalar atom(std::string t) { return {Kind::atom, std::move(t), 0}; }
    static Scalar integer(std::int64_t v) { return {Kind::integer, {}, v}; }
    static Scalar string(std::string t) { return {Kind::string, std::move(t), 0}; }

    friend auto operator<=>(const Scalar&, const Scalar&) = default;
    friend bool operator==(const Scalar&, const Scalar&) = default;
};

using Tuple = std::vector<Scalar>;

Term to_term(const Scalar& s);
// Throws Error{shape} unless t is an atom, integer or string.
Scalar to_scalar(const Term& t);

// A named table with set semantics.
class Relation {
public:
    Relation(std::string name, std::size_t arity);
    Relation(std::string name, std::size_t arity, const std::vector<Tuple>& tuples);

    const std::string& name() const noexcept { return name_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::set<Tuple>& tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }

    // Throws Error{arity} on a tuple of the wrong width.
    void insert(Tuple t);

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::string name_;
    std::size_t arity_;
    std::set<Tuple> tuples_;
};

using FactBase = std::map<std::string, Relation>;

// Each operator is evaluated as the Horn clause(s) that define it over the
// operand tables, e.g. difference is t(X..) :- r(X..), not(s(X..)).
// Results are named "t".
Relation union_of(const Relation& r, const Relation& s);
Relation difference(const Relation& r, const Relation& s);
Relation cartesian(const Relation& r, const Relation& s);
// Columns are 1-based; throws Error{column} when out of range.
Relation project(const Relation& r, const std::vector<std::size_t>& columns);
// r ∩ s: s is the characteristic relation of the selection predicate.
Relation select(const Relation& r, const Relation& s);
// Predicate form of selection.
Relation select_where(const Relation& r, const std::function<bool(const Tuple&)>& keep);
Relation rename(const Relation& r, const std::string& new_name);

// Evaluates an operator expression such as
//   union(r, difference(s, t)), project(r, [2,1]), rename(product(r,s), u)
// over a fact base. "product" and "cartesian" are synonyms.
Relation evaluate(const Term& expr, const FactBase& facts);
Relation evaluate(std::string_view expr, const FactBase& facts);

// One "name(v1,...,vn)." line per tuple, in tuple order.
std::string format_relation(const Relation& r);

}  // namespace ltl
