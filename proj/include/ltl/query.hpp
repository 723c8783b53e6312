#pragma once

#include "ltl/node.hpp"
#include "ltl/stream.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ltl {

// 1-based child indices leading from a root to one of its descendants.
struct IndexPath {
    std::vector<std::size_t> indices;

    friend bool operator==(const IndexPath&, const IndexPath&) = default;
};

std::string to_string(const IndexPath& p);

using Result = std::variant<Node, std::string, std::size_t, IndexPath>;
using ResultStream = Stream<Result>;
using NodeStream = Stream<Node>;

// Navigation operators. Element-only operators throw Error{type_mismatch}
// when handed a text, PI or comment node; "failure" is an empty stream or an
// empty optional.
NodeStream child_by_name(const Node& e, const std::string& name);
// Self included. The name "*" matches every element.
NodeStream descendant_or_self_by_name(const Node& e, const std::string& name);
std::optional<std::string> attr_value(const Node& e, const std::string& name);
Stream<std::string> attr_name_by_value(const Node& e, const std::string& value);
std::optional<std::string> text_value(const Node& n);
std::optional<std::string> pi_value(const Node& n);
NodeStream children(const Node& e);
// Proper descendants in document order; empty for non-elements.
NodeStream descendants(const Node& e);

std::optional<Node> last_child(const Node& e);
std::size_t count_children(const Node& e);
Stream<IndexPath> lvl(const Node& root, const Node& target);

// Throws Error{bad_index_path} if the path leaves the tree.
const Node& node_at(const Node& root, const IndexPath& path);

struct Move {
    enum class Kind { up, down };
    Kind kind;
    std::size_t index = 0;  // 1-based child index for down moves

    static Move up() { return {Kind::up, 0}; }
    static Move down(std::size_t i) { return {Kind::down, i}; }

    friend bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const std::vector<Move>& moves);

// Up to the deepest common ancestor, then down to v.
std::vector<Move> reachable(const Node& root, const IndexPath& u, const IndexPath& v);

// Non-monotonic operators.
Node copy(const Node& x);
Node copy_of(const Node& x);
// Drops the first child element named `name`; nullopt when there is none.
std::optional<Node> rem_el(const Node& e, const std::string& name);
// Drops the first child structurally equal to `child`.
std::optional<Node> rem(const Node& e, const Node& child);

enum class StepKind {
    child_named,               // /name
    descendant_or_self_named,  // //name, //*
    attr_value,                // @name
    attr_name_by_value,        // id(value)
    text_value,                // #
    pi_value,                  // ?
    children,                  // child
    descendants,               // descendant
    last_child,                // last
    count_children,            // count
    lvl,                       // lvl
    index,                     // #k
};

struct Step {
    StepKind kind;
    std::string arg;
    std::size_t index = 0;

    friend bool operator==(const Step&, const Step&) = default;
};

struct PathExpr {
    // Variable the path starts from; empty means the context node.
    std::string start;
    std::vector<Step> steps;

    friend bool operator==(const PathExpr&, const PathExpr&) = default;
};

// Surface syntax, e.g. "A//p#1", "//item/@id", "child count", "//p#1/#".
PathExpr parse_path(std::string_view text);
std::string to_string(const PathExpr& p);

enum class SolutionMode { first_only, all_solutions };

struct PathOptions {
    // '#' on an element reads its direct text children.
    bool text_coercion = true;
    // Root used by the lvl step; defaults to the context node.
    std::optional<Node> root;
};

ResultStream eval_path(const Node& ctx, const PathExpr& path, SolutionMode mode, const PathOptions& options = {});

std::string result_to_string(const Result& r);

}  // namespace ltl
