#include "ltl/query.hpp"

#include "ltl/error.hpp"
#include "ltl/xml_io.hpp"

#include <algorithm>

namespace ltl {

namespace {

void require_element(const Node& n, const char* op)
{
    if (!n.is_element())
        throw Error(ErrorKind::type_mismatch, std::string(op) + " expects an element node");
}

// Lazily walks the subtree of `root` in document order. The stream owns a
// copy of the root handle, which keeps the pointers on its stack alive.
NodeStream walk_subtree(const Node& root, bool include_self)
{
    struct State {
        Node root;
        std::vector<const Node*> stack;
    };
    auto state = std::make_shared<State>(State{root, {}});
    if (include_self) {
        state->stack.push_back(&state->root);
    } else {
        const auto& kids = state->root.children();
        for (auto it = kids.rbegin(); it != kids.rend(); ++it)
            state->stack.push_back(&*it);
    }
    return NodeStream([state]() -> std::optional<Node> {
        if (state->stack.empty())
            return std::nullopt;
        const Node* cur = state->stack.back();
        state->stack.pop_back();
        const auto& kids = cur->children();
        for (auto it = kids.rbegin(); it != kids.rend(); ++it)
            state->stack.push_back(&*it);
        return *cur;
    });
}

}  // namespace

std::string to_string(const IndexPath& p)
{
    std::string out = "[";
    for (std::size_t i = 0; i < p.indices.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(p.indices[i]);
    }
    return out + "]";
}

NodeStream child_by_name(const Node& e, const std::string& name)
{
    require_element(e, "/");
    return children(e).filter([name](const Node& c) { return c.is_element() && c.name() == name; });
}

NodeStream descendant_or_self_by_name(const Node& e, const std::string& name)
{
    require_element(e, "//");
    return walk_subtree(e, true).filter(
        [name](const Node& c) { return c.is_element() && (name == "*" || c.name() == name); });
}

std::optional<std::string> attr_value(const Node& e, const std::string& name)
{
    require_element(e, "@");
    for (const auto& a : e.attributes()) {
        if (a.name == name)
            return a.value;
    }
    return std::nullopt;
}

Stream<std::string> attr_name_by_value(const Node& e, const std::string& value)
{
    require_element(e, "id");
    std::vector<std::string> names;
    for (const auto& a : e.attributes()) {
        if (a.value == value)
            names.push_back(a.name);
    }
    return Stream<std::string>::of(std::move(names));
}

std::optional<std::string> text_value(const Node& n)
{
    if (!n.is_text())
        return std::nullopt;
    return n.content();
}

std::optional<std::string> pi_value(const Node& n)
{
    if (n.kind() != NodeKind::pi)
        return std::nullopt;
    return n.content();
}

NodeStream children(const Node& e)
{
    require_element(e, "child");
    auto state = std::make_shared<std::pair<Node, std::size_t>>(e, 0);
    return NodeStream([state]() -> std::optional<Node> {
        const auto& kids = state->first.children();
        if (state->second >= kids.size())
            return std::nullopt;
        return kids[state->second++];
    });
}

NodeStream descendants(const Node& e)
{
    if (!e.is_element())
        return NodeStream();
    return walk_subtree(e, false);
}

std::optional<Node> last_child(const Node& e)
{
    require_element(e, "last");
    if (e.children().empty())
        return std::nullopt;
    return e.children().back();
}

std::size_t count_children(const Node& e)
{
    require_element(e, "count");
    return e.children().size();
}

Stream<IndexPath> lvl(const Node& root, const Node& target)
{
    require_element(root, "lvl");
    struct Frame {
        const Node* node;
        std::vector<std::size_t> path;
    };
    struct State {
        Node root;
        Node target;
        std::vector<Frame> stack;
    };
    auto state = std::make_shared<State>(State{root, target, {}});
    state->stack.push_back({&state->root, {}});
    return Stream<IndexPath>([state]() -> std::optional<IndexPath> {
        while (!state->stack.empty()) {
            Frame f = std::move(state->stack.back());
            state->stack.pop_back();
            const auto& kids = f.node->children();
            for (std::size_t i = kids.size(); i-- > 0;) {
                auto p = f.path;
                p.push_back(i + 1);
                state->stack.push_back({&kids[i], std::move(p)});
            }
            if (*f.node == state->target)
                return IndexPath{std::move(f.path)};
        }
        return std::nullopt;
    });
}

const Node& node_at(const Node& root, const IndexPath& path)
{
    const Node* cur = &root;
    for (std::size_t depth = 0; depth < path.indices.size(); ++depth) {
        std::size_t i = path.indices[depth];
        if (i < 1 || i > cur->children().size())
            throw Error(ErrorKind::bad_index_path,
                        "index path " + to_string(path) + " is invalid at position " + std::to_string(depth + 1));
        cur = &cur->children()[i - 1];
    }
    return *cur;
}

std::string to_string(const std::vector<Move>& moves)
{
    std::string out = "[";
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (i)
            out += ',';
        out += moves[i].kind == Move::Kind::up ? std::string("up") : "down(" + std::to_string(moves[i].index) + ")";
    }
    return out + "]";
}

std::vector<Move> reachable(const Node& root, const IndexPath& u, const IndexPath& v)
{
    node_at(root, u);
    node_at(root, v);
    auto [u_it, v_it] = std::mismatch(u.indices.begin(), u.indices.end(), v.indices.begin(), v.indices.end());
    std::vector<Move> moves(static_cast<std::size_t>(u.indices.end() - u_it), Move::up());
    for (; v_it != v.indices.end(); ++v_it)
        moves.push_back(Move::down(*v_it));
    return moves;
}

Node copy(const Node& x) { return x; }

Node copy_of(const Node& x)
{
    require_element(x, "copy_of");
    return Node::element(x.name(), x.attributes(), {});
}

namespace {

template <class Pred>
std::optional<Node> remove_first(const Node& e, Pred matches, const char* op)
{
    require_element(e, op);
    const auto& kids = e.children();
    auto it = std::find_if(kids.begin(), kids.end(), matches);
    if (it == kids.end())
        return std::nullopt;
    Hedge rest;
    rest.reserve(kids.size() - 1);
    rest.insert(rest.end(), kids.begin(), it);
    rest.insert(rest.end(), std::next(it), kids.end());
    return Node::element(e.name(), e.attributes(), std::move(rest));
}

}  // namespace

std::optional<Node> rem_el(const Node& e, const std::string& name)
{
    return remove_first(e, [&](const Node& c) { return c.is_element() && c.name() == name; }, "remEl");
}

std::optional<Node> rem(const Node& e, const Node& child)
{
    return remove_first(e, [&](const Node& c) { return c == child; }, "rem");
}

namespace {

const char* step_symbol(StepKind k)
{
    switch (k) {
    case StepKind::child_named: return "/";
    case StepKind::descendant_or_self_named: return "//";
    case StepKind::attr_value: return "@";
    case StepKind::attr_name_by_value: return "id";
    case StepKind::text_value: return "#";
    case StepKind::pi_value: return "?";
    case StepKind::children: return "child";
    case StepKind::descendants: return "descendant";
    case StepKind::last_child: return "last";
    case StepKind::count_children: return "count";
    case StepKind::lvl: return "lvl";
    case StepKind::index: return "#k";
    }
    return "?";
}

template <class T>
ResultStream widen(Stream<T> s)
{
    return s.map([](T v) { return Result(std::move(v)); });
}

template <class T>
ResultStream from_optional(std::optional<T> v)
{
    if (!v)
        return ResultStream();
    return ResultStream::single(Result(std::move(*v)));
}

ResultStream apply_step(const Step& step, std::size_t position, const Result& input, const PathOptions& options,
                        const Node& root)
{
    const Node* n = std::get_if<Node>(&input);
    auto mismatch = [&](const std::string& why) {
        return Error(ErrorKind::type_mismatch, "path step " + std::to_string(position) + " ('"
                                                   + step_symbol(step.kind) + "'): " + why);
    };
    if (!n)
        throw mismatch("expects a node, got the value " + result_to_string(input));
    try {
        switch (step.kind) {
        case StepKind::child_named: return widen(child_by_name(*n, step.arg));
        case StepKind::descendant_or_self_named: return widen(descendant_or_self_by_name(*n, step.arg));
        case StepKind::attr_value: return from_optional(attr_value(*n, step.arg));
        case StepKind::attr_name_by_value: return widen(attr_name_by_value(*n, step.arg));
        case StepKind::text_value:
            if (n->is_element() && options.text_coercion) {
                return widen(children(*n).filter([](const Node& c) { return c.is_text(); }).map([](Node c) {
                    return c.content();
                }));
            }
            return from_optional(text_value(*n));
        case StepKind::pi_value: return from_optional(pi_value(*n));
        case StepKind::children: return widen(children(*n));
        case StepKind::descendants: return widen(descendants(*n));
        case StepKind::last_child: return from_optional(last_child(*n));
        case StepKind::count_children: return ResultStream::single(Result(count_children(*n)));
        case StepKind::lvl: return widen(lvl(root, *n));
        case StepKind::index: break;
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::type_mismatch)
            throw mismatch(e.what());
        throw;
    }
    throw mismatch("index steps apply to the whole stream");
}

ResultStream select_index(ResultStream input, std::size_t k)
{
    auto state = std::make_shared<std::pair<ResultStream, bool>>(std::move(input), false);
    return ResultStream([state, k]() -> std::optional<Result> {
        if (state->second)
            return std::nullopt;
        state->second = true;
        for (std::size_t i = 1; i < k; ++i) {
            if (!state->first.next())
                return std::nullopt;
        }
        return state->first.next();
    });
}

}  // namespace

ResultStream eval_path(const Node& ctx, const PathExpr& path, SolutionMode mode, const PathOptions& options)
{
    if (path.steps.empty())
        throw Error(ErrorKind::invalid_argument, "path expression has no steps");
    Node root = options.root.value_or(ctx);
    ResultStream current = ResultStream::single(Result(ctx));
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        const Step& step = path.steps[i];
        if (step.kind == StepKind::index) {
            current = select_index(std::move(current), step.index);
            continue;
        }
        current = current.flat_map([step, position = i + 1, options, root](Result r) {
            return apply_step(step, position, r, options, root);
        });
    }
    if (mode == SolutionMode::first_only)
        return current.take(1);
    return current;
}

std::string result_to_string(const Result& r)
{
    struct Visitor {
        std::string operator()(const Node& n) const { return serialize(n); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(std::size_t v) const { return std::to_string(v); }
        std::string operator()(const IndexPath& p) const { return to_string(p); }
    };
    return std::visit(Visitor{}, r);
}

}  // namespace ltl
