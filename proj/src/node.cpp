#include "ltl/node.hpp"

#include "ltl/error.hpp"

#include <algorithm>
#include <set>

namespace ltl {

struct Node::Data {
    NodeKind kind;
    std::string name_or_content;
    std::vector<Attribute> attributes;
    Hedge children;
};

namespace {

const std::string empty_string;
const std::vector<Attribute> empty_attributes;
const Hedge empty_hedge;

}  // namespace

Node Node::element(std::string name, std::vector<Attribute> attributes, Hedge children)
{
    if (name.empty())
        throw Error(ErrorKind::invalid_argument, "element name must not be empty");
    for (const auto& a : attributes) {
        if (a.name.empty())
            throw Error(ErrorKind::invalid_argument, "attribute name must not be empty in element '" + name + "'");
    }
    return Node(std::make_shared<const Data>(
        Data{NodeKind::element, std::move(name), std::move(attributes), std::move(children)}));
}

Node Node::text(std::string content)
{
    return Node(std::make_shared<const Data>(Data{NodeKind::text, std::move(content), {}, {}}));
}

Node Node::pi(std::string content)
{
    return Node(std::make_shared<const Data>(Data{NodeKind::pi, std::move(content), {}, {}}));
}

Node Node::comment(std::string content)
{
    return Node(std::make_shared<const Data>(Data{NodeKind::comment, std::move(content), {}, {}}));
}

NodeKind Node::kind() const noexcept { return data_->kind; }

const std::string& Node::name() const noexcept
{
    return data_->kind == NodeKind::element ? data_->name_or_content : empty_string;
}

const std::string& Node::content() const noexcept
{
    return data_->kind == NodeKind::element ? empty_string : data_->name_or_content;
}

const std::vector<Attribute>& Node::attributes() const noexcept { return data_->attributes; }

const Hedge& Node::children() const noexcept { return data_->children; }

std::size_t Node::size() const
{
    std::size_t total = 1;
    for (const auto& c : data_->children)
        total += c.size();
    return total;
}

bool operator==(const Node& a, const Node& b)
{
    if (a.data_ == b.data_)
        return true;
    const auto& x = *a.data_;
    const auto& y = *b.data_;
    return x.kind == y.kind && x.name_or_content == y.name_or_content && x.attributes == y.attributes
        && x.children == y.children;
}

bool node_equal(const Node& a, const Node& b) { return a == b; }

Node canonicalize(const Node& n)
{
    if (!n.is_element())
        return n;
    std::vector<Attribute> attrs = n.attributes();
    std::stable_sort(attrs.begin(), attrs.end(),
                     [](const Attribute& l, const Attribute& r) { return l.name < r.name; });
    for (std::size_t i = 1; i < attrs.size(); ++i) {
        if (attrs[i - 1].name == attrs[i].name)
            throw Error(ErrorKind::duplicate_attribute,
                        "duplicate attribute '" + attrs[i].name + "' in element '" + n.name() + "'");
    }
    Hedge children;
    children.reserve(n.children().size());
    for (const auto& c : n.children())
        children.push_back(canonicalize(c));
    return Node::element(n.name(), std::move(attrs), std::move(children));
}

bool is_canonical(const Node& n)
{
    if (!n.is_element())
        return true;
    const auto& attrs = n.attributes();
    for (std::size_t i = 1; i < attrs.size(); ++i) {
        if (!(attrs[i - 1].name < attrs[i].name))
            return false;
    }
    return std::all_of(n.children().begin(), n.children().end(), [](const Node& c) { return is_canonical(c); });
}

std::vector<Node> document_order(const Node& n)
{
    std::vector<Node> out;
    std::vector<const Node*> stack{&n};
    while (!stack.empty()) {
        const Node* cur = stack.back();
        stack.pop_back();
        out.push_back(*cur);
        const auto& kids = cur->children();
        for (auto it = kids.rbegin(); it != kids.rend(); ++it)
            stack.push_back(&*it);
    }
    return out;
}

std::string utf8_encode(char32_t cp)
{
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

void SentinelConfig::validate() const
{
    for (char32_t c : {pi_mark, comment_mark, attr_mark}) {
        if (c == 0 || c > 0x10FFFF || (c >= 0xD800 && c <= 0xDFFF))
            throw Error(ErrorKind::invalid_argument, "sentinel is not a valid code point");
    }
    if (pi_mark == comment_mark || pi_mark == attr_mark || comment_mark == attr_mark)
        throw Error(ErrorKind::invalid_argument, "sentinel characters must be pairwise distinct");
}

namespace {

struct Marks {
    std::string pi;
    std::string comment;
    std::string attr;

    explicit Marks(const SentinelConfig& s)
        : pi(utf8_encode(s.pi_mark)), comment(utf8_encode(s.comment_mark)), attr(utf8_encode(s.attr_mark))
    {
    }

    const std::string* found_in(const std::string& text) const
    {
        for (const std::string* m : {&pi, &comment, &attr}) {
            if (text.find(*m) != std::string::npos)
                return m;
        }
        return nullptr;
    }
};

std::string location_string(const std::vector<std::size_t>& path)
{
    std::string out;
    for (auto i : path)
        out += "/" + std::to_string(i);
    return out.empty() ? "/" : out;
}

void check_collision(const Marks& marks, const std::string& text, const std::vector<std::size_t>& path,
                     const std::string& what)
{
    if (marks.found_in(text))
        throw Error(ErrorKind::sentinel_collision,
                    "sentinel character in " + what + " at node " + location_string(path));
}

Node encode_rec(const Node& n, const Marks& marks, std::vector<std::size_t>& path)
{
    switch (n.kind()) {
    case NodeKind::text:
        check_collision(marks, n.content(), path, "text");
        return n;
    case NodeKind::pi:
        check_collision(marks, n.content(), path, "processing instruction");
        return Node::text(marks.pi + n.content());
    case NodeKind::comment:
        check_collision(marks, n.content(), path, "comment");
        return Node::text(marks.comment + n.content());
    case NodeKind::element:
        break;
    }
    Hedge children;
    children.reserve(n.attributes().size() + n.children().size());
    for (const auto& a : n.attributes()) {
        check_collision(marks, a.value, path, "attribute '" + a.name + "'");
        children.push_back(Node::element(a.name, {}, {Node::text(marks.attr + a.value)}));
    }
    for (std::size_t i = 0; i < n.children().size(); ++i) {
        path.push_back(i + 1);
        children.push_back(encode_rec(n.children()[i], marks, path));
        path.pop_back();
    }
    return Node::element(n.name(), {}, std::move(children));
}

bool starts_with(const std::string& s, const std::string& prefix)
{
    return s.compare(0, prefix.size(), prefix) == 0;
}

// An attribute child is element(name,[],[text(attr_mark . value)]).
bool is_attribute_child(const Node& n, const Marks& marks)
{
    return n.is_element() && n.attributes().empty() && n.children().size() == 1 && n.children()[0].is_text()
        && starts_with(n.children()[0].content(), marks.attr);
}

Node decode_rec(const Node& n, const Marks& marks, std::vector<std::size_t>& path)
{
    auto fail = [&](const std::string& why) {
        return Error(ErrorKind::decode, why + " at node " + location_string(path));
    };
    switch (n.kind()) {
    case NodeKind::text: {
        const auto& t = n.content();
        // A second mark inside one text means two encoded siblings were
        // merged, e.g. by serializing and reparsing.
        if (starts_with(t, marks.pi)) {
            std::string rest = t.substr(marks.pi.size());
            if (marks.found_in(rest))
                throw fail("misplaced sentinel in text");
            return Node::pi(std::move(rest));
        }
        if (starts_with(t, marks.comment)) {
            std::string rest = t.substr(marks.comment.size());
            if (marks.found_in(rest))
                throw fail("misplaced sentinel in text");
            return Node::comment(std::move(rest));
        }
        if (marks.found_in(t))
            throw fail("misplaced sentinel in text");
        return n;
    }
    case NodeKind::pi:
    case NodeKind::comment:
        throw fail("encoded documents contain only elements and text");
    case NodeKind::element:
        break;
    }
    if (!n.attributes().empty())
        throw fail("encoded element carries attributes");

    std::vector<Attribute> attrs;
    Hedge children;
    std::set<std::string> seen;
    bool in_attributes = true;
    const auto& kids = n.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const Node& c = kids[i];
        if (is_attribute_child(c, marks)) {
            if (!in_attributes) {
                path.push_back(i + 1);
                throw fail("attribute encoding after ordinary child");
            }
            if (!seen.insert(c.name()).second) {
                path.push_back(i + 1);
                throw fail("duplicate encoded attribute '" + c.name() + "'");
            }
            std::string value = c.children()[0].content().substr(marks.attr.size());
            if (marks.found_in(value)) {
                path.push_back(i + 1);
                throw fail("misplaced sentinel in text");
            }
            attrs.push_back({c.name(), std::move(value)});
            continue;
        }
        in_attributes = false;
        path.push_back(i + 1);
        children.push_back(decode_rec(c, marks, path));
        path.pop_back();
    }
    return Node::element(n.name(), std::move(attrs), std::move(children));
}

}  // namespace

Node encode_core(const Node& n, const SentinelConfig& sentinels)
{
    sentinels.validate();
    Marks marks(sentinels);
    std::vector<std::size_t> path;
    return encode_rec(n, marks, path);
}

Node decode_core(const Node& n, const SentinelConfig& sentinels)
{
    sentinels.validate();
    Marks marks(sentinels);
    std::vector<std::size_t> path;
    return decode_rec(n, marks, path);
}

bool is_core_only(const Node& n)
{
    switch (n.kind()) {
    case NodeKind::text:
        return true;
    case NodeKind::pi:
    case NodeKind::comment:
        return false;
    case NodeKind::element:
        break;
    }
    if (!n.attributes().empty())
        return false;
    return std::all_of(n.children().begin(), n.children().end(), [](const Node& c) { return is_core_only(c); });
}

}  // namespace ltl
