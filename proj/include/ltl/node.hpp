#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ltl {

enum class NodeKind { element, text, pi, comment };

struct Attribute {
    std::string name;
    std::string value;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

class Node;
using Hedge = std::vector<Node>;

// Immutable XML node. Copies share the underlying tree, so passing nodes
// around by value is cheap and safe across threads. Equality is structural
// and attribute-order sensitive.
class Node {
public:
    static Node element(std::string name, std::vector<Attribute> attributes = {}, Hedge children = {});
    static Node text(std::string content);
    static Node pi(std::string content);
    static Node comment(std::string content);

    NodeKind kind() const noexcept;
    bool is_element() const noexcept { return kind() == NodeKind::element; }
    bool is_text() const noexcept { return kind() == NodeKind::text; }

    // Element name; empty for other variants.
    const std::string& name() const noexcept;
    // Character content of text/pi/comment; empty for elements.
    const std::string& content() const noexcept;
    const std::vector<Attribute>& attributes() const noexcept;
    const Hedge& children() const noexcept;

    // Number of nodes in this subtree, counting the node itself.
    std::size_t size() const;

    friend bool operator==(const Node& a, const Node& b);

private:
    struct Data;
    explicit Node(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

bool node_equal(const Node& a, const Node& b);

// Sorts attributes by name (code point order) at every element. Throws
// Error{duplicate_attribute} if an element repeats an attribute name.
Node canonicalize(const Node& n);
bool is_canonical(const Node& n);

// Pre-order enumeration; the first item is n itself.
std::vector<Node> document_order(const Node& n);

// Marker characters used to fold PIs, comments and attributes into text.
struct SentinelConfig {
    char32_t pi_mark = 0xE000;
    char32_t comment_mark = 0xE001;
    char32_t attr_mark = 0xE002;

    // Throws Error{invalid_argument} unless the three marks are distinct
    // valid code points.
    void validate() const;

    friend bool operator==(const SentinelConfig&, const SentinelConfig&) = default;
};

Node encode_core(const Node& n, const SentinelConfig& sentinels = {});
Node decode_core(const Node& n, const SentinelConfig& sentinels = {});

// True if the subtree holds only element and text nodes without attributes.
bool is_core_only(const Node& n);

std::string utf8_encode(char32_t cp);

}  // namespace ltl
