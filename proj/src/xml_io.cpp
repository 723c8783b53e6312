#include "ltl/xml_io.hpp"

#include "ltl/error.hpp"

#include <set>

namespace ltl {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c)
{
    auto u = static_cast<unsigned char>(c);
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || u >= 0x80;
}

bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.'; }

class XmlParser {
public:
    explicit XmlParser(std::string_view text) : s_(text) {}

    Node parse_document()
    {
        if (s_.substr(0, 3) == "\xEF\xBB\xBF")
            pos_ = 3;
        skip_misc();
        if (at_end())
            throw error(pos_, "document has no root element; the top node has to be an element node");
        if (peek() != '<' || !is_name_start(peek(1)))
            throw error(pos_, "the top node has to be an element node");
        Node root = parse_element();
        skip_misc();
        if (!at_end())
            throw error(pos_, "unexpected content after the root element");
        return root;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= s_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
    bool looking_at(std::string_view lit) const { return s_.substr(pos_, lit.size()) == lit; }

    Error error(std::size_t offset, const std::string& message, ErrorKind kind = ErrorKind::parse) const
    {
        if (!s_.empty() && offset >= s_.size())
            offset = s_.size() - 1;
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset && i < s_.size(); ++i) {
            auto u = static_cast<unsigned char>(s_[i]);
            if (s_[i] == '\n') {
                ++line;
                column = 1;
            } else if ((u & 0xC0) != 0x80) {
                ++column;
            }
        }
        return Error(kind, message, line, column);
    }

    void skip_space()
    {
        while (!at_end() && is_space(peek()))
            ++pos_;
    }

    // Whitespace, comments, PIs and DOCTYPE outside the root element.
    void skip_misc()
    {
        for (;;) {
            skip_space();
            if (looking_at("<?")) {
                read_until(pos_ + 2, "?>", "unterminated processing instruction");
            } else if (looking_at("<!--")) {
                read_until(pos_ + 4, "-->", "unterminated comment");
            } else if (looking_at("<!DOCTYPE")) {
                skip_doctype();
            } else {
                return;
            }
        }
    }

    // Returns the text between `from` and the terminator and moves past it.
    std::string read_until(std::size_t from, std::string_view terminator, const char* message)
    {
        auto end = s_.find(terminator, from);
        if (end == std::string_view::npos)
            throw error(pos_, message);
        std::string out(s_.substr(from, end - from));
        pos_ = end + terminator.size();
        return out;
    }

    void skip_doctype()
    {
        std::size_t start = pos_;
        int depth = 0;
        char quote = 0;
        for (pos_ += 9; !at_end(); ++pos_) {
            char c = peek();
            if (quote) {
                if (c == quote)
                    quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '[') {
                ++depth;
            } else if (c == ']') {
                --depth;
            } else if (c == '>' && depth <= 0) {
                ++pos_;
                return;
            }
        }
        throw error(start, "unterminated DOCTYPE");
    }

    std::string parse_name()
    {
        std::size_t start = pos_;
        if (!is_name_start(peek()))
            throw error(pos_, "expected a name");
        while (!at_end() && is_name_char(peek()))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    void append_reference(std::string& out)
    {
        std::size_t start = pos_;
        auto end = s_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 12)
            throw error(start, "unterminated entity reference");
        std::string_view ref = s_.substr(pos_ + 1, end - pos_ - 1);
        pos_ = end + 1;
        if (ref == "amp") { out += '&'; return; }
        if (ref == "lt") { out += '<'; return; }
        if (ref == "gt") { out += '>'; return; }
        if (ref == "quot") { out += '"'; return; }
        if (ref == "apos") { out += '\''; return; }
        if (ref.size() > 1 && ref[0] == '#') {
            unsigned long cp = 0;
            bool hex = ref[1] == 'x';
            std::string_view digits = ref.substr(hex ? 2 : 1);
            if (digits.empty())
                throw error(start, "malformed character reference");
            for (char d : digits) {
                int v;
                if (d >= '0' && d <= '9')
                    v = d - '0';
                else if (hex && d >= 'a' && d <= 'f')
                    v = d - 'a' + 10;
                else if (hex && d >= 'A' && d <= 'F')
                    v = d - 'A' + 10;
                else
                    throw error(start, "malformed character reference");
                cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
                if (cp > 0x10FFFF)
                    throw error(start, "character reference out of range");
            }
            if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF))
                throw error(start, "character reference to an invalid character");
            out += utf8_encode(static_cast<char32_t>(cp));
            return;
        }
        throw error(start, "undefined entity '&" + std::string(ref) + ";'");
    }

    std::string parse_attribute_value()
    {
        char quote = peek();
        if (quote != '"' && quote != '\'')
            throw error(pos_, "expected a quoted attribute value");
        std::size_t start = pos_++;
        std::string value;
        for (;;) {
            if (at_end())
                throw error(start, "unterminated attribute value");
            char c = peek();
            if (c == quote) {
                ++pos_;
                return value;
            }
            if (c == '<')
                throw error(pos_, "'<' is not allowed in attribute values");
            if (c == '&') {
                append_reference(value);
            } else {
                value += c;
                ++pos_;
            }
        }
    }

    Node parse_element()
    {
        std::size_t start = pos_;
        ++pos_;  // '<'
        std::string name = parse_name();
        std::vector<Attribute> attributes;
        std::set<std::string> seen;
        for (;;) {
            std::size_t before_space = pos_;
            skip_space();
            if (looking_at("/>")) {
                pos_ += 2;
                return Node::element(std::move(name), std::move(attributes));
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            if (at_end())
                throw error(start, "unterminated start tag <" + name + ">");
            if (before_space == pos_)
                throw error(pos_, "expected whitespace, '>' or '/>' in start tag <" + name + ">");
            std::size_t attr_pos = pos_;
            std::string attr_name = parse_name();
            skip_space();
            if (peek() != '=')
                throw error(pos_, "expected '=' after attribute name '" + attr_name + "'");
            ++pos_;
            skip_space();
            std::string value = parse_attribute_value();
            if (!seen.insert(attr_name).second)
                throw error(attr_pos, "duplicate attribute '" + attr_name + "' in element <" + name + ">",
                            ErrorKind::duplicate_attribute);
            attributes.push_back({std::move(attr_name), std::move(value)});
        }

        Hedge children;
        std::string text;
        auto flush = [&] {
            if (!text.empty()) {
                children.push_back(Node::text(std::move(text)));
                text.clear();
            }
        };
        for (;;) {
            if (at_end())
                throw error(start, "element <" + name + "> is not closed");
            char c = peek();
            if (c == '&') {
                append_reference(text);
            } else if (c != '<') {
                text += c;
                ++pos_;
            } else if (looking_at("</")) {
                flush();
                std::size_t end_pos = pos_;
                pos_ += 2;
                std::string end_name = is_name_start(peek()) ? parse_name() : std::string();
                if (end_name != name)
                    throw error(start, "element <" + name + "> is not closed (found </" + end_name + "> instead)");
                skip_space();
                if (peek() != '>')
                    throw error(end_pos, "malformed end tag </" + end_name + ">");
                ++pos_;
                return Node::element(std::move(name), std::move(attributes), std::move(children));
            } else if (looking_at("<!--")) {
                flush();
                std::size_t at = pos_;
                std::string body = read_until(pos_ + 4, "-->", "unterminated comment");
                if (body.find("--") != std::string::npos)
                    throw error(at, "'--' is not allowed inside comments");
                children.push_back(Node::comment(std::move(body)));
            } else if (looking_at("<![CDATA[")) {
                text += read_until(pos_ + 9, "]]>", "unterminated CDATA section");
            } else if (looking_at("<?")) {
                flush();
                children.push_back(Node::pi(read_until(pos_ + 2, "?>", "unterminated processing instruction")));
            } else if (is_name_start(peek(1))) {
                flush();
                children.push_back(parse_element());
            } else {
                throw error(pos_, "stray '<' in content");
            }
        }
    }
};

void write_node(std::string& out, const Node& n)
{
    switch (n.kind()) {
    case NodeKind::text:
        out += escape_text(n.content());
        return;
    case NodeKind::pi:
        out += "<?" + n.content() + "?>";
        return;
    case NodeKind::comment:
        out += "<!--" + n.content() + "-->";
        return;
    case NodeKind::element:
        break;
    }
    out += '<';
    out += n.name();
    for (const auto& a : n.attributes()) {
        out += ' ';
        out += a.name;
        out += "=\"";
        out += escape_attribute(a.value);
        out += '"';
    }
    if (n.children().empty()) {
        out += "/>";
        return;
    }
    out += '>';
    for (const auto& c : n.children())
        write_node(out, c);
    out += "</";
    out += n.name();
    out += '>';
}

constexpr std::string_view xml_declaration = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

}  // namespace

Node parse_xml(std::string_view xml_text) { return XmlParser(xml_text).parse_document(); }

std::string escape_text(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string escape_attribute(std::string_view value)
{
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string serialize(const Node& n, const SerializeOptions& options)
{
    std::string out;
    if (options.xml_declaration)
        out += xml_declaration;
    write_node(out, n);
    return out;
}

std::string serialize(const Hedge& hedge, const SerializeOptions& options)
{
    std::string out;
    if (options.xml_declaration)
        out += xml_declaration;
    for (const auto& n : hedge)
        write_node(out, n);
    return out;
}

}  // namespace ltl
