#include "path_parser.hpp"

namespace ltl {

namespace detail {

namespace {

bool terminates(StepKind k)
{
    switch (k) {
    case StepKind::attr_value:
    case StepKind::attr_name_by_value:
    case StepKind::text_value:
    case StepKind::pi_value:
    case StepKind::count_children:
    case StepKind::lvl:
        return true;
    default:
        return false;
    }
}

}  // namespace

PathExpr parse_path_steps(Lexer& lx)
{
    PathExpr path;
    const Token first = lx.peek();
    if (first.kind == Tok::var)
        path.start = lx.next().text;

    bool terminated = false;
    for (;;) {
        const Token t = lx.peek();
        Step step{StepKind::index, {}, 0};
        switch (t.kind) {
        case Tok::dslash:
            lx.next();
            if (lx.raw_next_char() == '*') {
                lx.next();
                step = {StepKind::descendant_or_self_named, "*", 0};
            } else {
                step = {StepKind::descendant_or_self_named, lx.read_xml_name(), 0};
            }
            break;
        case Tok::slash:
            lx.next();
            if (lx.raw_next_char() == '#' && lx.peek().kind == Tok::hash) {
                lx.next();
                step = {StepKind::text_value, {}, 0};
            } else if (lx.raw_next_char() == '@' && lx.peek().kind == Tok::at) {
                lx.next();
                step = {StepKind::attr_value, lx.read_xml_name(), 0};
            } else {
                step = {StepKind::child_named, lx.read_xml_name(), 0};
            }
            break;
        case Tok::at:
            lx.next();
            step = {StepKind::attr_value, lx.read_xml_name(), 0};
            break;
        case Tok::hash:
            lx.next();
            step = {StepKind::text_value, {}, 0};
            break;
        case Tok::hash_index:
            lx.next();
            if (t.value < 1)
                throw lx.error_at(t, "path index must be at least 1");
            step = {StepKind::index, {}, static_cast<std::size_t>(t.value)};
            break;
        case Tok::question:
            lx.next();
            step = {StepKind::pi_value, {}, 0};
            break;
        case Tok::atom:
            if (t.text == "child") {
                step = {StepKind::children, {}, 0};
            } else if (t.text == "descendant") {
                step = {StepKind::descendants, {}, 0};
            } else if (t.text == "last") {
                step = {StepKind::last_child, {}, 0};
            } else if (t.text == "count") {
                step = {StepKind::count_children, {}, 0};
            } else if (t.text == "lvl") {
                step = {StepKind::lvl, {}, 0};
            } else if (t.text == "id") {
                lx.next();
                lx.expect(Tok::lparen, "'(' after id");
                const Token v = lx.next();
                if (v.kind != Tok::string && v.kind != Tok::qatom && v.kind != Tok::atom && v.kind != Tok::integer)
                    throw lx.error_at(v, "expected an attribute value in id(...)");
                lx.expect(Tok::rparen, "')'");
                step = {StepKind::attr_name_by_value, v.text, 0};
                break;
            } else {
                throw lx.error_at(t, "unknown path step '" + t.text + "'");
            }
            lx.next();
            break;
        default:
            if (path.steps.empty())
                throw lx.error_at(t, std::string("expected a path step, found ") + describe(t.kind));
            return path;
        }
        if (terminated && step.kind != StepKind::index)
            throw lx.error_at(t, "only #k may follow a step that yields values");
        terminated = terminated || terminates(step.kind);
        path.steps.push_back(std::move(step));
    }
}

}  // namespace detail

PathExpr parse_path(std::string_view text)
{
    detail::Lexer lx(text, ErrorKind::parse);
    PathExpr path = detail::parse_path_steps(lx);
    const auto& rest = lx.peek();
    if (rest.kind != detail::Tok::end)
        throw lx.error_at(rest, std::string("unexpected ") + detail::describe(rest.kind) + " in path");
    return path;
}

namespace {

bool plain_name(const std::string& s)
{
    if (s.empty() || (s[0] >= '0' && s[0] <= '9') || s[0] == '-' || s[0] == '.')
        return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-'
            || c == '.' || c == ':' || static_cast<unsigned char>(c) >= 0x80;
        if (!ok)
            return false;
    }
    return true;
}

std::string name_text(const std::string& s)
{
    if (plain_name(s))
        return s;
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "'";
}

}  // namespace

std::string to_string(const PathExpr& p)
{
    std::string out = p.start;
    for (const auto& s : p.steps) {
        switch (s.kind) {
        case StepKind::child_named: out += "/" + name_text(s.arg); break;
        case StepKind::descendant_or_self_named: out += "//" + (s.arg == "*" ? s.arg : name_text(s.arg)); break;
        case StepKind::attr_value: out += "@" + name_text(s.arg); break;
        case StepKind::attr_name_by_value: out += " id(" + name_text(s.arg) + ")"; break;
        case StepKind::text_value: out += "#"; break;
        case StepKind::pi_value: out += "?"; break;
        case StepKind::children: out += " child"; break;
        case StepKind::descendants: out += " descendant"; break;
        case StepKind::last_child: out += " last"; break;
        case StepKind::count_children: out += " count"; break;
        case StepKind::lvl: out += " lvl"; break;
        case StepKind::index: out += "#" + std::to_string(s.index); break;
        }
    }
    return out;
}

}  // namespace ltl
