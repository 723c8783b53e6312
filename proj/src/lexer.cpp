#include "lexer.hpp"

namespace ltl::detail {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident(char c) { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_'; }

bool is_xml_name_char(char c)
{
    return is_ident(c) || c == '-' || c == '.' || c == ':' || static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

const char* describe(Tok t)
{
    switch (t) {
    case Tok::end: return "end of input";
    case Tok::var: return "variable";
    case Tok::anon: return "'_'";
    case Tok::atom: return "atom";
    case Tok::qatom: return "quoted atom";
    case Tok::string: return "string";
    case Tok::integer: return "integer";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrack: return "'['";
    case Tok::rbrack: return "']'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::neck: return "':-'";
    case Tok::eq: return "'='";
    case Tok::slash: return "'/'";
    case Tok::dslash: return "'//'";
    case Tok::at: return "'@'";
    case Tok::hash: return "'#'";
    case Tok::hash_index: return "'#k'";
    case Tok::question: return "'?'";
    case Tok::star: return "'*'";
    }
    return "token";
}

Lexer::Lexer(std::string_view source, ErrorKind error_kind) : src_(source), error_kind_(error_kind) {}

void Lexer::advance(std::size_t n)
{
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++column_;
        }
    }
}

void Lexer::skip_layout()
{
    for (;;) {
        char c = cur();
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            advance();
        } else if (c == '%') {
            while (pos_ < src_.size() && cur() != '\n')
                advance();
        } else {
            return;
        }
    }
}

Error Lexer::error_at(const Token& t, const std::string& message) const
{
    return Error(error_kind_, message, t.line, t.column);
}

Error Lexer::error_here(const std::string& message)
{
    return error_at(peek(), message);
}

std::string Lexer::lex_quoted(char quote, const Token& start)
{
    std::string out;
    advance();  // opening quote
    for (;;) {
        if (pos_ >= src_.size())
            throw error_at(start, "unterminated quoted text");
        char c = cur();
        if (c == quote) {
            advance();
            return out;
        }
        if (c == '\\') {
            char e = cur(1);
            switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case '\\': out += '\\'; break;
            case '"': out += '"'; break;
            case '\'': out += '\''; break;
            default:
                throw error_at(start, std::string("unknown escape '\\") + e + "'");
            }
            advance(2);
            continue;
        }
        out += c;
        advance();
    }
}

Token Lexer::lex()
{
    skip_layout();
    Token t;
    t.line = line_;
    t.column = column_;
    t.offset = pos_;
    auto finish = [&](Tok kind, std::size_t len) {
        t.kind = kind;
        t.text = std::string(src_.substr(pos_, len));
        advance(len);
        t.end_offset = pos_;
        t.end_line = line_;
        t.end_column = column_;
        return t;
    };
    if (pos_ >= src_.size()) {
        t.kind = Tok::end;
        t.end_offset = pos_;
        t.end_line = line_;
        t.end_column = column_;
        return t;
    }
    char c = cur();
    if (is_upper(c) || (c == '_' && is_ident(cur(1)))) {
        std::size_t n = 1;
        while (is_ident(cur(n)))
            ++n;
        return finish(Tok::var, n);
    }
    if (c == '_')
        return finish(Tok::anon, 1);
    if (is_lower(c)) {
        std::size_t n = 1;
        while (is_ident(cur(n)))
            ++n;
        return finish(Tok::atom, n);
    }
    if (is_digit(c) || (c == '-' && is_digit(cur(1)))) {
        std::size_t n = 1;
        while (is_digit(cur(n)))
            ++n;
        Token r = finish(Tok::integer, n);
        try {
            r.value = std::stoll(r.text);
        } catch (const std::out_of_range&) {
            throw error_at(r, "integer out of range");
        }
        return r;
    }
    if (c == '"' || c == '\'') {
        t.kind = c == '"' ? Tok::string : Tok::qatom;
        t.text = lex_quoted(c, t);
        t.end_offset = pos_;
        t.end_line = line_;
        t.end_column = column_;
        return t;
    }
    if (c == '#' && is_digit(cur(1))) {
        std::size_t n = 1;
        while (is_digit(cur(n)))
            ++n;
        Token r = finish(Tok::hash_index, n);
        try {
            r.value = std::stoll(r.text.substr(1));
        } catch (const std::out_of_range&) {
            throw error_at(r, "index out of range");
        }
        return r;
    }
    switch (c) {
    case '(': return finish(Tok::lparen, 1);
    case ')': return finish(Tok::rparen, 1);
    case '[': return finish(Tok::lbrack, 1);
    case ']': return finish(Tok::rbrack, 1);
    case ',': return finish(Tok::comma, 1);
    case '.': return finish(Tok::dot, 1);
    case '=': return finish(Tok::eq, 1);
    case '@': return finish(Tok::at, 1);
    case '#': return finish(Tok::hash, 1);
    case '?': return finish(Tok::question, 1);
    case '*': return finish(Tok::star, 1);
    case '/': return cur(1) == '/' ? finish(Tok::dslash, 2) : finish(Tok::slash, 1);
    case ':':
        if (cur(1) == '-')
            return finish(Tok::neck, 2);
        break;
    default:
        break;
    }
    throw Error(error_kind_, std::string("unexpected character '") + c + "'", line_, column_);
}

const Token& Lexer::peek()
{
    if (!buffered_)
        buffered_ = lex();
    return *buffered_;
}

Token Lexer::next()
{
    Token t = peek();
    buffered_.reset();
    last_end_ = t.end_offset;
    last_end_line_ = t.end_line;
    last_end_column_ = t.end_column;
    return t;
}

Token Lexer::expect(Tok kind, const char* what)
{
    const Token& t = peek();
    if (t.kind != kind)
        throw error_at(t, std::string("expected ") + what + ", found " + describe(t.kind));
    return next();
}

bool Lexer::accept(Tok kind)
{
    if (peek().kind != kind)
        return false;
    next();
    return true;
}

bool Lexer::adjacent()
{
    return peek().offset == last_end_;
}

std::string Lexer::read_xml_name()
{
    buffered_.reset();
    pos_ = last_end_;
    line_ = last_end_line_;
    column_ = last_end_column_;
    if (cur() == '\'' || cur() == '"') {
        Token start;
        start.line = line_;
        start.column = column_;
        std::string name = lex_quoted(cur(), start);
        last_end_ = pos_;
        last_end_line_ = line_;
        last_end_column_ = column_;
        if (name.empty())
            throw error_at(start, "empty name");
        return name;
    }
    std::size_t n = 0;
    while (is_xml_name_char(cur(n)))
        ++n;
    if (n == 0 || is_digit(cur()) || cur() == '-' || cur() == '.')
        throw Error(error_kind_, "expected a name", line_, column_);
    std::string name(src_.substr(pos_, n));
    advance(n);
    last_end_ = pos_;
    last_end_line_ = line_;
    last_end_column_ = column_;
    return name;
}

}  // namespace ltl::detail
