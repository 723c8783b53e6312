#pragma once

// Tokenizer shared by rule files, fact clauses, path expressions and the
// Halstead census.

#include "ltl/error.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ltl::detail {

enum class Tok {
    end,
    var,         // X, Foo
    anon,        // _
    atom,        // foo
    qatom,       // 'foo bar'
    string,      // "text"
    integer,     // 42, -3
    lparen,
    rparen,
    lbrack,
    rbrack,
    comma,
    dot,
    neck,        // :-
    eq,
    slash,       // /
    dslash,      // //
    at,          // @
    hash,        // #
    hash_index,  // #k
    question,    // ?
    star,        // *
};

const char* describe(Tok t);

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::int64_t value = 0;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t offset = 0;
    std::size_t end_offset = 0;
    std::size_t end_line = 1;
    std::size_t end_column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view source, ErrorKind error_kind = ErrorKind::load);

    const Token& peek();
    Token next();
    Token expect(Tok kind, const char* what);
    bool accept(Tok kind);

    // True if the next token starts right after the previous one.
    bool adjacent();

    // Reads an XML name (or a quoted name) starting exactly at the current
    // position. Only valid when no token is buffered.
    std::string read_xml_name();
    // Character right after the last consumed token.
    char raw_next_char() const { return last_end_ < src_.size() ? src_[last_end_] : '\0'; }

    Error error_at(const Token& t, const std::string& message) const;
    Error error_here(const std::string& message);

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::size_t last_end_ = 0;
    std::size_t last_end_line_ = 1;
    std::size_t last_end_column_ = 1;
    ErrorKind error_kind_;
    std::optional<Token> buffered_;

    char cur(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }
    void advance(std::size_t n = 1);
    void skip_layout();
    Token lex();
    std::string lex_quoted(char quote, const Token& start);
};

}  // namespace ltl::detail
