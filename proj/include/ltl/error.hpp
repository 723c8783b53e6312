#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltl {

enum class ErrorKind {
    parse,
    load,
    duplicate_attribute,
    sentinel_collision,
    decode,
    unbound_output,
    shape,
    type_mismatch,
    instantiation,
    bad_index_path,
    arity,
    column,
    invalid_argument,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library. Parse and load errors carry a 1-based
// source position; everything else leaves line/column at zero.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0);

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace ltl
