#include "ltl/error.hpp"

namespace ltl {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::load: return "LoadError";
    case ErrorKind::duplicate_attribute: return "DuplicateAttribute";
    case ErrorKind::sentinel_collision: return "SentinelCollision";
    case ErrorKind::decode: return "DecodeError";
    case ErrorKind::unbound_output: return "UnboundOutput";
    case ErrorKind::shape: return "ShapeError";
    case ErrorKind::type_mismatch: return "TypeMismatch";
    case ErrorKind::instantiation: return "InstantiationError";
    case ErrorKind::bad_index_path: return "BadIndexPath";
    case ErrorKind::arity: return "ArityError";
    case ErrorKind::column: return "ColumnError";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(message), kind_(kind), line_(line), column_(column)
{
}

}  // namespace ltl
