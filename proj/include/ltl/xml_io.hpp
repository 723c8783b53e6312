#pragma once

#include "ltl/node.hpp"

#include <string>
#include <string_view>

namespace ltl {

// Parses a UTF-8 XML document into its root element. The XML declaration,
// DOCTYPE, and comments/PIs outside the root are discarded; whitespace inside
// the root is kept verbatim; CDATA folds into text. Errors are reported as
// Error{parse} with a 1-based line and column inside the input.
Node parse_xml(std::string_view xml_text);

struct SerializeOptions {
    bool xml_declaration = false;
};

std::string serialize(const Node& n, const SerializeOptions& options = {});
// Concatenation of every node of a hedge, for non-well-formed output.
std::string serialize(const Hedge& hedge, const SerializeOptions& options = {});

std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view value);

}  // namespace ltl
