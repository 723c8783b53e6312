#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace ltl {

enum class Dialect { ltl, xslt };

struct TokenCounts {
    std::size_t eta1 = 0;      // distinct operators
    std::size_t eta2 = 0;      // distinct operands
    std::size_t n1_total = 0;  // operator occurrences
    std::size_t n2_total = 0;  // operand occurrences
    std::map<std::string, std::size_t> operators;
    std::map<std::string, std::size_t> operands;
};

// Halstead census of a rule script or an XSL-T stylesheet.
//
// LTL: operators are functors, path steps (/ // @ # ? #k child descendant
// last count lvl id), ":-", the goal-separating ",", "=" and list
// construction "[]"; operands are variables (including _), atoms, numbers
// and strings.
// XSL-T: operators are element tag names, operands are attribute values.
TokenCounts count_tokens(std::string_view script, Dialect dialect);

struct MetricsReport {
    TokenCounts counts;
    double length = 0;              // N = N1 + N2
    double theoretical_length = 0;  // N_T = eta1 ld eta1 + eta2 ld eta2
    double vocabulary = 0;          // eta = eta1 + eta2
    double volume = 0;              // V = N ld eta
    double level = 0;               // L = (2 / eta1) (eta2 / N2)
    double abstraction = 0;         // lambda = V L
    double length_delta = 0;        // |N_T - N|
};

MetricsReport compute_metrics(const TokenCounts& counts);

}  // namespace ltl
