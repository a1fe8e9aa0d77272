#pragma once

// JSON matrix documents:
//
//   {"rows": 2, "cols": 1, "entries": [[1.0, 0.0], [0.5, -2.0]]}
//
// Entries are row-major [re, im] pairs. Numbers are written with 17
// significant digits so that a write/read cycle is exact.

#include <stdexcept>
#include <string>
#include <string_view>

#include "blockabs/dense.hpp"

namespace blockabs {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ParseError on malformed JSON, wrong shape or non-finite entries.
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);

/// Throws NonFinite for NaN or infinite entries.
std::string format_matrix(const ComplexMatrix& m);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

}  // namespace blockabs
