#pragma once

// Plain-text matrix files:
//
//   # optional comment lines
//   3
//   1 2 3
//   2 5 6
//   3 6 9
//
// Complex entries are written `a+bi` / `a-bi` without spaces; `bi` and real
// literals are also accepted. Malformed input throws Error(MalformedInput).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "equivar/matrix.hpp"

namespace equivar {

RealMatrix read_real_matrix(std::istream& in);
ComplexMatrix read_complex_matrix(std::istream& in);

RealMatrix load_real_matrix(const std::filesystem::path& path);
ComplexMatrix load_complex_matrix(const std::filesystem::path& path);

/// Entries are printed with 17 significant digits so files round-trip exactly.
void write_matrix(std::ostream& out, const RealMatrix& a);
void write_matrix(std::ostream& out, const ComplexMatrix& a);

Complex parse_complex(std::string_view token);
std::string format_complex(const Complex& z);

}  // namespace equivar
