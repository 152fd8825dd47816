#pragma once

#include <istream>
#include <string>

#include "hurwitz/ffla/matrix.hpp"

namespace hurwitz::ffla {

/// Hex digits used per entry: enough for q - 1.
std::size_t hex_width(const Field& F);

/// One line per row, each entry as fixed-width lowercase hex.
std::string to_hex_rows(const Matrix& m);

/// Reads `dim` lines written by to_hex_rows. Throws std::runtime_error on
/// malformed input or entries outside the field.
Matrix read_hex_rows(std::istream& in, const FieldPtr& field, std::size_t dim);

}  // namespace hurwitz::ffla
