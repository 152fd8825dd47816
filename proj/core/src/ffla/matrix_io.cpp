#include "hurwitz/ffla/matrix_io.hpp"

#include <stdexcept>

namespace hurwitz::ffla {

std::size_t hex_width(const Field& F) {
  std::size_t w = 1;
  for (std::uint32_t v = (F.q() - 1) >> 4; v != 0; v >>= 4) ++w;
  return w;
}

std::string to_hex_rows(const Matrix& m) {
  static const char* digits = "0123456789abcdef";
  const std::size_t w = hex_width(m.field());
  std::string out;
  out.reserve(m.dim() * (m.dim() * w + 1));
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (Elem e : m.row(i)) {
      for (std::size_t k = w; k-- > 0;) out.push_back(digits[(e >> (4 * k)) & 0xf]);
    }
    out.push_back('\n');
  }
  return out;
}

Matrix read_hex_rows(std::istream& in, const FieldPtr& field, std::size_t dim) {
  const std::size_t w = hex_width(*field);
  std::vector<Elem> entries;
  entries.reserve(dim * dim);
  std::string line;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("matrix block truncated");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != dim * w) throw std::runtime_error("matrix row has wrong length");
    for (std::size_t j = 0; j < dim; ++j) {
      std::uint32_t v = 0;
      for (std::size_t k = 0; k < w; ++k) {
        const char c = line[j * w + k];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw std::runtime_error("bad hex digit in matrix row");
        v = v * 16 + static_cast<std::uint32_t>(d);
      }
      if (v >= field->q()) throw std::runtime_error("matrix entry outside the field");
      entries.push_back(static_cast<Elem>(v));
    }
  }
  return Matrix(field, dim, std::move(entries));
}

}  // namespace hurwitz::ffla
