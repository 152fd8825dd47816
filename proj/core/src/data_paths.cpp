#include "hurwitz/data_paths.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef HURWITZ_DEFAULT_DATA_DIR
#define HURWITZ_DEFAULT_DATA_DIR "data"
#endif

namespace hurwitz {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("HURWITZ_DATA_DIR"); env && *env) {
    return env;
  }
  const std::filesystem::path source = HURWITZ_DEFAULT_DATA_DIR;
  if (std::filesystem::exists(source / "classes.dat")) return source;
  return HURWITZ_INSTALL_DATA_DIR;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = kDigits[v & 0xf];
  return s;
}

}  // namespace hurwitz
