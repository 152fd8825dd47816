#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace hurwitz {

/// Directory holding the bundled data files (moduli, factor table, class
/// tables, certificate specs): `HURWITZ_DATA_DIR` if set, else the source
/// tree's data when present, else `<prefix>/share/hurwitz` for the prefix
/// configured at build time.
std::filesystem::path data_dir();

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a over a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Lowercase 16-digit hex rendering of a 64-bit value.
std::string hex64(std::uint64_t v);

}  // namespace hurwitz
