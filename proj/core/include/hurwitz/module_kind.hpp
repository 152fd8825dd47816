#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hurwitz {

/// Minimal module M, adjoint module L, and their irreducible subquotients in
/// bad characteristic (M', L').
enum class ModuleKind { M, Mprime, L, Lprime };

inline std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::M: return "M";
    case ModuleKind::Mprime: return "M'";
    case ModuleKind::L: return "L";
    case ModuleKind::Lprime: return "L'";
  }
  return "?";
}

inline std::optional<ModuleKind> parse_module_kind(std::string_view s) {
  if (s == "M") return ModuleKind::M;
  if (s == "M'" || s == "Mprime") return ModuleKind::Mprime;
  if (s == "L") return ModuleKind::L;
  if (s == "L'" || s == "Lprime") return ModuleKind::Lprime;
  return std::nullopt;
}

/// The unprimed module a subquotient comes from.
inline ModuleKind base_kind(ModuleKind k) {
  return (k == ModuleKind::M || k == ModuleKind::Mprime) ? ModuleKind::M : ModuleKind::L;
}

}  // namespace hurwitz
