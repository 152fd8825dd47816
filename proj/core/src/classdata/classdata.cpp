#include "hurwitz/classdata/classdata.hpp"

#include <sstream>

#include "hurwitz/data_paths.hpp"

namespace hurwitz::classdata {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<int> parse_opt_int(const std::string& s) {
  if (s == "-") return std::nullopt;
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

// Family whose records a lookup reads, and whether conditions see -q.
struct Alias {
  std::string base;
  bool twisted = false;
};

Alias alias_of(const std::string& family) {
  if (family == "SE6") return {"E6", false};
  if (family == "2E6") return {"E6", true};
  if (family == "SE7") return {"E7", false};
  return {family, false};
}

constexpr std::string_view kFooter = "#checksum fnv1a64 ";

}  // namespace

bool Condition::holds(std::int64_t q) const {
  if (kind == Kind::All) return true;
  const std::int64_t r = ((q % modulus) + modulus) % modulus;
  if (kind == Kind::OneMod) return r == 1;
  return r == 1 || r == modulus - 1;
}

std::string Condition::to_string() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::OneMod: return "q=1(" + std::to_string(modulus) + ")";
    case Kind::PlusMinusOneMod: return "q=+-1(" + std::to_string(modulus) + ")";
  }
  return "?";
}

Condition Condition::parse(std::string_view s) {
  auto modulus_of = [&](std::size_t open) {
    const std::size_t close = s.find(')', open);
    if (close == std::string_view::npos || close + 1 != s.size()) {
      throw std::invalid_argument("bad condition '" + std::string(s) + "'");
    }
    return std::stoi(std::string(s.substr(open + 1, close - open - 1)));
  };
  if (s == "all") return {};
  if (s.starts_with("q=1(")) return {Kind::OneMod, modulus_of(3)};
  if (s.starts_with("q=+-1(")) return {Kind::PlusMinusOneMod, modulus_of(5)};
  throw std::invalid_argument("bad condition '" + std::string(s) + "'");
}

std::optional<int> ClassRecord::d_mprime() const {
  if (!dM || !mprime_delta) return std::nullopt;
  return *dM + *mprime_delta;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "order " << order;
  for (const auto& [k, d] : dims) os << ' ' << hurwitz::to_string(k) << '=' << d;
  if (!jordan.empty()) {
    os << " jordan";
    for (std::size_t j = 0; j < jordan.size(); ++j) os << (j ? ',' : ' ') << jordan[j];
  }
  return os.str();
}

ClassTable ClassTable::parse(const std::string& text) {
  const std::size_t footer = text.rfind(kFooter);
  if (footer == std::string::npos || (footer != 0 && text[footer - 1] != '\n')) {
    throw ChecksumMismatch("class table has no checksum footer");
  }
  const std::string body = text.substr(0, footer);
  std::string stated = text.substr(footer + kFooter.size());
  while (!stated.empty() && (stated.back() == '\n' || stated.back() == '\r')) stated.pop_back();
  if (stated != hex64(fnv1a64(body))) {
    throw ChecksumMismatch("class table checksum mismatch: file says " + stated +
                           ", content hashes to " + hex64(fnv1a64(body)));
  }

  ClassTable t;
  std::istringstream in(body);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, '|');
    const std::string where = "classes.dat:" + std::to_string(lineno);
    if (f.size() != 10) throw std::runtime_error(where + ": expected 10 fields");
    try {
      ClassRecord r;
      r.family = f[0];
      r.label = f[1];
      r.order = std::stoi(f[2]);
      if (f[3] != "u" && f[3] != "s") throw std::invalid_argument("u/s flag");
      r.unipotent = f[3] == "u";
      r.dM = parse_opt_int(f[4]);
      r.dL = parse_opt_int(f[5]);
      r.condition = Condition::parse(f[6]);
      r.chiM = parse_opt_int(f[7]);
      r.chiL = parse_opt_int(f[8]);
      if (f[9] != "-") {
        for (const auto& kv : split(f[9], ';')) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw std::invalid_argument("extra '" + kv + "'");
          const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
          if (key == "mprime") {
            r.mprime_delta = std::stoi(val);
          } else if (key == "collides") {
            r.collides.push_back(val);
          } else if (key == "note") {
            r.note = val;
          } else {
            throw std::invalid_argument("unknown extra '" + key + "'");
          }
        }
      }
      t.records_.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
  }
  return t;
}

const ClassTable& ClassTable::bundled() {
  static const ClassTable table = parse(read_file(data_dir() / "classes.dat"));
  return table;
}

bool known_family(const std::string& family) {
  static const char* const kFamilies[] = {"F4", "E6", "SE6", "2E6", "E7", "SE7", "E8", "A1"};
  for (const char* f : kFamilies) {
    if (family == f) return true;
  }
  return false;
}

std::uint64_t characteristic(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint64_t r = q;
  while (r % p == 0) r /= p;
  if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return p;
}

std::vector<ClassRecord> ClassTable::candidates(const std::string& family, std::uint64_t q,
                                                int order) const {
  if (!known_family(family)) throw UnsupportedFamily("no class data for family " + family);
  if (order != 2 && order != 3 && order != 7) {
    throw UnsupportedFamily("class data covers orders 2, 3 and 7 only");
  }
  const bool unipotent = characteristic(q) == static_cast<std::uint64_t>(order);
  const Alias a = alias_of(family);
  auto pick = [&](const std::string& fam) {
    std::vector<ClassRecord> out;
    for (const auto& r : records_) {
      if (r.family == fam && r.order == order && r.unipotent == unipotent) out.push_back(r);
    }
    return out;
  };
  std::vector<ClassRecord> out;
  if (family == "SE7") out = pick("SE7");
  if (out.empty()) out = pick(a.base);
  for (auto& r : out) r.family = family;
  return out;
}

std::vector<ClassRecord> ClassTable::lookup(const std::string& family, std::uint64_t q,
                                            int order) const {
  const bool twisted = alias_of(family).twisted;
  const std::int64_t qq = twisted ? -static_cast<std::int64_t>(q) : static_cast<std::int64_t>(q);
  std::vector<ClassRecord> out;
  for (auto& r : candidates(family, q, order)) {
    if (r.condition.holds(qq)) out.push_back(std::move(r));
  }
  return out;
}

std::optional<ClassRecord> ClassTable::find(const std::string& family, std::uint64_t q,
                                            int order, const std::string& label) const {
  for (auto& r : candidates(family, q, order)) {
    if (r.label == label) return r;
  }
  return std::nullopt;
}

bool consistent(const ClassRecord& r, const Fingerprint& fp) {
  if (fp.order != r.order) return false;
  for (const auto& [kind, d] : fp.dims) {
    switch (kind) {
      case ModuleKind::M:
        if (r.dM && *r.dM != d) return false;
        break;
      case ModuleKind::Mprime:
        if (auto e = r.d_mprime()) {
          if (*e != d) return false;
        } else if (r.dM && d != *r.dM && d != *r.dM - 1) {
          return false;
        }
        break;
      case ModuleKind::L:
        if (r.dL && *r.dL != d) return false;
        break;
      case ModuleKind::Lprime:
        break;
    }
  }
  return true;
}

std::vector<std::string> ClassTable::classify(const Fingerprint& fp, const std::string& family,
                                              std::uint64_t q) const {
  std::vector<std::string> out;
  if (fp.order != 2 && fp.order != 3 && fp.order != 7) return out;
  for (const auto& r : candidates(family, q, fp.order)) {
    if (consistent(r, fp)) out.push_back(r.label);
  }
  return out;
}

}  // namespace hurwitz::classdata
