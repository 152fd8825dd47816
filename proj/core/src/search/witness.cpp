#include "hurwitz/search/witness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "hurwitz/data_paths.hpp"
#include "hurwitz/ffla/matrix_io.hpp"
#include "hurwitz/ffla/order.hpp"
#include "hurwitz/meataxe/meataxe.hpp"
#include "hurwitz/scott/scott.hpp"
#include "hurwitz/search/meter.hpp"

namespace hurwitz::search {

using ffla::Elem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::runtime_error("bad " + what + ": '" + s + "'");
  return v;
}

// Recursive-descent evaluator for words in x and z.
class WordParser {
 public:
  WordParser(const std::string& s, const Matrix& x, const Matrix& z) : s_(s), x_(x), z_(z) {}

  Matrix parse() {
    Matrix m = word();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return m;
  }

 private:
  Matrix word() {
    Matrix acc = Matrix::identity(x_.field_ptr(), x_.dim());
    while (pos_ < s_.size() && s_[pos_] != ')') acc = ffla::mat_mul(acc, factor());
    return acc;
  }

  Matrix factor() {
    Matrix base = x_;
    const char c = s_[pos_++];
    if (c == 'x') {
      base = x_;
    } else if (c == 'z') {
      base = z_;
    } else if (c == '(') {
      base = word();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("missing exponent");
      base = ffla::mat_pow(base, std::stoull(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("word '" + s_ + "': " + msg);
  }

  const std::string& s_;
  const Matrix& x_;
  const Matrix& z_;
  std::size_t pos_ = 0;
};

std::string random_word(Rng& rng) {
  const std::uint64_t factors = 6 + uniform_below(rng, 20);
  std::string w;
  for (std::uint64_t i = 0; i < factors; ++i) {
    const std::uint64_t e = 1 + uniform_below(rng, 6);
    w += "xz";
    if (e > 1) w += "^" + std::to_string(e);
  }
  return w;
}

std::string fingerprint_string(const Meter& meter, const Matrix& g, int order) {
  return meter.fingerprint(g, order).to_string();
}

Check pass(std::string name, std::string detail = {}) {
  return {std::move(name), Check::Outcome::Pass, std::move(detail)};
}
Check fail(std::string name, std::string detail) {
  return {std::move(name), Check::Outcome::Fail, std::move(detail)};
}
Check skip(std::string name, std::string detail) {
  return {std::move(name), Check::Outcome::Skip, std::move(detail)};
}

constexpr std::uint64_t kClosureCap = 200000;

}  // namespace

std::vector<CertificateSpec> parse_cert_specs(const std::string& text) {
  std::vector<CertificateSpec> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, '|');
    try {
      if (f.size() != 4) throw std::runtime_error("expected 4 fields");
      CertificateSpec s;
      s.family = f[0];
      s.q = parse_u64(f[1], "q");
      if (f[2].rfind("closure=", 0) == 0) {
        s.closure = parse_u64(f[2].substr(8), "closure size");
      } else {
        for (const auto& o : split(f[2], ',')) s.orders.push_back(parse_u64(o, "order"));
      }
      s.note = f[3];
      out.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw std::runtime_error("certs.dat line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

const std::vector<CertificateSpec>& bundled_cert_specs() {
  static const std::vector<CertificateSpec> specs =
      parse_cert_specs(read_file(data_dir() / "certs.dat"));
  return specs;
}

std::optional<CertificateSpec> cert_spec_for(const std::string& family, std::uint64_t q) {
  std::string fam = family;
  const std::uint64_t p = classdata::characteristic(q);
  if (family == "SE6" && (q - 1) % 3 != 0) fam = "E6";
  if (family == "SE7" && p == 2) fam = "E7";
  for (const auto& s : bundled_cert_specs()) {
    if (s.family == fam && s.q == q) return s;
  }
  return std::nullopt;
}

Matrix eval_word(const std::string& word, const Matrix& x, const Matrix& z) {
  if (word.empty()) throw std::invalid_argument("empty word");
  return WordParser(word, x, z).parse();
}

std::uint64_t closure_size(const std::vector<Matrix>& gens, std::uint64_t cap) {
  auto key = [](const Matrix& m) {
    return std::string(reinterpret_cast<const char*>(m.entries().data()),
                       m.entries().size() * sizeof(Elem));
  };
  const Matrix one = Matrix::identity(gens.at(0).field_ptr(), gens.at(0).dim());
  std::unordered_set<std::string> seen{key(one)};
  std::vector<Matrix> frontier{one};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& m : frontier) {
      for (const auto& g : gens) {
        Matrix h = ffla::mat_mul(m, g);
        if (seen.insert(key(h)).second) {
          if (seen.size() > cap) return 0;
          next.push_back(std::move(h));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

std::string to_string(Witness::Status s) {
  return s == Witness::Status::Certified ? "certified" : "candidate";
}

Witness make_witness(const GroupCtx& ctx, const HuntTarget& target, std::uint64_t seed,
                     const HuntLimits& limits, const HuntHit& hit) {
  const Meter meter(ctx);
  Witness w;
  w.family = ctx.family;
  w.q = ctx.q;
  w.kind = ctx.kind;
  w.dim = ctx.dim;
  w.modulus = ctx.field->modulus_line();
  w.group_hash = ctx.hash();
  w.seed = seed;
  w.stream = hit.stream;
  w.iteration = hit.iteration;
  w.conjugated = limits.conjugated == Conjugated::X ? "x" : "z";
  w.x_label = target.x.label;
  w.y_label = target.y.label;
  w.z_label = target.z.label;
  w.x_fingerprint = fingerprint_string(meter, hit.x, 2);
  w.y_fingerprint = fingerprint_string(meter, hit.y, 3);
  w.z_fingerprint = fingerprint_string(meter, hit.z, 7);
  w.irreducibility_trials = hit.irreducibility_trials;
  w.x = hit.x;
  w.y = hit.y;
  w.z = hit.z;
  return w;
}

std::string serialize_witness(const Witness& w) {
  std::ostringstream os;
  os << "hurwitz-witness 1\n";
  os << "family " << w.family << "\n";
  os << "q " << w.q << "\n";
  os << "kind " << to_string(w.kind) << "\n";
  os << "dim " << w.dim << "\n";
  os << "modulus " << w.modulus << "\n";
  os << "group " << hex64(w.group_hash) << "\n";
  os << "seed " << w.seed << "\n";
  os << "stream " << w.stream << "\n";
  os << "iteration " << w.iteration << "\n";
  os << "conjugated " << w.conjugated << "\n";
  os << "x-class " << w.x_label << "\n";
  os << "y-class " << w.y_label << "\n";
  os << "z-class " << w.z_label << "\n";
  os << "x-fingerprint " << w.x_fingerprint << "\n";
  os << "y-fingerprint " << w.y_fingerprint << "\n";
  os << "z-fingerprint " << w.z_fingerprint << "\n";
  os << "irreducible-trials " << w.irreducibility_trials << "\n";
  os << "status " << to_string(w.status) << "\n";
  if (w.closure) os << "closure " << w.closure << "\n";
  os << "certificates " << w.certificates.size() << "\n";
  for (const auto& c : w.certificates) os << "cert " << c.order << ": " << c.word << "\n";
  const std::pair<const char*, const std::optional<Matrix>*> blocks[] = {
      {"x", &w.x}, {"y", &w.y}, {"z", &w.z}};
  for (const auto& [name, m] : blocks) {
    if (!*m) throw std::invalid_argument(std::string("witness has no matrix ") + name);
    os << "matrix " << name << "\n" << ffla::to_hex_rows(**m);
  }
  os << "end\n";
  return os.str();
}

Witness parse_witness(const std::string& text) {
  std::istringstream in(text);
  int lineno = 0;
  auto next_line = [&](const std::string& key) {
    std::string line;
    ++lineno;
    if (!std::getline(in, line)) {
      throw MalformedWitness("witness ended before '" + key + "'");
    }
    if (line.rfind(key + " ", 0) != 0) {
      throw MalformedWitness("witness line " + std::to_string(lineno) + ": expected '" + key + "'");
    }
    return line.substr(key.size() + 1);
  };
  auto number = [&](const std::string& key) {
    const std::string v = next_line(key);
    try {
      return parse_u64(v, key);
    } catch (const std::exception& e) {
      throw MalformedWitness("witness line " + std::to_string(lineno) + ": " + e.what());
    }
  };
  Witness w;
  if (next_line("hurwitz-witness") != "1") throw MalformedWitness("unknown witness version");
  w.family = next_line("family");
  w.q = number("q");
  const auto kind = parse_module_kind(next_line("kind"));
  if (!kind) throw MalformedWitness("witness: unknown module kind");
  w.kind = *kind;
  w.dim = number("dim");
  w.modulus = next_line("modulus");
  const std::string hash = next_line("group");
  try {
    std::size_t used = 0;
    w.group_hash = std::stoull(hash, &used, 16);
    if (used != hash.size()) throw std::invalid_argument(hash);
  } catch (const std::exception&) {
    throw MalformedWitness("witness: bad group hash");
  }
  w.seed = number("seed");
  w.stream = number("stream");
  w.iteration = number("iteration");
  w.conjugated = next_line("conjugated");
  w.x_label = next_line("x-class");
  w.y_label = next_line("y-class");
  w.z_label = next_line("z-class");
  w.x_fingerprint = next_line("x-fingerprint");
  w.y_fingerprint = next_line("y-fingerprint");
  w.z_fingerprint = next_line("z-fingerprint");
  w.irreducibility_trials = static_cast<int>(number("irreducible-trials"));
  const std::string status = next_line("status");
  if (status == "certified") w.status = Witness::Status::Certified;
  else if (status == "candidate") w.status = Witness::Status::Candidate;
  else throw MalformedWitness("witness: unknown status '" + status + "'");
  std::string line;
  ++lineno;
  std::getline(in, line);
  if (line.rfind("closure ", 0) == 0) {
    try {
      w.closure = parse_u64(line.substr(8), "closure");
    } catch (const std::exception& e) {
      throw MalformedWitness(e.what());
    }
    ++lineno;
    std::getline(in, line);
  }
  if (line.rfind("certificates ", 0) != 0) throw MalformedWitness("witness: expected 'certificates'");
  std::uint64_t count = 0;
  try {
    count = parse_u64(line.substr(13), "certificate count");
  } catch (const std::exception& e) {
    throw MalformedWitness(e.what());
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string c = next_line("cert");
    const auto colon = c.find(": ");
    if (colon == std::string::npos) throw MalformedWitness("witness: bad certificate line");
    try {
      w.certificates.push_back({parse_u64(c.substr(0, colon), "order"), c.substr(colon + 2)});
    } catch (const std::exception& e) {
      throw MalformedWitness(e.what());
    }
  }
  std::istringstream mod(w.modulus);
  std::uint32_t p = 0, n = 0;
  std::vector<Elem> coeffs;
  if (!(mod >> p >> n)) throw MalformedWitness("witness: bad modulus line");
  for (std::uint32_t i = 0; i <= n; ++i) {
    std::uint32_t c = 0;
    if (!(mod >> c)) throw MalformedWitness("witness: bad modulus line");
    coeffs.push_back(static_cast<Elem>(c));
  }
  ffla::FieldPtr field;
  try {
    field = ffla::Field::with_modulus(p, coeffs);
  } catch (const std::exception& e) {
    throw MalformedWitness(std::string("witness: ") + e.what());
  }
  if (field->q() != w.q) throw MalformedWitness("witness: modulus does not match q");
  for (auto* slot : {&w.x, &w.y, &w.z}) {
    const char* name = slot == &w.x ? "x" : slot == &w.y ? "y" : "z";
    if (next_line("matrix") != name) throw MalformedWitness(std::string("witness: expected matrix ") + name);
    try {
      *slot = ffla::read_hex_rows(in, field, w.dim);
    } catch (const std::exception& e) {
      throw MalformedWitness(std::string("witness matrix ") + name + ": " + e.what());
    }
    lineno += static_cast<int>(w.dim);
  }
  ++lineno;
  if (!std::getline(in, line) || line != "end") throw MalformedWitness("witness: missing 'end'");
  return w;
}

void save_witness(const Witness& w, const std::filesystem::path& path) {
  const std::string text = serialize_witness(w);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Witness load_witness(const std::filesystem::path& path) { return parse_witness(read_file(path)); }

bool certify_generation(Witness& w, const CertificateSpec& spec, std::uint64_t seed,
                        const CertifyLimits& limits) {
  if (!w.x || !w.z) throw std::invalid_argument("witness has no matrices");
  const auto t0 = std::chrono::steady_clock::now();
  if (spec.closure) {
    w.closure = closure_size({*w.x, *w.z}, std::max(spec.closure, kClosureCap));
    if (w.closure == spec.closure) w.status = Witness::Status::Certified;
    return w.status == Witness::Status::Certified;
  }
  std::map<std::uint64_t, std::string> found;
  for (const auto& c : w.certificates) found.emplace(c.order, c.word);
  Rng rng(derive_seed(seed, 0x6365727469667900ull));
  auto missing = [&] {
    return std::any_of(spec.orders.begin(), spec.orders.end(),
                       [&](std::uint64_t k) { return !found.count(k); });
  };
  for (std::uint64_t i = 0; i < limits.max_words && missing(); ++i) {
    if (limits.seconds > 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      if (dt.count() > limits.seconds) break;
    }
    const std::string word = random_word(rng);
    std::uint64_t m = 0;
    try {
      m = ffla::element_order(eval_word(word, *w.x, *w.z));
    } catch (const std::exception&) {
      continue;
    }
    for (std::uint64_t k : spec.orders) {
      if (found.count(k) || m % k != 0) continue;
      found.emplace(k, m == k ? word : "(" + word + ")^" + std::to_string(m / k));
    }
  }
  w.certificates.clear();
  for (std::uint64_t k : spec.orders) {
    if (found.count(k)) w.certificates.push_back({k, found[k]});
  }
  if (!missing()) w.status = Witness::Status::Certified;
  return w.status == Witness::Status::Certified;
}

bool VerifyReport::ok() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.outcome == Check::Outcome::Fail; });
}

std::string VerifyReport::render() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    const char* tag = c.outcome == Check::Outcome::Pass   ? "PASS"
                      : c.outcome == Check::Outcome::Fail ? "FAIL"
                                                          : "SKIP";
    os << tag << " " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << (ok() ? "witness verified" : "witness REJECTED") << "\n";
  return os.str();
}

VerifyReport verify_witness(const Witness& w, const GroupCtx& ctx) {
  VerifyReport rep;
  auto& out = rep.checks;
  if (!w.x || !w.y || !w.z) {
    out.push_back(fail("format", "missing matrices"));
    return rep;
  }
  const Matrix& x = *w.x;
  const Matrix& y = *w.y;
  const Matrix& z = *w.z;

  if (ctx.hash() == w.group_hash && ctx.dim == w.dim && ctx.kind == w.kind) {
    out.push_back(pass("group", hex64(w.group_hash)));
  } else {
    out.push_back(fail("group", "witness names group " + hex64(w.group_hash) + ", have " +
                                    hex64(ctx.hash())));
  }
  if (!(*ctx.field == x.field()) || x.dim() != ctx.dim) {
    out.push_back(fail("format", "matrices do not live on the group's module"));
    return rep;
  }

  std::uint64_t ox = 0, oy = 0, oz = 0;
  try {
    ox = ffla::element_order(x);
    oy = ffla::element_order(y);
    oz = ffla::element_order(z);
  } catch (const std::exception& e) {
    out.push_back(fail("orders", e.what()));
  }
  if (ox || oy || oz) {
    const std::string d = "o(x)=" + std::to_string(ox) + " o(y)=" + std::to_string(oy) +
                          " o(z)=" + std::to_string(oz);
    out.push_back(ox == 2 && oy == 3 && oz == 7 ? pass("orders", d) : fail("orders", d));
  }

  const bool product = ffla::mat_mul(ffla::mat_mul(x, y), z).is_identity();
  out.push_back(product ? pass("product", "xyz = 1") : fail("product", "xyz != 1"));

  const Meter meter(ctx);
  const auto nx = meter.normalizes(x);
  const auto nz = meter.normalizes(z);
  if (!nx || !nz) {
    out.push_back(skip("membership", "no Lie image for this module"));
  } else if (*nx && *nz) {
    out.push_back(pass("membership", "x and z normalize the Lie image"));
  } else {
    out.push_back(fail("membership", "x or z does not normalize the Lie image"));
  }

  const Fingerprint fx = meter.fingerprint(x, 2);
  const Fingerprint fy = meter.fingerprint(y, 3);
  const Fingerprint fz = meter.fingerprint(z, 7);
  if (fx.to_string() == w.x_fingerprint && fy.to_string() == w.y_fingerprint &&
      fz.to_string() == w.z_fingerprint) {
    out.push_back(pass("fingerprints"));
  } else {
    out.push_back(fail("fingerprints", "measured x: " + fx.to_string() + "; y: " +
                                           fy.to_string() + "; z: " + fz.to_string()));
  }

  const bool tabulated = classdata::known_family(w.family);
  if (tabulated) {
    std::string bad;
    const std::tuple<const std::string&, const Fingerprint&, int> roles[] = {
        {w.x_label, fx, 2}, {w.y_label, fy, 3}, {w.z_label, fz, 7}};
    for (const auto& [label, fp, order] : roles) {
      const auto r = target_record(w.family, w.q, order, label);
      if (!r || !classdata::consistent(*r, fp)) bad += (bad.empty() ? "" : ", ") + label;
    }
    out.push_back(bad.empty() ? pass("classes", w.x_label + ", " + w.y_label + ", " + w.z_label)
                              : fail("classes", "measured fingerprint contradicts " + bad));
    try {
      resolve_target(w.family, w.q, w.x_label + "," + w.y_label + "," + w.z_label);
      out.push_back(pass("admissible"));
    } catch (const std::exception& e) {
      out.push_back(fail("admissible", e.what()));
    }
  } else {
    out.push_back(skip("classes", "no class data for " + w.family));
    out.push_back(skip("admissible", "no class data for " + w.family));
  }

  Rng mrng(derive_seed(w.seed, 0x697272));
  const auto irr = meataxe::is_irreducible(meataxe::ModuleAction({x, z}), mrng, 200);
  if (irr.verdict == meataxe::Verdict::Irreducible) {
    out.push_back(pass("irreducible", std::to_string(irr.trials) + " trials"));
  } else {
    out.push_back(fail("irreducible", irr.verdict == meataxe::Verdict::Reducible
                                          ? "invariant subspace found"
                                          : "inconclusive"));
  }

  // Scott's inequality on every measured module without fixed points: the
  // (irreducible) hunting module, and the adjoint module when the family's
  // analysis uses it.
  {
    std::vector<scott::ModuleSpec> mods{{ctx.kind, static_cast<int>(ctx.dim)}};
    if (tabulated && meter.measures_adjoint()) {
      for (const auto& m : scott::scott_modules(w.family, w.q)) {
        if (m.kind == meter.adjoint_kind()) mods.push_back(m);
      }
    }
    std::string detail;
    bool ok = true;
    for (const auto& m : mods) {
      if (!fx.dims.count(m.kind) || !fy.dims.count(m.kind) || !fz.dims.count(m.kind)) continue;
      const int sum = fx.dims.at(m.kind) + fy.dims.at(m.kind) + fz.dims.at(m.kind);
      if (sum > m.dim) ok = false;
      detail += (detail.empty() ? "" : "; ") + to_string(m.kind) + ": " + std::to_string(sum) +
                " <= " + std::to_string(m.dim);
    }
    out.push_back(ok ? pass("scott", detail) : fail("scott", detail));
  }

  {
    std::string bad;
    for (const auto& c : w.certificates) {
      try {
        const std::uint64_t m = ffla::element_order(eval_word(c.word, x, z));
        if (m != c.order) bad += " " + std::to_string(c.order) + " (found " + std::to_string(m) + ")";
      } catch (const std::exception& e) {
        bad += " " + std::to_string(c.order) + " (" + e.what() + ")";
      }
    }
    std::uint64_t group_size = 0;
    if (w.closure) {
      const std::uint64_t h = closure_size({x, z}, kClosureCap);
      group_size = closure_size(ctx.generators, kClosureCap);
      if (h != w.closure) bad += " closure " + std::to_string(w.closure) + " (found " + std::to_string(h) + ")";
    }
    if (bad.empty()) {
      std::string d = std::to_string(w.certificates.size()) + " order certificates";
      if (w.closure) d += ", |<x,z>| = " + std::to_string(w.closure);
      out.push_back(pass("certificates", d));
    } else {
      out.push_back(fail("certificates", "wrong:" + bad));
    }

    if (w.status == Witness::Status::Candidate) {
      out.push_back(pass("status", "candidate"));
    } else if (w.closure) {
      if (group_size == w.closure) {
        out.push_back(pass("status", "<x,z> is the whole group of order " + std::to_string(group_size)));
      } else {
        out.push_back(fail("status", "|<x,z>| = " + std::to_string(w.closure) + " but |G| = " +
                                         std::to_string(group_size)));
      }
    } else {
      const auto spec = tabulated ? cert_spec_for(w.family, w.q) : std::nullopt;
      std::string missing;
      if (!spec) {
        missing = " (no certificate spec for " + w.family + "(" + std::to_string(w.q) + "))";
      } else {
        if (spec->closure) missing += " closure of <x,z>";
        for (std::uint64_t k : spec->orders) {
          const bool have = std::any_of(w.certificates.begin(), w.certificates.end(),
                                        [&](const auto& c) { return c.order == k; });
          if (!have) missing += " " + std::to_string(k);
        }
      }
      if (missing.empty() && bad.empty()) {
        out.push_back(pass("status", "certified: " + spec->note));
      } else {
        out.push_back(fail("status", "claimed certified, missing:" + missing));
      }
    }
  }
  return rep;
}

VerifyReport verify_witness(const Witness& w, const std::filesystem::path& cache_dir) {
  const GroupCtx ctx = cache_dir.empty()
                           ? chevgrp::build_group(w.family, static_cast<std::uint32_t>(w.q), w.kind)
                           : chevgrp::cached_group(w.family, static_cast<std::uint32_t>(w.q),
                                                   w.kind, cache_dir);
  return verify_witness(w, ctx);
}

}  // namespace hurwitz::search
