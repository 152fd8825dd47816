#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/search/hunt.hpp"

namespace hurwitz::search {

class MalformedWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element orders whose presence in <x, z> forces generation, with the
/// justification. `closure` > 0 asks for a brute-force enumeration of
/// <x, z> instead (small groups only).
struct CertificateSpec {
  std::string family;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> orders;
  std::uint64_t closure = 0;
  std::string note;
};

/// `family|q|order,order,...|note` or `family|q|closure=N|note`, with `#`
/// comments. Throws std::runtime_error on malformed lines.
std::vector<CertificateSpec> parse_cert_specs(const std::string& text);
/// certs.dat from the data directory.
const std::vector<CertificateSpec>& bundled_cert_specs();
/// Spec for the group; SE6 and SE7 fall back to E6 and E7 when the group is
/// the same.
std::optional<CertificateSpec> cert_spec_for(const std::string& family, std::uint64_t q);

struct OrderCertificate {
  std::uint64_t order = 0;
  /// Word in x and z: factors x, z or (word), each optionally ^e.
  std::string word;
};

/// Evaluates a word in x and z. Throws std::invalid_argument on bad syntax.
Matrix eval_word(const std::string& word, const Matrix& x, const Matrix& z);

/// |<gens>| by closure, or 0 once it exceeds `cap`.
std::uint64_t closure_size(const std::vector<Matrix>& gens, std::uint64_t cap);

struct Witness {
  enum class Status { Candidate, Certified };

  std::string family;
  std::uint64_t q = 0;
  ModuleKind kind = ModuleKind::M;
  std::size_t dim = 0;
  std::string modulus;
  std::uint64_t group_hash = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t iteration = 0;
  std::string conjugated = "x";
  std::string x_label, y_label, z_label;
  std::string x_fingerprint, y_fingerprint, z_fingerprint;
  int irreducibility_trials = 0;
  Status status = Status::Candidate;
  std::vector<OrderCertificate> certificates;
  std::uint64_t closure = 0;
  std::optional<Matrix> x, y, z;
};

std::string to_string(Witness::Status s);

/// Candidate witness from a hunt hit.
Witness make_witness(const GroupCtx& ctx, const HuntTarget& target, std::uint64_t seed,
                     const HuntLimits& limits, const HuntHit& hit);

std::string serialize_witness(const Witness& w);
/// Throws MalformedWitness.
Witness parse_witness(const std::string& text);
void save_witness(const Witness& w, const std::filesystem::path& path);
Witness load_witness(const std::filesystem::path& path);

struct CertifyLimits {
  /// Random words tried before giving up.
  std::uint64_t max_words = 20000;
  double seconds = 0;
};

/// Searches <x, z> for elements of every order in the spec (random words
/// of alternating x and z^e), or enumerates <x, z> for closure specs.
/// Attaches the certificates found and marks the witness certified when the
/// spec is met. Returns whether it was.
bool certify_generation(Witness& w, const CertificateSpec& spec, std::uint64_t seed,
                        const CertifyLimits& limits = {});

struct Check {
  std::string name;
  enum class Outcome { Pass, Fail, Skip } outcome = Outcome::Pass;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool ok() const;
  std::string render() const;
};

/// Recomputes everything from the witness data against the given group:
/// group hash, orders, xyz = 1, membership in the Lie normalizer, measured
/// fingerprints, classes, admissibility, irreducibility, Scott's inequality
/// on the measured modules, certificates and the claimed status.
VerifyReport verify_witness(const Witness& w, const GroupCtx& ctx);
/// Builds (or loads from `cache_dir`) the group named in the witness.
VerifyReport verify_witness(const Witness& w, const std::filesystem::path& cache_dir = {});

}  // namespace hurwitz::search
