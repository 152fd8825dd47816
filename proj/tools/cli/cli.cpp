#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/classdata/classdata.hpp"
#include "hurwitz/data_paths.hpp"
#include "hurwitz/rootsys/torus.hpp"
#include "hurwitz/scott/scott.hpp"
#include "hurwitz/search/witness.hpp"

namespace hurwitz::cli {

namespace {

std::string group_name(const std::string& family, std::uint64_t q) {
  return family + "(" + std::to_string(q) + ")";
}

// Whether a table q-condition ("p^n", "3^n", "2^{3n}") covers q.
bool covers(const std::string& cond, std::uint64_t q) {
  std::uint64_t p = classdata::characteristic(q);
  int n = 0;
  for (std::uint64_t v = q; v > 1; v /= p) ++n;
  if (cond == "p^n") return p != 2 && p != 3 && p != 7;
  const std::string base = std::to_string(p) + "^";
  if (cond.rfind(base, 0) != 0) return false;
  const std::string e = cond.substr(base.size());
  if (e == "n") return true;
  if (e.size() >= 4 && e.front() == '{' && e.substr(e.size() - 2) == "n}") {
    return n % std::stoi(e.substr(1, e.size() - 3)) == 0;
  }
  return false;
}

// Admissible-table rows of the case containing q, with the rows not
// realized at this q marked.
std::string case_rows(const std::string& family, std::uint64_t q,
                      const std::vector<scott::TripleType>& realized) {
  std::vector<scott::TableRow> rows;
  try {
    rows = scott::admissible_table(family);
  } catch (const std::exception&) {
    return {};
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    if (!covers(r.q_condition, q)) continue;
    for (const auto& z : r.z) {
      const bool here = std::any_of(realized.begin(), realized.end(), [&](const auto& t) {
        return t.x == r.x && t.y == r.y && t.z == z;
      });
      os << "  " << std::left << std::setw(10) << (family + "(" + r.q_condition + ")") << ' '
         << std::setw(8) << r.x << ' ' << std::setw(10) << r.y << ' ' << z
         << (here ? "" : "   (class absent at this q)") << '\n';
    }
  }
  return os.str();
}

search::Conjugated parse_conjugate(const std::string& s) {
  if (s == "x") return search::Conjugated::X;
  if (s == "z") return search::Conjugated::Z;
  throw CLI::ValidationError("--conjugate", "expected x or z");
}

chevgrp::GroupCtx load_group(const std::string& family, std::uint64_t q, ModuleKind kind,
                             const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return chevgrp::build_group(family, static_cast<std::uint32_t>(q), kind);
  std::filesystem::create_directories(cache_dir);
  return chevgrp::cached_group(family, static_cast<std::uint32_t>(q), kind, cache_dir);
}

}  // namespace

std::filesystem::path default_cache_dir() {
  const char* env = std::getenv("HURWITZ_CACHE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path();
}

int cmd_admissible(const RunConfig& cfg, std::ostream& out) {
  const auto v = scott::verdict(cfg.family, cfg.q);
  if (v.kind == scott::Verdict::Kind::Possible) {
    const std::string rows = case_rows(cfg.family, cfg.q, v.triples);
    if (!rows.empty()) out << "table rows for this case:\n" << rows;
  }
  out << scott::render_verdict(v);
  return kCertified;
}

int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> families{"F4", "E6", "SE6"};
  if (!cfg.family.empty() && cfg.family != "2E6") families = {cfg.family};
  if (cfg.family.empty() || cfg.family != "2E6") {
    std::vector<scott::TableRow> rows;
    for (const auto& f : families) {
      const auto r = scott::admissible_table(f);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    out << "Admissible Hurwitz triples\n" << scott::render_rows(rows);
  }
  if (cfg.family.empty() || cfg.family == "2E6") {
    out << "\n2E6 (computed from the E6 data with conditions at -q; no printed rows to compare)\n"
        << scott::render_rows(scott::admissible_table("2E6"));
  }
  if (cfg.family.empty()) {
    out << "\nReduction bounds on d^L (minimum / first-pass maximum)\n";
    for (const char* f : {"E7", "E8"}) {
      for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto b = scott::reduction_bounds(f, p);
        out << "  " << f << " p=" << p << (p == 5 ? "+" : " ") << "  x " << b.min_x << "/" << b.max_x
            << "  y " << b.min_y << "/" << b.max_y << "  z " << b.min_z << "/" << b.max_z << '\n';
      }
    }
  }
  return kCertified;
}

int cmd_torus_bounds(const RunConfig& cfg, std::ostream& out) {
  if (cfg.order != 2 && cfg.order != 3 && cfg.order != 7) {
    throw CLI::ValidationError("--order", "must be 2, 3 or 7");
  }
  const auto rs = rootsys::build_root_system(cfg.family);
  std::optional<rootsys::WeightSet> weights;
  if (cfg.family != "E8") weights = rootsys::minimal_weights(rs);
  rootsys::TorusOptions opts;
  opts.workers = cfg.workers;
  const auto h = rootsys::torus_fixed_dims(rs, weights ? &*weights : nullptr, cfg.order, opts);
  out << cfg.family << " torus elements of order dividing " << cfg.order << ": " << h.total << "\n";
  out << "  d^M   d^L   count  classes\n";
  const auto& table = classdata::ClassTable::bundled();
  for (const auto& e : h.entries) {
    std::string labels;
    for (const auto& r : table.records()) {
      if (r.family != cfg.family || r.unipotent || r.order != cfg.order) continue;
      if (r.dL == e.dL && (!r.dM || r.dM == e.dM)) labels += (labels.empty() ? "" : " ") + r.label;
    }
    out << "  " << std::setw(4) << (e.dM < 0 ? std::string("-") : std::to_string(e.dM)) << "  "
        << std::setw(4) << e.dL << "  " << std::setw(6) << e.count << "  " << labels << '\n';
  }
  out << "min d^L = " << h.min_dL;
  if (h.min_dM >= 0) out << ", min d^M = " << h.min_dM;
  out << " (nonidentity elements)\n";
  return kCertified;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const auto kind = parse_module_kind(cfg.kind.empty() ? "L" : cfg.kind);
  if (!kind) throw CLI::ValidationError("--kind", "expected M, M', L or L'");
  const auto ctx = load_group(cfg.family, cfg.q, *kind, cfg.cache_dir);
  out << group_name(cfg.family, cfg.q) << " on " << to_string(ctx.kind) << ": dimension "
      << ctx.dim << ", " << ctx.generators.size() << " generators\n";
  out << "group hash " << hex64(ctx.hash()) << "\n";
  out << "provenance " << ctx.provenance << "\n";
  return kCertified;
}

int cmd_hunt(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  search::HuntTarget target;
  try {
    target = search::resolve_target(cfg.family, cfg.q, cfg.type);
  } catch (const search::NotAdmissible& e) {
    err << "refused: " << group_name(cfg.family, cfg.q) << ": " << e.what() << "\n";
    return kRefused;
  }
  ModuleKind kind = search::hunt_module(cfg.family, cfg.q);
  if (!cfg.kind.empty()) {
    const auto k = parse_module_kind(cfg.kind);
    if (!k) throw CLI::ValidationError("--kind", "expected M, M', L or L'");
    kind = *k;
  }
  const auto ctx = load_group(cfg.family, cfg.q, kind, cfg.cache_dir);
  out << "hunting " << target.type() << " in " << group_name(cfg.family, cfg.q) << " on "
      << to_string(kind) << " (dim " << ctx.dim << "), seed " << cfg.seed << "\n";

  search::HuntLimits limits;
  limits.max_iterations = cfg.max_iterations;
  limits.seconds = cfg.seconds;
  limits.workers = cfg.workers;
  limits.chunk = cfg.chunk;
  limits.conjugated = parse_conjugate(cfg.conjugate);
  const auto res = search::hunt(ctx, target, cfg.seed, limits);
  out << "conjugates tested " << res.stats.iterations << ", order 3 products "
      << res.stats.order_three << ", y in class " << res.stats.y_class << ", reducible "
      << res.stats.reducible << ", " << std::fixed << std::setprecision(1) << res.stats.seconds
      << " s\n";
  if (!res.hit) {
    out << (res.status == search::HuntResult::Status::TimeLimit ? "time limit" : "iteration limit")
        << " reached without a candidate (not a disproof)\n";
    return kTimeout;
  }

  auto w = search::make_witness(ctx, target, cfg.seed, limits, *res.hit);
  if (cfg.certify) {
    if (const auto spec = search::cert_spec_for(cfg.family, cfg.q)) {
      search::certify_generation(w, *spec, cfg.seed, {cfg.certify_words, cfg.certify_seconds});
    } else {
      out << "no certificate spec for " << group_name(cfg.family, cfg.q) << "\n";
    }
  }
  const auto report = search::verify_witness(w, ctx);
  if (!report.ok()) {
    err << report.render();
    err << "internal error: the witness does not verify; not written\n";
    return kFailure;
  }
  std::filesystem::path path = cfg.out;
  if (path.empty()) {
    path = cfg.family + "_" + std::to_string(cfg.q) + "_" + std::to_string(cfg.seed) + ".witness";
  }
  search::save_witness(w, path);
  out << search::to_string(w.status) << " witness written to " << path.string() << "\n";
  for (const auto& c : w.certificates) out << "  order " << c.order << ": " << c.word << "\n";
  if (w.closure) out << "  |<x,z>| = " << w.closure << "\n";
  return w.status == search::Witness::Status::Certified ? kCertified : kCandidate;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  search::Witness w;
  try {
    w = search::load_witness(cfg.witness);
  } catch (const std::exception& e) {
    err << "cannot read witness: " << e.what() << "\n";
    return kFailure;
  }
  const auto report = search::verify_witness(w, cfg.cache_dir);
  out << report.render();
  return report.ok() ? kCertified : kFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hurwitz generation toolkit for exceptional groups", "hurwitz"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();

  auto add_group = [&](CLI::App* sub, bool need_q) {
    sub->add_option("--family", cfg.family, "F4, E6, SE6, 2E6, E7, SE7, E8 or A1")->required();
    auto* q = sub->add_option("--q", cfg.q, "field order");
    if (need_q) q->required();
  };
  auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", cfg.cache_dir, "group cache (default $HURWITZ_CACHE_DIR)");
  };

  auto* adm = app.add_subcommand("admissible", "admissible triples or the impossibility verdict");
  add_group(adm, true);
  auto* tables = app.add_subcommand("tables", "admissible-triple table and reduction bounds");
  tables->add_option("--family", cfg.family, "restrict to one family");
  auto* torus = app.add_subcommand("torus-bounds", "fixed-dimension histogram of torus elements");
  torus->add_option("--family", cfg.family, "root system type")->required();
  torus->add_option("--order", cfg.order, "element order (2, 3 or 7)")->required();
  torus->add_option("--workers", cfg.workers, "threads");
  auto* build = app.add_subcommand("build", "construct (and cache) a matrix group");
  add_group(build, true);
  build->add_option("--kind", cfg.kind, "module: M, M', L or L'");
  add_cache(build);
  auto* hunt = app.add_subcommand("hunt", "search for a Hurwitz generating triple");
  add_group(hunt, true);
  hunt->add_option("--type", cfg.type, "x,y,z class labels, e.g. 2A,~A2+A1,7N");
  hunt->add_option("--kind", cfg.kind, "module override");
  hunt->add_option("--seed", cfg.seed, "master seed");
  hunt->add_option("--workers", cfg.workers, "threads");
  hunt->add_option("--max-iterations", cfg.max_iterations, "conjugates to test (0 = no limit)");
  hunt->add_option("--seconds", cfg.seconds, "wall-clock limit (0 = none)");
  hunt->add_option("--chunk", cfg.chunk, "conjugates per stream");
  hunt->add_option("--conjugate", cfg.conjugate, "element walked through conjugates: x or z");
  hunt->add_flag("!--no-certify", cfg.certify, "skip certification");
  hunt->add_option("--certify-words", cfg.certify_words, "random words for certificates");
  hunt->add_option("--certify-seconds", cfg.certify_seconds, "certification time limit");
  hunt->add_option("--out", cfg.out, "witness path");
  add_cache(hunt);
  auto* verify = app.add_subcommand("verify", "recheck a witness file");
  verify->add_option("witness", cfg.witness, "witness path")->required();
  add_cache(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kCertified : kUsage;
  }

  try {
    if (*adm) return cmd_admissible(cfg, out);
    if (*tables) return cmd_tables(cfg, out);
    if (*torus) return cmd_torus_bounds(cfg, out);
    if (*build) return cmd_build(cfg, out);
    if (*hunt) return cmd_hunt(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace hurwitz::cli
