// One PASS/FAIL/SKIP line per acceptance criterion. Exit status 1 when any
// criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/classdata/classdata.hpp"
#include "hurwitz/data_paths.hpp"
#include "hurwitz/meataxe/meataxe.hpp"
#include "hurwitz/rootsys/torus.hpp"
#include "hurwitz/scott/scott.hpp"
#include "hurwitz/search/hunt.hpp"
#include "hurwitz/search/witness.hpp"

using namespace hurwitz;
using search::Witness;

namespace {

constexpr double kTableSeconds = 1.0;
constexpr double kVerdictSeconds = 1.0;
constexpr double kTorusE7Seconds = 10.0;
constexpr double kTorusE8Seconds = 300.0;
constexpr double kCrossCheckSeconds = 60.0;
constexpr double kSplitSeconds = 60.0;
constexpr double kSmokeSeconds = 5.0;

struct Options {
  bool skip_long = false;
  bool stretch = false;
  std::uint64_t seed = 42;
  double minutes = 60;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string golden;
};

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind = Pass;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::Skip, std::move(d)}; }

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome within(Outcome o, double seconds, double limit) {
  if (o.kind == Outcome::Pass && seconds > limit)
    return fail(o.detail + "; over the " + secs(limit) + " limit");
  return o;
}

// Witnesses produced during the run, for the Scott meta-check.
std::vector<std::pair<Witness, chevgrp::GroupCtx>> g_witnesses;

Outcome table_reproduction(const Options& opt) {
  std::string got;
  for (const std::string f : {"F4", "E6", "SE6"}) got += scott::render_lines(scott::admissible_table(f));
  const std::string want = read_file(opt.golden);
  if (got != want) return fail("rendered table differs from " + opt.golden);
  const auto lines = std::count(got.begin(), got.end(), '\n');
  std::size_t f4_3 = 0, e6_3 = 0;
  for (auto pos = got.find("F4|3^n|"); pos != std::string::npos; pos = got.find("F4|3^n|", pos + 1)) ++f4_3;
  for (auto pos = got.find("\nE6|3^n|"); pos != std::string::npos; pos = got.find("\nE6|3^n|", pos + 1)) ++e6_3;
  if (f4_3 != 3 || e6_3 != 1) return fail("expected three F4(3^n) triples and one E6(3^n) triple");
  return pass(std::to_string(lines) + " triples match, including " + std::to_string(f4_3) +
              " for F4(3^n) and " + std::to_string(e6_3) + " for E6(3^n)");
}

Outcome negative_verdicts() {
  const std::vector<std::tuple<std::string, std::uint64_t, std::string>> cases{
      {"F4", 2, "no 7O class"}, {"F4", 4, "no 7O class"},
      {"SE6", 7, "d_z^M >= 4"}, {"2E6", 7, "d_z^M >= 4"}};
  for (const auto& [fam, q, needle] : cases) {
    const auto v = scott::verdict(fam, q);
    if (v.kind != scott::Verdict::Kind::Impossible)
      return fail(fam + "(" + std::to_string(q) + ") not impossible");
    if (v.reason.find(needle) == std::string::npos)
      return fail(fam + "(" + std::to_string(q) + ") reason lacks \"" + needle + "\": " + v.reason);
  }
  return pass("F4(2), F4(4), SE6(7), 2E6(7) impossible with stated reasons");
}

Outcome torus_minimum(const std::string& fam, int want, double limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rs = rootsys::build_root_system(fam);
  const auto h = rootsys::torus_fixed_dims(rs, nullptr, 7);
  const double s = elapsed(t0);
  std::string d = fam + " min d^L = " + std::to_string(h.min_dL) + " over " + std::to_string(h.total) +
                  " vectors in " + secs(s);
  if (h.min_dL != want) return fail(d + ", expected " + std::to_string(want));
  if (s > limit) return fail(d + ", over " + secs(limit));
  return pass(d);
}

Outcome torus_minima() {
  const auto e7 = torus_minimum("E7", 19, kTorusE7Seconds);
  if (e7.kind != Outcome::Pass) return e7;
  const auto e8 = torus_minimum("E8", 36, kTorusE8Seconds);
  if (e8.kind != Outcome::Pass) return e8;
  return pass(e7.detail + "; " + e8.detail);
}

Outcome semisimple_cross_check() {
  int checked = 0;
  for (const std::string fam : {"F4", "E6"}) {
    const auto rs = rootsys::build_root_system(fam);
    const auto w = rootsys::minimal_weights(rs);
    std::map<int, rootsys::TorusHistogram> hist;
    for (int m : {2, 3, 7}) hist[m] = rootsys::torus_fixed_dims(rs, &w, m);
    for (const auto& r : classdata::ClassTable::bundled().records()) {
      if (r.family != fam || r.unipotent || !r.dM || !r.dL) continue;
      if (!hist.at(r.order).attains(*r.dM, *r.dL))
        return fail(fam + " " + r.label + " (" + std::to_string(*r.dM) + "," + std::to_string(*r.dL) +
                    ") not attained");
      ++checked;
    }
  }
  const std::vector<std::tuple<std::string, std::string, int, int>> named{
      {"F4", "2A", 14, 24}, {"F4", "2B", 10, 36}, {"F4", "3C", 8, 16}, {"F4", "7N", 2, 10},
      {"E6", "2A", 15, 38}, {"E6", "3C", 9, 24}, {"E6", "7N", 3, 12}};
  for (const auto& [fam, label, dm, dl] : named) {
    bool found = false;
    for (const auto& r : classdata::ClassTable::bundled().records())
      if (r.family == fam && r.label == label && r.dM == dm && r.dL == dl) found = true;
    if (!found) return fail(fam + " " + label + " is not recorded as (" + std::to_string(dm) + "," +
                            std::to_string(dl) + ")");
  }
  return pass(std::to_string(checked) + " semisimple records attained; named pairs present");
}

Outcome split_dims(const std::string& fam, std::uint32_t q, ModuleKind kind, std::size_t a,
                   std::size_t b) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = chevgrp::build_group(fam, q, kind);
  std::mt19937_64 rng(search::derive_seed(0x73706c6974, q));
  const auto s = meataxe::split(meataxe::ModuleAction(g.generators), rng);
  std::multiset<std::size_t> got{s.sub.dim(), s.quotient.dim()}, want{a, b};
  const std::string d = fam + "(" + std::to_string(q) + ") " + to_string(kind) + " " +
                        std::to_string(g.dim) + " -> " + std::to_string(s.sub.dim()) + " + " +
                        std::to_string(s.quotient.dim());
  if (g.dim != a + b || got != want) return fail(d);
  return within(pass(d), elapsed(t0), kSplitSeconds);
}

Outcome module_splitting() {
  std::vector<std::string> parts;
  for (const auto& [fam, q, kind, a, b] :
       std::vector<std::tuple<std::string, std::uint32_t, ModuleKind, std::size_t, std::size_t>>{
           {"F4", 3, ModuleKind::M, 1, 25}, {"F4", 2, ModuleKind::L, 26, 26},
           {"E6", 3, ModuleKind::L, 1, 77}}) {
    const auto o = split_dims(fam, q, kind, a, b);
    if (o.kind != Outcome::Pass) return o;
    parts.push_back(o.detail);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto mp = chevgrp::module_of(chevgrp::build_group("F4", 3, ModuleKind::M), ModuleKind::Mprime);
  std::mt19937_64 rng(search::derive_seed(0x6972726564, 3));
  const auto r = meataxe::is_irreducible(meataxe::ModuleAction(mp.generators), rng, 200);
  if (mp.dim != 25 || r.verdict != meataxe::Verdict::Irreducible)
    return fail("F4(3) M' of dim " + std::to_string(mp.dim) + " not certified irreducible");
  parts.push_back("M' irreducible after " + std::to_string(r.trials) + " trials");
  std::string d;
  for (const auto& p : parts) d += (d.empty() ? "" : "; ") + p;
  return within(pass(d), elapsed(t0), kSplitSeconds);
}

// Exhaustive closure by breadth-first search over matrix entry vectors.
std::size_t brute_closure(const std::vector<ffla::Matrix>& gens, std::size_t cap) {
  const auto id = ffla::Matrix::identity(gens.front().field_ptr(), gens.front().dim());
  std::set<std::vector<ffla::Elem>> seen{id.entries()};
  std::deque<ffla::Matrix> todo{id};
  while (!todo.empty()) {
    const auto g = todo.front();
    todo.pop_front();
    for (const auto& s : gens) {
      auto h = ffla::mat_mul(g, s);
      if (seen.insert(h.entries()).second) {
        if (seen.size() > cap) return seen.size();
        todo.push_back(std::move(h));
      }
    }
  }
  return seen.size();
}

struct HuntRun {
  std::optional<Witness> witness;
  search::HuntResult result;
  chevgrp::GroupCtx ctx;
};

HuntRun run_hunt(const std::string& fam, std::uint64_t q, const std::string& type, std::uint64_t seed,
                 const search::HuntLimits& limits) {
  const auto target = search::resolve_target(fam, q, type);
  HuntRun run{std::nullopt, {}, chevgrp::build_group(fam, static_cast<std::uint32_t>(q),
                                                     search::hunt_module(fam, q))};
  run.result = search::hunt(run.ctx, target, seed, limits);
  if (!run.result.hit) return run;
  auto w = search::make_witness(run.ctx, target, seed, limits, *run.result.hit);
  if (const auto spec = search::cert_spec_for(fam, q)) search::certify_generation(w, *spec, seed);
  run.witness = std::move(w);
  return run;
}

std::string failures(const search::VerifyReport& rep) {
  std::string out;
  for (const auto& c : rep.checks)
    if (c.outcome == search::Check::Outcome::Fail) out += (out.empty() ? "" : ", ") + c.name;
  return out;
}

Outcome smoke_search() {
  const auto t0 = std::chrono::steady_clock::now();
  search::HuntLimits lim;
  lim.max_iterations = 100000;
  const auto a = run_hunt("A1", 7, "", 7, lim);
  if (!a.witness) return fail("no witness within 100000 conjugates");
  const auto& w = *a.witness;
  if (w.status != Witness::Status::Certified) return fail("witness not certified");
  const auto n = brute_closure({*w.x, *w.z}, 10000);
  if (n != 168) return fail("|<x, z>| = " + std::to_string(n));
  const auto rep = search::verify_witness(w, a.ctx);
  if (!rep.ok()) return fail("verify failed: " + failures(rep));
  const auto b = run_hunt("A1", 7, "", 7, lim);
  if (!b.witness || search::serialize_witness(*b.witness) != search::serialize_witness(w))
    return fail("second run with the same seed differs");
  g_witnesses.emplace_back(w, a.ctx);
  return within(pass("PSL(2,7) certified, |<x, z>| = 168 by enumeration, replay identical"),
                elapsed(t0), kSmokeSeconds);
}

Outcome f4_three(const Options& opt) {
  if (opt.skip_long) return skip("--skip-long given");
  search::HuntLimits lim;
  lim.workers = opt.workers;
  lim.seconds = opt.minutes * 60;
  const auto run = run_hunt("F4", 3, "2A,~A2+A1,7N", opt.seed, lim);
  const auto& st = run.result.stats;
  std::string stats = std::to_string(st.iterations) + " conjugates, " + std::to_string(opt.workers) +
                      " workers, " + secs(st.seconds);
  if (!run.witness) return fail("no witness within " + stats);
  const auto& w = *run.witness;
  g_witnesses.emplace_back(w, run.ctx);
  std::set<std::uint64_t> orders;
  for (const auto& c : w.certificates) orders.insert(c.order);
  if (orders != std::set<std::uint64_t>{40, 73, 82}) return fail("certificate orders incomplete");
  const auto rep = search::verify_witness(w, run.ctx);
  if (!rep.ok()) return fail("verify failed: " + failures(rep));
  return pass("(2A, ~A2+A1, 7N) on M' found after " + stats + "; orders 40, 82, 73 certified");
}

Outcome e6_three(const Options& opt) {
  if (!opt.stretch) return skip("stretch criterion, run with --stretch");
  search::HuntLimits lim;
  lim.workers = opt.workers;
  lim.seconds = opt.minutes * 60;
  const auto run = run_hunt("E6", 3, "2A,2A2+A1,7N", opt.seed, lim);
  const auto& st = run.result.stats;
  std::string stats = std::to_string(st.iterations) + " conjugates, " + secs(st.seconds);
  if (!run.witness) return fail("no witness within " + stats);
  const auto& w = *run.witness;
  g_witnesses.emplace_back(w, run.ctx);
  const auto rep = search::verify_witness(w, run.ctx);
  if (!rep.ok()) return fail("verify failed: " + failures(rep));
  if (w.status != Witness::Status::Certified) return fail("candidate not certified after " + stats);
  return pass("(2A, 2A2+A1, 7N) found after " + stats + "; orders 242, 728, 757 certified");
}

Outcome scott_meta() {
  search::HuntLimits lim;
  lim.max_iterations = 200000;
  for (const auto& [q, seed] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {13, 1}, {27, 2}, {29, 3}, {49, 4}}) {
    auto run = run_hunt("A1", q, "", seed, lim);
    if (run.witness) g_witnesses.emplace_back(*run.witness, run.ctx);
  }
  if (g_witnesses.empty()) return fail("no witnesses produced");
  for (const auto& [w, ctx] : g_witnesses) {
    const std::string name = w.family + "(" + std::to_string(w.q) + ")";
    const auto rep = search::verify_witness(w, ctx);
    const auto it = std::find_if(rep.checks.begin(), rep.checks.end(),
                                 [](const auto& c) { return c.name == "scott"; });
    if (it == rep.checks.end() || it->outcome != search::Check::Outcome::Pass)
      return fail(name + ": scott check did not pass");
    const auto sum = ffla::fixed_space_dim(*w.x) + ffla::fixed_space_dim(*w.y) +
                     ffla::fixed_space_dim(*w.z);
    if (sum > ctx.dim)
      return fail(name + ": " + std::to_string(sum) + " > " + std::to_string(ctx.dim) + " on " +
                  to_string(ctx.kind));
  }
  return pass(std::to_string(g_witnesses.size()) + " witnesses satisfy the inequality");
}

Outcome replay() {
  const auto dir = std::filesystem::temp_directory_path() / "hurwitz_acceptance_replay";
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (unsigned workers : {1u, 1u, 3u}) {
    search::HuntLimits lim;
    lim.max_iterations = 400000;
    lim.chunk = 64;
    lim.workers = workers;
    const auto run = run_hunt("A1", 13, "", 11, lim);
    if (!run.witness) return fail("no witness");
    const auto path = dir / ("w" + std::to_string(files.size()));
    search::save_witness(*run.witness, path);
    files.push_back(read_file(path));
  }
  std::filesystem::remove_all(dir);
  if (files[0] != files[1]) return fail("identical runs wrote different files");
  if (files[0] != files[2]) return fail("worker count changed the witness");
  return pass("three runs (1, 1, 3 workers) wrote byte-identical witness files");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  opt.golden = HURWITZ_GOLDEN_DIR "/admissible_triples.txt";
  CLI::App app{"acceptance criteria"};
  app.add_flag("--skip-long", opt.skip_long, "skip the F4(3) witness hunt");
  app.add_flag("--stretch", opt.stretch, "also run the E6(3) witness hunt");
  app.add_option("--seed", opt.seed, "master seed for the F4(3) and E6(3) hunts");
  app.add_option("--minutes", opt.minutes, "wall-clock budget per long hunt");
  app.add_option("--workers", opt.workers, "hunt workers");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"admissible triple table", [&] {
         const auto t0 = std::chrono::steady_clock::now();
         auto o = table_reproduction(opt);
         return within(o, elapsed(t0), kTableSeconds);
       }},
      {"negative verdicts", [] {
         const auto t0 = std::chrono::steady_clock::now();
         auto o = negative_verdicts();
         return within(o, elapsed(t0), kVerdictSeconds);
       }},
      {"order-7 torus minima", torus_minima},
      {"semisimple cross-check", [] {
         const auto t0 = std::chrono::steady_clock::now();
         auto o = semisimple_cross_check();
         return within(o, elapsed(t0), kCrossCheckSeconds);
       }},
      {"module splitting", module_splitting},
      {"PSL(2,7) smoke search", smoke_search},
      {"F4(3) witness", [&] { return f4_three(opt); }},
      {"E6(3) witness", [&] { return e6_three(opt); }},
      {"Scott inequality on witnesses", scott_meta},
      {"replay determinism", replay},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    static const char* tag[] = {"PASS", "FAIL", "SKIP"};
    std::cout << tag[o.kind] << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << " ["
              << secs(elapsed(t0)) << "]" << std::endl;
    failed += o.kind == Outcome::Fail;
  }
  return failed ? 1 : 0;
}
