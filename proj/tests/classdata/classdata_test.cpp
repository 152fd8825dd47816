#include "hurwitz/classdata/classdata.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "hurwitz/data_paths.hpp"
#include "hurwitz/rootsys/torus.hpp"

using namespace hurwitz;
using namespace hurwitz::classdata;

namespace {

std::set<std::string> labels(const std::vector<ClassRecord>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs) out.insert(r.label);
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

const ClassTable& table() { return ClassTable::bundled(); }

std::string bundled_text() { return read_file(data_dir() / "classes.dat"); }

}  // namespace

TEST(ClassTable, LoadsBundledFile) {
  EXPECT_GT(table().records().size(), 90u);
}

TEST(ClassTable, RefusesEditedContent) {
  std::string text = bundled_text();
  const auto pos = text.find("F4|2A|2|s|14|24");
  ASSERT_NE(pos, std::string::npos);
  text[pos + 10] = '5';
  EXPECT_THROW(ClassTable::parse(text), ChecksumMismatch);
}

TEST(ClassTable, RefusesMissingFooter) {
  std::string text = bundled_text();
  text.resize(text.rfind("#checksum"));
  EXPECT_THROW(ClassTable::parse(text), ChecksumMismatch);
}

TEST(ClassTable, AcceptsRehashedEdit) {
  const std::string body = "# t\nF4|2A|2|s|14|24|all|2|-4|mprime=-1\n";
  const auto t = ClassTable::parse(body + "#checksum fnv1a64 " + hex64(fnv1a64(body)) + "\n");
  ASSERT_EQ(t.records().size(), 1u);
  EXPECT_EQ(t.records()[0].d_mprime(), 13);
}

TEST(ClassTable, RejectsMalformedLine) {
  const std::string body = "F4|2A|2|x|14|24|all|-|-|-\n";
  EXPECT_THROW(ClassTable::parse(body + "#checksum fnv1a64 " + hex64(fnv1a64(body)) + "\n"),
               std::runtime_error);
}

TEST(ClassTable, DimensionsWithinModules) {
  const std::map<std::string, std::pair<int, int>> dims{
      {"F4", {26, 52}}, {"E6", {27, 78}}, {"E7", {56, 133}}, {"SE7", {56, 133}},
      {"E8", {0, 248}}, {"A1", {0, 3}}};
  for (const auto& r : table().records()) {
    const auto [dm, dl] = dims.at(r.family);
    if (r.dM) EXPECT_LE(*r.dM, dm) << r.family << " " << r.label;
    if (r.dL) EXPECT_LE(*r.dL, dl) << r.family << " " << r.label;
  }
}

TEST(ClassTable, FingerprintsDistinctWithinOrder) {
  std::map<std::tuple<std::string, int, bool, int, int>, std::string> seen;
  for (const auto& r : table().records()) {
    auto key = std::tuple(r.family, r.order, r.unipotent, r.dM.value_or(-1), r.dL.value_or(-1));
    if (r.family == "A1") continue;
    auto [it, fresh] = seen.emplace(key, r.label);
    if (fresh) continue;
    const bool declared =
        std::find(r.collides.begin(), r.collides.end(), it->second) != r.collides.end();
    EXPECT_TRUE(declared) << r.family << " " << r.label << " collides with " << it->second;
  }
}

TEST(Lookup, F4UnipotentInvolutionsInEvenCharacteristic) {
  EXPECT_EQ(labels(table().lookup("F4", 4, 2)),
            (std::set<std::string>{"A1", "~A1", "~A1(2)", "A1+~A1"}));
}

TEST(Lookup, SemisimpleSevensFollowConditions) {
  EXPECT_EQ(labels(table().lookup("F4", 5, 7)), (std::set<std::string>{"7N"}));
  EXPECT_EQ(labels(table().lookup("F4", 13, 7)), (std::set<std::string>{"7L", "7N", "7O"}));
  EXPECT_EQ(labels(table().lookup("F4", 8, 7)), (std::set<std::string>{"7L", "7N", "7O"}));
  EXPECT_EQ(labels(table().lookup("E6", 29, 7)),
            (std::set<std::string>{"7K", "7L", "7M", "7N", "7O"}));
  EXPECT_EQ(labels(table().lookup("F4", 7, 7)), (std::set<std::string>{"C3", "F4(a2)"}));
}

TEST(Lookup, ThreeBNeedsQOneModThree) {
  EXPECT_FALSE(labels(table().lookup("E6", 2, 3)).count("3B"));
  EXPECT_TRUE(labels(table().lookup("E6", 4, 3)).count("3B"));
  EXPECT_TRUE(labels(table().lookup("SE6", 4, 3)).count("3B"));
}

TEST(Lookup, TwistedFamilyUsesMinusQ) {
  EXPECT_TRUE(labels(table().lookup("2E6", 2, 3)).count("3B"));
  EXPECT_FALSE(labels(table().lookup("2E6", 4, 3)).count("3B"));
  EXPECT_TRUE(labels(table().lookup("2E6", 13, 7)).count("7K"));
  EXPECT_FALSE(labels(table().lookup("E6", 13, 7)).count("7K"));
}

TEST(Lookup, SE7OverridesInvolutionsOnly) {
  EXPECT_EQ(labels(table().lookup("SE7", 3, 2)), (std::set<std::string>{"A1D6a", "A1D6b"}));
  EXPECT_EQ(labels(table().lookup("SE7", 3, 3)), labels(table().lookup("E7", 3, 3)));
  EXPECT_EQ(labels(table().lookup("SE7", 2, 2)), labels(table().lookup("E7", 2, 2)));
  for (const auto& r : table().lookup("SE7", 3, 3)) EXPECT_EQ(r.family, "SE7");
}

TEST(Lookup, Errors) {
  EXPECT_THROW(table().lookup("G2", 5, 7), UnsupportedFamily);
  EXPECT_THROW(table().lookup("F4", 5, 5), UnsupportedFamily);
  EXPECT_THROW(table().lookup("F4", 6, 2), std::invalid_argument);
}

TEST(Condition, ParseAndEvaluate) {
  EXPECT_TRUE(Condition::parse("all").holds(12345));
  const auto c = Condition::parse("q=+-1(7)");
  EXPECT_EQ(c.to_string(), "q=+-1(7)");
  EXPECT_TRUE(c.holds(8));
  EXPECT_TRUE(c.holds(27));
  EXPECT_FALSE(c.holds(4));
  EXPECT_TRUE(c.holds(-13));
  EXPECT_TRUE(Condition::parse("q=1(3)").holds(-2));
  EXPECT_THROW(Condition::parse("q=2(7)"), std::invalid_argument);
}

TEST(Classify, F4InvolutionOnQuotientModule) {
  Fingerprint fp{2, {{ModuleKind::Mprime, 13}}, {}};
  EXPECT_EQ(table().classify(fp, "F4", 3), std::vector<std::string>{"2A"});
}

TEST(Classify, F4SevenOnQuotientModule) {
  Fingerprint fp{7, {{ModuleKind::Mprime, 1}}, {}};
  EXPECT_EQ(table().classify(fp, "F4", 3), std::vector<std::string>{"7N"});
}

TEST(Classify, F4UnipotentThreesOnQuotientModule) {
  EXPECT_EQ(as_set(table().classify({3, {{ModuleKind::Mprime, 9}}, {}}, "F4", 3)),
            (std::set<std::string>{"~A2+A1", "~A2"}));
  EXPECT_EQ(as_set(table().classify({3, {{ModuleKind::Mprime, 9}, {ModuleKind::L, 18}}, {}},
                                    "F4", 3)),
            (std::set<std::string>{"~A2+A1"}));
}

TEST(Classify, E6SevenByBothModules) {
  Fingerprint fp{7, {{ModuleKind::M, 3}, {ModuleKind::L, 14}}, {}};
  EXPECT_EQ(table().classify(fp, "E6", 5), std::vector<std::string>{"7M"});
}

TEST(Classify, PartialModuleCollisionIsMultiLabel) {
  Fingerprint fp{3, {{ModuleKind::M, 20}}, {}};
  EXPECT_EQ(as_set(table().classify(fp, "E7", 2)), (std::set<std::string>{"D5A1T1", "A2A5"}));
}

TEST(Classify, DeclaredCollisionIsMultiLabel) {
  Fingerprint fp{7, {{ModuleKind::L, 44}}, {}};
  EXPECT_EQ(as_set(table().classify(fp, "E8", 7)),
            (std::set<std::string>{"D6(a2)", "E6(a3)+A1"}));
}

TEST(Classify, UnknownFingerprintGivesEmpty) {
  EXPECT_TRUE(table().classify({2, {{ModuleKind::M, 7}}, {}}, "F4", 5).empty());
  EXPECT_TRUE(table().classify({5, {{ModuleKind::M, 7}}, {}}, "F4", 5).empty());
}

TEST(Classify, EveryRecordClassifiesToItself) {
  for (const std::string fam : {"F4", "E6", "E7", "E8"}) {
    for (std::uint64_t q : {2u, 3u, 5u, 7u}) {
      for (int order : {2, 3, 7}) {
        for (const auto& r : table().candidates(fam, q, order)) {
          Fingerprint fp{order, {}, {}};
          if (r.dM) fp.dims[ModuleKind::M] = *r.dM;
          if (r.dL) fp.dims[ModuleKind::L] = *r.dL;
          const auto got = table().classify(fp, fam, q);
          EXPECT_NE(std::find(got.begin(), got.end(), r.label), got.end()) << fam << " " << r.label;
        }
      }
    }
  }
}

// Semisimple records against the (d^M, d^L) pairs of torus elements.
TEST(CrossCheck, SemisimpleRecordsAttainedInTorus) {
  for (const std::string fam : {"F4", "E6"}) {
    const auto rs = rootsys::build_root_system(fam);
    const auto w = rootsys::minimal_weights(rs);
    std::map<int, rootsys::TorusHistogram> hist;
    for (int m : {2, 3, 7}) hist[m] = rootsys::torus_fixed_dims(rs, &w, m);
    for (const auto& r : table().records()) {
      if (r.family != fam || r.unipotent || !r.dM || !r.dL) continue;
      EXPECT_TRUE(hist[r.order].attains(*r.dM, *r.dL))
          << fam << " " << r.label << " (" << *r.dM << "," << *r.dL << ")";
    }
  }
}

TEST(CrossCheck, NamedSemisimplePairs) {
  const auto f4 = rootsys::build_root_system("F4");
  const auto wf = rootsys::minimal_weights(f4);
  EXPECT_TRUE(rootsys::torus_fixed_dims(f4, &wf, 2).attains(14, 24));
  EXPECT_TRUE(rootsys::torus_fixed_dims(f4, &wf, 2).attains(10, 36));
  EXPECT_TRUE(rootsys::torus_fixed_dims(f4, &wf, 3).attains(8, 16));
  EXPECT_TRUE(rootsys::torus_fixed_dims(f4, &wf, 7).attains(2, 10));
  const auto e6 = rootsys::build_root_system("E6");
  const auto we = rootsys::minimal_weights(e6);
  EXPECT_TRUE(rootsys::torus_fixed_dims(e6, &we, 2).attains(15, 38));
  EXPECT_TRUE(rootsys::torus_fixed_dims(e6, &we, 3).attains(9, 24));
  EXPECT_TRUE(rootsys::torus_fixed_dims(e6, &we, 7).attains(3, 12));
}
