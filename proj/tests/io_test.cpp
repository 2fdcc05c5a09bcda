#include <gtest/gtest.h>

#include "mixpack/dot.hpp"
#include "mixpack/json_io.hpp"
#include "support.hpp"

namespace {

using namespace mixpack;
using testing_support::load_fixture;
using testing_support::named;

TEST(PackingJson, RoundTrips) {
  const Instance inst = load_fixture("two_roots.mg");
  const auto mp = std::get<MixedPacking>(solve(inst.graph, inst.roots));
  const json doc = packing_to_json(inst.graph, inst.roots, mp);
  EXPECT_EQ(doc.at("format"), 1);
  EXPECT_EQ(doc.at("status"), "feasible");
  ASSERT_EQ(doc.at("trees").size(), 2u);
  EXPECT_EQ(doc.at("trees")[0].at("root"), "r1");
  const auto& arc = doc.at("trees")[0].at("arcs")[0];
  for (const char* key : {"id", "tail", "head", "origin"}) EXPECT_TRUE(arc.contains(key)) << key;

  const MixedPacking back = packing_from_json(inst.graph, json::parse(doc.dump()));
  ASSERT_EQ(back.trees.size(), mp.trees.size());
  for (std::size_t i = 0; i < mp.trees.size(); ++i) EXPECT_EQ(back.trees[i].arcs, mp.trees[i].arcs);
  EXPECT_FALSE(validate_mixed_packing(inst.graph, inst.roots, back).has_value());
}

TEST(PackingJson, RejectsUnknownIds) {
  const Instance inst = load_fixture("two_roots.mg");
  const json doc = json::parse(
      R"({"format":1,"trees":[{"index":1,"arcs":[{"id":"zz","tail":"r1","head":"v3","origin":"arc"}]}]})");
  EXPECT_THROW(packing_from_json(inst.graph, doc), InputError);
  EXPECT_THROW(packing_from_json(inst.graph, json::parse(R"({"format":1})")), InputError);
}

TEST(CertificateJson, AcceptsSolveOutputAndBareCertificate) {
  const Instance inst = load_fixture("overloaded_path.mg");
  const auto cert = std::get<BiSetFamilyCertificate>(solve(inst.graph, inst.roots));
  const json full = infeasible_to_json(inst.graph, cert);
  EXPECT_EQ(full.at("status"), "infeasible");
  EXPECT_EQ(full.at("certificate").at("atom"), 1);

  for (const json& doc : {full, full.at("certificate")}) {
    const auto back = certificate_from_json(inst.graph, json::parse(doc.dump()));
    EXPECT_EQ(back.bisets, cert.bisets);
    EXPECT_EQ(back.lhs, cert.lhs);
    EXPECT_EQ(back.rhs, cert.rhs);
    EXPECT_TRUE(verify_certificate(inst.graph, inst.roots, back));
  }
  EXPECT_THROW(certificate_from_json(inst.graph, json::parse(R"({"atom":0,"bisets":[],"lhs":0,"rhs":1})")),
               InputError);
  EXPECT_THROW(
      certificate_from_json(inst.graph,
                            json::parse(R"({"atom":1,"bisets":[{"outer":["q"],"inner":["q"]}],"lhs":0,"rhs":1})")),
      InputError);
}

TEST(AtomsJson, ListsRootSets) {
  const Instance inst = load_fixture("two_roots.mg");
  const json doc = atoms_to_json(inst.graph, compute_atoms(inst.graph, inst.roots));
  EXPECT_EQ(doc.at("format"), 1);
  ASSERT_EQ(doc.at("atoms").size(), 3u);
  EXPECT_EQ(doc.at("atoms")[0].at("roots"), json::parse("[1]"));
  EXPECT_EQ(doc.at("atoms")[1].at("roots"), json::parse("[1,2]"));
  EXPECT_EQ(doc.at("atoms")[2].at("roots"), json::parse("[2]"));
  EXPECT_EQ(doc.at("atoms")[1].at("vertices"), json::parse(R"(["v3","v4"])"));
}

TEST(OrientJson, CertificateFields) {
  const Instance inst = load_fixture("overloaded_path.mg");
  const auto dec = compute_atoms(inst.graph, inst.roots);
  const CoverRequirement req(build_auxiliary(inst.graph, dec, 0), dec, inst.roots);
  const auto cert = std::get<SubpartitionCertificate>(orient_covering(req));
  const json doc = subpartition_certificate_to_json(req.aux(), cert);
  EXPECT_EQ(doc.at("atom"), 1);
  EXPECT_EQ(doc.at("deficit"), 2);
  EXPECT_EQ(doc.at("parts").size(), 3u);
}

TEST(Dot, ColoursTreesWhenPackingGiven) {
  const Instance inst = load_fixture("two_roots.mg");
  const std::string plain = export_dot(inst.graph, inst.roots);
  EXPECT_EQ(plain.rfind("digraph", 0), 0u);
  EXPECT_EQ(plain.find("color=red"), std::string::npos);
  EXPECT_NE(plain.find("dir=none"), std::string::npos);

  const auto mp = std::get<MixedPacking>(solve(inst.graph, inst.roots));
  const std::string coloured = export_dot(inst.graph, inst.roots, &mp);
  EXPECT_NE(coloured.find("color=red"), std::string::npos);
  EXPECT_NE(coloured.find("color=blue"), std::string::npos);
}

TEST(Output, IsDeterministic) {
  const Instance inst = load_fixture("two_roots.mg");
  const auto a = packing_to_json(inst.graph, inst.roots, std::get<MixedPacking>(solve(inst.graph, inst.roots))).dump();
  const auto b = packing_to_json(inst.graph, inst.roots, std::get<MixedPacking>(solve(inst.graph, inst.roots))).dump();
  EXPECT_EQ(a, b);
}

}  // namespace
