#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "qcancel/errors.hpp"
#include "qcancel/report.hpp"
#include "qcancel/verdict.hpp"

using namespace qcancel;

namespace {

ParamExponent root(long long t, unsigned m) { return ParamExponent::root_of_unity(t, 0, m); }

bool cites(const VerdictReport& r, const std::string& rule) {
  for (const auto& c : r.citations)
    if (c.rule == rule) return true;
  return false;
}

// gcd of coordinate i over central exponents in [0, m]^n, by direct
// evaluation of the commutation exponents.
std::vector<long> central_gcds(const SkewPresentation& s) {
  const long m = s.order();
  std::vector<long> g(s.size(), 0);
  for (const auto& d : oracle::box(s.size(), static_cast<int>(m) + 1)) {
    bool central = true;
    for (std::size_t i = 0; i < s.size() && central; ++i) {
      long e = 0;
      for (std::size_t j = 0; j < s.size(); ++j) e += s.param(i, j).torsion * d[j];
      central = ((e % m) + m) % m == 0;
    }
    if (central)
      for (std::size_t i = 0; i < s.size(); ++i) g[i] = std::gcd(g[i], static_cast<long>(d[i]));
  }
  return g;
}

}  // namespace

TEST_CASE("verdict goldens") {
  auto plane = analyze(make_ring(SkewPresentation::uniform({"x1", "x2"}, 2, root(1, 2))));
  CHECK(plane.conclusion == Conclusion::StronglyCancellative);
  CHECK(plane.open_reason == OpenReason::None);
  CHECK(cites(plane, "root-of-unity-skew-rigidity-chain"));
  REQUIRE(plane.conditions.has_value());
  for (const auto& [name, value] : plane.conditions->entries()) {
    if (name == "affine_automorphism_group")
      CHECK_FALSE(value.has_value());
    else
      CHECK(value == std::optional<bool>(true));
  }

  auto skew3 = analyze(make_ring(SkewPresentation::uniform({"x1", "x2", "x3"}, 2, root(1, 2))));
  CHECK(skew3.conclusion == Conclusion::OpenCase);
  CHECK(skew3.open_reason == OpenReason::NoApplicableResult);
  REQUIRE(skew3.conditions.has_value());
  CHECK(skew3.conditions->lnd_h_rigid == std::optional<bool>(false));
  CHECK(skew3.conditions->center_in_proper_power_algebra == std::optional<bool>(false));
  CHECK_FALSE(skew3.discriminant.has_value());

  SkewPresentation g({"x1", "x2"}, 1, 1);
  g.set_param(0, 1, ParamExponent{0, {1}});
  auto generic = analyze(make_ring(g));
  CHECK(generic.conclusion == Conclusion::UniversallyCancellative);
  CHECK(cites(generic, "trivial-center-universal"));

  for (unsigned m : {2u, 3u}) {
    auto weyl = analyze(make_ring(WeylPresentation({"x", "y"}, m, 1)));
    CHECK(weyl.conclusion == Conclusion::StronglyCancellative);
    CHECK_FALSE(weyl.conditions.has_value());
    REQUIRE(weyl.effectiveness.has_value());
    CHECK(weyl.effectiveness->dominating == Tri::Yes);
  }

  auto tensor_planes = analyze(tensor({SkewPresentation::uniform({"a1", "a2"}, 2, root(1, 2)),
                                       SkewPresentation::uniform({"b1", "b2"}, 2, root(1, 2))}));
  CHECK(tensor_planes.conclusion == Conclusion::StronglyCancellative);

  auto mixed = analyze(tensor({SkewPresentation::uniform({"a1", "a2"}, 2, root(1, 2)),
                               WeylPresentation({"x", "y"}, 2, 1)}));
  CHECK(mixed.conclusion == Conclusion::StronglyCancellative);

  auto line = analyze(make_ring(SkewPresentation({"x"}, 2, 0)));
  CHECK(line.conclusion == Conclusion::Unsupported);
  auto commutative = analyze(make_ring(SkewPresentation({"x1", "x2"}, 1, 0)));
  CHECK(commutative.conclusion == Conclusion::Unsupported);
  CHECK_THROWS_AS(rigidity_conditions(make_ring(SkewPresentation({"x"}, 2, 0))), UnsupportedError);
  CHECK_THROWS_AS(rigidity_conditions(make_ring(WeylPresentation({"x", "y"}, 2, 1))), UnsupportedError);
}

TEST_CASE("skipping the discriminant") {
  auto r = make_ring(WeylPresentation({"x", "y"}, 3, 1));
  auto v = analyze(r, AnalyzeOptions{false});
  CHECK_FALSE(v.discriminant.has_value());
  CHECK(v.conclusion == Conclusion::Cancellative);
  CHECK(cites(v, "gk-two-noncommutative-cancellative"));
  CHECK_FALSE(v.notes.empty());
}

TEST_CASE("rigidity conditions agree on random root-of-unity skew rings") {
  oracle::Rng rng(61);
  int rigid = 0, flexible = 0;
  for (int t = 0; t < 60; ++t) {
    auto s = oracle::random_torsion_skew(rng, 4, 6);
    auto r = make_ring(s);
    if (s.is_commutative()) continue;
    RigidityConditions c;
    REQUIRE_NOTHROW(c = rigidity_conditions(r));
    bool all_empty = true;
    for (std::size_t g = 0; g < s.size(); ++g) all_empty = all_empty && !oracle::t_set_scan(s, g).has_value();
    CHECK(c.lnd_h_rigid == std::optional<bool>(all_empty));
    CHECK(c.strongly_lnd_h_rigid == std::optional<bool>(all_empty));
    auto gcds = central_gcds(s);
    const bool proper = std::all_of(gcds.begin(), gcds.end(), [](long v) { return v >= 2; });
    CHECK(c.center_in_proper_power_algebra == std::optional<bool>(proper));
    for (const auto& [name, value] : c.entries())
      if (value) CHECK(*value == all_empty);
    (all_empty ? rigid : flexible)++;
  }
  CHECK(rigid > 0);
  CHECK(flexible > 0);
}

TEST_CASE("verdicts are deterministic") {
  auto r = make_ring(SkewPresentation::uniform({"x1", "x2", "x3", "x4"}, 3, root(1, 3)));
  CHECK(verdict_json(analyze(r)).dump() == verdict_json(analyze(r)).dump());
}

TEST_CASE("adding the discriminant never changes a T_s-based verdict") {
  oracle::Rng rng(62);
  for (int t = 0; t < 25; ++t) {
    auto r = make_ring(oracle::random_torsion_skew(rng, 3, 4));
    auto without = analyze(r, AnalyzeOptions{false});
    if (without.conclusion != Conclusion::StronglyCancellative) continue;
    CHECK(analyze(r).conclusion == Conclusion::StronglyCancellative);
  }
}
