#include <doctest.h>

#include "oracles.hpp"
#include "qcancel/errors.hpp"

using namespace qcancel;

namespace {

ParamExponent root(long long t, unsigned m) { return ParamExponent::root_of_unity(t, 0, m); }
SkewPresentation skew3_pres() { return SkewPresentation::uniform({"x1", "x2", "x3"}, 2, root(1, 2)); }
RingHandle skew3() { return make_ring(skew3_pres()); }
RingHandle poly_ring(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i + 1));
  return make_ring(SkewPresentation(names, 1, 0));
}
NormalElement mono(const RingHandle& r, Monomial m) { return NormalElement::monomial(r, std::move(m)); }

}  // namespace

TEST_CASE("T_s examples") {
  auto s = skew3_pres();
  for (std::size_t g = 0; g < 3; ++g) {
    auto t = t_set(s, g);
    REQUIRE_FALSE(t.empty());
    CHECK(*t.witness == std::vector<long>{1, 1});
    CHECK(in_t_set(s, g, {1, 1}));
    CHECK(in_t_set(s, g, {3, 1}));
    CHECK_FALSE(in_t_set(s, g, {1, 0}));
  }
  auto plane = SkewPresentation::uniform({"x1", "x2"}, 2, root(1, 2));
  CHECK(t_set(plane, 0).empty());
  CHECK(t_set(plane, 1).empty());
  CHECK_THROWS_AS(t_set(*make_ring(WeylPresentation({"x", "y"}, 2, 1)), 0), UnsupportedError);
}

TEST_CASE("T_s agrees with a direct scan on random rings") {
  oracle::Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    auto s = oracle::random_torsion_skew(rng, 4, 6);
    for (std::size_t g = 0; g < s.size(); ++g) {
      auto got = t_set(s, g);
      auto expected = oracle::t_set_scan(s, g);
      REQUIRE(got.empty() == !expected.has_value());
      if (expected) {
        CHECK(*got.witness == *expected);
        CHECK(in_t_set(s, g, *got.witness));
      }
    }
  }
}

TEST_CASE("ML^H examples") {
  auto plane = make_ring(SkewPresentation::uniform({"x1", "x2"}, 2, root(1, 2)));
  auto full = ml_h(*plane);
  CHECK(full.is_full);
  CHECK(full.generating_set == std::vector<std::size_t>{0, 1});
  auto trivial = ml_h(*skew3());
  CHECK(trivial.is_trivial);
  CHECK(trivial.generating_set.empty());

  // x3 commutes with x1, x2 but x1 x2 = q x2 x1 with q of order 3.
  SkewPresentation mixed({"x1", "x2", "x3"}, 3, 0);
  mixed.set_param(0, 1, root(1, 3));
  auto ml = ml_h(*make_ring(mixed));
  CHECK(ml.generating_set == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(ml.is_full);
  CHECK_FALSE(ml.is_trivial);
}

TEST_CASE("divided power derivation") {
  auto r = poly_ring(2);
  auto d = divided_power_derivation(r, 0);
  CHECK(d.apply(2, Monomial{3, 1}) == mono(r, {1, 1}) * r->scalar(3));
  CHECK(d.apply(1, Monomial{3, 0}) == mono(r, {2, 0}) * r->scalar(3));
  CHECK(d.apply(4, Monomial{3, 0}).is_zero());
  CHECK(d.apply(1, Monomial{0, 5}).is_zero());
  CHECK(d.support_bound(Monomial{3, 7}) == 3);
  for (auto check : {verify_higher_leibniz(d), verify_iterative(d), verify_locally_nilpotent(d)}) CHECK(check.passed);
  CHECK_THROWS_AS(divided_power_derivation(skew3(), 0), UsageError);
}

TEST_CASE("T_s witness derivation") {
  auto r = skew3();
  auto d = lnd_witness(r, 0, {1, 1});
  CHECK(d.kind() == DerivationKind::TSetWitness);
  CHECK(d.apply(1, Monomial{1, 0, 0}) == mono(r, {0, 1, 1}));
  CHECK(d.apply(1, Monomial{0, 1, 0}).is_zero());
  CHECK(d.apply(1, Monomial{0, 0, 1}).is_zero());
  // Leibniz forces d_2(x1^2) = d_1(x1) d_1(x1).
  CHECK(d.apply(2, Monomial{2, 0, 0}) == oracle::mul(r, {0, 1, 1}, {0, 1, 1}));
  CHECK(d.apply(3, Monomial{2, 0, 0}).is_zero());
  CHECK(verify_higher_leibniz(d).passed);
  CHECK(verify_iterative(d).passed);
  CHECK(verify_locally_nilpotent(d).passed);
  CHECK_THROWS_AS(lnd_witness(r, 0, {1, 0}), InvalidWitnessError);
  CHECK_THROWS_AS(lnd_witness(make_ring(SkewPresentation::uniform({"x1", "x2"}, 2, root(1, 2))), 0, {0}),
                  InvalidWitnessError);
}

TEST_CASE("witnesses verify on random rings") {
  oracle::Rng rng(52);
  int verified = 0;
  for (int t = 0; t < 20 && verified < 8; ++t) {
    auto s = oracle::random_torsion_skew(rng, 3, 4);
    auto r = make_ring(s);
    for (std::size_t g = 0; g < s.size(); ++g) {
      auto ts = t_set(s, g);
      if (ts.empty()) continue;
      auto d = lnd_witness(r, g, *ts.witness);
      const VerifyBounds b{3, 5};
      CHECK(verify_higher_leibniz(d, b).passed);
      CHECK(verify_iterative(d, b).passed);
      CHECK(verify_locally_nilpotent(d, b).passed);
      // Leibniz against rewriting on one product.
      Monomial a(s.size(), 0), c(s.size(), 0);
      a[g] = 1;
      c[(g + 1) % s.size()] = 1;
      auto lhs = NormalElement(r);
      const auto ac = oracle::mul(r, a, c);
      for (const auto& [m, coef] : ac.terms()) lhs += d.apply(1, m) * coef;
      auto rhs = oracle::mul(d.apply(1, a), mono(r, c)) + oracle::mul(mono(r, a), d.apply(1, c));
      CHECK(lhs == rhs);
      ++verified;
    }
  }
  CHECK(verified > 0);
}

TEST_CASE("mutants are rejected") {
  auto r = poly_ring(1);
  // d_1 = identity: no Leibniz rule.
  HigherDerivation identity_rule(
      r, [r](int n, const Monomial& m) { return n == 1 ? mono(r, m) : NormalElement(r); }, DerivationKind::User);
  auto leibniz = verify_higher_leibniz(identity_rule);
  CHECK_FALSE(leibniz.passed);
  REQUIRE(leibniz.counterexample.has_value());
  CHECK(leibniz.counterexample->property == "higher-leibniz");

  // d_n = identity for every n: never annihilates anything.
  HigherDerivation constant_rule(r, [r](int, const Monomial& m) { return mono(r, m); }, DerivationKind::User);
  CHECK_FALSE(verify_locally_nilpotent(constant_rule).passed);

  // d_n(t^m) = C(m, n) t^m: a higher derivation (t -> (1 + c) t) whose G maps do not invert.
  HigherDerivation scaling(
      r,
      [r](int n, const Monomial& m) { return mono(r, m) * CycloScalar::from_rational(1, Rational(binomial(m[0], n))); },
      DerivationKind::User, [](const Monomial& m) { return std::optional<int>(m[0]); });
  CHECK(verify_higher_leibniz(scaling).passed);
  CHECK_FALSE(verify_iterative(scaling).passed);
  CHECK_FALSE(verify_locally_nilpotent(scaling).passed);

  auto stretched = stretched_derivation(divided_power_derivation(r, 0));
  CHECK(stretched.apply(2, Monomial{3}) == mono(r, {2}) * r->scalar(3));
  CHECK(stretched.apply(1, Monomial{3}).is_zero());
  CHECK(verify_higher_leibniz(stretched).passed);
  auto iter = verify_iterative(stretched);
  CHECK_FALSE(iter.passed);
  REQUIRE(iter.counterexample.has_value());
  CHECK(iter.counterexample->property == "iterative");
}

TEST_CASE("canonical higher derivation") {
  auto r = skew3();
  auto source = lnd_witness(r, 1, {1, 1});
  auto canon = canonical_higher_derivation(source);
  CHECK(canon.kind() == DerivationKind::Canonical);
  for (const auto& m : monomials_up_to_degree(3, 3))
    for (int n = 1; n <= 4; ++n) CHECK(canon.apply(n, m) == source.apply(n, m));
  CHECK(verify_iterative(canon).passed);
  CHECK(verify_higher_leibniz(canon).passed);
}

TEST_CASE("G maps") {
  auto r = poly_ring(1);
  auto d = divided_power_derivation(r, 0);
  auto u2 = mono(r, {2});
  auto u_plus_1 = mono(r, {1}) + NormalElement::constant(r, 1);
  CHECK(g_map(d, CycloScalar::one(1), u2) == mul(u_plus_1, u_plus_1));
  CHECK(g_map(d, CycloScalar::zero(1), u2) == u2);

  oracle::Rng rng(53);
  auto w = skew3();
  auto wd = lnd_witness(w, 2, {1, 1});
  for (int t = 0; t < 15; ++t) {
    auto a = oracle::random_element(rng, w, 4, 3);
    auto c1 = oracle::random_scalar(rng, 2), c2 = oracle::random_scalar(rng, 2);
    CHECK(g_map(wd, c2, g_map(wd, c1, a)) == g_map(wd, c1 + c2, a));
    auto b = oracle::random_element(rng, w, 3, 3);
    CHECK(g_map(wd, c1, mul(a, b)) == mul(g_map(wd, c1, a), g_map(wd, c1, b)));
    auto at = TPolynomial::from_element(a);
    CHECK(g_t(wd, g_t(wd, at, 1), -1) == at);
  }

  HigherDerivation runaway(r, [r](int, const Monomial& m) { return mono(r, m); }, DerivationKind::User);
  CHECK_THROWS_AS(g_map(runaway, CycloScalar::one(1), u2, 4), BoundExceededError);
}

TEST_CASE("kernels") {
  auto r = skew3();
  auto d = lnd_witness(r, 0, {1, 1});
  CHECK(kernel_contains(d, mono(r, {0, 1, 0})));
  CHECK(kernel_contains(d, mono(r, {0, 1, 1})));
  CHECK(kernel_contains(d, NormalElement::constant(r, 5)));
  CHECK_FALSE(kernel_contains(d, mono(r, {1, 0, 0})));
  CHECK_FALSE(kernel_contains(d, mono(r, {2, 1, 0})));
}

TEST_CASE("ML^H generators lie in every witness kernel") {
  oracle::Rng rng(54);
  for (int t = 0; t < 30; ++t) {
    auto s = oracle::random_torsion_skew(rng, 4, 6);
    auto r = make_ring(s);
    auto ml = ml_h(*r);
    for (std::size_t g = 0; g < s.size(); ++g) {
      if (ml.t_sets[g].empty()) continue;
      auto d = lnd_witness(r, g, *ml.t_sets[g].witness);
      CHECK_FALSE(kernel_contains(d, NormalElement::generator(r, g)));
      for (auto kept : ml.generating_set) CHECK(kernel_contains(d, NormalElement::generator(r, kept)));
    }
  }
}
