#include <doctest.h>

#include "oracles.hpp"
#include "qcancel/errors.hpp"
#include "qcancel/lattice.hpp"

using namespace qcancel;

namespace {

bool unimodular(const IntMatrix& u) { return abs(determinant(u)) == 1; }

bool is_row_hnf(const IntMatrix& h) {
  std::size_t lead = 0;
  bool zero_seen = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || (r > 0 && c < lead) || h(r, c) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, c) < 0 || h(above, c) >= h(r, c)) return false;
    lead = c + 1;
  }
  return true;
}

bool is_smith(const IntMatrix& d) {
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (r != c) {
        if (d(r, c) != 0) return false;
        continue;
      }
      if (d(r, c) < 0) return false;
      if (d(r, c) == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen || d(r, c) % prev != 0) return false;
      prev = d(r, c);
    }
  return true;
}

IntVector iv(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

}  // namespace

TEST_CASE("hnf examples") {
  auto id = hnf(IntMatrix::identity(3));
  CHECK(id.H == IntMatrix::identity(3));
  CHECK(id.U == IntMatrix::identity(3));

  IntMatrix m{{2, 4}, {6, 8}};
  auto f = hnf(m);
  CHECK(f.H == IntMatrix{{2, 0}, {0, 4}});
  CHECK(f.U * m == f.H);
  CHECK(unimodular(f.U));

  auto z = hnf(IntMatrix(2, 3));
  CHECK(z.H.is_zero());
  CHECK(z.U == IntMatrix::identity(2));
}

TEST_CASE("snf examples") {
  IntMatrix m{{2, 4}, {6, 8}};
  auto s = snf(m);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
  CHECK(s.U * m * s.V == s.D);
  CHECK(snf(IntMatrix{{3, 0}, {0, 3}}).D == IntMatrix{{3, 0}, {0, 3}});
  CHECK(snf(IntMatrix{{0}}).D == IntMatrix{{0}});
}

TEST_CASE("randomized decomposition identities") {
  oracle::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto rows = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    const auto cols = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    auto m = oracle::random_matrix(rng, rows, cols, 9);
    auto h = hnf(m);
    CHECK(h.U * m == h.H);
    CHECK(unimodular(h.U));
    CHECK(is_row_hnf(h.H));
    auto s = snf(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(unimodular(s.U));
    CHECK(unimodular(s.V));
    CHECK(is_smith(s.D));
  }
}

TEST_CASE("solve") {
  CongruenceSystem parity(1);
  parity.add_equation(iv({2}), 1, 4);
  CHECK(std::holds_alternative<Unsolvable>(solve(parity)));

  CongruenceSystem odd(1);
  odd.add_equation(iv({1}), 1, 2);
  auto r = std::get<Solvable>(solve(odd));
  CHECK(odd.is_satisfied_by(r.particular));
  CHECK(r.kernel == IntegerLattice::scaled_standard(1, 2));

  // T_1 of k_q[x1,x2,x3], q of order 2: d3 = -1 and d2 = 1 (mod 2)
  CongruenceSystem t1(2);
  t1.add_equation(iv({0, 1}), -1, 2);
  t1.add_equation(iv({1, 0}), 1, 2);
  auto sol = std::get<Solvable>(solve(t1));
  CHECK(t1.is_satisfied_by(sol.particular));
  std::vector<IntVector> hits;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 2; ++b)
      if (t1.is_satisfied_by(iv({a, b}))) hits.push_back(iv({a, b}));
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == iv({1, 1}));
}

TEST_CASE("randomized solve") {
  oracle::Rng rng(22);
  for (int t = 0; t < 150; ++t) {
    const auto vars = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    const auto eqs = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    CongruenceSystem sys(vars);
    for (std::size_t e = 0; e < eqs; ++e) {
      IntVector row;
      for (std::size_t v = 0; v < vars; ++v) row.emplace_back(oracle::uniform(rng, -4, 4));
      sys.add_equation(row, oracle::uniform(rng, -5, 5), oracle::uniform(rng, 0, 6));
    }
    auto res = solve(sys);
    // brute force over a box large enough to contain a representative
    bool brute = false;
    for (const auto& d : oracle::box(vars, 7)) {
      IntVector v;
      for (int x : d) v.emplace_back(x - 3);
      if (sys.is_satisfied_by(v)) brute = true;
    }
    if (brute) REQUIRE(std::holds_alternative<Solvable>(res));
    if (auto* s = std::get_if<Solvable>(&res)) {
      CHECK(sys.is_satisfied_by(s->particular));
      for (const auto& k : s->kernel.basis()) {
        IntVector moved = s->particular;
        for (std::size_t i = 0; i < vars; ++i) moved[i] += k[i];
        CHECK(sys.is_satisfied_by(moved));
      }
    }
  }
}

TEST_CASE("coordinate gcds and index") {
  auto l2 = IntegerLattice::scaled_standard(2, 2);
  CHECK(coordinate_gcds(l2) == iv({2, 2}));
  auto diag = IntegerLattice::from_generators(2, {iv({1, -1})});
  CHECK(coordinate_gcds(diag) == iv({1, 1}));
  CHECK(lattice_index(l2) == Integer(4));
  CHECK_FALSE(lattice_index(diag).has_value());
  CHECK(lattice_index(IntegerLattice::scaled_standard(3, 5)) == Integer(125));

  oracle::Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    auto m = oracle::random_matrix(rng, 3, 3, 6);
    if (determinant(m) == 0) continue;
    std::vector<IntVector> rows{m.row(0), m.row(1), m.row(2)};
    CHECK(lattice_index(IntegerLattice::from_generators(3, rows)) == abs(determinant(m)));
  }
}

TEST_CASE("nonnegative vectors") {
  auto l2 = IntegerLattice::scaled_standard(2, 2);
  auto w = find_nonzero_nonneg_vector(l2);
  REQUIRE(w.has_value());
  CHECK(*w == iv({2, 0}));
  CHECK_FALSE(has_nonzero_nonneg_vector(IntegerLattice::from_generators(2, {iv({1, -1})})));
  CHECK_FALSE(has_nonzero_nonneg_vector(IntegerLattice(3)));
  auto mixed = IntegerLattice::from_generators(3, {iv({1, -2, 1}), iv({0, 3, -1})});
  auto v = find_nonzero_nonneg_vector(mixed);
  REQUIRE(v.has_value());
  CHECK(mixed.contains(*v));

  NonnegSearchOptions tiny;
  tiny.max_combinations = 10;
  auto wide = IntegerLattice::from_generators(4, {iv({1, -1, 0, 0}), iv({0, 1, -1, 0}), iv({0, 0, 1, -1})});
  CHECK_THROWS_AS(find_nonzero_nonneg_vector(wide, tiny), BoundExceededError);
}
