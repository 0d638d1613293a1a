#include "qcancel/center.hpp"

#include "qcancel/errors.hpp"

namespace qcancel {

namespace {

IntegerLattice skew_center_lattice(const SkewPresentation& s) {
  const std::size_t n = s.size();
  CongruenceSystem sys(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector torsion_row(n, Integer(0));
    for (std::size_t j = 0; j < n; ++j) torsion_row[j] = static_cast<long>(s.param(i, j).torsion);
    sys.add_equation(torsion_row, 0, s.order());
    for (std::size_t l = 0; l < s.free_count(); ++l) {
      IntVector free_row(n, Integer(0));
      for (std::size_t j = 0; j < n; ++j) free_row[j] = static_cast<long>(s.param(i, j).free[l]);
      sys.add_equation(free_row, 0, 0);
    }
  }
  return std::get<Solvable>(solve(sys)).kernel;
}

}  // namespace

CenterDescription center_lattice(const RingHandle& ring) {
  CenterDescription out;
  out.ring = ring;
  IntegerLattice lattice(0);
  for (const auto& f : ring->factors()) {
    IntegerLattice part =
        std::holds_alternative<SkewPresentation>(f)
            ? skew_center_lattice(std::get<SkewPresentation>(f))
            : IntegerLattice::scaled_standard(2, std::get<WeylPresentation>(f).q_order());
    lattice = IntegerLattice::direct_sum(lattice, part);
  }
  out.lattice = lattice;
  out.rank = lattice_index(lattice);

  if (out.rank) {
    IntVector g = coordinate_gcds(lattice);
    Integer prod = 1;
    for (const auto& gi : g) prod *= gi;
    if (prod == *out.rank) {
      std::vector<int> alpha;
      for (const auto& gi : g) alpha.push_back(static_cast<int>(gi.get_si()));
      out.rectangular = std::move(alpha);
    }
  }
  out.nonneg_witness = find_nonzero_nonneg_vector(lattice);
  out.trivial = !out.nonneg_witness.has_value();
  return out;
}

std::vector<Monomial> central_basis(const CenterDescription& center) {
  if (!center.rectangular) throw UnsupportedError("central basis requires a rectangular center");
  const auto& alpha = *center.rectangular;
  std::vector<Monomial> out;
  Monomial cur(alpha.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == alpha.size()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e < alpha[pos]; ++e) {
      cur[pos] = e;
      self(self, pos + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0);
  return out;
}

bool is_central(const NormalElement& u) {
  const auto& ring = u.ring_handle();
  for (std::size_t i = 0; i < ring->generator_count(); ++i) {
    auto x = NormalElement::generator(ring, i);
    if (!(mul(x, u) == mul(u, x))) return false;
  }
  return true;
}

NormalElement regular_trace(const NormalElement& u, const CenterDescription& center) {
  if (!center.rectangular) throw UnsupportedError("regular trace requires a rectangular center");
  const Ring& ring = u.ring();
  const auto& alpha = *center.rectangular;
  const std::size_t n = ring.generator_count();
  NormalElement out(u.ring_handle());
  if (!ring.has_weyl_factor()) {
    // Skew monomials multiply to single monomials: x^gamma hits the diagonal
    // only when gamma lies in the alpha-grid, and is then central with trace w x^gamma.
    long w = 1;
    for (int a : alpha) w *= a;
    for (const auto& [gamma, c] : u.terms()) {
      bool on_grid = true;
      for (std::size_t i = 0; i < n; ++i)
        if (gamma[i] % alpha[i] != 0) on_grid = false;
      if (on_grid) out.add_term(gamma, c * ring.scalar(w));
    }
    return out;
  }
  for (const auto& z : central_basis(center)) {
    NormalElement image = mul(u, NormalElement::monomial(u.ring_handle(), z));
    for (const auto& [gamma, c] : image.terms()) {
      Monomial rest(n), central(n);
      bool on_diagonal = true;
      for (std::size_t i = 0; i < n; ++i) {
        rest[i] = gamma[i] % alpha[i];
        central[i] = gamma[i] - rest[i];
        if (rest[i] != z[i]) on_diagonal = false;
      }
      if (!on_diagonal) continue;
      // x^gamma = lambda^{-1} * x^central * z
      auto split = monomial_product(ring, central, rest);
      if (split.size() != 1 || split.front().first != gamma)
        throw InternalError("central monomial times basis monomial is not a single term");
      out.add_term(central, c / split.front().second);
    }
  }
  return out;
}

}  // namespace qcancel
