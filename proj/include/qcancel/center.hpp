#pragma once

#include <optional>
#include <vector>

#include "qcancel/element.hpp"
#include "qcancel/lattice.hpp"

namespace qcancel {

/// The center of a presented ring as the lattice L of exponents of central
/// monomials, together with the structural flags derived from L.
struct CenterDescription {
  RingHandle ring;
  IntegerLattice lattice;
  /// w = [Z^n : L]; std::nullopt when infinite.
  std::optional<Integer> rank;
  /// (alpha_1..alpha_n) when L = sum alpha_i Z e_i.
  std::optional<std::vector<int>> rectangular;
  /// L meets N^n only in 0, i.e. the center is k.
  bool trivial = false;
  /// A nonzero central exponent vector when the center is not trivial.
  std::optional<IntVector> nonneg_witness;
};

/// Skew factors contribute the kernel of the commutation congruences
/// sum_j p_ij d_j = 0 (one per generator); a Weyl factor with q of order e
/// contributes (eZ)^2; tensor factors add as a direct sum.
CenterDescription center_lattice(const RingHandle& ring);

/// Coset representatives {x^d : 0 <= d_i < alpha_i} in lexicographic order,
/// a free basis of the ring over a rectangular center.  z_1 = 1.
std::vector<Monomial> central_basis(const CenterDescription& center);

/// u commutes with every generator.
bool is_central(const NormalElement& u);

/// Trace of left multiplication by u on the free module with basis
/// central_basis(center).  The result is supported on central monomials.
/// Throws UnsupportedError when the center is not rectangular.
NormalElement regular_trace(const NormalElement& u, const CenterDescription& center);

}  // namespace qcancel
