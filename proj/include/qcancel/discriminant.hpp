#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcancel/center.hpp"

namespace qcancel {

/// Commutative polynomial in the generators' exponent coordinates.  Used for
/// elements of a rectangular center, where central normal-form monomials
/// multiply by adding exponents with coefficient 1.
class CentralPolynomial {
 public:
  using Terms = std::map<Monomial, CycloScalar>;

  CentralPolynomial(unsigned order, std::size_t variables) : order_(order), variables_(variables) {}
  static CentralPolynomial constant(unsigned order, std::size_t variables, const CycloScalar& c);
  static CentralPolynomial from_element(const NormalElement& u);

  unsigned order() const { return order_; }
  std::size_t variables() const { return variables_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Lexicographically greatest term (generator order).
  const std::pair<const Monomial, CycloScalar>& leading() const;

  void add_term(const Monomial& m, const CycloScalar& c);

  CentralPolynomial& operator+=(const CentralPolynomial& o);
  CentralPolynomial& operator-=(const CentralPolynomial& o);
  CentralPolynomial& operator*=(const CycloScalar& c);
  friend CentralPolynomial operator+(CentralPolynomial a, const CentralPolynomial& b) { return a += b; }
  friend CentralPolynomial operator-(CentralPolynomial a, const CentralPolynomial& b) { return a -= b; }
  friend CentralPolynomial operator*(CentralPolynomial a, const CycloScalar& c) { return a *= c; }
  friend CentralPolynomial operator*(const CentralPolynomial& a, const CentralPolynomial& b);
  CentralPolynomial operator-() const;
  friend bool operator==(const CentralPolynomial& a, const CentralPolynomial& b) = default;

  /// Exact quotient; throws InternalError if the division leaves a remainder.
  CentralPolynomial exact_divide(const CentralPolynomial& divisor) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  unsigned order_;
  std::size_t variables_;
  Terms terms_;
};

using PairingMatrix = std::vector<std::vector<CentralPolynomial>>;

/// Entry (i, j) = tr(z_i z_j) for the basis of a rectangular center.
PairingMatrix trace_pairing_matrix(const CenterDescription& center, const std::vector<Monomial>& basis);

/// Fraction-free (Bareiss) elimination with exact multivariate division.
CentralPolynomial determinant(const PairingMatrix& matrix);
/// Laplace expansion along the first row; limited to w <= 6.
CentralPolynomial determinant_cofactor(const PairingMatrix& matrix);

struct DiscriminantResult {
  /// Lex-leading coefficient scaled to 1 (zero polynomial when degenerate).
  CentralPolynomial normalized;
  /// Removed k^x factor: normalized * unit == raw determinant.
  CycloScalar unit;
  Integer rank;
  /// The trace pairing determinant vanished (non-separable case).
  bool degenerate = false;

  CentralPolynomial raw() const { return normalized * unit; }
};

/// d(A/C) = det(tr(z_i z_j)) over a rectangular center.  Throws
/// NonTorsionError / UnsupportedError outside that setting.
DiscriminantResult discriminant(const CenterDescription& center);
DiscriminantResult discriminant(const RingHandle& ring);

enum class Tri { Yes, No, Unknown };
std::string to_string(Tri t);

struct EffectivenessVerdict {
  Tri effective = Tri::Unknown;
  Tri dominating = Tri::Unknown;
  /// Identifier of the syntactic criterion that decided the verdict.
  std::string rule;
};

/// Syntactic effectiveness/dominance criteria for a nonzero discriminant.
EffectivenessVerdict classify_effectiveness(const CentralPolynomial& d, const Ring& ring);

}  // namespace qcancel
