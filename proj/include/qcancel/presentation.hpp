#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcancel/cyclotomic.hpp"

namespace qcancel {

/// Exponent vector of a normal-form monomial x_1^{d_1} ... x_n^{d_n}.
using Monomial = std::vector<int>;

/// Element of Z^r x Z/m: a parameter zeta_m^torsion * q_1^free_1 ... q_r^free_r.
struct ParamExponent {
  long long torsion = 0;
  std::vector<long long> free;

  static ParamExponent identity(std::size_t free_count) { return {0, std::vector<long long>(free_count, 0)}; }
  static ParamExponent root_of_unity(long long torsion, std::size_t free_count, unsigned order);

  bool is_torsion() const;
  bool is_identity() const { return torsion == 0 && is_torsion(); }

  friend bool operator==(const ParamExponent&, const ParamExponent&) = default;
};

/// Group operations in Z^r x Z/m; results keep torsion in [0, m).
ParamExponent param_add(const ParamExponent& a, const ParamExponent& b, unsigned order);
ParamExponent param_neg(const ParamExponent& a, unsigned order);
ParamExponent param_scale(const ParamExponent& a, long long k, unsigned order);
/// Re-expresses a parameter of order `from` inside the group of order `to` (from | to).
ParamExponent param_embed(const ParamExponent& a, unsigned from, unsigned to, std::size_t free_count);
/// zeta_m^torsion; throws NonTorsionError when a free component is nonzero.
CycloScalar param_value(const ParamExponent& a, unsigned order);
std::string param_to_string(const ParamExponent& a, unsigned order);

/// k_{p_ij}[x_1..x_n] with x_j x_i = p_ij x_i x_j for i < j.  Only the strict
/// upper triangle is stored; p_ii = 1 and p_ji = p_ij^{-1} are derived.
class SkewPresentation {
 public:
  SkewPresentation(std::vector<std::string> names, unsigned order, std::size_t free_count);

  /// k_q[x_1..x_n] with every p_ij = q.
  static SkewPresentation uniform(std::vector<std::string> names, unsigned order, const ParamExponent& q);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  unsigned order() const { return order_; }
  std::size_t free_count() const { return free_count_; }

  /// p_ij for any 0-based i, j (derived entries included).
  ParamExponent param(std::size_t i, std::size_t j) const;
  /// Stores p_ij; requires i < j.
  void set_param(std::size_t i, std::size_t j, ParamExponent value);

  bool is_torsion() const;
  bool is_commutative() const;

  /// Same ring viewed in Z^r' x Z/m' with m | m' and r <= r'.
  SkewPresentation embedded(unsigned order, std::size_t free_count) const;

  friend bool operator==(const SkewPresentation&, const SkewPresentation&) = default;

 private:
  std::vector<std::string> names_;
  unsigned order_;
  std::size_t free_count_;
  std::vector<std::vector<ParamExponent>> upper_;  // upper_[i][j - i - 1]
};

enum class WeylOrientation {
  XyMinusQyxMinusOne,  // xy - q yx - 1 = 0
  YxMinusQxyMinusOne,  // yx - q xy - 1 = 0
};

std::string to_string(WeylOrientation o);
std::optional<WeylOrientation> parse_weyl_orientation(const std::string& text);

/// k<x, y> / (xy - q yx - 1) (or the mirrored orientation) with q != 1 a root of unity.
class WeylPresentation {
 public:
  WeylPresentation(std::vector<std::string> names, unsigned order, long long q_torsion,
                   WeylOrientation orientation = WeylOrientation::XyMinusQyxMinusOne);

  const std::vector<std::string>& names() const { return names_; }
  unsigned order() const { return order_; }
  long long q_torsion() const { return q_torsion_; }
  WeylOrientation orientation() const { return orientation_; }
  /// Multiplicative order of q; the center is k[x^e, y^e] for this e.
  unsigned q_order() const;

  WeylPresentation embedded(unsigned order) const;

  friend bool operator==(const WeylPresentation&, const WeylPresentation&) = default;

 private:
  std::vector<std::string> names_;
  unsigned order_;
  long long q_torsion_;
  WeylOrientation orientation_;
};

using Factor = std::variant<SkewPresentation, WeylPresentation>;

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

/// Finite tensor product of skew and Weyl factors.  On construction every
/// factor is re-expressed over the common order lcm(m_i) and the common free
/// rank max(r_i), so all scalars of one ring live in a single field.
class Ring {
 public:
  static RingHandle create(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  /// Index of the first generator of each factor.
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  std::size_t generator_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> generator_index(const std::string& name) const;
  unsigned order() const { return order_; }
  std::size_t free_count() const { return free_count_; }

  bool is_torsion() const;
  bool has_weyl_factor() const;
  bool is_commutative() const;
  /// The ring as a single skew presentation when every factor is skew
  /// (generators of distinct factors commute).
  std::optional<SkewPresentation> as_skew() const;

  CycloScalar scalar(long value) const { return CycloScalar::from_integer(order_, value); }
  CycloScalar scalar(const Rational& value) const { return CycloScalar::from_rational(order_, value); }
  const CycloScalar& zeta_power(long long exponent) const;

  std::string describe() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.factors_ == b.factors_; }

 private:
  Ring() = default;

  std::vector<Factor> factors_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> names_;
  unsigned order_ = 1;
  std::size_t free_count_ = 0;
  std::vector<CycloScalar> zeta_powers_;
};

/// Combined presentation; throws UsageError on an empty list or a name collision.
RingHandle tensor(std::vector<Factor> factors);
RingHandle make_ring(Factor factor);

/// Total generator count, the GK dimension of these monomial-basis rings.
std::size_t gk_dimension(const Ring& ring);

/// The scalar c with x^a x^b = c x^{a+b}, i.e. prod_{i<j} p_ij^{a_j b_i}.
ParamExponent commutation_scalar(const SkewPresentation& ring, const Monomial& a, const Monomial& b);

}  // namespace qcancel
