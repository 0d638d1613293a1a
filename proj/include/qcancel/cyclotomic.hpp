#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qcancel {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficients (low degree first) of the m-th cyclotomic polynomial,
/// obtained from x^m - 1 = prod_{d | m} Phi_d(x) by exact division.
std::vector<Integer> cyclotomic_polynomial(unsigned m);

/// Euler's totient, i.e. the degree of Phi_m.
unsigned euler_phi(unsigned m);

/// The field Q(zeta_m) presented as Q[z] / Phi_m(z).  Instances are
/// interned per order and shared by all scalars of that order.
struct CycloField {
  unsigned order = 1;
  std::vector<Integer> modulus;  // monic Phi_m, low degree first

  unsigned degree() const { return static_cast<unsigned>(modulus.size()) - 1; }
};

std::shared_ptr<const CycloField> cyclotomic_field(unsigned m);

/// Element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1}.
/// Two scalars are equal iff their orders and coefficient vectors agree.
class CycloScalar {
 public:
  /// Zero of Q (order 1).
  CycloScalar();

  static CycloScalar zero(unsigned m);
  static CycloScalar one(unsigned m);
  static CycloScalar from_rational(unsigned m, const Rational& value);
  static CycloScalar from_integer(unsigned m, long value) { return from_rational(m, Rational(value)); }
  /// zeta_m^a for any integer a (negative exponents allowed).
  static CycloScalar zeta_power(unsigned m, long long exponent);

  /// Canonical representative of sum_k dense[k] * zeta^k.
  static CycloScalar reduce(std::span<const Rational> dense, unsigned m);
  /// Canonical representative of sum c * zeta^e over arbitrary integer exponents e.
  static CycloScalar reduce(const std::map<long long, Rational>& sparse, unsigned m);

  unsigned order() const { return field_->order; }
  std::span<const Rational> coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// Value when the scalar lies in Q.
  std::optional<Rational> as_rational() const;

  CycloScalar inverse() const;
  /// Image under Q(zeta_m) -> Q(zeta_target), zeta_m -> zeta_target^{target/m}.
  CycloScalar embed(unsigned target) const;

  CycloScalar& operator+=(const CycloScalar& other);
  CycloScalar& operator-=(const CycloScalar& other);
  CycloScalar& operator*=(const CycloScalar& other);
  CycloScalar& operator/=(const CycloScalar& other);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }
  CycloScalar operator-() const;

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);

  /// Human-readable form, e.g. "-256", "1/2 - 1/2*zeta", with zeta = exp(2 pi i / m).
  std::string to_string() const;

 private:
  CycloScalar(std::shared_ptr<const CycloField> field, std::vector<Rational> coeffs);
  void check_same_field(const CycloScalar& other) const;

  std::shared_ptr<const CycloField> field_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloScalar& s);

/// Binomial coefficient C(n, k) as an exact integer; zero when k > n.
Integer binomial(long n, long k);

}  // namespace qcancel
