#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcancel/presentation.hpp"

namespace qcancel {

/// Finite linear combination of normal-form monomials.  Zero coefficients
/// are never stored; iteration order is lexicographic in the exponents.
class NormalElement {
 public:
  using Terms = std::map<Monomial, CycloScalar>;

  explicit NormalElement(RingHandle ring);

  static NormalElement zero(RingHandle ring) { return NormalElement(std::move(ring)); }
  static NormalElement constant(RingHandle ring, const CycloScalar& value);
  static NormalElement constant(RingHandle ring, long value);
  static NormalElement monomial(RingHandle ring, Monomial exponents);
  static NormalElement monomial(RingHandle ring, Monomial exponents, const CycloScalar& coefficient);
  static NormalElement generator(RingHandle ring, std::size_t index);

  const Ring& ring() const { return *ring_; }
  const RingHandle& ring_handle() const { return ring_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  CycloScalar coefficient(const Monomial& m) const;
  /// Adds c * x^m, dropping the term if the coefficient cancels.
  void add_term(const Monomial& m, const CycloScalar& c);

  /// Largest total degree among the terms; throws UsageError for zero.
  int degree() const;

  NormalElement& operator+=(const NormalElement& other);
  NormalElement& operator-=(const NormalElement& other);
  NormalElement& operator*=(const CycloScalar& c);
  friend NormalElement operator+(NormalElement a, const NormalElement& b) { return a += b; }
  friend NormalElement operator-(NormalElement a, const NormalElement& b) { return a -= b; }
  friend NormalElement operator*(NormalElement a, const CycloScalar& c) { return a *= c; }
  friend NormalElement operator*(const CycloScalar& c, NormalElement a) { return a *= c; }
  friend NormalElement operator*(const NormalElement& a, const NormalElement& b);
  NormalElement operator-() const;

  friend bool operator==(const NormalElement& a, const NormalElement& b);

  std::string to_string() const;

 private:
  void check_ring(const NormalElement& other) const;

  RingHandle ring_;
  Terms terms_;
};

/// Exact product in normal form.  Throws NonTorsionError when the ring has a
/// free parameter and UsageError when the operands live in different rings.
NormalElement mul(const NormalElement& u, const NormalElement& v);
NormalElement power(const NormalElement& u, unsigned exponent);

/// Normal form of x^a * x^b as (monomial, coefficient) pairs.
std::vector<std::pair<Monomial, CycloScalar>> monomial_product(const Ring& ring, const Monomial& a,
                                                               const Monomial& b);

int degree(const NormalElement& u);
std::string monomial_to_string(const Ring& ring, const Monomial& m);
/// All exponent vectors of total degree <= bound, in lexicographic order.
std::vector<Monomial> monomials_up_to_degree(std::size_t variables, int bound);

}  // namespace qcancel
