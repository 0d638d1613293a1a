#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcancel/element.hpp"

namespace qcancel {

enum class DerivationKind { DividedPower, TSetWitness, Canonical, User };
std::string to_string(DerivationKind kind);

/// A higher derivation (d_0 = id, d_1, d_2, ...) given by its action on
/// normal-form monomials and extended linearly.
class HigherDerivation {
 public:
  /// Value of d_index on a basis monomial, index >= 1.
  using Rule = std::function<NormalElement(int index, const Monomial& m)>;
  /// Largest index whose value on m may be nonzero; std::nullopt when unknown.
  using SupportBound = std::function<std::optional<int>(const Monomial& m)>;

  HigherDerivation(RingHandle ring, Rule rule, DerivationKind kind, SupportBound support = {});

  const Ring& ring() const { return *ring_; }
  const RingHandle& ring_handle() const { return ring_; }
  DerivationKind kind() const { return kind_; }

  NormalElement apply(int index, const Monomial& m) const;
  NormalElement apply(int index, const NormalElement& u) const;
  /// Explicit vanishing bound for m, when the construction provides one.
  std::optional<int> support_bound(const Monomial& m) const;
  bool has_explicit_support() const { return static_cast<bool>(support_); }

 private:
  RingHandle ring_;
  Rule rule_;
  DerivationKind kind_;
  SupportBound support_;
};

// ---------------------------------------------------------------------------
// T_s sets and the Makar-Limanov^H invariant

/// T_s for one generator: either empty or a witness exponent tuple
/// (d_j)_{j != s} in N^{n-1}.
struct TSetResult {
  std::size_t generator = 0;  // 0-based s
  std::optional<std::vector<long>> witness;

  bool empty() const { return !witness.has_value(); }
};

/// Solves prod_{j != s} p_ij^{d_j} = p_is for all i != s and lifts to the
/// lexicographically smallest non-negative solution.  The witness is
/// re-checked, including prod_{j != s} p_sj^{d_j} = 1, before returning.
TSetResult t_set(const SkewPresentation& ring, std::size_t s);
/// Same on a ring whose factors are all skew; UnsupportedError otherwise.
TSetResult t_set(const Ring& ring, std::size_t s);

/// True iff d satisfies every T_s congruence.
bool in_t_set(const SkewPresentation& ring, std::size_t s, const std::vector<long>& d);

struct MLResult {
  std::vector<std::size_t> generating_set;  // generators x_s with T_s empty
  bool is_full = false;                     // ML^H(A) = A
  bool is_trivial = false;                  // ML^H(A) = k
  std::vector<TSetResult> t_sets;
};

/// ML^H(A) is generated by {x_s : T_s empty} for root-of-unity skew rings.
MLResult ml_h(const Ring& ring);

// ---------------------------------------------------------------------------
// Constructions

/// Delta_i^n(t^m) = C(m_i, n) t^{m - n e_i}; generator i must commute with
/// every other generator.
HigherDerivation divided_power_derivation(const RingHandle& ring, std::size_t generator);

/// Locally nilpotent witness for T_s != empty:
/// d_1(x_s) = x^d (d placed in the slots j != s), d_1(x_i) = 0 otherwise, and
/// d_n(f x_s^m) = C(m, n) f (x^d)^n x_s^{m-n} for f free of x_s.
/// Throws InvalidWitnessError unless d lies in T_s.
HigherDerivation lnd_witness(const RingHandle& ring, std::size_t s, const std::vector<long>& d);

/// d_n = delta^n / n! built from the first component of `source`.
HigherDerivation canonical_higher_derivation(const HigherDerivation& source);

/// d'_{2k} = d_k, d'_{odd} = 0: still a higher derivation, never iterative
/// unless trivial.
HigherDerivation stretched_derivation(const HigherDerivation& source);

// ---------------------------------------------------------------------------
// Verification

struct VerifyBounds {
  int degree = 4;
  int index = 8;
};

struct Counterexample {
  std::string property;
  Monomial a;
  std::optional<Monomial> b;
  int index = 0;
  int second_index = 0;
  std::string detail;
};

struct VerificationResult {
  bool passed = true;
  std::size_t checks = 0;
  std::optional<Counterexample> counterexample;
};

/// d_n(ab) = sum_{i=0}^n d_i(a) d_{n-i}(b) for basis monomials a, b of degree
/// <= bounds.degree and n <= bounds.index.
VerificationResult verify_higher_leibniz(const HigherDerivation& d, VerifyBounds bounds = {});

/// d_i d_j = C(i+j, i) d_{i+j} on monomials of degree <= bounds.degree, i, j >= 1, i + j <= bounds.index.
VerificationResult verify_iterative(const HigherDerivation& d, VerifyBounds bounds = {});

/// (a) every monomial of degree <= bounds.degree is eventually annihilated;
/// (b) G_{d,t} respects the defining relations, is multiplicative on
///     monomials, and G_{d,t} o G_{d,-t} = G_{d,-t} o G_{d,t} = id.
VerificationResult verify_locally_nilpotent(const HigherDerivation& d, VerifyBounds bounds = {});

/// d_i(u) = 0 for 1 <= i <= index_bound.
bool kernel_contains(const HigherDerivation& d, const NormalElement& u, int index_bound = 8);

// ---------------------------------------------------------------------------
// G maps

/// G_{c d}(a) = sum_i c^i d_i(a).  Throws BoundExceededError if d_i(a) is
/// still nonzero at index_bound and no explicit support bound is known.
NormalElement g_map(const HigherDerivation& d, const CycloScalar& c, const NormalElement& a, int index_bound = 8);

/// Element of A[t] with t central: coefficient of t^k at key k.
class TPolynomial {
 public:
  explicit TPolynomial(RingHandle ring) : ring_(std::move(ring)) {}
  static TPolynomial from_element(const NormalElement& a);

  const RingHandle& ring_handle() const { return ring_; }
  const std::map<int, NormalElement>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  void add(int t_degree, const NormalElement& a);

  TPolynomial& operator+=(const TPolynomial& o);
  TPolynomial& operator-=(const TPolynomial& o);
  friend TPolynomial operator+(TPolynomial a, const TPolynomial& b) { return a += b; }
  friend TPolynomial operator-(TPolynomial a, const TPolynomial& b) { return a -= b; }
  friend TPolynomial operator*(const TPolynomial& a, const TPolynomial& b);
  friend TPolynomial operator*(TPolynomial a, const CycloScalar& c);
  friend bool operator==(const TPolynomial& a, const TPolynomial& b);

  std::string to_string() const;

 private:
  RingHandle ring_;
  std::map<int, NormalElement> coeffs_;
};

/// G_{d,+t} (sign = +1) or G_{d,-t} (sign = -1) on A[t], k[t]-linearly.
TPolynomial g_t(const HigherDerivation& d, const TPolynomial& a, int sign = 1, int index_bound = 8);

}  // namespace qcancel
