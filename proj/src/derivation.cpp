#include "qcancel/derivation.hpp"

#include <algorithm>
#include <sstream>

#include "qcancel/errors.hpp"
#include "qcancel/lattice.hpp"

namespace qcancel {

std::string to_string(DerivationKind kind) {
  switch (kind) {
    case DerivationKind::DividedPower:
      return "divided-power";
    case DerivationKind::TSetWitness:
      return "t-set-witness";
    case DerivationKind::Canonical:
      return "canonical";
    case DerivationKind::User:
      break;
  }
  return "user";
}

HigherDerivation::HigherDerivation(RingHandle ring, Rule rule, DerivationKind kind, SupportBound support)
    : ring_(std::move(ring)), rule_(std::move(rule)), kind_(kind), support_(std::move(support)) {
  if (!ring_ || !rule_) throw UsageError("higher derivation needs a ring and a rule");
}

NormalElement HigherDerivation::apply(int index, const Monomial& m) const {
  if (index < 0) throw UsageError("derivation index must be non-negative");
  if (index == 0) return NormalElement::monomial(ring_, m);
  return rule_(index, m);
}

NormalElement HigherDerivation::apply(int index, const NormalElement& u) const {
  NormalElement out(ring_);
  for (const auto& [m, c] : u.terms()) out += apply(index, m) * c;
  return out;
}

std::optional<int> HigherDerivation::support_bound(const Monomial& m) const {
  if (!support_) return std::nullopt;
  return support_(m);
}

// ---------------------------------------------------------------------------
// T_s

namespace {

// Congruences of T_s over the n-1 unknowns (d_j)_{j != s}.
CongruenceSystem t_set_system(const SkewPresentation& ring, std::size_t s) {
  const std::size_t n = ring.size();
  CongruenceSystem sys(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == s) continue;
    IntVector torsion_row;
    for (std::size_t j = 0; j < n; ++j)
      if (j != s) torsion_row.emplace_back(static_cast<long>(ring.param(i, j).torsion));
    const ParamExponent target = ring.param(i, s);
    sys.add_equation(torsion_row, static_cast<long>(target.torsion), ring.order());
    for (std::size_t l = 0; l < ring.free_count(); ++l) {
      IntVector free_row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != s) free_row.emplace_back(static_cast<long>(ring.param(i, j).free[l]));
      sys.add_equation(free_row, static_cast<long>(target.free[l]), 0);
    }
  }
  return sys;
}

CongruenceSystem with_fixed_prefix(CongruenceSystem sys, const std::vector<long>& prefix) {
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    IntVector row(sys.variables(), Integer(0));
    row[k] = 1;
    sys.add_equation(row, prefix[k], 0);
  }
  return sys;
}

IntVector to_int_vector(const std::vector<long>& d) { return IntVector(d.begin(), d.end()); }

}  // namespace

bool in_t_set(const SkewPresentation& ring, std::size_t s, const std::vector<long>& d) {
  if (s >= ring.size()) throw UsageError("t_set: generator index out of range");
  if (d.size() != ring.size() - 1) return false;
  if (std::any_of(d.begin(), d.end(), [](long v) { return v < 0; })) return false;
  return t_set_system(ring, s).is_satisfied_by(to_int_vector(d));
}

TSetResult t_set(const SkewPresentation& ring, std::size_t s) {
  if (s >= ring.size()) throw UsageError("t_set: generator index out of range");
  TSetResult out;
  out.generator = s;
  const auto sys = t_set_system(ring, s);
  const auto result = solve(sys);
  if (std::holds_alternative<Unsolvable>(result)) return out;
  const auto& sol = std::get<Solvable>(result);
  const std::size_t t = sys.variables();

  std::vector<long> witness;
  std::vector<Integer> periods;
  for (std::size_t k = 0; k < t; ++k) periods.push_back(axis_period(sol.kernel, k));
  const bool periodic = std::all_of(periods.begin(), periods.end(), [](const Integer& p) { return p > 0; });

  if (periodic) {
    // Coordinates can be shifted independently by their periods, so the
    // lexicographically smallest non-negative solution is found greedily.
    for (std::size_t k = 0; k < t; ++k) {
      bool found = false;
      for (long v = 0; v < periods[k].get_si(); ++v) {
        auto prefix = witness;
        prefix.push_back(v);
        if (std::holds_alternative<Solvable>(solve(with_fixed_prefix(sys, prefix)))) {
          witness.push_back(v);
          found = true;
          break;
        }
      }
      if (!found) throw InternalError("t_set: greedy lift lost solvability");
    }
  } else {
    // Mixed case: bounded search around the particular solution.
    const auto& basis = sol.kernel.basis();
    long bound = 3;
    for (const auto& x : sol.particular) bound = std::max(bound, 3 * Integer(abs(x)).get_si());
    const unsigned long long width = 2ULL * static_cast<unsigned long long>(bound) + 1ULL;
    unsigned long long total = 1;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (total > 20'000'000ULL / width) throw BoundExceededError("t_set: witness search space too large");
      total *= width;
    }
    std::optional<IntVector> best;
    std::vector<long> coeff(basis.size(), -bound);
    for (unsigned long long step = 0; step < total; ++step) {
      IntVector v = sol.particular;
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < t; ++i) v[i] += coeff[j] * basis[j][i];
      if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x >= 0; }) && (!best || v < *best))
        best = v;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (++coeff[j] <= bound) break;
        coeff[j] = -bound;
      }
    }
    if (!best) throw BoundExceededError("t_set: no non-negative witness within the search bound");
    for (const auto& x : *best) witness.push_back(x.get_si());
  }

  if (!sys.is_satisfied_by(to_int_vector(witness))) throw InternalError("t_set: witness fails its congruences");
  // Consequence: prod_{j != s} p_sj^{d_j} = 1.
  ParamExponent check = ParamExponent::identity(ring.free_count());
  for (std::size_t j = 0, k = 0; j < ring.size(); ++j) {
    if (j == s) continue;
    check = param_add(check, param_scale(ring.param(s, j), witness[k++], ring.order()), ring.order());
  }
  if (!check.is_identity()) throw InternalError("t_set: witness does not commute with x_s");
  out.witness = std::move(witness);
  return out;
}

TSetResult t_set(const Ring& ring, std::size_t s) {
  auto skew = ring.as_skew();
  if (!skew) throw UnsupportedError("T_s sets are defined for skew polynomial rings only");
  return t_set(*skew, s);
}

MLResult ml_h(const Ring& ring) {
  auto skew = ring.as_skew();
  if (!skew) throw UnsupportedError("ML^H is computed for skew polynomial rings only");
  if (!skew->is_torsion()) throw NonTorsionError("ML^H computation needs root-of-unity parameters");
  MLResult out;
  for (std::size_t s = 0; s < skew->size(); ++s) {
    auto ts = t_set(*skew, s);
    if (ts.empty()) out.generating_set.push_back(s);
    out.t_sets.push_back(std::move(ts));
  }
  out.is_full = out.generating_set.size() == skew->size();
  out.is_trivial = out.generating_set.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

HigherDerivation divided_power_derivation(const RingHandle& ring, std::size_t generator) {
  if (generator >= ring->generator_count()) throw UsageError("divided power: generator index out of range");
  for (std::size_t k = 0; k < ring->factors().size(); ++k) {
    const std::size_t off = ring->offsets()[k];
    const Factor& f = ring->factors()[k];
    if (std::holds_alternative<WeylPresentation>(f)) {
      if (generator == off || generator == off + 1)
        throw UsageError("divided power: generator lies in a Weyl factor");
      continue;
    }
    const auto& s = std::get<SkewPresentation>(f);
    if (generator < off || generator >= off + s.size()) continue;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (!s.param(generator - off, j).is_identity())
        throw UsageError("divided power: generator does not commute with " + s.names()[j]);
  }
  auto rule = [ring, generator](int n, const Monomial& m) {
    if (m[generator] < n) return NormalElement::zero(ring);
    Monomial out = m;
    out[generator] -= n;
    Integer c = binomial(m[generator], n);
    return NormalElement::monomial(ring, std::move(out), ring->scalar(Rational(c)));
  };
  auto support = [generator](const Monomial& m) -> std::optional<int> { return m[generator]; };
  return HigherDerivation(ring, rule, DerivationKind::DividedPower, support);
}

HigherDerivation lnd_witness(const RingHandle& ring, std::size_t s, const std::vector<long>& d) {
  auto skew = ring->as_skew();
  if (!skew) throw UnsupportedError("witness derivations are built for skew polynomial rings only");
  if (!skew->is_torsion()) throw NonTorsionError("witness derivations need root-of-unity parameters");
  if (s >= skew->size()) throw UsageError("witness: generator index out of range");
  if (!in_t_set(*skew, s, d)) throw InvalidWitnessError("exponent tuple is not in T_s");

  const std::size_t n = skew->size();
  Monomial image(n, 0);
  for (std::size_t j = 0, k = 0; j < n; ++j)
    if (j != s) image[j] = static_cast<int>(d[k++]);

  auto rule = [ring, s, image](int index, const Monomial& m) {
    const int top = m[s];
    if (top < index) return NormalElement::zero(ring);
    Monomial rest = m;
    rest[s] = 0;
    Monomial xs(m.size(), 0);
    xs[s] = top;
    // x^m = lambda^{-1} * x^rest * x_s^top
    auto split = monomial_product(*ring, rest, xs);
    const CycloScalar lambda_inv = split.front().second.inverse();
    Monomial tail(m.size(), 0);
    tail[s] = top - index;
    NormalElement value = mul(mul(NormalElement::monomial(ring, rest),
                                  power(NormalElement::monomial(ring, image), static_cast<unsigned>(index))),
                              NormalElement::monomial(ring, tail));
    return value * (lambda_inv * ring->scalar(Rational(binomial(top, index))));
  };
  auto support = [s](const Monomial& m) -> std::optional<int> { return m[s]; };
  return HigherDerivation(ring, rule, DerivationKind::TSetWitness, support);
}

HigherDerivation canonical_higher_derivation(const HigherDerivation& source) {
  auto rule = [source](int n, const Monomial& m) {
    NormalElement cur = NormalElement::monomial(source.ring_handle(), m);
    Integer factorial = 1;
    for (int k = 1; k <= n; ++k) {
      cur = source.apply(1, cur);
      factorial *= k;
      if (cur.is_zero()) break;
    }
    return cur * source.ring().scalar(Rational(1, 1) / Rational(factorial));
  };
  return HigherDerivation(source.ring_handle(), rule, DerivationKind::Canonical);
}

HigherDerivation stretched_derivation(const HigherDerivation& source) {
  auto rule = [source](int n, const Monomial& m) {
    if (n % 2 != 0) return NormalElement::zero(source.ring_handle());
    return source.apply(n / 2, m);
  };
  HigherDerivation::SupportBound support;
  if (source.has_explicit_support())
    support = [source](const Monomial& m) -> std::optional<int> {
      auto b = source.support_bound(m);
      if (!b) return std::nullopt;
      return 2 * *b;
    };
  return HigherDerivation(source.ring_handle(), rule, DerivationKind::User, support);
}

// ---------------------------------------------------------------------------
// G maps and A[t]

TPolynomial TPolynomial::from_element(const NormalElement& a) {
  TPolynomial p(a.ring_handle());
  p.add(0, a);
  return p;
}

void TPolynomial::add(int t_degree, const NormalElement& a) {
  if (a.is_zero()) return;
  auto it = coeffs_.find(t_degree);
  if (it == coeffs_.end()) {
    coeffs_.emplace(t_degree, a);
    return;
  }
  it->second += a;
  if (it->second.is_zero()) coeffs_.erase(it);
}

TPolynomial& TPolynomial::operator+=(const TPolynomial& o) {
  for (const auto& [k, a] : o.coeffs_) add(k, a);
  return *this;
}

TPolynomial& TPolynomial::operator-=(const TPolynomial& o) {
  for (const auto& [k, a] : o.coeffs_) add(k, -a);
  return *this;
}

TPolynomial operator*(const TPolynomial& a, const TPolynomial& b) {
  TPolynomial out(a.ring_);
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_) out.add(i + j, mul(x, y));
  return out;
}

TPolynomial operator*(TPolynomial a, const CycloScalar& c) {
  TPolynomial out(a.ring_);
  for (auto& [k, x] : a.coeffs_) out.add(k, x * c);
  return out;
}

bool operator==(const TPolynomial& a, const TPolynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin(); ia != a.coeffs_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

std::string TPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, a] : coeffs_) {
    os << (first ? "" : " + ") << "(" << a.to_string() << ")";
    if (k > 0) os << "*t^" << k;
    first = false;
  }
  return os.str();
}

namespace {

// Largest index to sum for G maps on monomial m.
int g_sum_limit(const HigherDerivation& d, const Monomial& m, int index_bound) {
  if (auto s = d.support_bound(m)) return *s;
  if (!d.apply(index_bound, m).is_zero())
    throw BoundExceededError("d_i(" + monomial_to_string(d.ring(), m) + ") is nonzero at the index bound " +
                             std::to_string(index_bound));
  return index_bound;
}

}  // namespace

NormalElement g_map(const HigherDerivation& d, const CycloScalar& c, const NormalElement& a, int index_bound) {
  NormalElement out(d.ring_handle());
  for (const auto& [m, coef] : a.terms()) {
    const int limit = g_sum_limit(d, m, index_bound);
    CycloScalar cp = d.ring().scalar(1);
    for (int i = 0; i <= limit; ++i) {
      if (i > 0) {
        cp *= c;
        if (cp.is_zero()) break;
      }
      out += d.apply(i, m) * (cp * coef);
    }
  }
  return out;
}

TPolynomial g_t(const HigherDerivation& d, const TPolynomial& a, int sign, int index_bound) {
  if (sign != 1 && sign != -1) throw UsageError("g_t: sign must be +1 or -1");
  TPolynomial out(d.ring_handle());
  for (const auto& [k, elem] : a.coefficients())
    for (const auto& [m, coef] : elem.terms()) {
      const int limit = g_sum_limit(d, m, index_bound);
      for (int i = 0; i <= limit; ++i) {
        const CycloScalar c = (sign < 0 && i % 2 == 1) ? -coef : coef;
        out.add(k + i, d.apply(i, m) * c);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

class ApplyCache {
 public:
  ApplyCache(const HigherDerivation& d, int index_bound) : d_(d), index_bound_(index_bound) {}

  const NormalElement& get(const Monomial& m, int i) {
    auto it = cache_.find(m);
    if (it == cache_.end()) {
      std::vector<NormalElement> values;
      values.reserve(static_cast<std::size_t>(index_bound_) + 1);
      for (int k = 0; k <= index_bound_; ++k) values.push_back(d_.apply(k, m));
      it = cache_.emplace(m, std::move(values)).first;
    }
    return it->second[static_cast<std::size_t>(i)];
  }

 private:
  const HigherDerivation& d_;
  int index_bound_;
  std::map<Monomial, std::vector<NormalElement>> cache_;
};

}  // namespace

VerificationResult verify_higher_leibniz(const HigherDerivation& d, VerifyBounds bounds) {
  VerificationResult out;
  const RingHandle& ring = d.ring_handle();
  ApplyCache cache(d, bounds.index);
  const auto monos = monomials_up_to_degree(ring->generator_count(), bounds.degree);
  for (const auto& a : monos)
    for (const auto& b : monos) {
      const auto ab = monomial_product(*ring, a, b);
      for (int n = 1; n <= bounds.index; ++n) {
        NormalElement lhs(ring);
        for (const auto& [m, c] : ab) lhs += cache.get(m, n) * c;
        NormalElement rhs(ring);
        for (int i = 0; i <= n; ++i) {
          const auto& da = cache.get(a, i);
          if (da.is_zero()) continue;
          const auto& db = cache.get(b, n - i);
          if (db.is_zero()) continue;
          rhs += mul(da, db);
        }
        ++out.checks;
        if (!(lhs == rhs)) {
          out.passed = false;
          out.counterexample = Counterexample{"higher-leibniz", a, b, n, 0,
                                              "d_n(ab) = " + lhs.to_string() + " but sum d_i(a)d_{n-i}(b) = " +
                                                  rhs.to_string()};
          return out;
        }
      }
    }
  return out;
}

VerificationResult verify_iterative(const HigherDerivation& d, VerifyBounds bounds) {
  VerificationResult out;
  const RingHandle& ring = d.ring_handle();
  ApplyCache cache(d, bounds.index);
  for (const auto& m : monomials_up_to_degree(ring->generator_count(), bounds.degree))
    for (int i = 1; i <= bounds.index; ++i)
      for (int j = 1; i + j <= bounds.index; ++j) {
        NormalElement lhs = d.apply(i, cache.get(m, j));
        NormalElement rhs = cache.get(m, i + j) * ring->scalar(Rational(binomial(i + j, i)));
        ++out.checks;
        if (!(lhs == rhs)) {
          out.passed = false;
          out.counterexample = Counterexample{"iterative", m, std::nullopt, i, j,
                                              "d_i d_j(m) = " + lhs.to_string() + " but C(i+j,i) d_{i+j}(m) = " +
                                                  rhs.to_string()};
          return out;
        }
      }
  return out;
}

VerificationResult verify_locally_nilpotent(const HigherDerivation& d, VerifyBounds bounds) {
  VerificationResult out;
  const RingHandle& ring = d.ring_handle();
  const auto monos = monomials_up_to_degree(ring->generator_count(), bounds.degree);
  auto fail = [&](std::string property, const Monomial& a, std::optional<Monomial> b, std::string detail) {
    out.passed = false;
    out.counterexample = Counterexample{std::move(property), a, std::move(b), 0, 0, std::move(detail)};
    return out;
  };

  // (a) eventual annihilation
  for (const auto& m : monos) {
    ++out.checks;
    if (auto s = d.support_bound(m)) {
      for (int i = *s + 1; i <= *s + bounds.index; ++i)
        if (!d.apply(i, m).is_zero())
          return fail("nilpotence-support", m, std::nullopt,
                      "d_" + std::to_string(i) + " nonzero beyond the declared support " + std::to_string(*s));
    } else if (!d.apply(bounds.index, m).is_zero()) {
      return fail("nilpotence", m, std::nullopt,
                  "d_" + std::to_string(bounds.index) + "(m) is still nonzero at the index bound");
    }
  }

  // (b) G_{d,t} is an algebra automorphism of A[t]
  try {
    const std::size_t n = ring->generator_count();
    std::vector<TPolynomial> images;
    for (std::size_t i = 0; i < n; ++i)
      images.push_back(g_t(d, TPolynomial::from_element(NormalElement::generator(ring, i)), 1, bounds.index));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        // x_j x_i rewritten in normal form is the defining relation.
        auto xj = NormalElement::generator(ring, j);
        auto xi = NormalElement::generator(ring, i);
        TPolynomial lhs = images[j] * images[i];
        TPolynomial rhs = g_t(d, TPolynomial::from_element(mul(xj, xi)), 1, bounds.index);
        ++out.checks;
        if (!(lhs == rhs)) {
          Monomial a(n, 0), b(n, 0);
          a[j] = 1;
          b[i] = 1;
          return fail("relation", a, b, "G(x_j)G(x_i) = " + lhs.to_string() + " but G(x_j x_i) = " + rhs.to_string());
        }
      }
    for (const auto& m : monos) {
      const auto base = TPolynomial::from_element(NormalElement::monomial(ring, m));
      ++out.checks;
      if (!(g_t(d, g_t(d, base, -1, bounds.index), 1, bounds.index) == base))
        return fail("inverse", m, std::nullopt, "G_{d,t}(G_{d,-t}(m)) != m");
      ++out.checks;
      if (!(g_t(d, g_t(d, base, 1, bounds.index), -1, bounds.index) == base))
        return fail("inverse", m, std::nullopt, "G_{d,-t}(G_{d,t}(m)) != m");
    }
  } catch (const BoundExceededError& e) {
    Monomial zero(ring->generator_count(), 0);
    return fail("nilpotence", zero, std::nullopt, e.what());
  }
  return out;
}

bool kernel_contains(const HigherDerivation& d, const NormalElement& u, int index_bound) {
  for (int i = 1; i <= index_bound; ++i)
    if (!d.apply(i, u).is_zero()) return false;
  return true;
}

}  // namespace qcancel
