#include "qcancel/discriminant.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "qcancel/errors.hpp"

namespace qcancel {

// ---------------------------------------------------------------------------
// CentralPolynomial

CentralPolynomial CentralPolynomial::constant(unsigned order, std::size_t variables, const CycloScalar& c) {
  CentralPolynomial p(order, variables);
  p.add_term(Monomial(variables, 0), c);
  return p;
}

CentralPolynomial CentralPolynomial::from_element(const NormalElement& u) {
  CentralPolynomial p(u.ring().order(), u.ring().generator_count());
  for (const auto& [m, c] : u.terms()) p.add_term(m, c);
  return p;
}

const std::pair<const Monomial, CycloScalar>& CentralPolynomial::leading() const {
  if (terms_.empty()) throw UsageError("zero polynomial has no leading term");
  return *terms_.rbegin();
}

void CentralPolynomial::add_term(const Monomial& m, const CycloScalar& c) {
  if (m.size() != variables_) throw UsageError("central polynomial: exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CentralPolynomial& CentralPolynomial::operator+=(const CentralPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CentralPolynomial& CentralPolynomial::operator-=(const CentralPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CentralPolynomial& CentralPolynomial::operator*=(const CycloScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CentralPolynomial CentralPolynomial::operator-() const {
  CentralPolynomial out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

CentralPolynomial operator*(const CentralPolynomial& a, const CentralPolynomial& b) {
  CentralPolynomial out(a.order_, a.variables_);
  Monomial m(a.variables_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

CentralPolynomial CentralPolynomial::exact_divide(const CentralPolynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZeroError("central polynomial division by zero");
  const auto& [lead_m, lead_c] = divisor.leading();
  const CycloScalar lead_inv = lead_c.inverse();
  CentralPolynomial quotient(order_, variables_);
  CentralPolynomial rem = *this;
  Monomial shift(variables_);
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    for (std::size_t i = 0; i < variables_; ++i) {
      shift[i] = rm[i] - lead_m[i];
      if (shift[i] < 0) throw InternalError("central polynomial division is not exact");
    }
    CycloScalar factor = rc * lead_inv;
    quotient.add_term(shift, factor);
    CentralPolynomial step(order_, variables_);
    step.add_term(shift, factor);
    rem -= step * divisor;
  }
  return quotient;
}

std::string CentralPolynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::ostringstream mono;
    bool constant = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      mono << (constant ? "" : "*") << names[i];
      if (m[i] != 1) mono << "^" << m[i];
      constant = false;
    }
    const auto r = c.as_rational();
    std::string body;
    if (constant) {
      body = c.to_string();
    } else if (r && *r == 1) {
      body = mono.str();
    } else if (r && *r == -1) {
      body = "-" + mono.str();
    } else if (r) {
      body = c.to_string() + "*" + mono.str();
    } else {
      body = "(" + c.to_string() + ")*" + mono.str();
    }
    if (first)
      os << body;
    else if (body.front() == '-')
      os << " - " << body.substr(1);
    else
      os << " + " << body;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Trace pairing and determinants

PairingMatrix trace_pairing_matrix(const CenterDescription& center, const std::vector<Monomial>& basis) {
  if (!center.rectangular) throw UnsupportedError("trace pairing requires a rectangular center");
  const auto& ring = center.ring;
  if (!ring->is_torsion()) throw NonTorsionError("trace pairing requires root-of-unity parameters");
  const std::size_t w = basis.size();
  PairingMatrix m(w, std::vector<CentralPolynomial>(w, CentralPolynomial(ring->order(), ring->generator_count())));
  const bool skew = !ring->has_weyl_factor();
  const auto& alpha = *center.rectangular;
  auto off_grid = [&](const Monomial& a, const Monomial& b) {
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if ((a[k] + b[k]) % alpha[k] != 0) return true;
    return false;
  };
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) {
      // skew products are single monomials, whose trace vanishes off the alpha-grid
      if (skew && off_grid(basis[i], basis[j])) continue;
      auto product = mul(NormalElement::monomial(ring, basis[i]), NormalElement::monomial(ring, basis[j]));
      m[i][j] = CentralPolynomial::from_element(regular_trace(product, center));
    }
  return m;
}

namespace {

void check_square(const PairingMatrix& matrix) {
  for (const auto& row : matrix)
    if (row.size() != matrix.size()) throw UsageError("determinant: matrix is not square");
}

}  // namespace

namespace {

// det of a matrix with exactly one nonzero entry per row and column.
std::optional<CentralPolynomial> generalized_permutation_determinant(const PairingMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!matrix[i][j].is_zero()) {
        perm[i] = j;
        ++count;
      }
    if (count != 1 || used[perm[i]]) return std::nullopt;
    used[perm[i]] = true;
  }
  bool negate = false;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) negate = !negate;
  }
  CentralPolynomial det = matrix[0][perm[0]];
  for (std::size_t i = 1; i < n; ++i) det = det * matrix[i][perm[i]];
  return negate ? -det : det;
}

}  // namespace

CentralPolynomial determinant(const PairingMatrix& matrix) {
  check_square(matrix);
  const std::size_t n = matrix.size();
  if (n == 0) throw UsageError("determinant of an empty matrix");
  if (auto det = generalized_permutation_determinant(matrix)) return *det;
  const unsigned order = matrix[0][0].order();
  const std::size_t vars = matrix[0][0].variables();
  PairingMatrix a = matrix;
  CentralPolynomial prev = CentralPolynomial::constant(order, vars, CycloScalar::one(order));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return CentralPolynomial(order, vars);
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        CentralPolynomial v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = v.exact_divide(prev);
      }
    }
    prev = a[k][k];
  }
  CentralPolynomial det = a[n - 1][n - 1];
  return negate ? -det : det;
}

CentralPolynomial determinant_cofactor(const PairingMatrix& matrix) {
  check_square(matrix);
  const std::size_t n = matrix.size();
  if (n == 0) throw UsageError("determinant of an empty matrix");
  if (n > 6) throw UsageError("cofactor expansion is limited to matrices of size <= 6");
  if (n == 1) return matrix[0][0];
  CentralPolynomial total(matrix[0][0].order(), matrix[0][0].variables());
  for (std::size_t c = 0; c < n; ++c) {
    if (matrix[0][c].is_zero()) continue;
    PairingMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<CentralPolynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(matrix[r][k]);
      minor.push_back(std::move(row));
    }
    CentralPolynomial term = matrix[0][c] * determinant_cofactor(minor);
    if (c % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Discriminant

DiscriminantResult discriminant(const CenterDescription& center) {
  const auto& ring = center.ring;
  if (!ring->is_torsion()) throw NonTorsionError("discriminant requires root-of-unity parameters");
  if (!center.rectangular) throw UnsupportedError("discriminant requires a rectangular center");
  auto basis = central_basis(center);
  auto raw = determinant(trace_pairing_matrix(center, basis));
  DiscriminantResult out{CentralPolynomial(ring->order(), ring->generator_count()), ring->scalar(1),
                         Integer(static_cast<unsigned long>(basis.size())), false};
  if (raw.is_zero()) {
    out.degenerate = true;
    out.unit = ring->scalar(0);
    return out;
  }
  out.unit = raw.leading().second;
  out.normalized = raw * out.unit.inverse();
  return out;
}

DiscriminantResult discriminant(const RingHandle& ring) { return discriminant(center_lattice(ring)); }

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes:
      return "yes";
    case Tri::No:
      return "no";
    case Tri::Unknown:
      break;
  }
  return "unknown";
}

EffectivenessVerdict classify_effectiveness(const CentralPolynomial& d, const Ring& ring) {
  if (d.is_zero()) throw UsageError("effectiveness of the zero element is undefined");
  if (d.variables() != ring.generator_count()) throw UsageError("polynomial does not match the ring");

  auto all_positive = [](const Monomial& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e >= 1; });
  };

  if (d.is_monomial()) {
    const Monomial& m = d.terms().begin()->first;
    if (all_positive(m)) return {Tri::Yes, Tri::Yes, "monomial-divisible-by-every-generator"};
    // For root-of-unity skew rings effective and dominating discriminants coincide.
    const bool skew_torsion = ring.as_skew().has_value() && ring.is_torsion();
    return {Tri::No, skew_torsion ? Tri::No : Tri::Unknown, "monomial-missing-generator"};
  }

  // f = x^b + (terms component-wise below b)
  for (const auto& [b, c] : d.terms()) {
    bool dominates = true;
    for (const auto& [m, unused] : d.terms()) {
      if (m == b) continue;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > b[i]) {
          dominates = false;
          break;
        }
      if (!dominates) break;
    }
    if (dominates && all_positive(b)) return {Tri::Yes, Tri::Yes, "leading-monomial-with-componentwise-lower-terms"};
    if (dominates) break;
  }
  return {Tri::Unknown, Tri::Unknown, "no-syntactic-criterion"};
}

}  // namespace qcancel
