#include "qcancel/cyclotomic.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qcancel/errors.hpp"

namespace qcancel {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b over Q; b must be nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - db, Rational(0));
  for (std::size_t k = a.size(); k-- > db;) {
    if (a[k] == 0) continue;
    Rational c = a[k] / b[db];
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Reduces a dense polynomial in zeta modulo the monic Phi_m, in place.
void reduce_mod(std::vector<Rational>& p, const std::vector<Integer>& modulus) {
  const std::size_t deg = modulus.size() - 1;
  for (std::size_t k = p.size(); k-- > deg;) {
    if (p[k] == 0) continue;
    Rational c = p[k];
    for (std::size_t i = 0; i <= deg; ++i) p[k - deg + i] -= c * modulus[i];
  }
  p.resize(deg, Rational(0));
}

}  // namespace

unsigned euler_phi(unsigned m) {
  if (m == 0) throw UsageError("euler_phi: order must be positive");
  unsigned result = m;
  unsigned n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<Integer> cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw UsageError("cyclotomic_polynomial: order must be positive");
  // x^m - 1
  QPoly num(m + 1, Rational(0));
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto phi_d = cyclotomic_polynomial(d);
    QPoly den(phi_d.begin(), phi_d.end());
    auto [q, r] = divmod(num, den);
    if (!r.empty()) throw InternalError("cyclotomic_polynomial: inexact division");
    num = std::move(q);
  }
  std::vector<Integer> out;
  out.reserve(num.size());
  for (auto& c : num) {
    if (c.get_den() != 1) throw InternalError("cyclotomic_polynomial: non-integral coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

std::shared_ptr<const CycloField> cyclotomic_field(unsigned m) {
  static std::mutex mutex;
  static std::unordered_map<unsigned, std::shared_ptr<const CycloField>> cache;
  if (m == 0) throw UsageError("cyclotomic_field: order must be positive");
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<CycloField>();
  field->order = m;
  field->modulus = cyclotomic_polynomial(m);
  cache.emplace(m, field);
  return field;
}

CycloScalar::CycloScalar() : CycloScalar(cyclotomic_field(1), {Rational(0)}) {}

CycloScalar::CycloScalar(std::shared_ptr<const CycloField> field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

CycloScalar CycloScalar::zero(unsigned m) {
  auto f = cyclotomic_field(m);
  std::vector<Rational> c(f->degree(), Rational(0));
  return CycloScalar(std::move(f), std::move(c));
}

CycloScalar CycloScalar::one(unsigned m) { return from_rational(m, Rational(1)); }

CycloScalar CycloScalar::from_rational(unsigned m, const Rational& value) {
  auto s = zero(m);
  s.coeffs_[0] = value;
  return s;
}

CycloScalar CycloScalar::zeta_power(unsigned m, long long exponent) {
  long long e = exponent % static_cast<long long>(m);
  if (e < 0) e += m;
  std::vector<Rational> dense(static_cast<std::size_t>(e) + 1, Rational(0));
  dense[static_cast<std::size_t>(e)] = 1;
  return reduce(dense, m);
}

CycloScalar CycloScalar::reduce(std::span<const Rational> dense, unsigned m) {
  auto f = cyclotomic_field(m);
  // Fold exponents modulo m first (zeta^m = 1), then reduce modulo Phi_m.
  std::vector<Rational> folded(std::max<std::size_t>(m, f->degree()), Rational(0));
  for (std::size_t k = 0; k < dense.size(); ++k) folded[k % m] += dense[k];
  reduce_mod(folded, f->modulus);
  return CycloScalar(std::move(f), std::move(folded));
}

CycloScalar CycloScalar::reduce(const std::map<long long, Rational>& sparse, unsigned m) {
  std::vector<Rational> dense(m, Rational(0));
  for (const auto& [e, c] : sparse) {
    long long r = e % static_cast<long long>(m);
    if (r < 0) r += m;
    dense[static_cast<std::size_t>(r)] += c;
  }
  return reduce(dense, m);
}

bool CycloScalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloScalar::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

std::optional<Rational> CycloScalar::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return coeffs_[0];
}

void CycloScalar::check_same_field(const CycloScalar& other) const {
  if (field_->order != other.field_->order)
    throw UsageError("cyclotomic scalars of different orders " + std::to_string(field_->order) + " and " +
                     std::to_string(other.field_->order));
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& other) {
  check_same_field(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& other) {
  check_same_field(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& other) {
  check_same_field(other);
  const std::size_t n = coeffs_.size();
  if (n == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (other.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  reduce_mod(prod, field_->modulus);
  coeffs_ = std::move(prod);
  return *this;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& other) { return *this *= other.inverse(); }

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  return a.field_->order == b.field_->order && a.coeffs_ == b.coeffs_;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero cyclotomic scalar");
  if (coeffs_.size() == 1) return CycloScalar(field_, {1 / coeffs_[0]});
  // Extended Euclid: find s with s*a + t*Phi = 1.
  QPoly r0(field_->modulus.begin(), field_->modulus.end());
  QPoly r1 = coeffs_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw InternalError("cyclotomic inverse: non-unit gcd");
  }
  Rational lead = r1[0];
  for (auto& c : s1) c /= lead;
  reduce_mod(s1, field_->modulus);
  s1.resize(coeffs_.size(), Rational(0));
  return CycloScalar(field_, std::move(s1));
}

CycloScalar CycloScalar::embed(unsigned target) const {
  const unsigned m = field_->order;
  if (target == 0 || target % m != 0)
    throw UsageError("embed: order " + std::to_string(m) + " does not divide " + std::to_string(target));
  if (target == m) return *this;
  const std::size_t step = target / m;
  std::vector<Rational> dense(coeffs_.size() * step, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) dense[k * step] = coeffs_[k];
  return reduce(dense, target);
}

std::string CycloScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "zeta";
    if (k > 1) os << "^" << k;
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloScalar& s) { return os << s.to_string(); }

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace qcancel
