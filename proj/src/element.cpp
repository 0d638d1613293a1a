#include "qcancel/element.hpp"

#include <sstream>

#include "qcancel/errors.hpp"

namespace qcancel {

namespace {

using TermList = std::vector<std::pair<Monomial, CycloScalar>>;

// y^b x^c in a Weyl factor rewritten to sum coef * x^e y^f, using
// y x = A x y + B and the derived y x^e = A^e x^e y + beta_e x^{e-1}.
struct WeylTerm {
  int x;
  int y;
  CycloScalar coef;
};

std::vector<WeylTerm> weyl_swap(const Ring& ring, const WeylPresentation& w, int b, int c) {
  const long long t = w.q_torsion();
  const bool standard = w.orientation() == WeylOrientation::XyMinusQyxMinusOne;
  const long long a_exp = standard ? -t : t;  // A = zeta^{a_exp}
  const CycloScalar b_const = standard ? -ring.zeta_power(-t) : ring.scalar(1);

  // beta_e = sum_{i<e} A^i B
  std::vector<CycloScalar> beta(static_cast<std::size_t>(c) + 1, ring.scalar(0));
  for (int e = 1; e <= c; ++e) beta[e] = beta[e - 1] + ring.zeta_power(a_exp * (e - 1)) * b_const;

  // Keyed by x exponent; y exponent is determined by the number of steps taken
  // minus the number of contractions, tracked alongside.
  std::map<std::pair<int, int>, CycloScalar> cur;
  cur.emplace(std::make_pair(c, 0), ring.scalar(1));
  for (int step = 0; step < b; ++step) {
    std::map<std::pair<int, int>, CycloScalar> next;
    auto accumulate = [&](int e, int f, const CycloScalar& v) {
      auto [it, inserted] = next.emplace(std::make_pair(e, f), v);
      if (!inserted) it->second += v;
    };
    for (const auto& [ef, coef] : cur) {
      const auto [e, f] = ef;
      accumulate(e, f + 1, coef * ring.zeta_power(a_exp * e));
      if (e > 0) accumulate(e - 1, f, coef * beta[e]);
    }
    cur.clear();
    for (auto& [k, v] : next)
      if (!v.is_zero()) cur.emplace(k, std::move(v));
  }
  std::vector<WeylTerm> out;
  for (auto& [ef, coef] : cur) out.push_back({ef.first, ef.second, std::move(coef)});
  return out;
}

}  // namespace

TermList monomial_product(const Ring& ring, const Monomial& a, const Monomial& b) {
  const std::size_t n = ring.generator_count();
  if (a.size() != n || b.size() != n) throw UsageError("monomial_product: exponent length mismatch");
  if (!ring.is_torsion()) throw NonTorsionError("element arithmetic needs every parameter to be a root of unity");

  Monomial base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = a[i] + b[i];
  TermList acc;
  acc.emplace_back(std::move(base), ring.scalar(1));

  for (std::size_t k = 0; k < ring.factors().size(); ++k) {
    const std::size_t off = ring.offsets()[k];
    const Factor& f = ring.factors()[k];
    if (const auto* s = std::get_if<SkewPresentation>(&f)) {
      long long e = 0;
      for (std::size_t i = 0; i < s->size(); ++i) {
        if (b[off + i] == 0) continue;
        for (std::size_t j = i + 1; j < s->size(); ++j)
          if (a[off + j] != 0)
            e += s->param(i, j).torsion * static_cast<long long>(a[off + j]) * b[off + i] % ring.order();
      }
      if (e % ring.order() != 0) {
        const CycloScalar& c = ring.zeta_power(e);
        for (auto& term : acc) term.second *= c;
      }
      continue;
    }
    const auto& w = std::get<WeylPresentation>(f);
    const int ya = a[off + 1];
    const int xb = b[off];
    if (ya == 0 || xb == 0) continue;
    auto swapped = weyl_swap(ring, w, ya, xb);
    TermList next;
    next.reserve(acc.size() * swapped.size());
    for (const auto& [mono, coef] : acc) {
      for (const auto& t : swapped) {
        Monomial m = mono;
        m[off] = a[off] + t.x;
        m[off + 1] = t.y + b[off + 1];
        next.emplace_back(std::move(m), coef * t.coef);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// NormalElement

NormalElement::NormalElement(RingHandle ring) : ring_(std::move(ring)) {
  if (!ring_) throw UsageError("NormalElement needs a ring");
}

NormalElement NormalElement::constant(RingHandle ring, const CycloScalar& value) {
  NormalElement e(std::move(ring));
  e.add_term(Monomial(e.ring().generator_count(), 0), value);
  return e;
}

NormalElement NormalElement::constant(RingHandle ring, long value) {
  auto s = ring->scalar(value);
  return constant(std::move(ring), s);
}

NormalElement NormalElement::monomial(RingHandle ring, Monomial exponents) {
  auto one = ring->scalar(1);
  return monomial(std::move(ring), std::move(exponents), one);
}

NormalElement NormalElement::monomial(RingHandle ring, Monomial exponents, const CycloScalar& coefficient) {
  NormalElement e(std::move(ring));
  if (exponents.size() != e.ring().generator_count()) throw UsageError("monomial: exponent length mismatch");
  for (int d : exponents)
    if (d < 0) throw UsageError("monomial: negative exponent");
  e.add_term(exponents, coefficient);
  return e;
}

NormalElement NormalElement::generator(RingHandle ring, std::size_t index) {
  if (index >= ring->generator_count()) throw UsageError("generator index out of range");
  Monomial m(ring->generator_count(), 0);
  m[index] = 1;
  return monomial(std::move(ring), std::move(m));
}

CycloScalar NormalElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ring_->scalar(0) : it->second;
}

void NormalElement::add_term(const Monomial& m, const CycloScalar& c) {
  if (c.order() != ring_->order()) throw UsageError("coefficient order differs from ring order");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int NormalElement::degree() const {
  if (is_zero()) throw UsageError("the zero element has no degree");
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int e : m) d += e;
    best = std::max(best, d);
  }
  return best;
}

void NormalElement::check_ring(const NormalElement& other) const {
  if (ring_ != other.ring_ && !(*ring_ == *other.ring_)) throw UsageError("elements belong to different rings");
}

NormalElement& NormalElement::operator+=(const NormalElement& other) {
  check_ring(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

NormalElement& NormalElement::operator-=(const NormalElement& other) {
  check_ring(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

NormalElement& NormalElement::operator*=(const CycloScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

NormalElement NormalElement::operator-() const {
  NormalElement out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

NormalElement operator*(const NormalElement& a, const NormalElement& b) { return mul(a, b); }

bool operator==(const NormalElement& a, const NormalElement& b) {
  a.check_ring(b);
  return a.terms_ == b.terms_;
}

std::string monomial_to_string(const Ring& ring, const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << ring.names()[i];
    if (m[i] != 1) os << "^" << m[i];
  }
  return first ? "1" : os.str();
}

std::string NormalElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool constant_term = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    std::string coef = c.to_string();
    const auto rational = c.as_rational();
    std::string body;
    if (constant_term) {
      body = coef;
    } else if (rational && *rational == 1) {
      body = monomial_to_string(*ring_, m);
    } else if (rational && *rational == -1) {
      body = "-" + monomial_to_string(*ring_, m);
    } else if (rational) {
      body = coef + "*" + monomial_to_string(*ring_, m);
    } else {
      body = "(" + coef + ")*" + monomial_to_string(*ring_, m);
    }
    if (first) {
      os << body;
    } else if (body.front() == '-') {
      os << " - " << body.substr(1);
    } else {
      os << " + " << body;
    }
    first = false;
  }
  return os.str();
}

NormalElement mul(const NormalElement& u, const NormalElement& v) {
  if (u.ring_handle() != v.ring_handle() && !(u.ring() == v.ring()))
    throw UsageError("elements belong to different rings");
  if (!u.ring().is_torsion()) throw NonTorsionError("element arithmetic needs every parameter to be a root of unity");
  NormalElement out(u.ring_handle());
  for (const auto& [ma, ca] : u.terms())
    for (const auto& [mb, cb] : v.terms()) {
      CycloScalar c = ca * cb;
      for (const auto& [m, k] : monomial_product(u.ring(), ma, mb)) out.add_term(m, c * k);
    }
  return out;
}

NormalElement power(const NormalElement& u, unsigned exponent) {
  NormalElement out = NormalElement::constant(u.ring_handle(), 1);
  for (unsigned i = 0; i < exponent; ++i) out = mul(out, u);
  return out;
}

int degree(const NormalElement& u) { return u.degree(); }

std::vector<Monomial> monomials_up_to_degree(std::size_t variables, int bound) {
  std::vector<Monomial> out;
  Monomial cur(variables, 0);
  // Recursive fill in lexicographic order.
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == variables) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[pos] = e;
      self(self, pos + 1, remaining - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, bound);
  return out;
}

}  // namespace qcancel
