#include "qcancel/presentation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qcancel/errors.hpp"

namespace qcancel {

namespace {

long long mod(long long a, unsigned m) {
  long long r = a % static_cast<long long>(m);
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ParamExponent

ParamExponent ParamExponent::root_of_unity(long long torsion, std::size_t free_count, unsigned order) {
  return {mod(torsion, order), std::vector<long long>(free_count, 0)};
}

bool ParamExponent::is_torsion() const {
  return std::all_of(free.begin(), free.end(), [](long long v) { return v == 0; });
}

ParamExponent param_add(const ParamExponent& a, const ParamExponent& b, unsigned order) {
  if (a.free.size() != b.free.size()) throw UsageError("param_add: free rank mismatch");
  ParamExponent out{mod(a.torsion + b.torsion, order), a.free};
  for (std::size_t i = 0; i < b.free.size(); ++i) out.free[i] += b.free[i];
  return out;
}

ParamExponent param_neg(const ParamExponent& a, unsigned order) { return param_scale(a, -1, order); }

ParamExponent param_scale(const ParamExponent& a, long long k, unsigned order) {
  ParamExponent out{mod(mod(a.torsion, order) * mod(k, order), order), a.free};
  for (auto& f : out.free) f *= k;
  return out;
}

ParamExponent param_embed(const ParamExponent& a, unsigned from, unsigned to, std::size_t free_count) {
  if (to % from != 0) throw UsageError("param_embed: order does not divide target");
  if (a.free.size() > free_count) throw UsageError("param_embed: free rank would shrink");
  ParamExponent out{mod(a.torsion, from) * (to / from), a.free};
  out.free.resize(free_count, 0);
  return out;
}

CycloScalar param_value(const ParamExponent& a, unsigned order) {
  if (!a.is_torsion()) throw NonTorsionError("parameter has a non-root-of-unity component");
  return CycloScalar::zeta_power(order, a.torsion);
}

std::string param_to_string(const ParamExponent& a, unsigned order) {
  std::ostringstream os;
  bool first = true;
  if (a.torsion != 0 || a.is_torsion()) {
    if (a.torsion == 0) {
      os << "1";
    } else {
      os << "zeta" << order;
      if (a.torsion != 1) os << "^" << a.torsion;
    }
    first = false;
  }
  for (std::size_t i = 0; i < a.free.size(); ++i) {
    if (a.free[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "q" << (i + 1);
    if (a.free[i] != 1) os << "^" << a.free[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// SkewPresentation

SkewPresentation::SkewPresentation(std::vector<std::string> names, unsigned order, std::size_t free_count)
    : names_(std::move(names)), order_(order), free_count_(free_count) {
  if (names_.empty()) throw UsageError("skew presentation needs at least one generator");
  if (order_ == 0) throw UsageError("skew presentation: order must be positive");
  const std::size_t n = names_.size();
  upper_.resize(n);
  for (std::size_t i = 0; i < n; ++i) upper_[i].assign(n - i - 1, ParamExponent::identity(free_count_));
}

SkewPresentation SkewPresentation::uniform(std::vector<std::string> names, unsigned order, const ParamExponent& q) {
  SkewPresentation s(std::move(names), order, q.free.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) s.set_param(i, j, q);
  return s;
}

ParamExponent SkewPresentation::param(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw UsageError("skew presentation: generator index out of range");
  if (i == j) return ParamExponent::identity(free_count_);
  if (i < j) return upper_[i][j - i - 1];
  return param_neg(upper_[j][i - j - 1], order_);
}

void SkewPresentation::set_param(std::size_t i, std::size_t j, ParamExponent value) {
  if (!(i < j) || j >= size()) throw UsageError("skew presentation: parameters are stored for i < j only");
  if (value.free.size() != free_count_) throw UsageError("skew presentation: free rank mismatch");
  value.torsion = mod(value.torsion, order_);
  upper_[i][j - i - 1] = std::move(value);
}

bool SkewPresentation::is_torsion() const {
  for (const auto& row : upper_)
    for (const auto& p : row)
      if (!p.is_torsion()) return false;
  return true;
}

bool SkewPresentation::is_commutative() const {
  for (const auto& row : upper_)
    for (const auto& p : row)
      if (!p.is_identity()) return false;
  return true;
}

SkewPresentation SkewPresentation::embedded(unsigned order, std::size_t free_count) const {
  SkewPresentation out(names_, order, free_count);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      out.set_param(i, j, param_embed(param(i, j), order_, order, free_count));
  return out;
}

ParamExponent commutation_scalar(const SkewPresentation& ring, const Monomial& a, const Monomial& b) {
  const std::size_t n = ring.size();
  if (a.size() != n || b.size() != n) throw UsageError("commutation_scalar: monomial length mismatch");
  ParamExponent out = ParamExponent::identity(ring.free_count());
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i] == 0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[j] == 0) continue;
      out = param_add(out, param_scale(ring.param(i, j), static_cast<long long>(a[j]) * b[i], ring.order()),
                      ring.order());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// WeylPresentation

std::string to_string(WeylOrientation o) {
  return o == WeylOrientation::XyMinusQyxMinusOne ? "xy-qyx-1" : "yx-qxy-1";
}

std::optional<WeylOrientation> parse_weyl_orientation(const std::string& text) {
  if (text == "xy-qyx-1") return WeylOrientation::XyMinusQyxMinusOne;
  if (text == "yx-qxy-1") return WeylOrientation::YxMinusQxyMinusOne;
  return std::nullopt;
}

WeylPresentation::WeylPresentation(std::vector<std::string> names, unsigned order, long long q_torsion,
                                   WeylOrientation orientation)
    : names_(std::move(names)), order_(order), q_torsion_(0), orientation_(orientation) {
  if (names_.size() != 2 || names_[0] == names_[1])
    throw UsageError("Weyl presentation needs two distinct generator names");
  if (order_ == 0) throw UsageError("Weyl presentation: order must be positive");
  q_torsion_ = mod(q_torsion, order_);
  if (q_torsion_ == 0) throw UsageError("Weyl presentation: q must differ from 1");
}

unsigned WeylPresentation::q_order() const {
  return order_ / std::gcd(order_, static_cast<unsigned>(q_torsion_));
}

WeylPresentation WeylPresentation::embedded(unsigned order) const {
  if (order % order_ != 0) throw UsageError("Weyl presentation: order does not divide target");
  return WeylPresentation(names_, order, q_torsion_ * (order / order_), orientation_);
}

// ---------------------------------------------------------------------------
// Ring

RingHandle Ring::create(std::vector<Factor> factors) {
  if (factors.empty()) throw UsageError("tensor product of an empty list of factors");
  unsigned order = 1;
  std::size_t free_count = 0;
  for (const auto& f : factors) {
    std::visit(
        [&](const auto& p) {
          order = std::lcm(order, p.order());
          if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SkewPresentation>)
            free_count = std::max(free_count, p.free_count());
        },
        f);
  }

  auto ring = std::shared_ptr<Ring>(new Ring());
  ring->order_ = order;
  ring->free_count_ = free_count;
  std::set<std::string> seen;
  for (auto& f : factors) {
    ring->offsets_.push_back(ring->names_.size());
    Factor embedded = std::visit(
        [&](const auto& p) -> Factor {
          if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SkewPresentation>)
            return p.embedded(order, free_count);
          else
            return p.embedded(order);
        },
        f);
    const auto& names = std::visit([](const auto& p) -> const std::vector<std::string>& { return p.names(); }, embedded);
    for (const auto& name : names) {
      if (!seen.insert(name).second) throw UsageError("generator name '" + name + "' appears in more than one place");
      ring->names_.push_back(name);
    }
    ring->factors_.push_back(std::move(embedded));
  }
  ring->zeta_powers_.reserve(order);
  for (unsigned e = 0; e < order; ++e) ring->zeta_powers_.push_back(CycloScalar::zeta_power(order, e));
  return ring;
}

RingHandle tensor(std::vector<Factor> factors) { return Ring::create(std::move(factors)); }

RingHandle make_ring(Factor factor) { return Ring::create({std::move(factor)}); }

std::optional<std::size_t> Ring::generator_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool Ring::is_torsion() const {
  for (const auto& f : factors_)
    if (const auto* s = std::get_if<SkewPresentation>(&f); s && !s->is_torsion()) return false;
  return true;
}

bool Ring::has_weyl_factor() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return std::holds_alternative<WeylPresentation>(f); });
}

bool Ring::is_commutative() const {
  for (const auto& f : factors_) {
    const auto* s = std::get_if<SkewPresentation>(&f);
    if (!s || !s->is_commutative()) return false;
  }
  return true;
}

std::optional<SkewPresentation> Ring::as_skew() const {
  if (has_weyl_factor()) return std::nullopt;
  if (factors_.size() == 1) return std::get<SkewPresentation>(factors_[0]);
  SkewPresentation out(names_, order_, free_count_);
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const auto& s = std::get<SkewPresentation>(factors_[k]);
    const std::size_t off = offsets_[k];
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) out.set_param(off + i, off + j, s.param(i, j));
  }
  return out;
}

const CycloScalar& Ring::zeta_power(long long exponent) const {
  return zeta_powers_[static_cast<std::size_t>(mod(exponent, order_))];
}

std::string Ring::describe() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) os << " (x) ";
    if (const auto* s = std::get_if<SkewPresentation>(&factors_[k])) {
      os << "skew[";
      for (std::size_t i = 0; i < s->size(); ++i) os << (i ? "," : "") << s->names()[i];
      os << "]{";
      bool first = true;
      for (std::size_t i = 0; i < s->size(); ++i)
        for (std::size_t j = i + 1; j < s->size(); ++j) {
          auto p = s->param(i, j);
          if (p.is_identity()) continue;
          os << (first ? "" : ", ") << "p" << (i + 1) << "," << (j + 1) << "=" << param_to_string(p, order_);
          first = false;
        }
      os << "}";
    } else {
      const auto& w = std::get<WeylPresentation>(factors_[k]);
      os << "weyl[" << w.names()[0] << "," << w.names()[1] << "]{q=zeta" << order_ << "^" << w.q_torsion() << ", "
         << to_string(w.orientation()) << "}";
    }
  }
  return os.str();
}

std::size_t gk_dimension(const Ring& ring) { return ring.generator_count(); }

}  // namespace qcancel
