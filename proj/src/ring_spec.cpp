#include "qcancel/ring_spec.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qcancel/errors.hpp"

namespace qcancel {

using nlohmann::json;

namespace {

class Validator {
 public:
  explicit Validator(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    throw InputError(source_ + ": field " + (pointer.empty() ? "/" : pointer) + ": " + what);
  }

  const json& require(const json& obj, const std::string& pointer, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(pointer + "/" + key, "missing required field");
    return *it;
  }

  long long integer(const json& v, const std::string& pointer) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    return v.get<long long>();
  }

  void only_keys(const json& obj, const std::string& pointer, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    for (const auto& [key, unused] : obj.items())
      if (!allowed.count(key)) fail(pointer + "/" + key, "unknown field");
  }

  std::vector<std::string> generators(const json& obj, const std::string& pointer) const {
    const json& g = require(obj, pointer, "generators");
    const std::string gp = pointer + "/generators";
    if (!g.is_array() || g.empty()) fail(gp, "expected a non-empty array of names");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::string ep = gp + "/" + std::to_string(k);
      if (!g[k].is_string() || g[k].get<std::string>().empty()) fail(ep, "expected a non-empty string");
      const auto name = g[k].get<std::string>();
      if (!seen.insert(name).second) fail(ep, "duplicate generator name '" + name + "'");
      names.push_back(name);
    }
    return names;
  }

  Factor factor(const json& obj, const std::string& pointer, std::vector<Factor>& flat) const;

 private:
  SkewPresentation skew(const json& obj, const std::string& pointer) const;
  WeylPresentation weyl(const json& obj, const std::string& pointer) const;

  std::string source_;
};

SkewPresentation Validator::skew(const json& obj, const std::string& pointer) const {
  only_keys(obj, pointer, {"spec_version", "family", "generators", "order", "free_params", "params"});
  auto names = generators(obj, pointer);
  const long long raw_order = integer(require(obj, pointer, "order"), pointer + "/order");
  if (raw_order < 0) fail(pointer + "/order", "must be >= 0 (0 means no root-of-unity part)");
  const unsigned order = raw_order == 0 ? 1u : static_cast<unsigned>(raw_order);
  long long free_count = 0;
  if (obj.contains("free_params")) {
    free_count = integer(obj["free_params"], pointer + "/free_params");
    if (free_count < 0) fail(pointer + "/free_params", "must be >= 0");
  }
  SkewPresentation ring(names, order, static_cast<std::size_t>(free_count));
  if (!obj.contains("params")) return ring;

  const json& params = obj["params"];
  const std::string pp = pointer + "/params";
  if (!params.is_array()) fail(pp, "expected an array");
  const long long n = static_cast<long long>(names.size());
  std::set<std::pair<long long, long long>> seen;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const std::string ep = pp + "/" + std::to_string(k);
    const json& e = params[k];
    only_keys(e, ep, {"i", "j", "torsion", "free"});
    const long long i = integer(require(e, ep, "i"), ep + "/i");
    const long long j = integer(require(e, ep, "j"), ep + "/j");
    if (i < 1 || i > n) fail(ep + "/i", "generator index out of range 1.." + std::to_string(n));
    if (j < 1 || j > n) fail(ep + "/j", "generator index out of range 1.." + std::to_string(n));
    if (i >= j) fail(ep, "only entries with i < j may be given; p_ii and p_ji are derived");
    if (!seen.insert({i, j}).second) fail(ep, "duplicate entry for (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    ParamExponent p = ParamExponent::identity(static_cast<std::size_t>(free_count));
    if (e.contains("torsion")) {
      const long long t = integer(e["torsion"], ep + "/torsion");
      if (raw_order == 0 && t != 0) fail(ep + "/torsion", "nonzero torsion needs order >= 2");
      p.torsion = ((t % order) + order) % order;
    }
    if (e.contains("free")) {
      const json& f = e["free"];
      if (!f.is_array() || static_cast<long long>(f.size()) != free_count)
        fail(ep + "/free", "expected an array of length free_params = " + std::to_string(free_count));
      for (std::size_t l = 0; l < f.size(); ++l) p.free[l] = integer(f[l], ep + "/free/" + std::to_string(l));
    }
    ring.set_param(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), p);
  }
  return ring;
}

WeylPresentation Validator::weyl(const json& obj, const std::string& pointer) const {
  only_keys(obj, pointer, {"spec_version", "family", "generators", "order", "q", "weyl_orientation"});
  auto names = generators(obj, pointer);
  if (names.size() != 2) fail(pointer + "/generators", "a Weyl factor has exactly two generators");
  const long long order = integer(require(obj, pointer, "order"), pointer + "/order");
  if (order < 2) fail(pointer + "/order", "q must be a root of unity of order >= 2");
  const json& q = require(obj, pointer, "q");
  only_keys(q, pointer + "/q", {"torsion"});
  const long long t = integer(require(q, pointer + "/q", "torsion"), pointer + "/q/torsion");
  const long long reduced = ((t % order) + order) % order;
  if (reduced == 0) fail(pointer + "/q/torsion", "q = 1 is excluded");
  auto orientation = WeylOrientation::XyMinusQyxMinusOne;
  if (obj.contains("weyl_orientation")) {
    const json& o = obj["weyl_orientation"];
    std::optional<WeylOrientation> parsed;
    if (o.is_string()) parsed = parse_weyl_orientation(o.get<std::string>());
    if (!parsed) fail(pointer + "/weyl_orientation", "expected \"xy-qyx-1\" or \"yx-qxy-1\"");
    orientation = *parsed;
  }
  return WeylPresentation(names, static_cast<unsigned>(order), reduced, orientation);
}

Factor Validator::factor(const json& obj, const std::string& pointer, std::vector<Factor>& flat) const {
  if (!obj.is_object()) fail(pointer, "expected an object");
  const json& family = require(obj, pointer, "family");
  if (!family.is_string()) fail(pointer + "/family", "expected a string");
  const auto name = family.get<std::string>();
  if (name == "skew") {
    flat.emplace_back(skew(obj, pointer));
  } else if (name == "weyl") {
    flat.emplace_back(weyl(obj, pointer));
  } else if (name == "tensor") {
    only_keys(obj, pointer, {"spec_version", "family", "factors"});
    const json& factors = require(obj, pointer, "factors");
    if (!factors.is_array() || factors.empty()) fail(pointer + "/factors", "expected a non-empty array");
    for (std::size_t k = 0; k < factors.size(); ++k)
      factor(factors[k], pointer + "/factors/" + std::to_string(k), flat);
  } else {
    fail(pointer + "/family", "expected \"skew\", \"weyl\" or \"tensor\"");
  }
  return flat.back();
}

json emit_factor(const Factor& f) {
  if (const auto* w = std::get_if<WeylPresentation>(&f)) {
    return json{{"family", "weyl"},
                {"generators", w->names()},
                {"order", w->order()},
                {"q", {{"torsion", w->q_torsion()}}},
                {"weyl_orientation", to_string(w->orientation())}};
  }
  const auto& s = std::get<SkewPresentation>(f);
  json params = json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const auto p = s.param(i, j);
      if (p.is_identity()) continue;
      json e{{"i", i + 1}, {"j", j + 1}, {"torsion", p.torsion}};
      if (s.free_count() > 0) e["free"] = p.free;
      params.push_back(std::move(e));
    }
  return json{{"family", "skew"},
              {"generators", s.names()},
              {"order", s.order()},
              {"free_params", s.free_count()},
              {"params", std::move(params)}};
}

}  // namespace

RingHandle parse_ring_spec(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": syntax error: " +
                     e.what());
  }
  Validator v(source);
  if (!doc.is_object()) v.fail("", "expected an object");
  const long long version = v.integer(v.require(doc, "", "spec_version"), "/spec_version");
  if (version != kRingSpecVersion)
    v.fail("/spec_version", "unsupported version " + std::to_string(version) + " (expected " +
                                std::to_string(kRingSpecVersion) + ")");
  std::vector<Factor> factors;
  v.factor(doc, "", factors);
  try {
    return Ring::create(std::move(factors));
  } catch (const UsageError& e) {
    throw InputError(source + ": " + e.what());
  }
}

RingHandle load_ring_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ring_spec(buf.str(), path);
}

json emit_ring_spec(const Ring& ring) {
  json doc;
  if (ring.factors().size() == 1) {
    doc = emit_factor(ring.factors().front());
  } else {
    json factors = json::array();
    for (const auto& f : ring.factors()) factors.push_back(emit_factor(f));
    doc = json{{"family", "tensor"}, {"factors", std::move(factors)}};
  }
  doc["spec_version"] = kRingSpecVersion;
  return doc;
}

}  // namespace qcancel
