#include "qcancel/report.hpp"

#include <sstream>

namespace qcancel {

using nlohmann::json;

namespace {

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json int_vector_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

json tri_json(const std::optional<bool>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

json ring_summary_json(const Ring& ring) {
  json families = json::array();
  for (const auto& f : ring.factors()) families.push_back(std::holds_alternative<SkewPresentation>(f) ? "skew" : "weyl");
  return json{{"description", ring.describe()},
              {"factor_families", std::move(families)},
              {"generators", ring.names()},
              {"order", ring.order()},
              {"free_params", ring.free_count()},
              {"torsion", ring.is_torsion()},
              {"commutative", ring.is_commutative()},
              {"gk_dimension", gk_dimension(ring)}};
}

json center_json(const CenterDescription& center) {
  json basis = json::array();
  for (const auto& row : center.lattice.basis()) basis.push_back(int_vector_json(row));
  json out{{"lattice_basis", std::move(basis)},
           {"coordinate_gcds", int_vector_json(coordinate_gcds(center.lattice))},
           {"trivial", center.trivial}};
  out["rank"] = center.rank ? integer_json(*center.rank) : json(nullptr);
  out["rectangular"] = center.rectangular ? json(*center.rectangular) : json(nullptr);
  out["nonneg_witness"] = center.nonneg_witness ? int_vector_json(*center.nonneg_witness) : json(nullptr);
  return out;
}

json t_set_json(const TSetResult& t, const Ring& ring) {
  json out{{"generator", ring.names()[t.generator]}, {"index", t.generator + 1}, {"empty", t.empty()}};
  if (t.empty()) {
    out["witness"] = nullptr;
    out["witness_monomial"] = nullptr;
    return out;
  }
  out["witness"] = *t.witness;
  Monomial m(ring.generator_count(), 0);
  for (std::size_t j = 0, k = 0; j < m.size(); ++j)
    if (j != t.generator) m[j] = static_cast<int>((*t.witness)[k++]);
  out["witness_monomial"] = monomial_to_string(ring, m);
  return out;
}

json ml_json(const MLResult& ml, const Ring& ring) {
  json gens = json::array();
  for (auto s : ml.generating_set) gens.push_back(ring.names()[s]);
  return json{{"invariant", "ML^H"}, {"generating_set", std::move(gens)}, {"is_full", ml.is_full},
              {"is_trivial", ml.is_trivial}};
}

json discriminant_json(const DiscriminantResult& d, const Ring& ring) {
  json out{{"rank", integer_json(d.rank)}, {"degenerate", d.degenerate}, {"unit", d.unit.to_string()}};
  json terms = json::array();
  for (auto it = d.normalized.terms().rbegin(); it != d.normalized.terms().rend(); ++it)
    terms.push_back(json{{"exponent", it->first}, {"coefficient", it->second.to_string()}});
  out["terms"] = std::move(terms);
  out["normalized"] = d.normalized.to_string(ring.names());
  out["leading_monomial"] = d.degenerate ? json(nullptr) : json(d.normalized.leading().first);
  return out;
}

json effectiveness_json(const EffectivenessVerdict& e) {
  return json{{"effective", to_string(e.effective)}, {"dominating", to_string(e.dominating)}, {"rule", e.rule}};
}

json conditions_json(const RigidityConditions& c) {
  json out = json::object();
  for (const auto& [name, value] : c.entries()) out[name] = tri_json(value);
  return out;
}

json verification_json(const VerificationResult& v, const Ring& ring) {
  json out{{"passed", v.passed}, {"checks", v.checks}};
  if (!v.counterexample) {
    out["counterexample"] = nullptr;
    return out;
  }
  const auto& c = *v.counterexample;
  json ce{{"property", c.property},
          {"a", monomial_to_string(ring, c.a)},
          {"index", c.index},
          {"second_index", c.second_index},
          {"detail", c.detail}};
  ce["b"] = c.b ? json(monomial_to_string(ring, *c.b)) : json(nullptr);
  out["counterexample"] = std::move(ce);
  return out;
}

json verdict_json(const VerdictReport& r) {
  const Ring& ring = *r.ring;
  json out{{"ring", ring_summary_json(ring)},
           {"conclusion", to_string(r.conclusion)},
           {"open_reason", to_string(r.open_reason)},
           {"notes", r.notes}};
  out["center"] = r.center ? center_json(*r.center) : json(nullptr);
  json ts = json::array();
  for (const auto& t : r.t_sets) ts.push_back(t_set_json(t, ring));
  out["t_sets"] = std::move(ts);
  out["ml"] = r.ml ? ml_json(*r.ml, ring) : json(nullptr);
  out["discriminant"] = r.discriminant ? discriminant_json(*r.discriminant, ring) : json(nullptr);
  out["effectiveness"] = r.effectiveness ? effectiveness_json(*r.effectiveness) : json(nullptr);
  out["rigidity_conditions"] = r.conditions ? conditions_json(*r.conditions) : json(nullptr);
  json cites = json::array();
  for (const auto& c : r.citations) {
    json caveats = json::array();
    for (const auto& cv : c.caveats) caveats.push_back(json{{"id", cv.id}, {"detail", cv.detail}});
    cites.push_back(json{{"rule", c.rule},
                         {"statement", c.statement},
                         {"informational", c.informational},
                         {"caveats", std::move(caveats)}});
  }
  out["citations"] = std::move(cites);
  return out;
}

namespace {

void render(const json& v, const std::string& indent, std::ostringstream& os);

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

std::string flat_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalar_text(v[k]);
  return s + "]";
}

void render(const json& v, const std::string& indent, std::ostringstream& os) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (is_flat(value)) {
        os << indent << key << ": " << flat_text(value) << "\n";
      } else {
        os << indent << key << ":\n";
        render(value, indent + "  ", os);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (is_flat(e)) {
        os << indent << "- " << flat_text(e) << "\n";
      } else {
        os << indent << "-\n";
        render(e, indent + "  ", os);
      }
    }
  } else {
    os << indent << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream os;
  render(doc, "", os);
  return os.str();
}

}  // namespace qcancel
