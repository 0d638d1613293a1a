#include "qcancel/verdict.hpp"

#include <algorithm>

#include "qcancel/errors.hpp"
#include "qcancel/lattice.hpp"

namespace qcancel {

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::StronglyCancellative:
      return "StronglyCancellative";
    case Conclusion::UniversallyCancellative:
      return "UniversallyCancellative";
    case Conclusion::Cancellative:
      return "Cancellative";
    case Conclusion::OpenCase:
      return "OpenCase";
    case Conclusion::Unsupported:
      break;
  }
  return "Unsupported";
}

std::string to_string(OpenReason r) {
  switch (r) {
    case OpenReason::None:
      return "none";
    case OpenReason::NoApplicableResult:
      return "no-applicable-result";
    case OpenReason::ComputationUnsupported:
      break;
  }
  return "computation-unsupported";
}

std::vector<std::pair<std::string, std::optional<bool>>> RigidityConditions::entries() const {
  return {
      {"affine_automorphism_group", affine_automorphism_group},
      {"discriminant_dominating", discriminant_dominating},
      {"center_in_proper_power_algebra", center_in_proper_power_algebra},
      {"discriminant_effective", discriminant_effective},
      {"every_generator_divides_discriminant", every_generator_divides_discriminant},
      {"lnd_h_rigid", lnd_h_rigid},
      {"strongly_lnd_h_rigid", strongly_lnd_h_rigid},
  };
}

namespace {

std::optional<bool> from_tri(Tri t) {
  if (t == Tri::Unknown) return std::nullopt;
  return t == Tri::Yes;
}

bool in_rigidity_family(const Ring& ring) {
  return !ring.has_weyl_factor() && ring.is_torsion() && ring.generator_count() >= 2 && !ring.is_commutative();
}

RigidityConditions assemble_conditions(const CenterDescription& center, const DiscriminantResult* disc,
                                       const EffectivenessVerdict* eff, const MLResult& ml) {
  RigidityConditions c;
  const IntVector g = coordinate_gcds(center.lattice);
  c.center_in_proper_power_algebra = std::all_of(g.begin(), g.end(), [](const Integer& x) { return x >= 2; });
  if (disc && !disc->degenerate) {
    bool divides = true;
    for (const auto& [m, unused] : disc->normalized.terms())
      if (std::any_of(m.begin(), m.end(), [](int e) { return e < 1; })) divides = false;
    c.every_generator_divides_discriminant = divides;
  }
  if (eff) {
    c.discriminant_effective = from_tri(eff->effective);
    c.discriminant_dominating = from_tri(eff->dominating);
  }
  c.lnd_h_rigid = ml.is_full;
  c.strongly_lnd_h_rigid = ml.is_full;

  std::optional<bool> seen;
  std::string first_name;
  for (const auto& [name, value] : c.entries()) {
    if (!value) continue;
    if (!seen) {
      seen = value;
      first_name = name;
    } else if (*seen != *value) {
      throw InternalError("rigidity conditions disagree: " + first_name + " = " + (*seen ? "true" : "false") +
                          " but " + name + " = " + (*value ? "true" : "false"));
    }
  }
  return c;
}

Citation trivial_center_citation(const Ring& ring) {
  Citation c{"trivial-center-universal", "Z(A) = k over a field k  =>  A is universally cancellative", {}, false};
  if (!ring.is_torsion())
    c.caveats.push_back({"generic-parameter",
                         "free parameters are modelled as independent transcendentals over Q(zeta_m)"});
  return c;
}

Citation rigidity_chain_citation() {
  return {"root-of-unity-skew-rigidity-chain",
          "A = k_{p_ij}[x_1..x_n], all p_ij roots of unity: ML^H(A) = k<x_s : T_s empty>, and A is LND^H-rigid "
          "<=> every coordinate gcd of the center lattice is >= 2 <=> x_i | d(A/C) for all i <=> d(A/C) "
          "dominating <=> d(A/C) effective",
          {},
          false};
}

Citation dominating_citation() {
  return {"dominating-discriminant-strong",
          "A PI of finite GK-dimension, d_w(A/C) dominating for some w  =>  A strongly LND^H-rigid and strongly "
          "cancellative",
          {},
          false};
}

Citation effective_citation() {
  return {"effective-discriminant-strong",
          "A PI domain of finite GK-dimension, d_w(A/C) effective for some w  =>  A strongly cancellative",
          {},
          false};
}

Citation gk_two_citation() {
  return {"gk-two-noncommutative-cancellative",
          "k algebraically closed, char k = 0, A affine noncommutative domain with GKdim A = 2  =>  A cancellative",
          {{"base-field-hypothesis",
            "conditional on base-field hypotheses: the result assumes an algebraically closed field of "
            "characteristic 0, while this tool computes over Q(zeta_m)"}},
          false};
}

}  // namespace

RigidityConditions rigidity_conditions(const RingHandle& ring) {
  if (!in_rigidity_family(*ring))
    throw UnsupportedError(
        "rigidity conditions need a noncommutative skew polynomial ring in n >= 2 variables with root-of-unity "
        "parameters");
  auto center = center_lattice(ring);
  auto ml = ml_h(*ring);
  std::optional<DiscriminantResult> disc;
  std::optional<EffectivenessVerdict> eff;
  if (center.rectangular) {
    disc = discriminant(center);
    if (!disc->degenerate) eff = classify_effectiveness(disc->normalized, *ring);
  }
  return assemble_conditions(center, disc ? &*disc : nullptr, eff ? &*eff : nullptr, ml);
}

VerdictReport analyze(const RingHandle& ring, AnalyzeOptions options) {
  VerdictReport r;
  r.ring = ring;
  const bool skew = !ring->has_weyl_factor();
  const bool torsion = ring->is_torsion();

  try {
    r.center = center_lattice(ring);
  } catch (const BoundExceededError& e) {
    r.notes.push_back(std::string("center: ") + e.what());
  }

  bool t_sets_complete = false;
  if (skew) {
    try {
      for (std::size_t s = 0; s < ring->generator_count(); ++s) r.t_sets.push_back(t_set(*ring, s));
      t_sets_complete = true;
    } catch (const BoundExceededError& e) {
      r.notes.push_back(std::string("t_sets: ") + e.what());
    }
    if (t_sets_complete && torsion) {
      MLResult ml;
      for (const auto& t : r.t_sets)
        if (t.empty()) ml.generating_set.push_back(t.generator);
      ml.is_full = ml.generating_set.size() == ring->generator_count();
      ml.is_trivial = ml.generating_set.empty();
      ml.t_sets = r.t_sets;
      r.ml = std::move(ml);
    } else if (!torsion) {
      r.notes.push_back("ml: ML^H is computed for root-of-unity parameters only");
    }
  } else {
    r.notes.push_back("t_sets: T_s sets are defined for skew polynomial rings only");
  }

  if (!options.compute_discriminant) {
    r.notes.push_back("discriminant: skipped by request");
  } else if (!torsion) {
    r.notes.push_back("discriminant: requires root-of-unity parameters");
  } else if (!r.center) {
    r.notes.push_back("discriminant: center was not computed");
  } else if (!r.center->rectangular) {
    r.notes.push_back("discriminant: the center is not rectangular");
  } else {
    r.discriminant = discriminant(*r.center);
    if (r.discriminant->degenerate)
      r.notes.push_back("discriminant: the trace pairing determinant vanishes");
    else
      r.effectiveness = classify_effectiveness(r.discriminant->normalized, *ring);
  }

  if (in_rigidity_family(*ring) && r.center && r.ml)
    r.conditions = assemble_conditions(*r.center, r.discriminant ? &*r.discriminant : nullptr,
                                       r.effectiveness ? &*r.effectiveness : nullptr, *r.ml);

  // (0) out of family
  if (ring->is_commutative()) {
    r.conclusion = Conclusion::Unsupported;
    r.citations.push_back({"outside-supported-families",
                           "commutative rings have trivial discriminant over their center; none of the "
                           "implemented routes applies",
                           {},
                           true});
    return r;
  }

  // (i) trivial center
  if (r.center && r.center->trivial) {
    r.conclusion = Conclusion::UniversallyCancellative;
    r.citations.push_back(trivial_center_citation(*ring));
    return r;
  }

  // (ii) rigidity through T_s or the discriminant
  const bool rigid_by_t_sets = r.ml && r.ml->is_full;
  const bool dominating = r.effectiveness && r.effectiveness->dominating == Tri::Yes;
  const bool effective = r.effectiveness && r.effectiveness->effective == Tri::Yes;
  if (rigid_by_t_sets || dominating || effective) {
    r.conclusion = Conclusion::StronglyCancellative;
    if (rigid_by_t_sets) r.citations.push_back(rigidity_chain_citation());
    if (dominating || rigid_by_t_sets) r.citations.push_back(dominating_citation());
    if (effective) r.citations.push_back(effective_citation());
    return r;
  }

  // (iii) GK-dimension two
  if (gk_dimension(*ring) == 2) {
    r.conclusion = Conclusion::Cancellative;
    r.citations.push_back(gk_two_citation());
    return r;
  }

  // (iv) open
  r.conclusion = Conclusion::OpenCase;
  const bool decided_by_chain = in_rigidity_family(*ring) && r.ml.has_value();
  r.open_reason = decided_by_chain ? OpenReason::NoApplicableResult : OpenReason::ComputationUnsupported;
  if (decided_by_chain) {
    r.citations.push_back(rigidity_chain_citation());
    r.citations.back().informational = true;
    r.citations.push_back({"graded-cancellation-only",
                           "A[t] = B[t] with B connected graded and generated in degree 1  =>  A = B as graded "
                           "algebras (external result, not computed)",
                           {},
                           true});
  }
  return r;
}

}  // namespace qcancel
