#pragma once

#include <string>

#include <json.hpp>

#include "qcancel/verdict.hpp"

namespace qcancel {

/// JSON views of analysis results.  Object keys are sorted and arrays follow
/// generator or lexicographic order, so equal inputs give identical dumps.
nlohmann::json ring_summary_json(const Ring& ring);
nlohmann::json center_json(const CenterDescription& center);
nlohmann::json t_set_json(const TSetResult& t, const Ring& ring);
nlohmann::json ml_json(const MLResult& ml, const Ring& ring);
nlohmann::json discriminant_json(const DiscriminantResult& d, const Ring& ring);
nlohmann::json effectiveness_json(const EffectivenessVerdict& e);
nlohmann::json conditions_json(const RigidityConditions& c);
nlohmann::json verification_json(const VerificationResult& v, const Ring& ring);
nlohmann::json verdict_json(const VerdictReport& report);

/// Indented "key: value" rendering of a report document.
std::string render_text(const nlohmann::json& doc);

}  // namespace qcancel
