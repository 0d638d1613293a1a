#pragma once

#include <string>

#include <json.hpp>

#include "qcancel/presentation.hpp"

namespace qcancel {

/// Current value of the top-level "spec_version" field.
inline constexpr int kRingSpecVersion = 1;

/// Parses a JSON ring spec.  Syntax errors are reported as
/// "<source>:<line>:<column>: ..." and validation errors name the offending
/// field as a JSON pointer; both throw InputError.
RingHandle parse_ring_spec(const std::string& text, const std::string& source = "<input>");
RingHandle load_ring_spec(const std::string& path);

/// Canonical spec of a ring: parse_ring_spec(emit_ring_spec(r).dump()) == r.
nlohmann::json emit_ring_spec(const Ring& ring);

}  // namespace qcancel
