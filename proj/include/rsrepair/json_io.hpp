#pragma once

#include <span>
#include <vector>

#include "json.hpp"

#include "rsrepair/bounds.hpp"
#include "rsrepair/field.hpp"
#include "rsrepair/rs_code.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

using Json = nlohmann::ordered_json;

// Field: {p, m, t, base_modulus: [ints], ext_modulus: [[ints]]}, low degree first;
// m defaults to 1.
Json field_to_json(const Tower& tower);
/// Moduli are optional; when present they are checked for irreducibility.
TowerPtr field_from_json(const Json& j, const TowerLimits& limits = {});

/// Nested coefficient arrays: t entries over B, each m digits over GF(p).
Json elem_to_json(const Tower& tower, Elem x);
/// Accepts the nested form, a flat list of t B-values, or a bare integer index.
Elem elem_from_json(const Tower& tower, const Json& j);
Json elems_to_json(const Tower& tower, std::span<const Elem> xs);
std::vector<Elem> elems_from_json(const Tower& tower, const Json& j);

// Code: {field, points: [elements] | "full", k}. "n" may replace points to
// take the first n points of the full-length order.
Json code_to_json(const RSCode& code);
CodePtr code_from_json(const Json& j, const TowerLimits& limits = {});

Json transcript_to_json(const Tower& tower, const RepairTranscript& tr);
Json profile_to_json(const Tower& tower, const BandwidthProfile& profile);
Json bound_to_json(const BoundReport& report);
Json scheme_to_json(const RepairScheme& scheme);

}  // namespace rsrepair
