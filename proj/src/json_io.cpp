#include "rsrepair/json_io.hpp"

#include <string>

#include "rsrepair/error.hpp"

namespace rsrepair {

namespace {

Json digits(std::uint32_t v, std::uint32_t p, std::uint32_t m) {
  Json out = Json::array();
  for (std::uint32_t i = 0; i < m; ++i) {
    out.push_back(v % p);
    v /= p;
  }
  return out;
}

std::uint32_t from_digits(const Json& j, std::uint32_t p, std::uint32_t m) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) q *= p;
    if (v < 0 || static_cast<std::uint64_t>(v) >= q) throw InvalidArgument("subfield value out of range");
    return static_cast<std::uint32_t>(v);
  }
  if (!j.is_array() || j.size() > m) throw InvalidArgument("expected at most m digits over GF(p)");
  std::uint32_t v = 0;
  std::uint32_t scale = 1;
  for (const auto& d : j) {
    const auto x = d.get<std::int64_t>();
    if (x < 0 || static_cast<std::uint64_t>(x) >= p) throw InvalidArgument("digit out of range for GF(p)");
    v += static_cast<std::uint32_t>(x) * scale;
    scale *= p;
  }
  return v;
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json field_to_json(const Tower& tw) {
  Json j;
  j["p"] = tw.p();
  j["m"] = tw.m();
  j["t"] = tw.t();
  j["base_modulus"] = tw.base_modulus();
  Json ext = Json::array();
  for (Elem c : tw.ext_modulus()) ext.push_back(digits(c.v, tw.p(), tw.m()));
  j["ext_modulus"] = std::move(ext);
  return j;
}

TowerPtr field_from_json(const Json& j, const TowerLimits& limits) {
  if (!j.is_object()) throw InvalidArgument("field spec must be an object");
  const auto p = require<std::uint32_t>(j, "p");
  const auto m = j.contains("m") ? require<std::uint32_t>(j, "m") : std::uint32_t{1};
  const auto t = require<std::uint32_t>(j, "t");
  std::optional<TowerModuli> moduli;
  if (j.contains("base_modulus") || j.contains("ext_modulus")) {
    TowerModuli mod;
    if (j.contains("base_modulus")) mod.base = require<std::vector<std::uint32_t>>(j, "base_modulus");
    if (j.contains("ext_modulus")) {
      for (const auto& c : j.at("ext_modulus")) mod.ext.push_back(Elem{from_digits(c, p, m)});
    }
    moduli = std::move(mod);
  }
  return Tower::build(p, m, t, moduli, limits);
}

Json elem_to_json(const Tower& tw, Elem x) {
  tw.check(x);
  Json out = Json::array();
  for (std::uint32_t i = 0; i < tw.t(); ++i) out.push_back(digits(tw.coordinate(x, i).v, tw.p(), tw.m()));
  return out;
}

Elem elem_from_json(const Tower& tw, const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= tw.order()) throw InvalidArgument("element index out of range");
    return Elem{static_cast<std::uint32_t>(v)};
  }
  if (!j.is_array() || j.size() > tw.t()) throw InvalidArgument("element must be an array of at most t coordinates");
  std::vector<Elem> coords;
  for (const auto& c : j) coords.push_back(Elem{from_digits(c, tw.p(), tw.m())});
  coords.resize(tw.t(), Elem{0});
  return tw.from_coordinates(coords);
}

Json elems_to_json(const Tower& tw, std::span<const Elem> xs) {
  Json out = Json::array();
  for (Elem x : xs) out.push_back(elem_to_json(tw, x));
  return out;
}

std::vector<Elem> elems_from_json(const Tower& tw, const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array of elements");
  std::vector<Elem> out;
  for (const auto& x : j) out.push_back(elem_from_json(tw, x));
  return out;
}

Json code_to_json(const RSCode& code) {
  Json j;
  j["field"] = field_to_json(code.tower());
  if (code.is_full_length()) {
    j["points"] = "full";
  } else {
    j["points"] = elems_to_json(code.tower(), code.points());
  }
  j["k"] = code.k();
  return j;
}

CodePtr code_from_json(const Json& j, const TowerLimits& limits) {
  if (!j.is_object()) throw InvalidArgument("code spec must be an object");
  if (!j.contains("field")) throw InvalidArgument("missing field 'field'");
  TowerPtr tower = field_from_json(j.at("field"), limits);
  const auto k = require<std::uint32_t>(j, "k");
  if (j.contains("points") && j.contains("n")) throw InvalidArgument("give either 'points' or 'n', not both");
  if (j.contains("points") && !(j.at("points").is_string() && j.at("points") == "full")) {
    if (j.at("points").is_string()) throw InvalidArgument("'points' must be an array or \"full\"");
    return RSCode::with_points(tower, elems_from_json(*tower, j.at("points")), k);
  }
  if (j.contains("n")) {
    const auto n = require<std::uint64_t>(j, "n");
    if (n > tower->order()) throw InvalidArgument("n exceeds |F|");
    if (n == tower->order()) return RSCode::full_length(tower, k);
    auto full = RSCode::full_length(tower, 1);
    std::vector<Elem> pts(full->points().begin(), full->points().begin() + static_cast<std::ptrdiff_t>(n));
    return RSCode::with_points(tower, std::move(pts), k);
  }
  return RSCode::full_length(tower, k);
}

Json transcript_to_json(const Tower& tw, const RepairTranscript& tr) {
  Json j;
  j["erased"] = tr.erased;
  j["alpha_star"] = elem_to_json(tw, tr.alpha_star);
  Json nodes = Json::array();
  for (const auto& d : tr.downloads) {
    Json n;
    n["node"] = d.node;
    n["alpha"] = elem_to_json(tw, d.alpha);
    n["queries"] = elems_to_json(tw, d.queries);
    Json resp = Json::array();
    for (Elem r : d.responses) resp.push_back(digits(r.v, tw.p(), tw.m()));
    n["responses"] = std::move(resp);
    nodes.push_back(std::move(n));
  }
  j["per_node"] = std::move(nodes);
  j["reconstructed"] = elem_to_json(tw, tr.reconstructed);
  j["subsymbols"] = tr.subsymbols;
  j["bits"] = tr.bits;
  return j;
}

Json profile_to_json(const Tower& tw, const BandwidthProfile& profile) {
  Json j;
  Json nodes = Json::array();
  for (const auto& nb : profile.per_node) {
    nodes.push_back({{"node", nb.node}, {"alpha", elem_to_json(tw, nb.alpha)}, {"subsymbols", nb.subsymbols}});
  }
  j["per_node"] = std::move(nodes);
  j["total_subsymbols"] = profile.total_subsymbols;
  j["total_bits"] = profile.total_bits;
  return j;
}

Json bound_to_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["q"] = r.q;
  j["t"] = r.t;
  j["r"] = r.r;
  j["L"] = {{"num", boost::multiprecision::numerator(r.L).str()},
            {"den", boost::multiprecision::denominator(r.L).str()},
            {"value", static_cast<double>(r.L)}};
  j["b_ave"] = r.b_ave;
  j["b_ave_floor"] = r.b_floor;
  j["b_ave_ceil"] = r.b_ceil;
  j["b_ave_integral"] = r.b_integral;
  j["ell"] = r.ell;
  j["integral_subsymbols"] = r.integral_subsymbols;
  j["integral_bits"] = r.integral_bits;
  j["fractional_subsymbols"] = r.fractional_subsymbols;
  j["fractional_bits"] = r.fractional_bits;
  j["fractional_bits_ceil"] = r.fractional_bits_ceil;
  j["fractional_bits_integral"] = r.fractional_bits_integral;
  j["bits_exact"] = r.bits_exact;
  return j;
}

Json scheme_to_json(const RepairScheme& scheme) {
  const Tower& tw = scheme.tower();
  const Provenance& prov = scheme.provenance();
  Json j;
  j["kind"] = std::string(to_string(prov.kind));
  j["s"] = prov.s;
  j["code"] = code_to_json(scheme.code());
  j["erased"] = scheme.erased();
  j["alpha_star"] = elem_to_json(tw, scheme.alpha_star());
  j["basis"] = elems_to_json(tw, prov.basis);
  j["subspace"] = elems_to_json(tw, prov.subspace);
  if (!prov.z_points.empty()) j["z"] = elems_to_json(tw, prov.z_points);
  Json degrees = Json::array();
  for (const auto& g : scheme.checks()) degrees.push_back(check_degree(tw, g));
  j["check_degrees"] = std::move(degrees);
  j["at_alpha_star"] = elems_to_json(tw, scheme.column(scheme.erased()));
  j["profile"] = profile_to_json(tw, bandwidth_profile(scheme));
  return j;
}

}  // namespace rsrepair
