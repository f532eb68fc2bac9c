#include "doctest.h"

#include <random>

#include "rsrepair/error.hpp"
#include "rsrepair/json_io.hpp"
#include "rsrepair/render.hpp"
#include "rsrepair/verify.hpp"

using namespace rsrepair;

TEST_CASE("field and element JSON round trips") {
  auto tw = Tower::build(3, 2, 2);
  const Json j = field_to_json(*tw);
  CHECK(j["p"] == 3);
  CHECK(j["m"] == 2);
  CHECK(j["t"] == 2);
  auto back = field_from_json(j);
  CHECK(back->ext_modulus() == tw->ext_modulus());
  CHECK(back->base_modulus() == tw->base_modulus());
  for (std::uint32_t v = 0; v < tw->order(); v += 7) {
    const Json e = elem_to_json(*tw, Elem{v});
    CHECK(elem_from_json(*tw, e) == Elem{v});
    CHECK(elem_from_json(*tw, Json(v)) == Elem{v});
    Json flat = Json::array();
    for (Elem c : tw->coordinates(Elem{v})) flat.push_back(c.v);
    CHECK(elem_from_json(*tw, flat) == Elem{v});
  }
  CHECK_THROWS_AS(elem_from_json(*tw, Json(81)), InvalidArgument);
  CHECK_THROWS_AS(elem_from_json(*tw, Json::array({1, 2, 3})), InvalidArgument);
  Json reducible = j;
  reducible["base_modulus"] = Json::array({1, 0, 1});  // x^2 + 1 is irreducible over GF(3)
  CHECK_NOTHROW(field_from_json(reducible));
  reducible["base_modulus"] = Json::array({2, 0, 1});  // x^2 - 1
  CHECK_THROWS_AS(field_from_json(reducible), InvalidArgument);
}

TEST_CASE("code JSON forms") {
  auto tw = Tower::build(2, 1, 4);
  auto full = RSCode::full_length(tw, 10);
  auto again = code_from_json(code_to_json(*full));
  CHECK(again->n() == 16);
  CHECK(again->k() == 10);
  CHECK(std::equal(again->points().begin(), again->points().end(), full->points().begin()));

  Json j = {{"field", {{"p", 2}, {"m", 1}, {"t", 4}}}, {"n", 9}, {"k", 5}};
  auto sh = code_from_json(j);
  CHECK(sh->n() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(sh->point(i) == full->point(i));
  CHECK(code_from_json(code_to_json(*sh))->n() == 9);

  j = {{"field", {{"p", 2}, {"t", 4}}}, {"points", "full"}, {"k", 3}};
  CHECK(code_from_json(j)->n() == 16);
}

TEST_CASE("scheme, profile, transcript and bound JSON") {
  auto code = RSCode::full_length(Tower::build(2, 1, 3), 6);
  auto sc = build_construction_1(code, 0);
  const Json js = scheme_to_json(sc);
  CHECK(js["kind"] == "c1");
  CHECK(js["check_degrees"] == Json::array({1, 1, 1}));
  const Json jp = profile_to_json(code->tower(), bandwidth_profile(sc));
  CHECK(jp["total_subsymbols"] == 14);
  std::mt19937_64 rng(3);
  std::vector<Elem> msg(6);
  for (Elem& c : msg) c = Elem{static_cast<std::uint32_t>(rng() % 8)};
  const auto cw = encode(*code, msg);
  const Json jt = transcript_to_json(code->tower(), execute_repair(sc, cw.values));
  CHECK(jt["subsymbols"] == 14);
  CHECK(jt["per_node"].size() == 7);
  const Json jb = bound_to_json(integral_lower_bound(14, 16, 2, 4));
  CHECK(jb["integral_subsymbols"] == 11);
  CHECK(jb["L"]["num"] == "389");
  CHECK(jb["L"]["den"] == "128");
}

TEST_CASE("element formatting") {
  auto tw = Tower::build(2, 1, 3);
  const Elem xi = tw->primitive();
  CHECK(format_elem(*tw, Elem{0}) == "0");
  CHECK(format_elem(*tw, Elem{1}) == "1");
  CHECK(format_elem(*tw, xi) == "ξ");
  CHECK(format_elem(*tw, tw->pow(xi, 5)) == "ξ^5");
  CHECK(format_elem(*tw, tw->pow(xi, 5), true) == "xi^5");
  auto big = Tower::build(2, 1, 17);
  CHECK(format_elem(*big, Elem{5}) == "(1,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0)");
}

TEST_CASE("worked GF(8) table text") {
  auto code = RSCode::full_length(Tower::build(2, 1, 3), 6);
  auto sc = build_construction_1(code, 0);
  CHECK(check_label(sc, 0) == "g_1 = x-1");
  CHECK(check_label(sc, 1) == "g_2 = ξ(x-ξ)");
  CHECK(check_label(sc, 2) == "g_3 = ξ^2(x-ξ^2)");
  const std::string text = render_table_text(sc, true);
  CHECK(text.find("*0") != std::string::npos);
  CHECK(text.find("rank_2(.)") != std::string::npos);
  const Json tj = render_table_json(sc);
  CHECK(tj["rank"] == Json::array({3, 2, 2, 2, 2, 2, 2, 2}));
  auto wide = RSCode::full_length(Tower::build(2, 1, 9), 500);
  CHECK_THROWS_AS(render_table_text(build_construction_3(wide, 0, 1)), CapExceeded);
}

TEST_CASE("verify front end") {
  const auto fp = parse_field_params("t=3,p=2");
  CHECK(fp.p == 2);
  CHECK(fp.m == 1);
  CHECK(fp.t == 3);
  CHECK_THROWS_AS(parse_field_params("p=2,x=1"), InvalidArgument);
  VerifyOptions o;
  o.only = {"nope"};
  CHECK_THROWS_AS(run_verify(o), InvalidArgument);
  o.only = {"fig1", "lemma7"};
  const auto res = run_verify(o);
  REQUIRE(res.size() == 2);
  for (const auto& r : res) CHECK(r.passed);
}
