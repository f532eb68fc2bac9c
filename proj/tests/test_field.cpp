#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "rsrepair/error.hpp"
#include "rsrepair/field.hpp"

using namespace rsrepair;

namespace {

std::vector<Elem> all_elems(const Tower& tw) {
  std::vector<Elem> v;
  for (std::uint32_t i = 0; i < tw.order(); ++i) v.push_back(Elem{i});
  return v;
}

// Smallest monic irreducible of degree d over GF(p) by integer value,
// found by trial division.
oracle::Poly first_irreducible(int p, int d) {
  long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long idx = 0; idx < count; ++idx) {
    oracle::Poly f(d + 1, 0);
    long x = idx;
    for (int i = 0; i < d; ++i) {
      f[i] = static_cast<int>(x % p);
      x /= p;
    }
    f[d] = 1;
    if (oracle::irreducible_by_trial_division(f, p)) return f;
  }
  return {};
}

}  // namespace

TEST_CASE("GF(8) uses 1 + x + x^3 and the class of x as primitive element") {
  auto tw = Tower::build(2, 1, 3);
  CHECK(tw->ext_modulus() == std::vector<Elem>{Elem{1}, Elem{1}, Elem{0}, Elem{1}});
  const Elem xi = tw->primitive();
  CHECK(xi == Elem{2});
  CHECK(tw->add(tw->add(Elem{1}, xi), tw->pow(xi, 3)) == Elem{0});
}

TEST_CASE("GF(2) has primitive element 1") {
  auto tw = Tower::build(2, 1, 1);
  CHECK(tw->order() == 2);
  CHECK(tw->primitive() == Elem{1});
}

TEST_CASE("default moduli are the least irreducible polynomials by integer value") {
  for (auto [p, d] : {std::pair{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 8}, {3, 2}, {3, 3}, {5, 2}, {7, 3}}) {
    auto tw = Tower::build(p, 1, d);
    const auto want = first_irreducible(p, d);
    std::vector<Elem> got_ext = tw->ext_modulus();
    REQUIRE(got_ext.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got_ext[i].v == static_cast<std::uint32_t>(want[i]));
    auto base = Tower::build(p, d, 1)->base_modulus();
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(base[i] == static_cast<std::uint32_t>(want[i]));
  }
}

TEST_CASE("GF(256) as a quadratic extension of GF(16)") {
  auto tw = Tower::build(2, 4, 2);
  CHECK(tw->q() == 16);
  CHECK(tw->order() == 256);
  // order of the primitive element by brute-force exponentiation
  const Elem xi = tw->primitive();
  Elem x = xi;
  std::uint32_t ord = 1;
  while (x != Elem{1}) {
    x = tw->mul(x, xi);
    ++ord;
  }
  CHECK(ord == 255);
}

TEST_CASE("tower arithmetic agrees with schoolbook arithmetic") {
  std::mt19937_64 rng(7);
  for (auto [p, m, t] : {std::tuple{2u, 1u, 3u}, {2u, 1u, 4u}, {2u, 2u, 2u}, {3u, 1u, 3u}, {3u, 2u, 2u},
                         {5u, 1u, 2u}, {2u, 3u, 2u}, {2u, 1u, 17u}, {2u, 4u, 5u}, {3u, 3u, 4u}}) {
    auto tw = Tower::build(p, m, t);
    const auto nt = oracle::NaiveTower::from(*tw);
    const bool exhaustive = tw->order() <= 64;
    const std::size_t trials = exhaustive ? tw->order() * tw->order() : 400;
    for (std::size_t i = 0; i < trials; ++i) {
      const Elem a = exhaustive ? Elem{static_cast<std::uint32_t>(i / tw->order())}
                                : Elem{static_cast<std::uint32_t>(rng() % tw->order())};
      const Elem b = exhaustive ? Elem{static_cast<std::uint32_t>(i % tw->order())}
                                : Elem{static_cast<std::uint32_t>(rng() % tw->order())};
      REQUIRE(tw->mul(a, b) == nt.emul(a, b));
      REQUIRE(tw->add(a, b) == nt.eadd(a, b));
      REQUIRE(tw->sub(a, b) == nt.esub(a, b));
      if (b.v != 0) REQUIRE(tw->mul(tw->inv(b), b) == Elem{1});
    }
    for (int i = 0; i < 40; ++i) {
      const Elem a{static_cast<std::uint32_t>(rng() % tw->order())};
      const std::uint64_t e = rng() % 100000;
      CHECK(tw->pow(a, e) == nt.epow(a, e));
      CHECK(tw->trace(a) == nt.etrace(a));
      CHECK(tw->trace_by_definition(a) == nt.etrace(a));
      CHECK(tw->frobenius(a, 1) == nt.epow(a, tw->q()));
    }
  }
}

TEST_CASE("trace examples over GF(8)") {
  auto tw = Tower::build(2, 1, 3);
  CHECK(tw->trace(Elem{0}) == Elem{0});
  CHECK(tw->trace(Elem{1}) == Elem{1});
  CHECK(tw->trace(tw->primitive()) == Elem{0});
}

TEST_CASE("trace is B-linear, lands in B and Frobenius fixes exactly B") {
  for (auto [p, m, t] : {std::tuple{2u, 1u, 4u}, {3u, 1u, 3u}, {2u, 2u, 3u}, {5u, 1u, 2u}}) {
    auto tw = Tower::build(p, m, t);
    std::size_t fixed = 0;
    for (Elem x : all_elems(*tw)) {
      CHECK(tw->in_base(tw->trace(x)));
      if (tw->frobenius(x, 1) == x) {
        ++fixed;
        CHECK(tw->in_base(x));
      }
      CHECK(tw->frobenius(x, 0) == x);
      for (std::uint32_t a = 0; a < tw->q(); ++a) {
        const Elem y{static_cast<std::uint32_t>((x.v * 7 + a) % tw->order())};
        const Elem lhs = tw->trace(tw->add(tw->mul(Elem{a}, x), y));
        CHECK(lhs == tw->add(tw->base_mul(Elem{a}, tw->trace(x)), tw->trace(y)));
      }
    }
    CHECK(fixed == tw->q());
  }
}

TEST_CASE("trace down to an intermediate subfield") {
  auto tw = Tower::build(2, 1, 4);
  const auto nt = oracle::NaiveTower::from(*tw);
  for (Elem x : all_elems(*tw)) {
    // Tr_{GF(16)/GF(4)}(x) = x + x^4
    const Elem want = nt.eadd(x, nt.epow(x, 4));
    CHECK(tw->trace_to_subfield(x, 2) == want);
    CHECK(tw->trace_to_subfield(x, 1) == tw->trace(x));
  }
  CHECK_THROWS_AS(tw->trace_to_subfield(Elem{3}, 3), PreconditionError);
}

TEST_CASE("rank over the base field") {
  auto tw = Tower::build(2, 1, 3);
  const auto nt = oracle::NaiveTower::from(*tw);
  const Elem xi = tw->primitive();
  auto pw = [&](int e) { return tw->pow(xi, e); };
  CHECK(rank_over_base(*tw, std::vector<Elem>{Elem{1}, xi, pw(2)}) == 3);
  CHECK(rank_over_base(*tw, std::vector<Elem>{Elem{1}, xi, tw->add(Elem{1}, xi)}) == 2);
  CHECK(rank_over_base(*tw, std::vector<Elem>{Elem{1}, pw(2), pw(4)}) == 3);
  CHECK(rank_over_base(*tw, std::vector<Elem>{}) == 0);

  std::mt19937_64 rng(3);
  for (auto [p, m, t] : {std::tuple{2u, 1u, 4u}, {3u, 1u, 3u}, {2u, 2u, 3u}, {3u, 2u, 2u}}) {
    auto tw2 = Tower::build(p, m, t);
    const auto nt2 = oracle::NaiveTower::from(*tw2);
    for (int i = 0; i < 60; ++i) {
      std::vector<Elem> s(1 + rng() % 4);
      for (Elem& e : s) e = Elem{static_cast<std::uint32_t>(rng() % tw2->order())};
      if (i % 3 == 0 && s.size() >= 2) s.back() = tw2->add(s[0], tw2->mul(Elem{1}, s[1]));
      const auto want = oracle::rank_by_enumeration(nt2, s);
      CHECK(rank_over_base(*tw2, s) == want);
      const Elem lam{1 + static_cast<std::uint32_t>(rng() % (tw2->order() - 1))};
      std::vector<Elem> scaled;
      for (Elem e : s) scaled.push_back(tw2->mul(lam, e));
      CHECK(rank_over_base(*tw2, scaled) == want);
    }
  }
  (void)nt;
}

TEST_CASE("span basis and coordinates") {
  auto tw = Tower::build(2, 1, 3);
  const Elem xi = tw->primitive();
  auto pw = [&](int e) { return tw->pow(xi, e); };

  auto d0 = span_basis_and_coords(*tw, std::vector<Elem>{Elem{0}, Elem{0}});
  CHECK(d0.basis.empty());
  REQUIRE(d0.coords.size() == 2);
  CHECK(d0.coords[0].empty());

  auto d1 = span_basis_and_coords(*tw, std::vector<Elem>{xi, xi});
  REQUIRE(d1.basis == std::vector<Elem>{xi});
  CHECK(d1.coords[0] == std::vector<Elem>{Elem{1}});
  CHECK(d1.coords[1] == std::vector<Elem>{Elem{1}});

  // the column at xi^5 in the worked GF(8) table
  const std::vector<Elem> col = {pw(4), Elem{1}, pw(5)};
  auto d2 = span_basis_and_coords(*tw, col);
  CHECK(d2.basis.size() == 2);
  CHECK(d2.basis == std::vector<Elem>{pw(4), Elem{1}});
  for (std::size_t i = 0; i < col.size(); ++i) {
    Elem acc{0};
    for (std::size_t j = 0; j < d2.basis.size(); ++j) acc = tw->add(acc, tw->mul(d2.coords[i][j], d2.basis[j]));
    CHECK(acc == col[i]);
  }

  std::mt19937_64 rng(11);
  auto tw3 = Tower::build(3, 2, 3);
  for (int i = 0; i < 50; ++i) {
    std::vector<Elem> s(1 + rng() % 6);
    for (Elem& e : s) e = Elem{static_cast<std::uint32_t>(rng() % tw3->order())};
    auto d = span_basis_and_coords(*tw3, s);
    CHECK(d.basis.size() == rank_over_base(*tw3, s));
    for (std::size_t k = 0; k < s.size(); ++k) {
      Elem acc{0};
      for (std::size_t j = 0; j < d.basis.size(); ++j) {
        CHECK(tw3->in_base(d.coords[k][j]));
        acc = tw3->add(acc, tw3->mul(d.coords[k][j], d.basis[j]));
      }
      CHECK(acc == s[k]);
    }
  }
}

TEST_CASE("dual bases") {
  SUBCASE("GF(4) over GF(2), basis {1, w}: exhaustive reconstruction") {
    auto tw = Tower::build(2, 1, 2);
    const auto nt = oracle::NaiveTower::from(*tw);
    const std::vector<Elem> u = {Elem{1}, tw->primitive()};
    const auto d = dual_basis(*tw, u);
    // dual found by brute-force search
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<Elem> hits;
      for (Elem c : all_elems(*tw)) {
        bool ok = true;
        for (std::size_t i = 0; i < 2; ++i) ok = ok && nt.etrace(nt.emul(u[i], c)) == Elem{i == j ? 1U : 0U};
        if (ok) hits.push_back(c);
      }
      REQUIRE(hits.size() == 1);
      CHECK(d[j] == hits[0]);
    }
    for (Elem a : all_elems(*tw)) {
      Elem acc{0};
      for (std::size_t i = 0; i < 2; ++i) acc = tw->add(acc, tw->mul(tw->trace(tw->mul(u[i], a)), d[i]));
      CHECK(acc == a);
    }
  }
  SUBCASE("GF(8) polynomial basis: exhaustive reconstruction") {
    auto tw = Tower::build(2, 1, 3);
    const auto u = tw->polynomial_basis();
    const auto sb = make_subfield_basis(*tw, u);
    for (Elem a : all_elems(*tw)) {
      const auto c = expand_in_basis(*tw, sb, a);
      Elem acc{0};
      for (std::size_t i = 0; i < 3; ++i) {
        acc = tw->add(acc, tw->mul(tw->trace(tw->mul(u[i], a)), sb.dual[i]));
      }
      CHECK(acc == a);
      Elem acc2{0};
      for (std::size_t i = 0; i < 3; ++i) acc2 = tw->add(acc2, tw->mul(c[i], u[i]));
      CHECK(acc2 == a);
    }
    CHECK(dual_basis(*tw, sb.dual) == u);
  }
  SUBCASE("a self-dual basis is its own dual") {
    // {xi^3, xi^5, xi^6} is trace-orthogonal in GF(8) with 1 + x + x^3
    auto tw = Tower::build(2, 1, 3);
    const Elem xi = tw->primitive();
    const std::vector<Elem> u = {tw->pow(xi, 3), tw->pow(xi, 5), tw->pow(xi, 6)};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(tw->trace(tw->mul(u[i], u[j])) == Elem{i == j ? 1U : 0U});
    }
    CHECK(dual_basis(*tw, u) == u);
  }
  SUBCASE("dependent input is rejected") {
    auto tw = Tower::build(2, 1, 3);
    CHECK_THROWS_AS(dual_basis(*tw, std::vector<Elem>{Elem{1}, Elem{2}, Elem{3}}), InvalidArgument);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Tower::build(4, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(Tower::build(2, 1, 21), CapExceeded);
  TowerModuli reducible;
  reducible.ext = {Elem{1}, Elem{0}, Elem{1}};  // x^2 + 1 = (x + 1)^2 over GF(2)
  CHECK_THROWS_AS(Tower::build(2, 1, 2, reducible), InvalidArgument);
  TowerLimits lim;
  lim.max_order = 1 << 22;
  CHECK_NOTHROW(Tower::build(2, 1, 21, std::nullopt, lim));
  auto tw = Tower::build(2, 1, 3);
  CHECK_THROWS_AS(tw->check(Elem{8}), InvalidArgument);
}

TEST_CASE("explicit moduli are honoured") {
  TowerModuli mod;
  mod.ext = {Elem{1}, Elem{0}, Elem{1}, Elem{1}};  // 1 + x^2 + x^3
  auto tw = Tower::build(2, 1, 3, mod);
  CHECK(tw->ext_modulus() == mod.ext);
  const Elem y{2};
  CHECK(tw->add(tw->add(Elem{1}, tw->pow(y, 2)), tw->pow(y, 3)) == Elem{0});
}

TEST_CASE("large fields without log tables") {
  auto tw = Tower::build(2, 1, 20);
  CHECK_FALSE(tw->has_log_table());
  const auto nt = oracle::NaiveTower::from(*tw);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Elem a{static_cast<std::uint32_t>(rng() % tw->order())};
    const Elem b{static_cast<std::uint32_t>(rng() % tw->order())};
    CHECK(tw->mul(a, b) == nt.emul(a, b));
  }
  CHECK(tw->pow(tw->primitive(), tw->order() - 1) == Elem{1});
  for (auto f : prime_factors(tw->order() - 1)) CHECK(tw->pow(tw->primitive(), (tw->order() - 1) / f) != Elem{1});
}
