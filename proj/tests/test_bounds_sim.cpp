#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "rsrepair/bounds.hpp"
#include "rsrepair/error.hpp"
#include "rsrepair/sim.hpp"

using namespace rsrepair;

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("integral bound, worked parameters") {
  // GF(256) viewed over GF(16), n = 14, r = 4
  const auto fb = integral_lower_bound(14, 16, 2, 4);
  CHECK(fb.integral_subsymbols == 11);
  CHECK(fb.integral_bits == doctest::Approx(44.0));
  CHECK(fb.ell == 2);
  CHECK(fb.b_floor == 0);
  CHECK(fb.b_ceil == 1);
  CHECK(fb.fractional_bits == doctest::Approx(13.0 * std::log2(13.0 * 256.0 / (3.0 * 255.0 + 13.0))));
  CHECK(fb.fractional_bits_ceil == 28);
  CHECK_FALSE(fb.fractional_bits_integral);
  CHECK(fb.L == Rational(778, 256));

  CHECK(integral_lower_bound(8, 2, 3, 2).integral_subsymbols == 14);
  CHECK(integral_lower_bound(16, 2, 4, 8).integral_subsymbols == 15);

  // (n-1)/L = 2 exactly: the fractional bound is an integer
  const auto exact = fractional_lower_bound(16, 2, 4, 8);
  CHECK(exact.fractional_bits_integral);
  CHECK(exact.fractional_bits == 15.0);
  CHECK(exact.b_integral);
}

TEST_CASE("integral bound equals literal enumeration") {
  for (std::uint64_t q : {2u, 3u, 4u}) {
    for (std::uint32_t t = 1; t <= 3; ++t) {
      const std::uint64_t order = ipow(q, t);
      for (std::uint64_t n = 2; n <= std::min<std::uint64_t>(order, 9); ++n) {
        for (std::uint64_t r = 1; r < n; ++r) {
          CAPTURE(q);
          CAPTURE(t);
          CAPTURE(n);
          CAPTURE(r);
          const auto want = oracle::min_bandwidth_by_enumeration(n, q, t, r);
          CHECK(integral_lower_bound(n, q, t, r).integral_subsymbols == want);
          CHECK(brute_force_min_bandwidth(n, q, t, r) == want);
        }
      }
    }
  }
}

TEST_CASE("dynamic-programming oracle answers every (n, r) from one table") {
  BandwidthOracle oracle_table(3, 2, 9);
  for (std::uint64_t n = 2; n <= 9; ++n) {
    for (std::uint64_t r = 1; r < n; ++r) {
      CHECK(oracle_table.min_bandwidth(n, r) == oracle::min_bandwidth_by_enumeration(n, 3, 2, r));
    }
  }
  CHECK_THROWS_AS(BandwidthOracle(2, 16, 1000), CapExceeded);
  CHECK_THROWS_AS(BandwidthOracle(2, 8, 1000), InvalidArgument);
}

TEST_CASE("integral bound is monotone and sits between its neighbours") {
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    for (std::uint32_t t = 1; t <= 4; ++t) {
      const std::uint64_t order = ipow(q, t);
      if (order > 256) continue;
      for (std::uint64_t n = 2; n <= order; ++n) {
        std::uint64_t prev = ~std::uint64_t{0};
        for (std::uint64_t r = 1; r < n; ++r) {
          const auto rep = integral_lower_bound(n, q, t, r);
          CHECK(rep.integral_subsymbols <= prev);  // more redundancy never costs more
          CHECK(rep.integral_subsymbols >= n - 1 - std::min<std::uint64_t>(n - 1, r - 1));
          CHECK(rep.integral_subsymbols <= (n - 1) * t);
          CHECK(static_cast<double>(rep.integral_subsymbols) * rep.bits_per_subsymbol >=
                rep.fractional_bits - 1e-9);
          prev = rep.integral_subsymbols;
        }
      }
    }
  }
}

TEST_CASE("an optimum with all helpers on two adjacent levels exists") {
  for (std::uint64_t q : {2u, 3u}) {
    for (std::uint32_t t = 1; t <= 3; ++t) {
      for (std::uint64_t n = 2; n <= std::min<std::uint64_t>(ipow(q, t), 8); ++n) {
        for (std::uint64_t r = 1; r < n; ++r) {
          const auto rep = integral_lower_bound(n, q, t, r);
          const auto occ = optimal_occupancies(n, q, t, r);
          REQUIRE_FALSE(occ.empty());
          bool found_closed_form = false;
          for (const auto& c : occ) {
            std::uint64_t total = 0, sum = 0;
            for (std::uint32_t b = 0; b <= t; ++b) {
              total += c[b] * b;
              sum += c[b];
            }
            CHECK(sum == n - 1);
            CHECK(total == rep.integral_subsymbols);
            std::vector<std::uint64_t> want(t + 1, 0);
            want[rep.b_floor] += rep.ell;
            want[rep.b_ceil] += n - 1 - rep.ell;
            found_closed_form = found_closed_form || c == want;
          }
          CHECK(found_closed_form);
        }
      }
    }
  }
}

TEST_CASE("bound argument validation") {
  CHECK_THROWS_AS(integral_lower_bound(5, 6, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(integral_lower_bound(9, 2, 3, 2), InvalidArgument);
  CHECK_THROWS_AS(integral_lower_bound(8, 2, 3, 8), InvalidArgument);
  CHECK_THROWS_AS(integral_lower_bound(8, 2, 3, 0), InvalidArgument);
  CHECK_THROWS_AS(integral_lower_bound(1, 2, 3, 0), InvalidArgument);
}

TEST_CASE("message ledger") {
  MessageLedger l;
  l.record_query(9, 1);
  l.record_response(1, 9, 2);
  l.record_query(9, 3);
  l.record_response(3, 9, 1);
  CHECK(l.queries() == 2);
  CHECK(l.sent_by(1) == 2);
  CHECK(l.sent_by(3) == 1);
  CHECK(l.received_by(9) == 3);
  CHECK(l.total_sent() == l.total_received());
  CHECK(l.sent_by(4) == 0);
}

TEST_CASE("cluster failure handling") {
  std::mt19937_64 rng(61);
  auto code = RSCode::full_length(Tower::build(2, 1, 3), 6);
  auto cl = Cluster::random(code, rng);
  cl.fail(2);
  CHECK(cl.failed() == 2);
  CHECK_THROWS_AS(cl.answer(2, Elem{1}), ConsistencyError);
  CHECK_THROWS_AS(cl.fail(3), PreconditionError);
  CHECK(cl.answer(3, Elem{1}) == code->tower().trace(cl.original(3)));
  cl.restore(cl.original(2));
  CHECK_FALSE(cl.failed());
  CHECK_THROWS_AS(cl.restore(Elem{0}), PreconditionError);
}

TEST_CASE("simulated repairs") {
  std::mt19937_64 rng(67);
  SUBCASE("GF(8), r = 2: Construction I against the naive baseline") {
    auto code = RSCode::full_length(Tower::build(2, 1, 3), 6);
    for (std::size_t f = 0; f < 8; ++f) {
      auto cl = Cluster::random(code, rng);
      const auto c1 = run_failure_and_repair(cl, f, Method::c1, 1);
      CHECK(c1.verified);
      CHECK(c1.subsymbols == 14);
      CHECK(c1.sent == 14);
      CHECK(c1.received == 14);
      const auto nv = run_failure_and_repair(cl, f, Method::naive, f);
      CHECK(nv.verified);
      CHECK(nv.subsymbols == 18);
      CHECK(nv.transcript.downloads.size() == 6);
    }
  }
  SUBCASE("GF(256), r = 16, Construction III") {
    auto code = RSCode::full_length(Tower::build(2, 1, 8), 240);
    auto cl = Cluster::random(code, rng);
    const auto out = run_failure_and_repair(cl, 77, Method::c3, 3);
    CHECK(out.s == 4);
    CHECK(out.verified);
    CHECK(out.subsymbols == 255 * 4);
    CHECK(out.bits == doctest::Approx(1020.0));
  }
  SUBCASE("s is chosen as large as admissible") {
    auto code = RSCode::full_length(Tower::build(3, 1, 3), 18);  // r = 9
    CHECK(choose_s(*code, Method::c3) == 2);
    CHECK(choose_s(*code, Method::gw) == 2);
    auto code2 = RSCode::full_length(Tower::build(2, 1, 4), 11);  // r = 5
    CHECK(choose_s(*code2, Method::c2) == 2);
    CHECK(choose_s(*code2, Method::gw) == 2);
    auto code3 = RSCode::full_length(Tower::build(2, 1, 4), 15);  // r = 1
    CHECK_THROWS_AS(choose_s(*code3, Method::c3), PreconditionError);
  }
  SUBCASE("method names") {
    for (auto m : {Method::gw, Method::c1, Method::c2, Method::c3, Method::naive}) CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("c4"), InvalidArgument);
  }
}

TEST_CASE("sweeps") {
  std::vector<SweepConfig> cfgs;
  {
    SweepConfig a;
    a.label = "gf8-c1";
    a.t = 3;
    a.k = 6;
    a.method = Method::c1;
    cfgs.push_back(a);
    SweepConfig b;
    b.label = "gf27-c3";
    b.p = 3;
    b.t = 3;
    b.k = 18;
    b.method = Method::c3;
    cfgs.push_back(b);
    SweepConfig c;
    c.label = "gf16-short";
    c.t = 4;
    c.n = 10;
    c.k = 6;
    c.method = Method::c2;
    cfgs.push_back(c);
    SweepConfig d;
    d.label = "gf16-naive";
    d.t = 4;
    d.k = 10;
    d.method = Method::naive;
    d.failed = 3;
    cfgs.push_back(d);
    SweepConfig bad;
    bad.label = "bad";
    bad.t = 3;
    bad.k = 7;
    bad.method = Method::c1;
    cfgs.push_back(bad);
  }
  const auto one = sweep(cfgs, 3, 1234, 1);
  const auto four = sweep(cfgs, 3, 1234, 4);
  CHECK(report_to_json(one) == report_to_json(four));
  CHECK(report_to_csv(one) == report_to_csv(four));
  const auto other = sweep(cfgs, 3, 1235, 2);
  CHECK(report_to_json(one) != report_to_json(other));

  REQUIRE(one.rows.size() == 5);
  CHECK(one.rows[0].trials.size() == 8 * 3);
  CHECK(one.rows[0].min_subsymbols == 14);
  CHECK(one.rows[0].max_subsymbols == 14);
  CHECK(one.rows[0].gap_subsymbols == 0);
  CHECK(one.rows[1].s == 2);
  CHECK(one.rows[1].max_subsymbols == 26);
  CHECK(one.rows[2].n == 10);
  CHECK(one.rows[3].trials.size() == 3);
  CHECK(one.rows[3].min_subsymbols == 40);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK_FALSE(one.rows[i].error);
    CHECK(one.rows[i].all_verified);
    CHECK(one.rows[i].sound);
    CHECK(one.rows[i].conserved);
    CHECK_FALSE(one.rows[i].wall_ms);
    for (const auto& tr : one.rows[i].trials) CHECK(tr.sent == tr.received);
  }
  REQUIRE(one.rows[4].error);
  CHECK(one.rows[4].error->find("r = n - k >= 2") != std::string::npos);
  CHECK_FALSE(one.ok());

  const auto csv = report_to_csv(one);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("label,method,p,m,t,q,n,k,r,s,failed,trial,subsymbols", 0) == 0);
  std::size_t lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 24 + 27 * 3 + 30 + 3 + 1);

  const auto timed = sweep({cfgs[0]}, 1, 5, 1, true);
  CHECK(timed.rows[0].wall_ms);
  CHECK(timed.ok());

  const auto empty = sweep({}, 3, 1, 2);
  CHECK(empty.rows.empty());
  CHECK(empty.ok());
}
