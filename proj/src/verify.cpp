#include "rsrepair/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rsrepair/bounds.hpp"
#include "rsrepair/checks.hpp"
#include "rsrepair/error.hpp"
#include "rsrepair/poly.hpp"
#include "rsrepair/render.hpp"
#include "rsrepair/rs_code.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

FieldParams parse_field_params(const std::string& text) {
  FieldParams f;
  bool have_p = false;
  bool have_t = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("field spec items look like p=2, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::uint32_t value = 0;
    try {
      value = static_cast<std::uint32_t>(std::stoul(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument("not a number in '" + item + "'");
    }
    if (key == "p") {
      f.p = value;
      have_p = true;
    } else if (key == "m") {
      f.m = value;
    } else if (key == "t") {
      f.t = value;
      have_t = true;
    } else {
      throw InvalidArgument("unknown field parameter '" + key + "' (expected p, m, t)");
    }
  }
  if (!have_p || !have_t) throw InvalidArgument("field spec needs at least p and t");
  return f;
}

namespace {

using Clock = std::chrono::steady_clock;

class Checker {
 public:
  template <class Msg>
  void expect(bool ok, Msg&& msg) {
    ++cases_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = msg();
    }
  }
  std::uint64_t cases() const { return cases_; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(cases_) + " checks";
    return std::to_string(failures_) + " of " + std::to_string(cases_) + " checks failed; first: " + first_;
  }

 private:
  std::uint64_t cases_ = 0;
  std::uint64_t failures_ = 0;
  std::string first_;
};

std::string fname(const Tower& tw) {
  return "GF(" + std::to_string(tw.p()) + "^" + std::to_string(tw.m() * tw.t()) + ") over GF(" +
         std::to_string(tw.q()) + ")";
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

const std::vector<FieldParams>& lemma_fields() {
  static const std::vector<FieldParams> f = {{2, 1, 2}, {2, 1, 3}, {2, 1, 4}, {2, 1, 5}, {2, 1, 6}, {3, 1, 2},
                                             {3, 1, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {5, 1, 2}, {7, 1, 2}};
  return f;
}

std::vector<FieldParams> fields_for(const VerifyOptions& o, const std::vector<FieldParams>& defaults) {
  if (o.field) return {*o.field};
  return defaults;
}

TowerPtr tower_of(const FieldParams& f) { return Tower::build(f.p, f.m, f.t); }

struct Variant {
  std::string kind;  // gw, c1, c2, c3
  std::uint32_t s;
};

std::vector<Variant> variants(const Tower& tw) {
  std::vector<Variant> out;
  const std::uint32_t t = tw.t();
  if (tw.q() == 2 && t >= 2) out.push_back({"c1", 1});
  for (std::uint32_t s = 1; s < t; ++s) {
    out.push_back({"c2", s});
    out.push_back({"c3", s});
    if (t % (t - s) == 0) out.push_back({"gw", s});
  }
  return out;
}

std::uint64_t variant_r(const Tower& tw, const Variant& v) { return v.kind == "c1" ? 2 : ipow(tw.q(), v.s); }

RepairScheme build(const Variant& v, const CodePtr& code, std::size_t erased) {
  if (v.kind == "c1") return build_construction_1(code, erased);
  if (v.kind == "c2") return build_construction_2(code, erased, v.s);
  if (v.kind == "c3") return build_construction_3(code, erased, v.s);
  return build_gw_scheme(code, erased, v.s);
}

// Helper-rank ceiling claimed for each construction.
std::uint32_t helper_ceiling(const Tower& tw, const Variant& v) { return v.kind == "c1" ? tw.t() - 1 : tw.t() - v.s; }

Elem random_elem(const Tower& tw, std::mt19937_64& rng) { return Elem{static_cast<std::uint32_t>(rng() % tw.order())}; }

Elem random_nonzero(const Tower& tw, std::mt19937_64& rng) {
  return Elem{1 + static_cast<std::uint32_t>(rng() % (tw.order() - 1))};
}

std::vector<Elem> random_message(const Tower& tw, std::size_t k, std::mt19937_64& rng) {
  std::vector<Elem> msg(k);
  for (Elem& c : msg) c = random_elem(tw, rng);
  return msg;
}

// A codeword of a few random monomials; cheap to evaluate on large codes.
std::vector<Elem> sparse_codeword(const RSCode& code, std::mt19937_64& rng) {
  const Tower& tw = code.tower();
  std::vector<std::pair<std::uint64_t, Elem>> terms;
  for (int i = 0; i < 4; ++i) terms.emplace_back(rng() % code.k(), random_elem(tw, rng));
  std::vector<Elem> values;
  values.reserve(code.n());
  for (Elem a : code.points()) {
    Elem v{0};
    for (const auto& [e, c] : terms) v = tw.add(v, tw.mul(c, tw.pow(a, e)));
    values.push_back(v);
  }
  return values;
}

template <class F>
void guarded(Checker& ck, const std::string& where, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    ck.expect(false, [&] { return where + ": " + e.what(); });
  }
}

// ---------------------------------------------------------------- suites

void suite_field(const VerifyOptions& o, Checker& ck) {
  std::mt19937_64 rng(o.seed);
  const std::vector<FieldParams> defaults = {{2, 1, 1}, {2, 1, 3}, {2, 1, 4}, {2, 1, 8}, {3, 1, 3},
                                             {2, 2, 2}, {2, 4, 2}, {3, 2, 2}, {5, 1, 3}, {2, 1, 12}};
  for (const auto& fp : fields_for(o, defaults)) {
    guarded(ck, "field", [&] {
      auto tw = tower_of(fp);
      const std::string name = fname(*tw);
      const std::uint32_t n = tw->order();
      const bool exhaustive = n <= (1U << 12);
      std::vector<Elem> xs;
      if (exhaustive) {
        for (std::uint32_t v = 0; v < n; ++v) xs.push_back(Elem{v});
      } else {
        for (std::uint64_t i = 0; i < 64 * o.samples; ++i) xs.push_back(random_elem(*tw, rng));
      }
      // primitive element order
      const Elem xi = tw->primitive();
      bool prim = tw->pow(xi, n - 1) == Elem{1};
      for (auto f : prime_factors(n - 1)) prim = prim && tw->pow(xi, (n - 1) / f) != Elem{1};
      ck.expect(prim, [&] { return name + ": primitive element has the wrong order"; });

      std::size_t fixed = 0;
      for (Elem x : xs) {
        const Elem tr = tw->trace(x);
        ck.expect(tw->in_base(tr) && tr == tw->trace_by_definition(x),
                  [&] { return name + ": trace of " + std::to_string(x.v) + " wrong"; });
        if (exhaustive && tw->frobenius(x, 1) == x) ++fixed;
        for (std::uint32_t a = 0; a < tw->q(); ++a) {
          const Elem ae{a};
          ck.expect(tw->trace(tw->mul(ae, x)) == tw->base_mul(ae, tr), [&] { return name + ": trace not B-linear"; });
        }
        const Elem y = random_elem(*tw, rng);
        ck.expect(tw->trace(tw->add(x, y)) == tw->add(tr, tw->trace(y)), [&] { return name + ": trace not additive"; });
      }
      if (exhaustive) {
        ck.expect(fixed == tw->q(), [&] { return name + ": Frobenius fixes " + std::to_string(fixed) + " elements"; });
      }
      // bases: polynomial basis and random ones
      std::vector<std::vector<Elem>> bases = {tw->polynomial_basis()};
      while (bases.size() < 6) {
        std::vector<Elem> b(tw->t());
        for (Elem& e : b) e = random_nonzero(*tw, rng);
        if (rank_over_base(*tw, b) == tw->t()) bases.push_back(b);
      }
      for (const auto& b : bases) {
        const auto d = dual_basis(*tw, b);
        ck.expect(dual_basis(*tw, d) == b, [&] { return name + ": dual of dual is not the basis"; });
        for (std::size_t i = 0; i < b.size(); ++i) {
          for (std::size_t j = 0; j < b.size(); ++j) {
            const Elem want{i == j ? 1U : 0U};
            ck.expect(tw->trace(tw->mul(b[i], d[j])) == want, [&] { return name + ": dual basis not trace-orthogonal"; });
          }
        }
        const std::size_t lim = std::min<std::size_t>(xs.size(), 4096);
        for (std::size_t idx = 0; idx < lim; ++idx) {
          const Elem x = xs[idx];
          Elem acc{0};
          for (std::size_t i = 0; i < b.size(); ++i) acc = tw->add(acc, tw->mul(tw->trace(tw->mul(b[i], x)), d[i]));
          ck.expect(acc == x, [&] { return name + ": reconstruction identity fails"; });
        }
        // scaling by a nonzero lambda is a B-linear bijection
        const Elem lam = random_nonzero(*tw, rng);
        std::vector<Elem> s(b.begin(), b.end());
        s.push_back(tw->add(b[0], b.back()));
        std::vector<Elem> scaled;
        for (Elem e : s) scaled.push_back(tw->mul(lam, e));
        ck.expect(rank_over_base(*tw, s) == rank_over_base(*tw, scaled), [&] { return name + ": scaling changed rank"; });
      }
    });
  }
}

void suite_rs(const VerifyOptions& o, Checker& ck) {
  std::mt19937_64 rng(o.seed + 1);
  for (const auto& fp : fields_for(o, lemma_fields())) {
    guarded(ck, "rs", [&] {
      auto tw = tower_of(fp);
      const std::string name = fname(*tw);
      std::vector<CodePtr> codes;
      const std::uint32_t n = tw->order();
      if (n < 3) return;
      codes.push_back(RSCode::full_length(tw, 1 + static_cast<std::uint32_t>(rng() % (n - 1))));
      // shortened: random subset
      std::vector<Elem> all;
      for (std::uint32_t v = 0; v < n; ++v) all.push_back(Elem{v});
      std::shuffle(all.begin(), all.end(), rng);
      const std::size_t sn = 2 + rng() % (n - 2);
      std::vector<Elem> pts(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(sn));
      codes.push_back(RSCode::with_points(tw, pts, 1 + static_cast<std::uint32_t>(rng() % (sn - 1))));
      for (const auto& code : codes) {
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(o.samples, 30); ++i) {
          const auto f = random_message(*tw, code->k(), rng);
          const auto h = random_message(*tw, code->k(), rng);
          const Elem a = random_elem(*tw, rng);
          std::vector<Elem> comb(code->k());
          for (std::size_t j = 0; j < comb.size(); ++j) comb[j] = tw->add(tw->mul(a, f[j]), h[j]);
          const auto cf = encode(*code, f).values;
          const auto ch = encode(*code, h).values;
          const auto cc = encode(*code, comb).values;
          bool lin = true;
          for (std::size_t j = 0; j < cc.size(); ++j) lin = lin && cc[j] == tw->add(tw->mul(a, cf[j]), ch[j]);
          ck.expect(lin, [&] { return name + ": encode is not linear"; });

          const auto g = random_message(*tw, code->r(), rng);
          ck.expect(verify_check(*code, cf, g), [&] { return name + ": check polynomial not orthogonal"; });

          // any k positions determine the codeword
          std::vector<std::size_t> idx(code->n());
          for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
          std::shuffle(idx.begin(), idx.end(), rng);
          std::vector<Elem> xs, ys;
          for (std::size_t j = 0; j < code->k(); ++j) {
            xs.push_back(code->point(idx[j]));
            ys.push_back(cf[idx[j]]);
          }
          for (std::size_t j = code->k(); j < idx.size(); ++j) {
            ck.expect(lagrange_eval(*tw, xs, ys, code->point(idx[j])) == cf[idx[j]],
                      [&] { return name + ": interpolation from k positions failed"; });
          }
        }
        std::vector<Elem> too_big(code->r() + 1, Elem{0});
        too_big.back() = Elem{1};
        bool threw = false;
        try {
          verify_check(*code, encode(*code, std::vector<Elem>(code->k(), Elem{0})).values, too_big);
        } catch (const InvalidCheck&) {
          threw = true;
        }
        ck.expect(threw, [&] { return name + ": degree-r check accepted"; });
      }
    });
  }
}

void suite_fig1(const VerifyOptions& o, Checker& ck, bool& skipped) {
  if (o.field && !(o.field->p == 2 && o.field->m == 1 && o.field->t == 3)) {
    skipped = true;
    return;
  }
  guarded(ck, "fig1", [&] {
    auto tw = Tower::build(2, 1, 3);
    ck.expect(tw->ext_modulus() == std::vector<Elem>{Elem{1}, Elem{1}, Elem{0}, Elem{1}},
              [] { return std::string("GF(8) modulus is not 1 + x + x^3"); });
    auto code = RSCode::full_length(tw, 6);
    const Elem xi = tw->primitive();
    auto scheme = build_construction_1(code, 0, {Elem{1}, xi, tw->pow(xi, 2)});
    // -1 marks a zero entry
    const int expected[3][8] = {{0, -1, 3, 6, 1, 5, 4, 2}, {2, 4, -1, 5, 1, 3, 0, 6}, {4, 1, 6, -1, 0, 3, 5, 2}};
    const std::uint32_t ranks[8] = {3, 2, 2, 2, 2, 2, 2, 2};
    for (std::size_t c = 0; c < 8; ++c) {
      const auto col = scheme.column(c);
      for (std::size_t i = 0; i < 3; ++i) {
        const Elem want = expected[i][c] < 0 ? Elem{0} : tw->pow(xi, static_cast<std::uint64_t>(expected[i][c]));
        ck.expect(col[i] == want, [&] {
          return "g_" + std::to_string(i + 1) + " at column " + std::to_string(c) + " is " + format_elem(*tw, col[i]);
        });
      }
      ck.expect(rank_over_base(*tw, scheme.folded_column(c)) == ranks[c],
                [&] { return "rank at column " + std::to_string(c); });
    }
    ck.expect(check_label(scheme, 0) == "g_1 = x-1" && check_label(scheme, 1) == "g_2 = ξ(x-ξ)" &&
                  check_label(scheme, 2) == "g_3 = ξ^2(x-ξ^2)",
              [] { return std::string("row labels differ from the figure"); });
    const auto prof = bandwidth_profile(scheme);
    ck.expect(prof.total_subsymbols == 14 && prof.total_bits == 14.0, [&] {
      return "total bandwidth " + std::to_string(prof.total_subsymbols);
    });
    // the caption's downloads from the node at xi^5: Tr(xi^4 f) and Tr(f)
    const std::size_t node = *code->index_of(tw->pow(xi, 5));
    const auto col = scheme.folded_column(node);
    std::vector<Elem> caption = {tw->pow(xi, 4), Elem{1}};
    std::vector<Elem> joined = col;
    joined.insert(joined.end(), caption.begin(), caption.end());
    ck.expect(rank_over_base(*tw, caption) == 2 && rank_over_base(*tw, joined) == 2,
              [] { return std::string("caption download pair does not span the xi^5 column"); });
    std::mt19937_64 rng(o.seed + 2);
    const auto plan = plan_repair(scheme);
    for (std::uint64_t i = 0; i < o.samples; ++i) {
      const auto cw = encode(*code, random_message(*tw, 6, rng));
      const auto tr = execute_repair(plan, cw.values);
      ck.expect(tr.subsymbols == 14 && tr.reconstructed == cw.values[0], [] { return std::string("repair failed"); });
    }
  });
}

void suite_bounds(const VerifyOptions&, Checker& ck) {
  guarded(ck, "bounds", [&] {
    const auto fb = integral_lower_bound(14, 16, 2, 4);
    ck.expect(fb.integral_subsymbols == 11 && fb.integral_bits == 44.0 && fb.ell == 2,
              [&] { return "RS(14,10) over GF(16): " + std::to_string(fb.integral_subsymbols); });
    ck.expect(fb.fractional_bits_ceil == 28, [&] { return "fractional ceiling " + std::to_string(fb.fractional_bits_ceil); });
    const auto f1 = integral_lower_bound(8, 2, 3, 2);
    ck.expect(f1.integral_subsymbols == 14 && f1.b_integral, [&] { return "GF(8), r = 2: " + std::to_string(f1.integral_subsymbols); });
    // n = q^t, r = q^s: (n-1)(t-s), and the fractional bound coincides
    for (std::uint64_t q : {2, 3, 4, 5}) {
      for (std::uint32_t t = 2; t <= 6; ++t) {
        const std::uint64_t n = ipow(q, t);
        for (std::uint32_t s = 1; s < t; ++s) {
          const auto b = integral_lower_bound(n, q, t, ipow(q, s));
          ck.expect(b.integral_subsymbols == (n - 1) * (t - s) && b.b_integral,
                    [&] { return "full-length bound for q=" + std::to_string(q) + " t=" + std::to_string(t); });
          ck.expect(std::abs(b.fractional_subsymbols - static_cast<double>((n - 1) * (t - s))) < 1e-6 * static_cast<double>(n),
                    [&] { return std::string("fractional bound differs from integral at r = q^s"); });
        }
      }
    }
    // monotone in r and n, integral >= fractional
    for (std::uint64_t q : {2, 3, 4}) {
      for (std::uint32_t t = 1; t <= 3; ++t) {
        const std::uint64_t order = ipow(q, t);
        for (std::uint64_t n = 2; n <= order; ++n) {
          for (std::uint64_t r = 1; r < n; ++r) {
            const auto b = integral_lower_bound(n, q, t, r);
            ck.expect(static_cast<double>(b.integral_subsymbols) + 1e-9 >= b.fractional_subsymbols,
                      [&] { return std::string("fractional bound above integral"); });
            if (r + 1 < n) {
              ck.expect(integral_lower_bound(n, q, t, r + 1).integral_subsymbols <= b.integral_subsymbols,
                        [&] { return std::string("bound increased with r"); });
            }
            if (n + 1 <= order) {
              ck.expect(integral_lower_bound(n + 1, q, t, r).integral_subsymbols >= b.integral_subsymbols,
                        [&] { return std::string("bound decreased with n"); });
            }
          }
        }
      }
    }
    // GF(256) with B = GF(2), GF(4), GF(16): the gap grows with |B|
    double prev = -1.0;
    for (auto [q, t] : {std::pair<std::uint64_t, std::uint32_t>{2, 8}, {4, 4}, {16, 2}}) {
      const auto b = integral_lower_bound(14, q, t, 4);
      const double gap = b.integral_bits - b.fractional_bits;
      ck.expect(gap > prev, [&] { return "gap did not grow at q = " + std::to_string(q); });
      prev = gap;
    }
  });
}

void suite_oracle(const VerifyOptions&, Checker& ck) {
  guarded(ck, "oracle", [&] {
    for (std::uint64_t q : {2, 3, 4}) {
      for (std::uint32_t t = 1; t <= 4; ++t) {
        const std::uint64_t order = ipow(q, t);
        if (order < 2) continue;
        BandwidthOracle oracle(q, t, order);
        for (std::uint64_t n = 2; n <= order; ++n) {
          for (std::uint64_t r = 1; r < n; ++r) {
            const auto closed = integral_lower_bound(n, q, t, r).integral_subsymbols;
            const auto brute = oracle.min_bandwidth(n, r);
            ck.expect(closed == brute, [&] {
              return "q=" + std::to_string(q) + " t=" + std::to_string(t) + " n=" + std::to_string(n) +
                     " r=" + std::to_string(r) + ": closed " + std::to_string(closed) + " vs " + std::to_string(brute);
            });
          }
        }
      }
    }
    // some optimal allocation is balanced (levels within one of each other)
    for (std::uint64_t q : {2, 3}) {
      for (std::uint32_t t = 1; t <= 3; ++t) {
        const std::uint64_t order = ipow(q, t);
        for (std::uint64_t n = 2; n <= std::min<std::uint64_t>(order, 12); ++n) {
          for (std::uint64_t r = 1; r < n; ++r) {
            const auto occ = optimal_occupancies(n, q, t, r);
            bool balanced = false;
            for (const auto& c : occ) {
              std::uint32_t lo = t + 1, hi = 0;
              for (std::uint32_t b = 0; b <= t; ++b) {
                if (c[b]) {
                  lo = std::min(lo, b);
                  hi = std::max(hi, b);
                }
              }
              balanced = balanced || hi - lo <= 1;
            }
            ck.expect(balanced && !occ.empty(), [&] { return std::string("no balanced optimum"); });
          }
        }
      }
    }
  });
}

void suite_lemma1(const VerifyOptions& o, Checker& ck) {
  std::mt19937_64 rng(o.seed + 3);
  for (const auto& fp : fields_for(o, lemma_fields())) {
    guarded(ck, "lemma1", [&] {
      auto tw = tower_of(fp);
      if (tw->t() < 2) return;
      for (std::uint32_t s = 1; s < tw->t(); ++s) {
        if (tw->t() % (tw->t() - s) != 0) continue;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(o.samples, 50); ++i) {
          const Elem u = random_nonzero(*tw, rng);
          const Elem a = random_elem(*tw, rng);
          const TraceCheck g = gw_check(*tw, u, a, s);
          ck.expect(check_degree(*tw, g) == ipow(tw->q(), s) - 1, [&] { return fname(*tw) + ": degree"; });
          ck.expect(evaluate(*tw, g, a) == u, [&] { return fname(*tw) + ": g(alpha) != u"; });
          // against the defining quotient Tr(u(x - a)) / (x - a) at a few points
          for (int j = 0; j < 4; ++j) {
            const Elem x = random_elem(*tw, rng);
            if (x == a) continue;
            const Elem d = tw->sub(x, a);
            const Elem want = tw->div(tw->trace_to_subfield(tw->mul(u, d), tw->t() - s), d);
            ck.expect(evaluate(*tw, g, x) == want, [&] { return fname(*tw) + ": closed form differs from quotient"; });
          }
        }
      }
    });
  }
}

void suite_ranks(const VerifyOptions& o, Checker& ck, bool helpers) {
  for (const auto& fp : fields_for(o, lemma_fields())) {
    guarded(ck, helpers ? "helper-rank" : "rank-at-erased", [&] {
      auto tw = tower_of(fp);
      if (tw->order() > 4096) throw CapExceeded("rank suites are exhaustive; use a field with |F| <= 4096");
      for (const auto& v : variants(*tw)) {
        const std::uint64_t r = variant_r(*tw, v);
        if (r >= tw->order()) continue;
        auto code = RSCode::full_length(tw, static_cast<std::uint32_t>(tw->order() - r));
        for (std::size_t e = 0; e < code->n(); ++e) {
          const auto scheme = build(v, code, e);
          if (!helpers) {
            const auto rk = rank_over_base(*tw, scheme.column(e));
            ck.expect(rk == tw->t(), [&] { return fname(*tw) + " " + v.kind + ": rank " + std::to_string(rk) + " at alpha*"; });
            continue;
          }
          const std::uint32_t cap = helper_ceiling(*tw, v);
          for (std::size_t h = 0; h < code->n(); ++h) {
            if (h == e) continue;
            const auto rk = rank_over_base(*tw, scheme.column(h));
            ck.expect(rk <= cap, [&] {
              return fname(*tw) + " " + v.kind + " s=" + std::to_string(v.s) + ": helper rank " + std::to_string(rk);
            });
          }
        }
      }
    });
  }
}

void suite_lemma7(const VerifyOptions& o, Checker& ck) {
  for (const auto& fp : fields_for(o, lemma_fields())) {
    guarded(ck, "lemma7", [&] {
      auto tw = tower_of(fp);
      if (tw->order() > 64 && !o.field) return;
      if (tw->order() > 1024) throw CapExceeded("lemma7 enumerates all subspaces; use |F| <= 1024");
      for (std::uint32_t s = 1; s < tw->t(); ++s) {
        for (auto gens : enumerate_subspaces(*tw, s)) {
          const Subspace w = make_subspace(*tw, gens);
          std::set<std::uint32_t> members;
          for (Elem x : w.elements) members.insert(x.v);
          std::set<std::uint32_t> kernel;
          std::vector<Elem> image;
          for (std::uint32_t v = 0; v < tw->order(); ++v) {
            const Elem x{v};
            const Elem lx = linearized_eval(*tw, w.linearized, x);
            // the q-polynomial agrees with the product over W
            Elem prod{1};
            for (Elem m : w.elements) prod = tw->mul(prod, tw->sub(x, m));
            ck.expect(lx == prod, [&] { return fname(*tw) + ": L_W differs from its product form"; });
            if (lx.v == 0) kernel.insert(v);
            image.push_back(lx);
          }
          ck.expect(kernel == members, [&] { return fname(*tw) + ": kernel of L_W is not W"; });
          const auto dim = rank_over_base(*tw, image);
          ck.expect(dim == tw->t() - s, [&] { return fname(*tw) + ": image dimension " + std::to_string(dim); });
        }
      }
    });
  }
}

void suite_repair(const VerifyOptions& o, Checker& ck) {
  std::mt19937_64 rng(o.seed + 4);
  // exhaustive over messages for GF(4) and GF(8), full length
  if (!o.field || (o.field->p == 2 && o.field->m == 1 && o.field->t <= 3)) {
    for (std::uint32_t t : {2U, 3U}) {
      if (o.field && o.field->t != t) continue;
      guarded(ck, "repair", [&] {
        auto tw = Tower::build(2, 1, t);
        for (const auto& v : variants(*tw)) {
          const std::uint64_t r = variant_r(*tw, v);
          auto code = RSCode::full_length(tw, static_cast<std::uint32_t>(tw->order() - r));
          std::vector<RepairPlan> plans;
          for (std::size_t e = 0; e < code->n(); ++e) plans.push_back(plan_repair(build(v, code, e)));
          const std::uint64_t total = ipow(tw->order(), code->k());
          std::vector<Elem> msg(code->k());
          for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t x = idx;
            for (Elem& c : msg) {
              c = Elem{static_cast<std::uint32_t>(x % tw->order())};
              x /= tw->order();
            }
            const auto cw = encode(*code, msg);
            for (const auto& plan : plans) {
              const auto tr = execute_repair(plan, cw.values);
              ck.expect(tr.reconstructed == cw.values[plan.erased], [] { return std::string("exhaustive repair"); });
            }
          }
        }
      });
    }
  }
  // random messages, full length and shortened
  for (const auto& fp : fields_for(o, lemma_fields())) {
    guarded(ck, "repair", [&] {
      auto tw = tower_of(fp);
      if (tw->order() > 4096) throw CapExceeded("repair suite runs every position; use |F| <= 4096");
      for (const auto& v : variants(*tw)) {
        const std::uint64_t r = variant_r(*tw, v);
        if (r >= tw->order()) continue;
        std::vector<std::uint64_t> lengths = {tw->order()};
        for (int i = 0; i < 2; ++i) lengths.push_back(r + 1 + rng() % (tw->order() - r));
        for (std::uint64_t n : lengths) {
          auto full = RSCode::full_length(tw, 1);
          std::vector<Elem> pts(full->points().begin(), full->points().begin() + static_cast<std::ptrdiff_t>(n));
          auto code = n == tw->order() ? RSCode::full_length(tw, static_cast<std::uint32_t>(n - r))
                                       : RSCode::with_points(tw, pts, static_cast<std::uint32_t>(n - r));
          const std::uint64_t msgs = std::max<std::uint64_t>(1, o.samples / 10);
          std::vector<std::vector<Elem>> words;
          for (std::uint64_t i = 0; i < msgs; ++i) words.push_back(encode(*code, random_message(*tw, code->k(), rng)).values);
          for (std::size_t e = 0; e < code->n(); ++e) {
            const auto plan = plan_repair(build(v, code, e));
            for (const auto& w : words) {
              const auto tr = execute_repair(plan, w);
              ck.expect(tr.reconstructed == w[e], [&] { return fname(*tw) + " " + v.kind + ": repair mismatch"; });
            }
          }
        }
      }
    });
  }
}

struct SweepCase {
  std::uint64_t q;
  std::uint32_t p, m, t;
};

std::vector<SweepCase> sweep_cases(const VerifyOptions& o) {
  std::vector<SweepCase> out;
  if (o.field) {
    out.push_back({ipow(o.field->p, o.field->m), o.field->p, o.field->m, o.field->t});
    return out;
  }
  for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const std::uint64_t q = ipow(p, m);
    for (std::uint32_t t = 2; t <= 8; ++t) {
      if (ipow(q, t) > o.sweep_order_cap) break;
      out.push_back({q, p, m, t});
    }
  }
  return out;
}

void suite_corollary1(const VerifyOptions& o, Checker& ck) {
  std::mt19937_64 rng(o.seed + 5);
  for (const auto& c : sweep_cases(o)) {
    guarded(ck, "corollary1", [&] {
      auto tw = Tower::build(c.p, c.m, c.t);
      const std::uint64_t n = tw->order();
      for (std::uint32_t s = 1; s < c.t; ++s) {
        auto code = RSCode::full_length(tw, static_cast<std::uint32_t>(n - ipow(c.q, s)));
        const std::uint64_t want = (n - 1) * (c.t - s);
        const auto bound = integral_lower_bound(n, c.q, c.t, code->r());
        ck.expect(bound.integral_subsymbols == want, [&] { return fname(*tw) + ": bound differs from (n-1)(t-s)"; });
        const std::size_t e = rng() % n;
        for (const auto& scheme : {build_construction_2(code, e, s), build_construction_3(code, e, s)}) {
          const auto prof = bandwidth_profile(scheme);
          ck.expect(prof.total_subsymbols == want, [&] {
            return fname(*tw) + " s=" + std::to_string(s) + " " + std::string(to_string(scheme.provenance().kind)) +
                   ": bandwidth " + std::to_string(prof.total_subsymbols) + " != " + std::to_string(want);
          });
          const auto w = sparse_codeword(*code, rng);
          ck.expect(execute_repair(scheme, w).reconstructed == w[e], [] { return std::string("repair mismatch"); });
        }
      }
    });
  }
}

void suite_gw_parity(const VerifyOptions& o, Checker& ck) {
  std::mt19937_64 rng(o.seed + 6);
  for (const auto& c : sweep_cases(o)) {
    guarded(ck, "gw-parity", [&] {
      auto tw = Tower::build(c.p, c.m, c.t);
      const std::uint64_t n = tw->order();
      for (std::uint32_t s = 1; s < c.t; ++s) {
        auto code = RSCode::full_length(tw, static_cast<std::uint32_t>(n - ipow(c.q, s)));
        const std::uint64_t want = (n - 1) * (c.t - s);
        const std::size_t e = rng() % n;
        if (c.t % (c.t - s) == 0) {
          const auto scheme = build_gw_scheme(code, e, s);
          const auto prof = bandwidth_profile(scheme);
          ck.expect(prof.total_subsymbols == want, [&] { return fname(*tw) + ": trace scheme bandwidth"; });
          const double bits = static_cast<double>(want) * std::log2(static_cast<double>(c.q));
          ck.expect(std::abs(prof.total_bits - bits) < 1e-9 * bits, [] { return std::string("trace scheme bits"); });
          const auto w = sparse_codeword(*code, rng);
          ck.expect(execute_repair(scheme, w).reconstructed == w[e], [] { return std::string("repair mismatch"); });
        } else {
          bool refused = false;
          try {
            build_gw_scheme(code, e, s);
          } catch (const PreconditionError&) {
            refused = true;
          }
          ck.expect(refused, [&] { return fname(*tw) + ": trace scheme accepted (t - s) not dividing t"; });
          ck.expect(bandwidth_profile(build_construction_3(code, e, s)).total_subsymbols == want,
                    [] { return std::string("construction 3 fallback"); });
        }
      }
    });
  }
}

struct Suite {
  const char* name;
  std::function<void(const VerifyOptions&, Checker&, bool&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"field", [](const VerifyOptions& o, Checker& c, bool&) { suite_field(o, c); }},
      {"rs", [](const VerifyOptions& o, Checker& c, bool&) { suite_rs(o, c); }},
      {"fig1", [](const VerifyOptions& o, Checker& c, bool& sk) { suite_fig1(o, c, sk); }},
      {"bounds", [](const VerifyOptions& o, Checker& c, bool&) { suite_bounds(o, c); }},
      {"oracle", [](const VerifyOptions& o, Checker& c, bool&) { suite_oracle(o, c); }},
      {"lemma1", [](const VerifyOptions& o, Checker& c, bool&) { suite_lemma1(o, c); }},
      {"rank-at-erased", [](const VerifyOptions& o, Checker& c, bool&) { suite_ranks(o, c, false); }},
      {"helper-rank", [](const VerifyOptions& o, Checker& c, bool&) { suite_ranks(o, c, true); }},
      {"lemma7", [](const VerifyOptions& o, Checker& c, bool&) { suite_lemma7(o, c); }},
      {"repair", [](const VerifyOptions& o, Checker& c, bool&) { suite_repair(o, c); }},
      {"corollary1", [](const VerifyOptions& o, Checker& c, bool&) { suite_corollary1(o, c); }},
      {"gw-parity", [](const VerifyOptions& o, Checker& c, bool&) { suite_gw_parity(o, c); }},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.name);
  return out;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  const auto names = suite_names();
  for (const auto& n : options.only) {
    if (std::find(names.begin(), names.end(), n) == names.end()) {
      throw InvalidArgument("unknown suite '" + n + "'");
    }
  }
  if (options.field) Tower::build(options.field->p, options.field->m, options.field->t);
  std::vector<SuiteResult> out;
  for (const auto& s : suites()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), s.name) == options.only.end()) {
      continue;
    }
    SuiteResult res;
    res.name = s.name;
    Checker ck;
    const auto start = Clock::now();
    s.run(options, ck, res.skipped);
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    res.cases = ck.cases();
    res.passed = ck.ok();
    res.detail = res.skipped ? "skipped for this field" : ck.summary();
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace rsrepair
