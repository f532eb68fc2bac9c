#pragma once

// Reference arithmetic for the tests: schoolbook polynomials over GF(p), no
// tables, no packing tricks beyond the documented digit layout of Elem.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "rsrepair/field.hpp"

namespace oracle {

using Poly = std::vector<int>;  // over GF(p), low degree first

inline Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline int mod(long v, int p) { return static_cast<int>(((v % p) + p) % p); }

inline Poly pmul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + long(a[i]) * b[j], p);
  }
  return trim(r);
}

// remainder of a modulo a monic polynomial
inline Poly pmod(Poly a, const Poly& m, int p) {
  a = trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const int c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - long(c) * m[i], p);
    a = trim(a);
  }
  return a;
}

inline bool irreducible_by_trial_division(const Poly& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  // every monic g with 1 <= deg g <= d/2
  for (int dg = 1; dg <= d / 2; ++dg) {
    long count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      Poly g(dg + 1, 0);
      long x = idx;
      for (int i = 0; i < dg; ++i) {
        g[i] = static_cast<int>(x % p);
        x /= p;
      }
      g[dg] = 1;
      if (pmod(f, g, p).empty()) return false;
    }
  }
  return true;
}

/// GF(p)[x]/(base) then B[y]/(ext), all by schoolbook arithmetic.
class NaiveTower {
 public:
  using B = Poly;                 // m digits
  using F = std::vector<B>;       // t coordinates

  NaiveTower(int p, int m, int t, Poly base, std::vector<Poly> ext)
      : p_(p), m_(m), t_(t), base_(std::move(base)), ext_(std::move(ext)) {}

  static NaiveTower from(const rsrepair::Tower& tw) {
    Poly base;
    for (auto c : tw.base_modulus()) base.push_back(static_cast<int>(c));
    std::vector<Poly> ext;
    for (auto c : tw.ext_modulus()) ext.push_back(digits(c.v, tw.p(), tw.m()));
    return NaiveTower(tw.p(), tw.m(), tw.t(), base, ext);
  }

  static Poly digits(std::uint32_t v, std::uint32_t p, std::uint32_t n) {
    Poly d(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      d[i] = static_cast<int>(v % p);
      v /= p;
    }
    return d;
  }

  F to(rsrepair::Elem e) const {
    F out(t_);
    std::uint32_t v = e.v;
    for (int i = 0; i < t_; ++i) {
      out[i] = Poly(m_);
      for (int j = 0; j < m_; ++j) {
        out[i][j] = static_cast<int>(v % p_);
        v /= p_;
      }
    }
    return out;
  }

  rsrepair::Elem from(const F& f) const {
    std::uint32_t v = 0;
    std::uint32_t scale = 1;
    for (int i = 0; i < t_; ++i) {
      for (int j = 0; j < m_; ++j) {
        const int c = j < static_cast<int>(f[i].size()) ? f[i][j] : 0;
        v += static_cast<std::uint32_t>(c) * scale;
        scale *= p_;
      }
    }
    return rsrepair::Elem{v};
  }

  B badd(const B& a, const B& b) const {
    B r(m_);
    for (int i = 0; i < m_; ++i) r[i] = mod(long(at(a, i)) + at(b, i), p_);
    return r;
  }
  B bneg(const B& a) const {
    B r(m_);
    for (int i = 0; i < m_; ++i) r[i] = mod(-long(at(a, i)), p_);
    return r;
  }
  B bmul(const B& a, const B& b) const {
    B r = pmod(pmul(trim(a), trim(b), p_), base_, p_);
    r.resize(m_, 0);
    return r;
  }
  bool bzero(const B& a) const {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
  }

  F add(const F& a, const F& b) const {
    F r(t_);
    for (int i = 0; i < t_; ++i) r[i] = badd(a[i], b[i]);
    return r;
  }
  F sub(const F& a, const F& b) const {
    F r(t_);
    for (int i = 0; i < t_; ++i) r[i] = badd(a[i], bneg(b[i]));
    return r;
  }
  F mul(const F& a, const F& b) const {
    std::vector<B> prod(2 * t_ - 1, B(m_, 0));
    for (int i = 0; i < t_; ++i) {
      for (int j = 0; j < t_; ++j) prod[i + j] = badd(prod[i + j], bmul(a[i], b[j]));
    }
    // reduce by the monic ext modulus, highest degree first
    for (int d = 2 * t_ - 2; d >= t_; --d) {
      const B c = prod[d];
      if (bzero(c)) continue;
      for (int i = 0; i <= t_; ++i) prod[d - t_ + i] = badd(prod[d - t_ + i], bneg(bmul(c, ext_b(i))));
    }
    prod.resize(t_);
    return prod;
  }
  F one() const {
    F r(t_, B(m_, 0));
    r[0][0] = 1;
    return r;
  }
  F pow(F a, std::uint64_t e) const {
    F r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t q() const {
    std::uint64_t v = 1;
    for (int i = 0; i < m_; ++i) v *= p_;
    return v;
  }
  std::uint64_t order() const {
    std::uint64_t v = 1;
    for (int i = 0; i < t_; ++i) v *= q();
    return v;
  }
  /// sum_{i<t} x^(q^i), by repeated q-th powers.
  F trace(const F& x) const {
    F acc(t_, B(m_, 0));
    F y = x;
    for (int i = 0; i < t_; ++i) {
      acc = add(acc, y);
      y = pow(y, q());
    }
    return acc;
  }

  // Elem-level conveniences
  rsrepair::Elem emul(rsrepair::Elem a, rsrepair::Elem b) const { return from(mul(to(a), to(b))); }
  rsrepair::Elem eadd(rsrepair::Elem a, rsrepair::Elem b) const { return from(add(to(a), to(b))); }
  rsrepair::Elem esub(rsrepair::Elem a, rsrepair::Elem b) const { return from(sub(to(a), to(b))); }
  rsrepair::Elem epow(rsrepair::Elem a, std::uint64_t e) const { return from(pow(to(a), e)); }
  rsrepair::Elem etrace(rsrepair::Elem a) const { return from(trace(to(a))); }
  rsrepair::Elem einv(rsrepair::Elem a) const { return epow(a, order() - 2); }

 private:
  static int at(const B& a, int i) { return i < static_cast<int>(a.size()) ? a[i] : 0; }
  B ext_b(int i) const {
    B r = ext_[i];
    r.resize(m_, 0);
    return r;
  }

  int p_, m_, t_;
  Poly base_;
  std::vector<Poly> ext_;
};

/// Dimension over B = GF(q) of span(S), by listing every B-combination.
/// Only for tiny inputs: q^|S| sums.
inline std::size_t rank_by_enumeration(const NaiveTower& nt, const std::vector<rsrepair::Elem>& s) {
  std::set<std::uint32_t> span = {0};
  const std::uint32_t q = static_cast<std::uint32_t>(nt.q());
  for (rsrepair::Elem g : s) {
    std::set<std::uint32_t> next;
    for (std::uint32_t v : span) {
      for (std::uint32_t a = 0; a < q; ++a) next.insert(nt.eadd(rsrepair::Elem{v}, nt.emul(rsrepair::Elem{a}, g)).v);
    }
    span = std::move(next);
  }
  std::size_t r = 0;
  std::size_t size = 1;
  while (size < span.size()) {
    size *= q;
    ++r;
  }
  return r;
}

/// Dense polynomial over F given as Elem coefficients, evaluated with the naive field.
inline rsrepair::Elem eval(const NaiveTower& nt, const std::vector<rsrepair::Elem>& f, rsrepair::Elem x) {
  rsrepair::Elem acc{0};
  rsrepair::Elem xp{1};
  for (auto c : f) {
    acc = nt.eadd(acc, nt.emul(c, xp));
    xp = nt.emul(xp, x);
  }
  return acc;
}

inline std::vector<rsrepair::Elem> dense_mul(const NaiveTower& nt, const std::vector<rsrepair::Elem>& a,
                                             const std::vector<rsrepair::Elem>& b) {
  std::vector<rsrepair::Elem> r(a.size() + b.size() - 1, rsrepair::Elem{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = nt.eadd(r[i + j], nt.emul(a[i], b[j]));
  }
  return r;
}

/// Minimum of sum b_i over every vector in {0..t}^(n-1) with
/// sum q^(t - b_i) <= (r-1)(q^t - 1) + (n-1). Literal enumeration.
inline std::uint64_t min_bandwidth_by_enumeration(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r) {
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < t; ++i) order *= q;
  const std::uint64_t budget = (r - 1) * (order - 1) + (n - 1);
  std::vector<std::uint64_t> w(t + 1);
  for (std::uint32_t b = 0; b <= t; ++b) {
    w[b] = 1;
    for (std::uint32_t i = b; i < t; ++i) w[b] *= q;
  }
  std::vector<std::uint32_t> b(n - 1, 0);
  std::uint64_t best = ~std::uint64_t{0};
  while (true) {
    std::uint64_t weight = 0, sum = 0;
    for (auto x : b) {
      weight += w[x];
      sum += x;
    }
    if (weight <= budget) best = std::min(best, sum);
    std::size_t i = 0;
    while (i < b.size() && b[i] == t) b[i++] = 0;
    if (i == b.size()) break;
    ++b[i];
  }
  return best;
}

}  // namespace oracle
