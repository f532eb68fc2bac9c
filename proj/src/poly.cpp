#include "rsrepair/poly.hpp"

#include <algorithm>
#include <functional>

#include "rsrepair/error.hpp"

namespace rsrepair {

long poly_degree(std::span<const Elem> f) {
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].v != 0) return static_cast<long>(i);
  }
  return -1;
}

std::vector<Elem> poly_trim(std::vector<Elem> f) {
  while (!f.empty() && f.back().v == 0) f.pop_back();
  return f;
}

Elem poly_eval(const Tower& tower, std::span<const Elem> f, Elem x) {
  Elem acc{0};
  for (std::size_t i = f.size(); i-- > 0;) acc = tower.add(tower.mul(acc, x), f[i]);
  return acc;
}

std::vector<Elem> poly_add(const Tower& tower, std::span<const Elem> f, std::span<const Elem> g) {
  std::vector<Elem> out(std::max(f.size(), g.size()), Elem{0});
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = tower.add(out[i], g[i]);
  return poly_trim(std::move(out));
}

std::vector<Elem> poly_mul(const Tower& tower, std::span<const Elem> f, std::span<const Elem> g) {
  if (f.empty() || g.empty()) return {};
  std::vector<Elem> out(f.size() + g.size() - 1, Elem{0});
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].v == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = tower.add(out[i + j], tower.mul(f[i], g[j]));
  }
  return poly_trim(std::move(out));
}

std::vector<Elem> poly_scale(const Tower& tower, Elem c, std::span<const Elem> f) {
  std::vector<Elem> out;
  out.reserve(f.size());
  for (Elem x : f) out.push_back(tower.mul(c, x));
  return poly_trim(std::move(out));
}

std::vector<Elem> poly_from_roots(const Tower& tower, std::span<const Elem> roots) {
  std::vector<Elem> f{Elem{1}};
  for (Elem r : roots) {
    const Elem lin[] = {tower.neg(r), Elem{1}};
    f = poly_mul(tower, f, lin);
  }
  return f;
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n != 0 || k != 0) {
    const std::uint64_t ni = n % p;
    const std::uint64_t ki = k % p;
    if (ki > ni) return 0;
    // C(ni, ki) mod p with small ni < p
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = num * ((ni - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    // den^(p-2) mod p
    std::uint64_t inv = 1;
    std::uint64_t b = den;
    std::uint64_t e = p - 2;
    while (e != 0) {
      if (e & 1U) inv = inv * b % p;
      b = b * b % p;
      e >>= 1U;
    }
    result = result * (num * inv % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

std::vector<Elem> poly_linear_power(const Tower& tower, Elem a, std::uint64_t e) {
  const Elem neg_a = tower.neg(a);
  std::vector<Elem> out(e + 1, Elem{0});
  for (std::uint64_t k = 0; k <= e; ++k) {
    const std::uint32_t c = binomial_mod_p(e, k, tower.p());
    if (c == 0) continue;
    // c as an element of the prime field sits in the lowest digit
    out[k] = tower.mul(Elem{c}, tower.pow(neg_a, e - k));
  }
  return poly_trim(std::move(out));
}

std::pair<std::vector<Elem>, Elem> poly_div_linear(const Tower& tower, std::span<const Elem> f, Elem a) {
  if (f.empty()) return {{}, Elem{0}};
  std::vector<Elem> quotient(f.size() - 1, Elem{0});
  Elem carry{0};
  for (std::size_t i = f.size(); i-- > 0;) {
    const Elem cur = tower.add(f[i], tower.mul(carry, a));
    if (i == 0) return {poly_trim(std::move(quotient)), cur};
    quotient[i - 1] = cur;
    carry = cur;
  }
  return {poly_trim(std::move(quotient)), Elem{0}};
}

Elem linearized_eval(const Tower& tower, std::span<const Elem> coeffs, Elem x) {
  Elem acc{0};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].v == 0) continue;
    acc = tower.add(acc, tower.mul(coeffs[i], tower.frobenius(x, static_cast<std::uint32_t>(i))));
  }
  return acc;
}

std::vector<Elem> subspace_linearized_coeffs(const Tower& tower, std::span<const Elem> generators) {
  std::vector<Elem> c{Elem{1}};
  for (Elem w : generators) {
    tower.check(w);
    const Elem lw = linearized_eval(tower, c, w);
    if (lw.v == 0) throw InvalidArgument("subspace generators are linearly dependent over B");
    const Elem d = tower.pow(lw, tower.q() - 1);
    std::vector<Elem> next(c.size() + 1, Elem{0});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] = tower.sub(next[i], tower.mul(d, c[i]));
      next[i + 1] = tower.add(next[i + 1], tower.frobenius(c[i], 1));
    }
    c = std::move(next);
  }
  return c;
}

std::vector<Elem> span_elements(const Tower& tower, std::span<const Elem> generators) {
  std::vector<Elem> out{Elem{0}};
  const std::uint32_t q = tower.q();
  for (Elem g : generators) {
    const std::size_t prev = out.size();
    out.resize(prev * q);
    for (std::uint32_t a = 1; a < q; ++a) {
      const Elem ag = tower.mul(Elem{a}, g);
      for (std::size_t j = 0; j < prev; ++j) out[a * prev + j] = tower.add(out[j], ag);
    }
  }
  return out;
}

Subspace make_subspace(const Tower& tower, std::vector<Elem> generators) {
  if (generators.size() >= tower.t() + 1) throw InvalidArgument("subspace dimension exceeds t");
  Subspace w;
  w.linearized = subspace_linearized_coeffs(tower, generators);
  w.elements = span_elements(tower, generators);
  w.generators = std::move(generators);
  return w;
}

std::vector<std::vector<Elem>> enumerate_subspaces(const Tower& tower, std::uint32_t s) {
  const std::uint32_t t = tower.t();
  const std::uint32_t q = tower.q();
  std::vector<std::vector<Elem>> out;
  if (s > t) return out;
  // choose pivot columns, then fill the free entries right of each pivot
  std::vector<std::uint32_t> pivots(s);
  std::function<void(std::uint32_t, std::uint32_t)> choose = [&](std::uint32_t idx, std::uint32_t start) {
    if (idx == s) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> free;  // (row, col)
      for (std::uint32_t r = 0; r < s; ++r) {
        for (std::uint32_t c = pivots[r] + 1; c < t; ++c) {
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(r, c);
        }
      }
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < free.size(); ++i) count *= q;
      for (std::uint64_t idx2 = 0; idx2 < count; ++idx2) {
        std::vector<std::vector<Elem>> rows(s, std::vector<Elem>(t, Elem{0}));
        for (std::uint32_t r = 0; r < s; ++r) rows[r][pivots[r]] = Elem{1};
        std::uint64_t v = idx2;
        for (auto [r, c] : free) {
          rows[r][c] = Elem{static_cast<std::uint32_t>(v % q)};
          v /= q;
        }
        std::vector<Elem> gens;
        for (auto& row : rows) gens.push_back(tower.from_coordinates(row));
        out.push_back(std::move(gens));
      }
      return;
    }
    for (std::uint32_t c = start; c < t; ++c) {
      pivots[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
  return out;
}

}  // namespace rsrepair
