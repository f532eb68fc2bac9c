#include "rsrepair/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rsrepair/error.hpp"
#include "rsrepair/field.hpp"

namespace rsrepair {

namespace {

constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint64_t>::max();

BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

void validate(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r) {
  if (q < 2 || prime_factors(q).size() != 1) throw InvalidArgument("q must be a prime power, got " + std::to_string(q));
  if (t < 1) throw InvalidArgument("t must be at least 1");
  if (n < 2) throw InvalidArgument("bounds need n >= 2, got n = " + std::to_string(n));
  if (BigInt(n) > big_pow(q, t)) throw InvalidArgument("n = " + std::to_string(n) + " exceeds |F| = q^t");
  if (r < 1 || r >= n) {
    throw InvalidArgument("need 1 <= r < n, got r = " + std::to_string(r) + ", n = " + std::to_string(n));
  }
}

// (r-1)(q^t - 1) + (n-1): the feasibility budget scaled by q^t.
BigInt scaled_budget(std::uint64_t n, const BigInt& order, std::uint64_t r) {
  return BigInt(r - 1) * (order - 1) + BigInt(n - 1);
}

bool is_power_of_two(const BigInt& x) { return x > 0 && (x & (x - 1)) == 0; }

std::uint64_t log2_exact(BigInt x) {
  std::uint64_t e = 0;
  while (x > 1) {
    x >>= 1;
    ++e;
  }
  return e;
}

}  // namespace

BoundReport integral_lower_bound(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r) {
  validate(n, q, t, r);
  BoundReport rep;
  rep.n = n;
  rep.q = q;
  rep.t = t;
  rep.r = r;
  const BigInt order = big_pow(q, t);
  const BigInt budget = scaled_budget(n, order, r);
  rep.L = Rational(budget, order);

  // q^e <= (n-1)/L  <=>  q^e * budget <= (n-1) * q^t
  const BigInt rhs = BigInt(n - 1) * order;
  BigInt qe = 1;
  std::uint32_t e = 0;
  while (e < t && qe * q * budget <= rhs) {
    qe *= q;
    ++e;
  }
  rep.b_floor = e;
  rep.b_integral = (qe * budget == rhs);
  rep.b_ceil = rep.b_integral ? e : e + 1;

  if (rep.b_integral) {
    rep.ell = n - 1;
  } else {
    const Rational lo = Rational(1, big_pow(q, rep.b_floor));
    const Rational hi = Rational(1, big_pow(q, rep.b_ceil));
    const Rational x = (rep.L - Rational(n - 1) * hi) / (lo - hi);
    const BigInt fl = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    rep.ell = static_cast<std::uint64_t>(fl);
  }
  rep.integral_subsymbols = rep.ell * rep.b_floor + (n - 1 - rep.ell) * rep.b_ceil;

  rep.bits_per_subsymbol = std::log2(static_cast<double>(q));
  rep.bits_exact = is_power_of_two(BigInt(q));
  rep.integral_bits = static_cast<double>(rep.integral_subsymbols) * rep.bits_per_subsymbol;

  // X = (n-1)/L; fractional bits = (n-1) log2 X
  const Rational ratio = Rational(n - 1) / rep.L;
  const BigInt num = boost::multiprecision::numerator(ratio);
  const BigInt den = boost::multiprecision::denominator(ratio);
  const double log2x = std::log2(static_cast<double>(num)) - std::log2(static_cast<double>(den));
  rep.b_ave = log2x / rep.bits_per_subsymbol;
  rep.fractional_subsymbols = static_cast<double>(n - 1) * rep.b_ave;
  rep.fractional_bits = static_cast<double>(n - 1) * log2x;
  rep.fractional_bits_integral = is_power_of_two(num) && is_power_of_two(den);
  if (rep.fractional_bits_integral) {
    const std::uint64_t exact = (n - 1) * (log2_exact(num) - log2_exact(den));
    rep.fractional_bits = static_cast<double>(exact);
    rep.fractional_bits_ceil = exact;
  } else {
    rep.fractional_bits_ceil = static_cast<std::uint64_t>(std::ceil(rep.fractional_bits));
  }
  return rep;
}

BoundReport fractional_lower_bound(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r) {
  return integral_lower_bound(n, q, t, r);
}

BandwidthOracle::BandwidthOracle(std::uint64_t q, std::uint32_t t, std::uint64_t n_max, const OracleLimits& limits)
    : q_(q), t_(t), n_max_(n_max) {
  if (q < 2 || t < 1 || n_max < 2) throw InvalidArgument("oracle needs q >= 2, t >= 1, n_max >= 2");
  const BigInt order = big_pow(q, t);
  if (BigInt(n_max) > order) throw InvalidArgument("n_max exceeds q^t");
  if ((n_max - 1) * t > limits.max_cells) {
    throw CapExceeded("brute-force oracle limited to (n - 1) t <= " + std::to_string(limits.max_cells) + ", got " +
                      std::to_string((n_max - 1) * t));
  }
  if (order * n_max >= BigInt(kUnreachable / 2)) throw CapExceeded("q^t (n - 1) too large for the oracle");
  order_ = static_cast<std::uint64_t>(order);

  std::vector<std::uint64_t> weight(t + 1);
  for (std::uint32_t b = 0; b <= t; ++b) weight[b] = static_cast<std::uint64_t>(big_pow(q, t - b));

  best_.resize(n_max);
  best_[0] = {0};
  for (std::uint64_t j = 1; j < n_max; ++j) {
    const auto& prev = best_[j - 1];
    auto& cur = best_[j];
    cur.assign(j * t + 1, kUnreachable);
    for (std::size_t s = 0; s < prev.size(); ++s) {
      if (prev[s] == kUnreachable) continue;
      for (std::uint32_t b = 0; b <= t; ++b) {
        const std::uint64_t w = prev[s] + weight[b];
        if (w < cur[s + b]) cur[s + b] = w;
      }
    }
  }
}

std::uint64_t BandwidthOracle::min_bandwidth(std::uint64_t n, std::uint64_t r) const {
  if (n < 2 || n > n_max_) throw InvalidArgument("n outside the oracle's range");
  if (r < 1 || r >= n) throw InvalidArgument("need 1 <= r < n");
  const std::uint64_t budget = (r - 1) * (order_ - 1) + (n - 1);
  const auto& row = best_[n - 1];
  for (std::size_t s = 0; s < row.size(); ++s) {
    if (row[s] <= budget) return s;
  }
  throw ConsistencyError("oracle found no feasible allocation");
}

std::uint64_t brute_force_min_bandwidth(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r,
                                        const OracleLimits& limits) {
  validate(n, q, t, r);
  return BandwidthOracle(q, t, n, limits).min_bandwidth(n, r);
}

std::vector<std::vector<std::uint64_t>> optimal_occupancies(std::uint64_t n, std::uint64_t q, std::uint32_t t,
                                                            std::uint64_t r, std::uint64_t max_vectors) {
  validate(n, q, t, r);
  BigInt count = 1;
  for (std::uint32_t i = 1; i <= t; ++i) count = count * (n - 1 + i) / i;
  if (count > max_vectors) {
    throw CapExceeded("occupancy enumeration would visit " + count.str() + " vectors (cap " +
                      std::to_string(max_vectors) + ")");
  }
  const BigInt order = big_pow(q, t);
  const BigInt budget = scaled_budget(n, order, r);
  std::vector<BigInt> weight(t + 1);
  for (std::uint32_t b = 0; b <= t; ++b) weight[b] = big_pow(q, t - b);

  std::vector<std::vector<std::uint64_t>> best;
  std::uint64_t best_sum = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> c(t + 1, 0);
  // c_0..c_{t-1} chosen freely, c_t takes the rest
  auto rec = [&](auto&& self, std::uint32_t level, std::uint64_t left) -> void {
    if (level == t) {
      c[t] = left;
      BigInt w = 0;
      std::uint64_t sum = 0;
      for (std::uint32_t b = 0; b <= t; ++b) {
        w += weight[b] * c[b];
        sum += c[b] * b;
      }
      if (w > budget) return;
      if (sum < best_sum) {
        best_sum = sum;
        best.clear();
      }
      if (sum == best_sum) best.push_back(c);
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      c[level] = v;
      self(self, level + 1, left - v);
    }
    c[level] = 0;
  };
  rec(rec, 0, n - 1);
  return best;
}

}  // namespace rsrepair
