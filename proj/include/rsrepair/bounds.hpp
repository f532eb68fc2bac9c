#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rsrepair {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integral and fractional lower bounds for linear repair of RS(A, k) with
/// |A| = n over GF(q^t), repaired over B = GF(q).
struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::uint32_t t = 0;
  std::uint64_t r = 0;

  Rational L;                      // ((r-1)(q^t-1) + (n-1)) / q^t
  std::uint32_t b_floor = 0;       // floor(b_AVE), exact
  std::uint32_t b_ceil = 0;        // ceil(b_AVE), exact
  bool b_integral = false;
  double b_ave = 0.0;              // log_q((n-1)/L), display only
  std::uint64_t ell = 0;

  std::uint64_t integral_subsymbols = 0;
  double integral_bits = 0.0;
  double fractional_subsymbols = 0.0;  // (n-1) b_AVE
  double fractional_bits = 0.0;
  std::uint64_t fractional_bits_ceil = 0;
  bool fractional_bits_integral = false;  // (n-1)/L is a power of two
  bool bits_exact = false;                // q is a power of two
  double bits_per_subsymbol = 0.0;        // log2 q
};

/// Closed form: ell floor(b_AVE) + (n - 1 - ell) ceil(b_AVE) sub-symbols.
/// Requires q a prime power, t >= 1, 2 <= n <= q^t and 1 <= r < n.
BoundReport integral_lower_bound(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r);

/// Same report; the fractional fields are the ones of interest.
BoundReport fractional_lower_bound(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r);

/// Limits for the exhaustive solver.
struct OracleLimits {
  std::uint64_t max_cells = 4096;  // (n - 1) * t
};

/// Exact solver for
///   min sum b_i  over b_i in {0..t}, i < n-1,  s.t.  sum q^(t - b_i) <= (r-1)(q^t-1) + (n-1),
/// which is the feasibility condition scaled by q^t. Dynamic programming over
/// helpers: best[j][S] is the least weight sum q^(t - b_i) of j helpers with
/// sum b_i = S. The table does not depend on r, so one instance answers every
/// r for every n up to n_max.
class BandwidthOracle {
 public:
  BandwidthOracle(std::uint64_t q, std::uint32_t t, std::uint64_t n_max, const OracleLimits& limits = {});

  std::uint64_t q() const { return q_; }
  std::uint32_t t() const { return t_; }
  std::uint64_t n_max() const { return n_max_; }

  std::uint64_t min_bandwidth(std::uint64_t n, std::uint64_t r) const;

 private:
  std::uint64_t q_;
  std::uint32_t t_;
  std::uint64_t n_max_;
  std::uint64_t order_;
  std::vector<std::vector<std::uint64_t>> best_;  // best_[j][S], max() when unreachable
};

std::uint64_t brute_force_min_bandwidth(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r,
                                        const OracleLimits& limits = {});

/// Every level-occupancy vector c (c_b helpers download b sub-symbols,
/// sum c_b = n - 1) that is feasible and attains the minimum. Enumerates all
/// C(n - 1 + t, t) vectors; throws CapExceeded above max_vectors.
std::vector<std::vector<std::uint64_t>> optimal_occupancies(std::uint64_t n, std::uint64_t q, std::uint32_t t,
                                                            std::uint64_t r, std::uint64_t max_vectors = 2'000'000);

}  // namespace rsrepair
