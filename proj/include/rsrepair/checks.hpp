#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "rsrepair/field.hpp"
#include "rsrepair/poly.hpp"

namespace rsrepair {

// Check polynomials are kept in the closed form they were built from; dense
// coefficients are produced only on request (expand) for cross-checking.

/// Explicit coefficients, low degree first.
struct DenseCheck {
  std::vector<Elem> coeffs;
};

/// Tr_{F/K}(u (x - center)) / (x - center) with K = GF(q^d):
///   sum_{i < t/d} u^(Q^i) (x - center)^(Q^i - 1),   Q = q^d.
struct TraceCheck {
  Elem u;
  Elem center;
  std::uint32_t subfield_degree = 1;
};

/// beta * prod_{w in W*} (x - (center - w^(-1) beta)).
struct ProductCheck {
  Elem beta;
  Elem center;
  std::shared_ptr<const Subspace> subspace;
  std::shared_ptr<const std::vector<Elem>> inverses;  // w^(-1) for w in W*
  Elem scale;                                          // M = prod_{w in W*} w^(-1)
};

/// L_W(u (x - center)) / (x - center) = sum_j c_j u^(q^j) (x - center)^(q^j - 1).
struct LinearizedCheck {
  Elem u;
  Elem center;
  std::shared_ptr<const Subspace> subspace;
};

using CheckPolynomial = std::variant<DenseCheck, TraceCheck, ProductCheck, LinearizedCheck>;

/// Products over W* with at most this many factors are multiplied out term by
/// term; larger ones use g(a) = M gamma^(q^s) L_W(beta / gamma), gamma = center - a.
inline constexpr std::size_t kDirectProductLimit = 256;

Elem evaluate(const Tower& tower, const CheckPolynomial& g, Elem x);
/// Term-by-term product, regardless of size.
Elem evaluate_product_directly(const Tower& tower, const ProductCheck& g, Elem x);
/// Factored form through the subspace polynomial.
Elem evaluate_product_factored(const Tower& tower, const ProductCheck& g, Elem x);

std::uint64_t check_degree(const Tower& tower, const CheckPolynomial& g);

/// Dense coefficients. Throws CapExceeded above max_degree.
std::vector<Elem> expand(const Tower& tower, const CheckPolynomial& g, std::uint64_t max_degree = 1U << 14);

/// Recomputes a closed-form check from its defining expression (polynomial
/// division for trace and linearized forms, root product for product forms)
/// and throws ConsistencyError on any difference, including a nonzero
/// division remainder.
void cross_check(const Tower& tower, const CheckPolynomial& g, std::uint64_t max_degree = 1U << 14);

/// g_{u,alpha}: the trace check, with trace taken down to GF(q^(t-s)).
/// Requires u != 0 and (t - s) | t. Verifies deg = q^s - 1 and g(alpha) = u,
/// and runs cross_check when the degree is at most 2^14.
TraceCheck gw_check(const Tower& tower, Elem u, Elem alpha, std::uint32_t s);

ProductCheck make_product_check(const Tower& tower, Elem beta, Elem center, std::shared_ptr<const Subspace> w);

}  // namespace rsrepair
