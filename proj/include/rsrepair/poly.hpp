#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rsrepair/field.hpp"

namespace rsrepair {

// Dense univariate polynomials over F, coefficients low degree first.

/// Degree of a coefficient vector, -1 for the zero polynomial.
long poly_degree(std::span<const Elem> f);
std::vector<Elem> poly_trim(std::vector<Elem> f);
Elem poly_eval(const Tower& tower, std::span<const Elem> f, Elem x);
std::vector<Elem> poly_add(const Tower& tower, std::span<const Elem> f, std::span<const Elem> g);
std::vector<Elem> poly_mul(const Tower& tower, std::span<const Elem> f, std::span<const Elem> g);
std::vector<Elem> poly_scale(const Tower& tower, Elem c, std::span<const Elem> f);
/// prod_i (x - roots_i).
std::vector<Elem> poly_from_roots(const Tower& tower, std::span<const Elem> roots);
/// (x - a)^e, coefficients from Lucas' theorem.
std::vector<Elem> poly_linear_power(const Tower& tower, Elem a, std::uint64_t e);
/// Synthetic division by (x - a): returns (quotient, remainder).
std::pair<std::vector<Elem>, Elem> poly_div_linear(const Tower& tower, std::span<const Elem> f, Elem a);

/// An s-dimensional B-subspace W of F together with its subspace polynomial
/// L_W(x) = prod_{w in W} (x - w) = sum_{i<=s} c_i x^(q^i).
struct Subspace {
  std::vector<Elem> generators;
  std::vector<Elem> elements;    // all q^s members, elements[0] == 0
  std::vector<Elem> linearized;  // c_0..c_s, c_s == 1

  std::uint32_t dim() const { return static_cast<std::uint32_t>(generators.size()); }
};

/// Throws InvalidArgument if the generators are dependent over B.
Subspace make_subspace(const Tower& tower, std::vector<Elem> generators);

/// sum_i c_i x^(q^i).
Elem linearized_eval(const Tower& tower, std::span<const Elem> coeffs, Elem x);

/// Coefficients of prod_{w in span(generators)} (x - w) as a q-polynomial,
/// built one generator at a time via L'(x) = L(x)^q - L(w)^(q-1) L(x).
std::vector<Elem> subspace_linearized_coeffs(const Tower& tower, std::span<const Elem> generators);

/// Every B-combination of the generators, indexed by the base-q digits of the position.
std::vector<Elem> span_elements(const Tower& tower, std::span<const Elem> generators);

/// One generator list per s-dimensional subspace of F (reduced echelon forms
/// in polynomial-basis coordinates). Intended for small fields.
std::vector<std::vector<Elem>> enumerate_subspaces(const Tower& tower, std::uint32_t s);

/// Binomial coefficient C(n, k) mod p.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

}  // namespace rsrepair
