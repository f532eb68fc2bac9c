#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rsrepair {

/// An element of a tower field GF(p) <= B = GF(q) <= F = GF(q^t).
///
/// The value packs the coefficient vector in base p: coordinate i over B
/// (i < t) occupies digits [m*i, m*i + m), and inside a coordinate digit j is
/// the coefficient of x^j over GF(p). Consequently the elements of B are
/// exactly the values below q, and `Elem{1}` is the multiplicative identity.
struct Elem {
  std::uint32_t v = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct TowerLimits {
  /// Largest accepted |F|.
  std::uint64_t max_order = std::uint64_t{1} << 20;
  /// Log/antilog tables are built for |F| up to this size.
  std::uint64_t table_order = std::uint64_t{1} << 16;
};

/// Defining polynomials, coefficients listed low degree first, leading 1 included.
struct TowerModuli {
  std::vector<std::uint32_t> base;  // over GF(p), degree m
  std::vector<Elem> ext;            // over B, degree t
};

namespace detail {

/// GF(q) = GF(p)[x]/(base modulus), always table driven.
class BaseField {
 public:
  BaseField() = default;
  BaseField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::uint32_t primitive() const { return primitive_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t p_ = 2;
  std::uint32_t m_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t primitive_ = 1;
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;
};

}  // namespace detail

/// Immutable description of GF(p) <= GF(q) <= GF(q^t) plus arithmetic.
/// Shared by const pointer between codes, schemes and threads.
class Tower {
  struct Private {};

 public:
  /// Deterministic construction. Missing moduli default to the irreducible
  /// monic polynomial of least integer value (coefficients read as base-p or
  /// base-q digits, constant term least significant); the primitive element
  /// is the smallest element value of full multiplicative order.
  static std::shared_ptr<const Tower> build(std::uint32_t p, std::uint32_t m, std::uint32_t t,
                                            const std::optional<TowerModuli>& moduli = std::nullopt,
                                            const TowerLimits& limits = {});

  Tower(Private, std::uint32_t p, std::uint32_t m, std::uint32_t t, const std::optional<TowerModuli>& moduli,
        const TowerLimits& limits);

  std::uint32_t p() const { return base_.p(); }
  std::uint32_t m() const { return base_.m(); }
  std::uint32_t t() const { return t_; }
  std::uint32_t q() const { return base_.q(); }
  std::uint32_t order() const { return order_; }

  std::vector<std::uint32_t> base_modulus() const { return base_.modulus(); }
  const std::vector<Elem>& ext_modulus() const { return ext_modulus_; }
  Elem primitive() const { return primitive_; }
  Elem base_primitive() const { return Elem{base_.primitive()}; }
  bool has_log_table() const { return !log_.empty(); }

  bool contains(Elem x) const { return x.v < order_; }
  bool in_base(Elem x) const { return x.v < base_.q(); }
  /// Throws InvalidArgument unless x belongs to this tower.
  void check(Elem x) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// x^(q^i).
  Elem frobenius(Elem x, std::uint32_t i) const;
  /// Tr_{F/B}(x), computed from precomputed traces of the polynomial basis.
  Elem trace(Elem x) const;
  /// Tr_{F/B}(x) = sum_{i<t} x^(q^i), evaluated term by term.
  Elem trace_by_definition(Elem x) const;
  /// Trace down to the intermediate field GF(q^d); requires d | t.
  Elem trace_to_subfield(Elem x, std::uint32_t d) const;

  /// Coordinate i of x over B in the polynomial basis {1, y, ..., y^(t-1)}.
  Elem coordinate(Elem x, std::uint32_t i) const;
  std::vector<Elem> coordinates(Elem x) const;
  Elem from_coordinates(std::span<const Elem> coords) const;
  /// {1, y, ..., y^(t-1)} where y is the class of the extension variable.
  std::vector<Elem> polynomial_basis() const;

  /// Arithmetic restricted to B (inputs must satisfy in_base).
  Elem base_mul(Elem a, Elem b) const { return Elem{base_.mul(a.v, b.v)}; }
  Elem base_inv(Elem a) const;

  /// Discrete log base the primitive element; only with tables and x != 0.
  std::optional<std::uint32_t> log(Elem x) const;
  Elem primitive_power(std::uint64_t k) const;

  /// (x^e for x != 0) uses exponents reduced modulo |F| - 1.
  std::uint64_t reduce_exponent(std::uint64_t e) const;

 private:
  Elem mul_poly(Elem a, Elem b) const;
  Elem pow_poly(Elem a, std::uint64_t e) const;

  detail::BaseField base_;
  std::uint32_t t_ = 1;
  std::uint32_t order_ = 2;
  std::vector<std::uint32_t> q_powers_;  // q^i, i <= t
  std::vector<Elem> ext_modulus_;
  Elem primitive_{1};
  std::vector<Elem> basis_traces_;
  std::vector<std::uint32_t> exp_;  // length 2(|F|-1) when tables exist
  std::vector<std::uint32_t> log_;
};

using TowerPtr = std::shared_ptr<const Tower>;

/// Result of reducing a list of elements to a B-basis of its span.
struct SpanDecomposition {
  std::vector<Elem> basis;              // zeta_1..zeta_b, chosen first-come from the input
  std::vector<std::size_t> pivots;      // input positions of the chosen basis elements
  std::vector<std::vector<Elem>> coords;  // coords[i][j] in B, input_i = sum_j coords[i][j] zeta_j
};

/// Dimension over B of span_B(elems).
std::size_t rank_over_base(const Tower& tower, std::span<const Elem> elems);

/// Basis of span_B(elems) taken greedily in input order, plus the coordinates
/// of every input element in that basis.
SpanDecomposition span_basis_and_coords(const Tower& tower, std::span<const Elem> elems);

/// Trace-dual basis: Tr(u_i * dual_j) = [i == j]. Throws InvalidArgument if
/// the input is not a B-basis of F.
std::vector<Elem> dual_basis(const Tower& tower, std::span<const Elem> basis);

/// A B-basis of F with its trace-dual basis.
struct SubfieldBasis {
  std::vector<Elem> elems;
  std::vector<Elem> dual;
};

SubfieldBasis make_subfield_basis(const Tower& tower, std::vector<Elem> elems);

/// Solves for the unique B-coefficients a with sum_i a_i u_i = x, given a basis
/// and its dual: a_i = Tr(dual_i x).
std::vector<Elem> expand_in_basis(const Tower& tower, const SubfieldBasis& basis, Elem x);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace rsrepair
