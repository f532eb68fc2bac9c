#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rsrepair/field.hpp"

namespace rsrepair {

/// RS(A, k) over a tower field with the multipliers lambda of its dual GRS code.
/// Node i stores the evaluation at points()[i].
class RSCode {
  struct Private {};

 public:
  /// A = F in the order 0, 1, xi, xi^2, ..., xi^(|F|-2); all multipliers are 1.
  static std::shared_ptr<const RSCode> full_length(TowerPtr tower, std::uint32_t k);
  static std::shared_ptr<const RSCode> with_points(TowerPtr tower, std::vector<Elem> points, std::uint32_t k);

  RSCode(Private, TowerPtr tower, std::vector<Elem> points, std::uint32_t k, std::vector<Elem> lambda);

  const Tower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  std::span<const Elem> points() const { return points_; }
  Elem point(std::size_t i) const { return points_.at(i); }
  std::span<const Elem> multipliers() const { return lambda_; }
  Elem multiplier(std::size_t i) const { return lambda_.at(i); }
  std::size_t n() const { return points_.size(); }
  std::uint32_t k() const { return k_; }
  std::uint32_t r() const { return static_cast<std::uint32_t>(points_.size()) - k_; }
  bool is_full_length() const { return points_.size() == tower_->order(); }
  std::optional<std::size_t> index_of(Elem alpha) const;

 private:
  TowerPtr tower_;
  std::vector<Elem> points_;
  std::uint32_t k_;
  std::vector<Elem> lambda_;
  std::vector<std::int32_t> position_;  // element value -> node index, -1 if absent
};

using CodePtr = std::shared_ptr<const RSCode>;

/// Evaluations of a message polynomial at every point of A.
struct Codeword {
  std::vector<Elem> values;
  std::vector<Elem> message;  // coefficients, low degree first; may be empty
};

/// Horner evaluation of the k message coefficients at each point.
Codeword encode(const RSCode& code, std::span<const Elem> message);

/// lambda_j = prod_{i != j} (a_j - a_i)^(-1). When the complement of A is
/// smaller than A the equivalent form lambda_j = -prod_{c not in A} (a_j - c)
/// is used; it follows from differentiating x^|F| - x.
std::vector<Elem> dual_multipliers(const Tower& tower, std::span<const Elem> points);

/// sum_a g(a) lambda_a c_a == 0. Throws InvalidCheck if deg g >= r.
bool verify_check(const RSCode& code, std::span<const Elem> codeword, std::span<const Elem> g);

/// Value at x of the unique polynomial of degree < xs.size() through (xs, ys).
Elem lagrange_eval(const Tower& tower, std::span<const Elem> xs, std::span<const Elem> ys, Elem x);

}  // namespace rsrepair
