#include "rsrepair/rs_code.hpp"

#include <string>

#include "rsrepair/error.hpp"
#include "rsrepair/poly.hpp"

namespace rsrepair {

std::shared_ptr<const RSCode> RSCode::full_length(TowerPtr tower, std::uint32_t k) {
  std::vector<Elem> points;
  points.reserve(tower->order());
  points.push_back(Elem{0});
  for (std::uint32_t i = 0; i + 1 < tower->order(); ++i) points.push_back(tower->primitive_power(i));
  std::vector<Elem> lambda(points.size(), Elem{1});
  return std::make_shared<const RSCode>(Private{}, std::move(tower), std::move(points), k, std::move(lambda));
}

std::shared_ptr<const RSCode> RSCode::with_points(TowerPtr tower, std::vector<Elem> points, std::uint32_t k) {
  for (Elem a : points) tower->check(a);
  std::vector<Elem> lambda = dual_multipliers(*tower, points);
  return std::make_shared<const RSCode>(Private{}, std::move(tower), std::move(points), k, std::move(lambda));
}

RSCode::RSCode(Private, TowerPtr tower, std::vector<Elem> points, std::uint32_t k, std::vector<Elem> lambda)
    : tower_(std::move(tower)), points_(std::move(points)), k_(k), lambda_(std::move(lambda)) {
  const std::size_t n = points_.size();
  if (k_ < 1 || k_ >= n) {
    throw InvalidArgument("need 1 <= k < n, got k = " + std::to_string(k_) + ", n = " + std::to_string(n));
  }
  if (n > tower_->order()) throw InvalidArgument("more evaluation points than field elements");
  position_.assign(tower_->order(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (position_[points_[i].v] != -1) throw InvalidArgument("evaluation points must be distinct");
    position_[points_[i].v] = static_cast<std::int32_t>(i);
  }
  for (Elem l : lambda_) {
    if (l.v == 0) throw ConsistencyError("zero dual multiplier");
  }
}

std::optional<std::size_t> RSCode::index_of(Elem alpha) const {
  if (!tower_->contains(alpha) || position_[alpha.v] < 0) return std::nullopt;
  return static_cast<std::size_t>(position_[alpha.v]);
}

Codeword encode(const RSCode& code, std::span<const Elem> message) {
  if (message.size() != code.k()) {
    throw InvalidArgument("message must have k = " + std::to_string(code.k()) + " coefficients, got " +
                          std::to_string(message.size()));
  }
  const Tower& tw = code.tower();
  for (Elem c : message) tw.check(c);
  Codeword cw;
  cw.message.assign(message.begin(), message.end());
  cw.values.reserve(code.n());
  for (Elem a : code.points()) cw.values.push_back(poly_eval(tw, message, a));
  return cw;
}

std::vector<Elem> dual_multipliers(const Tower& tower, std::span<const Elem> points) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("dual multipliers need at least two points");
  std::vector<Elem> lambda(n, Elem{1});
  if (n == tower.order()) return lambda;
  if (n <= tower.order() - n) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem prod{1};
      for (std::size_t i = 0; i < n; ++i) {
        if (i != j) prod = tower.mul(prod, tower.sub(points[j], points[i]));
      }
      lambda[j] = tower.inv(prod);
    }
    return lambda;
  }
  std::vector<bool> in_a(tower.order(), false);
  for (Elem a : points) in_a[a.v] = true;
  std::vector<Elem> complement;
  for (std::uint32_t v = 0; v < tower.order(); ++v) {
    if (!in_a[v]) complement.push_back(Elem{v});
  }
  for (std::size_t j = 0; j < n; ++j) {
    Elem prod{1};
    for (Elem c : complement) prod = tower.mul(prod, tower.sub(points[j], c));
    lambda[j] = tower.neg(prod);
  }
  return lambda;
}

bool verify_check(const RSCode& code, std::span<const Elem> codeword, std::span<const Elem> g) {
  if (codeword.size() != code.n()) throw InvalidArgument("codeword length differs from n");
  const long deg = poly_degree(g);
  if (deg >= static_cast<long>(code.r())) {
    throw InvalidCheck("check polynomial of degree " + std::to_string(deg) + " is not a dual codeword (needs <= r - 1 = " +
                       std::to_string(code.r() - 1) + ")");
  }
  const Tower& tw = code.tower();
  Elem sum{0};
  for (std::size_t i = 0; i < code.n(); ++i) {
    const Elem term = tw.mul(poly_eval(tw, g, code.point(i)), tw.mul(code.multiplier(i), codeword[i]));
    sum = tw.add(sum, term);
  }
  return sum.v == 0;
}

Elem lagrange_eval(const Tower& tower, std::span<const Elem> xs, std::span<const Elem> ys, Elem x) {
  if (xs.size() != ys.size()) throw InvalidArgument("interpolation needs equally many abscissae and values");
  Elem acc{0};
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j] == x) return ys[j];
    Elem num{1};
    Elem den{1};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i == j) continue;
      num = tower.mul(num, tower.sub(x, xs[i]));
      den = tower.mul(den, tower.sub(xs[j], xs[i]));
    }
    acc = tower.add(acc, tower.mul(ys[j], tower.div(num, den)));
  }
  return acc;
}

}  // namespace rsrepair
