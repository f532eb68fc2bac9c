#include "rsrepair/field.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rsrepair/error.hpp"

namespace rsrepair {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

using Digits = std::vector<std::uint32_t>;

std::uint32_t digit_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  if (p == 2) return a ^ b;
  std::uint32_t r = 0;
  std::uint32_t scale = 1;
  while (a != 0 || b != 0) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

std::uint32_t digit_neg(std::uint32_t a, std::uint32_t p) {
  if (p == 2) return a;
  std::uint32_t r = 0;
  std::uint32_t scale = 1;
  while (a != 0) {
    r += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return r;
}

Digits to_digits(std::uint32_t v, std::uint32_t radix, std::size_t len) {
  Digits d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = v % radix;
    v /= radix;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t radix) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * radix + d[i];
  return v;
}

struct PrimeOps {
  std::uint32_t p;
  std::uint32_t size() const { return p; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
  }
};

struct BaseOps {
  const detail::BaseField& b;
  std::uint32_t size() const { return b.q(); }
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return b.add(x, y); }
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return b.sub(x, y); }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return b.mul(x, y); }
};

// f mod g for monic g; both low degree first.
template <class K>
Digits poly_rem(const K& k, Digits f, const Digits& g) {
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint32_t lead = f.back();
    if (lead != 0) {
      const std::size_t shift = f.size() - 1 - dg;
      for (std::size_t j = 0; j <= dg; ++j) {
        f[shift + j] = k.sub(f[shift + j], k.mul(lead, g[j]));
      }
    }
    f.pop_back();
  }
  return f;
}

// Exhaustive trial division by every monic polynomial of degree <= d/2.
template <class K>
bool poly_irreducible(const K& k, const Digits& f) {
  const std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  const std::uint32_t size = k.size();
  for (std::size_t e = 1; e <= d / 2; ++e) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < e; ++i) count *= size;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Digits g(e + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < e; ++i) {
        g[i] = static_cast<std::uint32_t>(v % size);
        v /= size;
      }
      g[e] = 1;
      const Digits r = poly_rem(k, f, g);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

template <class K>
Digits smallest_irreducible(const K& k, std::size_t d) {
  const std::uint32_t size = k.size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= size;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Digits f(d + 1, 0);
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < d; ++i) {
      f[i] = static_cast<std::uint32_t>(v % size);
      v /= size;
    }
    f[d] = 1;
    if (d > 1 && f[0] == 0) continue;
    if (poly_irreducible(k, f)) return f;
  }
  throw ConsistencyError("no irreducible polynomial of degree " + std::to_string(d) + " found");
}

template <class Mul>
bool has_full_order(std::uint32_t g, std::uint64_t group_order, const std::vector<std::uint64_t>& factors,
                    Mul&& mul) {
  auto power = [&](std::uint64_t e) {
    std::uint32_t result = 1;
    std::uint32_t base = g;
    while (e != 0) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  };
  for (std::uint64_t f : factors) {
    if (power(group_order / f) == 1) return false;
  }
  return true;
}

}  // namespace

namespace detail {

BaseField::BaseField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < m; ++i) q_ *= p;
  const PrimeOps k{p};
  auto mul_slow = [&](std::uint32_t a, std::uint32_t b) {
    const Digits da = to_digits(a, p_, m_);
    const Digits db = to_digits(b, p_, m_);
    Digits prod(2 * m_ - 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i) {
      for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = k.add(prod[i + j], k.mul(da[i], db[j]));
    }
    Digits r = poly_rem(k, prod, modulus_);
    r.resize(m_, 0);
    return from_digits(r, p_);
  };
  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  primitive_ = 0;
  for (std::uint32_t g = 1; g < q_; ++g) {
    if (has_full_order(g, group, factors, mul_slow)) {
      primitive_ = g;
      break;
    }
  }
  if (primitive_ == 0) throw ConsistencyError("base field has no primitive element; modulus reducible?");
  exp_.assign(2 * group, 0);
  log_.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = x;
    exp_[i + group] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, primitive_);
  }
}

std::uint32_t BaseField::add(std::uint32_t a, std::uint32_t b) const { return digit_add(a, b, p_); }
std::uint32_t BaseField::sub(std::uint32_t a, std::uint32_t b) const { return digit_add(a, digit_neg(b, p_), p_); }
std::uint32_t BaseField::neg(std::uint32_t a) const { return digit_neg(a, p_); }

std::uint32_t BaseField::inv(std::uint32_t a) const {
  if (a == 0) throw InvalidArgument("inverse of zero");
  const std::uint32_t group = q_ - 1;
  return exp_[(group - log_[a]) % group];
}

}  // namespace detail

std::shared_ptr<const Tower> Tower::build(std::uint32_t p, std::uint32_t m, std::uint32_t t,
                                          const std::optional<TowerModuli>& moduli, const TowerLimits& limits) {
  return std::make_shared<const Tower>(Private{}, p, m, t, moduli, limits);
}

Tower::Tower(Private, std::uint32_t p, std::uint32_t m, std::uint32_t t, const std::optional<TowerModuli>& moduli,
             const TowerLimits& limits)
    : t_(t) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (m == 0 || t == 0) throw InvalidArgument("degrees m and t must be at least 1");
  std::uint64_t order = 1;
  for (std::uint64_t i = 0; i < std::uint64_t{m} * t; ++i) {
    order *= p;
    if (order > limits.max_order || order > (std::uint64_t{1} << 31)) {
      throw CapExceeded("|F| = " + std::to_string(p) + "^" + std::to_string(std::uint64_t{m} * t) +
                        " exceeds the field size cap " + std::to_string(limits.max_order));
    }
  }
  order_ = static_cast<std::uint32_t>(order);

  const PrimeOps prime{p};
  Digits base_mod;
  if (moduli && !moduli->base.empty()) {
    base_mod = moduli->base;
    if (base_mod.size() != m + 1 || base_mod.back() != 1 ||
        std::any_of(base_mod.begin(), base_mod.end(), [p](std::uint32_t c) { return c >= p; })) {
      throw InvalidArgument("base modulus must be monic of degree m with coefficients in GF(p)");
    }
    if (!poly_irreducible(prime, base_mod)) throw InvalidArgument("base modulus is reducible over GF(p)");
  } else {
    base_mod = smallest_irreducible(prime, m);
  }
  base_ = detail::BaseField(p, m, base_mod);
  const std::uint32_t q = base_.q();

  q_powers_.assign(t + 1, 1);
  for (std::uint32_t i = 1; i <= t; ++i) q_powers_[i] = q_powers_[i - 1] * q;

  const BaseOps bops{base_};
  Digits ext_mod;
  if (moduli && !moduli->ext.empty()) {
    for (Elem c : moduli->ext) ext_mod.push_back(c.v);
    if (ext_mod.size() != t + 1 || ext_mod.back() != 1 ||
        std::any_of(ext_mod.begin(), ext_mod.end(), [q](std::uint32_t c) { return c >= q; })) {
      throw InvalidArgument("extension modulus must be monic of degree t with coefficients in B");
    }
    if (!poly_irreducible(bops, ext_mod)) throw InvalidArgument("extension modulus is reducible over B");
  } else {
    ext_mod = smallest_irreducible(bops, t);
  }
  for (std::uint32_t c : ext_mod) ext_modulus_.push_back(Elem{c});

  const std::uint64_t group = order_ - 1;
  const auto factors = prime_factors(group);
  auto mul_slow = [this](std::uint32_t a, std::uint32_t b) { return mul_poly(Elem{a}, Elem{b}).v; };
  primitive_ = Elem{0};
  for (std::uint32_t g = 1; g < order_; ++g) {
    if (has_full_order(g, group, factors, mul_slow)) {
      primitive_ = Elem{g};
      break;
    }
  }
  if (primitive_.v == 0) throw ConsistencyError("no primitive element found");

  if (order_ <= limits.table_order) {
    exp_.assign(2 * group, 0);
    log_.assign(order_, 0);
    Elem x{1};
    for (std::uint64_t i = 0; i < group; ++i) {
      exp_[i] = x.v;
      exp_[i + group] = x.v;
      log_[x.v] = static_cast<std::uint32_t>(i);
      x = mul_poly(x, primitive_);
    }
  }

  for (std::uint32_t i = 0; i < t; ++i) {
    const Elem tr = trace_by_definition(Elem{q_powers_[i]});
    if (!in_base(tr)) throw ConsistencyError("trace value outside the base field");
    basis_traces_.push_back(tr);
  }
}

void Tower::check(Elem x) const {
  if (!contains(x)) {
    throw InvalidArgument("element " + std::to_string(x.v) + " does not belong to GF(" + std::to_string(order_) +
                          ")");
  }
}

Elem Tower::add(Elem a, Elem b) const { return Elem{digit_add(a.v, b.v, p())}; }
Elem Tower::sub(Elem a, Elem b) const { return Elem{digit_add(a.v, digit_neg(b.v, p()), p())}; }
Elem Tower::neg(Elem a) const { return Elem{digit_neg(a.v, p())}; }

Elem Tower::mul(Elem a, Elem b) const {
  if (a.v == 0 || b.v == 0) return Elem{0};
  if (!log_.empty()) return Elem{exp_[log_[a.v] + log_[b.v]]};
  return mul_poly(a, b);
}

Elem Tower::mul_poly(Elem a, Elem b) const {
  const std::uint32_t q = base_.q();
  std::vector<std::uint32_t> ca(t_), cb(t_);
  for (std::uint32_t i = 0; i < t_; ++i) {
    ca[i] = (a.v / q_powers_[i]) % q;
    cb[i] = (b.v / q_powers_[i]) % q;
  }
  std::vector<std::uint32_t> prod(2 * t_ - 1, 0);
  for (std::uint32_t i = 0; i < t_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < t_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(ca[i], cb[j]));
  }
  for (std::size_t d = prod.size(); d-- > t_;) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (std::uint32_t j = 0; j < t_; ++j) {
      prod[d - t_ + j] = base_.sub(prod[d - t_ + j], base_.mul(c, ext_modulus_[j].v));
    }
  }
  std::uint32_t v = 0;
  for (std::uint32_t i = 0; i < t_; ++i) v += prod[i] * q_powers_[i];
  return Elem{v};
}

Elem Tower::pow_poly(Elem a, std::uint64_t e) const {
  Elem result{1};
  Elem base = a;
  while (e != 0) {
    if (e & 1U) result = mul_poly(result, base);
    base = mul_poly(base, base);
    e >>= 1U;
  }
  return result;
}

Elem Tower::inv(Elem a) const {
  if (a.v == 0) throw InvalidArgument("inverse of zero");
  if (!log_.empty()) {
    const std::uint32_t group = order_ - 1;
    return Elem{exp_[(group - log_[a.v]) % group]};
  }
  return pow_poly(a, order_ - 2);
}

std::uint64_t Tower::reduce_exponent(std::uint64_t e) const { return e % (order_ - 1); }

Elem Tower::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return Elem{1};
  if (a.v == 0) return Elem{0};
  const std::uint64_t r = reduce_exponent(e);
  if (!log_.empty()) {
    const std::uint64_t group = order_ - 1;
    return Elem{exp_[(std::uint64_t{log_[a.v]} * r) % group]};
  }
  return pow_poly(a, r);
}

Elem Tower::frobenius(Elem x, std::uint32_t i) const { return pow(x, q_powers_[i % t_]); }

Elem Tower::trace(Elem x) const {
  const std::uint32_t q = base_.q();
  std::uint32_t acc = 0;
  for (std::uint32_t i = 0; i < t_; ++i) {
    const std::uint32_t c = (x.v / q_powers_[i]) % q;
    if (c != 0) acc = base_.add(acc, base_.mul(c, basis_traces_[i].v));
  }
  return Elem{acc};
}

Elem Tower::trace_by_definition(Elem x) const {
  Elem acc{0};
  for (std::uint32_t i = 0; i < t_; ++i) acc = add(acc, frobenius(x, i));
  return acc;
}

Elem Tower::trace_to_subfield(Elem x, std::uint32_t d) const {
  if (d == 0 || t_ % d != 0) {
    throw PreconditionError("GF(q^" + std::to_string(d) + ") is not a subfield of GF(q^" + std::to_string(t_) +
                            "): requires d | t");
  }
  Elem acc{0};
  for (std::uint32_t i = 0; i < t_ / d; ++i) acc = add(acc, frobenius(x, d * i));
  return acc;
}

Elem Tower::coordinate(Elem x, std::uint32_t i) const { return Elem{(x.v / q_powers_[i]) % base_.q()}; }

std::vector<Elem> Tower::coordinates(Elem x) const {
  std::vector<Elem> out(t_);
  for (std::uint32_t i = 0; i < t_; ++i) out[i] = coordinate(x, i);
  return out;
}

Elem Tower::from_coordinates(std::span<const Elem> coords) const {
  if (coords.size() != t_) throw InvalidArgument("coordinate vector must have length t");
  std::uint32_t v = 0;
  for (std::uint32_t i = 0; i < t_; ++i) {
    if (!in_base(coords[i])) throw InvalidArgument("coordinate outside the base field");
    v += coords[i].v * q_powers_[i];
  }
  return Elem{v};
}

std::vector<Elem> Tower::polynomial_basis() const {
  std::vector<Elem> out;
  for (std::uint32_t i = 0; i < t_; ++i) out.push_back(Elem{q_powers_[i]});
  return out;
}

Elem Tower::base_inv(Elem a) const { return Elem{base_.inv(a.v)}; }

std::optional<std::uint32_t> Tower::log(Elem x) const {
  if (log_.empty() || x.v == 0) return std::nullopt;
  return log_[x.v];
}

Elem Tower::primitive_power(std::uint64_t k) const {
  if (!log_.empty()) return Elem{exp_[k % (order_ - 1)]};
  return pow(primitive_, k % (order_ - 1));
}

// ---------------------------------------------------------------------------
// Linear algebra over B on coordinate vectors.

namespace {

struct EchelonRow {
  std::vector<Elem> vec;  // normalized: vec[pivot] == 1
  std::vector<Elem> rep;  // vec = sum_j rep[j] * zeta_j
  std::uint32_t pivot = 0;
};

void axpy(const Tower& tw, std::vector<Elem>& y, Elem a, const std::vector<Elem>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].v != 0) y[i] = tw.sub(y[i], tw.base_mul(a, x[i]));
  }
}

std::size_t rank_gf2(std::span<const Elem> elems) {
  std::vector<std::uint32_t> basis;  // sorted by leading bit descending, reduced
  for (Elem e : elems) {
    std::uint32_t v = e.v;
    for (std::uint32_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  return basis.size();
}

}  // namespace

std::size_t rank_over_base(const Tower& tower, std::span<const Elem> elems) {
  for (Elem e : elems) tower.check(e);
  if (tower.q() == 2) return rank_gf2(elems);
  const std::uint32_t t = tower.t();
  std::vector<EchelonRow> rows;
  for (Elem e : elems) {
    if (rows.size() == t) break;
    std::vector<Elem> c = tower.coordinates(e);
    for (const EchelonRow& row : rows) {
      const Elem f = c[row.pivot];
      if (f.v != 0) axpy(tower, c, f, row.vec);
    }
    auto it = std::find_if(c.begin(), c.end(), [](Elem x) { return x.v != 0; });
    if (it == c.end()) continue;
    EchelonRow row;
    row.pivot = static_cast<std::uint32_t>(it - c.begin());
    const Elem s = tower.base_inv(*it);
    for (Elem& x : c) x = tower.base_mul(s, x);
    row.vec = std::move(c);
    rows.push_back(std::move(row));
  }
  return rows.size();
}

SpanDecomposition span_basis_and_coords(const Tower& tower, std::span<const Elem> elems) {
  const std::uint32_t t = tower.t();
  SpanDecomposition out;
  std::vector<EchelonRow> rows;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    tower.check(elems[i]);
    std::vector<Elem> c = tower.coordinates(elems[i]);
    std::vector<Elem> acc(t, Elem{0});  // elem = residual + sum_j acc[j] zeta_j
    for (const EchelonRow& row : rows) {
      const Elem f = c[row.pivot];
      if (f.v == 0) continue;
      axpy(tower, c, f, row.vec);
      for (std::size_t j = 0; j < t; ++j) {
        if (row.rep[j].v != 0) acc[j] = tower.add(acc[j], tower.base_mul(f, row.rep[j]));
      }
    }
    auto it = std::find_if(c.begin(), c.end(), [](Elem x) { return x.v != 0; });
    if (it == c.end()) {
      out.coords.push_back(std::move(acc));
      continue;
    }
    const std::size_t slot = out.basis.size();
    out.basis.push_back(elems[i]);
    out.pivots.push_back(i);
    std::vector<Elem> unit(t, Elem{0});
    unit[slot] = Elem{1};
    out.coords.push_back(unit);
    // residual = zeta_slot - sum_j acc[j] zeta_j
    EchelonRow row;
    row.pivot = static_cast<std::uint32_t>(it - c.begin());
    row.rep = unit;
    for (std::size_t j = 0; j < t; ++j) row.rep[j] = tower.sub(row.rep[j], acc[j]);
    const Elem s = tower.base_inv(*it);
    for (Elem& x : c) x = tower.base_mul(s, x);
    for (Elem& x : row.rep) x = tower.base_mul(s, x);
    row.vec = std::move(c);
    rows.push_back(std::move(row));
  }
  for (auto& row : out.coords) row.resize(out.basis.size());
  return out;
}

std::vector<Elem> dual_basis(const Tower& tower, std::span<const Elem> basis) {
  const std::uint32_t t = tower.t();
  if (basis.size() != t) throw InvalidArgument("a basis of F over B needs exactly t elements");
  for (Elem e : basis) tower.check(e);
  // Gauss-Jordan on [T | I] with T_ij = Tr(u_i u_j).
  std::vector<std::vector<Elem>> a(t, std::vector<Elem>(2 * t, Elem{0}));
  for (std::uint32_t i = 0; i < t; ++i) {
    for (std::uint32_t j = 0; j < t; ++j) a[i][j] = tower.trace(tower.mul(basis[i], basis[j]));
    a[i][t + i] = Elem{1};
  }
  for (std::uint32_t col = 0; col < t; ++col) {
    std::uint32_t piv = col;
    while (piv < t && a[piv][col].v == 0) ++piv;
    if (piv == t) throw InvalidArgument("elements are linearly dependent over B");
    std::swap(a[piv], a[col]);
    const Elem s = tower.base_inv(a[col][col]);
    for (Elem& x : a[col]) x = tower.base_mul(s, x);
    for (std::uint32_t r = 0; r < t; ++r) {
      if (r != col && a[r][col].v != 0) axpy(tower, a[r], a[r][col], a[col]);
    }
  }
  std::vector<Elem> dual(t, Elem{0});
  for (std::uint32_t j = 0; j < t; ++j) {
    for (std::uint32_t k = 0; k < t; ++k) dual[j] = tower.add(dual[j], tower.mul(a[j][t + k], basis[k]));
  }
  return dual;
}

SubfieldBasis make_subfield_basis(const Tower& tower, std::vector<Elem> elems) {
  SubfieldBasis b;
  b.dual = dual_basis(tower, elems);
  b.elems = std::move(elems);
  return b;
}

std::vector<Elem> expand_in_basis(const Tower& tower, const SubfieldBasis& basis, Elem x) {
  std::vector<Elem> out;
  out.reserve(basis.dual.size());
  for (Elem d : basis.dual) out.push_back(tower.trace(tower.mul(d, x)));
  return out;
}

}  // namespace rsrepair
