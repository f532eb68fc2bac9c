#include "rsrepair/checks.hpp"

#include <string>

#include "rsrepair/error.hpp"

namespace rsrepair {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t int_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

// x^e with the convention 0^0 = 1.
Elem power(const Tower& tw, Elem x, std::uint64_t e) { return tw.pow(x, e); }

}  // namespace

Elem evaluate_product_directly(const Tower& tw, const ProductCheck& g, Elem x) {
  Elem acc = g.beta;
  const Elem shift = tw.sub(x, g.center);
  for (Elem winv : *g.inverses) acc = tw.mul(acc, tw.add(shift, tw.mul(winv, g.beta)));
  return acc;
}

Elem evaluate_product_factored(const Tower& tw, const ProductCheck& g, Elem x) {
  const std::uint64_t qs = g.subspace->elements.size();
  if (x == g.center) return tw.mul(g.scale, tw.pow(g.beta, qs));
  const Elem gamma = tw.sub(g.center, x);
  const Elem lw = linearized_eval(tw, g.subspace->linearized, tw.div(g.beta, gamma));
  return tw.mul(tw.mul(g.scale, tw.pow(gamma, qs)), lw);
}

Elem evaluate(const Tower& tw, const CheckPolynomial& g, Elem x) {
  return std::visit(
      Overloaded{
          [&](const DenseCheck& d) { return poly_eval(tw, d.coeffs, x); },
          [&](const TraceCheck& c) {
            const std::uint64_t big_q = int_pow(tw.q(), c.subfield_degree);
            const std::uint32_t terms = tw.t() / c.subfield_degree;
            const Elem y = tw.sub(x, c.center);
            Elem acc{0};
            std::uint64_t qi = 1;
            Elem ui = c.u;
            for (std::uint32_t i = 0; i < terms; ++i) {
              acc = tw.add(acc, tw.mul(ui, power(tw, y, qi - 1)));
              ui = tw.pow(ui, big_q);
              qi *= big_q;
            }
            return acc;
          },
          [&](const ProductCheck& c) {
            if (c.inverses->size() <= kDirectProductLimit) return evaluate_product_directly(tw, c, x);
            return evaluate_product_factored(tw, c, x);
          },
          [&](const LinearizedCheck& c) {
            const Elem y = tw.sub(x, c.center);
            Elem acc{0};
            std::uint64_t qj = 1;
            const auto& coeffs = c.subspace->linearized;
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
              if (coeffs[j].v != 0) {
                const Elem uj = tw.frobenius(c.u, static_cast<std::uint32_t>(j));
                acc = tw.add(acc, tw.mul(tw.mul(coeffs[j], uj), power(tw, y, qj - 1)));
              }
              qj *= tw.q();
            }
            return acc;
          },
      },
      g);
}

std::uint64_t check_degree(const Tower& tw, const CheckPolynomial& g) {
  return std::visit(Overloaded{
                        [&](const DenseCheck& d) -> std::uint64_t {
                          const long deg = poly_degree(d.coeffs);
                          return deg < 0 ? 0 : static_cast<std::uint64_t>(deg);
                        },
                        [&](const TraceCheck& c) -> std::uint64_t {
                          const std::uint64_t big_q = int_pow(tw.q(), c.subfield_degree);
                          return int_pow(big_q, tw.t() / c.subfield_degree - 1) - 1;
                        },
                        [&](const ProductCheck& c) -> std::uint64_t { return c.inverses->size(); },
                        [&](const LinearizedCheck& c) -> std::uint64_t {
                          return c.subspace->elements.size() - 1;
                        },
                    },
                    g);
}

std::vector<Elem> expand(const Tower& tw, const CheckPolynomial& g, std::uint64_t max_degree) {
  const std::uint64_t deg = check_degree(tw, g);
  if (deg > max_degree) {
    throw CapExceeded("check polynomial of degree " + std::to_string(deg) + " exceeds the expansion cap " +
                      std::to_string(max_degree));
  }
  return std::visit(
      Overloaded{
          [&](const DenseCheck& d) { return poly_trim(d.coeffs); },
          [&](const TraceCheck& c) {
            const std::uint64_t big_q = int_pow(tw.q(), c.subfield_degree);
            std::vector<Elem> acc;
            std::uint64_t qi = 1;
            Elem ui = c.u;
            for (std::uint32_t i = 0; i < tw.t() / c.subfield_degree; ++i) {
              acc = poly_add(tw, acc, poly_scale(tw, ui, poly_linear_power(tw, c.center, qi - 1)));
              ui = tw.pow(ui, big_q);
              qi *= big_q;
            }
            return acc;
          },
          [&](const ProductCheck& c) {
            std::vector<Elem> roots;
            for (Elem winv : *c.inverses) roots.push_back(tw.sub(c.center, tw.mul(winv, c.beta)));
            return poly_scale(tw, c.beta, poly_from_roots(tw, roots));
          },
          [&](const LinearizedCheck& c) {
            std::vector<Elem> acc;
            std::uint64_t qj = 1;
            const auto& coeffs = c.subspace->linearized;
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
              const Elem a = tw.mul(coeffs[j], tw.frobenius(c.u, static_cast<std::uint32_t>(j)));
              acc = poly_add(tw, acc, poly_scale(tw, a, poly_linear_power(tw, c.center, qj - 1)));
              qj *= tw.q();
            }
            return acc;
          },
      },
      g);
}

namespace {

// sum_i a_i (x - center)^(e_i) for exponents that are powers of p, expanded
// as a_i (x^(e_i) - center^(e_i)).
std::vector<Elem> additive_shift(const Tower& tw, const std::vector<std::pair<Elem, std::uint64_t>>& terms,
                                 Elem center) {
  std::uint64_t top = 0;
  for (const auto& [a, e] : terms) top = std::max(top, e);
  std::vector<Elem> f(top + 1, Elem{0});
  for (const auto& [a, e] : terms) {
    f[e] = tw.add(f[e], a);
    f[0] = tw.sub(f[0], tw.mul(a, tw.pow(center, e)));
  }
  return poly_trim(std::move(f));
}

void divide_and_compare(const Tower& tw, const std::vector<Elem>& numerator, Elem center,
                        const std::vector<Elem>& closed, const char* what) {
  auto [quotient, rem] = poly_div_linear(tw, numerator, center);
  if (rem.v != 0) throw ConsistencyError(std::string(what) + ": division by (x - center) left a remainder");
  if (poly_trim(quotient) != poly_trim(closed)) {
    throw ConsistencyError(std::string(what) + ": closed form differs from the divided polynomial");
  }
}

}  // namespace

void cross_check(const Tower& tw, const CheckPolynomial& g, std::uint64_t max_degree) {
  const std::vector<Elem> closed = expand(tw, g, max_degree);
  std::visit(Overloaded{
                 [&](const DenseCheck&) {},
                 [&](const TraceCheck& c) {
                   // Tr_{F/K}(u (x - c)) = sum_i u^(Q^i) (x^(Q^i) - c^(Q^i))
                   const std::uint64_t big_q = int_pow(tw.q(), c.subfield_degree);
                   std::vector<std::pair<Elem, std::uint64_t>> terms;
                   std::uint64_t qi = 1;
                   for (std::uint32_t i = 0; i < tw.t() / c.subfield_degree; ++i) {
                     terms.emplace_back(tw.pow(c.u, qi), qi);
                     qi *= big_q;
                   }
                   divide_and_compare(tw, additive_shift(tw, terms, c.center), c.center, closed, "trace check");
                 },
                 [&](const ProductCheck& c) {
                   for (std::uint32_t v = 0; v < tw.order() && v < 4096; ++v) {
                     const Elem x{v};
                     const Elem dense = poly_eval(tw, closed, x);
                     if (dense != evaluate_product_directly(tw, c, x) || dense != evaluate_product_factored(tw, c, x)) {
                       throw ConsistencyError("product check: factored and direct evaluations disagree");
                     }
                   }
                 },
                 [&](const LinearizedCheck& c) {
                   // L_W(u (x - c)) = sum_j c_j u^(q^j) (x^(q^j) - c^(q^j))
                   std::vector<std::pair<Elem, std::uint64_t>> terms;
                   std::uint64_t qj = 1;
                   const auto& coeffs = c.subspace->linearized;
                   for (std::size_t j = 0; j < coeffs.size(); ++j) {
                     terms.emplace_back(tw.mul(coeffs[j], tw.frobenius(c.u, static_cast<std::uint32_t>(j))), qj);
                     qj *= tw.q();
                   }
                   divide_and_compare(tw, additive_shift(tw, terms, c.center), c.center, closed, "linearized check");
                 },
             },
             g);
}

TraceCheck gw_check(const Tower& tw, Elem u, Elem alpha, std::uint32_t s) {
  tw.check(u);
  tw.check(alpha);
  if (u.v == 0) throw InvalidArgument("trace check needs u != 0");
  const std::uint32_t t = tw.t();
  if (s >= t) throw PreconditionError("trace check needs s < t");
  const std::uint32_t d = t - s;
  if (t % d != 0) {
    throw PreconditionError("(t - s) must divide t for the trace scheme: t = " + std::to_string(t) +
                            ", s = " + std::to_string(s));
  }
  TraceCheck g{u, alpha, d};
  const std::uint64_t expected = int_pow(tw.q(), s) - 1;
  if (check_degree(tw, g) != expected) throw ConsistencyError("trace check degree differs from q^s - 1");
  if (evaluate(tw, g, alpha) != u) throw ConsistencyError("trace check does not evaluate to u at its center");
  if (expected <= (1U << 14)) cross_check(tw, g);
  return g;
}

ProductCheck make_product_check(const Tower& tw, Elem beta, Elem center, std::shared_ptr<const Subspace> w) {
  auto inverses = std::make_shared<std::vector<Elem>>();
  Elem scale{1};
  for (Elem x : w->elements) {
    if (x.v == 0) continue;
    const Elem inv = tw.inv(x);
    inverses->push_back(inv);
    scale = tw.mul(scale, inv);
  }
  return ProductCheck{beta, center, std::move(w), std::move(inverses), scale};
}

}  // namespace rsrepair
