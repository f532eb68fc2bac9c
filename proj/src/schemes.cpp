#include "rsrepair/schemes.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "rsrepair/error.hpp"

namespace rsrepair {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::trace:
      return "gw";
    case SchemeKind::construction1:
      return "c1";
    case SchemeKind::construction2:
      return "c2";
    case SchemeKind::construction3:
      return "c3";
    case SchemeKind::custom:
      break;
  }
  return "custom";
}

RepairScheme::RepairScheme(CodePtr code, std::size_t erased, std::vector<CheckPolynomial> checks,
                           Provenance provenance)
    : code_(std::move(code)), erased_(erased), checks_(std::move(checks)), provenance_(std::move(provenance)) {
  const Tower& tw = code_->tower();
  if (erased_ >= code_->n()) throw InvalidArgument("erased node index out of range");
  if (checks_.size() != tw.t()) throw InvalidArgument("a repair scheme needs exactly t check polynomials");
  const std::uint64_t max_deg = code_->r() - 1;
  for (const auto& g : checks_) {
    const std::uint64_t deg = check_degree(tw, g);
    if (deg > max_deg) {
      throw PreconditionError("check polynomial of degree " + std::to_string(deg) + " exceeds r - 1 = " +
                              std::to_string(max_deg));
    }
  }
  const auto col = column(erased_);
  const std::size_t rank = rank_over_base(tw, col);
  if (rank != tw.t()) {
    throw PreconditionError("checks have rank " + std::to_string(rank) + " over B at alpha*, repair needs t = " +
                            std::to_string(tw.t()));
  }
}

std::vector<Elem> RepairScheme::column(std::size_t node) const {
  const Tower& tw = code_->tower();
  const Elem alpha = code_->point(node);
  std::vector<Elem> out;
  out.reserve(checks_.size());
  for (const auto& g : checks_) out.push_back(evaluate(tw, g, alpha));
  return out;
}

std::vector<Elem> RepairScheme::folded_column(std::size_t node) const {
  std::vector<Elem> col = column(node);
  const Elem lambda = code_->multiplier(node);
  if (lambda.v != 1) {
    for (Elem& x : col) x = code_->tower().mul(lambda, x);
  }
  return col;
}

namespace {

std::uint64_t q_power(const Tower& tw, std::uint32_t s) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < s; ++i) v *= tw.q();
  return v;
}

void require_range(const Tower& tw, std::uint32_t s) {
  if (s < 1 || s >= tw.t()) {
    throw PreconditionError("need 1 <= s < t, got s = " + std::to_string(s) + ", t = " + std::to_string(tw.t()));
  }
}

void require_redundancy(const RSCode& code, std::uint32_t s) {
  const std::uint64_t qs = q_power(code.tower(), s);
  if (code.r() < qs) {
    throw PreconditionError("r >= q^s is required: r = " + std::to_string(code.r()) + ", q^s = " + std::to_string(qs));
  }
}

std::vector<Elem> basis_or_default(const Tower& tw, std::vector<Elem> basis, const char* what) {
  if (basis.empty()) return tw.polynomial_basis();
  if (basis.size() != tw.t() || rank_over_base(tw, basis) != tw.t()) {
    throw InvalidArgument(std::string(what) + " must be a basis of F over B (t independent elements)");
  }
  return basis;
}

std::shared_ptr<const Subspace> subspace_or_default(const Tower& tw, std::uint32_t s, std::vector<Elem> gens) {
  if (gens.empty()) gens = default_subspace(tw, s);
  if (gens.size() != s) {
    throw InvalidArgument("subspace needs exactly s = " + std::to_string(s) + " generators, got " +
                          std::to_string(gens.size()));
  }
  return std::make_shared<const Subspace>(make_subspace(tw, std::move(gens)));
}

}  // namespace

std::vector<Elem> default_subspace(const Tower& tower, std::uint32_t s) {
  auto basis = tower.polynomial_basis();
  basis.resize(std::min<std::size_t>(s, basis.size()));
  return basis;
}

RepairScheme build_gw_scheme(CodePtr code, std::size_t erased, std::uint32_t s, std::vector<Elem> basis) {
  const Tower& tw = code->tower();
  require_range(tw, s);
  if (tw.t() % (tw.t() - s) != 0) {
    throw PreconditionError("trace scheme needs (t - s) | t: t = " + std::to_string(tw.t()) +
                            ", s = " + std::to_string(s));
  }
  require_redundancy(*code, s);
  if (erased >= code->n()) throw InvalidArgument("erased node index out of range");
  basis = basis_or_default(tw, std::move(basis), "trace scheme basis");
  const Elem alpha = code->point(erased);
  std::vector<CheckPolynomial> checks;
  for (Elem u : basis) checks.emplace_back(gw_check(tw, u, alpha, s));
  Provenance prov{SchemeKind::trace, s, basis, {}, {}};
  return RepairScheme(std::move(code), erased, std::move(checks), std::move(prov));
}

RepairScheme build_construction_1(CodePtr code, std::size_t erased, std::vector<Elem> z) {
  const Tower& tw = code->tower();
  if (tw.q() != 2) throw PreconditionError("Construction I requires q = 2");
  if (code->r() < 2) {
    throw PreconditionError("Construction I requires r = n - k >= 2, got r = " + std::to_string(code->r()));
  }
  if (erased >= code->n()) throw InvalidArgument("erased node index out of range");
  const Elem alpha = code->point(erased);
  std::vector<Elem> beta;
  if (z.empty()) {
    beta = tw.polynomial_basis();
    for (Elem b : beta) z.push_back(tw.sub(alpha, b));
  } else {
    if (z.size() != tw.t()) throw InvalidArgument("Construction I needs exactly t points z_i");
    for (Elem zi : z) {
      tw.check(zi);
      beta.push_back(tw.sub(alpha, zi));
    }
    if (rank_over_base(tw, beta) != tw.t()) {
      throw InvalidArgument("{alpha* - z_i} must be a basis of F over GF(2)");
    }
  }
  std::vector<CheckPolynomial> checks;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    checks.emplace_back(DenseCheck{{tw.neg(tw.mul(beta[i], z[i])), beta[i]}});
  }
  Provenance prov{SchemeKind::construction1, 1, beta, {Elem{1}}, z};
  return RepairScheme(std::move(code), erased, std::move(checks), std::move(prov));
}

RepairScheme build_construction_2(CodePtr code, std::size_t erased, std::uint32_t s, std::vector<Elem> beta,
                                  std::vector<Elem> subspace) {
  const Tower& tw = code->tower();
  require_range(tw, s);
  require_redundancy(*code, s);
  if (erased >= code->n()) throw InvalidArgument("erased node index out of range");
  beta = basis_or_default(tw, std::move(beta), "beta");
  auto w = subspace_or_default(tw, s, std::move(subspace));
  const Elem alpha = code->point(erased);
  std::vector<CheckPolynomial> checks;
  for (Elem b : beta) checks.emplace_back(make_product_check(tw, b, alpha, w));
  Provenance prov{SchemeKind::construction2, s, beta, w->generators, {}};
  return RepairScheme(std::move(code), erased, std::move(checks), std::move(prov));
}

RepairScheme build_construction_3(CodePtr code, std::size_t erased, std::uint32_t s, std::vector<Elem> basis,
                                  std::vector<Elem> subspace) {
  const Tower& tw = code->tower();
  require_range(tw, s);
  require_redundancy(*code, s);
  if (erased >= code->n()) throw InvalidArgument("erased node index out of range");
  basis = basis_or_default(tw, std::move(basis), "U");
  auto w = subspace_or_default(tw, s, std::move(subspace));
  const Elem alpha = code->point(erased);
  std::vector<CheckPolynomial> checks;
  for (Elem u : basis) checks.emplace_back(LinearizedCheck{u, alpha, w});
  Provenance prov{SchemeKind::construction3, s, basis, w->generators, {}};
  return RepairScheme(std::move(code), erased, std::move(checks), std::move(prov));
}

double subsymbol_bits(const Tower& tower, std::uint64_t count) {
  return static_cast<double>(count) * tower.m() * std::log2(static_cast<double>(tower.p()));
}

BandwidthProfile bandwidth_profile(const RepairScheme& scheme) {
  const RSCode& code = scheme.code();
  BandwidthProfile out;
  out.per_node.reserve(code.n() - 1);
  for (std::size_t node = 0; node < code.n(); ++node) {
    if (node == scheme.erased()) continue;
    const auto col = scheme.folded_column(node);
    const auto b = static_cast<std::uint32_t>(rank_over_base(code.tower(), col));
    out.per_node.push_back({node, code.point(node), b});
    out.total_subsymbols += b;
  }
  out.total_bits = subsymbol_bits(code.tower(), out.total_subsymbols);
  return out;
}

RepairPlan plan_repair(const RepairScheme& scheme) {
  const RSCode& code = scheme.code();
  const Tower& tw = code.tower();
  RepairPlan plan;
  plan.code = scheme.code_ptr();
  plan.erased = scheme.erased();
  for (std::size_t node = 0; node < code.n(); ++node) {
    if (node == scheme.erased()) continue;
    const auto col = scheme.folded_column(node);
    SpanDecomposition dec = span_basis_and_coords(tw, col);
    HelperPlan hp;
    hp.node = node;
    hp.alpha = code.point(node);
    hp.queries = std::move(dec.basis);
    hp.coords = std::move(dec.coords);
    plan.total_subsymbols += hp.queries.size();
    plan.helpers.push_back(std::move(hp));
  }
  plan.target_dual = dual_basis(tw, scheme.folded_column(scheme.erased()));
  return plan;
}

RepairTranscript run_repair(const RepairPlan& plan, const SubsymbolSource& source) {
  const RSCode& code = *plan.code;
  const Tower& tw = code.tower();
  const std::uint32_t t = tw.t();
  // acc_i accumulates Tr(lambda* g_i(alpha*) f(alpha*)) = -sum over helpers
  std::vector<Elem> acc(t, Elem{0});
  RepairTranscript tr;
  tr.erased = plan.erased;
  tr.alpha_star = code.point(plan.erased);
  for (const HelperPlan& hp : plan.helpers) {
    NodeDownload dl;
    dl.node = hp.node;
    dl.alpha = hp.alpha;
    dl.queries = hp.queries;
    for (Elem zeta : hp.queries) {
      const Elem r = source(hp.node, zeta);
      if (!tw.in_base(r)) throw ConsistencyError("helper returned a value outside the base field");
      dl.responses.push_back(r);
    }
    for (std::uint32_t i = 0; i < t; ++i) {
      Elem s{0};
      for (std::size_t j = 0; j < dl.responses.size(); ++j) {
        s = tw.add(s, tw.base_mul(hp.coords[i][j], dl.responses[j]));
      }
      acc[i] = tw.sub(acc[i], s);
    }
    tr.subsymbols += dl.responses.size();
    tr.downloads.push_back(std::move(dl));
  }
  Elem value{0};
  for (std::uint32_t i = 0; i < t; ++i) value = tw.add(value, tw.mul(acc[i], plan.target_dual[i]));
  // target_dual is dual to the folded column, so the multiplier at alpha* is already absorbed
  tr.reconstructed = value;
  tr.bits = subsymbol_bits(tw, tr.subsymbols);
  return tr;
}

RepairTranscript execute_repair(const RepairPlan& plan, std::span<const Elem> values) {
  const RSCode& code = *plan.code;
  if (values.size() != code.n()) throw InvalidArgument("codeword length differs from n");
  const Tower& tw = code.tower();
  const std::size_t erased = plan.erased;
  RepairTranscript tr = run_repair(plan, [&](std::size_t node, Elem query) {
    if (node == erased) throw ConsistencyError("repair queried the erased node");
    return tw.trace(tw.mul(query, values[node]));
  });
  if (tr.reconstructed != values[erased]) {
    throw ConsistencyError("repair reconstructed " + std::to_string(tr.reconstructed.v) + " but node stored " +
                           std::to_string(values[erased].v));
  }
  return tr;
}

RepairTranscript execute_repair(const RepairScheme& scheme, std::span<const Elem> values) {
  return execute_repair(plan_repair(scheme), values);
}

}  // namespace rsrepair
