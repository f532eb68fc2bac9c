#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsrepair/checks.hpp"
#include "rsrepair/rs_code.hpp"

namespace rsrepair {

enum class SchemeKind {
  trace,          // trace polynomials, optionally over an intermediate subfield
  construction1,  // linear checks beta_i (x - z_i), q = 2
  construction2,  // products over inverses of a subspace
  construction3,  // subspace (linearized) polynomials
  custom,
};

std::string_view to_string(SchemeKind kind);

/// Parameters a scheme was built from, kept for reporting and rendering.
struct Provenance {
  SchemeKind kind = SchemeKind::custom;
  std::uint32_t s = 0;
  std::vector<Elem> basis;     // U for trace / construction 3, beta for 1 and 2
  std::vector<Elem> subspace;  // generators of W
  std::vector<Elem> z_points;  // construction 1 roots
};

/// t check polynomials that repair the node at `erased`. Construction
/// validates deg g_i <= r - 1 and rank_B {g_i(alpha*)} = t.
class RepairScheme {
 public:
  RepairScheme(CodePtr code, std::size_t erased, std::vector<CheckPolynomial> checks, Provenance provenance);

  const RSCode& code() const { return *code_; }
  const CodePtr& code_ptr() const { return code_; }
  const Tower& tower() const { return code_->tower(); }
  std::size_t erased() const { return erased_; }
  Elem alpha_star() const { return code_->point(erased_); }
  const std::vector<CheckPolynomial>& checks() const { return checks_; }
  const Provenance& provenance() const { return provenance_; }

  /// g_i(alpha) for every check at node `node`.
  std::vector<Elem> column(std::size_t node) const;
  /// lambda_alpha * g_i(alpha).
  std::vector<Elem> folded_column(std::size_t node) const;

 private:
  CodePtr code_;
  std::size_t erased_;
  std::vector<CheckPolynomial> checks_;
  Provenance provenance_;
};

/// Trace scheme over GF(q^(t-s)): g_i = g_{u_i, alpha*}. Needs (t - s) | t and
/// r >= q^s; s = t - 1 is the plain base-field version. Empty basis means the
/// polynomial basis.
RepairScheme build_gw_scheme(CodePtr code, std::size_t erased, std::uint32_t s, std::vector<Elem> basis = {});

/// g_i(x) = beta_i (x - z_i) with beta_i = alpha* - z_i. Needs q = 2, r >= 2 and
/// {alpha* - z_i} a GF(2)-basis. Empty z means z_i = alpha* - (polynomial basis)_i.
RepairScheme build_construction_1(CodePtr code, std::size_t erased, std::vector<Elem> z = {});

/// g_i(x) = beta_i prod_{w in W*} (x - (alpha* - w^(-1) beta_i)). Needs
/// 1 <= s < t and r >= q^s. Defaults: beta = polynomial basis,
/// W = span{1, y, ..., y^(s-1)}.
RepairScheme build_construction_2(CodePtr code, std::size_t erased, std::uint32_t s, std::vector<Elem> beta = {},
                                  std::vector<Elem> subspace = {});

/// g_i(x) = L_W(u_i (x - alpha*)) / (x - alpha*). Same preconditions and
/// defaults as construction 2.
RepairScheme build_construction_3(CodePtr code, std::size_t erased, std::uint32_t s, std::vector<Elem> basis = {},
                                  std::vector<Elem> subspace = {});

/// Default subspace: B-span of the first s polynomial-basis elements.
std::vector<Elem> default_subspace(const Tower& tower, std::uint32_t s);

struct NodeBandwidth {
  std::size_t node = 0;
  Elem alpha;
  std::uint32_t subsymbols = 0;
};

struct BandwidthProfile {
  std::vector<NodeBandwidth> per_node;  // helpers only, in node order
  std::uint64_t total_subsymbols = 0;
  double total_bits = 0.0;
};

/// Bits carried by `count` elements of B: count * m * log2(p).
double subsymbol_bits(const Tower& tower, std::uint64_t count);

/// b_alpha = rank_B of the folded column at every helper.
BandwidthProfile bandwidth_profile(const RepairScheme& scheme);

/// What to ask each helper and how to recombine the answers.
struct HelperPlan {
  std::size_t node = 0;
  Elem alpha;
  std::vector<Elem> queries;              // zeta_1..zeta_b
  std::vector<std::vector<Elem>> coords;  // t rows: lambda g_i(alpha) = sum_j coords[i][j] zeta_j
};

struct RepairPlan {
  CodePtr code;
  std::size_t erased = 0;
  std::vector<HelperPlan> helpers;
  std::vector<Elem> target_dual;  // trace-dual basis of {lambda* g_i(alpha*)}
  std::uint64_t total_subsymbols = 0;
};

RepairPlan plan_repair(const RepairScheme& scheme);

struct NodeDownload {
  std::size_t node = 0;
  Elem alpha;
  std::vector<Elem> queries;
  std::vector<Elem> responses;  // elements of B
};

struct RepairTranscript {
  std::size_t erased = 0;
  Elem alpha_star;
  std::vector<NodeDownload> downloads;
  Elem reconstructed;
  std::uint64_t subsymbols = 0;
  double bits = 0.0;
};

/// Answers Tr(query * stored symbol) for a helper node.
using SubsymbolSource = std::function<Elem(std::size_t node, Elem query)>;

/// Runs the trace repair equations against an arbitrary responder.
RepairTranscript run_repair(const RepairPlan& plan, const SubsymbolSource& source);

/// Repairs values[erased] from the other positions and throws
/// ConsistencyError if the result differs from the stored value.
RepairTranscript execute_repair(const RepairScheme& scheme, std::span<const Elem> values);
RepairTranscript execute_repair(const RepairPlan& plan, std::span<const Elem> values);

}  // namespace rsrepair
