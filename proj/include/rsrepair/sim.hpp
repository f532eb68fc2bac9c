#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rsrepair/bounds.hpp"
#include "rsrepair/rs_code.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

enum class Method { gw, c1, c2, c3, naive };

std::string_view to_string(Method method);
/// Accepts gw, c1, c2, c3, naive. Throws InvalidArgument otherwise.
Method parse_method(std::string_view name);

/// In-process stand-in for the network. Every response is booked once at the
/// sender and once at the receiver.
class MessageLedger {
 public:
  void record_query(std::size_t from, std::size_t to);
  void record_response(std::size_t from, std::size_t to, std::uint64_t subsymbols);

  std::uint64_t queries() const { return queries_; }
  std::uint64_t sent_by(std::size_t node) const;
  std::uint64_t received_by(std::size_t node) const;
  std::uint64_t total_sent() const;
  std::uint64_t total_received() const;

 private:
  std::uint64_t queries_ = 0;
  std::map<std::size_t, std::uint64_t> sent_;
  std::map<std::size_t, std::uint64_t> received_;
};

/// n storage nodes holding one codeword, at most one of them failed.
class Cluster {
 public:
  Cluster(CodePtr code, Codeword codeword);
  /// Encodes a uniformly random message drawn from rng.
  static Cluster random(CodePtr code, std::mt19937_64& rng);

  const RSCode& code() const { return *code_; }
  const CodePtr& code_ptr() const { return code_; }
  const Codeword& codeword() const { return codeword_; }
  std::size_t size() const { return codeword_.values.size(); }
  /// Id used for the replacement node in the ledger.
  std::size_t newcomer() const { return size(); }

  void fail(std::size_t node);
  std::optional<std::size_t> failed() const { return failed_; }
  /// Stores a repaired symbol back and clears the failure.
  void restore(Elem value);

  /// Tr(query * stored symbol); refuses to answer for the failed node.
  Elem answer(std::size_t node, Elem query) const;
  /// The original symbol, for checking a repair after the fact.
  Elem original(std::size_t node) const { return codeword_.values.at(node); }

 private:
  CodePtr code_;
  Codeword codeword_;
  std::optional<std::size_t> failed_;
};

/// Scheme and download plan for one (code, failed node, method), reusable
/// across codewords.
struct PreparedRepair {
  Method method = Method::gw;
  std::optional<std::uint32_t> s;
  std::size_t failed = 0;
  std::optional<RepairPlan> plan;  // absent for the naive baseline
  std::uint64_t profile_subsymbols = 0;
};

/// Largest admissible s for the method, or PreconditionError naming the
/// condition that fails for every s.
std::uint32_t choose_s(const RSCode& code, Method method);

PreparedRepair prepare_repair(const CodePtr& code, std::size_t failed, Method method,
                              std::optional<std::uint32_t> s = std::nullopt);

struct RepairOutcome {
  Method method = Method::gw;
  std::optional<std::uint32_t> s;
  std::size_t failed = 0;
  RepairTranscript transcript;
  bool verified = false;  // reconstructed == original symbol
  std::uint64_t subsymbols = 0;
  double bits = 0.0;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::uint64_t queries = 0;
};

/// Fails `failed`, repairs it through the ledger and restores it. The seed
/// selects the k helpers of the naive baseline; the other methods use all
/// n - 1 helpers. Throws ConsistencyError if the ledger disagrees with the
/// bandwidth profile.
RepairOutcome run_prepared(Cluster& cluster, const PreparedRepair& prep, std::uint64_t seed);
RepairOutcome run_failure_and_repair(Cluster& cluster, std::size_t failed, Method method, std::uint64_t seed,
                                     std::optional<std::uint32_t> s = std::nullopt);

struct SweepConfig {
  std::string label;
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::uint32_t t = 1;
  std::optional<TowerModuli> moduli;
  std::optional<std::vector<Elem>> points;  // explicit evaluation set
  std::optional<std::size_t> n;             // else the first n points of the full-length order
  std::uint32_t k = 1;
  Method method = Method::gw;
  std::optional<std::uint32_t> s;
  std::optional<std::size_t> failed;  // empty: every node in turn
  TowerLimits limits;
};

struct TrialRecord {
  std::size_t failed = 0;
  std::uint64_t trial = 0;
  std::uint64_t subsymbols = 0;
  double bits = 0.0;
  bool verified = false;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
};

struct ConfigResult {
  std::string label;
  std::string method;
  std::uint32_t p = 0, m = 0, t = 0;
  std::uint64_t q = 0, n = 0, k = 0, r = 0;
  std::optional<std::uint32_t> s;
  std::optional<std::string> error;  // set when the config could not run
  std::vector<TrialRecord> trials;
  std::uint64_t bound_subsymbols = 0;
  double bound_bits = 0.0;
  double fractional_bits = 0.0;
  std::uint64_t min_subsymbols = 0;
  std::uint64_t max_subsymbols = 0;
  std::int64_t gap_subsymbols = 0;  // max measured - integral bound
  bool all_verified = false;
  bool sound = false;               // no trial below the integral bound
  bool conserved = false;           // sender and receiver totals agree
  std::optional<double> wall_ms;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<ConfigResult> rows;  // in config order

  bool ok() const;
};

/// Runs every config for `trials` random codewords per failed node. Configs
/// are distributed over `threads` workers; each draws from its own stream
/// derived from (seed, config index), so output does not depend on the
/// thread count. Errors are reported per row.
ExperimentReport sweep(const std::vector<SweepConfig>& configs, std::uint64_t trials, std::uint64_t seed,
                       unsigned threads = 1, bool timing = false);

/// Builds the code described by a sweep config.
CodePtr make_code(const SweepConfig& config);

std::string report_to_json(const ExperimentReport& report, int indent = 2);
/// One line per trial, header first. Rows that failed to run produce a single
/// line with the error column set.
std::string report_to_csv(const ExperimentReport& report);

}  // namespace rsrepair
