#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rsrepair {

struct FieldParams {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::uint32_t t = 1;
};

/// Parses "p=2,m=1,t=3" (any order; m defaults to 1).
FieldParams parse_field_params(const std::string& text);

struct VerifyOptions {
  std::vector<std::string> only;     // empty: every suite
  std::optional<FieldParams> field;  // restrict parametric suites to one tower
  std::uint64_t seed = 1;
  std::uint64_t samples = 100;       // random messages / pairs per configuration
  std::uint64_t sweep_order_cap = std::uint64_t{1} << 12;  // |F| limit of the optimality sweep
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::uint64_t cases = 0;
  std::string detail;  // first failure, or a short summary
  double seconds = 0.0;
};

std::vector<std::string> suite_names();

/// Runs the selected suites in a fixed order. Unknown names in `only` throw
/// InvalidArgument before anything runs.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

}  // namespace rsrepair
