#include "rsrepair/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "rsrepair/error.hpp"

namespace rsrepair {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::gw:
      return "gw";
    case Method::c1:
      return "c1";
    case Method::c2:
      return "c2";
    case Method::c3:
      return "c3";
    case Method::naive:
      break;
  }
  return "naive";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::gw, Method::c1, Method::c2, Method::c3, Method::naive}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidArgument("unknown scheme '" + std::string(name) + "' (expected gw, c1, c2, c3 or naive)");
}

void MessageLedger::record_query(std::size_t, std::size_t) { ++queries_; }

void MessageLedger::record_response(std::size_t from, std::size_t to, std::uint64_t subsymbols) {
  sent_[from] += subsymbols;
  received_[to] += subsymbols;
}

std::uint64_t MessageLedger::sent_by(std::size_t node) const {
  auto it = sent_.find(node);
  return it == sent_.end() ? 0 : it->second;
}

std::uint64_t MessageLedger::received_by(std::size_t node) const {
  auto it = received_.find(node);
  return it == received_.end() ? 0 : it->second;
}

std::uint64_t MessageLedger::total_sent() const {
  std::uint64_t s = 0;
  for (const auto& [node, c] : sent_) s += c;
  return s;
}

std::uint64_t MessageLedger::total_received() const {
  std::uint64_t s = 0;
  for (const auto& [node, c] : received_) s += c;
  return s;
}

Cluster::Cluster(CodePtr code, Codeword codeword) : code_(std::move(code)), codeword_(std::move(codeword)) {
  if (codeword_.values.size() != code_->n()) throw InvalidArgument("codeword length differs from n");
}

Cluster Cluster::random(CodePtr code, std::mt19937_64& rng) {
  const std::uint32_t order = code->tower().order();
  std::vector<Elem> msg(code->k());
  for (Elem& c : msg) c = Elem{static_cast<std::uint32_t>(rng() % order)};
  Codeword cw = encode(*code, msg);
  return Cluster(std::move(code), std::move(cw));
}

void Cluster::fail(std::size_t node) {
  if (node >= size()) throw InvalidArgument("node index out of range");
  if (failed_) throw PreconditionError("a node has already failed; only single failures are modelled");
  failed_ = node;
}

void Cluster::restore(Elem value) {
  if (!failed_) throw PreconditionError("no failed node to restore");
  code_->tower().check(value);
  codeword_.values[*failed_] = value;
  failed_.reset();
}

Elem Cluster::answer(std::size_t node, Elem query) const {
  if (failed_ && *failed_ == node) throw ConsistencyError("query sent to the failed node");
  const Tower& tw = code_->tower();
  return tw.trace(tw.mul(query, codeword_.values.at(node)));
}

namespace {

std::uint64_t int_pow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint32_t choose_s(const RSCode& code, Method method) {
  const Tower& tw = code.tower();
  const std::uint32_t t = tw.t();
  switch (method) {
    case Method::naive:
      return 0;
    case Method::c1:
      return 1;
    case Method::gw:
      for (std::uint32_t s = t - 1; s >= 1; --s) {
        if (t % (t - s) == 0 && int_pow(tw.q(), s) <= code.r()) return s;
      }
      throw PreconditionError("trace scheme needs some 1 <= s < t with (t - s) | t and r >= q^s (r = " +
                              std::to_string(code.r()) + ")");
    case Method::c2:
    case Method::c3:
      for (std::uint32_t s = t - 1; s >= 1; --s) {
        if (int_pow(tw.q(), s) <= code.r()) return s;
      }
      throw PreconditionError("needs some 1 <= s < t with r >= q^s (r = " + std::to_string(code.r()) + ")");
  }
  return 0;
}

PreparedRepair prepare_repair(const CodePtr& code, std::size_t failed, Method method,
                              std::optional<std::uint32_t> s) {
  if (failed >= code->n()) throw InvalidArgument("failed node index out of range");
  PreparedRepair prep;
  prep.method = method;
  prep.failed = failed;
  if (method == Method::naive) {
    prep.profile_subsymbols = std::uint64_t{code->k()} * code->tower().t();
    return prep;
  }
  const std::uint32_t level = s ? *s : choose_s(*code, method);
  prep.s = level;
  std::optional<RepairScheme> scheme;
  switch (method) {
    case Method::gw:
      scheme.emplace(build_gw_scheme(code, failed, level));
      break;
    case Method::c1:
      if (level != 1) throw PreconditionError("Construction I is the case s = 1");
      scheme.emplace(build_construction_1(code, failed));
      break;
    case Method::c2:
      scheme.emplace(build_construction_2(code, failed, level));
      break;
    case Method::c3:
      scheme.emplace(build_construction_3(code, failed, level));
      break;
    case Method::naive:
      break;
  }
  prep.plan = plan_repair(*scheme);
  prep.profile_subsymbols = bandwidth_profile(*scheme).total_subsymbols;
  return prep;
}

namespace {

RepairTranscript naive_repair(Cluster& cluster, std::size_t failed, std::uint64_t seed, MessageLedger& ledger) {
  const RSCode& code = cluster.code();
  const Tower& tw = code.tower();
  std::vector<std::size_t> helpers;
  for (std::size_t i = 0; i < code.n(); ++i) {
    if (i != failed) helpers.push_back(i);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = helpers.size(); i > 1; --i) std::swap(helpers[i - 1], helpers[rng() % i]);
  helpers.resize(code.k());
  std::sort(helpers.begin(), helpers.end());

  const auto basis = tw.polynomial_basis();
  const auto dual = dual_basis(tw, basis);
  RepairTranscript tr;
  tr.erased = failed;
  tr.alpha_star = code.point(failed);
  std::vector<Elem> xs;
  std::vector<Elem> ys;
  for (std::size_t node : helpers) {
    NodeDownload dl;
    dl.node = node;
    dl.alpha = code.point(node);
    Elem symbol{0};
    for (std::size_t i = 0; i < basis.size(); ++i) {
      ledger.record_query(cluster.newcomer(), node);
      const Elem r = cluster.answer(node, basis[i]);
      ledger.record_response(node, cluster.newcomer(), 1);
      dl.queries.push_back(basis[i]);
      dl.responses.push_back(r);
      symbol = tw.add(symbol, tw.mul(r, dual[i]));
    }
    xs.push_back(dl.alpha);
    ys.push_back(symbol);
    tr.subsymbols += dl.responses.size();
    tr.downloads.push_back(std::move(dl));
  }
  tr.reconstructed = lagrange_eval(tw, xs, ys, tr.alpha_star);
  tr.bits = subsymbol_bits(tw, tr.subsymbols);
  return tr;
}

}  // namespace

RepairOutcome run_prepared(Cluster& cluster, const PreparedRepair& prep, std::uint64_t seed) {
  if (prep.plan && prep.plan->code != cluster.code_ptr()) {
    throw InvalidArgument("prepared repair belongs to a different code");
  }
  cluster.fail(prep.failed);
  MessageLedger ledger;
  const std::size_t me = cluster.newcomer();
  RepairOutcome out;
  out.method = prep.method;
  out.s = prep.s;
  out.failed = prep.failed;
  if (prep.plan) {
    out.transcript = run_repair(*prep.plan, [&](std::size_t node, Elem query) {
      ledger.record_query(me, node);
      const Elem r = cluster.answer(node, query);
      ledger.record_response(node, me, 1);
      return r;
    });
  } else {
    out.transcript = naive_repair(cluster, prep.failed, seed, ledger);
  }
  const Elem original = cluster.original(prep.failed);
  out.verified = out.transcript.reconstructed == original;
  cluster.restore(out.verified ? out.transcript.reconstructed : original);

  out.subsymbols = out.transcript.subsymbols;
  out.bits = out.transcript.bits;
  out.sent = ledger.total_sent();
  out.received = ledger.total_received();
  out.queries = ledger.queries();
  if (out.sent != out.received || out.sent != out.subsymbols || out.subsymbols != prep.profile_subsymbols) {
    throw ConsistencyError("ledger (" + std::to_string(out.sent) + " sent, " + std::to_string(out.received) +
                           " received) disagrees with the bandwidth profile (" +
                           std::to_string(prep.profile_subsymbols) + ")");
  }
  return out;
}

RepairOutcome run_failure_and_repair(Cluster& cluster, std::size_t failed, Method method, std::uint64_t seed,
                                     std::optional<std::uint32_t> s) {
  return run_prepared(cluster, prepare_repair(cluster.code_ptr(), failed, method, s), seed);
}

CodePtr make_code(const SweepConfig& config) {
  auto tower = Tower::build(config.p, config.m, config.t, config.moduli, config.limits);
  if (config.points) return RSCode::with_points(tower, *config.points, config.k);
  if (config.n && *config.n != tower->order()) {
    if (*config.n > tower->order()) throw InvalidArgument("n exceeds |F|");
    auto full = RSCode::full_length(tower, 1);
    std::vector<Elem> pts(full->points().begin(), full->points().begin() + static_cast<std::ptrdiff_t>(*config.n));
    return RSCode::with_points(tower, std::move(pts), config.k);
  }
  return RSCode::full_length(tower, config.k);
}

namespace {

ConfigResult run_config(const SweepConfig& cfg, std::size_t index, std::uint64_t trials, std::uint64_t seed,
                        bool timing) {
  const auto start = std::chrono::steady_clock::now();
  ConfigResult row;
  row.label = cfg.label;
  row.method = std::string(to_string(cfg.method));
  row.p = cfg.p;
  row.m = cfg.m;
  row.t = cfg.t;
  try {
    CodePtr code = make_code(cfg);
    const Tower& tw = code->tower();
    row.q = tw.q();
    row.n = code->n();
    row.k = code->k();
    row.r = code->r();
    const BoundReport bound = integral_lower_bound(row.n, row.q, tw.t(), row.r);
    row.bound_subsymbols = bound.integral_subsymbols;
    row.bound_bits = bound.integral_bits;
    row.fractional_bits = bound.fractional_bits;

    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
    std::vector<Cluster> clusters;
    clusters.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) clusters.push_back(Cluster::random(code, rng));

    std::vector<std::size_t> nodes;
    if (cfg.failed) {
      if (*cfg.failed >= code->n()) throw InvalidArgument("failed node index out of range");
      nodes.push_back(*cfg.failed);
    } else {
      for (std::size_t i = 0; i < code->n(); ++i) nodes.push_back(i);
    }
    row.all_verified = true;
    row.sound = true;
    row.conserved = true;
    row.min_subsymbols = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t node : nodes) {
      const PreparedRepair prep = prepare_repair(code, node, cfg.method, cfg.s);
      row.s = prep.s;
      for (std::uint64_t i = 0; i < trials; ++i) {
        const RepairOutcome out = run_prepared(clusters[i], prep, rng());
        TrialRecord rec{node, i, out.subsymbols, out.bits, out.verified, out.sent, out.received};
        row.all_verified = row.all_verified && out.verified;
        row.sound = row.sound && out.subsymbols >= row.bound_subsymbols;
        row.conserved = row.conserved && out.sent == out.received;
        row.min_subsymbols = std::min(row.min_subsymbols, out.subsymbols);
        row.max_subsymbols = std::max(row.max_subsymbols, out.subsymbols);
        row.trials.push_back(rec);
      }
    }
    if (row.trials.empty()) row.min_subsymbols = 0;
    row.gap_subsymbols =
        static_cast<std::int64_t>(row.max_subsymbols) - static_cast<std::int64_t>(row.bound_subsymbols);
  } catch (const Error& e) {
    row.error = e.what();
    row.all_verified = false;
    row.sound = false;
    row.conserved = false;
    row.trials.clear();
  }
  if (timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

}  // namespace

bool ExperimentReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConfigResult& r) {
    return !r.error && r.all_verified && r.sound && r.conserved;
  });
}

ExperimentReport sweep(const std::vector<SweepConfig>& configs, std::uint64_t trials, std::uint64_t seed,
                       unsigned threads, bool timing) {
  ExperimentReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.rows.resize(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      rep.rows[i] = run_config(configs[i], i, trials, seed, timing);
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rep;
}

std::string report_to_json(const ExperimentReport& report, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["ok"] = report.ok();
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["label"] = r.label;
    row["method"] = r.method;
    row["p"] = r.p;
    row["m"] = r.m;
    row["t"] = r.t;
    row["q"] = r.q;
    row["n"] = r.n;
    row["k"] = r.k;
    row["r"] = r.r;
    row["s"] = r.s ? ordered_json(*r.s) : ordered_json(nullptr);
    row["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
    row["bound"] = {{"integral_subsymbols", r.bound_subsymbols},
                    {"integral_bits", r.bound_bits},
                    {"fractional_bits", r.fractional_bits}};
    row["min_subsymbols"] = r.min_subsymbols;
    row["max_subsymbols"] = r.max_subsymbols;
    row["gap_subsymbols"] = r.gap_subsymbols;
    row["all_verified"] = r.all_verified;
    row["sound"] = r.sound;
    row["conserved"] = r.conserved;
    if (r.wall_ms) row["wall_ms"] = *r.wall_ms;
    ordered_json tr = ordered_json::array();
    for (const auto& t : r.trials) {
      tr.push_back({{"failed", t.failed},
                    {"trial", t.trial},
                    {"subsymbols", t.subsymbols},
                    {"bits", t.bits},
                    {"verified", t.verified},
                    {"sent", t.sent},
                    {"received", t.received}});
    }
    row["per_trial"] = std::move(tr);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(indent);
}

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "label,method,p,m,t,q,n,k,r,s,failed,trial,subsymbols,bits,bound_subsymbols,bound_bits,gap_subsymbols,"
        "verified,sent,received,error";
  bool any_timing = false;
  for (const auto& r : report.rows) any_timing = any_timing || r.wall_ms.has_value();
  if (any_timing) os << ",wall_ms";
  os << "\n";
  for (const auto& r : report.rows) {
    const std::string head = csv_field(r.label) + "," + r.method + "," + std::to_string(r.p) + "," +
                             std::to_string(r.m) + "," + std::to_string(r.t) + "," + std::to_string(r.q) + "," +
                             std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.r) + "," +
                             (r.s ? std::to_string(*r.s) : "");
    const std::string tail = any_timing ? "," + (r.wall_ms ? fmt_double(*r.wall_ms) : "") : "";
    if (r.error) {
      os << head << ",,,,," << r.bound_subsymbols << "," << fmt_double(r.bound_bits) << ",,,,," << csv_field(*r.error)
         << tail << "\n";
      continue;
    }
    for (const auto& t : r.trials) {
      os << head << "," << t.failed << "," << t.trial << "," << t.subsymbols << "," << fmt_double(t.bits) << ","
         << r.bound_subsymbols << "," << fmt_double(r.bound_bits) << ","
         << static_cast<std::int64_t>(t.subsymbols) - static_cast<std::int64_t>(r.bound_subsymbols) << ","
         << (t.verified ? "true" : "false") << "," << t.sent << "," << t.received << "," << tail << "\n";
    }
  }
  return os.str();
}

}  // namespace rsrepair
