// rsrepair: field, bound, scheme, simulate and verify subcommands.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "rsrepair/bounds.hpp"
#include "rsrepair/error.hpp"
#include "rsrepair/json_io.hpp"
#include "rsrepair/render.hpp"
#include "rsrepair/schemes.hpp"
#include "rsrepair/sim.hpp"
#include "rsrepair/verify.hpp"

using namespace rsrepair;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

TowerLimits limits_from_env() {
  TowerLimits lim;
  if (const char* env = std::getenv("RSREPAIR_MAX_FIELD_ORDER")) {
    try {
      lim.max_order = std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("RSREPAIR_MAX_FIELD_ORDER is not a number: ") + env);
    }
  }
  return lim;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

Json parse_inline_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

// Shared options describing a code.
struct CodeOptions {
  std::string spec_path;
  std::uint32_t p = 2, m = 1, t = 3;
  std::uint32_t k = 0;
  std::size_t n = 0;

  void attach(CLI::App* app) {
    auto* spec = app->add_option("--code", spec_path, "code spec JSON file {field, points|\"full\"|n, k}");
    app->add_option("--p", p, "characteristic")->excludes(spec);
    app->add_option("--m", m, "q = p^m")->excludes(spec);
    app->add_option("--t", t, "|F| = q^t")->excludes(spec);
    app->add_option("--k", k, "dimension")->excludes(spec);
    app->add_option("--n", n, "length; first n points of the full-length order")->excludes(spec);
  }

  CodePtr build(const TowerLimits& lim) const {
    if (!spec_path.empty()) return code_from_json(read_json_file(spec_path), lim);
    if (k == 0) throw InvalidArgument("give --code or --k (with --p/--m/--t)");
    Json j;
    j["field"] = {{"p", p}, {"m", m}, {"t", t}};
    j["k"] = k;
    if (n) j["n"] = n;
    return code_from_json(j, lim);
  }
};

Elem parse_point(const Tower& tw, const std::string& text) {
  std::string s = text;
  for (const std::string prefix : {"xi", "ξ"}) {
    if (s.rfind(prefix, 0) == 0) {
      std::string rest = s.substr(prefix.size());
      std::uint64_t e = 1;
      if (!rest.empty()) {
        if (rest[0] != '^') throw InvalidArgument("powers look like xi^3, got " + text);
        e = std::stoull(rest.substr(1));
      }
      if (!tw.has_log_table() && e >= tw.order()) throw InvalidArgument("exponent too large");
      return tw.primitive_power(e);
    }
  }
  return elem_from_json(tw, parse_inline_json(s, "--alpha-star"));
}

struct SchemeOptions {
  CodeOptions code;
  std::string kind = "c1";
  std::uint32_t s = 0;
  std::size_t erased = 0;
  std::string alpha_star;
  std::string basis, subspace, z;
  std::uint64_t search = 0;
  std::uint64_t seed = 1;

  void attach(CLI::App* app, bool with_search) {
    code.attach(app);
    app->add_option("--scheme", kind, "gw, c1, c2 or c3")->check(CLI::IsMember({"gw", "c1", "c2", "c3"}));
    app->add_option("--s", s, "subspace dimension / trace level (default: largest admissible)");
    auto* er = app->add_option("--erased", erased, "index of the erased node");
    app->add_option("--alpha-star", alpha_star, "erased evaluation point (xi^e or JSON element)")->excludes(er);
    app->add_option("--basis", basis, "JSON list of t elements (U or beta)");
    app->add_option("--subspace", subspace, "JSON list of s generators of W");
    app->add_option("--z", z, "JSON list of t points for c1");
    if (with_search) {
      app->add_option("--search-bases", search, "try this many random bases and keep the cheapest");
      app->add_option("--seed", seed, "seed for --search-bases");
    }
  }

  RepairScheme build(const TowerLimits& lim) const {
    CodePtr c = code.build(lim);
    const Tower& tw = c->tower();
    std::size_t e = erased;
    if (!alpha_star.empty()) {
      auto idx = c->index_of(parse_point(tw, alpha_star));
      if (!idx) throw InvalidArgument("alpha* is not an evaluation point of the code");
      e = *idx;
    }
    if (e >= c->n()) throw InvalidArgument("--erased out of range");
    const Method method = parse_method(kind);
    const std::uint32_t level = s ? s : choose_s(*c, method);
    auto list = [&](const std::string& text, const char* what) {
      return text.empty() ? std::vector<Elem>{} : elems_from_json(tw, parse_inline_json(text, what));
    };
    auto make = [&](std::vector<Elem> b) -> RepairScheme {
      switch (method) {
        case Method::gw:
          return build_gw_scheme(c, e, level, std::move(b));
        case Method::c1:
          if (s && s != 1) throw PreconditionError("Construction I is the case s = 1");
          return build_construction_1(c, e, list(z, "--z"));
        case Method::c2:
          return build_construction_2(c, e, level, std::move(b), list(subspace, "--subspace"));
        case Method::c3:
          return build_construction_3(c, e, level, std::move(b), list(subspace, "--subspace"));
        case Method::naive:
          break;
      }
      throw InvalidArgument("naive baseline has no check polynomials");
    };
    RepairScheme best = make(list(basis, "--basis"));
    if (search == 0 || method == Method::c1) return best;
    std::uint64_t best_bw = bandwidth_profile(best).total_subsymbols;
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < search; ++i) {
      std::vector<Elem> b(tw.t());
      for (Elem& x : b) x = Elem{1 + static_cast<std::uint32_t>(rng() % (tw.order() - 1))};
      if (rank_over_base(tw, b) != tw.t()) continue;
      RepairScheme cand = make(b);
      const auto bw = bandwidth_profile(cand).total_subsymbols;
      if (bw < best_bw) {
        best_bw = bw;
        best = std::move(cand);
      }
    }
    return best;
  }
};

int cmd_field(const CodeOptions& opt, const std::string& spec, const std::string& format, const TowerLimits& lim) {
  TowerPtr tw;
  if (!spec.empty()) {
    tw = field_from_json(read_json_file(spec), lim);
  } else {
    tw = Tower::build(opt.p, opt.m, opt.t, std::nullopt, lim);
  }
  Json j = field_to_json(*tw);
  j["q"] = tw->q();
  j["order"] = tw->order();
  j["primitive"] = elem_to_json(*tw, tw->primitive());
  j["log_table"] = tw->has_log_table();
  Json traces = Json::array();
  for (Elem b : tw->polynomial_basis()) traces.push_back(tw->trace(b).v);
  j["basis_traces"] = std::move(traces);
  if (format == "json") {
    write_output(j.dump(2), "");
    return kOk;
  }
  std::cout << "GF(" << tw->order() << ") = GF(" << tw->q() << ")^" << tw->t() << ", q = " << tw->p() << "^"
            << tw->m() << "\n";
  std::cout << "base modulus (low first): " << Json(tw->base_modulus()).dump() << "\n";
  std::cout << "ext modulus (low first):  " << j["ext_modulus"].dump() << "\n";
  std::cout << "primitive element: " << j["primitive"].dump() << "\n";
  return kOk;
}

int cmd_bound(std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r, std::uint32_t d, bool brute,
              const std::string& format) {
  if (d == 0 || t % d != 0) throw InvalidArgument("--subfield-degree must divide t");
  std::uint64_t qq = 1;
  for (std::uint32_t i = 0; i < d; ++i) qq *= q;
  const std::uint32_t tt = t / d;
  const BoundReport rep = integral_lower_bound(n, qq, tt, r);
  Json j = bound_to_json(rep);
  if (brute) j["brute_force_subsymbols"] = brute_force_min_bandwidth(n, qq, tt, r);
  if (format != "json") {
    std::ostringstream os;
    os << "n=" << n << " q=" << qq << " t=" << tt << " r=" << r << ": integral bound " << rep.integral_subsymbols
       << " sub-symbols = " << rep.integral_bits << " bits (ell=" << rep.ell << ", b_AVE in [" << rep.b_floor << ","
       << rep.b_ceil << "]); fractional " << rep.fractional_bits << " bits, ceiling " << rep.fractional_bits_ceil;
    std::cout << os.str() << "\n";
  }
  write_output(j.dump(2), "");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repair schemes and bandwidth bounds for Reed-Solomon codes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // field
  auto* field = app.add_subcommand("field", "build a field tower and print its description");
  CodeOptions field_opt;
  std::string field_spec, field_format = "text";
  auto* fspec = field->add_option("--spec", field_spec, "field spec JSON file");
  field->add_option("--p", field_opt.p, "characteristic")->excludes(fspec);
  field->add_option("--m", field_opt.m, "q = p^m")->excludes(fspec);
  field->add_option("--t", field_opt.t, "|F| = q^t")->excludes(fspec);
  field->add_option("--format", field_format)->check(CLI::IsMember({"text", "json"}));

  // bound
  auto* bound = app.add_subcommand("bound", "integral and fractional repair-bandwidth lower bounds");
  std::uint64_t bn = 0, bq = 0, br = 0;
  std::uint32_t bt = 0, bd = 1;
  bool bbrute = false;
  std::string bformat = "text";
  bound->add_option("--n", bn, "code length")->required();
  bound->add_option("--q", bq, "order of B")->required();
  bound->add_option("--t", bt, "|F| = q^t")->required();
  bound->add_option("--r", br, "redundancy n - k")->required();
  bound->add_option("--subfield-degree", bd, "repair over GF(q^d) instead of GF(q)");
  bound->add_flag("--brute-force", bbrute, "also run the exhaustive solver");
  bound->add_option("--format", bformat)->check(CLI::IsMember({"text", "json"}));

  // scheme
  auto* scheme = app.add_subcommand("scheme", "build or tabulate a repair scheme");
  scheme->require_subcommand(1);
  auto* sbuild = scheme->add_subcommand("build", "build a scheme and print it as JSON");
  SchemeOptions build_opt;
  std::string build_out;
  build_opt.attach(sbuild, true);
  sbuild->add_option("--out", build_out, "output file (default stdout)");
  auto* stable = scheme->add_subcommand("table", "check evaluations per node with the rank row");
  SchemeOptions table_opt;
  bool ascii = false;
  std::string table_format = "text";
  table_opt.attach(stable, false);
  stable->add_flag("--ascii", ascii, "write xi and . instead of Unicode");
  stable->add_option("--format", table_format)->check(CLI::IsMember({"text", "json"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "fail nodes and repair them over a message ledger");
  CodeOptions sim_code;
  sim_code.attach(sim);
  std::string sim_scheme = "c3", sim_failed = "all", sim_out;
  std::uint64_t sim_trials = 10, sim_seed = 1;
  std::uint32_t sim_s = 0;
  unsigned sim_threads = 1;
  bool sim_timing = false;
  sim->add_option("--scheme", sim_scheme, "gw, c1, c2, c3 or naive")
      ->check(CLI::IsMember({"gw", "c1", "c2", "c3", "naive"}));
  sim->add_option("--failed", sim_failed, "node index or 'all'");
  sim->add_option("--trials", sim_trials, "random codewords per failed node");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--s", sim_s, "scheme level (default: largest admissible)");
  sim->add_option("--threads", sim_threads, "worker threads");
  sim->add_flag("--timing", sim_timing, "include wall-clock times (output no longer byte-reproducible)");
  sim->add_option("--out", sim_out, "report file, .json or .csv (default: JSON on stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suites");
  std::vector<std::string> only;
  std::string vfield, vformat = "text";
  VerifyOptions vopt;
  verify->add_option("--only", only, "suite names")->delimiter(',');
  verify->add_option("--field", vfield, "restrict to one tower, e.g. p=2,m=1,t=3");
  verify->add_option("--seed", vopt.seed, "random seed");
  verify->add_option("--samples", vopt.samples, "random samples per configuration");
  verify->add_option("--sweep-cap", vopt.sweep_order_cap, "largest |F| in the optimality sweeps");
  verify->add_flag("--list", "list suite names and exit");
  verify->add_option("--format", vformat)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const TowerLimits lim = limits_from_env();
    if (field->parsed()) return cmd_field(field_opt, field_spec, field_format, lim);
    if (bound->parsed()) return cmd_bound(bn, bq, bt, br, bd, bbrute, bformat);
    if (sbuild->parsed()) {
      const RepairScheme sch = build_opt.build(lim);
      write_output(scheme_to_json(sch).dump(2), build_out);
      return kOk;
    }
    if (stable->parsed()) {
      const RepairScheme sch = table_opt.build(lim);
      if (table_format == "json") {
        write_output(render_table_json(sch).dump(2), "");
      } else {
        std::cout << render_table_text(sch, ascii);
        std::cout << "bandwidth: " << bandwidth_profile(sch).total_subsymbols << " sub-symbols\n";
      }
      return kOk;
    }
    if (sim->parsed()) {
      CodePtr code = sim_code.build(lim);
      SweepConfig cfg;
      cfg.label = sim_code.spec_path.empty() ? "inline" : sim_code.spec_path;
      cfg.p = code->tower().p();
      cfg.m = code->tower().m();
      cfg.t = code->tower().t();
      TowerModuli mod;
      mod.base = code->tower().base_modulus();
      mod.ext = code->tower().ext_modulus();
      cfg.moduli = mod;
      cfg.points = std::vector<Elem>(code->points().begin(), code->points().end());
      cfg.k = code->k();
      cfg.limits = lim;
      cfg.method = parse_method(sim_scheme);
      if (sim_s) cfg.s = sim_s;
      if (sim_failed != "all") {
        try {
          cfg.failed = std::stoull(sim_failed);
        } catch (const std::exception&) {
          throw InvalidArgument("--failed takes a node index or 'all'");
        }
      }
      const ExperimentReport rep = sweep({cfg}, sim_trials, sim_seed, sim_threads, sim_timing);
      const auto& row = rep.rows.front();
      if (row.error) {
        std::cerr << "error: " << *row.error << "\n";
        return kUsage;
      }
      const bool csv = sim_out.size() >= 4 && sim_out.substr(sim_out.size() - 4) == ".csv";
      write_output(csv ? report_to_csv(rep) : report_to_json(rep), sim_out);
      std::cerr << row.method << (row.s ? " s=" + std::to_string(*row.s) : std::string()) << ": "
                << row.trials.size() << " repairs, " << row.min_subsymbols << ".." << row.max_subsymbols
                << " sub-symbols (bound " << row.bound_subsymbols << "), "
                << (rep.ok() ? "all verified" : "FAILED") << "\n";
      return rep.ok() ? kOk : kFailed;
    }
    if (verify->parsed()) {
      if (verify->count("--list")) {
        for (const auto& s : suite_names()) std::cout << s << "\n";
        return kOk;
      }
      vopt.only = only;
      if (!vfield.empty()) vopt.field = parse_field_params(vfield);
      const auto results = run_verify(vopt);
      bool all = true;
      Json j = Json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        if (vformat == "json") {
          j.push_back({{"suite", r.name},
                       {"passed", r.passed},
                       {"skipped", r.skipped},
                       {"cases", r.cases},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
        } else {
          char secs[32];
          std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
          std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << secs << "): " << r.detail << "\n";
        }
      }
      if (vformat == "json") write_output(j.dump(2), "");
      return all ? kOk : kFailed;
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
