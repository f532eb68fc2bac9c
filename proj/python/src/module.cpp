#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "rsrepair/bounds.hpp"
#include "rsrepair/error.hpp"
#include "rsrepair/json_io.hpp"
#include "rsrepair/render.hpp"
#include "rsrepair/schemes.hpp"
#include "rsrepair/sim.hpp"
#include "rsrepair/verify.hpp"

namespace py = pybind11;
using namespace rsrepair;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

TowerLimits limits_from_env() {
  TowerLimits lim;
  if (const char* env = std::getenv("RSREPAIR_MAX_FIELD_ORDER")) lim.max_order = std::stoull(env);
  return lim;
}

CodePtr code_for(std::uint32_t p, std::uint32_t m, std::uint32_t t, std::uint32_t k, std::optional<std::size_t> n) {
  SweepConfig c;
  c.p = p;
  c.m = m;
  c.t = t;
  c.k = k;
  c.n = n;
  c.limits = limits_from_env();
  return make_code(c);
}

std::vector<Elem> elems(const Tower& tw, const std::optional<std::vector<std::uint32_t>>& xs) {
  std::vector<Elem> out;
  if (!xs) return out;
  for (auto v : *xs) {
    tw.check(Elem{v});
    out.push_back(Elem{v});
  }
  return out;
}

struct SchemeArgs {
  std::uint32_t p, t, k;
  std::string scheme;
  std::uint32_t m;
  std::optional<std::size_t> n;
  std::optional<std::uint32_t> s;
  std::size_t erased;
  std::optional<std::vector<std::uint32_t>> basis, subspace;
};

RepairScheme make_scheme(const SchemeArgs& a) {
  CodePtr code = code_for(a.p, a.m, a.t, a.k, a.n);
  const Tower& tw = code->tower();
  const Method method = parse_method(a.scheme);
  const std::uint32_t s = a.s ? *a.s : choose_s(*code, method);
  switch (method) {
    case Method::gw:
      return build_gw_scheme(code, a.erased, s, elems(tw, a.basis));
    case Method::c1:
      if (s != 1) throw PreconditionError("Construction I is the case s = 1");
      return build_construction_1(code, a.erased, elems(tw, a.basis));
    case Method::c2:
      return build_construction_2(code, a.erased, s, elems(tw, a.basis), elems(tw, a.subspace));
    case Method::c3:
      return build_construction_3(code, a.erased, s, elems(tw, a.basis), elems(tw, a.subspace));
    case Method::naive:
      break;
  }
  throw InvalidArgument("the naive baseline has no check polynomials");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Repair schemes for Reed-Solomon codes over tower fields.";

  static py::exception<Error> base(mod, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(mod, "InvalidArgument", base.ptr());
  py::register_exception<PreconditionError>(mod, "PreconditionError", base.ptr());
  py::register_exception<CapExceeded>(mod, "CapExceeded", base.ptr());
  py::register_exception<InvalidCheck>(mod, "InvalidCheck", base.ptr());
  py::register_exception<ConsistencyError>(mod, "ConsistencyError", base.ptr());

  mod.def(
      "field",
      [](std::uint32_t p, std::uint32_t m, std::uint32_t t) {
        auto tw = Tower::build(p, m, t, std::nullopt, limits_from_env());
        Json j = field_to_json(*tw);
        j["q"] = tw->q();
        j["order"] = tw->order();
        j["primitive"] = tw->primitive().v;
        return to_python(j);
      },
      py::arg("p"), py::arg("m") = 1, py::arg("t") = 1,
      "Tower GF(p) <= GF(p^m) <= GF(p^(mt)) with its moduli. Elements are integer indices.");

  mod.def(
      "bound", [](std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r) {
        return to_python(bound_to_json(integral_lower_bound(n, q, t, r)));
      },
      py::arg("n"), py::arg("q"), py::arg("t"), py::arg("r"), "Integral and fractional repair bandwidth bounds.");

  mod.def("brute_force_min_bandwidth", [](std::uint64_t n, std::uint64_t q, std::uint32_t t, std::uint64_t r) {
    return brute_force_min_bandwidth(n, q, t, r);
  }, py::arg("n"), py::arg("q"), py::arg("t"), py::arg("r"));

  auto scheme_args = [](std::uint32_t p, std::uint32_t t, std::uint32_t k, std::string scheme, std::uint32_t m,
                        std::optional<std::size_t> n, std::optional<std::uint32_t> s, std::size_t erased,
                        std::optional<std::vector<std::uint32_t>> basis,
                        std::optional<std::vector<std::uint32_t>> subspace) {
    return SchemeArgs{p, t, k, std::move(scheme), m, n, s, erased, std::move(basis), std::move(subspace)};
  };

  mod.def(
      "build_scheme",
      [=](std::uint32_t p, std::uint32_t t, std::uint32_t k, std::string scheme, std::uint32_t m,
          std::optional<std::size_t> n, std::optional<std::uint32_t> s, std::size_t erased,
          std::optional<std::vector<std::uint32_t>> basis, std::optional<std::vector<std::uint32_t>> subspace) {
        return to_python(scheme_to_json(make_scheme(scheme_args(p, t, k, scheme, m, n, s, erased, basis, subspace))));
      },
      py::arg("p"), py::arg("t"), py::arg("k"), py::arg("scheme") = "c3", py::arg("m") = 1,
      py::arg("n") = py::none(), py::arg("s") = py::none(), py::arg("erased") = 0, py::arg("basis") = py::none(),
      py::arg("subspace") = py::none(),
      "Builds gw, c1, c2 or c3 for the node at index `erased`; returns the scheme with its bandwidth profile.");

  mod.def(
      "scheme_table",
      [=](std::uint32_t p, std::uint32_t t, std::uint32_t k, std::string scheme, std::uint32_t m,
          std::optional<std::size_t> n, std::optional<std::uint32_t> s, std::size_t erased, bool ascii) {
        return render_table_text(make_scheme(scheme_args(p, t, k, scheme, m, n, s, erased, std::nullopt, std::nullopt)),
                                 ascii);
      },
      py::arg("p"), py::arg("t"), py::arg("k"), py::arg("scheme") = "c3", py::arg("m") = 1,
      py::arg("n") = py::none(), py::arg("s") = py::none(), py::arg("erased") = 0, py::arg("ascii") = false);

  mod.def(
      "repair",
      [=](std::vector<std::uint32_t> message, std::uint32_t p, std::uint32_t t, std::string scheme, std::uint32_t m,
          std::optional<std::size_t> n, std::optional<std::uint32_t> s, std::size_t erased) {
        const auto k = static_cast<std::uint32_t>(message.size());
        const RepairScheme sc = make_scheme(scheme_args(p, t, k, scheme, m, n, s, erased, std::nullopt, std::nullopt));
        const auto cw = encode(sc.code(), elems(sc.tower(), message));
        Json j = transcript_to_json(sc.tower(), execute_repair(sc, cw.values));
        j["stored"] = elem_to_json(sc.tower(), cw.values[erased]);
        return to_python(j);
      },
      py::arg("message"), py::arg("p"), py::arg("t"), py::arg("scheme") = "c3", py::arg("m") = 1,
      py::arg("n") = py::none(), py::arg("s") = py::none(), py::arg("erased") = 0,
      "Encodes the message (k coefficients, as element indices), erases one node and repairs it.");

  mod.def(
      "simulate",
      [](std::uint32_t p, std::uint32_t t, std::uint32_t k, std::string scheme, std::uint32_t m,
         std::optional<std::size_t> n, std::optional<std::uint32_t> s, std::optional<std::size_t> failed,
         std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        SweepConfig c;
        c.label = "python";
        c.p = p;
        c.m = m;
        c.t = t;
        c.k = k;
        c.n = n;
        c.s = s;
        c.failed = failed;
        c.method = parse_method(scheme);
        c.limits = limits_from_env();
        ExperimentReport rep;
        {
          py::gil_scoped_release release;
          rep = sweep({c}, trials, seed, threads);
        }
        return to_python(Json::parse(report_to_json(rep)));
      },
      py::arg("p"), py::arg("t"), py::arg("k"), py::arg("scheme") = "c3", py::arg("m") = 1,
      py::arg("n") = py::none(), py::arg("s") = py::none(), py::arg("failed") = py::none(), py::arg("trials") = 1,
      py::arg("seed") = 1, py::arg("threads") = 1,
      "Random codewords, one failure at a time, repaired through the message ledger.");

  mod.def(
      "verify",
      [](std::optional<std::vector<std::string>> only, std::uint64_t seed, std::uint64_t samples) {
        VerifyOptions o;
        if (only) o.only = *only;
        o.seed = seed;
        o.samples = samples;
        std::vector<SuiteResult> res;
        {
          py::gil_scoped_release release;
          res = run_verify(o);
        }
        py::list out;
        for (const auto& r : res) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["skipped"] = r.skipped;
          d["cases"] = r.cases;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = py::none(), py::arg("seed") = 1, py::arg("samples") = 100);

  mod.def("suite_names", &suite_names);
}
