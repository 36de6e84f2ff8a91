#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "frobenius/errors.hpp"
#include "frobenius/harmonic.hpp"
#include "frobenius/runner.hpp"

namespace py = pybind11;
using namespace frobenius;

namespace {

CurveFamily family_from(const py::object& spec) {
    const auto parsed = parse_family(json::parse(py::str(py::module_::import("json").attr("dumps")(spec)).cast<std::string>()));
    if (!parsed.family) throw ConfigError("expected a family spec, not a fixed curve");
    return *parsed.family;
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict report_dict(const StatReport& r) {
    py::dict d;
    d["total"] = r.total;
    d["pi_x"] = r.pi_x;
    d["parameters"] = r.parameters;
    d["avg_per_param"] = r.avg_per_param;
    d["ratio_to_pi"] = r.ratio_to_pi;
    py::list rows;
    for (const auto& row : r.rows) rows.append(py::make_tuple(row.p, row.param_count, row.contribution, row.cumulative));
    d["rows"] = rows;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Frobenius trace, field and angle statistics";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DegenerateFamily>(m, "DegenerateFamily", PyExc_ValueError);
    py::register_exception<HypothesisViolation>(m, "HypothesisViolation", PyExc_ValueError);

    m.def("primes", [](std::int64_t limit) { return sieve_primes(limit).primes; }, py::arg("limit"));
    m.def("legendre", &legendre, py::arg("a"), py::arg("p"));
    m.def("mod_inverse", &mod_inverse, py::arg("a"), py::arg("p"));
    m.def("isqrt", &isqrt, py::arg("n"));
    m.def("squarefree_part", &squarefree_part, py::arg("n"));
    m.def("mobius", &mobius, py::arg("d"));

    m.def("trace", [](std::int64_t p, std::int64_t a, std::int64_t b) { return trace(make_curve(p, a, b)); },
          py::arg("p"), py::arg("A"), py::arg("B"));
    m.def("trace_naive", [](std::int64_t p, std::int64_t a, std::int64_t b) { return trace_naive(make_curve(p, a, b)); },
          py::arg("p"), py::arg("A"), py::arg("B"));
    m.def("frobenius_angle", &frobenius_angle, py::arg("a"), py::arg("p"));
    m.def("frobenius_field_disc", &frobenius_field_disc, py::arg("a"), py::arg("p"));
    m.def("st_density", [](double alpha, double beta) { return st_density(AngleWindow(alpha, beta)); },
          py::arg("alpha"), py::arg("beta"));

    m.def("pi_trace",
          [](std::int64_t a, std::int64_t b, const py::object& seq, std::int64_t x, unsigned workers) {
              const auto s = parse_sequence(json::parse(py::str(py::module_::import("json").attr("dumps")(seq)).cast<std::string>()));
              return report_dict(pi_trace(CurveSource::fixed(a, b), s, x, workers));
          },
          py::arg("A"), py::arg("B"), py::arg("seq"), py::arg("x"), py::arg("workers") = 1);
    m.def("pi_field",
          [](std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t x, unsigned workers) {
              return report_dict(pi_field(CurveSource::fixed(a, b), d, x, workers));
          },
          py::arg("A"), py::arg("B"), py::arg("d"), py::arg("x"), py::arg("workers") = 1);
    m.def("pi_angle",
          [](std::int64_t a, std::int64_t b, double alpha, double beta, std::int64_t x, unsigned workers) {
              return report_dict(pi_angle(CurveSource::fixed(a, b), AngleWindow(alpha, beta), x, workers));
          },
          py::arg("A"), py::arg("B"), py::arg("alpha"), py::arg("beta"), py::arg("x"), py::arg("workers") = 1);

    m.def("fiber_census",
          [](const py::object& family, std::int64_t p) {
              const auto c = fiber_census(family_from(family), p);
              py::dict out;
              for (std::int64_t w = 0; w < p; ++w)
                  if (c.traces[w]) out[py::int_(w)] = *c.traces[w];
              return out;
          },
          py::arg("family"), py::arg("p"));
    m.def("michel_sum",
          [](const py::object& family, std::int64_t p, int n, std::int64_t mm) {
              return michel_sum(fiber_census(family_from(family), p), n, mm);
          },
          py::arg("family"), py::arg("p"), py::arg("n"), py::arg("m"));

    m.def("farey_count", &farey_count_mobius, py::arg("T"));
    m.def("coincidence_count_Q", &coincidence_count_Q, py::arg("T"), py::arg("p"));
    m.def("additive_energy_V", &additive_energy_V, py::arg("T"), py::arg("p"));
    m.def("farey_expsum", &farey_expsum, py::arg("T"), py::arg("p"), py::arg("m"));
    m.def("chebyshev_U", &chebyshev_U, py::arg("n"), py::arg("z"));
    m.def("semicircle_G", &semicircle_G, py::arg("a"), py::arg("b"));

    m.def("run_config",
          [](const std::string& config_path, unsigned workers) {
              auto cfg = load_config(config_path);
              if (workers > 0) cfg.workers = workers;
              json summary;
              {
                  py::gil_scoped_release release;
                  summary = run_experiment(cfg);
              }
              return to_python(summary);
          },
          py::arg("config_path"), py::arg("workers") = 0);
    m.def("run_preset",
          [](const std::string& name, std::optional<std::int64_t> x, std::optional<std::int64_t> T,
             const std::filesystem::path& out_dir, unsigned workers) {
              auto cfg = preset_config(name, x, T, out_dir);
              cfg.workers = std::max(1u, workers);
              json summary;
              {
                  py::gil_scoped_release release;
                  summary = run_experiment(cfg);
              }
              return to_python(summary);
          },
          py::arg("name"), py::arg("x") = py::none(), py::arg("T") = py::none(), py::arg("out_dir") = ".",
          py::arg("workers") = 1);
    m.def("preset_names", &preset_names);
    m.def("run_suite",
          [](const std::string& name) {
              std::vector<CriterionResult> results;
              {
                  py::gil_scoped_release release;
                  results = run_suite(name);
              }
              return to_python(suite_manifest(name, results));
          },
          py::arg("name"));
}
