#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cq/fixtures.hpp"
#include "cq/run.hpp"

namespace py = pybind11;
using namespace cq;

namespace {

RunConfig make_config(int order, double tol_phi, double tol_isotropy, double tol_rank,
                      double tol_isothermal, int workers) {
    if (order < 7) throw py::value_error("jet order >= 7 required");
    RunConfig cfg;
    cfg.pipeline.order = order;
    cfg.pipeline.iso_tol = tol_isothermal;
    cfg.tol.phi_tol = tol_phi;
    cfg.tol.isotropy_tol = tol_isotropy;
    cfg.tol.rank_tol = tol_rank;
    cfg.workers = workers;
    return cfg;
}

py::dict residuals_dict(const ResidualReport& r) {
    py::dict d;
    for (const auto& key : ResidualReport::keys()) {
        auto it = r.max_resid.find(key);
        if (it == r.max_resid.end()) continue;
        const auto& p = r.argmax.at(key);
        d[key.c_str()] = py::make_tuple(it->second, py::make_tuple(p[0], p[1]));
    }
    return d;
}

py::dict classification_dict(const ClassificationReport& c) {
    py::dict d;
    d["branch"] = branch_name(c.branch);
    d["phi_max"] = c.phi_max;
    d["psi_max"] = c.psi_max;
    d["psi_min"] = c.psi_min;
    d["psi_holo_max"] = c.psi_holo_max;
    d["essential_rank"] = c.essential_rank;
    d["full"] = c.full;
    d["isotropic"] = c.isotropic.is_isotropic;
    d["isotropy_dispersion"] = c.isotropic.dispersion;
    if (c.n3_consistent) d["n3_consistent"] = *c.n3_consistent;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "conformal invariants of space-like surfaces in Lorentzian space forms";

    py::register_exception<ChartError>(m, "ChartError", PyExc_ValueError);
    py::register_exception<ExprParseError>(m, "ExprParseError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);

    py::class_<ChartSpec>(m, "Chart")
        .def_readonly("name", &ChartSpec::name)
        .def_readonly("n", &ChartSpec::n)
        .def_property_readonly("space", [](const ChartSpec& c) { return space_name(c.space); })
        .def_property_readonly("domain",
                               [](const ChartSpec& c) {
                                   return py::make_tuple(c.u0, c.u1, c.v0, c.v1);
                               })
        .def_property_readonly("grid",
                               [](const ChartSpec& c) { return py::make_tuple(c.mu, c.mv); })
        .def("__repr__", [](const ChartSpec& c) {
            return "<Chart " + c.name + " (" + space_name(c.space) + ", n=" +
                   std::to_string(c.n) + ")>";
        });

    m.def("parse_chart", &parse_chart, py::arg("text"));
    m.def("load_chart",
          [](const std::string& path) { return load_chart(path); }, py::arg("path"));

    m.def("fixtures", [] {
        py::dict d;
        for (const auto& e : fixtures::catalog())
            d[e.name.c_str()] = py::make_tuple(e.text, branch_name(e.branch));
        return d;
    });

    m.def(
        "invariants",
        [](const ChartSpec& chart, double u, double v, int order) {
            PipelineOptions opts;
            opts.order = order;
            auto frame = build_frame(chart, u, v, opts);
            auto inv = compute_invariants(frame);
            py::dict d;
            d["psi"] = inv.psi.value();
            py::list phi, Omega;
            for (const auto& p : inv.phi) phi.append(p.value());
            for (const auto& o : inv.Omega) Omega.append(o.value());
            d["phi"] = phi;
            d["Omega"] = Omega;
            d["eps"] = inv.eps;
            d["omega"] = frame.omega.value();
            d["K"] = frame.gauss.value();
            d["phi_norm2"] = inv.phi_norm2();
            d["quartic"] = inv.quartic();
            return d;
        },
        py::arg("chart"), py::arg("u"), py::arg("v"), py::arg("order") = 8);

    m.def(
        "verify",
        [](const ChartSpec& chart, int order, int workers) {
            auto cfg = make_config(order, 1e-7, 1e-6, 1e-8, 1e-9, workers);
            auto result = run_grid(chart, cfg);
            py::dict d;
            d["residuals"] = residuals_dict(result.residuals);
            d["structure_max"] = result.residuals.structure_max();
            d["fundamental_max"] = result.residuals.fundamental_max();
            d["degenerate_points"] = result.degenerate_points;
            return d;
        },
        py::arg("chart"), py::arg("order") = 8, py::arg("workers") = 1);

    m.def(
        "classify",
        [](const ChartSpec& chart, int order, double tol_phi, double tol_isotropy,
           double tol_rank, int workers) {
            auto cfg = make_config(order, tol_phi, tol_isotropy, tol_rank, 1e-9, workers);
            auto result = run_grid(chart, cfg);
            py::dict d = classification_dict(result.classification);
            d["residuals"] = residuals_dict(result.residuals);
            return d;
        },
        py::arg("chart"), py::arg("order") = 8, py::arg("tol_phi") = 1e-7,
        py::arg("tol_isotropy") = 1e-6, py::arg("tol_rank") = 1e-8, py::arg("workers") = 1);
}
