#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "cq/fixtures.hpp"
#include "cq/run.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string chart_path;
    int order = 8;
    double tol_phi = 1e-7;
    double tol_isotropy = 1e-6;
    double tol_rank = 1e-8;
    double tol_isothermal = 1e-9;
    std::string format = "text";
    int workers = 1;
    std::string at;  // "U,V"
};

cq::RunConfig make_config(const Options& o) {
    cq::RunConfig cfg;
    cfg.pipeline.order = o.order;
    cfg.pipeline.iso_tol = o.tol_isothermal;
    cfg.tol.phi_tol = o.tol_phi;
    cfg.tol.isotropy_tol = o.tol_isotropy;
    cfg.tol.rank_tol = o.tol_rank;
    cfg.workers = o.workers;
    return cfg;
}

json chart_json(const cq::ChartSpec& c, const std::string& path) {
    json j;
    j["name"] = c.name;
    j["path"] = path;
    j["space"] = cq::space_name(c.space);
    j["n"] = c.n;
    j["domain"] = {c.u0, c.u1, c.v0, c.v1};
    j["grid"] = {c.mu, c.mv};
    return j;
}

json config_json(const Options& o) {
    json j;
    j["order"] = o.order;
    j["tol_phi"] = o.tol_phi;
    j["tol_isotropy"] = o.tol_isotropy;
    j["tol_rank"] = o.tol_rank;
    j["tol_isothermal"] = o.tol_isothermal;
    j["workers"] = o.workers;
    return j;
}

json residuals_json(const cq::ResidualReport& r) {
    json j;
    for (const auto& key : cq::ResidualReport::keys()) {
        auto it = r.max_resid.find(key);
        if (it == r.max_resid.end()) continue;
        const auto& p = r.argmax.at(key);
        j[key] = {{"max", it->second}, {"at", {p[0], p[1]}}};
    }
    return j;
}

json classification_json(const cq::ClassificationReport& c) {
    json j;
    j["branch"] = cq::branch_name(c.branch);
    if (c.branch == cq::Branch::Degenerate) return j;
    j["phi_max"] = c.phi_max;
    j["psi_max"] = c.psi_max;
    j["psi_min"] = c.psi_min;
    j["psi_holo_max"] = c.psi_holo_max;
    switch (c.psi_kind) {
        case cq::PsiKind::IdenticallyZero: j["psi_kind"] = "identically_zero"; break;
        case cq::PsiKind::IsolatedZeros: j["psi_kind"] = "isolated_zeros"; break;
        case cq::PsiKind::NonVanishing: j["psi_kind"] = "nonvanishing"; break;
    }
    j["essential_rank"] = c.essential_rank;
    j["full"] = c.full;
    j["isotropic"] = {{"is_isotropic", c.isotropic.is_isotropic},
                      {"dispersion", c.isotropic.dispersion},
                      {"gauss_spread", c.isotropic.gauss_spread},
                      {"c", c.isotropic.c}};
    if (c.n3_consistent) j["n3_consistent"] = *c.n3_consistent;
    return j;
}

void emit(const json& j, const Options& o) {
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (o.format == "csv") {
        if (j.contains("residuals")) {
            std::cout << "equation,max_residual,argmax_u,argmax_v\n";
            for (const auto& key : cq::ResidualReport::keys()) {
                if (!j["residuals"].contains(key)) continue;
                const auto& e = j["residuals"][key];
                std::printf("%s,%.17g,%.17g,%.17g\n", key.c_str(), e["max"].get<double>(),
                            e["at"][0].get<double>(), e["at"][1].get<double>());
            }
        } else if (j.contains("invariants")) {
            std::cout << "field,re,im,gauge_dependent\n";
            for (const auto& [k, e] : j["invariants"].items()) {
                if (!e.is_object() || !e.contains("re")) continue;
                std::printf("%s,%.17g,%.17g,%s\n", k.c_str(), e["re"].get<double>(),
                            e["im"].get<double>(), e["gauge_dependent"].get<bool>() ? "yes" : "no");
            }
        } else if (j.contains("classification")) {
            std::cout << "field,value\n";
            for (const auto& [k, e] : j["classification"].items())
                std::cout << k << "," << e.dump() << "\n";
        }
        return;
    }
    // text
    if (j.contains("chart"))
        std::cout << "chart " << j["chart"]["name"].get<std::string>() << " ("
                  << j["chart"]["space"].get<std::string>() << ", n = " << j["chart"]["n"]
                  << ")\n";
    if (j.contains("check")) std::cout << j["check"].dump(2) << "\n";
    if (j.contains("invariants")) std::cout << "invariants: " << j["invariants"].dump(2) << "\n";
    if (j.contains("residuals")) {
        std::cout << "max residuals over grid:\n";
        for (const auto& key : cq::ResidualReport::keys()) {
            if (!j["residuals"].contains(key)) continue;
            const auto& e = j["residuals"][key];
            std::printf("  %-6s %.3e at (%g, %g)\n", key.c_str(), e["max"].get<double>(),
                        e["at"][0].get<double>(), e["at"][1].get<double>());
        }
    }
    if (j.contains("classification"))
        std::cout << "classification: " << j["classification"].dump(2) << "\n";
}

int run_command(const std::string& cmd, const Options& o) {
    cq::ChartSpec chart;
    try {
        chart = cq::load_chart(o.chart_path);
    } catch (const cq::ChartError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    json out;
    out["chart"] = chart_json(chart, o.chart_path);
    out["config"] = config_json(o);
    cq::RunConfig cfg = make_config(o);

    try {
        if (cmd == "check") {
            json diag;
            double h_min = std::numeric_limits<double>::infinity(), h_max = 0;
            double rho2_min = std::numeric_limits<double>::infinity();
            for (int i = 0; i < chart.mu; ++i)
                for (int j2 = 0; j2 < chart.mv; ++j2) {
                    double u = chart.grid_u(i), v = chart.grid_v(j2);
                    auto frame = cq::build_frame(chart, u, v, cfg.pipeline);
                    double h = std::exp(2.0 * frame.lambda.value());
                    h_min = std::min(h_min, h);
                    h_max = std::max(h_max, h);
                    rho2_min = std::min(rho2_min, frame.rho2.value());
                }
            diag["space_like"] = true;
            diag["isothermal"] = true;
            diag["regular"] = true;
            diag["e2lambda_min"] = h_min;
            diag["e2lambda_max"] = h_max;
            diag["rho2_min"] = rho2_min;
            out["check"] = diag;
            emit(out, o);
            return 0;
        }
        if (cmd == "invariants") {
            double u, v;
            if (std::sscanf(o.at.c_str(), "%lf,%lf", &u, &v) != 2) {
                std::cerr << "--at expects U,V\n";
                return 2;
            }
            if (u < chart.u0 || u > chart.u1 || v < chart.v0 || v > chart.v1) {
                std::cerr << "point (" << u << ", " << v << ") outside chart domain\n";
                return 3;
            }
            auto frame = cq::build_frame(chart, u, v, cfg.pipeline);
            auto inv = cq::compute_invariants(frame);
            json d;
            d["at"] = {u, v};
            d["psi"] = {{"re", inv.psi.value().real()}, {"im", inv.psi.value().imag()},
                        {"gauge_dependent", false}};
            for (size_t a = 0; a < inv.phi.size(); ++a) {
                std::string suffix = std::to_string(a + 3);
                d["phi_" + suffix] = {{"re", inv.phi[a].value().real()},
                                      {"im", inv.phi[a].value().imag()},
                                      {"gauge_dependent", true}};
                d["Omega_" + suffix] = {{"re", inv.Omega[a].value().real()},
                                        {"im", inv.Omega[a].value().imag()},
                                        {"gauge_dependent", true}};
                for (size_t b = 0; b < inv.phi.size(); ++b)
                    d["A_" + suffix + std::to_string(b + 3)] = {
                        {"re", inv.A[a][b].value().real()},
                        {"im", inv.A[a][b].value().imag()},
                        {"gauge_dependent", true}};
            }
            d["omega"] = {{"re", frame.omega.value()}, {"im", 0.0}, {"gauge_dependent", false}};
            d["K"] = {{"re", frame.gauss.value()}, {"im", 0.0}, {"gauge_dependent", false}};
            d["phi_norm2"] = {{"re", inv.phi_norm2()}, {"im", 0.0}, {"gauge_dependent", false}};
            auto q = inv.quartic();
            d["quartic"] = {{"re", q.real()}, {"im", q.imag()}, {"gauge_dependent", false}};
            out["invariants"] = d;
            emit(out, o);
            return 0;
        }
        if (cmd == "verify") {
            auto result = cq::run_grid(chart, cfg);
            out["residuals"] = residuals_json(result.residuals);
            emit(out, o);
            double worst = std::max(result.residuals.structure_max(),
                                    result.residuals.fundamental_max());
            if (result.degenerate_points > 0) {
                std::cerr << "conformally degenerate at " << result.degenerate_points
                          << " grid points\n";
                return 3;
            }
            return worst <= 1e-6 ? 0 : 4;
        }
        if (cmd == "classify") {
            auto result = cq::run_grid(chart, cfg);
            out["residuals"] = residuals_json(result.residuals);
            out["classification"] = classification_json(result.classification);
            if (result.classification.branch != cq::Branch::Degenerate &&
                !result.classification.full)
                out["classification"]["warning"] =
                    "surface is not full: essential rank " +
                    std::to_string(result.classification.essential_rank) + " < n + 2";
            emit(out, o);
            return 0;
        }
    } catch (const cq::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const cq::ExprDomainError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const cq::JetError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    }
    std::cerr << "unknown command\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conformal invariants of space-like surfaces in Lorentzian space forms"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--chart", o.chart_path, "chart file")->required();
        sub->add_option("--order", o.order, "jet order (>= 7)");
        sub->add_option("--tol-phi", o.tol_phi, "vanishing-form threshold");
        sub->add_option("--tol-isotropy", o.tol_isotropy, "isotropy dispersion threshold");
        sub->add_option("--tol-rank", o.tol_rank, "relative rank threshold");
        sub->add_option("--tol-isothermal", o.tol_isothermal, "isothermality tolerance");
        sub->add_option("--format", o.format, "json | csv | text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--workers", o.workers, "worker count")->check(CLI::PositiveNumber);
    };

    CLI::App* check = app.add_subcommand("check", "verify space-like/isothermal/regular");
    add_common(check);
    CLI::App* invariants = app.add_subcommand("invariants", "pointwise invariant dump");
    add_common(invariants);
    invariants->add_option("--at", o.at, "evaluation point U,V")->required();
    CLI::App* verify = app.add_subcommand("verify", "residuals of the frame equations");
    add_common(verify);
    CLI::App* classify = app.add_subcommand("classify", "classification report");
    add_common(classify);

    CLI11_PARSE(app, argc, argv);

    if (o.order < 7) {
        std::cerr << "jet order >= 7 required for the fundamental residuals\n";
        return 2;
    }
    return run_command(app.get_subcommands().front()->get_name(), o);
}
