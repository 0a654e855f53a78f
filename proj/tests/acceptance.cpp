// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cq/fixtures.hpp"
#include "cq/run.hpp"
#include "test_common.hpp"

using namespace cq;

namespace {

int failures = 0;

void report(int idx, const std::string& title, bool ok, const std::string& detail) {
    std::printf("[%d] %s  %s%s%s\n", idx, ok ? "PASS" : "FAIL", title.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

int main() {
    std::map<std::string, GridResult> runs;
    std::map<std::string, ChartSpec> charts;
    for (const auto& e : fixtures::catalog()) {
        charts[e.name] = parse_chart(e.text);
        runs[e.name] = run_grid(charts[e.name], {});
    }
    const std::vector<std::string> positive = {"hyperbolic_cylinder", "desitter_product_r05",
                                              "desitter_product_r1", "desitter_product_r2"};
    const std::vector<std::string> vanishing = {
        "hyperbolic_cylinder",     "desitter_product_r05",    "desitter_product_r1",
        "desitter_product_r2",     "antidesitter_torus_rm025", "antidesitter_torus_rm05"};
    std::vector<std::string> regular;
    for (const auto& [name, r] : runs)
        if (name != "plane_control") regular.push_back(name);

    // 1: normalization identity on the four positive fixtures
    {
        double worst = 0;
        for (const auto& name : positive)
            worst = std::max(worst, runs[name].residuals.max_resid.at("R3.1c"));
        report(1, "normalization identity on the positive fixtures", worst <= 1e-8,
               "max |e^{-4w} sum Omega^a Omega_a + 1/4| = " + fmt(worst));
    }

    // 2: structure and fundamental residuals on all regular fixtures
    {
        double s = 0, f = 0;
        for (const auto& name : regular) {
            s = std::max(s, runs[name].residuals.structure_max());
            f = std::max(f, runs[name].residuals.fundamental_max());
        }
        report(2, "structure/fundamental residuals on all fixtures", s <= 1e-8 && f <= 1e-7,
               "structure max " + fmt(s) + ", fundamental max " + fmt(f));
    }

    // 3: Main Theorem membership
    {
        std::ostringstream detail;
        bool ok = true;
        auto want = [&](const std::string& name, Branch b, bool check_phi) {
            const auto& c = runs[name].classification;
            bool good = c.branch == b && (!check_phi || c.phi_max <= 1e-7);
            if (!good) {
                ok = false;
                detail << (detail.str().empty() ? "" : "; ") << name << " expected "
                       << branch_name(b) << ", got " << branch_name(c.branch)
                       << " (phi_max " << fmt(c.phi_max) << ")";
            }
        };
        for (const auto& name : vanishing) want(name, Branch::VanishingFormNonIsotropic, true);
        want("graph_control", Branch::NonVanishingForm, false);
        want("plane_control", Branch::Degenerate, false);
        report(3, "Main Theorem membership of all fixtures", ok,
               ok ? "branches and phi_max as expected" : detail.str());
    }

    // 4: holomorphic nonvanishing Psi on the vanishing-form fixtures
    {
        std::ostringstream detail;
        bool ok = true;
        for (const auto& name : vanishing) {
            const auto& c = runs[name].classification;
            if (c.psi_holo_max > 1e-8 || c.psi_min < 1e-2) {
                ok = false;
                detail << (detail.str().empty() ? "" : "; ") << name << " max|psi_zbar| "
                       << fmt(c.psi_holo_max) << ", min|psi| " << fmt(c.psi_min);
            }
        }
        double cyl_worst = 0;
        const ChartSpec& cyl = charts["hyperbolic_cylinder"];
        for (int i = 0; i < cyl.mu; ++i)
            for (int j = 0; j < cyl.mv; ++j) {
                auto frame = build_frame(cyl, cyl.grid_u(i), cyl.grid_v(j), {});
                auto inv = compute_invariants(frame);
                cyl_worst = std::max(cyl_worst,
                                     std::abs(inv.psi.value() - std::complex<double>(-0.25, 0)));
            }
        if (cyl_worst > 1e-9) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << "cylinder max |psi + 1/4| = "
                   << fmt(cyl_worst);
        }
        report(4, "Psi holomorphic and nonvanishing on vanishing-form fixtures", ok,
               ok ? "cylinder max |psi + 1/4| = " + fmt(cyl_worst) : detail.str());
    }

    // 5: fullness ranks
    {
        int r_cyl = runs["hyperbolic_cylinder"].classification.essential_rank;
        int r_pad = runs["padded_cylinder"].classification.essential_rank;
        bool pad_full = runs["padded_cylinder"].classification.full;
        bool ok = r_cyl == 5 && r_pad == 5 && !pad_full;
        report(5, "fullness: cylinder rank n+2, padded cylinder non-full", ok,
               "cylinder rank " + std::to_string(r_cyl) + ", padded rank " +
                   std::to_string(r_pad) + "/6");
    }

    // 6: invariance under randomized O(n, 2) transformations of the lift
    {
        const ChartSpec& cyl = charts["hyperbolic_cylinder"];
        const GridResult& base = runs["hyperbolic_cylinder"];
        double base_omega = build_frame(cyl, 0.25, -0.5, {}).omega.value();
        std::mt19937 rng(57721566);
        double worst = 0;
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::MatrixXd g = testutil::random_pseudo_orthogonal(cyl.lift_signature(), rng);
            if (testutil::orthogonality_defect(g, cyl.lift_signature()) > 1e-12) ok = false;
            GridResult moved = run_grid(cyl, {}, &g);
            if (moved.classification.branch != base.classification.branch) ok = false;
            for (const auto& key : ResidualReport::keys())
                worst = std::max(worst, std::abs(moved.residuals.max_resid.at(key) -
                                                 base.residuals.max_resid.at(key)));
            worst = std::max(worst, std::abs(moved.classification.phi_max -
                                             base.classification.phi_max));
            for (size_t i = 0; i < moved.samples.size(); ++i)
                worst = std::max(worst, std::abs(moved.samples[i].gauss -
                                                 base.samples[i].gauss));
            PipelineOptions opts;
            worst = std::max(worst, std::abs(build_frame(cyl, 0.25, -0.5, opts, &g)
                                                 .omega.value() - base_omega));
        }
        ok = ok && worst <= 1e-8;
        report(6, "conformal invariance under 20 random O(n,2) transformations", ok,
               "worst drift of omega/K/|Phi|^2/residuals = " + fmt(worst));
    }

    // 7: jet calculus against central finite differences
    {
        std::mt19937 rng(16180339);
        std::uniform_real_distribution<double> base(-0.4, 0.4);
        const std::map<std::string, double> consts = {{"c", 0.8}};
        double worst = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::string text = testutil::random_expr(rng, 3);
            ExprPtr e = parse_expression(text, {"c"});
            double u0 = base(rng), v0 = base(rng);
            JetR j = eval_jet(*e, u0, v0, consts, 4);
            auto f = [&](double uu, double vv) { return eval_number(*e, uu, vv, consts); };
            // the finite-difference error scales with the expression's largest
            // derivative, so measure relative to the jet as a whole
            double scale = 1.0;
            for (int i = 0; i <= 4; ++i)
                for (int jj = 0; i + jj <= 4; ++jj)
                    scale = std::max(scale, std::abs(j.at(i, jj)));
            for (int i = 0; i <= 4; ++i)
                for (int jj = 0; i + jj <= 4; ++jj) {
                    double fd = testutil::fd_partial(f, u0, v0, i, jj, 0.02);
                    worst = std::max(worst, std::abs(j.at(i, jj) - fd) / scale);
                }
        }
        report(7, "jet coefficients match finite differences (1000 expressions)",
               worst <= 1e-6, "worst relative deviation " + fmt(worst));
    }

    // 8: gauge invariance under re-mixing of the normal frame
    {
        bool invariant_ok = true;
        bool component_moved = false;
        double worst = 0;

        // n = 3: the admissible re-mixes are +-1; the sign flip moves phi_3
        {
            auto frame = build_frame(charts["graph_control"], 2.0, 0.25, {});
            auto base = compute_invariants(frame);
            Eigen::MatrixXd flip(1, 1);
            flip << -1.0;
            auto mixed = compute_invariants(frame, flip);
            worst = std::max(worst, std::abs(mixed.phi_norm2() - base.phi_norm2()));
            worst = std::max(worst, std::abs(mixed.quartic() - base.quartic()));
            if (std::abs(mixed.phi[0].value() - base.phi[0].value()) >= 1e-2)
                component_moved = true;
        }
        // n = 4 with signs (+, -): random boosts
        {
            auto frame = build_frame(charts["padded_cylinder"], 0.3, -0.4, {});
            auto base = compute_invariants(frame);
            std::mt19937 rng(2236067);
            std::uniform_real_distribution<double> ts(-1.0, 1.0);
            for (int trial = 0; trial < 19; ++trial) {
                double t = ts(rng);
                Eigen::MatrixXd m(2, 2);
                m << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
                auto mixed = compute_invariants(frame, m);
                worst = std::max(worst, std::abs(mixed.phi_norm2() - base.phi_norm2()));
                worst = std::max(worst, std::abs(mixed.quartic() - base.quartic()));
            }
        }
        invariant_ok = worst <= 1e-8;
        report(8, "normal-frame gauge invariance of |Phi|^2 and the quartic form",
               invariant_ok && component_moved,
               "worst invariant drift " + fmt(worst) +
                   (component_moved ? ", components move under the gauge"
                                    : ", components never moved"));
    }

    return failures;
}
