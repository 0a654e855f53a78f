#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cq/fixtures.hpp"
#include "cq/pipeline.hpp"
#include "test_common.hpp"

using namespace cq;

namespace {

double max_jet_abs(const JetR& j) {
    double m = 0;
    for (int i = 0; i <= j.order(); ++i)
        for (int k = 0; i + k <= j.order(); ++k) m = std::max(m, std::abs(j.at(i, k)));
    return m;
}

}  // namespace

TEST_CASE("lifts are null jets in every space form") {
    struct Case {
        ChartSpec chart;
        int dim;
    };
    std::vector<Case> cases = {{fixtures::hyperbolic_cylinder(), 5},
                               {fixtures::desitter_product(1.0), 5},
                               {fixtures::antidesitter_torus(-0.25), 5}};
    for (auto& [chart, dim] : cases) {
        VecR y = lift_to_lightcone(chart, 0.3, -0.4, 6);
        REQUIRE((int)y.size() == dim);
        JetR yy = inner(y, y, chart.lift_signature());
        CHECK(max_jet_abs(yy) < 1e-12);
    }
}

TEST_CASE("model constraint is preserved by the lift") {
    // S and H model coordinates satisfy <x,x> = +-1; the R lift reproduces x
    ChartSpec s = fixtures::desitter_product(0.5);
    VecR y = lift_to_lightcone(s, 0.2, 0.1, 5);
    // last slot is the appended constant 1
    CHECK(y.back().value() == 1.0);

    ChartSpec r = fixtures::hyperbolic_cylinder();
    VecR yr = lift_to_lightcone(r, 0.5, 0.25, 5);
    REQUIRE(yr.size() == 5);
    CHECK(yr[1].value() == doctest::Approx(std::sinh(0.5)));
    CHECK(yr[2].value() == doctest::Approx(0.25));
    CHECK(yr[3].value() == doctest::Approx(std::cosh(0.5)));
    // first + last = 1, last - first = q
    CHECK(yr[0].value() + yr[4].value() == doctest::Approx(1.0));
}

TEST_CASE("check_chart measures the first fundamental form") {
    ChartSpec c = fixtures::hyperbolic_cylinder();
    ChartCheck cc = check_chart(c, 0.6, -0.2, 6, 1e-9);
    // x_u = (cosh u, 0, sinh u) with the last slot time-like: <x_u,x_u> = 1
    CHECK(cc.h11.value() == doctest::Approx(1.0));
    CHECK(cc.h22.value() == doctest::Approx(1.0));
    CHECK(cc.h12.value() == doctest::Approx(0.0));
}

TEST_CASE("non-isothermal and non-space-like charts are rejected") {
    try {
        build_frame(fixtures::desitter_unscaled(), 0.3, 0.3, {});
        FAIL("expected geometry error");
    } catch (const GeometryError& e) {
        CHECK(e.kind == GeometryError::Kind::NotIsothermal);
        CHECK(e.u == 0.3);
    }

    ChartSpec bad = parse_chart(
        "name = timelike\nspace = R\nn = 3\nx1 = u\nx2 = v\nx3 = 2*u\n"
        "domain = -1 1 -1 1\ngrid = 3 3\n");
    try {
        build_frame(bad, 0.0, 0.0, {});
        FAIL("expected geometry error");
    } catch (const GeometryError& e) {
        CHECK(e.kind == GeometryError::Kind::NotSpaceLike);
    }

    try {
        build_frame(fixtures::plane_control(), 0.1, 0.2, {});
        FAIL("expected geometry error");
    } catch (const GeometryError& e) {
        CHECK(e.kind == GeometryError::Kind::ConformallyDegenerate);
    }
}

TEST_CASE("cylinder frame closed forms") {
    ChartSpec c = fixtures::hyperbolic_cylinder();
    double u = -0.35, v = 0.8;
    ConformalFrame f = build_frame(c, u, v, {});

    // the Lorentzian induced metric is du^2 + dv^2, so lambda and the
    // intrinsic curvature vanish identically
    CHECK(max_jet_abs(f.lambda) < 1e-10);
    CHECK(f.rho2.value() == doctest::Approx(1.0));
    CHECK(max_jet_abs(f.omega) < 1e-10);  // conformal metric is flat
    CHECK(max_jet_abs(f.gauss) < 1e-10);
    CHECK(max_jet_abs(f.kappa) < 1e-10);

    // frame relations: <Y,Y> = 0, <N,N> = 0, <Y,N> = 1, <Y_u, Y_u> = e^{2w}
    Signature s = f.sig;
    CHECK(max_jet_abs(inner(f.Y, f.Y, s)) < 1e-10);
    CHECK(max_jet_abs(inner(f.N, f.N, s)) < 1e-10);
    CHECK(inner(f.N, vec_truncate(f.Y, f.N[0].order()), s).value() == doctest::Approx(1.0));
    VecR Yu = vec_du(f.Y);
    CHECK(inner(Yu, Yu, s).value() == doctest::Approx(std::exp(2 * f.omega.value())));

    // conformal normal frame: one direction, time-like, orthogonal to the rest
    REQUIRE(f.E.size() == 1);
    CHECK(f.E[0].sign == -1);
    int ord = f.E[0].vector[0].order();
    CHECK(max_jet_abs(inner(f.E[0].vector, vec_truncate(f.Y, ord), s)) < 1e-9);
    CHECK(max_jet_abs(inner(f.E[0].vector, f.N, s)) < 1e-9);
    CHECK(max_jet_abs(inner(f.E[0].vector, vec_truncate(Yu, ord), s)) < 1e-9);
}

TEST_CASE("product fixtures have constant conformal factor") {
    // de Sitter H^1(sqrt r) x S^1(sqrt(1+r)): rho^2 = 1/(r(1+r))
    ConformalFrame f = build_frame(fixtures::desitter_product(1.0), 0.4, -0.6, {});
    CHECK(f.rho2.value() == doctest::Approx(0.5));
    CHECK(f.omega.value() == doctest::Approx(0.5 * std::log(0.5)));
    CHECK(max_jet_abs(f.gauss) < 1e-9);

    // anti-de Sitter H^1 x H^1: rho^2 = 1/(1+r) - 1/r
    ConformalFrame g = build_frame(fixtures::antidesitter_torus(-0.25), 0.1, 0.6, {});
    CHECK(g.rho2.value() == doctest::Approx(1.0 / 0.75 + 4.0));
}

TEST_CASE("jet order budget") {
    ConformalFrame f = build_frame(fixtures::hyperbolic_cylinder(), 0.0, 0.0, {});
    CHECK(f.lambda.order() == 7);
    CHECK(f.omega.order() == 5);
    CHECK(f.Yz[0].order() == 4);
    CHECK(f.N[0].order() == 3);
    CHECK(f.E[0].vector[0].order() == 3);
}

TEST_CASE("pseudo-orthogonal transforms leave the frame scalars unchanged") {
    ChartSpec c = fixtures::hyperbolic_cylinder();
    ConformalFrame base = build_frame(c, 0.25, -0.5, {});
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd g = testutil::random_pseudo_orthogonal(c.lift_signature(), rng);
        REQUIRE(testutil::orthogonality_defect(g, c.lift_signature()) < 1e-12);
        ConformalFrame t = build_frame(c, 0.25, -0.5, {}, &g);
        CHECK(t.lambda.value() == doctest::Approx(base.lambda.value()).epsilon(1e-10));
        CHECK(t.omega.value() == doctest::Approx(base.omega.value()).epsilon(1e-10));
        CHECK(t.rho2.value() == doctest::Approx(base.rho2.value()).epsilon(1e-10));
        CHECK(t.gauss.value() == doctest::Approx(base.gauss.value()).epsilon(1e-8));
        // the lift itself moves
        double moved = 0;
        for (size_t i = 0; i < t.Y.size(); ++i)
            moved = std::max(moved, std::abs(t.Y[i].value() - base.Y[i].value()));
        CHECK(moved > 1e-3);
    }
}

TEST_CASE("order below 7 is rejected") {
    PipelineOptions opts;
    opts.order = 6;
    CHECK_THROWS(build_frame(fixtures::hyperbolic_cylinder(), 0.0, 0.0, opts));
}
