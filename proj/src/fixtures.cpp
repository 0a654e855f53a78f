#include "cq/fixtures.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cq {
namespace fixtures {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string hyperbolic_cylinder_text() {
    return "name = hyperbolic_cylinder\n"
           "space = R\n"
           "n = 3\n"
           "x1 = sinh(u)\n"
           "x2 = v\n"
           "x3 = cosh(u)\n"
           "domain = -1 1 -1 1\n"
           "grid = 9 9\n";
}

std::string desitter_product_text(double r) {
    if (!(r > 0)) throw std::invalid_argument("desitter_product: r must be > 0");
    // H^1(sqrt(r)) x S^1(sqrt(1+r)) in S^3_1; arc-length parameters keep the
    // chart isothermal with e^{2 lambda} = 1
    return "name = desitter_product\n"
           "space = S\n"
           "n = 3\n"
           "const r = " + fmt(r) + "\n"
           "x1 = sqrt(1+r)*cos(v/sqrt(1+r))\n"
           "x2 = sqrt(1+r)*sin(v/sqrt(1+r))\n"
           "x3 = sqrt(r)*sinh(u/sqrt(r))\n"
           "x4 = sqrt(r)*cosh(u/sqrt(r))\n"
           "domain = -1 1 -1 1\n"
           "grid = 9 9\n";
}

std::string antidesitter_torus_text(double r) {
    if (!(r >= -0.5) || !(r < 0))
        throw std::invalid_argument("antidesitter_torus: r must lie in [-1/2, 0)");
    // H^1(sqrt(1+r)) x H^1(sqrt(-r)) in H^3_1
    return "name = antidesitter_torus\n"
           "space = H\n"
           "n = 3\n"
           "const r = " + fmt(r) + "\n"
           "x1 = sqrt(-r)*sinh(u/sqrt(-r))\n"
           "x2 = sqrt(1+r)*sinh(v/sqrt(1+r))\n"
           "x3 = sqrt(-r)*cosh(u/sqrt(-r))\n"
           "x4 = sqrt(1+r)*cosh(v/sqrt(1+r))\n"
           "domain = -1 1 -1 1\n"
           "grid = 9 9\n";
}

std::string graph_control_text() {
    // space-like helicoid about the time axis, x3 time-like pitch; in the
    // coordinates s*(u-v), s*(u+v) with s = 1/sqrt(2) the induced metric is
    // sinh(s*(u-v))^2 (du^2 + dv^2) and Omega_3 is real.  Non-vanishing
    // conformal form; the domain keeps u - v > 0 away from the axis
    return "name = graph_control\n"
           "space = R\n"
           "n = 3\n"
           "const s = 0.70710678118654752\n"
           "x1 = cosh(s*(u-v))*cos(s*(u+v))\n"
           "x2 = cosh(s*(u-v))*sin(s*(u+v))\n"
           "x3 = s*(u+v)\n"
           "domain = 1.5 2.5 -1 1\n"
           "grid = 9 9\n";
}

std::string plane_control_text() {
    return "name = plane_control\n"
           "space = R\n"
           "n = 3\n"
           "x1 = u\n"
           "x2 = v\n"
           "x3 = 0\n"
           "domain = -1 1 -1 1\n"
           "grid = 9 9\n";
}

std::string padded_cylinder_text() {
    return "name = padded_cylinder\n"
           "space = R\n"
           "n = 4\n"
           "x1 = sinh(u)\n"
           "x2 = v\n"
           "x3 = 0\n"
           "x4 = cosh(u)\n"
           "domain = -1 1 -1 1\n"
           "grid = 9 9\n";
}

std::string desitter_unscaled_text() {
    // unscaled angles: induced metric r du^2 + (1+r) dv^2, deliberately not
    // isothermal
    return "name = desitter_unscaled\n"
           "space = S\n"
           "n = 3\n"
           "const r = 1\n"
           "x1 = sqrt(1+r)*cos(v)\n"
           "x2 = sqrt(1+r)*sin(v)\n"
           "x3 = sqrt(r)*sinh(u)\n"
           "x4 = sqrt(r)*cosh(u)\n"
           "domain = -1 1 -1 1\n"
           "grid = 9 9\n";
}

ChartSpec hyperbolic_cylinder() { return parse_chart(hyperbolic_cylinder_text()); }
ChartSpec desitter_product(double r) { return parse_chart(desitter_product_text(r)); }
ChartSpec antidesitter_torus(double r) { return parse_chart(antidesitter_torus_text(r)); }
ChartSpec graph_control() { return parse_chart(graph_control_text()); }
ChartSpec plane_control() { return parse_chart(plane_control_text()); }
ChartSpec padded_cylinder() { return parse_chart(padded_cylinder_text()); }
ChartSpec desitter_unscaled() { return parse_chart(desitter_unscaled_text()); }

std::vector<Expectation> catalog() {
    std::vector<Expectation> all;
    all.push_back({"hyperbolic_cylinder", hyperbolic_cylinder_text(),
                   Branch::VanishingFormNonIsotropic});
    all.push_back({"desitter_product_r05", desitter_product_text(0.5),
                   Branch::VanishingFormNonIsotropic});
    all.push_back({"desitter_product_r1", desitter_product_text(1.0),
                   Branch::VanishingFormNonIsotropic});
    all.push_back({"desitter_product_r2", desitter_product_text(2.0),
                   Branch::VanishingFormNonIsotropic});
    all.push_back({"antidesitter_torus_rm025", antidesitter_torus_text(-0.25),
                   Branch::VanishingFormNonIsotropic});
    // at r = -1/2 the two hyperbolic factors have equal radii and
    // psi = -(1/(-r) - 1/(1+r))/4 vanishes identically; N + Y/8 is the
    // constant vector (1/2, 0, ..., 0), so the torus is conformally isotropic
    all.push_back({"antidesitter_torus_rm05", antidesitter_torus_text(-0.5),
                   Branch::VanishingFormIsotropic});
    all.push_back({"graph_control", graph_control_text(), Branch::NonVanishingForm});
    all.push_back({"plane_control", plane_control_text(), Branch::Degenerate});
    all.push_back({"padded_cylinder", padded_cylinder_text(),
                   Branch::VanishingFormNonIsotropic});
    return all;
}

void write_fixture_files(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& e : catalog()) {
        std::ofstream out(dir / (e.name + ".chart"), std::ios::binary);
        out << e.text;
    }
    std::ofstream out(dir / "desitter_unscaled.chart", std::ios::binary);
    out << desitter_unscaled_text();
}

}  // namespace fixtures
}  // namespace cq
