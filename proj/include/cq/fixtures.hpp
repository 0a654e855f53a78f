#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cq/chart.hpp"
#include "cq/classify.hpp"

namespace cq {
namespace fixtures {

// Chart file text for every canonical fixture; parse_chart round-trips these
// bit-exactly.
std::string hyperbolic_cylinder_text();
std::string desitter_product_text(double r);    // r > 0
std::string antidesitter_torus_text(double r);  // -1/2 <= r < 0
std::string graph_control_text();               // space-like helicoid, Phi != 0
std::string plane_control_text();               // conformally degenerate
std::string padded_cylinder_text();             // cylinder in n = 4, non-full
std::string desitter_unscaled_text();           // NotIsothermal control

ChartSpec hyperbolic_cylinder();
ChartSpec desitter_product(double r);
ChartSpec antidesitter_torus(double r);
ChartSpec graph_control();
ChartSpec plane_control();
ChartSpec padded_cylinder();
ChartSpec desitter_unscaled();

struct Expectation {
    std::string name;
    std::string text;
    Branch branch;
};

// the positive fixtures plus the controls, with their expected branches
std::vector<Expectation> catalog();

// write every catalog chart as <name>.chart under dir
void write_fixture_files(const std::filesystem::path& dir);

}  // namespace fixtures
}  // namespace cq
