#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cq/expr.hpp"
#include "cq/linalg.hpp"

namespace cq {

enum class SpaceTag { R, S, H };

const char* space_name(SpaceTag t);

struct ChartError : std::runtime_error {
    int line;  // 1-based, 0 when not tied to a line
    ChartError(const std::string& msg, int line_)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

// A parsed surface definition: ambient space form, coordinate expressions of
// the immersion, parameter domain and sampling grid.
struct ChartSpec {
    std::string name;
    SpaceTag space = SpaceTag::R;
    int n = 3;  // conformal dimension
    std::map<std::string, double> constants;
    std::vector<ExprPtr> coords;
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
    int mu = 0, mv = 0;

    // model lives in R^n (tag R) or R^{n+1} (tags S, H)
    int model_dim() const { return space == SpaceTag::R ? n : n + 1; }
    Signature model_signature() const {
        switch (space) {
            case SpaceTag::R: return {n - 1, 1};
            case SpaceTag::S: return {n, 1};
            default: return {n - 1, 2};
        }
    }
    Signature lift_signature() const { return {n, 2}; }

    double grid_u(int i) const { return u0 + (u1 - u0) * i / (mu - 1); }
    double grid_v(int j) const { return v0 + (v1 - v0) * j / (mv - 1); }
};

ChartSpec parse_chart(const std::string& text);
ChartSpec load_chart(const std::filesystem::path& file);

}  // namespace cq
