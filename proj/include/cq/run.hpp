#pragma once

#include "cq/classify.hpp"
#include "cq/invariants.hpp"

namespace cq {

struct RunConfig {
    PipelineOptions pipeline;
    ClassifyTolerances tol;
    int workers = 1;
};

struct GridResult {
    ResidualReport residuals;
    std::vector<PointSample> samples;  // grid order, row-major in u
    ClassificationReport classification;
    int degenerate_points = 0;
};

// Evaluate the whole pipeline over the chart's sampling grid. Points are
// dispatched to a worker pool; reduction happens in grid order, so reruns
// are byte-identical regardless of worker count. Conformal degeneracy is
// recorded per point; other geometric failures propagate.
GridResult run_grid(const ChartSpec& chart, const RunConfig& cfg = {});

// Equivariance hook: same run with a pseudo-orthogonal transform applied to
// every lift.
GridResult run_grid(const ChartSpec& chart, const RunConfig& cfg, const Eigen::MatrixXd* transform);

// Pointwise sample extraction shared by the grid runner and the tests.
PointSample sample_point(const ConformalFrame& frame, const InvariantSet& inv);

}  // namespace cq
