#include "cq/run.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace cq {

PointSample sample_point(const ConformalFrame& frame, const InvariantSet& inv) {
    PointSample s;
    s.u = frame.u;
    s.v = frame.v;
    s.phi_norm = inv.phi_norm();
    s.abs_psi = std::abs(inv.psi.value());
    s.abs_psi_zbar = std::abs(wirtinger_zbar(inv.psi).value());
    s.gauss = frame.gauss.value();
    double coef = 0.125 * (4.0 * s.gauss - 1.0);
    for (size_t i = 0; i < frame.Y.size(); ++i) {
        s.Y.push_back(frame.Y[i].value());
        s.c.push_back(frame.N[i].value() - coef * frame.Y[i].value());
    }
    return s;
}

GridResult run_grid(const ChartSpec& chart, const RunConfig& cfg) {
    return run_grid(chart, cfg, nullptr);
}

GridResult run_grid(const ChartSpec& chart, const RunConfig& cfg,
                    const Eigen::MatrixXd* transform) {
    const int total = chart.mu * chart.mv;
    struct PointResult {
        PointSample sample;
        std::map<std::string, double> resid;
    };
    std::vector<PointResult> results(total);
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::atomic<int> next{0};

    auto work = [&] {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= total) return;
            int i = idx / chart.mv, j = idx % chart.mv;
            double u = chart.grid_u(i), v = chart.grid_v(j);
            try {
                ConformalFrame frame = build_frame(chart, u, v, cfg.pipeline, transform);
                InvariantSet inv = compute_invariants(frame);
                results[idx].sample = sample_point(frame, inv);
                results[idx].resid = residuals_at(frame, inv);
            } catch (const GeometryError& e) {
                if (e.kind == GeometryError::Kind::ConformallyDegenerate) {
                    results[idx].sample.u = u;
                    results[idx].sample.v = v;
                    results[idx].sample.degenerate = true;
                } else {
                    std::lock_guard<std::mutex> lk(failure_mu);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    GridResult out;
    for (int idx = 0; idx < total; ++idx) {
        auto& r = results[idx];
        out.samples.push_back(r.sample);
        if (r.sample.degenerate) {
            ++out.degenerate_points;
        } else {
            out.residuals.absorb(r.resid, r.sample.u, r.sample.v);
        }
    }
    out.classification = classify(out.samples, chart.n, cfg.tol);
    return out;
}

}  // namespace cq
