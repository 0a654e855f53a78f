#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cq/pipeline.hpp"

namespace cq {

// Pointwise conformal invariants psi, phi_alpha, Omega_alpha, A_{alpha beta}
// as jets, plus the diagonal normal metric signs eps_alpha.
struct InvariantSet {
    int n = 0;
    JetC psi{0};
    std::vector<JetC> phi;                 // indexed alpha - 3
    std::vector<JetC> Omega;
    std::vector<std::vector<JetC>> A;      // A[a][b] = A_{alpha beta}
    std::vector<int> eps;                  // g^{alpha alpha} = g_{alpha alpha}
    std::vector<VecC> E;                   // the normal frame these refer to
    JetR omega{0}, gauss{0};

    // Sum eps_a phi_a conj(phi_a); negative contributions come from the
    // time-like normal direction.
    double phi_norm2() const;
    double phi_norm() const { return std::sqrt(std::abs(phi_norm2())); }
    std::complex<double> quartic() const;  // Sum Omega^a Omega_a at the point
    JetC quartic_jet() const;
};

InvariantSet compute_invariants(const ConformalFrame& frame);

// Recompute the invariant set after re-mixing the normal frame by M, which
// must preserve the normal metric diag(eps). Gauge-invariance testing.
InvariantSet compute_invariants(const ConformalFrame& frame, const Eigen::MatrixXd& remix);

// max absolute residual of every verified equation at one point, keyed
// S2.2 S2.3a S2.3b S2.4 F2.5a F2.5b F2.5c F2.6 F2.7 W2.8 R3.1a R3.1b R3.1c R3.3 R3.4
std::map<std::string, double> residuals_at(const ConformalFrame& frame, const InvariantSet& inv);

std::vector<double> willmore_residual(const ConformalFrame& frame, const InvariantSet& inv);

struct ResidualReport {
    static const std::vector<std::string>& keys();  // fixed report ordering
    std::map<std::string, double> max_resid;
    std::map<std::string, std::array<double, 2>> argmax;
    void absorb(const std::map<std::string, double>& point_resid, double u, double v);
    double structure_max() const;    // S* keys
    double fundamental_max() const;  // F* keys
};

}  // namespace cq
