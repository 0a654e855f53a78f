#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cq/chart.hpp"
#include "cq/jet.hpp"
#include "cq/linalg.hpp"

namespace cq {

using VecR = std::vector<JetR>;
using VecC = std::vector<JetC>;

struct GeometryError : std::runtime_error {
    enum class Kind { NotSpaceLike, NotIsothermal, ConformallyDegenerate, DegenerateNormalBundle };
    Kind kind;
    double u, v;
    GeometryError(Kind k, double u_, double v_, const std::string& msg)
        : std::runtime_error(msg), kind(k), u(u_), v(v_) {}
};

struct PipelineOptions {
    int order = 8;
    double iso_tol = 1e-9;         // relative isothermality tolerance on h
    double degeneracy_tol = 1e-12; // absolute threshold on rho^2
    double frame_tol = 1e-9;       // Gram-Schmidt pivot tolerance
};

// jet-vector helpers
VecC complexify(const VecR& x);
VecR vec_du(const VecR& x);
VecR vec_dv(const VecR& x);
VecC vec_wirtinger_z(const VecR& x);
VecC vec_wirtinger_z(const VecC& x);
VecC vec_wirtinger_zbar(const VecC& x);
VecR vec_real(const VecC& x);
VecC vec_conj(const VecC& x);
VecR vec_scale(const VecR& x, const JetR& s);
VecC vec_scale(const VecC& x, const JetC& s);
VecR vec_add(const VecR& a, const VecR& b);
VecC vec_add(const VecC& a, const VecC& b);
VecR vec_sub(const VecR& a, const VecR& b);
VecC vec_sub(const VecC& a, const VecC& b);
VecR vec_truncate(const VecR& x, int order);

// Null lift of the chart's immersion into R^{n+2}_2; <y,y> = 0 as a jet.
VecR lift_to_lightcone(const ChartSpec& chart, double u, double v, int order);

// First fundamental form of the lift; e^{2 lambda} = h11 for isothermal input.
struct ChartCheck {
    JetR h11, h22, h12;
};
ChartCheck check_chart(const ChartSpec& chart, double u, double v, int order, double iso_tol);

// The moving frame {Y, N, Y_z, Y_zbar, E_alpha} and conformal factors at one
// point, all jet-valued.
struct ConformalFrame {
    int n = 0;
    Signature sig;  // (n, 2)
    double u = 0, v = 0;
    VecR y;          // light-cone lift
    JetR lambda{0};  // <dy,dy> = e^{2 lambda} |dz|^2
    VecR delta_y;
    JetR kappa{0};
    JetR rho2{0};    // -(<delta y, delta y> - 4 kappa)
    JetR omega{0};   // g = e^{2 omega} |dz|^2
    VecR Y, N;
    JetR gauss{0};   // Gauss curvature K of g
    VecC Yz, Yzb;
    std::vector<FrameVector<JetR>> E;  // conformal normal frame, signs eps_alpha
};

ConformalFrame build_frame(const ChartSpec& chart, double u, double v,
                           const PipelineOptions& opts = {});

// Same pipeline, with a linear transformation applied to the lift first
// (equivariance testing; T must be pseudo-orthogonal for the (n,2) product).
ConformalFrame build_frame(const ChartSpec& chart, double u, double v,
                           const PipelineOptions& opts, const Eigen::MatrixXd* transform);

}  // namespace cq
