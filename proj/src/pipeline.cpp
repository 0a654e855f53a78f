#include "cq/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace cq {

namespace {

template <class V, class F>
V map_vec(const V& x, F f) {
    V r;
    r.reserve(x.size());
    for (const auto& c : x) r.push_back(f(c));
    return r;
}

}  // namespace

VecC complexify(const VecR& x) {
    VecC r;
    r.reserve(x.size());
    for (const auto& c : x) r.push_back(cq::complexify(c));
    return r;
}
VecR vec_du(const VecR& x) { return map_vec(x, [](const JetR& j) { return j.du(); }); }
VecR vec_dv(const VecR& x) { return map_vec(x, [](const JetR& j) { return j.dv(); }); }
VecC vec_wirtinger_z(const VecR& x) {
    VecC r;
    for (const auto& c : x) r.push_back(wirtinger_z(c));
    return r;
}
VecC vec_wirtinger_z(const VecC& x) {
    VecC r;
    for (const auto& c : x) r.push_back(wirtinger_z(c));
    return r;
}
VecC vec_wirtinger_zbar(const VecC& x) {
    VecC r;
    for (const auto& c : x) r.push_back(wirtinger_zbar(c));
    return r;
}
VecR vec_real(const VecC& x) {
    VecR r;
    for (const auto& c : x) r.push_back(real(c));
    return r;
}
VecC vec_conj(const VecC& x) { return map_vec(x, [](const JetC& j) { return conj(j); }); }
VecR vec_scale(const VecR& x, const JetR& s) {
    return map_vec(x, [&](const JetR& j) { return j * s; });
}
VecC vec_scale(const VecC& x, const JetC& s) {
    return map_vec(x, [&](const JetC& j) { return j * s; });
}
VecR vec_add(const VecR& a, const VecR& b) {
    VecR r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
    return r;
}
VecC vec_add(const VecC& a, const VecC& b) {
    VecC r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
    return r;
}
VecR vec_sub(const VecR& a, const VecR& b) {
    VecR r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}
VecC vec_sub(const VecC& a, const VecC& b) {
    VecC r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}
VecR vec_truncate(const VecR& x, int order) {
    return map_vec(x, [&](const JetR& j) { return j.truncated(order); });
}

VecR lift_to_lightcone(const ChartSpec& chart, double u, double v, int order) {
    VecR x;
    x.reserve(chart.model_dim());
    for (const auto& e : chart.coords) x.push_back(eval_jet(*e, u, v, chart.constants, order));

    VecR y;
    switch (chart.space) {
        case SpaceTag::R: {
            JetR q = inner(x, x, chart.model_signature());
            JetR half = JetR::constant(0.5, order);
            // slots ordered (+ ... + | - -): the model's time slot stays
            // second-to-last, the two added slots are first (+) and last (-)
            y.push_back((JetR::constant(1.0, order) - q) * half);
            for (int i = 0; i < chart.model_signature().plus; ++i) y.push_back(x[i]);
            y.push_back(x.back());
            y.push_back((JetR::constant(1.0, order) + q) * half);
            break;
        }
        case SpaceTag::S: {
            // x in S^n_1 (<x,x> = 1); appended slot is negative
            y = x;
            y.push_back(JetR::constant(1.0, order));
            break;
        }
        case SpaceTag::H: {
            // x in H^n_1 (<x,x> = -1); prepended slot is positive
            y.push_back(JetR::constant(1.0, order));
            for (const auto& c : x) y.push_back(c);
            break;
        }
    }
    return y;
}

ChartCheck check_chart(const ChartSpec& chart, double u, double v, int order, double iso_tol) {
    VecR y = lift_to_lightcone(chart, u, v, order);
    Signature sig = chart.lift_signature();
    VecR yu = vec_du(y), yv = vec_dv(y);
    ChartCheck c{inner(yu, yu, sig), inner(yv, yv, sig), inner(yu, yv, sig)};

    double h11 = c.h11.value(), h22 = c.h22.value(), h12 = c.h12.value();
    if (!(h11 > 0) || !(h11 * h22 - h12 * h12 > 0)) {
        std::ostringstream msg;
        msg << "surface is not space-like at (" << u << ", " << v << "): h11 = " << h11
            << ", det h = " << h11 * h22 - h12 * h12;
        throw GeometryError(GeometryError::Kind::NotSpaceLike, u, v, msg.str());
    }
    if (std::abs(h12) > iso_tol * h11 || std::abs(h11 - h22) > iso_tol * h11) {
        std::ostringstream msg;
        msg << "chart is not isothermal at (" << u << ", " << v << "): h11 = " << h11
            << ", h22 = " << h22 << ", h12 = " << h12;
        throw GeometryError(GeometryError::Kind::NotIsothermal, u, v, msg.str());
    }
    return c;
}

ConformalFrame build_frame(const ChartSpec& chart, double u, double v,
                           const PipelineOptions& opts) {
    return build_frame(chart, u, v, opts, nullptr);
}

ConformalFrame build_frame(const ChartSpec& chart, double u, double v,
                           const PipelineOptions& opts, const Eigen::MatrixXd* transform) {
    const int K = opts.order;
    // the invariants consume jets down to order K - 7 (one zbar derivative of A)
    if (K < 7) throw std::invalid_argument("pipeline requires jet order >= 7");
    ConformalFrame f;
    f.n = chart.n;
    f.sig = chart.lift_signature();
    f.u = u;
    f.v = v;

    check_chart(chart, u, v, K, opts.iso_tol);
    f.y = lift_to_lightcone(chart, u, v, K);
    const int dim = f.sig.dim();

    if (transform) {
        VecR ty;
        ty.reserve(dim);
        for (int i = 0; i < dim; ++i) {
            JetR acc(K);
            for (int j = 0; j < dim; ++j) acc = acc + f.y[j] * (*transform)(i, j);
            ty.push_back(acc);
        }
        f.y = std::move(ty);
    }

    VecR yu = vec_du(f.y);
    f.lambda = log(inner(yu, yu, f.sig)) * 0.5;  // order K-1

    // delta y = 4 e^{-2 lambda} y_{z zbar}
    JetR e_m2l = exp(f.lambda * (-2.0));
    VecR y_zzb = vec_real(vec_wirtinger_zbar(vec_wirtinger_z(f.y)));  // order K-2
    f.delta_y = vec_scale(y_zzb, e_m2l.truncated(K - 2) * 4.0);

    // kappa = -4 e^{-2 lambda} lambda_{z zbar}
    JetR l_zzb = real(wirtinger_zbar(wirtinger_z(f.lambda)));  // order K-3
    f.kappa = l_zzb * e_m2l.truncated(K - 3) * (-4.0);

    f.rho2 = -(inner(f.delta_y, f.delta_y, f.sig).truncated(K - 3) - f.kappa * 4.0);
    if (!(f.rho2.value() > opts.degeneracy_tol)) {
        std::ostringstream msg;
        msg << "conformally degenerate at (" << u << ", " << v << "): rho^2 = " << f.rho2.value();
        throw GeometryError(GeometryError::Kind::ConformallyDegenerate, u, v, msg.str());
    }

    f.omega = f.lambda.truncated(K - 3) + log(f.rho2) * 0.5;
    f.Y = vec_scale(vec_truncate(f.y, K - 3), sqrt(f.rho2));  // canonical lift, order K-3

    f.Yz = vec_wirtinger_z(f.Y);                                    // order K-4
    VecR Y_zzb = vec_real(vec_wirtinger_zbar(f.Yz));                // order K-5
    JetR e_m2w = exp(f.omega * (-2.0));
    VecR delta_Y = vec_scale(Y_zzb, e_m2w.truncated(K - 5) * 4.0);

    // N = -1/2 delta Y - 1/8 <delta Y, delta Y> Y
    JetR dYdY = inner(delta_Y, delta_Y, f.sig);
    f.N = vec_sub(vec_scale(delta_Y, JetR::constant(-0.5, K - 5)),
                  vec_scale(vec_truncate(f.Y, K - 5), dYdY * 0.125));

    f.gauss = real(wirtinger_zbar(wirtinger_z(f.omega))) * e_m2w.truncated(K - 5) * (-4.0);
    f.Yzb = vec_conj(f.Yz);

    // conformal normal frame: ambient basis projected off span{Y, N, Y_u, Y_v},
    // then pivoted Gram-Schmidt in the jet ring
    const int ford = K - 5;
    VecR Yt = vec_truncate(f.Y, ford);
    VecR Yu = vec_truncate(vec_du(f.Y), ford);
    VecR Yv = vec_truncate(vec_dv(f.Y), ford);
    JetR e2w = exp(f.omega.truncated(ford) * 2.0);
    JetR inv_e2w = JetR::reciprocal(e2w);

    std::vector<SpaceVector<JetR>> candidates;
    for (int i = 0; i < dim; ++i) {
        VecR e;
        for (int j = 0; j < dim; ++j)
            e.push_back(JetR::constant(i == j ? 1.0 : 0.0, ford));
        // <Y,Y> = <N,N> = 0, <Y,N> = 1, <Y_u,Y_u> = <Y_v,Y_v> = e^{2w}
        JetR cY = inner(e, f.N, f.sig);
        JetR cN = inner(e, Yt, f.sig);
        JetR cu = inner(e, Yu, f.sig) * inv_e2w;
        JetR cv = inner(e, Yv, f.sig) * inv_e2w;
        VecR w = vec_sub(e, vec_scale(Yt, cY));
        w = vec_sub(w, vec_scale(f.N, cN));
        w = vec_sub(w, vec_scale(Yu, cu));
        w = vec_sub(w, vec_scale(Yv, cv));
        candidates.push_back(std::move(w));
    }
    try {
        f.E = gram_schmidt_indefinite(candidates, f.sig, opts.frame_tol, f.n - 2);
    } catch (const DegenerateSpan&) {
        f.E.clear();
    }
    if ((int)f.E.size() != f.n - 2) {
        std::ostringstream msg;
        msg << "degenerate conformal normal bundle at (" << u << ", " << v << ")";
        throw GeometryError(GeometryError::Kind::DegenerateNormalBundle, u, v, msg.str());
    }
    return f;
}

}  // namespace cq
