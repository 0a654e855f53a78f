#include "cq/invariants.hpp"

#include <algorithm>

namespace cq {

namespace {

using C = std::complex<double>;

double max_abs_value(const VecC& r) {
    double m = 0;
    for (const auto& c : r) m = std::max(m, std::abs(c.value()));
    return m;
}

}  // namespace

double InvariantSet::phi_norm2() const {
    double s = 0;
    for (size_t a = 0; a < phi.size(); ++a) s += eps[a] * std::norm(phi[a].value());
    return s;
}

std::complex<double> InvariantSet::quartic() const { return quartic_jet().value(); }

JetC InvariantSet::quartic_jet() const {
    JetC q(Omega.empty() ? 0 : Omega[0].order());
    for (size_t a = 0; a < Omega.size(); ++a)
        q = q + Omega[a] * Omega[a] * C(double(eps[a]));
    return q;
}

InvariantSet compute_invariants(const ConformalFrame& frame) {
    return compute_invariants(frame, Eigen::MatrixXd::Identity(frame.n - 2, frame.n - 2));
}

InvariantSet compute_invariants(const ConformalFrame& frame, const Eigen::MatrixXd& remix) {
    InvariantSet inv;
    inv.n = frame.n;
    inv.omega = frame.omega;
    inv.gauss = frame.gauss;

    const int m = frame.n - 2;
    // remixed normal frame E'_a = sum_b remix(a,b) E_b; remix must satisfy
    // remix^T diag(eps) remix = diag(eps'), here required to preserve eps
    std::vector<VecC> E;
    inv.eps.resize(m);
    for (int a = 0; a < m; ++a) {
        VecR acc;
        for (size_t i = 0; i < frame.y.size(); ++i) {
            JetR s = frame.E[0].vector[i] * remix(a, 0);
            for (int b = 1; b < m; ++b) s = s + frame.E[b].vector[i] * remix(a, b);
            acc.push_back(s);
        }
        E.push_back(complexify(acc));
        inv.eps[a] = frame.E[a].sign;
    }

    VecC Nz = vec_wirtinger_z(frame.N);
    VecC Yzz = vec_wirtinger_z(frame.Yz);

    inv.psi = inner(Nz, frame.Yz, frame.sig) * C(2.0);
    for (int a = 0; a < m; ++a) {
        inv.phi.push_back(inner(Nz, E[a], frame.sig));
        inv.Omega.push_back(inner(Yzz, E[a], frame.sig) * C(2.0));
    }
    inv.A.resize(m);
    for (int a = 0; a < m; ++a) {
        VecC Ez = vec_wirtinger_z(vec_real(E[a]));
        for (int b = 0; b < m; ++b) inv.A[a].push_back(inner(Ez, E[b], frame.sig));
    }
    inv.E = std::move(E);
    return inv;
}

std::map<std::string, double> residuals_at(const ConformalFrame& frame, const InvariantSet& inv) {
    std::map<std::string, double> r;
    const int m = frame.n - 2;
    const auto& eps = inv.eps;

    VecC Y = complexify(frame.Y);
    VecC N = complexify(frame.N);
    VecC Nz = vec_wirtinger_z(frame.N);
    VecC Yzz = vec_wirtinger_z(frame.Yz);
    VecC Yzzb = vec_wirtinger_zbar(frame.Yz);
    // the frame the invariants were computed against (remixed when requested)
    const std::vector<VecC>& E = inv.E;

    JetC e2w = cq::complexify(exp(frame.omega * 2.0));
    JetC em2w = cq::complexify(exp(frame.omega * (-2.0)));
    JetC gauss = cq::complexify(frame.gauss);
    JetC omega_z = wirtinger_z(frame.omega);
    JetC psi_zb = wirtinger_zbar(inv.psi);
    JetC K_z = wirtinger_z(frame.gauss);

    // (2.2)  N_z = 1/8 (4K-1) Y_z + e^{-2w} psi Y_zbar + sum phi^a E_a
    {
        VecC rhs = vec_scale(frame.Yz, (gauss * C(4.0) - C(1.0)) * C(0.125));
        rhs = vec_add(rhs, vec_scale(frame.Yzb, em2w * inv.psi));
        for (int a = 0; a < m; ++a)
            rhs = vec_add(rhs, vec_scale(E[a], inv.phi[a] * C(double(eps[a]))));
        r["S2.2"] = max_abs_value(vec_sub(Nz, rhs));
    }
    // (2.3) first  Y_zz = -1/2 psi Y + 2 w_z Y_z + 1/2 sum Omega^a E_a
    {
        VecC rhs = vec_scale(Y, inv.psi * C(-0.5));
        rhs = vec_add(rhs, vec_scale(frame.Yz, omega_z * C(2.0)));
        for (int a = 0; a < m; ++a)
            rhs = vec_add(rhs, vec_scale(E[a], inv.Omega[a] * C(0.5 * eps[a])));
        r["S2.3a"] = max_abs_value(vec_sub(Yzz, rhs));
    }
    // (2.3) second  Y_zzbar = -1/16 e^{2w}(4K-1) Y - 1/2 e^{2w} N
    {
        VecC rhs = vec_scale(Y, e2w * (gauss * C(4.0) - C(1.0)) * C(-1.0 / 16.0));
        rhs = vec_add(rhs, vec_scale(N, e2w * C(-0.5)));
        r["S2.3b"] = max_abs_value(vec_sub(Yzzb, rhs));
    }
    // (2.4)  (E_a)_z = -phi_a Y - e^{-2w} Omega_a Y_zbar + sum A^b_a E_b
    {
        double worst = 0;
        for (int a = 0; a < m; ++a) {
            VecC Ez = vec_wirtinger_z(vec_real(E[a]));
            VecC rhs = vec_scale(Y, inv.phi[a] * C(-1.0));
            rhs = vec_add(rhs, vec_scale(frame.Yzb, em2w * inv.Omega[a] * C(-1.0)));
            for (int b = 0; b < m; ++b)
                rhs = vec_add(rhs, vec_scale(E[b], inv.A[a][b] * C(double(eps[b]))));
            worst = std::max(worst, max_abs_value(vec_sub(Ez, rhs)));
        }
        r["S2.4"] = worst;
    }
    // (2.5)  psi_zbar = 1/2 e^{2w} K_z - sum Omega^a conj(phi_a)
    {
        JetC rhs = e2w * K_z * C(0.5);
        for (int a = 0; a < m; ++a)
            rhs = rhs - inv.Omega[a] * conj(inv.phi[a]) * C(double(eps[a]));
        r["F2.5a"] = std::abs((psi_zb - rhs).value());
    }
    // (2.5)  sum Omega^a Omega_a = -1/4 e^{4w}
    r["F2.5b"] = std::abs((inv.quartic_jet() + e2w * e2w * C(0.25)).value());
    // (2.5)  (Omega_a)_zbar = -sum Omega^b conj(A_{b a}) - e^{2w} phi_a
    {
        double worst = 0;
        for (int a = 0; a < m; ++a) {
            JetC lhs = wirtinger_zbar(inv.Omega[a]);
            JetC rhs = e2w * inv.phi[a] * C(-1.0);
            for (int b = 0; b < m; ++b)
                rhs = rhs - inv.Omega[b] * conj(inv.A[b][a]) * C(double(eps[b]));
            worst = std::max(worst, std::abs((lhs - rhs).value()));
        }
        r["F2.5c"] = worst;
    }
    // (2.6) and (2.8): the Willmore member and its conjugate
    {
        double worst26 = 0, worst28 = 0;
        for (int a = 0; a < m; ++a) {
            JetC L = wirtinger_zbar(inv.phi[a]) - em2w * conj(inv.psi) * inv.Omega[a] * C(0.5);
            for (int b = 0; b < m; ++b)
                L = L + inv.phi[b] * conj(inv.A[b][a]) * C(double(eps[b]));
            worst28 = std::max(worst28, std::abs(L.value()));
            worst26 = std::max(worst26, std::abs(L.value() - std::conj(L.value())));
        }
        r["F2.6"] = worst26;
        r["W2.8"] = worst28;
    }
    // (2.7)
    {
        double worst = 0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                C lhs = wirtinger_zbar(inv.A[a][b]).value();
                lhs -= std::conj(lhs);  // (conj A_{ab})_z = conj((A_{ab})_zbar)
                C Oa = inv.Omega[a].value(), Ob = inv.Omega[b].value();
                C rhs = 0.5 * em2w.value() * (Oa * std::conj(Ob) - std::conj(Oa) * Ob);
                for (int g = 0; g < m; ++g) {
                    C Aag = inv.A[a][g].value(), Abg = inv.A[b][g].value();
                    rhs += double(eps[g]) * (std::conj(Aag) * Abg - Aag * std::conj(Abg));
                }
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        r["F2.7"] = worst;
    }
    // (3.1) specializations and Lemma 3.1 holomorphy
    r["R3.1a"] = std::abs((psi_zb - e2w * K_z * C(0.5)).value());
    {
        double worst = 0;
        C psi0 = inv.psi.value();
        for (int a = 0; a < m; ++a) {
            C O = inv.Omega[a].value();
            worst = std::max(worst, std::abs(std::conj(psi0) * O - psi0 * std::conj(O)));
        }
        r["R3.1b"] = worst;
    }
    {
        C q = inv.quartic();
        C e4w = e2w.value() * e2w.value();
        r["R3.1c"] = std::abs(q / e4w + 0.25);
        r["R3.3"] = std::abs(wirtinger_zbar(inv.quartic_jet()).value());
        // (3.4): both stated equalities, evaluated separately
        C qbar_mixed = 0;
        for (int a = 0; a < m; ++a)
            qbar_mixed += double(inv.eps[a]) * inv.Omega[a].value() *
                          std::conj(inv.Omega[a].value());
        C psi0 = inv.psi.value();
        double m1 = std::abs(std::conj(psi0) * q - qbar_mixed);
        double m2 = std::abs(qbar_mixed + 0.25 * e4w * psi0);
        r["R3.4"] = std::max(m1, m2);
    }
    return r;
}

std::vector<double> willmore_residual(const ConformalFrame& frame, const InvariantSet& inv) {
    const int m = frame.n - 2;
    JetC em2w = cq::complexify(exp(frame.omega * (-2.0)));
    std::vector<double> out;
    for (int a = 0; a < m; ++a) {
        JetC L = wirtinger_zbar(inv.phi[a]) - em2w * conj(inv.psi) * inv.Omega[a] * C(0.5);
        for (int b = 0; b < m; ++b)
            L = L + inv.phi[b] * conj(inv.A[b][a]) * C(double(inv.eps[b]));
        out.push_back(std::abs(L.value()));
    }
    return out;
}

const std::vector<std::string>& ResidualReport::keys() {
    static const std::vector<std::string> k = {
        "S2.2", "S2.3a", "S2.3b", "S2.4", "F2.5a", "F2.5b", "F2.5c", "F2.6",
        "F2.7", "W2.8", "R3.1a", "R3.1b", "R3.1c", "R3.3", "R3.4"};
    return k;
}

void ResidualReport::absorb(const std::map<std::string, double>& point_resid, double u, double v) {
    for (const auto& [key, val] : point_resid) {
        auto it = max_resid.find(key);
        if (it == max_resid.end() || val > it->second) {
            max_resid[key] = val;
            argmax[key] = {u, v};
        }
    }
}

double ResidualReport::structure_max() const {
    double m = 0;
    for (const auto& [k, v] : max_resid)
        if (k[0] == 'S') m = std::max(m, v);
    return m;
}

double ResidualReport::fundamental_max() const {
    double m = 0;
    for (const auto& [k, v] : max_resid)
        if (k[0] == 'F') m = std::max(m, v);
    return m;
}

}  // namespace cq
