#include "cq/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cq/linalg.hpp"

namespace cq {

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::VanishingFormIsotropic: return "VanishingFormIsotropic";
        case Branch::VanishingFormNonIsotropic: return "VanishingFormNonIsotropic";
        case Branch::NonVanishingForm: return "NonVanishingForm";
        default: return "Degenerate";
    }
}

bool detect_vanishing_form(const std::vector<PointSample>& samples, double tol) {
    if (samples.size() < 4) throw std::invalid_argument("detect_vanishing_form: need >= 4 samples");
    double m = 0;
    for (const auto& s : samples) m = std::max(m, s.phi_norm);
    return m <= tol;
}

IsotropicResult isotropic_test(const std::vector<PointSample>& samples, double tol) {
    IsotropicResult r;
    if (samples.empty()) return r;
    const size_t dim = samples[0].c.size();
    r.c.assign(dim, 0.0);
    double k_mean = 0;
    for (const auto& s : samples) {
        for (size_t i = 0; i < dim; ++i) r.c[i] += s.c[i];
        k_mean += s.gauss;
    }
    for (auto& x : r.c) x /= samples.size();
    k_mean /= samples.size();
    for (const auto& s : samples) {
        double d2 = 0;
        for (size_t i = 0; i < dim; ++i) d2 += (s.c[i] - r.c[i]) * (s.c[i] - r.c[i]);
        r.dispersion = std::max(r.dispersion, std::sqrt(d2));
        r.gauss_spread = std::max(r.gauss_spread, std::abs(s.gauss - k_mean));
    }
    r.is_isotropic = r.dispersion <= tol && r.gauss_spread <= tol;
    return r;
}

PsiKind psi_zero_test(const std::vector<PointSample>& samples, double tol) {
    double mx = 0, mn = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        mx = std::max(mx, s.abs_psi);
        mn = std::min(mn, s.abs_psi);
    }
    if (mx <= tol) return PsiKind::IdenticallyZero;
    if (mn > tol) return PsiKind::NonVanishing;
    return PsiKind::IsolatedZeros;
}

int fullness_test(const std::vector<PointSample>& samples, double tol) {
    if (samples.empty()) throw std::invalid_argument("fullness_test: empty input");
    const size_t dim = samples[0].Y.size();
    if (samples.size() < dim)
        throw std::invalid_argument("fullness_test: need at least n + 2 samples");
    std::vector<SpaceVector<double>> rows;
    for (const auto& s : samples) rows.push_back(s.Y);
    return rank_of_span(rows, tol);
}

ClassificationReport classify(const std::vector<PointSample>& samples, int n,
                              const ClassifyTolerances& tol) {
    ClassificationReport rep;
    rep.n = n;

    bool any_degenerate = false;
    std::vector<PointSample> good;
    for (const auto& s : samples) {
        if (s.degenerate) any_degenerate = true;
        else good.push_back(s);
    }
    if (any_degenerate || good.empty()) {
        rep.branch = Branch::Degenerate;
        return rep;
    }

    rep.psi_min = std::numeric_limits<double>::infinity();
    for (const auto& s : good) {
        rep.phi_max = std::max(rep.phi_max, s.phi_norm);
        rep.psi_max = std::max(rep.psi_max, s.abs_psi);
        rep.psi_min = std::min(rep.psi_min, s.abs_psi);
        rep.psi_holo_max = std::max(rep.psi_holo_max, s.abs_psi_zbar);
        rep.K_values.push_back(s.gauss);
    }
    rep.essential_rank = fullness_test(good, tol.rank_tol);
    rep.full = rep.essential_rank == n + 2;
    rep.psi_kind = psi_zero_test(good, tol.psi_tol);
    rep.isotropic = isotropic_test(good, tol.isotropy_tol);

    if (!detect_vanishing_form(good, tol.phi_tol)) {
        rep.branch = Branch::NonVanishingForm;
    } else if (rep.isotropic.is_isotropic) {
        rep.branch = Branch::VanishingFormIsotropic;
    } else {
        rep.branch = Branch::VanishingFormNonIsotropic;
        if (rep.psi_kind == PsiKind::NonVanishing && rep.full)
            rep.n3_consistent = (n == 3);
    }
    return rep;
}

}  // namespace cq
