#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cq/invariants.hpp"

namespace cq {

enum class Branch { VanishingFormIsotropic, VanishingFormNonIsotropic, NonVanishingForm, Degenerate };

const char* branch_name(Branch b);

// Per-grid-point sample of everything the classifier consumes.
struct PointSample {
    double u = 0, v = 0;
    bool degenerate = false;  // regularity failed at this point
    double phi_norm = 0;
    double abs_psi = 0;
    double abs_psi_zbar = 0;
    double gauss = 0;
    std::vector<double> c;  // N - 1/8 (4K - 1) Y
    std::vector<double> Y;
};

struct ClassifyTolerances {
    double phi_tol = 1e-7;
    double isotropy_tol = 1e-6;
    double rank_tol = 1e-8;  // relative, for the fullness SVD
    double psi_tol = 1e-7;   // zero threshold for the psi trichotomy
};

enum class PsiKind { IdenticallyZero, IsolatedZeros, NonVanishing };

struct IsotropicResult {
    bool is_isotropic = false;
    std::vector<double> c;   // mean constant-vector candidate
    double dispersion = 0;   // max deviation of c_p from the mean
    double gauss_spread = 0;
};

struct ClassificationReport {
    Branch branch = Branch::Degenerate;
    int n = 0;
    double phi_max = 0;
    double psi_max = 0, psi_min = 0;
    double psi_holo_max = 0;
    PsiKind psi_kind = PsiKind::IdenticallyZero;
    std::vector<double> K_values;
    IsotropicResult isotropic;
    int essential_rank = 0;
    bool full = false;
    // set when vanishing form + nonvanishing psi + full: the theorem then
    // forces n = 3
    std::optional<bool> n3_consistent;
};

bool detect_vanishing_form(const std::vector<PointSample>& samples, double tol);
IsotropicResult isotropic_test(const std::vector<PointSample>& samples, double tol);
PsiKind psi_zero_test(const std::vector<PointSample>& samples, double tol);
int fullness_test(const std::vector<PointSample>& samples, double tol);

ClassificationReport classify(const std::vector<PointSample>& samples, int n,
                              const ClassifyTolerances& tol = {});

}  // namespace cq
