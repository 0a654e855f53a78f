#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cq/jet.hpp"

namespace cq {

// Sign pattern of a pseudo-Euclidean inner product: the first `plus` slots
// carry +1, the trailing `minus` slots carry -1.
struct Signature {
    int plus = 0;
    int minus = 0;
    int dim() const { return plus + minus; }
    double sign(int i) const { return i < plus ? 1.0 : -1.0; }
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateSpan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class S>
using SpaceVector = std::vector<S>;

// ring helpers so the same code runs over numbers and jets
inline double zero_like(double) { return 0.0; }
inline std::complex<double> zero_like(const std::complex<double>&) { return {0.0, 0.0}; }
template <class S>
Jet<S> zero_like(const Jet<S>& j) {
    return Jet<S>(j.order());
}

inline double scale(double x, double a) { return x * a; }
inline std::complex<double> scale(const std::complex<double>& x, double a) { return x * a; }
template <class S>
Jet<S> scale(const Jet<S>& x, double a) {
    return x * S(a);
}

inline std::complex<double> constant_of(double x) { return {x, 0.0}; }
inline std::complex<double> constant_of(const std::complex<double>& x) { return x; }
template <class S>
std::complex<double> constant_of(const Jet<S>& j) {
    return std::complex<double>(j.value());
}

template <class S>
double abs_constant(const S& x) {
    return std::abs(constant_of(x));
}

inline double ring_sqrt(double x) { return std::sqrt(x); }
template <class S>
Jet<S> ring_sqrt(const Jet<S>& x) {
    return sqrt(x);
}

// Complex-bilinear (not Hermitian) indefinite inner product.
template <class S>
S inner(const SpaceVector<S>& u, const SpaceVector<S>& v, const Signature& s) {
    if ((int)u.size() != s.dim() || (int)v.size() != s.dim())
        throw DimensionMismatch("inner: vector length does not match signature dimension");
    S acc = zero_like(u[0]);
    for (int i = 0; i < s.plus; ++i) acc = acc + u[i] * v[i];
    for (int i = s.plus; i < s.dim(); ++i) acc = acc - u[i] * v[i];
    return acc;
}

template <class S>
struct FrameVector {
    SpaceVector<S> vector;
    int sign;  // <E,E> = sign, +1 or -1
};

// Gram-Schmidt in indefinite signature. Pivots on the candidate whose
// projected self-inner-product has the largest absolute constant term, so
// null vectors are never chosen as pivots. Candidates whose projected norm
// falls below tol are dropped: they lie in the accumulated span, or the
// remaining span is degenerate.
template <class S>
std::vector<FrameVector<S>> gram_schmidt_indefinite(const std::vector<SpaceVector<S>>& candidates,
                                                    const Signature& sig, double tol,
                                                    int max_vectors = -1) {
    if (max_vectors < 0) max_vectors = (int)candidates.size();
    std::vector<FrameVector<S>> frame;
    std::vector<bool> used(candidates.size(), false);

    while ((int)frame.size() < max_vectors) {
        int best = -1;
        double best_abs = tol;
        std::optional<SpaceVector<S>> best_proj;
        std::optional<S> best_nu;
        for (size_t c = 0; c < candidates.size(); ++c) {
            if (used[c]) continue;
            SpaceVector<S> w = candidates[c];
            for (const auto& e : frame) {
                S coef = scale(inner(w, e.vector, sig), double(e.sign));
                for (size_t i = 0; i < w.size(); ++i) w[i] = w[i] - coef * e.vector[i];
            }
            S nu = inner(w, w, sig);
            if (abs_constant(nu) > best_abs) {
                best = (int)c;
                best_abs = abs_constant(nu);
                best_proj = std::move(w);
                best_nu = std::move(nu);
            }
        }
        if (best < 0) break;  // all remaining projected norms below tol
        used[best] = true;
        double sgn = constant_of(*best_nu).real() > 0 ? 1.0 : -1.0;
        S norm = ring_sqrt(scale(*best_nu, sgn));
        SpaceVector<S> e = *best_proj;
        for (auto& x : e) x = x / norm;
        frame.push_back({std::move(e), (int)sgn});
    }
    if (frame.empty()) throw DegenerateSpan("gram_schmidt_indefinite: degenerate span");
    return frame;
}

// Numerical rank of the row span; singular values below tol * sigma_max
// count as zero.
inline int rank_of_span(const std::vector<SpaceVector<double>>& vectors, double tol) {
    if (vectors.empty()) throw std::invalid_argument("rank_of_span: empty input");
    const int cols = (int)vectors[0].size();
    Eigen::MatrixXd m((int)vectors.size(), cols);
    for (int r = 0; r < (int)vectors.size(); ++r) {
        if ((int)vectors[r].size() != cols)
            throw DimensionMismatch("rank_of_span: ragged input");
        for (int c = 0; c < cols; ++c) m(r, c) = vectors[r][c];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

}  // namespace cq
