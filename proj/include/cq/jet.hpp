#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace cq {

struct JetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr int kMaxBinom = 24;

inline double binom(int n, int k) {
    static const auto table = [] {
        std::vector<double> t(kMaxBinom * kMaxBinom, 0.0);
        for (int i = 0; i < kMaxBinom; ++i) {
            t[i * kMaxBinom] = 1.0;
            for (int j = 1; j <= i; ++j)
                t[i * kMaxBinom + j] = t[(i - 1) * kMaxBinom + j - 1] +
                                       ((j < i) ? t[(i - 1) * kMaxBinom + j] : 0.0);
        }
        return t;
    }();
    return table[n * kMaxBinom + k];
}

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

}  // namespace detail

// Bivariate truncated Taylor expansion in (u, v). Coefficients store raw
// partial derivatives: at(i, j) == d^{i+j} f / du^i dv^j at the base point.
template <class S>
class Jet {
public:
    using Scalar = S;

    explicit Jet(int order) : order_(order), c_(coeff_count(order), S(0)) {
        if (order < 0) throw JetError("jet order must be >= 0");
    }

    static Jet constant(S value, int order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    // which: 0 for u, 1 for v
    static Jet variable(int which, double base, int order) {
        Jet j(order);
        j.c_[0] = S(base);
        if (order >= 1) j.at(which == 0 ? 1 : 0, which == 0 ? 0 : 1) = S(1);
        return j;
    }

    int order() const { return order_; }
    static int coeff_count(int order) { return (order + 1) * (order + 2) / 2; }

    S& at(int i, int j) { return c_[index(i, j)]; }
    const S& at(int i, int j) const { return c_[index(i, j)]; }

    // Stored partial derivative, with bounds checking (the "extract" surface).
    S deriv(int i, int j) const {
        if (i < 0 || j < 0 || i + j > order_)
            throw JetError("derivative index beyond jet order");
        return c_[index(i, j)];
    }

    S value() const { return c_[0]; }

    Jet truncated(int k) const {
        if (k >= order_) return *this;
        Jet r(k);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j) r.at(i, j) = at(i, j);
        return r;
    }

    Jet du() const {
        if (order_ < 1) throw JetError("cannot differentiate order-0 jet");
        Jet r(order_ - 1);
        for (int i = 0; i <= order_ - 1; ++i)
            for (int j = 0; i + j <= order_ - 1; ++j) r.at(i, j) = at(i + 1, j);
        return r;
    }

    Jet dv() const {
        if (order_ < 1) throw JetError("cannot differentiate order-0 jet");
        Jet r(order_ - 1);
        for (int i = 0; i <= order_ - 1; ++i)
            for (int j = 0; i + j <= order_ - 1; ++j) r.at(i, j) = at(i, j + 1);
        return r;
    }

    Jet operator-() const {
        Jet r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        return zip(a, b, [](S x, S y) { return x + y; });
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        return zip(a, b, [](S x, S y) { return x - y; });
    }

    // Leibniz rule on raw-derivative storage.
    friend Jet operator*(const Jet& a, const Jet& b) {
        int k = std::min(a.order_, b.order_);
        Jet r(k);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j) {
                S acc(0);
                for (int p = 0; p <= i; ++p)
                    for (int q = 0; q <= j; ++q)
                        acc += S(detail::binom(i, p) * detail::binom(j, q)) *
                               a.at(p, q) * b.at(i - p, j - q);
                r.at(i, j) = acc;
            }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

    friend Jet operator+(const Jet& a, S s) { Jet r(a); r.c_[0] += s; return r; }
    friend Jet operator+(S s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, S s) { Jet r(a); r.c_[0] -= s; return r; }
    friend Jet operator-(S s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(const Jet& a, S s) {
        Jet r(a);
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend Jet operator*(S s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, S s) { return a * (S(1) / s); }

    // Composition with a univariate analytic function given by the monomial
    // coefficients of its Taylor series at the jet's constant term.
    static Jet compose(const Jet& a, const std::vector<S>& series) {
        Jet d(a);
        d.c_[0] = S(0);
        Jet r = Jet::constant(series[a.order_], a.order_);
        for (int k = a.order_ - 1; k >= 0; --k) r = r * d + series[k];
        return r;
    }

    static Jet reciprocal(const Jet& a) {
        S a0 = a.value();
        if (std::abs(a0) == 0.0) throw JetError("division by jet with zero constant term");
        std::vector<S> s(a.order_ + 1);
        S p = S(1) / a0;
        for (int k = 0; k <= a.order_; ++k) {
            s[k] = p;
            p *= S(-1) / a0;
        }
        return compose(a, s);
    }

private:
    int order_;
    std::vector<S> c_;

    int index(int i, int j) const {
        // row-major in i, rows of shrinking length
        return i * (order_ + 1) - i * (i - 1) / 2 + j;
    }

    template <class F>
    static Jet zip(const Jet& a, const Jet& b, F f) {
        int k = std::min(a.order_, b.order_);
        Jet r(k);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j) r.at(i, j) = f(a.at(i, j), b.at(i, j));
        return r;
    }
};

using JetR = Jet<double>;
using JetC = Jet<std::complex<double>>;

template <class S>
void require_positive_base(const Jet<S>& a, const char* fn) {
    if constexpr (detail::is_complex<S>::value) {
        if (std::abs(a.value()) == 0.0) throw JetError(std::string(fn) + " of jet with zero constant term");
    } else {
        if (!(a.value() > 0)) throw JetError(std::string(fn) + " of jet with non-positive constant term");
    }
}

template <class S>
Jet<S> exp(const Jet<S>& a) {
    using std::exp;
    S e0 = exp(a.value());
    std::vector<S> s(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        s[k] = e0 / S(fact);
    }
    return Jet<S>::compose(a, s);
}

template <class S>
Jet<S> log(const Jet<S>& a) {
    using std::log;
    require_positive_base(a, "log");
    S a0 = a.value();
    std::vector<S> s(a.order() + 1);
    s[0] = log(a0);
    S p = S(1) / a0;
    for (int k = 1; k <= a.order(); ++k) {
        s[k] = p / S(double(k)) * S((k % 2) ? 1.0 : -1.0);
        p /= a0;
    }
    return Jet<S>::compose(a, s);
}

template <class S>
Jet<S> sqrt(const Jet<S>& a) {
    using std::sqrt;
    require_positive_base(a, "sqrt");
    S a0 = a.value();
    std::vector<S> s(a.order() + 1);
    s[0] = sqrt(a0);
    for (int k = 1; k <= a.order(); ++k)
        s[k] = s[k - 1] * S((1.5 - k) / double(k)) / a0;
    return Jet<S>::compose(a, s);
}

namespace detail {
// cycle: f, f', f'', f''' values at base for sin/cos/sinh/cosh
template <class S, class F0, class F1>
Jet<S> trig_like(const Jet<S>& a, F0 f, F1 fp, double sign2) {
    // derivatives cycle with period 4: f, f', sign2*f, sign2*f'
    S v0 = f(a.value()), v1 = fp(a.value());
    std::vector<S> s(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        S d;
        switch (k % 4) {
            case 0: d = v0; break;
            case 1: d = v1; break;
            case 2: d = S(sign2) * v0; break;
            default: d = S(sign2) * v1; break;
        }
        s[k] = d / S(fact);
    }
    return Jet<S>::compose(a, s);
}
}  // namespace detail

template <class S>
Jet<S> sin(const Jet<S>& a) {
    return detail::trig_like(a, [](S x) { using std::sin; return sin(x); },
                             [](S x) { using std::cos; return cos(x); }, -1.0);
}
template <class S>
Jet<S> cos(const Jet<S>& a) {
    return detail::trig_like(a, [](S x) { using std::cos; return cos(x); },
                             [](S x) { using std::sin; return -sin(x); }, -1.0);
}
template <class S>
Jet<S> sinh(const Jet<S>& a) {
    return detail::trig_like(a, [](S x) { using std::sinh; return sinh(x); },
                             [](S x) { using std::cosh; return cosh(x); }, 1.0);
}
template <class S>
Jet<S> cosh(const Jet<S>& a) {
    return detail::trig_like(a, [](S x) { using std::cosh; return cosh(x); },
                             [](S x) { using std::sinh; return sinh(x); }, 1.0);
}

template <class S>
Jet<S> pow(const Jet<S>& a, int n) {
    if (n < 0) return Jet<S>::reciprocal(pow(a, -n));
    Jet<S> r = Jet<S>::constant(S(1), a.order());
    Jet<S> b = a;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r = r * b;
        b = b * b;
    }
    return r;
}

inline JetC complexify(const JetR& a) {
    JetC r(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) r.at(i, j) = a.at(i, j);
    return r;
}

inline JetR real(const JetC& a) {
    JetR r(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) r.at(i, j) = a.at(i, j).real();
    return r;
}

inline JetR imag(const JetC& a) {
    JetR r(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) r.at(i, j) = a.at(i, j).imag();
    return r;
}

inline JetC conj(const JetC& a) {
    JetC r(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) r.at(i, j) = std::conj(a.at(i, j));
    return r;
}

// Wirtinger derivatives: d_z = (d_u - i d_v)/2, d_zbar = (d_u + i d_v)/2.
template <class S>
JetC wirtinger_z(const Jet<S>& a) {
    if (a.order() < 1) throw JetError("wirtinger derivative of order-0 jet");
    const std::complex<double> I(0, 1);
    JetC r(a.order() - 1);
    for (int i = 0; i <= a.order() - 1; ++i)
        for (int j = 0; i + j <= a.order() - 1; ++j)
            r.at(i, j) = 0.5 * (std::complex<double>(a.at(i + 1, j)) -
                                I * std::complex<double>(a.at(i, j + 1)));
    return r;
}

template <class S>
JetC wirtinger_zbar(const Jet<S>& a) {
    if (a.order() < 1) throw JetError("wirtinger derivative of order-0 jet");
    const std::complex<double> I(0, 1);
    JetC r(a.order() - 1);
    for (int i = 0; i <= a.order() - 1; ++i)
        for (int j = 0; i + j <= a.order() - 1; ++j)
            r.at(i, j) = 0.5 * (std::complex<double>(a.at(i + 1, j)) +
                                I * std::complex<double>(a.at(i, j + 1)));
    return r;
}

}  // namespace cq
