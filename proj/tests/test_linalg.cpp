#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cq/linalg.hpp"

using namespace cq;

TEST_CASE("inner product respects the signature") {
    Signature s{2, 1};
    SpaceVector<double> a = {1, 2, 3}, b = {4, 5, 6};
    CHECK(inner(a, b, s) == doctest::Approx(4 + 10 - 18));
    CHECK(s.sign(0) == 1.0);
    CHECK(s.sign(2) == -1.0);
    CHECK_THROWS_AS(inner(a, SpaceVector<double>{1, 2}, s), DimensionMismatch);
}

TEST_CASE("inner product is complex-bilinear, not hermitian") {
    Signature s{1, 1};
    using C = std::complex<double>;
    SpaceVector<C> a = {C(0, 1), C(0, 0)};
    CHECK(inner(a, a, s) == C(-1, 0));  // i*i, no conjugation
}

TEST_CASE("gram schmidt produces an orthonormal frame in signature (3,2)") {
    Signature s{3, 2};
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SpaceVector<double>> cand(5, SpaceVector<double>(5));
        for (auto& v : cand)
            for (auto& x : v) x = d(rng);
        auto frame = gram_schmidt_indefinite(cand, s, 1e-9);
        int plus = 0, minus = 0;
        for (size_t i = 0; i < frame.size(); ++i) {
            CHECK(inner(frame[i].vector, frame[i].vector, s) ==
                  doctest::Approx(frame[i].sign).epsilon(1e-9));
            (frame[i].sign > 0 ? plus : minus)++;
            for (size_t j = 0; j < i; ++j)
                CHECK(inner(frame[i].vector, frame[j].vector, s) ==
                      doctest::Approx(0.0).epsilon(1e-8));
        }
        if (frame.size() == 5) {
            // Sylvester: a full frame reproduces the signature
            CHECK(plus == 3);
            CHECK(minus == 2);
        }
    }
}

TEST_CASE("null candidates are never chosen as pivots") {
    Signature s{1, 1};
    std::vector<SpaceVector<double>> cand = {{1, 1}, {1, -1}};  // both null
    CHECK_THROWS_AS(gram_schmidt_indefinite(cand, s, 1e-9), DegenerateSpan);

    // a null vector plus a definite one: the definite one pivots first and
    // the null candidate keeps its non-degenerate complement
    cand = {{1, 1}, {2, 1}};
    auto frame = gram_schmidt_indefinite(cand, s, 1e-9);
    CHECK(frame.size() == 2);
    CHECK(frame[0].sign * frame[1].sign == -1);
}

TEST_CASE("max_vectors caps the frame size") {
    Signature s{2, 0};
    std::vector<SpaceVector<double>> cand = {{1, 0}, {0, 1}};
    auto frame = gram_schmidt_indefinite(cand, s, 1e-9, 1);
    CHECK(frame.size() == 1);
}

TEST_CASE("gram schmidt over the jet ring") {
    // jets with non-constant entries: orthonormality must hold as jets
    Signature s{2, 1};
    int order = 3;
    JetR u = JetR::variable(0, 0.3, order);
    JetR v = JetR::variable(1, -0.2, order);
    std::vector<SpaceVector<JetR>> cand = {
        {cosh(u), v, sinh(u)},
        {u * v, JetR::constant(1.0, order), u + v},
        {sinh(u), JetR::constant(0.5, order) * v, cosh(u)}};
    auto frame = gram_schmidt_indefinite(cand, s, 1e-9);
    REQUIRE(frame.size() == 3);
    for (size_t i = 0; i < frame.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            JetR ip = inner(frame[i].vector, frame[j].vector, s);
            double want = (i == j) ? double(frame[i].sign) : 0.0;
            for (int a = 0; a <= order; ++a)
                for (int b = 0; a + b <= order; ++b)
                    CHECK(ip.at(a, b) ==
                          doctest::Approx(a + b == 0 ? want : 0.0).epsilon(1e-9));
        }
}

TEST_CASE("rank of span with tolerance") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-1, 1);
    // six vectors spanning a 3-dimensional subspace of R^5, with noise
    std::vector<SpaceVector<double>> basis(3, SpaceVector<double>(5));
    for (auto& v : basis)
        for (auto& x : v) x = d(rng);
    std::vector<SpaceVector<double>> rows;
    for (int r = 0; r < 6; ++r) {
        SpaceVector<double> v(5, 0.0);
        for (int b = 0; b < 3; ++b) {
            double w = d(rng);
            for (int i = 0; i < 5; ++i) v[i] += w * basis[b][i];
        }
        for (auto& x : v) x += 1e-12 * d(rng);
        rows.push_back(v);
    }
    CHECK(rank_of_span(rows, 1e-8) == 3);
    CHECK(rank_of_span(rows, 1e-15) == 5);
    CHECK(rank_of_span({{0, 0, 0}}, 1e-8) == 0);
    CHECK_THROWS(rank_of_span({}, 1e-8));
}
