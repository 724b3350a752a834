#include <cmath>
#include <cstring>
#include <set>

#include "doctest.h"
#include "lstmcs/errors.hpp"
#include "lstmcs/linalg.hpp"
#include "lstmcs/rng.hpp"
#include "lstmcs/signal.hpp"

using namespace lstmcs;

TEST_SUITE_BEGIN("signal");

TEST_CASE("measurement ensemble columns are unit norm") {
    auto e = gen_measurement_ensemble(36, 144, 7);
    for (std::size_t j = 0; j < 144; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 36; ++i) s += e.a(i, j) * e.a(i, j);
        CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-12);
    }
}

TEST_CASE("measurement ensemble trivial dims and validation") {
    auto e = gen_measurement_ensemble(1, 1, 3);
    CHECK(std::abs(std::abs(e.a(0, 0)) - 1.0) <= 1e-15);
    CHECK_THROWS_AS(gen_measurement_ensemble(5, 4, 0), ConfigError);
    CHECK_THROWS_AS(gen_measurement_ensemble(0, 4, 0), ConfigError);
}

TEST_CASE("generators are bit-identical under a fixed seed") {
    auto e1 = gen_measurement_ensemble(12, 24, 99);
    auto e2 = gen_measurement_ensemble(12, 24, 99);
    CHECK(std::memcmp(e1.a.data(), e2.a.data(), e1.a.size() * sizeof(double)) == 0);
    auto s1 = gen_sparse_ensemble(24, 3, 4, SparsityPattern::independent, AmplitudeLaw::uniform_signed, 5);
    auto s2 = gen_sparse_ensemble(24, 3, 4, SparsityPattern::independent, AmplitudeLaw::uniform_signed, 5);
    CHECK(std::memcmp(s1.s.data(), s2.s.data(), s1.s.size() * sizeof(double)) == 0);
    auto e3 = gen_measurement_ensemble(12, 24, 100);
    CHECK(std::memcmp(e1.a.data(), e3.a.data(), e1.a.size() * sizeof(double)) != 0);
}

TEST_CASE("sparse ensemble structure") {
    auto z = gen_sparse_ensemble(16, 2, 0, SparsityPattern::joint, AmplitudeLaw::uniform_signed, 1);
    CHECK(z.s.frobenius_norm() == 0.0);

    auto joint = gen_sparse_ensemble(20, 4, 3, SparsityPattern::joint, AmplitudeLaw::uniform_signed, 8);
    std::set<std::size_t> ref;
    for (std::size_t i = 0; i < 20; ++i)
        if (joint.s(i, 0) != 0.0) ref.insert(i);
    CHECK(ref.size() == 3);
    for (std::size_t j = 1; j < 4; ++j) {
        std::set<std::size_t> sup;
        for (std::size_t i = 0; i < 20; ++i)
            if (joint.s(i, j) != 0.0) sup.insert(i);
        CHECK(sup == ref);
    }
    for (std::size_t i = 0; i < joint.s.size(); ++i) {
        const double v = std::abs(joint.s.data()[i]);
        if (v != 0.0) {
            CHECK(v >= 0.5);
            CHECK(v <= 1.5);
        }
    }
    CHECK_THROWS_AS(gen_sparse_ensemble(4, 1, 5, SparsityPattern::joint, AmplitudeLaw::uniform_signed, 1),
                    ConfigError);
}

TEST_CASE("independent supports hit the hypergeometric overlap rate") {
    // overlap of two 5-of-100 draws: mean 0.25, var ~0.2279; 1e4 trials
    const int trials = 10000;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        auto e = gen_sparse_ensemble(100, 2, 5, SparsityPattern::independent, AmplitudeLaw::gaussian,
                                     derive_seed(123, t));
        int overlap = 0;
        for (std::size_t i = 0; i < 100; ++i)
            if (e.s(i, 0) != 0.0 && e.s(i, 1) != 0.0) ++overlap;
        total += overlap;
    }
    const double mean = total / trials;
    const double band = 3.0 * std::sqrt(0.2279 / trials);
    CHECK(std::abs(mean - 0.25) <= band);
}

TEST_CASE("measure: noiseless path is exact") {
    auto a = gen_measurement_ensemble(8, 16, 2);
    auto s = gen_sparse_ensemble(16, 3, 2, SparsityPattern::joint, AmplitudeLaw::uniform_signed, 3);
    Matrix y = measure(a, s.s, {0.0, 77});
    Matrix ref = matmul(a.a, s.s);
    CHECK(std::memcmp(y.data(), ref.data(), y.size() * sizeof(double)) == 0);

    Matrix zero(16, 3);
    Matrix yz = measure(a, zero, {0.0, 0});
    CHECK(yz.frobenius_norm() == 0.0);

    CHECK_THROWS_AS(measure(a, Matrix(15, 3), {0.0, 0}), ShapeError);
}

TEST_CASE("measure: empirical noise level matches sigma") {
    auto a = gen_measurement_ensemble(10, 10, 4);
    Matrix s(10, 10000);
    Matrix clean = matmul(a.a, s);
    Matrix noisy = measure(a, s, {0.005, 55});
    double sq = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        const double d = noisy.data()[i] - clean.data()[i];
        sq += d * d;
    }
    const double sigma_hat = std::sqrt(sq / static_cast<double>(noisy.size()));
    CHECK(sigma_hat >= 0.0049);
    CHECK(sigma_hat <= 0.0051);
}

TEST_CASE("nmse identities") {
    Matrix s(3, 2);
    s(0, 0) = 1.0; s(2, 1) = -2.0;
    CHECK(nmse(s, s) == 0.0);
    Matrix z(3, 2);
    CHECK(nmse(s, z) == doctest::Approx(1.0).epsilon(1e-15));
    Matrix twice = s;
    for (std::size_t i = 0; i < twice.size(); ++i) twice.data()[i] *= 2.0;
    CHECK(nmse(s, twice) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(nmse(z, s), DomainError);
    CHECK_THROWS_AS(nmse(s, Matrix(2, 2)), ShapeError);
}

TEST_CASE("nmse scale identity against perturbation norm") {
    Rng rng(31);
    Matrix s(6, 4), e(6, 4);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s.data()[i] = rng.gaussian();
        e.data()[i] = 0.1 * rng.gaussian();
    }
    Matrix sh = s;
    for (std::size_t i = 0; i < s.size(); ++i) sh.data()[i] += e.data()[i];
    CHECK(nmse(s, sh) == doctest::Approx(e.frobenius_norm() / s.frobenius_norm()).epsilon(1e-13));
}

TEST_CASE("snr identities and domain") {
    CHECK(snr_of(1.0, 1.0) == doctest::Approx(0.0));
    CHECK(snr_of(0.1, 1.0) == doctest::Approx(20.0).epsilon(1e-13));
    CHECK_THROWS_AS(snr_of(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(snr_of(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(snr_of(0.1, 0.0), DomainError);
}

TEST_CASE("sigma 0.005 sits near 46 dB for unit-power measurements") {
    // k unit-magnitude non-zeros against unit-norm columns gives Y entries
    // with mean square near k/m; pick k/m so the per-entry power is ~1
    auto a = gen_measurement_ensemble(12, 48, 9);
    Matrix s(48, 2000);
    Rng rng(10);
    for (std::size_t j = 0; j < s.cols(); ++j)
        for (int t = 0; t < 12; ++t) {
            const auto idx = static_cast<std::size_t>(rng.uniform_index(48));
            s(idx, j) = rng.gaussian();
        }
    Matrix y = measure(a, s, {0.0, 0});
    const double snr = snr_of(0.005, mean_square(y));
    CHECK(snr >= 40.0);
    CHECK(snr <= 50.0);
}

TEST_SUITE_END();
