#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ptspeed/operator_core.hpp"
#include "test_helpers.hpp"

using namespace ptspeed;
using testutil::close;
using testutil::match_spectra;

TEST_CASE("hermitian_sqrt: diagonal case") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 0.25;
    rho(1, 1) = 0.75;
    const ComplexMatrix s = hermitian_sqrt(rho);
    CHECK(close(s(0, 0).real(), 0.5, 1e-15));
    CHECK(close(s(1, 1).real(), std::sqrt(0.75), 1e-15));
    CHECK(std::abs(s(0, 1)) < 1e-15);
}

TEST_CASE("hermitian_sqrt: random PSD reconstructs") {
    rng::Stream s(101);
    for (int n = 2; n <= 8; ++n) {
        const ComplexMatrix rho = testutil::random_density(n, s);
        const ComplexMatrix xi = hermitian_sqrt(rho);
        CHECK(hermiticity_defect(xi) < 1e-14);
        CHECK(testutil::max_diff(ComplexMatrix(xi * xi), rho) < 1e-12 * std::max(1.0, max_abs(rho)));
    }
}

TEST_CASE("hermitian_sqrt: clamp window and rejection") {
    ComplexMatrix nearly = ComplexMatrix::Zero(2, 2);
    nearly(0, 0) = 1.0;
    nearly(1, 1) = -5e-11;  // inside the clamp window
    const ComplexMatrix s = hermitian_sqrt(nearly);
    CHECK(std::abs(s(1, 1)) == 0.0);

    // the window is two-sided: sub-threshold positives are exact zeros too
    nearly(1, 1) = 5e-11;
    CHECK(std::abs(hermitian_sqrt(nearly)(1, 1)) == 0.0);

    // a pure projector built from a generic ray has an exactly rank-one root
    ComplexVector phi(2);
    phi << Complex(0.6, 0.3), Complex(-0.2, 0.7);
    phi /= phi.norm();
    const ComplexMatrix proj = phi * phi.adjoint();
    CHECK(testutil::max_diff(hermitian_sqrt(proj), proj) <= 1e-14);

    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.0;
    bad(1, 1) = -1e-3;
    CHECK_THROWS_AS(hermitian_sqrt(bad), NotPositiveError);

    ComplexMatrix nonherm = ComplexMatrix::Zero(2, 2);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_sqrt(nonherm), NotHermitianError);
}

TEST_CASE("real_expm: identity and diagonal") {
    CHECK(testutil::max_diff(real_expm(RealMatrix::Zero(3, 3), 1.0), RealMatrix::Identity(3, 3)) <
          1e-15);

    RealMatrix d = RealMatrix::Zero(2, 2);
    d(0, 0) = -1.5;
    d(1, 1) = 0.25;
    const RealMatrix e = real_expm(d, 2.0);
    CHECK(close(e(0, 0), std::exp(-3.0), 1e-14 * std::exp(-3.0) + 1e-16));
    CHECK(close(e(1, 1), std::exp(0.5), 1e-14 * std::exp(0.5)));
    CHECK(std::abs(e(0, 1)) < 1e-16);
}

TEST_CASE("real_expm: rotation generator, including norm 100") {
    RealMatrix j(2, 2);
    j << 0, -1, 1, 0;
    for (const double theta : {0.3, 2.0, 10.0, 100.0}) {
        const RealMatrix r = real_expm(j, theta);
        CHECK(close(r(0, 0), std::cos(theta), 1e-12));
        CHECK(close(r(1, 0), std::sin(theta), 1e-12));
        // exact rotations are orthogonal
        CHECK(testutil::max_diff(RealMatrix(r * r.transpose()), RealMatrix::Identity(2, 2)) <
              1e-12);
    }
}

TEST_CASE("real_expm: defective (Jordan) generator") {
    const double lam = -0.7;
    RealMatrix jb(2, 2);
    jb << lam, 1, 0, lam;
    const double t = 3.5;
    const RealMatrix e = real_expm(jb, t);
    const double elt = std::exp(lam * t);
    CHECK(close(e(0, 0), elt, 1e-13));
    CHECK(close(e(0, 1), t * elt, 1e-13));
    CHECK(std::abs(e(1, 0)) < 1e-16);
}

TEST_CASE("real_expm: semigroup property on random matrices") {
    rng::Stream s(202);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(s.raw() % 7);
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) m(i, k) = s.gaussian();
        const RealMatrix whole = real_expm(m, 1.0);
        const RealMatrix split = real_expm(m, 0.7) * real_expm(m, 0.3);
        CHECK(testutil::max_diff(whole, split) < 1e-12 * std::max(1.0, max_abs(whole)));
    }
}

TEST_CASE("real_expm: damped rotation block in closed form") {
    // generator [[-2c, -g, 0], [g, -2c, 0], [0, 0, 0]] integrates to
    // exp(-2ct) * R(gt) on the upper block and 1 on the lower corner
    const double g = 1.3, c = 0.4, t = 2.25;
    RealMatrix m = RealMatrix::Zero(3, 3);
    m(0, 0) = -2 * c;
    m(0, 1) = -g;
    m(1, 0) = g;
    m(1, 1) = -2 * c;
    const RealMatrix e = real_expm(m, t);
    const double damp = std::exp(-2 * c * t);
    CHECK(close(e(0, 0), damp * std::cos(g * t), 1e-13));
    CHECK(close(e(1, 0), damp * std::sin(g * t), 1e-13));
    CHECK(close(e(2, 2), 1.0, 1e-14));
    CHECK(std::abs(e(2, 0)) < 1e-16);
}

TEST_CASE("real_expm: overflow is reported") {
    RealMatrix m(1, 1);
    m(0, 0) = 1000.0;
    CHECK_THROWS_AS(real_expm(m, 1000.0), OverflowError);
}

TEST_CASE("spectrum: closed-form eigenvalues of damped precession blocks") {
    // A = [[-2c, 0, 0], [0, -2c, -g], [0, g, 0]]; the lower 2x2 block has
    // characteristic polynomial x^2 + 2c x + g^2
    auto block = [](double g, double c) {
        RealMatrix a = RealMatrix::Zero(3, 3);
        a(0, 0) = -2 * c;
        a(1, 1) = -2 * c;
        a(1, 2) = -g;
        a(2, 1) = g;
        return a;
    };

    {
        // c > g: roots -c +- sqrt(c^2 - g^2), all real
        const Spectrum sp = spectrum(block(1.0, 2.0));
        const double rt = std::sqrt(3.0);
        const double worst = match_spectra({{-4.0, 0.0}, {-2.0 + rt, 0.0}, {-2.0 - rt, 0.0}},
                                           {sp.values[0], sp.values[1], sp.values[2]});
        CHECK(worst < 1e-12);
    }
    {
        // g > c: complex pair -c +- i sqrt(g^2 - c^2)
        const Spectrum sp = spectrum(block(2.0, 1.0));
        const double rt = std::sqrt(3.0);
        const double worst = match_spectra({{-2.0, 0.0}, {-1.0, rt}, {-1.0, -rt}},
                                           {sp.values[0], sp.values[1], sp.values[2]});
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("spectrum: conjugation closure and trace identity") {
    rng::Stream s(303);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(s.raw() % 8);
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) m(i, k) = 2.0 * s.gaussian();
        const Spectrum sp = spectrum(m);

        std::vector<std::complex<double>> vals(sp.values.data(), sp.values.data() + n);
        std::vector<std::complex<double>> conj_vals;
        conj_vals.reserve(vals.size());
        for (const auto& v : vals) conj_vals.push_back(std::conj(v));
        CHECK(match_spectra(conj_vals, vals) < 1e-9);

        std::complex<double> sum = 0.0;
        for (const auto& v : vals) sum += v;
        CHECK(std::abs(sum - std::complex<double>(m.trace(), 0.0)) <
              1e-9 * std::max(1.0, std::abs(m.trace())));
    }
}

TEST_CASE("spectrum: eigenvector condition flags defectiveness") {
    RealMatrix normal(2, 2);
    normal << 0, -3, 3, 0;
    CHECK(spectrum(normal).vector_condition < 1e2);

    RealMatrix jordan(2, 2);
    jordan << 0, 1, 0, 0;
    CHECK(spectrum(jordan).vector_condition > 1e8);
}

TEST_CASE("spectrum: symmetric matrices agree with the self-adjoint route") {
    rng::Stream s(404);
    RealMatrix m(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) m(i, k) = s.gaussian();
    const RealMatrix sym = 0.5 * (m + m.transpose());

    const Spectrum sp = spectrum(sym);
    Eigen::SelfAdjointEigenSolver<RealMatrix> sa(sym);
    std::vector<std::complex<double>> expected;
    for (int i = 0; i < 5; ++i) expected.emplace_back(sa.eigenvalues()[i], 0.0);
    std::vector<std::complex<double>> got(sp.values.data(), sp.values.data() + 5);
    CHECK(match_spectra(expected, got) < 1e-10);
    CHECK(sp.vector_condition < 1e3);
}

TEST_CASE("spectrum: dimension guard") {
    CHECK_THROWS_AS(spectrum(RealMatrix::Zero(65, 65)), DimensionOutOfRangeError);
}

TEST_CASE("complex_eigenvalues: non-Hermitian 2x2 with real spectrum") {
    // [[i, 2], [2, -i]] has eigenvalues +- sqrt(3)
    ComplexMatrix f(2, 2);
    f << Complex(0, 1), Complex(2, 0), Complex(2, 0), Complex(0, -1);
    const ComplexVector v = complex_eigenvalues(f);
    const double rt = std::sqrt(3.0);
    CHECK(match_spectra({{rt, 0.0}, {-rt, 0.0}}, {v[0], v[1]}) < 1e-12);
}
