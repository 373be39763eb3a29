#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ptspeed/liouvillian.hpp"
#include "ptspeed/model_io.hpp"
#include "test_helpers.hpp"

using namespace ptspeed;
using testutil::close;

namespace {

/* H = (g/2) sigma_x, L = sqrt(c) sigma_z: oscillation about x competing with
   phase damping; the Bloch generator is built by hand in the tests so the
   library route has an independent reference */
LindbladModel gain_loss_model(double g, double c) {
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = 0.5 * g * testutil::pauli_x();
    m.lindblads = {std::sqrt(c) * testutil::pauli_z()};
    return m;
}

LindbladModel dephasing_model_local(double g, double c) {
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = 0.5 * g * testutil::pauli_z();
    m.lindblads = {std::sqrt(c) * testutil::pauli_z()};
    return m;
}

}  // namespace

TEST_CASE("apply_dissipator: Hermitian, trace-free, and zero on invariant states") {
    rng::Stream s(717);
    const LindbladModel m = gain_loss_model(1.0, 0.7);
    const ComplexMatrix rho = testutil::random_density(2, s);
    const ComplexMatrix d = apply_dissipator(m, rho);
    CHECK(hermiticity_defect(d) < 1e-12);
    CHECK(std::abs(d.trace()) < 1e-12);

    // sigma_z dephasing leaves diagonal states untouched
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 0.3;
    diag(1, 1) = 0.7;
    CHECK(max_abs(apply_dissipator(m, diag)) < 1e-15);
}

TEST_CASE("apply_liouvillian: trace-free and Hermitian on random models") {
    rng::Stream s(818);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(s.raw() % 3);
        LindbladModel m;
        m.n = n;
        m.hamiltonian = testutil::random_hermitian(n, s);
        m.lindblads = {testutil::random_complex(n, s), testutil::random_complex(n, s)};
        const ComplexMatrix rho = testutil::random_density(n, s);
        const ComplexMatrix v = apply_liouvillian(m, rho);
        CHECK(std::abs(v.trace()) < 1e-12);
        CHECK(hermiticity_defect(v) < 1e-12);
    }
}

TEST_CASE("bloch_generator: gain-loss model matches the hand-built matrix") {
    const double g = 1.3, c = 0.45;
    const OperatorBasis basis = make_basis(2);
    const BlochGenerator gen = bloch_generator(gain_loss_model(g, c), basis);

    RealMatrix expected(3, 3);
    expected << -2 * c, 0, 0, 0, -2 * c, -g, 0, g, 0;
    CHECK(testutil::max_diff(gen.lambda, expected) < 1e-12);
    CHECK(gen.b.cwiseAbs().maxCoeff() < 1e-14);

    // affine block layout: zero first row, sqrt(n) b first column
    CHECK(gen.full.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(testutil::max_diff(RealMatrix(gen.full.block(1, 1, 3, 3)), expected) < 1e-12);
}

TEST_CASE("bloch_generator: dephasing model matches the hand-built matrix") {
    const double g = 0.9, c = 1.1;
    const OperatorBasis basis = make_basis(2);
    const BlochGenerator gen = bloch_generator(dephasing_model_local(g, c), basis);

    RealMatrix expected(3, 3);
    expected << -2 * c, -g, 0, g, -2 * c, 0, 0, 0, 0;
    CHECK(testutil::max_diff(gen.lambda, expected) < 1e-12);
    CHECK(gen.b.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("bloch_generator: normal Lindblad operators give b = 0") {
    rng::Stream s(919);
    for (int n = 2; n <= 4; ++n) {
        const OperatorBasis basis = make_basis(n);
        LindbladModel m;
        m.n = n;
        m.hamiltonian = testutil::random_hermitian(n, s);
        m.lindblads = {testutil::random_hermitian(n, s)};  // Hermitian => normal
        CHECK(bloch_generator(m, basis).b.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("bloch_generator: decay channel drives toward the ground state") {
    // L = sqrt(c) |0><1| relaxes to |0><0|, whose Bloch image is (0,0,1/sqrt 2)
    const double c = 0.8;
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = ComplexMatrix::Zero(2, 2);
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
    lower(0, 1) = std::sqrt(c);
    m.lindblads = {lower};

    const OperatorBasis basis = make_basis(2);
    const BlochGenerator gen = bloch_generator(m, basis);
    CHECK(gen.b.cwiseAbs().maxCoeff() > 1e-3);  // non-normal channel shifts the fixed point

    RealVector fixed(3);
    fixed << 0, 0, 1.0 / std::sqrt(2.0);
    CHECK((gen.lambda * fixed + gen.b).cwiseAbs().maxCoeff() < 1e-12);

    // relaxation rates: transverse c/2 (twice), longitudinal c
    const Spectrum sp = spectrum(gen.lambda);
    CHECK(testutil::match_spectra({{-c / 2, 0}, {-c / 2, 0}, {-c, 0}},
                                  {sp.values[0], sp.values[1], sp.values[2]}) < 1e-12);
}

TEST_CASE("bloch_generator: agrees with the operator picture on random models") {
    rng::Stream s(1020);
    const int reps = 20;
    for (int trial = 0; trial < reps; ++trial) {
        const int n = 2 + static_cast<int>(s.raw() % 3);
        const OperatorBasis basis = make_basis(n);
        LindbladModel m;
        m.n = n;
        m.hamiltonian = testutil::random_hermitian(n, s);
        m.lindblads = {testutil::random_complex(n, s), testutil::random_complex(n, s)};
        const BlochGenerator gen = bloch_generator(m, basis);

        const ComplexMatrix rho = testutil::random_density(n, s);
        const BlochState state = embed(rho, basis);
        const RealVector from_matrix = gen.lambda * state.r + gen.b;
        const RealVector from_operator = components(apply_liouvillian(m, rho), basis);
        CHECK((from_matrix - from_operator).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("bloch_generator: full superoperator carries the zero mode") {
    rng::Stream s(1121);
    LindbladModel m;
    m.n = 3;
    m.hamiltonian = testutil::random_hermitian(3, s);
    m.lindblads = {testutil::random_complex(3, s)};
    const BlochGenerator gen = bloch_generator(m, make_basis(3));
    const Spectrum sp = spectrum(gen.full);

    double closest_to_zero = 1e300;
    for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
        closest_to_zero = std::min(closest_to_zero, std::abs(sp.values[i]));
    }
    CHECK(closest_to_zero < 1e-12);
}

TEST_CASE("classify_phase: oscillatory, exceptional and overdamped regimes") {
    {
        const PhaseClassification c = classify_phase(gain_loss_model(2.0, 1.0));
        CHECK(c.label == PhaseLabel::Unbroken);
        CHECK(c.max_imag > 1e-9);
        CHECK(!c.unitary_dynamics);
        // eigenvalues {0, -2, -1 +- i sqrt(3)}
        const double rt = std::sqrt(3.0);
        CHECK(testutil::match_spectra({{0, 0}, {-2, 0}, {-1, rt}, {-1, -rt}},
                                      {c.eigenvalues[0], c.eigenvalues[1], c.eigenvalues[2],
                                       c.eigenvalues[3]}) < 1e-9);
    }
    {
        const PhaseClassification c = classify_phase(gain_loss_model(1.0, 1.0));
        CHECK(c.label == PhaseLabel::ExceptionalPoint);
        CHECK((c.coalescence_gap <= 1e-7 || c.vector_condition > 1e8));
    }
    {
        const PhaseClassification c = classify_phase(gain_loss_model(1.0, 2.0));
        CHECK(c.label == PhaseLabel::Broken);
        CHECK(c.max_imag <= 1e-9);
        CHECK(c.coalescence_gap > 1e-7);
        const double rt = std::sqrt(3.0);
        CHECK(testutil::match_spectra({{0, 0}, {-4, 0}, {-2 + rt, 0}, {-2 - rt, 0}},
                                      {c.eigenvalues[0], c.eigenvalues[1], c.eigenvalues[2],
                                       c.eigenvalues[3]}) < 1e-9);
    }
}

TEST_CASE("classify_phase: vanishing dissipation is flagged as unitary") {
    const PhaseClassification c = classify_phase(gain_loss_model(1.0, 0.0));
    CHECK(c.label == PhaseLabel::Unbroken);  // pure imaginary pair +- i g
    CHECK(c.unitary_dynamics);
}

TEST_CASE("model JSON: round trip") {
    const LindbladModel m = gain_loss_model(1.7, 0.3);
    const std::string text = serialize_model(m);
    const LindbladModel back = parse_model(text);
    CHECK(back.n == 2);
    CHECK(testutil::max_diff(back.hamiltonian, m.hamiltonian) < 1e-16);
    REQUIRE(back.lindblads.size() == 1);
    CHECK(testutil::max_diff(back.lindblads[0], m.lindblads[0]) < 1e-16);

    const std::string path = "model_roundtrip_test.json";
    save_model(m, path);
    const LindbladModel from_disk = load_model(path);
    CHECK(testutil::max_diff(from_disk.hamiltonian, m.hamiltonian) < 1e-16);
    std::remove(path.c_str());
}

TEST_CASE("model JSON: malformed inputs are rejected with context") {
    CHECK_THROWS_AS(parse_model("not json"), ModelFormatError);
    CHECK_THROWS_AS(parse_model(R"({"n": 2, "H": []})"), ModelFormatError);
    CHECK_THROWS_AS(parse_model(R"({"n": 2, "H": [[[0,0],[0,0]],[[0,0],[0,0]]], "L": "x"})"),
                    ModelFormatError);
    // H with a non-Hermitian entry
    CHECK_THROWS_AS(
        parse_model(
            R"({"n": 2, "H": [[[0,0],[1,0]],[[0,0],[0,0]]], "L": []})"),
        NotHermitianError);
    // row of the wrong length
    CHECK_THROWS_AS(parse_model(R"({"n": 2, "H": [[[0,0]],[[0,0],[0,0]]], "L": []})"),
                    ModelFormatError);
}

TEST_CASE("validate_model: dimension mismatches are rejected") {
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = ComplexMatrix::Zero(3, 3);
    CHECK_THROWS_AS(validate_model(m), DimensionMismatchError);

    m.hamiltonian = ComplexMatrix::Zero(2, 2);
    m.lindblads = {ComplexMatrix::Zero(3, 3)};
    CHECK_THROWS_AS(validate_model(m), DimensionMismatchError);
}
