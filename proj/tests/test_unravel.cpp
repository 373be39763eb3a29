#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ptspeed/models.hpp"
#include "ptspeed/operator_core.hpp"
#include "ptspeed/propagator.hpp"
#include "ptspeed/unravel.hpp"
#include "test_helpers.hpp"

using namespace ptspeed;
using namespace testutil;

namespace {

ComplexVector up() {
    ComplexVector v = ComplexVector::Zero(2);
    v[0] = 1.0;
    return v;
}

ComplexVector plus_x_state() {
    ComplexVector v(2);
    v << 1.0, 1.0;
    return v / std::sqrt(2.0);
}

/* H = 0, L = sqrt(gamma) sigma_z: pure decoherence without drive */
LindbladModel bare_dephasing(double gamma) {
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = ComplexMatrix::Zero(2, 2);
    m.lindblads = {std::sqrt(gamma) * pauli_z()};
    return m;
}

/* The same Lindblad generator unravelled through projector channels
   L_1 = sqrt(2 gamma) |0><0|, L_2 = sqrt(2 gamma) |1><1|: pathwise these
   collapse onto the z-axis eigenstates with Born weights. */
LindbladModel projector_dephasing(double gamma) {
    LindbladModel m;
    m.n = 2;
    m.hamiltonian = ComplexMatrix::Zero(2, 2);
    ComplexMatrix p_up = ComplexMatrix::Zero(2, 2);
    p_up(0, 0) = 1.0;
    ComplexMatrix p_down = ComplexMatrix::Zero(2, 2);
    p_down(1, 1) = 1.0;
    m.lindblads = {std::sqrt(2.0 * gamma) * p_up, std::sqrt(2.0 * gamma) * p_down};
    return m;
}

RealVector bloch_of(const ComplexMatrix& rho, const OperatorBasis& basis) {
    return components(rho, basis);
}

}  // namespace

TEST_CASE("coherent-only model: no jumps, drift tracks the exact rotation") {
    LindbladModel model;
    model.n = 2;
    model.hamiltonian = 0.5 * pauli_x();

    const JumpTrajectory traj = jump_trajectory(model, up(), 1.0, 1e-3, 99, 0);
    CHECK(traj.jump_times.empty());
    REQUIRE(traj.states.size() == 1001);
    for (std::size_t k = 0; k < traj.states.size(); k += 100) {
        CHECK(std::abs(traj.states[k].norm() - 1.0) <= 1e-10);
    }
    // exact: e^{-iHt}|0> = cos(t/2)|0> - i sin(t/2)|1>
    const ComplexVector last = traj.states.back();
    CHECK(std::abs(last[0] - Complex(std::cos(0.5), 0.0)) <= 1e-6);
    CHECK(std::abs(last[1] - Complex(0.0, -std::sin(0.5))) <= 1e-6);
}

TEST_CASE("z-eigenstate is a fixed point of the dephasing unravelling") {
    const LindbladModel model = bare_dephasing(1.0);
    const JumpTrajectory traj = jump_trajectory(model, up(), 10.0, 5e-3, 321, 4);
    CHECK(!traj.jump_times.empty());  // expected jump count gamma*t = 10
    CHECK(traj.rng_stream_id == 4);
    for (const auto& psi : traj.states) {
        CHECK(std::abs(psi[0] - Complex(1.0, 0.0)) <= 1e-12);
        CHECK(std::abs(psi[1]) <= 1e-12);
    }
}

TEST_CASE("projector channels realize the same generator and obey the Born rule") {
    const double gamma = 1.0;
    const OperatorBasis basis = make_basis(2);

    // dual route: both Lindblad representations define the same Bloch flow
    const BlochGenerator a = bloch_generator(bare_dephasing(gamma), basis);
    const BlochGenerator b = bloch_generator(projector_dephasing(gamma), basis);
    CHECK(max_diff(a.lambda, b.lambda) <= 1e-12);
    CHECK(a.b.norm() <= 1e-12);
    CHECK(b.b.norm() <= 1e-12);

    // pathwise, the projector unravelling collapses |+x> onto |0> or |1>
    // with probability 1/2 each (expected unresolved fraction e^{-8})
    const LindbladModel model = projector_dephasing(gamma);
    const int n_runs = 10000;
    int up_count = 0, down_count = 0, unresolved = 0;
    for (int run = 0; run < n_runs; ++run) {
        const JumpTrajectory traj =
            jump_trajectory(model, plus_x_state(), 4.0, 5e-3, 2718, static_cast<std::uint64_t>(run));
        const double p_up = std::norm(traj.states.back()[0]);
        if (p_up > 0.999) {
            ++up_count;
        } else if (p_up < 0.001) {
            ++down_count;
        } else {
            ++unresolved;
        }
    }
    CHECK(unresolved <= 20);
    const double freq = static_cast<double>(up_count) / (up_count + down_count);
    const double sigma = 0.5 / std::sqrt(static_cast<double>(n_runs));
    CHECK(std::abs(freq - 0.5) <= 3.0 * sigma);
}

TEST_CASE("ensemble mean matches the deterministic flow within sampling error") {
    const LindbladModel model = pt_model({2.0, 1.0});
    const OperatorBasis basis = make_basis(2);
    const double t = 0.5, dt = 1e-3;

    const EnsembleEstimate est = ensemble_mean(model, up(), t, dt, 1000, 777);
    CHECK(est.n_traj == 1000);
    CHECK(est.seed == 777);

    // estimate invariants
    CHECK(hermiticity_defect(est.mean_rho) <= 1e-12);
    CHECK(std::abs(est.mean_rho.trace().real() - 1.0) <= 1e-10);
    CHECK(hermitian_eig(est.mean_rho).values.minCoeff() >= -1e-9);

    const RealVector exact = evolve_exact(model, basis, named_init("up_z"), t);
    const RealVector got = bloch_of(est.mean_rho, basis);
    for (int i = 0; i < 3; ++i) {
        CHECK(est.standard_error[i] >= 0.0);
        CHECK(std::abs(got[i] - exact[i]) <= 4.0 * est.standard_error[i] + 1e-3);
    }
}

TEST_CASE("dephasing conserves the population component pathwise") {
    // the drift is proportional to the identity and jumps only flip the
    // coherence sign, so tr(sigma_z rho_bar) is conserved exactly, not just
    // within sampling error
    const LindbladModel model = bare_dephasing(0.8);
    const OperatorBasis basis = make_basis(2);
    ComplexVector psi0(2);
    psi0 << std::cos(M_PI / 6.0), std::sin(M_PI / 6.0);

    const double expected = components(ComplexMatrix(psi0 * psi0.adjoint()), basis)[2];
    for (double t : {0.25, 0.5, 1.0}) {
        const EnsembleEstimate est = ensemble_mean(model, psi0, t, 2e-3, 300, 55);
        const double r_z = bloch_of(est.mean_rho, basis)[2];
        CHECK(std::abs(r_z - expected) <= std::max(3.0 * est.standard_error[2], 1e-12));
    }
}

TEST_CASE("ensemble estimates are bit-identical for identical configuration") {
    const LindbladModel model = pt_model({1.0, 0.5});
    const EnsembleEstimate a = ensemble_mean(model, plus_x_state(), 0.3, 1e-3, 150, 9001);
    const EnsembleEstimate b = ensemble_mean(model, plus_x_state(), 0.3, 1e-3, 150, 9001);
    CHECK(max_diff(a.mean_rho, b.mean_rho) == 0.0);
    CHECK((a.standard_error - b.standard_error).cwiseAbs().maxCoeff() == 0.0);

    const EnsembleEstimate c = ensemble_mean(model, plus_x_state(), 0.3, 1e-3, 150, 9002);
    CHECK(max_diff(a.mean_rho, c.mean_rho) > 0.0);
}

TEST_CASE("ensemble error shrinks like the square root of the trajectory count") {
    const LindbladModel model = pt_model({2.0, 1.0});
    const OperatorBasis basis = make_basis(2);
    const double t = 0.5, dt = 1e-3;
    const RealVector exact = evolve_exact(model, basis, named_init("up_z"), t);

    const std::vector<int> counts = {100, 1000, 10000};
    std::vector<double> mean_err;
    for (int n : counts) {
        double acc = 0.0;
        for (std::uint64_t rep = 0; rep < 4; ++rep) {
            const EnsembleEstimate est = ensemble_mean(model, up(), t, dt, n, 4242 + rep);
            acc += (bloch_of(est.mean_rho, basis) - exact).norm();
        }
        mean_err.push_back(acc / 4.0);
    }
    const double slope = (std::log(mean_err.back()) - std::log(mean_err.front())) /
                         (std::log(10000.0) - std::log(100.0));
    CHECK(slope < -0.4);
    CHECK(slope > -0.6);
}

TEST_CASE("unravelling guards") {
    const LindbladModel model = pt_model({2.0, 1.0});
    rng::Stream s(1);

    CHECK_THROWS_AS((void)jump_step(model, up(), 0.2, s), StepTooLargeError);
    CHECK_THROWS_AS((void)jump_step(model, up(), 0.0, s), ConfigError);
    CHECK_THROWS_AS((void)ensemble_mean(model, up(), 0.5, 1e-3, 50, 1), ConfigError);
    CHECK_THROWS_AS((void)ensemble_mean(model, up(), 0.5, 3e-3, 100, 1), ConfigError);

    ComplexVector long_state = ComplexVector::Zero(3);
    long_state[0] = 1.0;
    CHECK_THROWS_AS((void)jump_step(model, long_state, 1e-3, s), DimensionMismatchError);
    CHECK_THROWS_AS((void)jump_step(model, ComplexVector(2.0 * up()), 1e-3, s),
                    NotNormalizedError);

    // single public step: unit output, deterministic for a fixed stream
    rng::Stream s1(42), s2(42);
    const JumpResult r1 = jump_step(model, plus_x_state(), 1e-3, s1);
    const JumpResult r2 = jump_step(model, plus_x_state(), 1e-3, s2);
    CHECK(std::abs(r1.state.norm() - 1.0) <= 1e-10);
    CHECK(r1.jumped == r2.jumped);
    CHECK((r1.state - r2.state).cwiseAbs().maxCoeff() == 0.0);
}
