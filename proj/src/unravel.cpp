#include "ptspeed/unravel.hpp"

#include <cmath>
#include <string>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/operator_core.hpp"

namespace ptspeed {

namespace {

/* Everything the stepping loop needs, computed once per run. */
struct StepContext {
    ComplexMatrix drift;                 // I - i dt H_eff - (dt^2/2) H_eff^2
    std::vector<ComplexMatrix> jump_ops; // L_k
    std::vector<ComplexMatrix> rate_ops; // dt L_k^+ L_k
};

StepContext make_context(const LindbladModel& model, double dt) {
    validate_model(model);
    if (!(dt > 0.0)) {
        throw ConfigError("jump step: dt must be positive");
    }
    double max_rate = 0.0;
    ComplexMatrix damping = ComplexMatrix::Zero(model.n, model.n);
    StepContext ctx;
    for (const auto& l : model.lindblads) {
        const ComplexMatrix ll = l.adjoint() * l;
        max_rate = std::max(max_rate, hermitian_eig(ll).values.maxCoeff());
        damping += ll;
        ctx.jump_ops.push_back(l);
        ctx.rate_ops.push_back(dt * ll);
    }
    if (dt * max_rate > 0.1) {
        throw StepTooLargeError("jump step: dt * max|L^+L| = " + std::to_string(dt * max_rate) +
                                " exceeds the 0.1 first-order validity guard");
    }
    const ComplexMatrix h_eff = model.hamiltonian - 0.5 * kI * damping;
    const ComplexMatrix a = -kI * dt * h_eff;
    ctx.drift = ComplexMatrix::Identity(model.n, model.n) + a + 0.5 * a * a;
    return ctx;
}

void check_state(const LindbladModel& model, const ComplexVector& psi, const char* what) {
    if (psi.size() != model.n) {
        throw DimensionMismatchError(std::string(what) + ": state dimension " +
                                     std::to_string(psi.size()) + " does not match model n = " +
                                     std::to_string(model.n));
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw NotNormalizedError(std::string(what) + ": |psi| deviates from 1 by " +
                                 std::to_string(psi.norm() - 1.0));
    }
}

bool context_step(const StepContext& ctx, ComplexVector& psi, rng::Stream& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    const std::size_t n_channels = ctx.rate_ops.size();

    std::size_t selected = n_channels;  // n_channels = no jump
    std::vector<double> probs(n_channels);
    for (std::size_t k = 0; k < n_channels; ++k) {
        probs[k] = psi.dot(ctx.rate_ops[k] * psi).real();
        cumulative += probs[k];
        if (selected == n_channels && u < cumulative && probs[k] > 0.0) {
            selected = k;
        }
    }

    if (selected < n_channels) {
        ComplexVector jumped = ctx.jump_ops[selected] * psi;
        const double norm = jumped.norm();
        if (!(norm > 0.0)) {
            throw ZeroNormJumpError("jump step: selected channel annihilates the state");
        }
        psi = jumped / norm;
        return true;
    }
    // reaching here with u < cumulative is only possible when u landed on a
    // zero-width bin boundary; treating it as no jump preserves probabilities
    psi = ctx.drift * psi;
    psi /= psi.norm();
    return false;
}

std::size_t grid_steps(double t, double dt, const char* what) {
    if (!(t >= 0.0)) {
        throw ConfigError(std::string(what) + ": t must be non-negative");
    }
    const double raw = t / dt;
    const auto steps = static_cast<std::size_t>(std::llround(raw));
    if (std::abs(static_cast<double>(steps) * dt - t) > 1e-9 * std::max(1.0, t)) {
        throw ConfigError(std::string(what) + ": t = " + std::to_string(t) +
                          " is not a multiple of dt = " + std::to_string(dt));
    }
    return steps;
}

}  // namespace

JumpResult jump_step(const LindbladModel& model, const ComplexVector& psi, double dt,
                     rng::Stream& rng) {
    check_state(model, psi, "jump_step");
    const StepContext ctx = make_context(model, dt);
    JumpResult out{psi, false};
    out.jumped = context_step(ctx, out.state, rng);
    return out;
}

JumpTrajectory jump_trajectory(const LindbladModel& model, const ComplexVector& psi0, double t,
                               double dt, std::uint64_t seed, std::uint64_t stream_id) {
    check_state(model, psi0, "jump_trajectory");
    const StepContext ctx = make_context(model, dt);
    const std::size_t steps = grid_steps(t, dt, "jump_trajectory");

    rng::Stream stream(rng::substream_seed(seed, stream_id));
    JumpTrajectory traj;
    traj.rng_stream_id = stream_id;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    ComplexVector psi = psi0;
    traj.times.push_back(0.0);
    traj.states.push_back(psi);
    for (std::size_t k = 1; k <= steps; ++k) {
        const bool jumped = context_step(ctx, psi, stream);
        const double now = static_cast<double>(k) * dt;
        traj.times.push_back(now);
        traj.states.push_back(psi);
        if (jumped) traj.jump_times.push_back(now);
    }
    return traj;
}

EnsembleEstimate ensemble_mean(const LindbladModel& model, const ComplexVector& psi0, double t,
                               double dt, int n_traj, std::uint64_t seed) {
    check_state(model, psi0, "ensemble_mean");
    if (n_traj < 100) {
        throw ConfigError("ensemble_mean: n_traj must be at least 100");
    }
    const StepContext ctx = make_context(model, dt);
    const std::size_t steps = grid_steps(t, dt, "ensemble_mean");
    const OperatorBasis basis = make_basis(model.n);
    const int d = basis.dim();

    ComplexMatrix rho_sum = ComplexMatrix::Zero(model.n, model.n);
    RealVector comp_sum = RealVector::Zero(d);
    RealVector comp_sq_sum = RealVector::Zero(d);

    for (int traj = 0; traj < n_traj; ++traj) {
        rng::Stream stream(rng::substream_seed(seed, static_cast<std::uint64_t>(traj)));
        ComplexVector psi = psi0;
        for (std::size_t k = 0; k < steps; ++k) {
            (void)context_step(ctx, psi, stream);
        }
        rho_sum += psi * psi.adjoint();
        for (int i = 0; i < d; ++i) {
            const double r_i = psi.dot(basis.sigma[i + 1] * psi).real();
            comp_sum[i] += r_i;
            comp_sq_sum[i] += r_i * r_i;
        }
    }

    EnsembleEstimate out;
    out.n_traj = n_traj;
    out.seed = seed;
    out.mean_rho = rho_sum / static_cast<double>(n_traj);
    out.mean_rho = 0.5 * (out.mean_rho + out.mean_rho.adjoint());
    out.standard_error.resize(d);
    const double n = static_cast<double>(n_traj);
    for (int i = 0; i < d; ++i) {
        const double mean = comp_sum[i] / n;
        const double var = std::max(0.0, (comp_sq_sum[i] - n * mean * mean) / (n - 1.0));
        out.standard_error[i] = std::sqrt(var / n);
    }
    return out;
}

}  // namespace ptspeed
