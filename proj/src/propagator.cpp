#include "ptspeed/propagator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ptspeed/operator_core.hpp"

namespace ptspeed {

namespace {

RealMatrix augmented(const BlochGenerator& gen) {
    const Eigen::Index d = gen.lambda.rows();
    RealMatrix m = RealMatrix::Zero(d + 1, d + 1);
    m.topLeftCorner(d, d) = gen.lambda;
    m.topRightCorner(d, 1) = gen.b;
    return m;
}

void check_r0(const BlochGenerator& gen, const RealVector& r0, const char* what) {
    if (r0.size() != gen.lambda.rows()) {
        throw LengthMismatchError(std::string(what) + ": r0 has " + std::to_string(r0.size()) +
                                  " components, generator expects " +
                                  std::to_string(gen.lambda.rows()));
    }
}

}  // namespace

RealVector evolve_exact(const BlochGenerator& gen, const RealVector& r0, double t) {
    check_r0(gen, r0, "evolve_exact");
    if (!(t >= 0.0)) {
        throw ConfigError("evolve_exact: t must be non-negative");
    }
    const Eigen::Index d = gen.lambda.rows();
    const RealMatrix flow = real_expm(augmented(gen), t);
    return flow.topLeftCorner(d, d) * r0 + flow.topRightCorner(d, 1);
}

Trajectory evolve_exact_grid(const BlochGenerator& gen, const RealVector& r0, double t_max,
                             double dt) {
    check_r0(gen, r0, "evolve_exact_grid");
    if (!(dt > 0.0) || !(t_max >= 0.0)) {
        throw ConfigError("evolve_exact_grid: need dt > 0 and t_max >= 0");
    }
    const Eigen::Index d = gen.lambda.rows();
    const RealMatrix step = real_expm(augmented(gen), dt);
    const RealMatrix a = step.topLeftCorner(d, d);
    const RealVector c = step.topRightCorner(d, 1);

    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    Trajectory traj;
    traj.n = gen.n;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    RealVector r = r0;
    traj.times.push_back(0.0);
    traj.states.push_back(r);
    for (std::size_t k = 1; k <= steps; ++k) {
        r = a * r + c;
        traj.times.push_back(static_cast<double>(k) * dt);
        traj.states.push_back(r);
    }
    return traj;
}

Trajectory evolve_rk4(const BlochGenerator& gen, const RealVector& r0, double t_max, double dt) {
    check_r0(gen, r0, "evolve_rk4");
    if (!(dt > 0.0) || dt > t_max) {
        throw ConfigError("evolve_rk4: need 0 < dt <= t_max");
    }
    const double lam_norm = gen.lambda.cwiseAbs().rowwise().sum().maxCoeff();
    if (dt * lam_norm > 0.5) {
        throw StepTooLargeError("evolve_rk4: dt * |lambda| = " + std::to_string(dt * lam_norm) +
                                " exceeds the 0.5 stability guard");
    }

    const auto deriv = [&gen](const RealVector& r) -> RealVector { return gen.lambda * r + gen.b; };

    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    Trajectory traj;
    traj.n = gen.n;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    RealVector r = r0;
    traj.times.push_back(0.0);
    traj.states.push_back(r);
    for (std::size_t k = 1; k <= steps; ++k) {
        const RealVector k1 = deriv(r);
        const RealVector k2 = deriv(r + 0.5 * dt * k1);
        const RealVector k3 = deriv(r + 0.5 * dt * k2);
        const RealVector k4 = deriv(r + dt * k3);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.times.push_back(static_cast<double>(k) * dt);
        traj.states.push_back(r);
    }
    return traj;
}

RealVector evolve_exact(const LindbladModel& model, const OperatorBasis& basis,
                        const RealVector& r0, double t) {
    return evolve_exact(bloch_generator(model, basis), r0, t);
}

Trajectory evolve_rk4(const LindbladModel& model, const OperatorBasis& basis,
                      const RealVector& r0, double t_max, double dt) {
    return evolve_rk4(bloch_generator(model, basis), r0, t_max, dt);
}

double min_state_eigenvalue(const Trajectory& traj, const OperatorBasis& basis) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& r : traj.states) {
        const ComplexMatrix rho = reconstruct({traj.n, r}, basis);
        lo = std::min(lo, hermitian_eig(rho).values.minCoeff());
    }
    return lo;
}

}  // namespace ptspeed
