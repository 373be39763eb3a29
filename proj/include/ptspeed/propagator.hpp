#pragma once

#include <vector>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/liouvillian.hpp"

namespace ptspeed {

struct Trajectory {
    int n = 0;
    std::vector<double> times;      // strictly increasing
    std::vector<RealVector> states; // Bloch vectors, one per time
};

/* Exact state at time t (t >= 0): the affine flow exp([[lambda, b],[0, 0]] t)
   applied to (r0, 1).  This is the primary propagation path. */
RealVector evolve_exact(const BlochGenerator& gen, const RealVector& r0, double t);

/* Exact trajectory on the uniform grid k*dt, k = 0..floor(t_max/dt), using a
   single per-step exponential (semigroup stepping). */
Trajectory evolve_exact_grid(const BlochGenerator& gen, const RealVector& r0, double t_max,
                             double dt);

/* Classical fixed-step RK4 on dr/dt = lambda r + b, sampled every step.
   Kept free of any real_expm machinery so it can serve as an independent
   cross-check of the exact path.  Requires 0 < dt <= t_max and
   dt * |lambda| <= 0.5 (infinity norm), else StepTooLargeError. */
Trajectory evolve_rk4(const BlochGenerator& gen, const RealVector& r0, double t_max, double dt);

/* Convenience overloads that assemble the generator internally. */
RealVector evolve_exact(const LindbladModel& model, const OperatorBasis& basis,
                        const RealVector& r0, double t);
Trajectory evolve_rk4(const LindbladModel& model, const OperatorBasis& basis,
                      const RealVector& r0, double t_max, double dt);

/* Diagnostic: smallest eigenvalue of the reconstructed state over the whole
   trajectory (physical trajectories stay >= -1e-9). */
double min_state_eigenvalue(const Trajectory& traj, const OperatorBasis& basis);

}  // namespace ptspeed
