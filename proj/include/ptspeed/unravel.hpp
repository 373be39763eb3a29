#pragma once

#include <cstdint>
#include <vector>

#include "ptspeed/liouvillian.hpp"
#include "ptspeed/rng.hpp"

namespace ptspeed {

/* One stochastic pure-state trajectory sampled on a uniform grid. */
struct JumpTrajectory {
    std::vector<double> times;         // increasing
    std::vector<ComplexVector> states; // unit vectors, one per time
    std::vector<double> jump_times;    // subset of times at which a jump fired
    std::uint64_t rng_stream_id = 0;
};

/* Ensemble statistics of the random pure-state projector at a fixed time. */
struct EnsembleEstimate {
    ComplexMatrix mean_rho;    // Hermitian, unit trace, min eigenvalue >= -1e-9
    RealVector standard_error; // per trace-free Bloch component
    int n_traj = 0;
    std::uint64_t seed = 0;
};

struct JumpResult {
    ComplexVector state; // unit norm
    bool jumped = false;
};

/* One Monte Carlo step: with probability p_k = dt <psi|L_k^+ L_k|psi> apply
   the jump psi -> L_k psi / |L_k psi|; otherwise drift with the effective
   non-Hermitian generator H - (i/2) sum_k L_k^+ L_k (second-order expansion)
   and renormalize.  One uniform variate decides both the jump/no-jump split
   and the channel, so the stream advances identically on either branch.
   Requires dt * max_k |L_k^+ L_k| <= 0.1 (first-order jump probabilities),
   else StepTooLargeError.  A channel whose jump image has zero norm can only
   be selected on an exact bin boundary; such zero-width bins are skipped
   (probability-preserving resample) and ZeroNormJumpError is reserved for
   the impossible fallthrough. */
JumpResult jump_step(const LindbladModel& model, const ComplexVector& psi, double dt,
                     rng::Stream& rng);

/* Full trajectory on the grid k*dt, k = 0..floor(t/dt), from the stream
   substream_seed(seed, stream_id). */
JumpTrajectory jump_trajectory(const LindbladModel& model, const ComplexVector& psi0, double t,
                               double dt, std::uint64_t seed, std::uint64_t stream_id);

/* Mean of |psi(t)><psi(t)| over n_traj independent trajectories (n_traj >=
   100), with per-trajectory substreams derived from seed.  The reduction
   runs in trajectory-index order, so the estimate is bit-identical for a
   fixed (seed, n_traj, dt) regardless of scheduling.  t must sit on the dt
   grid within 1e-9 relative. */
EnsembleEstimate ensemble_mean(const LindbladModel& model, const ComplexVector& psi0, double t,
                               double dt, int n_traj, std::uint64_t seed);

}  // namespace ptspeed
