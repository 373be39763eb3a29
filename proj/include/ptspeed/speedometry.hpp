#pragma once

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/liouvillian.hpp"

namespace ptspeed {

/* Squared Euclidean speed of the Bloch image, tr[(L rho)^2].  Evaluated both
   in the operator picture and through the Bloch generator; the two routes
   must agree (internal consistency guard). */
double speed_squared(const LindbladModel& model, const OperatorBasis& basis,
                     const BlochGenerator& gen, const ComplexMatrix& rho);
double speed_squared(const LindbladModel& model, const OperatorBasis& basis,
                     const ComplexMatrix& rho);

/* v^2 split into the coherent, mixed, and dissipative contributions:
     unitary    = 2 [ tr(H^2 rho^2) - tr(H rho H rho) ]
     cross      = -2i tr( rho [D rho, H] )
     dissipator = tr[(D rho)^2]
   Their sum reproduces speed_squared. */
struct SpeedDecomposition {
    double unitary = 0.0;
    double cross = 0.0;
    double dissipator = 0.0;

    double total() const { return unitary + cross + dissipator; }
};

SpeedDecomposition speed_decomposition(const LindbladModel& model, const ComplexMatrix& rho);

/* Magnitude of the radial (purity-changing) component of the Bloch velocity,
   |tr(rho L rho)| / sqrt(tr[(rho - 1/n)^2]).  Zero at the maximally mixed
   state. */
double radial_speed(const LindbladModel& model, const ComplexMatrix& rho);

/* Signed radial velocity (positive = moving away from the origin). */
double radial_speed_signed(const LindbladModel& model, const ComplexMatrix& rho);

/* Modified skew quantity S(X) = tr(X^+ X rho^2) - tr(X rho X^+ rho); reduces
   to the variance of X for pure states. */
double modified_skew(const ComplexMatrix& x, const ComplexMatrix& rho);

/* Both sides of the identity v_R = |sum_k S(L_k)| / sqrt(tr[(rho - 1/n)^2]).
   Throws MaximallyMixedError when the denominator vanishes. */
struct RadialIdentity {
    double radial_speed = 0.0;
    double skew_sum_form = 0.0;
};

RadialIdentity radial_speed_identity_check(const LindbladModel& model, const ComplexMatrix& rho);

/* Wigner-Yanase skew information I = tr(H^2 rho) - tr(H sqrt(rho) H sqrt(rho)),
   clamped against roundoff so 0 <= I <= variance(H, rho). */
double wy_skew(const ComplexMatrix& h, const ComplexMatrix& rho);

double variance(const ComplexMatrix& h, const ComplexMatrix& rho);

/* Squared speed of the sqrt-embedding xi = sqrt(rho) under unitary dynamics:
   fixed here as 2 * wy_skew. */
double unitary_speed_sqrt_embedding(const ComplexMatrix& h, const ComplexMatrix& rho);

/* Anandan-Aharonov squared speed of a normalized pure state, 4 * variance.
   Internally cross-checked against 4 <v|v> with |v> the projected velocity. */
double aa_speed(const ComplexMatrix& h, const ComplexVector& psi);

/* Schrodinger-Koopman velocity -i (H - <H>) psi; orthogonal to psi. */
ComplexVector sk_velocity(const ComplexMatrix& h, const ComplexVector& psi);

/* One row of a speed table. */
struct SpeedSample {
    double t = 0.0;
    double v = 0.0;
    double v_r = 0.0;
    double v_t = 0.0;
};

}  // namespace ptspeed
