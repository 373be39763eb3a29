#pragma once

#include "ptspeed/errors.hpp"
#include "ptspeed/types.hpp"

namespace ptspeed {

/* Eigenvalues of a real square matrix together with the condition number of
   its eigenvector matrix.  A huge condition number (> ~1e8) marks a
   near-defective matrix, i.e. an exceptional-point suspect. */
struct Spectrum {
    ComplexVector values;
    double vector_condition = 0.0;
};

struct HermitianEig {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns
};

/* Eigendecomposition of a Hermitian matrix.  Throws NotHermitianError if the
   input deviates from its adjoint by more than hermiticity_tol relative to
   the largest entry. */
HermitianEig hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = 1e-12);

/* Principal square root of a positive semidefinite Hermitian matrix.
   Eigenvalues in (-1e-10, 1e-10) are treated as exact zeros (the sqrt is not
   Lipschitz at 0, so sub-threshold values are numerically indistinguishable
   from zero and would otherwise amplify rounding noise); anything below
   -1e-10 raises NotPositiveError. */
ComplexMatrix hermitian_sqrt(const ComplexMatrix& rho);

/* exp(m * t) for a real square matrix, via Pade approximation with scaling
   and squaring.  Throws OverflowError when the result is not representable. */
RealMatrix real_expm(const RealMatrix& m, double t = 1.0);

/* Full eigensystem of a real square matrix (dim <= 64). */
Spectrum spectrum(const RealMatrix& m);

/* Eigenvalues of a general complex matrix (used for spectra of
   non-Hermitian operators). */
ComplexVector complex_eigenvalues(const ComplexMatrix& m);

}  // namespace ptspeed
