#pragma once

#include <vector>

#include "ptspeed/errors.hpp"
#include "ptspeed/types.hpp"

namespace ptspeed {

/* Orthonormal Hermitian operator basis: sigma[0] = identity/sqrt(n), followed
   by the n^2 - 1 trace-free generalized Gell-Mann matrices, all normalized to
   unit Hilbert-Schmidt norm, tr(sigma_i sigma_j) = delta_ij.

   Ordering of the trace-free part: symmetric off-diagonal pairs in row-major
   (h, k) order, then the antisymmetric pairs in the same order, then the
   n - 1 diagonal elements.  For n = 2 this yields pauli_{x,y,z}/sqrt(2), so a
   Bloch vector reads (r_x, r_y, r_z). */
struct OperatorBasis {
    int n = 0;
    std::vector<ComplexMatrix> sigma;

    int dim() const { return n * n - 1; }  // trace-free components
};

/* Euclidean Bloch image of a state: r_j = tr(rho sigma_j), j = 1..n^2-1 */
struct BlochState {
    int n = 0;
    RealVector r;
};

/* squared Bloch radius of pure states, 1 - 1/n */
inline double pure_radius_sq(int n) { return 1.0 - 1.0 / n; }

OperatorBasis make_basis(int n);  // n in [2, 8]

/* Trace-free expansion coefficients tr(m sigma_j) of a Hermitian operator;
   no density-matrix validation (usable on Liouvillian images). */
RealVector components(const ComplexMatrix& m, const OperatorBasis& basis);

/* Bloch embedding of a density matrix (validates Hermiticity and trace). */
BlochState embed(const ComplexMatrix& rho, const OperatorBasis& basis);

/* rho = identity/n + sum_j r_j sigma_j */
ComplexMatrix reconstruct(const BlochState& state, const OperatorBasis& basis);

struct PurityRadius {
    double purity = 0.0;     // tr(rho^2)
    double radius_sq = 0.0;  // sum_j r_j^2 = purity - 1/n
};

PurityRadius purity_radius(const ComplexMatrix& rho, const OperatorBasis& basis);

}  // namespace ptspeed
