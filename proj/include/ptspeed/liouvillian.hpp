#pragma once

#include <vector>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/errors.hpp"
#include "ptspeed/operator_core.hpp"
#include "ptspeed/types.hpp"

namespace ptspeed {

/* d rho/dt = -i[H, rho] + sum_k ( L_k rho L_k^+ - (1/2){L_k^+ L_k, rho} ) */
struct LindbladModel {
    int n = 0;
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> lindblads;
};

/* Throws if dimensions are inconsistent or H is not Hermitian within 1e-12. */
void validate_model(const LindbladModel& model);

ComplexMatrix apply_dissipator(const LindbladModel& model, const ComplexMatrix& rho);
ComplexMatrix apply_liouvillian(const LindbladModel& model, const ComplexMatrix& rho);

/* Bloch-picture generator: dr/dt = lambda r + b on the trace-free
   components, plus the full (n^2 x n^2) affine superoperator whose first row
   is zero (trace conservation) and first column is sqrt(n) b. */
struct BlochGenerator {
    int n = 0;
    RealMatrix lambda;  // (n^2-1) x (n^2-1)
    RealVector b;       // zero when every Lindblad operator is normal
    RealMatrix full;    // n^2 x n^2
};

BlochGenerator bloch_generator(const LindbladModel& model, const OperatorBasis& basis);

enum class PhaseLabel { Unbroken, ExceptionalPoint, Broken };

const char* to_string(PhaseLabel label);

struct PhaseClassification {
    PhaseLabel label = PhaseLabel::Broken;
    ComplexVector eigenvalues;  // full superoperator spectrum
    double max_imag = 0.0;
    double coalescence_gap = 0.0;  // min pairwise distance among nonzero eigenvalues
    double vector_condition = 0.0;
    bool unitary_dynamics = false;  // all Lindblad operators vanish
};

/* Spectral phase classification.  All thresholds are taken relative to the
   spectral scale max|eigenvalue|.  A conjugate pair split by less than the
   coalescence window (1e-7 of scale) counts as coalesced, so exceptional
   points survive eigensolver rounding. */
PhaseClassification classify_phase(const LindbladModel& model, double tol_imag = 1e-9,
                                   double tol_cond = 1e8);

}  // namespace ptspeed
