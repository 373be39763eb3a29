#include "ptspeed/speedometry.hpp"

#include <cmath>
#include <string>

#include "ptspeed/operator_core.hpp"

namespace ptspeed {

namespace {

double model_scale(const LindbladModel& model) {
    double s = max_abs(model.hamiltonian);
    for (const auto& l : model.lindblads) s += max_abs(l) * max_abs(l);
    return std::max(1.0, s);
}

double real_with_residue_check(const Complex& z, double tol, const char* what) {
    if (std::abs(z.imag()) > tol) {
        throw ImaginaryResidueError(std::string(what) + ": imaginary residue " +
                                    std::to_string(z.imag()));
    }
    return z.real();
}

/* tr[(rho - 1/n)^2] = squared Bloch radius */
double radius_sq(const ComplexMatrix& rho) {
    const double n = static_cast<double>(rho.rows());
    const ComplexMatrix dev = rho - ComplexMatrix::Identity(rho.rows(), rho.rows()) / n;
    return (dev * dev).trace().real();
}

}  // namespace

double speed_squared(const LindbladModel& model, const OperatorBasis& basis,
                     const BlochGenerator& gen, const ComplexMatrix& rho) {
    const ComplexMatrix v = apply_liouvillian(model, rho);
    const double from_operator = (v * v).trace().real();

    const RealVector rdot = gen.lambda * components(rho, basis) + gen.b;
    const double from_bloch = rdot.squaredNorm();

    // both routes are relatively accurate, so disagreement flags a defect in
    // the generator assembly rather than float noise; the floor covers
    // states where the velocity itself underflows
    const double floor = std::pow(1e-12 * model_scale(model) * std::max(1.0, max_abs(rho)), 2);
    if (std::abs(from_operator - from_bloch) >
        1e-10 * std::max(from_operator, from_bloch) + floor) {
        throw Error("speed_squared: operator and Bloch routes disagree: " +
                    std::to_string(from_operator) + " vs " + std::to_string(from_bloch));
    }
    return from_operator;
}

double speed_squared(const LindbladModel& model, const OperatorBasis& basis,
                     const ComplexMatrix& rho) {
    return speed_squared(model, basis, bloch_generator(model, basis), rho);
}

SpeedDecomposition speed_decomposition(const LindbladModel& model, const ComplexMatrix& rho) {
    validate_model(model);
    const double tol = 1e-10 * model_scale(model);
    const ComplexMatrix& h = model.hamiltonian;
    const ComplexMatrix d = apply_dissipator(model, rho);

    SpeedDecomposition out;
    out.unitary = 2.0 * real_with_residue_check(
                            (h * h * rho * rho).trace() - (h * rho * h * rho).trace(), tol,
                            "speed_decomposition: unitary term");

    // -2i tr(rho [D rho, H]) is real; its residue is -2 Re tr(rho [D rho, H])
    const Complex z = (rho * commutator(d, h)).trace();
    if (std::abs(2.0 * z.real()) > tol) {
        throw ImaginaryResidueError("speed_decomposition: cross term residue " +
                                    std::to_string(-2.0 * z.real()));
    }
    out.cross = 2.0 * z.imag();

    out.dissipator = (d * d).trace().real();
    return out;
}

double radial_speed(const LindbladModel& model, const ComplexMatrix& rho) {
    const double den_sq = radius_sq(rho);
    if (den_sq <= 1e-24) {
        return 0.0;  // maximally mixed: no radial direction, no radial motion
    }
    const ComplexMatrix v = apply_liouvillian(model, rho);
    const double num = real_with_residue_check((rho * v).trace(), 1e-10 * model_scale(model),
                                               "radial_speed");
    return std::abs(num) / std::sqrt(den_sq);
}

double radial_speed_signed(const LindbladModel& model, const ComplexMatrix& rho) {
    const double den_sq = radius_sq(rho);
    if (den_sq <= 1e-24) {
        return 0.0;
    }
    const ComplexMatrix v = apply_liouvillian(model, rho);
    const double num = real_with_residue_check((rho * v).trace(), 1e-10 * model_scale(model),
                                               "radial_speed_signed");
    return num / std::sqrt(den_sq);
}

double modified_skew(const ComplexMatrix& x, const ComplexMatrix& rho) {
    if (x.rows() != rho.rows() || x.cols() != rho.cols()) {
        throw DimensionMismatchError("modified_skew: operator and state dimensions differ");
    }
    const Complex s = (x.adjoint() * x * rho * rho).trace() - (x * rho * x.adjoint() * rho).trace();
    const double scale = std::max(1.0, max_abs(x) * max_abs(x) * max_abs(rho) * max_abs(rho));
    return real_with_residue_check(s, 1e-10 * scale, "modified_skew");
}

RadialIdentity radial_speed_identity_check(const LindbladModel& model, const ComplexMatrix& rho) {
    const double den_sq = radius_sq(rho);
    if (den_sq <= 1e-24) {
        throw MaximallyMixedError(
            "radial_speed_identity_check: state is maximally mixed, the radial direction is "
            "undefined");
    }
    RadialIdentity out;
    out.radial_speed = radial_speed(model, rho);
    double skew_sum = 0.0;
    for (const auto& l : model.lindblads) skew_sum += modified_skew(l, rho);
    out.skew_sum_form = std::abs(skew_sum) / std::sqrt(den_sq);
    return out;
}

double variance(const ComplexMatrix& h, const ComplexMatrix& rho) {
    const double tol = 1e-10 * std::max(1.0, max_abs(h) * max_abs(h));
    const double h2 = real_with_residue_check((h * h * rho).trace(), tol, "variance: tr(H^2 rho)");
    const double h1 = real_with_residue_check((h * rho).trace(), tol, "variance: tr(H rho)");
    return h2 - h1 * h1;
}

double wy_skew(const ComplexMatrix& h, const ComplexMatrix& rho) {
    if (h.rows() != rho.rows()) {
        throw DimensionMismatchError("wy_skew: operator and state dimensions differ");
    }
    const ComplexMatrix root = hermitian_sqrt(rho);
    const double tol = 1e-10 * std::max(1.0, max_abs(h) * max_abs(h));
    const double i_raw = real_with_residue_check(
        (h * h * rho).trace() - (h * root * h * root).trace(), tol, "wy_skew");
    if (i_raw < -1e-10) {
        throw NotPositiveError("wy_skew: value " + std::to_string(i_raw) +
                               " below zero beyond roundoff");
    }
    return std::max(i_raw, 0.0);
}

double unitary_speed_sqrt_embedding(const ComplexMatrix& h, const ComplexMatrix& rho) {
    return 2.0 * wy_skew(h, rho);
}

double aa_speed(const ComplexMatrix& h, const ComplexVector& psi) {
    if (h.rows() != psi.size()) {
        throw DimensionMismatchError("aa_speed: operator and state dimensions differ");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-12) {
        throw NotNormalizedError("aa_speed: |psi| deviates from 1 by " +
                                 std::to_string(psi.norm() - 1.0));
    }
    const Complex mean = psi.dot(h * psi);  // dot conjugates the left argument
    const Complex mean_sq = psi.dot(h * h * psi);
    const double var = mean_sq.real() - mean.real() * mean.real();
    const double result = 4.0 * var;

    // projected-velocity route: |v> = -i (H - <H>) |psi>, speed^2 = 4 <v|v>
    const ComplexVector v = sk_velocity(h, psi);
    const double check = 4.0 * v.squaredNorm();
    if (std::abs(result - check) > 1e-12 * std::max({1.0, result, check})) {
        throw Error("aa_speed: variance and projected-velocity routes disagree");
    }
    return result;
}

ComplexVector sk_velocity(const ComplexMatrix& h, const ComplexVector& psi) {
    if (h.rows() != psi.size()) {
        throw DimensionMismatchError("sk_velocity: operator and state dimensions differ");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-12) {
        throw NotNormalizedError("sk_velocity: state is not normalized");
    }
    const Complex mean = psi.dot(h * psi);
    return -kI * (h * psi - mean * psi);
}

}  // namespace ptspeed
