#include "ptspeed/liouvillian.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ptspeed {

void validate_model(const LindbladModel& model) {
    if (model.n < 2) {
        throw DimensionMismatchError("model: n must be at least 2");
    }
    if (model.hamiltonian.rows() != model.n || model.hamiltonian.cols() != model.n) {
        throw DimensionMismatchError("model: H is " + std::to_string(model.hamiltonian.rows()) +
                                     "x" + std::to_string(model.hamiltonian.cols()) +
                                     ", expected " + std::to_string(model.n) + "x" +
                                     std::to_string(model.n));
    }
    if (!is_hermitian_within(model.hamiltonian, 1e-12)) {
        throw NotHermitianError("model: H deviates from its adjoint beyond 1e-12");
    }
    for (std::size_t k = 0; k < model.lindblads.size(); ++k) {
        const auto& l = model.lindblads[k];
        if (l.rows() != model.n || l.cols() != model.n) {
            throw DimensionMismatchError("model: L[" + std::to_string(k) + "] is " +
                                         std::to_string(l.rows()) + "x" +
                                         std::to_string(l.cols()) + ", expected " +
                                         std::to_string(model.n) + "x" +
                                         std::to_string(model.n));
        }
    }
}

namespace {

void require_state_dim(const LindbladModel& model, const ComplexMatrix& rho, const char* what) {
    if (rho.rows() != model.n || rho.cols() != model.n) {
        throw DimensionMismatchError(std::string(what) + ": state is " +
                                     std::to_string(rho.rows()) + "x" +
                                     std::to_string(rho.cols()) + " but the model has n = " +
                                     std::to_string(model.n));
    }
}

}  // namespace

ComplexMatrix apply_dissipator(const LindbladModel& model, const ComplexMatrix& rho) {
    validate_model(model);
    require_state_dim(model, rho, "apply_dissipator");
    ComplexMatrix out = ComplexMatrix::Zero(model.n, model.n);
    for (const auto& l : model.lindblads) {
        const ComplexMatrix ll = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll);
    }
    return out;
}

ComplexMatrix apply_liouvillian(const LindbladModel& model, const ComplexMatrix& rho) {
    validate_model(model);
    require_state_dim(model, rho, "apply_liouvillian");
    ComplexMatrix out = -kI * commutator(model.hamiltonian, rho);
    for (const auto& l : model.lindblads) {
        const ComplexMatrix ll = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll);
    }
    return out;
}

BlochGenerator bloch_generator(const LindbladModel& model, const OperatorBasis& basis) {
    validate_model(model);
    if (basis.n != model.n) {
        throw DimensionMismatchError("bloch_generator: basis n = " + std::to_string(basis.n) +
                                     " does not match model n = " + std::to_string(model.n));
    }

    const int n = model.n;
    const int d = basis.dim();
    const auto& sig = basis.sigma;
    const ComplexMatrix& h = model.hamiltonian;

    double scale = max_abs(h);
    std::vector<ComplexMatrix> ldl;  // L_k^+ L_k
    ldl.reserve(model.lindblads.size());
    for (const auto& l : model.lindblads) {
        ldl.emplace_back(l.adjoint() * l);
        scale += max_abs(ldl.back());
    }
    const double residue_tol = 1e-10 * std::max(1.0, scale);

    BlochGenerator gen;
    gen.n = n;
    gen.lambda.resize(d, d);
    gen.b.resize(d);

    // sandwich terms L_k sigma_j L_k^+, reused across the i loop
    std::vector<std::vector<ComplexMatrix>> sandwich(model.lindblads.size());
    for (std::size_t k = 0; k < model.lindblads.size(); ++k) {
        sandwich[k].reserve(static_cast<std::size_t>(d));
        for (int j = 1; j <= d; ++j) {
            sandwich[k].emplace_back(model.lindblads[k] * sig[static_cast<std::size_t>(j)] *
                                     model.lindblads[k].adjoint());
        }
    }

    for (int j = 1; j <= d; ++j) {
        for (int i = 1; i <= d; ++i) {
            const ComplexMatrix prod_ji = sig[static_cast<std::size_t>(j)] * sig[static_cast<std::size_t>(i)];
            const ComplexMatrix prod_ij = sig[static_cast<std::size_t>(i)] * sig[static_cast<std::size_t>(j)];
            Complex entry = -kI * ((prod_ji - prod_ij) * h).trace();
            for (std::size_t k = 0; k < model.lindblads.size(); ++k) {
                entry += (sandwich[k][static_cast<std::size_t>(j) - 1] *
                          sig[static_cast<std::size_t>(i)])
                             .trace();
                entry -= 0.5 * (ldl[k] * (prod_ji + prod_ij)).trace();
            }
            if (std::abs(entry.imag()) > residue_tol) {
                throw ImaginaryResidueError("bloch_generator: lambda(" + std::to_string(i) + "," +
                                            std::to_string(j) + ") has imaginary residue " +
                                            std::to_string(entry.imag()));
            }
            gen.lambda(i - 1, j - 1) = entry.real();
        }
    }

    for (int i = 1; i <= d; ++i) {
        Complex entry = 0.0;
        for (std::size_t k = 0; k < model.lindblads.size(); ++k) {
            const ComplexMatrix comm =
                model.lindblads[k] * model.lindblads[k].adjoint() - ldl[k];
            entry += (comm * sig[static_cast<std::size_t>(i)]).trace();
        }
        entry /= static_cast<double>(n);
        if (std::abs(entry.imag()) > residue_tol) {
            throw ImaginaryResidueError("bloch_generator: b(" + std::to_string(i) +
                                        ") has imaginary residue " + std::to_string(entry.imag()));
        }
        gen.b[i - 1] = entry.real();
    }

    gen.full = RealMatrix::Zero(d + 1, d + 1);
    gen.full.block(1, 1, d, d) = gen.lambda;
    gen.full.block(1, 0, d, 1) = std::sqrt(static_cast<double>(n)) * gen.b;
    return gen;
}

const char* to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::Unbroken: return "Unbroken";
        case PhaseLabel::ExceptionalPoint: return "ExceptionalPoint";
        case PhaseLabel::Broken: return "Broken";
    }
    return "?";
}

PhaseClassification classify_phase(const LindbladModel& model, double tol_imag, double tol_cond) {
    const OperatorBasis basis = make_basis(model.n);
    const BlochGenerator gen = bloch_generator(model, basis);
    const Spectrum sp = spectrum(gen.full);

    PhaseClassification out;
    out.eigenvalues = sp.values;
    out.vector_condition = sp.vector_condition;

    double hnorm = max_abs(model.hamiltonian);
    double lnorm = 0.0;
    for (const auto& l : model.lindblads) lnorm += max_abs(l);
    out.unitary_dynamics = lnorm <= 1e-14 * std::max(1.0, hnorm);

    const double scale = sp.values.size() ? sp.values.cwiseAbs().maxCoeff() : 0.0;
    out.max_imag = sp.values.size() ? sp.values.imag().cwiseAbs().maxCoeff() : 0.0;

    // minimum pairwise distance among the nonzero eigenvalues; the structural
    // zero of the trace row is excluded
    const double zero_tol = 1e-12 * std::max(1.0, scale);
    std::vector<Complex> nontrivial;
    for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
        if (std::abs(sp.values[i]) > zero_tol) nontrivial.push_back(sp.values[i]);
    }
    out.coalescence_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < nontrivial.size(); ++a) {
        for (std::size_t bdx = a + 1; bdx < nontrivial.size(); ++bdx) {
            out.coalescence_gap =
                std::min(out.coalescence_gap, std::abs(nontrivial[a] - nontrivial[bdx]));
        }
    }

    static constexpr double kCoalesceWindow = 1e-7;
    const double gap_tol = kCoalesceWindow * scale;
    const bool ep_suspect =
        out.vector_condition > tol_cond || out.coalescence_gap <= gap_tol;

    if (ep_suspect && out.max_imag <= gap_tol) {
        out.label = PhaseLabel::ExceptionalPoint;
    } else if (out.max_imag > tol_imag * scale) {
        out.label = PhaseLabel::Unbroken;
    } else {
        out.label = PhaseLabel::Broken;
    }
    return out;
}

}  // namespace ptspeed
