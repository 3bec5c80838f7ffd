#include "framekit/extension.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "framekit/errors.hpp"

namespace framekit {

namespace {

Matrix identity_like(const VectorSequence& seq) {
    const Eigen::Index d = static_cast<Eigen::Index>(seq.dim());
    return Matrix::Identity(d, d);
}

struct DefectSpectrum {
    RealVector eigenvalues; // descending
    Matrix eigenvectors;
    double tau = 0.0;
};

DefectSpectrum defect_spectrum(const Matrix& defect, const Tolerances& tol) {
    const HermitianSpectrum spectrum = hermitian_eigendecomposition(defect, tol);
    DefectSpectrum out;
    out.eigenvalues = spectrum.eigenvalues;
    out.eigenvectors = spectrum.eigenvectors;
    out.tau = spectrum.eigenvalues.size()
                  ? tol.rank_threshold(spectrum.eigenvalues.cwiseAbs().maxCoeff())
                  : tol.rank_atol;
    return out;
}

/// Clips rounding-level negative eigenvalues of a defect operator that is
/// nonnegative in exact arithmetic; anything materially negative is a bug in
/// the caller's precondition check.
void clip_nonnegative(DefectSpectrum& spec, const Tolerances& tol, const char* operation) {
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        double& lambda = spec.eigenvalues(i);
        if (lambda < -tol.verify_tol) {
            throw NotPositiveSemidefiniteError(
                std::string(operation) + ": defect eigenvalue " +
                std::to_string(lambda) + " is negative beyond tolerance");
        }
        if (lambda < 0.0) lambda = 0.0;
    }
}

} // namespace

Extension minimal_frame_extension(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const FrameBounds bounds = optimal_bounds(seq, tol);
    if (seq.empty() || bounds.upper <= 0.0) {
        throw DegenerateScaleError(
            "minimal_frame_extension: no finite upper bound scale (all vectors zero)");
    }

    Eigen::BDCSVD<Matrix> svd(analysis_matrix(seq).entries, Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    const double tau = tol.rank_threshold(sv(0));
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tau) ++rank;
    }

    const Eigen::Index d = static_cast<Eigen::Index>(seq.dim());
    Matrix kernel = svd.matrixV().rightCols(d - rank);
    detail::canonicalize_phases(kernel, tol);

    const double scale = std::sqrt(bounds.upper);
    Extension ext;
    ext.k_minimal = static_cast<std::size_t>(d - rank);
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
        ext.added.push_back(scale * kernel.col(j));
    }
    return ext;
}

CompletionPlan plan_parseval_completion(const VectorSequence& seq,
                                        std::optional<std::size_t> slots,
                                        const Tolerances& tol) {
    tol.validate();
    const FrameBounds bounds = optimal_bounds(seq, tol);
    if (bounds.upper > 1.0 + tol.bound_slack) {
        throw BoundExceedsOneError("parseval_completion: optimal upper bound " +
                                       std::to_string(bounds.upper) + " exceeds 1",
                                   bounds.upper);
    }

    // Bounds in (1, 1 + bound_slack] are treated as exactly 1; the resulting
    // defect operator then carries rounding-level negative eigenvalues, clipped
    // below.
    DefectSpectrum spec = defect_spectrum(identity_like(seq) - frame_operator(seq), tol);
    clip_nonnegative(spec, tol, "parseval_completion");

    CompletionPlan plan;
    plan.defect_basis.dim = seq.dim();
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (spec.eigenvalues(i) > spec.tau) {
            plan.defect_basis.basis.push_back(spec.eigenvectors.col(i));
            ++plan.k;
        }
    }
    plan.defect_eigenvalues.resize(static_cast<Eigen::Index>(plan.k));
    for (std::size_t i = 0; i < plan.k; ++i) {
        plan.defect_eigenvalues(static_cast<Eigen::Index>(i)) =
            spec.eigenvalues(static_cast<Eigen::Index>(i));
    }

    plan.slots = slots.value_or(plan.k);
    if (plan.slots < plan.k) {
        throw BelowMinimalCountError("parseval_completion: " +
                                         std::to_string(plan.slots) +
                                         " slots is below the minimal count " +
                                         std::to_string(plan.k),
                                     plan.k);
    }
    return plan;
}

Extension parseval_completion(const VectorSequence& seq,
                              std::optional<std::size_t> slots,
                              const Tolerances& tol) {
    const CompletionPlan plan = plan_parseval_completion(seq, slots, tol);

    Extension ext;
    ext.k_minimal = plan.k;
    for (std::size_t j = 0; j < plan.k; ++j) {
        const double delta = plan.defect_eigenvalues(static_cast<Eigen::Index>(j));
        ext.added.push_back(std::sqrt(delta) * plan.defect_basis.basis[j]);
    }
    const Vector zero = Vector::Zero(static_cast<Eigen::Index>(seq.dim()));
    for (std::size_t j = plan.k; j < plan.slots; ++j) {
        ext.added.push_back(zero);
    }
    return ext;
}

Extension tight_completion(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const FrameBounds bounds = optimal_bounds(seq, tol);
    if (seq.empty() || bounds.upper <= 0.0) {
        throw DegenerateScaleError(
            "tight_completion: no finite upper bound scale (all vectors zero)");
    }

    DefectSpectrum spec = defect_spectrum(
        bounds.upper * identity_like(seq) - frame_operator(seq), tol);
    clip_nonnegative(spec, tol, "tight_completion");

    Extension ext;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (spec.eigenvalues(i) > spec.tau) {
            ext.added.push_back(std::sqrt(spec.eigenvalues(i)) * spec.eigenvectors.col(i));
        }
    }
    ext.k_minimal = ext.added.size();
    return ext;
}

PerturbationResult parseval_perturbation(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const VectorSequence canonical = parseval_canonical(seq, tol); // enforces the frame precondition

    PerturbationResult result;
    result.perturbations.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        result.perturbations.push_back(canonical[i] - seq[i]);
    }

    const DefectSpectrum spec =
        defect_spectrum(identity_like(seq) - frame_operator(seq), tol);
    result.subspace.dim = seq.dim();
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues(i)) > spec.tau) {
            result.subspace.basis.push_back(spec.eigenvectors.col(i));
        }
    }
    return result;
}

SubspaceBasis outer_reconstruction_subspace(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const DefectSpectrum spec =
        defect_spectrum(identity_like(seq) - frame_operator(seq), tol);

    SubspaceBasis kernel;
    kernel.dim = seq.dim();
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues(i)) <= spec.tau) {
            kernel.basis.push_back(spec.eigenvectors.col(i));
        }
    }
    return kernel;
}

ParsevalCheck verify_parseval(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    ParsevalCheck check;
    check.residual = (frame_operator(seq) - identity_like(seq)).norm();
    check.is_parseval =
        check.residual <= tol.verify_tol * std::sqrt(static_cast<double>(seq.dim()));
    return check;
}

bool minimality_certificate(const VectorSequence& seq, const Extension& candidate,
                            const Tolerances& tol) {
    tol.validate();
    const std::size_t k =
        numerical_rank(identity_like(seq) - frame_operator(seq), tol);
    if (candidate.added.size() < k) {
        return false;
    }
    const VectorSequence extended = apply_extension(candidate, seq);
    if (!verify_parseval(extended, tol).is_parseval) {
        return true; // nothing further to certify for non-Parseval extensions
    }
    if (candidate.added.empty()) {
        return k == 0;
    }
    Matrix span(static_cast<Eigen::Index>(seq.dim()),
                static_cast<Eigen::Index>(candidate.added.size()));
    for (std::size_t j = 0; j < candidate.added.size(); ++j) {
        span.col(static_cast<Eigen::Index>(j)) = candidate.added[j];
    }
    return k <= numerical_rank(span, tol);
}

} // namespace framekit
