#include "framekit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace framekit {

HermitianSpectrum hermitian_eigendecomposition(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    if (m.rows() != m.cols()) {
        throw ValidationError("hermitian_eigendecomposition requires a square matrix");
    }
    const double herm_residual = (m - m.adjoint()).norm();
    if (herm_residual > tol.verify_tol * (1.0 + m.norm())) {
        throw ValidationError("matrix is not Hermitian (asymmetry " +
                              std::to_string(herm_residual) + ")");
    }
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);

    const Eigen::Index n = m.rows();
    HermitianSpectrum spectrum;
    spectrum.eigenvalues.resize(n);
    spectrum.eigenvectors.resize(n, n);
    // Eigen returns ascending order; reverse to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        spectrum.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        spectrum.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    detail::canonicalize_phases(spectrum.eigenvectors, tol);
    return spectrum;
}

Matrix frame_operator(const VectorSequence& seq) {
    const Eigen::Index d = static_cast<Eigen::Index>(seq.dim());
    if (seq.empty()) {
        return Matrix::Zero(d, d);
    }
    const AnalysisMatrix u = analysis_matrix(seq);
    Matrix s = u.entries.adjoint() * u.entries;
    // Exact Hermitian symmetry so downstream eigensolves are clean.
    return 0.5 * (s + s.adjoint());
}

RealVector singular_values(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return RealVector(0);
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

namespace {

/// One SVD of the analysis matrix feeds both the rank decision and the
/// optimal bounds; keeping them on the same singular values makes
/// "lower bound positive iff spanning" exact rather than approximate.
struct AnalysisSpectrum {
    RealVector sv;   // descending, min(n, d) values
    double tau = 0.0;
    std::size_t rank = 0;
    bool borderline = false;
};

AnalysisSpectrum analyze_singular_values(const VectorSequence& seq, const Tolerances& tol) {
    AnalysisSpectrum out;
    out.sv = singular_values(analysis_matrix(seq).entries);
    out.tau = out.sv.size() ? tol.rank_threshold(out.sv(0)) : tol.rank_atol;
    for (Eigen::Index i = 0; i < out.sv.size(); ++i) {
        if (out.sv(i) > out.tau) {
            ++out.rank;
            if (out.sv(i) <= 11.0 * out.tau) out.borderline = true;
        }
    }
    return out;
}

FrameBounds bounds_from(const AnalysisSpectrum& spec, std::size_t dim) {
    FrameBounds bounds;
    if (spec.sv.size() == 0) {
        return bounds;
    }
    bounds.upper = spec.sv(0) * spec.sv(0);
    if (spec.rank == dim) {
        const double sigma_min = spec.sv(static_cast<Eigen::Index>(dim) - 1);
        bounds.lower = sigma_min * sigma_min;
    }
    return bounds;
}

} // namespace

FrameBounds optimal_bounds(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    return bounds_from(analyze_singular_values(seq, tol), seq.dim());
}

std::size_t numerical_rank(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    const RealVector sv = singular_values(m);
    if (sv.size() == 0) {
        return 0;
    }
    const double tau = tol.rank_threshold(sv(0));
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tau) ++rank;
    }
    return rank;
}

SequenceDiagnostics diagnostics(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const AnalysisSpectrum spec = analyze_singular_values(seq, tol);

    SequenceDiagnostics out;
    out.bounds = bounds_from(spec, seq.dim());
    out.rank = spec.rank;
    out.rank_borderline = spec.borderline;
    out.deficit = seq.dim() - spec.rank;
    out.excess = seq.size() - spec.rank;
    out.is_frame = (spec.rank == seq.dim());
    out.excess_is_lower_bound = !out.is_frame;

    const Eigen::Index d = static_cast<Eigen::Index>(seq.dim());
    const double parseval_residual = (frame_operator(seq) - Matrix::Identity(d, d)).norm();
    out.is_parseval = parseval_residual <= tol.verify_tol * std::sqrt(static_cast<double>(d));
    return out;
}

Matrix hermitian_sqrt(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    const HermitianSpectrum spectrum = hermitian_eigendecomposition(m, tol);
    RealVector roots(spectrum.eigenvalues.size());
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        double lambda = spectrum.eigenvalues(i);
        if (lambda < -tol.verify_tol) {
            throw NotPositiveSemidefiniteError(
                "not positive semidefinite: eigenvalue " + std::to_string(lambda));
        }
        roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    return spectrum.eigenvectors * roots.asDiagonal() *
           spectrum.eigenvectors.adjoint();
}

namespace {

/// Applies h(lambda_i) to the frame operator's spectrum and maps every vector
/// through the resulting operator. Eigenvalues at or below the rank threshold
/// are rejected rather than regularized.
template <typename Map>
VectorSequence map_through_frame_operator(const VectorSequence& seq, const Tolerances& tol,
                                          const char* operation, Map h) {
    const SequenceDiagnostics diag = diagnostics(seq, tol);
    detail::require_frame(diag, operation);

    const HermitianSpectrum spectrum =
        hermitian_eigendecomposition(frame_operator(seq), tol);
    const double tau = tol.rank_threshold(spectrum.eigenvalues.size()
                                              ? spectrum.eigenvalues(0)
                                              : 0.0);
    RealVector mapped(spectrum.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        const double lambda = spectrum.eigenvalues(i);
        if (lambda <= tau) {
            throw FrameRequiredError(std::string(operation) +
                                         ": frame operator eigenvalue " +
                                         std::to_string(lambda) +
                                         " is below the invertibility threshold",
                                     diag.deficit);
        }
        mapped(i) = h(lambda);
    }
    const Matrix op = spectrum.eigenvectors * mapped.asDiagonal() *
                      spectrum.eigenvectors.adjoint();

    std::vector<Vector> vectors;
    vectors.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        vectors.push_back(op * seq[i]);
    }
    return make_sequence(seq.dim(), std::move(vectors));
}

} // namespace

VectorSequence canonical_dual(const VectorSequence& seq, const Tolerances& tol) {
    return map_through_frame_operator(seq, tol, "canonical_dual",
                                      [](double lambda) { return 1.0 / lambda; });
}

VectorSequence parseval_canonical(const VectorSequence& seq, const Tolerances& tol) {
    return map_through_frame_operator(seq, tol, "parseval_canonical",
                                      [](double lambda) { return 1.0 / std::sqrt(lambda); });
}

Matrix pseudo_inverse(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    if (m.rows() == 0 || m.cols() == 0) {
        return Matrix::Zero(m.cols(), m.rows());
    }
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    const double tau = tol.rank_threshold(sv.size() ? sv(0) : 0.0);
    RealVector inverted = RealVector::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tau) inverted(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().adjoint();
}

namespace detail {

void require_frame(const SequenceDiagnostics& diag, const char* operation) {
    if (!diag.is_frame) {
        throw FrameRequiredError(std::string(operation) +
                                     " requires a frame; sequence has deficit " +
                                     std::to_string(diag.deficit),
                                 diag.deficit);
    }
}

void canonicalize_phases(Matrix& vectors, const Tolerances& tol) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        auto col = vectors.col(c);
        const double tau = tol.rank_threshold(col.cwiseAbs().maxCoeff());
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            const double mag = std::abs(col(r));
            if (mag > tau) {
                col *= std::conj(col(r)) / mag;
                break;
            }
        }
    }
}

} // namespace detail

} // namespace framekit
