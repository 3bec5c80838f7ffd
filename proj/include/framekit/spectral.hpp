#pragma once

#include "framekit/types.hpp"

namespace framekit {

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// Eigenvector phases are canonicalized: the first coordinate whose modulus
/// exceeds the rank threshold is made real positive. Within a degenerate
/// cluster the order is whatever the solver produced, kept after the
/// descending sort; no operation's postcondition depends on it.
struct HermitianSpectrum {
    RealVector eigenvalues; // descending
    Matrix eigenvectors;    // columns, orthonormal, same order
};

HermitianSpectrum hermitian_eigendecomposition(const Matrix& m, const Tolerances& tol);

/// Summary of a sequence's frame-theoretic position.
///
/// deficit = dim - rank, excess = n - rank, and is_frame holds exactly when
/// rank equals the ambient dimension. For non-frames the reported excess is
/// only a lower bound on the number of removable vectors, which
/// excess_is_lower_bound flags. rank_borderline is set when some retained
/// singular value lies within 10*tau of the rank threshold tau, meaning the
/// rank decision is sensitive to the tolerance choice.
struct SequenceDiagnostics {
    FrameBounds bounds;
    std::size_t deficit = 0;
    std::size_t excess = 0;
    std::size_t rank = 0;
    bool is_frame = false;
    bool is_parseval = false;
    bool excess_is_lower_bound = false;
    bool rank_borderline = false;
};

/// Frame operator of the sequence: the Hermitian positive-semidefinite
/// d x d matrix obtained by applying synthesis after analysis, equal to the
/// accumulated outer products of the sequence vectors.
Matrix frame_operator(const VectorSequence& seq);

/// Optimal frame bounds: the extreme eigenvalues of the frame operator,
/// computed as squared singular values of the analysis matrix so that
/// "lower > 0" and "rank = dim" are decided by the same thresholded spectrum.
/// The lower bound is exactly 0 when the sequence does not span.
FrameBounds optimal_bounds(const VectorSequence& seq, const Tolerances& tol = {});

/// Singular values of a general complex matrix, descending.
RealVector singular_values(const Matrix& m);

/// Count of singular values above rank_rtol * sigma_max + rank_atol.
std::size_t numerical_rank(const Matrix& m, const Tolerances& tol = {});

SequenceDiagnostics diagnostics(const VectorSequence& seq, const Tolerances& tol = {});

/// Unique positive-semidefinite square root of a Hermitian PSD matrix.
/// Eigenvalues in [-verify_tol, 0) are clipped to zero; anything below
/// -verify_tol is rejected.
Matrix hermitian_sqrt(const Matrix& m, const Tolerances& tol = {});

/// Canonical dual of a frame: each vector mapped through the inverse frame
/// operator. Requires a spanning sequence; the error carries the deficit.
VectorSequence canonical_dual(const VectorSequence& seq, const Tolerances& tol = {});

/// Parseval frame canonically associated with a frame: each vector mapped
/// through the inverse square root of the frame operator.
VectorSequence parseval_canonical(const VectorSequence& seq, const Tolerances& tol = {});

/// Moore-Penrose pseudo-inverse with singular values at or below the rank
/// threshold treated as zero.
Matrix pseudo_inverse(const Matrix& m, const Tolerances& tol = {});

namespace detail {

/// Shared guard: throws FrameRequiredError unless rank equals dim.
void require_frame(const SequenceDiagnostics& diag, const char* operation);

/// Phase-normalize the columns of an eigenvector/basis matrix in place.
void canonicalize_phases(Matrix& vectors, const Tolerances& tol);

} // namespace detail

} // namespace framekit
