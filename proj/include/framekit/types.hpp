#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "framekit/errors.hpp"

namespace framekit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by every operation in the library.
///
/// rank_rtol / rank_atol enter every rank decision through the threshold
/// tau = rank_rtol * sigma_max + rank_atol applied to singular values (and to
/// eigenvalue magnitudes of Hermitian defect operators). verify_tol bounds
/// residuals in equality-of-operators checks, and bound_slack is the accepted
/// overshoot when an optimal upper bound must not exceed 1.
struct Tolerances {
    double rank_rtol = 1e-10;
    double rank_atol = 1e-12;
    double verify_tol = 1e-8;
    double bound_slack = 1e-10;

    /// All four values must be strictly positive and at most 1e-2.
    void validate() const;

    /// Rank threshold for a matrix whose largest singular value is sigma_max.
    double rank_threshold(double sigma_max) const {
        return rank_rtol * sigma_max + rank_atol;
    }
};

/// An ordered, finite list of vectors in a d-dimensional complex space.
///
/// Every finite sequence is Bessel, so no boundedness precondition appears
/// anywhere; emptiness (n = 0) is legal and meaningful. Immutable after
/// construction.
class VectorSequence {
public:
    VectorSequence(std::size_t dim, std::vector<Vector> vectors);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    bool empty() const { return vectors_.empty(); }

    const Vector& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<Vector>& vectors() const { return vectors_; }

    /// d x n matrix whose column i is the i-th vector.
    Matrix synthesis_matrix() const;

private:
    std::size_t dim_;
    std::vector<Vector> vectors_;
};

/// Validating constructor wrapper; throws ValidationError naming the first
/// offending index when some vector does not have exactly `dim` coordinates.
VectorSequence make_sequence(std::size_t dim, std::vector<Vector> vectors);

/// The matrix of the analysis operator: row i is the conjugate of the i-th
/// sequence vector, so that (Ux)_i = <x, f_i> with the inner product linear
/// in its first argument. The adjoint is the synthesis operator and maps the
/// i-th standard basis vector back to f_i exactly.
struct AnalysisMatrix {
    Matrix entries; // n x d

    std::size_t count() const { return static_cast<std::size_t>(entries.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(entries.cols()); }

    /// d x n synthesis matrix (columns are the sequence vectors).
    Matrix synthesis() const { return entries.adjoint(); }

    /// Coefficient sequence (<x, f_i>)_i of a vector.
    Vector apply(const Vector& x) const { return entries * x; }
};

AnalysisMatrix analysis_matrix(const VectorSequence& seq);

/// Extract the sequence back out of an analysis matrix (rows of the adjoint).
VectorSequence sequence_from_analysis(const AnalysisMatrix& analysis);

/// Optimal frame bounds: extreme eigenvalues of the frame operator over the
/// full ambient space. lower is 0 exactly when the sequence does not span.
struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// An orthonormal basis of a subspace of the d-dimensional ambient space.
/// An empty basis encodes the zero subspace.
struct SubspaceBasis {
    std::size_t dim = 0;
    std::vector<Vector> basis;

    std::size_t rank() const { return basis.size(); }

    /// d x k matrix with the basis vectors as columns.
    Matrix matrix() const;

    /// Orthogonal projection of x onto the spanned subspace.
    Vector project(const Vector& x) const;
};

/// Vectors added in front of an existing sequence. The placement convention
/// is fixed: the extension occupies fresh leading slots, so the extended
/// sequence is `added` followed by the original vectors.
struct Extension {
    std::vector<Vector> added;

    /// Minimal number of vectors that must be added for the producing
    /// operation's goal; added.size() can exceed it when extra slots were
    /// requested.
    std::size_t k_minimal = 0;

    std::size_t size() const { return added.size(); }
};

/// The extended sequence `ext.added ++ seq`.
VectorSequence apply_extension(const Extension& ext, const VectorSequence& seq);

} // namespace framekit
