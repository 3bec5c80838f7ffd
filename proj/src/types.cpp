#include "framekit/types.hpp"

#include <string>
#include <utility>

namespace framekit {

void Tolerances::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !(v <= 1e-2)) {
            throw ValidationError(std::string("tolerance ") + name +
                                  " must lie in (0, 1e-2], got " + std::to_string(v));
        }
    };
    check(rank_rtol, "rank_rtol");
    check(rank_atol, "rank_atol");
    check(verify_tol, "verify_tol");
    check(bound_slack, "bound_slack");
}

VectorSequence::VectorSequence(std::size_t dim, std::vector<Vector> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {}

Matrix VectorSequence::synthesis_matrix() const {
    Matrix m(dim_, vectors_.size());
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i)) = vectors_[i];
    }
    return m;
}

VectorSequence make_sequence(std::size_t dim, std::vector<Vector> vectors) {
    if (dim == 0) {
        throw ValidationError("ambient dimension must be positive");
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (static_cast<std::size_t>(vectors[i].size()) != dim) {
            throw ValidationError("vector " + std::to_string(i) + " has " +
                                      std::to_string(vectors[i].size()) +
                                      " coordinates, expected " + std::to_string(dim),
                                  i);
        }
    }
    return VectorSequence(dim, std::move(vectors));
}

AnalysisMatrix analysis_matrix(const VectorSequence& seq) {
    Matrix entries(seq.size(), seq.dim());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        entries.row(static_cast<Eigen::Index>(i)) = seq[i].conjugate().transpose();
    }
    return AnalysisMatrix{std::move(entries)};
}

VectorSequence sequence_from_analysis(const AnalysisMatrix& analysis) {
    std::vector<Vector> vectors;
    vectors.reserve(analysis.count());
    for (std::size_t i = 0; i < analysis.count(); ++i) {
        // row i of the analysis matrix is conj(f_i); conjugating restores f_i
        // exactly, with no arithmetic involved.
        vectors.push_back(analysis.entries.row(static_cast<Eigen::Index>(i))
                              .conjugate()
                              .transpose());
    }
    return make_sequence(analysis.dim(), std::move(vectors));
}

Matrix SubspaceBasis::matrix() const {
    Matrix m(dim, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i)) = basis[i];
    }
    return m;
}

Vector SubspaceBasis::project(const Vector& x) const {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (const Vector& w : basis) {
        out += w.dot(x) * w; // w.dot(x) = <x, w> in this library's convention
    }
    return out;
}

VectorSequence apply_extension(const Extension& ext, const VectorSequence& seq) {
    std::vector<Vector> vectors;
    vectors.reserve(ext.added.size() + seq.size());
    for (const Vector& x : ext.added) vectors.push_back(x);
    for (const Vector& f : seq.vectors()) vectors.push_back(f);
    return make_sequence(seq.dim(), std::move(vectors));
}

} // namespace framekit
