#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framekit/spectral.hpp"
#include "framekit/types.hpp"

namespace framekit {

/// Blueprint for a Parseval completion: how many vectors are mandatory,
/// which defect directions they fill, and how many slots are actually used.
struct CompletionPlan {
    std::size_t k = 0;            // numerical rank of I - U*U
    SubspaceBasis defect_basis;   // range of I - U*U, largest defects first
    std::size_t slots = 0;        // vectors actually added, slots >= k
    RealVector defect_eigenvalues; // eigenvalue per defect basis vector
};

/// Perturbations g_n with (f_n + g_n) Parseval, together with the finite
/// dimensional subspace L containing every g_n.
struct PerturbationResult {
    std::vector<Vector> perturbations;
    SubspaceBasis subspace;
};

/// Bookkeeping for the energy identity linking added energy, norm defects,
/// and excess.
struct EnergyReport {
    double added_energy = 0.0;
    double defect_sum = 0.0;
    std::size_t excess = 0;
    double identity_residual = 0.0;
};

struct ParsevalCheck {
    bool is_parseval = false;
    double residual = 0.0;
};

/// Adds deficit-many vectors sqrt(B)*w_j, with the w_j an orthonormal basis
/// of Ker U, so the extended sequence is a frame whose optimal upper bound
/// is still B. Throws DegenerateScaleError when B = 0 (no nonzero vector).
Extension minimal_frame_extension(const VectorSequence& seq, const Tolerances& tol = {});

/// Decides how a Parseval completion would proceed without materializing the
/// added vectors. Throws BoundExceedsOneError when the optimal upper bound
/// exceeds 1 + bound_slack, BelowMinimalCountError when slots < k.
CompletionPlan plan_parseval_completion(const VectorSequence& seq,
                                        std::optional<std::size_t> slots = std::nullopt,
                                        const Tolerances& tol = {});

/// Extends a Bessel sequence with upper bound at most 1 to a Parseval frame
/// by the vectors (I - U*U)^(1/2) w_j over the defect basis. With slots = l > k
/// the remaining l - k added vectors are zero.
Extension parseval_completion(const VectorSequence& seq,
                              std::optional<std::size_t> slots = std::nullopt,
                              const Tolerances& tol = {});

/// Extends to a B-tight frame, B the optimal upper bound, via
/// (B*I - U*U)^(1/2) over the corresponding defect basis.
Extension tight_completion(const VectorSequence& seq, const Tolerances& tol = {});

/// Computes g_n = ((U*U)^(-1/2) - I) f_n, which lie in the finite dimensional
/// subspace L = Im(I - U*U) and make (f_n + g_n) a Parseval frame.
PerturbationResult parseval_perturbation(const VectorSequence& seq, const Tolerances& tol = {});

/// Orthonormal basis of the numerical kernel of I - U*U: the subspace on
/// which plain synthesis-analysis reconstruction x = sum <x,f_n> f_n holds.
SubspaceBasis outer_reconstruction_subspace(const VectorSequence& seq, const Tolerances& tol = {});

/// Frobenius distance of the frame operator from the identity, with the
/// thresholded verdict.
ParsevalCheck verify_parseval(const VectorSequence& seq, const Tolerances& tol = {});

/// True iff candidate.added has at least k = numerical_rank(I - U*U) vectors
/// and, when the extended sequence is Parseval, the added vectors span at
/// least k dimensions. Finite-scale form of the minimal-count argument.
bool minimality_certificate(const VectorSequence& seq, const Extension& candidate,
                            const Tolerances& tol = {});

} // namespace framekit
