#pragma once

#include <cstddef>
#include <vector>

#include "framekit/extension.hpp"
#include "framekit/types.hpp"

namespace framekit {

/// Indices removed to reach a basis-like subfamily, plus what is left.
struct RieszExtraction {
    std::vector<std::size_t> removed_indices; // ascending
    VectorSequence remaining;
};

/// Partial sums of the bound-defect series sum(B - |f_n|^2) over a prefix
/// schedule, with a growing/bounded verdict.
struct DefectSeriesReport {
    double upper_bound = 0.0;
    std::vector<std::size_t> schedule;
    std::vector<double> partial_sums;
    bool growing = false;
};

/// Greedily keeps vectors (index order) that enlarge the span of the kept
/// set; the removed complement J has size excess = n - rank, and the
/// remaining family is spanning and linearly independent for frames.
RieszExtraction riesz_extraction(const VectorSequence& seq, const Tolerances& tol = {});

/// Excess computed spectrally as sum(1 - |fbar_n|^2) over the Parseval
/// canonicalization fbar; agrees with the integer n - rank for frames.
double excess_via_canonical(const VectorSequence& seq, const Tolerances& tol = {});

/// Runs the Parseval completion and reports the energy bookkeeping
/// added_energy = defect_sum - excess (residual measures the identity).
/// Requires a frame with optimal upper bound at most 1 + bound_slack.
EnergyReport energy_identity(const VectorSequence& seq, const Tolerances& tol = {});

/// Partial sums of sum_{n<=m}(B - |f_n|^2), B the optimal upper bound of the
/// full sequence, at each prefix length in the schedule. Verdict "growing"
/// when the last two partial sums differ by more than verify_tol per step.
DefectSeriesReport defect_series(const VectorSequence& seq,
                                 const std::vector<std::size_t>& schedule,
                                 const Tolerances& tol = {});

} // namespace framekit
