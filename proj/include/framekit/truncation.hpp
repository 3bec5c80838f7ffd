#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "framekit/types.hpp"

namespace framekit {

/// Named infinite-model sequences, truncated to their first N coordinates
/// and first N elements.
enum class GeneratorKind {
    Onb,              // f_n = e_n
    ShiftPlusIdentity, // f_1 = e_1, f_n = e_{n-1} + e_n
    DiagSqrtRatio,    // f_n = sqrt(n/(n+1)) e_n
    RepeatedFirst,    // f_1 = e_1, f_n = e_{n-1}
    OnbDampedFirst,   // f_1 = e_1/2, f_n = e_n
};

GeneratorKind generator_from_name(const std::string& name);
std::string generator_name(GeneratorKind gen);

/// The truncated sequence: N vectors in dimension N. Coordinates beyond N
/// are dropped.
VectorSequence generate(GeneratorKind gen, std::size_t truncation);

std::vector<std::size_t> default_schedule();

enum class DualityClass { FiniteRankStable, CompactDecaying, NonDecaying };

std::string duality_class_name(DualityClass c);

/// Summary of one defect matrix's singular spectrum at one truncation size.
struct DefectProfile {
    std::size_t rank = 0;
    double top = 0.0;
    double tail = 0.0;
    double median = 0.0;
};

/// Cross-duality defect trends for a pair of generators: per truncation size,
/// the numerical ranks and singular profiles of I - V*U (left) and I - VU*
/// (right), plus a trend classification computed from the left defect.
struct DualityReport {
    std::vector<std::size_t> schedule;
    std::vector<DefectProfile> left;
    std::vector<DefectProfile> right;
    DualityClass classification = DualityClass::NonDecaying;
};

struct ExtendabilityRow {
    std::size_t truncation = 0;
    double sigma_min = 0.0;
    std::size_t deficit = 0;
    std::size_t defect_rank = 0;
};

/// Smallest singular value, deficit, and defect rank of U_N across the
/// schedule. The verdict is a trend heuristic, not a statement about the
/// infinite model: non-extendable when the deficit stays 0 while sigma_min
/// halves from first to last truncation.
struct ExtendabilityReport {
    std::vector<ExtendabilityRow> rows;
    bool non_extendable_trend = false;
};

struct CompletionTrendRow {
    std::size_t truncation = 0;
    std::size_t k = 0;
};

/// Minimal Parseval completion counts k_N across the schedule; stabilizing
/// when the last two agree (at least two entries required to flag it).
struct CompletionTrend {
    std::vector<CompletionTrendRow> rows;
    bool stabilizing = false;
};

/// Forms both cross-duality defect matrices per scheduled truncation and
/// classifies the left-defect trend. Schedule must be strictly increasing
/// with at least two entries.
DualityReport essential_duality_diagnostic(GeneratorKind left_gen, GeneratorKind right_gen,
                                           const std::vector<std::size_t>& schedule,
                                           const Tolerances& tol = {});

/// Tracks sigma_min(U_N), deficit, and defect rank across the schedule.
ExtendabilityReport extendability_diagnostic(GeneratorKind gen,
                                             const std::vector<std::size_t>& schedule,
                                             const Tolerances& tol = {});

/// Tracks the minimal completion count k_N across the schedule. Throws
/// BoundExceedsOneError naming the truncation if some truncation has optimal
/// upper bound beyond 1 + bound_slack.
CompletionTrend parseval_completion_trend(GeneratorKind gen,
                                          const std::vector<std::size_t>& schedule,
                                          const Tolerances& tol = {});

} // namespace framekit
