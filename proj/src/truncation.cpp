#include "framekit/truncation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "framekit/errors.hpp"
#include "framekit/spectral.hpp"

namespace framekit {

GeneratorKind generator_from_name(const std::string& name) {
    if (name == "onb") return GeneratorKind::Onb;
    if (name == "shift_plus_identity") return GeneratorKind::ShiftPlusIdentity;
    if (name == "diag_sqrt_ratio") return GeneratorKind::DiagSqrtRatio;
    if (name == "repeated_first") return GeneratorKind::RepeatedFirst;
    if (name == "onb_damped_first") return GeneratorKind::OnbDampedFirst;
    throw ValidationError("unknown generator name: " + name);
}

std::string generator_name(GeneratorKind gen) {
    switch (gen) {
    case GeneratorKind::Onb: return "onb";
    case GeneratorKind::ShiftPlusIdentity: return "shift_plus_identity";
    case GeneratorKind::DiagSqrtRatio: return "diag_sqrt_ratio";
    case GeneratorKind::RepeatedFirst: return "repeated_first";
    case GeneratorKind::OnbDampedFirst: return "onb_damped_first";
    }
    throw ValidationError("unknown generator kind");
}

VectorSequence generate(GeneratorKind gen, std::size_t truncation) {
    if (truncation == 0) {
        throw ValidationError("generate: truncation size must be at least 1");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(truncation);
    std::vector<Vector> vectors;
    vectors.reserve(truncation);
    for (std::size_t n = 1; n <= truncation; ++n) {
        const Eigen::Index j = static_cast<Eigen::Index>(n) - 1;
        Vector f = Vector::Zero(d);
        switch (gen) {
        case GeneratorKind::Onb:
            f(j) = 1.0;
            break;
        case GeneratorKind::ShiftPlusIdentity:
            if (j > 0) f(j - 1) = 1.0;
            f(j) = 1.0;
            break;
        case GeneratorKind::DiagSqrtRatio:
            f(j) = std::sqrt(static_cast<double>(n) / static_cast<double>(n + 1));
            break;
        case GeneratorKind::RepeatedFirst:
            f(j > 0 ? j - 1 : j) = 1.0;
            break;
        case GeneratorKind::OnbDampedFirst:
            f(j) = (j == 0) ? 0.5 : 1.0;
            break;
        }
        vectors.push_back(std::move(f));
    }
    return make_sequence(truncation, std::move(vectors));
}

std::vector<std::size_t> default_schedule() { return {16, 32, 64, 128, 256}; }

std::string duality_class_name(DualityClass c) {
    switch (c) {
    case DualityClass::FiniteRankStable: return "finite-rank-stable";
    case DualityClass::CompactDecaying: return "compact-decaying";
    case DualityClass::NonDecaying: return "non-decaying";
    }
    throw ValidationError("unknown duality class");
}

namespace {

void validate_schedule(const std::vector<std::size_t>& schedule, std::size_t min_entries,
                       const char* operation) {
    if (schedule.size() < min_entries) {
        throw ValidationError(std::string(operation) + ": schedule needs at least " +
                              std::to_string(min_entries) + " entries");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] == 0) {
            throw ValidationError(std::string(operation) +
                                  ": schedule entries must be positive");
        }
        if (i > 0 && schedule[i] <= schedule[i - 1]) {
            throw ValidationError(std::string(operation) +
                                  ": schedule must be strictly increasing");
        }
    }
}

DefectProfile profile_from(const RealVector& sv, const Tolerances& tol) {
    DefectProfile p;
    if (sv.size() == 0) {
        return p;
    }
    const double tau = tol.rank_threshold(sv(0));
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tau) ++p.rank;
    }
    p.top = sv(0);
    p.tail = sv(sv.size() - 1);
    p.median = sv(sv.size() / 2);
    return p;
}

/// The trend trichotomy is a declared heuristic over the left-defect spectra;
/// it never certifies an infinite-dimensional property.
DualityClass classify(const std::vector<RealVector>& spectra,
                      const std::vector<DefectProfile>& profiles, const Tolerances& tol) {
    const std::size_t last = profiles.size() - 1;
    const double tau_last = tol.rank_threshold(profiles[last].top);
    if (profiles[last].rank == profiles[last - 1].rank &&
        profiles[last].tail <= tau_last) {
        return DualityClass::FiniteRankStable;
    }

    bool rank_grows = true;
    for (std::size_t i = 0; i + 1 < profiles.size(); ++i) {
        if (profiles[i + 1].rank <= profiles[i].rank) rank_grows = false;
    }
    bool pointwise_nonincreasing = true;
    for (std::size_t i = 0; i + 1 < spectra.size(); ++i) {
        for (Eigen::Index j = 0; j < spectra[i].size(); ++j) {
            if (spectra[i + 1](j) > spectra[i](j) + tol.verify_tol) {
                pointwise_nonincreasing = false;
            }
        }
    }
    const bool median_halves = profiles[last].median < 0.5 * profiles[0].median;
    if (rank_grows && pointwise_nonincreasing && median_halves) {
        return DualityClass::CompactDecaying;
    }
    return DualityClass::NonDecaying;
}

} // namespace

DualityReport essential_duality_diagnostic(GeneratorKind left_gen, GeneratorKind right_gen,
                                           const std::vector<std::size_t>& schedule,
                                           const Tolerances& tol) {
    tol.validate();
    validate_schedule(schedule, 2, "essential_duality_diagnostic");

    DualityReport report;
    report.schedule = schedule;
    std::vector<RealVector> left_spectra;
    for (const std::size_t n : schedule) {
        const Matrix u = analysis_matrix(generate(left_gen, n)).entries;
        const Matrix v = analysis_matrix(generate(right_gen, n)).entries;
        const Eigen::Index d = static_cast<Eigen::Index>(n);

        const Matrix left_defect = Matrix::Identity(d, d) - v.adjoint() * u;
        const Matrix right_defect = Matrix::Identity(d, d) - v * u.adjoint();

        const RealVector left_sv = singular_values(left_defect);
        report.left.push_back(profile_from(left_sv, tol));
        report.right.push_back(profile_from(singular_values(right_defect), tol));
        left_spectra.push_back(left_sv);
    }
    report.classification = classify(left_spectra, report.left, tol);
    return report;
}

ExtendabilityReport extendability_diagnostic(GeneratorKind gen,
                                             const std::vector<std::size_t>& schedule,
                                             const Tolerances& tol) {
    tol.validate();
    validate_schedule(schedule, 1, "extendability_diagnostic");

    ExtendabilityReport report;
    bool deficit_free = true;
    for (const std::size_t n : schedule) {
        const VectorSequence seq = generate(gen, n);
        const RealVector sv = singular_values(analysis_matrix(seq).entries);
        const double tau = tol.rank_threshold(sv(0));

        ExtendabilityRow row;
        row.truncation = n;
        row.sigma_min = sv(sv.size() - 1);
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > tau) ++rank;
        }
        row.deficit = n - rank;
        row.defect_rank = numerical_rank(
            Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
                frame_operator(seq),
            tol);
        deficit_free = deficit_free && row.deficit == 0;
        report.rows.push_back(row);
    }
    report.non_extendable_trend =
        deficit_free &&
        report.rows.back().sigma_min <= 0.5 * report.rows.front().sigma_min;
    return report;
}

CompletionTrend parseval_completion_trend(GeneratorKind gen,
                                          const std::vector<std::size_t>& schedule,
                                          const Tolerances& tol) {
    tol.validate();
    validate_schedule(schedule, 1, "parseval_completion_trend");

    CompletionTrend trend;
    for (const std::size_t n : schedule) {
        const VectorSequence seq = generate(gen, n);
        const FrameBounds bounds = optimal_bounds(seq, tol);
        if (bounds.upper > 1.0 + tol.bound_slack) {
            throw BoundExceedsOneError("parseval_completion_trend: optimal upper bound " +
                                           std::to_string(bounds.upper) +
                                           " exceeds 1 at truncation " + std::to_string(n),
                                       bounds.upper);
        }
        CompletionTrendRow row;
        row.truncation = n;
        row.k = numerical_rank(
            Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
                frame_operator(seq),
            tol);
        trend.rows.push_back(row);
    }
    trend.stabilizing = trend.rows.size() >= 2 &&
                        trend.rows[trend.rows.size() - 1].k ==
                            trend.rows[trend.rows.size() - 2].k;
    return trend;
}

} // namespace framekit
