#include "framekit/excess.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "framekit/errors.hpp"
#include "framekit/spectral.hpp"

namespace framekit {

RieszExtraction riesz_extraction(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const SequenceDiagnostics diag = diagnostics(seq, tol);
    detail::require_frame(diag, "riesz_extraction");

    const double tau = tol.rank_threshold(std::sqrt(diag.bounds.upper));
    const Eigen::Index d = static_cast<Eigen::Index>(seq.dim());

    std::vector<std::size_t> removed;
    std::vector<Vector> kept_vectors;
    Matrix q(d, 0); // orthonormal columns spanning the kept set
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Vector r = seq[i];
        // Two Gram-Schmidt sweeps keep the residual orthogonal to working precision.
        for (int sweep = 0; sweep < 2; ++sweep) {
            if (q.cols() > 0) r -= q * (q.adjoint() * r);
        }
        const double rnorm = r.norm();
        if (rnorm > tau && q.cols() < d) {
            q.conservativeResize(Eigen::NoChange, q.cols() + 1);
            q.col(q.cols() - 1) = r / rnorm;
            kept_vectors.push_back(seq[i]);
        } else {
            removed.push_back(i);
        }
    }
    return RieszExtraction{std::move(removed),
                           make_sequence(seq.dim(), std::move(kept_vectors))};
}

double excess_via_canonical(const VectorSequence& seq, const Tolerances& tol) {
    const VectorSequence canonical = parseval_canonical(seq, tol);
    double total = 0.0;
    for (std::size_t i = 0; i < canonical.size(); ++i) {
        total += 1.0 - canonical[i].squaredNorm();
    }
    return total;
}

EnergyReport energy_identity(const VectorSequence& seq, const Tolerances& tol) {
    tol.validate();
    const SequenceDiagnostics diag = diagnostics(seq, tol);
    detail::require_frame(diag, "energy_identity");

    const Extension completion = parseval_completion(seq, std::nullopt, tol);

    EnergyReport report;
    for (const Vector& x : completion.added) {
        report.added_energy += x.squaredNorm();
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        report.defect_sum += 1.0 - seq[i].squaredNorm();
    }
    report.excess = diag.excess;
    report.identity_residual = std::abs(
        report.added_energy -
        (report.defect_sum - static_cast<double>(report.excess)));
    return report;
}

DefectSeriesReport defect_series(const VectorSequence& seq,
                                 const std::vector<std::size_t>& schedule,
                                 const Tolerances& tol) {
    tol.validate();
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] == 0 || schedule[i] > seq.size()) {
            throw ValidationError("defect_series: schedule entry " +
                                  std::to_string(schedule[i]) +
                                  " is outside 1.." + std::to_string(seq.size()));
        }
        if (i > 0 && schedule[i] <= schedule[i - 1]) {
            throw ValidationError("defect_series: schedule must be strictly increasing");
        }
    }

    DefectSeriesReport report;
    report.upper_bound = optimal_bounds(seq, tol).upper;
    report.schedule = schedule;

    double running = 0.0;
    std::size_t next = 0;
    for (std::size_t m = 0; m < seq.size() && next < schedule.size(); ++m) {
        running += report.upper_bound - seq[m].squaredNorm();
        if (m + 1 == schedule[next]) {
            report.partial_sums.push_back(running);
            ++next;
        }
    }

    if (report.partial_sums.size() >= 2) {
        const std::size_t last = report.partial_sums.size() - 1;
        const double gap = static_cast<double>(report.schedule[last] -
                                               report.schedule[last - 1]);
        report.growing = report.partial_sums[last] - report.partial_sums[last - 1] >
                         tol.verify_tol * gap;
    }
    return report;
}

} // namespace framekit
