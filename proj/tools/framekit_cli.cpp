#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "framekit/errors.hpp"
#include "framekit/excess.hpp"
#include "framekit/extension.hpp"
#include "framekit/io.hpp"
#include "framekit/spectral.hpp"
#include "framekit/truncation.hpp"

namespace {

using framekit::OrderedJson;

struct CliState {
    framekit::Tolerances tol;
    std::string command;
    OrderedJson inputs = OrderedJson::object();

    std::string file;
    std::string out_path;
    std::optional<std::size_t> slots;
    std::vector<std::size_t> prefixes;
    std::vector<std::size_t> dims = framekit::default_schedule();
    std::string left_gen;
    std::string right_gen;
    std::string gen;
};

double added_energy_of(const framekit::Extension& ext) {
    double total = 0.0;
    for (const framekit::Vector& x : ext.added) {
        total += x.squaredNorm();
    }
    return total;
}

OrderedJson run_analyze(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    return framekit::to_json(framekit::diagnostics(seq, state.tol));
}

OrderedJson run_complete_parseval(CliState& state) {
    state.inputs["file"] = state.file;
    if (state.slots) state.inputs["slots"] = *state.slots;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    const framekit::Extension ext =
        framekit::parseval_completion(seq, state.slots, state.tol);
    const framekit::VectorSequence extended = framekit::apply_extension(ext, seq);
    if (!state.out_path.empty()) {
        framekit::save_extension(state.out_path, ext, seq.dim());
        state.inputs["out"] = state.out_path;
    }
    OrderedJson payload = OrderedJson::object();
    payload["k_minimal"] = ext.k_minimal;
    payload["added_count"] = ext.added.size();
    payload["added_energy"] = added_energy_of(ext);
    payload["residual"] = framekit::verify_parseval(extended, state.tol).residual;
    payload["extension"] = framekit::extension_to_json(ext, seq.dim());
    return payload;
}

OrderedJson run_complete_tight(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    const double target = framekit::optimal_bounds(seq, state.tol).upper;
    const framekit::Extension ext = framekit::tight_completion(seq, state.tol);
    const framekit::VectorSequence extended = framekit::apply_extension(ext, seq);
    if (!state.out_path.empty()) {
        framekit::save_extension(state.out_path, ext, seq.dim());
        state.inputs["out"] = state.out_path;
    }
    const Eigen::Index d = static_cast<Eigen::Index>(seq.dim());
    const double residual = (framekit::frame_operator(extended) -
                             target * framekit::Matrix::Identity(d, d))
                                .norm();
    OrderedJson payload = OrderedJson::object();
    payload["k_minimal"] = ext.k_minimal;
    payload["added_energy"] = added_energy_of(ext);
    payload["target_bound"] = target;
    payload["residual"] = residual;
    payload["extension"] = framekit::extension_to_json(ext, seq.dim());
    return payload;
}

OrderedJson run_extend_frame(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    const framekit::Extension ext = framekit::minimal_frame_extension(seq, state.tol);
    const framekit::VectorSequence extended = framekit::apply_extension(ext, seq);
    if (!state.out_path.empty()) {
        framekit::save_extension(state.out_path, ext, seq.dim());
        state.inputs["out"] = state.out_path;
    }
    OrderedJson payload = OrderedJson::object();
    payload["deficit_filled"] = ext.added.size();
    payload["added_energy"] = added_energy_of(ext);
    payload["extended_bounds"] =
        framekit::to_json(framekit::optimal_bounds(extended, state.tol));
    payload["extension"] = framekit::extension_to_json(ext, seq.dim());
    return payload;
}

OrderedJson run_dual_canonical(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    const framekit::VectorSequence dual = framekit::canonical_dual(seq, state.tol);
    if (!state.out_path.empty()) {
        framekit::save_sequence(state.out_path, dual);
        state.inputs["out"] = state.out_path;
    }
    return framekit::sequence_to_json(dual);
}

OrderedJson run_excess(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    const framekit::SequenceDiagnostics diag = framekit::diagnostics(seq, state.tol);
    const framekit::RieszExtraction extraction = framekit::riesz_extraction(seq, state.tol);
    OrderedJson payload = OrderedJson::object();
    payload["excess"] = diag.excess;
    payload["excess_via_canonical"] = framekit::excess_via_canonical(seq, state.tol);
    payload["removed_indices"] = extraction.removed_indices;
    payload["remaining_count"] = extraction.remaining.size();
    return payload;
}

OrderedJson run_energy_identity(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    return framekit::to_json(framekit::energy_identity(seq, state.tol));
}

OrderedJson run_defect_series(CliState& state) {
    state.inputs["file"] = state.file;
    const framekit::VectorSequence seq = framekit::load_sequence(state.file);
    std::vector<std::size_t> schedule = state.prefixes;
    if (schedule.empty()) {
        // Doubling prefixes capped at n, always ending at n.
        for (std::size_t m = 2; m < seq.size(); m *= 2) {
            schedule.push_back(m);
        }
        if (seq.size() > 0 && (schedule.empty() || schedule.back() != seq.size())) {
            schedule.push_back(seq.size());
        }
    }
    state.inputs["prefixes"] = schedule;
    return framekit::to_json(framekit::defect_series(seq, schedule, state.tol));
}

OrderedJson run_lab_duality(CliState& state) {
    state.inputs["left"] = state.left_gen;
    state.inputs["right"] = state.right_gen;
    state.inputs["dims"] = state.dims;
    return framekit::to_json(framekit::essential_duality_diagnostic(
        framekit::generator_from_name(state.left_gen),
        framekit::generator_from_name(state.right_gen), state.dims, state.tol));
}

OrderedJson run_lab_extendability(CliState& state) {
    state.inputs["gen"] = state.gen;
    state.inputs["dims"] = state.dims;
    return framekit::to_json(framekit::extendability_diagnostic(
        framekit::generator_from_name(state.gen), state.dims, state.tol));
}

OrderedJson run_lab_completion_trend(CliState& state) {
    state.inputs["gen"] = state.gen;
    state.inputs["dims"] = state.dims;
    return framekit::to_json(framekit::parseval_completion_trend(
        framekit::generator_from_name(state.gen), state.dims, state.tol));
}

void add_tolerance_flags(CLI::App& app, framekit::Tolerances& tol) {
    app.add_option("--tol-rel", tol.rank_rtol, "Relative rank threshold");
    app.add_option("--tol-abs", tol.rank_atol, "Absolute rank threshold");
    app.add_option("--verify-tol", tol.verify_tol, "Operator equality residual threshold");
    app.add_option("--bound-slack", tol.bound_slack, "Slack for upper bound <= 1 checks");
}

} // namespace

int main(int argc, char** argv) {
    CliState state;
    OrderedJson (*action)(CliState&) = nullptr;

    CLI::App app{"Finite frame toolkit: diagnostics, completions, duals, and "
                 "truncation trend studies"};
    app.require_subcommand(1);
    add_tolerance_flags(app, state.tol);

    CLI::App* analyze = app.add_subcommand("analyze", "Bounds, rank, deficit, excess");
    analyze->add_option("file", state.file, "Sequence file (JSON or CSV)")->required();
    analyze->callback([&] {
        state.command = "analyze";
        action = run_analyze;
    });

    CLI::App* complete = app.add_subcommand("complete", "Completions to Parseval or tight frames");
    complete->require_subcommand(1);
    CLI::App* parseval = complete->add_subcommand("parseval", "Minimal Parseval completion");
    parseval->add_option("file", state.file, "Sequence file")->required();
    parseval->add_option("--slots", state.slots, "Number of vectors to add (>= minimal)");
    parseval->add_option("--out", state.out_path, "Write the extension to this file");
    parseval->callback([&] {
        state.command = "complete parseval";
        action = run_complete_parseval;
    });
    CLI::App* tight = complete->add_subcommand("tight", "Completion to a B-tight frame");
    tight->add_option("file", state.file, "Sequence file")->required();
    tight->add_option("--out", state.out_path, "Write the extension to this file");
    tight->callback([&] {
        state.command = "complete tight";
        action = run_complete_tight;
    });

    CLI::App* extend = app.add_subcommand("extend", "Extensions that create frames");
    extend->require_subcommand(1);
    CLI::App* extend_frame = extend->add_subcommand("frame", "Minimal extension to a frame");
    extend_frame->add_option("file", state.file, "Sequence file")->required();
    extend_frame->add_option("--out", state.out_path, "Write the extension to this file");
    extend_frame->callback([&] {
        state.command = "extend frame";
        action = run_extend_frame;
    });

    CLI::App* dual = app.add_subcommand("dual", "Dual frames");
    dual->require_subcommand(1);
    CLI::App* dual_canonical = dual->add_subcommand("canonical", "Canonical dual frame");
    dual_canonical->add_option("file", state.file, "Sequence file")->required();
    dual_canonical->add_option("--out", state.out_path, "Write the dual to this file");
    dual_canonical->callback([&] {
        state.command = "dual canonical";
        action = run_dual_canonical;
    });

    CLI::App* excess_cmd = app.add_subcommand("excess", "Excess and basis extraction");
    excess_cmd->add_option("file", state.file, "Sequence file")->required();
    excess_cmd->callback([&] {
        state.command = "excess";
        action = run_excess;
    });

    CLI::App* energy = app.add_subcommand("energy-identity",
                                          "Added energy vs norm defects and excess");
    energy->add_option("file", state.file, "Sequence file")->required();
    energy->callback([&] {
        state.command = "energy-identity";
        action = run_energy_identity;
    });

    CLI::App* series = app.add_subcommand("defect-series",
                                          "Partial sums of the bound-defect series");
    series->add_option("file", state.file, "Sequence file")->required();
    series->add_option("--prefixes", state.prefixes, "Prefix lengths (default: doubling)")
        ->delimiter(',');
    series->callback([&] {
        state.command = "defect-series";
        action = run_defect_series;
    });

    CLI::App* lab = app.add_subcommand("lab", "Truncation trend studies");
    lab->require_subcommand(1);
    CLI::App* duality = lab->add_subcommand("duality", "Cross-duality defect trends");
    duality->add_option("--left", state.left_gen, "Left generator name")->required();
    duality->add_option("--right", state.right_gen, "Right generator name")->required();
    duality->add_option("--dims", state.dims, "Truncation sizes")->delimiter(',');
    duality->callback([&] {
        state.command = "lab duality";
        action = run_lab_duality;
    });
    CLI::App* extendability = lab->add_subcommand("extendability", "Frame extendability trends");
    extendability->add_option("--gen", state.gen, "Generator name")->required();
    extendability->add_option("--dims", state.dims, "Truncation sizes")->delimiter(',');
    extendability->callback([&] {
        state.command = "lab extendability";
        action = run_lab_extendability;
    });
    CLI::App* trend = lab->add_subcommand("completion-trend",
                                          "Minimal completion counts across truncations");
    trend->add_option("--gen", state.gen, "Generator name")->required();
    trend->add_option("--dims", state.dims, "Truncation sizes")->delimiter(',');
    trend->callback([&] {
        state.command = "lab completion-trend";
        action = run_lab_completion_trend;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message to stderr
        return 3;
    }

    framekit::RunReport report;
    report.command = state.command;
    report.tolerances = state.tol;
    try {
        state.tol.validate();
        report.payload = (*action)(state);
        report.exit_code = 0;
    } catch (const framekit::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        report.exit_code = 3;
    } catch (const framekit::PreconditionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        report.exit_code = 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        report.exit_code = 3;
    }
    report.inputs = state.inputs;
    std::fputs((framekit::render_run_report(report) + "\n").c_str(), stdout);
    return report.exit_code;
}
