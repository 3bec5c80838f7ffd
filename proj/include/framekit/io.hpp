#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

#include "framekit/excess.hpp"
#include "framekit/extension.hpp"
#include "framekit/spectral.hpp"
#include "framekit/truncation.hpp"
#include "framekit/types.hpp"

namespace framekit {

using OrderedJson = nlohmann::ordered_json;

/// Reads a sequence file; the format is chosen by extension (.csv for CSV,
/// JSON otherwise). Both parsers reject non-finite values and report the
/// offending line or field.
VectorSequence load_sequence(const std::string& path);

/// Writes a sequence file in the format chosen by extension.
void save_sequence(const std::string& path, const VectorSequence& seq);

/// Writes an extension file: the sequence format plus "placement" and
/// "k_minimal" fields (JSON), or the bare added vectors (CSV).
void save_extension(const std::string& path, const Extension& ext, std::size_t dim);

OrderedJson sequence_to_json(const VectorSequence& seq);
VectorSequence sequence_from_json(const OrderedJson& doc);

OrderedJson to_json(const Tolerances& tol);
OrderedJson to_json(const FrameBounds& bounds);
OrderedJson to_json(const SequenceDiagnostics& diag);
OrderedJson to_json(const ParsevalCheck& check);
OrderedJson to_json(const EnergyReport& report);
OrderedJson to_json(const RieszExtraction& extraction);
OrderedJson to_json(const DefectSeriesReport& report);
OrderedJson to_json(const PerturbationResult& result);
OrderedJson to_json(const SubspaceBasis& basis);
OrderedJson to_json(const DualityReport& report);
OrderedJson to_json(const ExtendabilityReport& report);
OrderedJson to_json(const CompletionTrend& trend);
OrderedJson extension_to_json(const Extension& ext, std::size_t dim);

/// Top-level record every CLI invocation prints: what ran, on which inputs,
/// under which tolerances, with what payload. exit_code 0 means the payload
/// is present and complete; 2 a violated precondition; 3 malformed input.
struct RunReport {
    std::string command;
    OrderedJson inputs = OrderedJson::object();
    Tolerances tolerances;
    OrderedJson payload; // null on failure
    int exit_code = 0;
};

/// Deterministic serialization: insertion-ordered fields, floats with 17
/// significant digits, two-space indentation. Identical values always yield
/// byte-identical text.
std::string dump_report(const OrderedJson& doc);

std::string render_run_report(const RunReport& report);

} // namespace framekit
