#ifndef MEREO_MODEL_IO_HPP
#define MEREO_MODEL_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mereo/contact.hpp"
#include "mereo/granular_space.hpp"
#include "mereo/mereology.hpp"
#include "mereo/report.hpp"
#include "mereo/search.hpp"

namespace mereo {

// A model document plus its optional probe assignment. Documents are JSON
// with a schema version field:
//   {"schema": 1, "mode": "partition" | "cover",
//    "universe": ["1", ...], "granules": [["1","2"], ...],
//    "probe": {"1": [0.5, 1.0], ...}}        (probe optional)
// or, for explicit tables:
//   {"schema": 1, "mode": "abstract", "carrier": [...], "granules": [...],
//    "lower": {...}, "upper": {...}, "parthood": [[..],..], "leq": [[..],..],
//    "join": [[a,b,ab],..], "meet": [..], "bottom": "x", "top": "y"}
// with bottom/top optional. Probes attach to set-backed modes only.
struct LoadedModel {
    GranularSpaceModel model;
    std::optional<ProbeAssignment> probe;
};

// Throws ParseError naming the offending field or invariant.
LoadedModel parse_model(const std::string& text);
LoadedModel model_from_json(const nlohmann::json& doc);

nlohmann::ordered_json model_to_json(const LoadedModel& lm);
// Deterministic two-space-indented document ending in a newline;
// parse(serialize(x)) is structurally equal to x.
std::string serialize_model(const LoadedModel& lm);

// One row of a six-column decision table. Attribute valuations are strings
// over {s,m,w,n}, stored but not interpreted. The l/u cells name rows.
struct DecisionRow {
    std::string id;
    std::vector<std::string> attributes;
    std::string decision;
    std::string remark; // metadata only
    std::string lower_id;
    std::string upper_id;
};

struct DecisionTable {
    std::vector<DecisionRow> rows;
};

struct IngestResult {
    DecisionTable table;
    // Carrier = decision labels in first-appearance order; parthood = the
    // reflexive completion of the supplied label pairs.
    ParthoodStructure structure;
    // The same carrier as a bare tabular model: l/u from the last two
    // columns translated through row -> decision label, both order
    // predicates equal to parthood, no operations, no designated elements.
    GranularSpaceModel model;
};

// CSV layout: header "id,attributes,decision,remark,l,u"; attribute cell is
// space-separated valuation strings. Cells must not contain commas.
IngestResult ingest_decision_table(
    const std::string& csv_text,
    const std::vector<std::pair<std::string, std::string>>& parthood_pairs);

// JSON renderings used by the --json report mode.
nlohmann::ordered_json witness_to_json(const std::vector<WitnessBinding>& witness);
nlohmann::ordered_json report_to_json(const AxiomReport& report);
nlohmann::ordered_json record_to_json(const CounterexampleRecord& rec);

// Reads a whole file; throws ParseError when unreadable.
std::string read_text_file(const std::string& path);

} // namespace mereo

#endif
