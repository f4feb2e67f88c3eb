#pragma once

#include "qpengine/dg.hpp"
#include "qpengine/homology.hpp"

#include <string>

namespace qp {

inline constexpr const char* kEngineVersion = "0.3.0";

/* Parsed session document: base ring, generator system, eta, potentials and
 * the task to run. One document, one task. */
struct SessionDocument {
    int dimension = 3;
    int truncation = 6;
    GeneratorSystem gen;
    std::vector<EtaEntry> eta;
    Potential potential;
    std::vector<std::pair<std::vector<std::string>, Scalar>> potential_frozen;
    std::vector<std::string> frozen_letters;
    std::string task;
    std::map<std::string, std::string> task_params;
    unsigned seed = 0;
};

SessionDocument parse_document(const std::string& json_text);

/* Canonical re-serialization; parse(serialize(parse(x))) is a fixpoint. */
std::string serialize_document(const SessionDocument& s);

struct RunResult {
    std::string report_json;  // canonical serialization
    int exit_code = 0;        // 0 ok, 1 violated, 2 schema error
};

/* Executes the document's task and renders the deterministic report. */
RunResult run_document(const std::string& json_text);

/* The machine-readable input schema, printed by `engine schema`. */
std::string schema_text();

}  // namespace qp
