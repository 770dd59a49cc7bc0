#pragma once

// Loading supply chain instances and candidate solutions from structured
// text files, and rendering evaluation/residual reports for people and
// machines.

#include <string>

#include "vlopt/scnem.hpp"
#include "vlopt/toml_lite.hpp"

namespace vlopt::scnem {

// Parses and validates a network document (see data/*.toml for the schema:
// a `version` key plus [[spots]] and [[links]] sections).
SupplyChainNetwork load_network(const TomlValue& doc, const std::string& fallback_name);
SupplyChainNetwork load_network_file(const std::string& path);

// Parses a candidate solution keyed by link/spot ids ([flows], [rates],
// [extractions] tables). Every id must resolve against the network; every
// decision component must be present.
ScnemDecision load_solution(const TomlValue& doc, const SupplyChainNetwork& net);
ScnemDecision load_solution_file(const std::string& path, const SupplyChainNetwork& net);

// Human-readable verification report: objective/penalty header, per-link
// table (flow, prices, residual, classification) and per-spot table.
std::string render_verify_text(const SupplyChainNetwork& net,
                               const EvaluationReport& report, const ViReport& vi);

// Machine-readable mirrors.
std::string render_link_csv(const SupplyChainNetwork& net, const EvaluationReport& report,
                            const ViReport& vi);
std::string render_spot_csv(const SupplyChainNetwork& net, const EvaluationReport& report);
std::string render_report_json(const SupplyChainNetwork& net,
                               const EvaluationReport& report, const ViReport& vi);

} // namespace vlopt::scnem
