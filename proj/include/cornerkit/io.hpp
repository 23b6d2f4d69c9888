#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cornerkit/census.hpp"
#include "cornerkit/containers.hpp"
#include "cornerkit/extremal.hpp"
#include "cornerkit/grid.hpp"
#include "cornerkit/supersat.hpp"

namespace cornerkit {

// Text format: header "grid n=<n> k=<k>", then one point per line as
// space-separated 1-based coordinates; blank lines and '#' comments ignored.
std::string grid_set_to_text(const GridSet&);
GridSet grid_set_from_text(std::istream&);
GridSet grid_set_from_text(const std::string&);

// Compact JSON form {"n":..., "k":..., "cells":[[...],...]}.
nlohmann::json grid_set_to_json(const GridSet&);
GridSet grid_set_from_json(const nlohmann::json&);

// Sniffs JSON ('{' first) vs text.
GridSet load_grid_set(const std::filesystem::path&);

// Hypergraph text: first line "r |V| |E|", then one edge per line as
// 0-based vertex ids.
std::string hypergraph_to_text(const Hypergraph&);
Hypergraph hypergraph_from_text(std::istream&);
Hypergraph hypergraph_from_text(const std::string&);
Hypergraph load_hypergraph(const std::filesystem::path&);

nlohmann::json corner_to_json(const Corner&);
nlohmann::json extremal_record_to_json(const ExtremalRecord&);
ExtremalRecord extremal_record_from_json(const nlohmann::json&);
nlohmann::json census_record_to_json(const CensusRecord&);
CensusRecord census_record_from_json(const nlohmann::json&);
nlohmann::json audit_report_to_json(const AuditReport&);
nlohmann::json container_set_to_json(const ContainerSet&);
nlohmann::json verify_report_to_json(const VerifyReport&);
nlohmann::json hypothesis_report_to_json(const HypothesisReport&);
nlohmann::json pipeline_report_to_json(const PipelineReport&);
nlohmann::json pnt_report_to_json(const PntReport&);
nlohmann::json rate_values_to_json(const RateValues&);
nlohmann::json double_counting_report_to_json(const DoubleCountingReport&);
nlohmann::json target_report_to_json(const TargetReport&);
nlohmann::json subadditivity_report_to_json(const SubadditivityReport&);

}  // namespace cornerkit
