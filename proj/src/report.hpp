// report.hpp - deterministic report documents. Every run result is built
// into an ordered JSON document (fixed key order, integers and
// fixed-decimal strings only) and serialized either as indented JSON or as
// a flat key,value CSV holding exactly the same values.
#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

#include "costmodel.hpp"
#include "explorer.hpp"

namespace fusecost {

using document = nlohmann::ordered_json;

enum class RecordDetail { None, Failures, Full };

struct ModelEcho {
  std::string source;  // file path, "builtin:<name>" or "inline"
  std::string name;
  uint32_t layer_count = 0;
  uint32_t bytes_per_element = 1;
};

struct EvaluationOutcome {
  ModelEcho model;
  std::string grouping_selector;
  FusionGrouping grouping;
  HardwareConfig config;
  TechParams tech;
  bool caps_given = false;
  std::optional<FeasibilityResult> feasibility;  // present when caps were given
  CostReport report;
};

struct ComparisonOutcome {
  ModelEcho model;
  std::string grouping_selector;
  FusionGrouping grouping;
  HardwareConfig config;
  TechParams tech;
  bool caps_given = false;
  CompareResult result;
};

struct ExplorationOutcome {
  ModelEcho model;
  std::string grouping_selector;  // "pool", "all", or a fixed grouping's selector
  Constraints constraints;
  TechParams tech;
  SramSizes sram;
  bool sram_auto = true;
  DseResult result;
};

using ReportPayload = std::variant<EvaluationOutcome, ComparisonOutcome, ExplorationOutcome>;

document to_document(const EvaluationOutcome& outcome);
document to_document(const ComparisonOutcome& outcome);
document to_document(const ExplorationOutcome& outcome, RecordDetail detail);
document payload_document(const ReportPayload& payload, RecordDetail detail);

std::string to_json_text(const document& doc);  // indented, trailing newline
std::string to_csv_text(const document& doc);   // key,value rows, same values

}  // namespace fusecost
