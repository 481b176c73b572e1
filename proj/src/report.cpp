#include "report.hpp"

#include "fixedpoint.hpp"

namespace fusecost {
namespace {

document model_block(const ModelEcho& model) {
  document block;
  block["source"] = model.source;
  block["name"] = model.name;
  block["layers"] = model.layer_count;
  block["bytes_per_element"] = model.bytes_per_element;
  return block;
}

document config_block(const HardwareConfig& config) {
  document block;
  block["arch"] = arch_name(config.arch);
  block["f"] = {config.f1, config.f2, config.f3, config.f4};
  return block;
}

document tech_block(const TechParams& tech) {
  document block;
  block["e_dram_nj"] = centi_to_string(tech.dram_energy_cnj);
  block["e_sram_nj"] = centi_to_string(tech.sram_energy_cnj);
  block["e_pe_nj"] = centi_to_string(tech.pe_energy_cnj);
  block["a_pe_blockwise_um2"] = centi_to_string(tech.pe_area_blockwise_cum2);
  block["a_pe_vectorwise_um2"] = centi_to_string(tech.pe_area_vectorwise_cum2);
  block["a_sram_per_byte_um2"] = centi_to_string(tech.sram_area_cum2_per_byte);
  block["dram_bytes_per_cycle"] = tech.dram_bytes_per_cycle;
  block["t_pl"] = tech.pipeline_latency_cycles;
  return block;
}

document grouping_groups(const FusionGrouping& grouping) {
  document groups = document::array();
  for (const GroupRange& g : grouping.groups()) groups.push_back({g.first, g.last});
  return groups;
}

document grouping_block(const std::string& selector, const FusionGrouping& grouping) {
  document block;
  block["selector"] = selector;
  block["groups"] = grouping_groups(grouping);
  block["group_count"] = grouping.group_count();
  return block;
}

document sram_block(const SramSizes& sram, bool autosized) {
  document block;
  block["mode"] = autosized ? "auto" : "caps";
  block["ifm_bytes"] = sram.ifm_bytes;
  block["wb_bytes"] = sram.wb_bytes;
  block["ofm_bytes"] = sram.ofm_bytes;
  return block;
}

document constraints_block(const Constraints& constraints) {
  document block = document::object();
  if (constraints.max_bandwidth_bytes)
    block["max_bandwidth_bytes"] = *constraints.max_bandwidth_bytes;
  if (constraints.max_latency_cycles)
    block["max_latency_cycles"] = *constraints.max_latency_cycles;
  if (constraints.max_energy_cnj) block["max_energy_nj_x100"] = *constraints.max_energy_cnj;
  if (constraints.max_area_cum2) block["max_area_um2_x100"] = *constraints.max_area_cum2;
  return block;
}

document results_block(const CostReport& report) {
  document block;
  block["bandwidth_bytes"] = report.bandwidth_bytes;
  block["latency_cycles"] = report.latency.total_cycles;
  block["energy_nj_x100"] = report.energy.total_cnj;
  block["energy_mj"] = centi_to_milli_string(report.energy.total_cnj);
  block["area_um2_x100"] = report.area.total_cum2;
  block["area_um2"] = centi_to_string(report.area.total_cum2);

  document latency;
  latency["weight_read_cycles"] = report.latency.weight_read_cycles;
  latency["compute_cycles"] = report.latency.compute_cycles;
  latency["pipeline_cycles"] = report.latency.pipeline_cycles;
  latency["group_io_cycles"] = report.latency.group_io_cycles;
  block["latency"] = std::move(latency);

  document energy;
  energy["dram"] = document{{"count", report.energy.counts.dram_elements},
                            {"nj_x100", report.energy.dram_cnj}};
  energy["sram"] = document{{"count", report.energy.counts.sram_elements},
                            {"nj_x100", report.energy.sram_cnj}};
  energy["pe"] =
      document{{"count", report.energy.counts.pe_cycles}, {"nj_x100", report.energy.pe_cnj}};
  block["energy"] = std::move(energy);

  document area;
  area["pe_blocks_um2_x100"] = report.area.pe_blocks_cum2;
  area["ifm_um2_x100"] = report.area.ifm_cum2;
  area["wb_um2_x100"] = report.area.wb_cum2;
  area["ofm_um2_x100"] = report.area.ofm_cum2;
  block["area"] = std::move(area);
  return block;
}

document per_group_array(const CostReport& report) {
  document groups = document::array();
  for (const GroupCost& cost : report.per_group) {
    document entry;
    entry["group"] = cost.group;
    entry["layers"] = {cost.range.first, cost.range.last};
    entry["bandwidth_bytes"] = cost.bandwidth_bytes;
    entry["latency_cycles"] = cost.latency_cycles;
    entry["energy_nj_x100"] = cost.energy_cnj;
    groups.push_back(std::move(entry));
  }
  return groups;
}

document feasibility_block(const FeasibilityResult& feasibility) {
  document block;
  block["feasible"] = feasibility.feasible;
  if (!feasibility.feasible) {
    block["layer"] = feasibility.layer;
    block["requirement"] = feasibility.requirement;
    block["required_bytes"] = feasibility.required_bytes;
    block["available_bytes"] = feasibility.available_bytes;
  }
  return block;
}

document reduction_block(const ReductionRatio& ratio) {
  document block;
  block["baseline"] = ratio.baseline;
  block["fused"] = ratio.fused;
  block["numerator"] = ratio.numerator();
  block["denominator"] = ratio.baseline;
  block["percent"] = tenths_to_string(ratio.percent_tenths());
  return block;
}

document violations_array(const std::vector<ConstraintViolation>& violations) {
  document list = document::array();
  for (const ConstraintViolation& v : violations) {
    document entry;
    entry["metric"] = v.metric;
    entry["value"] = v.value;
    entry["limit"] = v.limit;
    list.push_back(std::move(entry));
  }
  return list;
}

document record_entry(const CandidateRecord& record, const DseResult& result) {
  document entry;
  entry["index"] = record.index;
  entry["config"] = config_block(record.config);
  entry["grouping"] = grouping_groups(result.groupings[record.grouping_index]);
  entry["bandwidth_bytes"] = record.bandwidth_bytes;
  entry["latency_cycles"] = record.latency_cycles;
  entry["energy_nj_x100"] = record.energy_cnj;
  entry["area_um2_x100"] = record.area_cum2;
  entry["feasible"] = record.feasibility.feasible;
  if (!record.feasibility.feasible)
    entry["feasibility"] = feasibility_block(record.feasibility);
  entry["violations"] = violations_array(record.violations);
  entry["passes"] = record.passes;
  return entry;
}

}  // namespace

document to_document(const EvaluationOutcome& outcome) {
  document doc;
  doc["schema"] = "fusecost.evaluate.v1";
  document inputs;
  inputs["command"] = "evaluate";
  inputs["model"] = model_block(outcome.model);
  inputs["grouping"] = grouping_block(outcome.grouping_selector, outcome.grouping);
  inputs["config"] = config_block(outcome.config);
  inputs["tech"] = tech_block(outcome.tech);
  inputs["sram"] = sram_block(outcome.report.sram, outcome.report.sram_auto);
  doc["inputs"] = std::move(inputs);
  doc["results"] = results_block(outcome.report);
  if (outcome.feasibility) doc["feasibility"] = feasibility_block(*outcome.feasibility);
  doc["per_group"] = per_group_array(outcome.report);
  return doc;
}

document to_document(const ComparisonOutcome& outcome) {
  document doc;
  doc["schema"] = "fusecost.compare.v1";
  document inputs;
  inputs["command"] = "compare";
  inputs["model"] = model_block(outcome.model);
  inputs["grouping"] = grouping_block(outcome.grouping_selector, outcome.grouping);
  inputs["config"] = config_block(outcome.config);
  inputs["tech"] = tech_block(outcome.tech);
  inputs["sram"] = sram_block(outcome.result.fused.sram, outcome.result.fused.sram_auto);
  doc["inputs"] = std::move(inputs);

  document results;
  results["fused"] = results_block(outcome.result.fused);
  results["baseline"] = results_block(outcome.result.baseline);
  doc["results"] = std::move(results);

  document reductions;
  reductions["bandwidth"] = reduction_block(outcome.result.bandwidth);
  reductions["latency"] = reduction_block(outcome.result.latency);
  reductions["energy"] = reduction_block(outcome.result.energy);
  doc["reductions"] = std::move(reductions);

  document per_group = document::array();
  for (const GroupEnergyComparison& entry : outcome.result.per_group_energy) {
    document row;
    row["group"] = entry.group;
    row["layers"] = {entry.range.first, entry.range.last};
    row["fused_energy_nj_x100"] = entry.fused_cnj;
    row["baseline_energy_nj_x100"] = entry.baseline_cnj;
    per_group.push_back(std::move(row));
  }
  doc["per_group"] = std::move(per_group);
  return doc;
}

document to_document(const ExplorationOutcome& outcome, RecordDetail detail) {
  const DseResult& result = outcome.result;
  document doc;
  doc["schema"] = "fusecost.explore.v1";
  document inputs;
  inputs["command"] = "explore";
  inputs["model"] = model_block(outcome.model);
  inputs["grouping_mode"] = outcome.grouping_selector;
  document config_set = document::array();
  for (const HardwareConfig& config : result.configs) config_set.push_back(config_block(config));
  inputs["config_set"] = std::move(config_set);
  inputs["constraints"] = constraints_block(outcome.constraints);
  inputs["tech"] = tech_block(outcome.tech);
  inputs["sram"] = sram_block(outcome.sram, outcome.sram_auto);
  doc["inputs"] = std::move(inputs);

  document totals;
  totals["candidates"] = result.records.size();
  totals["groupings"] = result.groupings.size();
  totals["feasible"] = result.feasible_count;
  totals["passing"] = result.passing_count;
  doc["totals"] = std::move(totals);

  if (result.best_index && result.best_report) {
    const CandidateRecord& best = result.records[*result.best_index];
    document best_doc;
    best_doc["index"] = best.index;
    best_doc["config"] = config_block(best.config);
    best_doc["grouping"] = grouping_groups(result.groupings[best.grouping_index]);
    best_doc["results"] = results_block(*result.best_report);
    best_doc["per_group"] = per_group_array(*result.best_report);
    doc["best"] = std::move(best_doc);
  } else {
    doc["best"] = nullptr;
  }

  if (detail != RecordDetail::None) {
    document records = document::array();
    for (const CandidateRecord& record : result.records) {
      if (detail == RecordDetail::Failures && record.passes) continue;
      records.push_back(record_entry(record, result));
    }
    doc["records"] = std::move(records);
  }
  return doc;
}

document payload_document(const ReportPayload& payload, RecordDetail detail) {
  if (const auto* evaluation = std::get_if<EvaluationOutcome>(&payload))
    return to_document(*evaluation);
  if (const auto* comparison = std::get_if<ComparisonOutcome>(&payload))
    return to_document(*comparison);
  return to_document(std::get<ExplorationOutcome>(payload), detail);
}

std::string to_json_text(const document& doc) { return doc.dump(2) + "\n"; }

namespace {

std::string csv_escape(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string scalar_text(const document& node) {
  if (node.is_string()) return node.get<std::string>();
  return node.dump();  // numbers, booleans, null: canonical JSON text
}

void flatten(const document& node, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& item : node.items())
      flatten(item.value(), path.empty() ? item.key() : path + "." + item.key(), rows);
  } else if (node.is_array()) {
    for (size_t i = 0; i < node.size(); ++i)
      flatten(node[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, scalar_text(node));
  }
}

}  // namespace

std::string to_csv_text(const document& doc) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::string out = "key,value\n";
  for (const auto& [key, value] : rows)
    out += csv_escape(key) + "," + csv_escape(value) + "\n";
  return out;
}

}  // namespace fusecost
