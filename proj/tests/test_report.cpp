#include <doctest.h>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fixedpoint.hpp"
#include "report.hpp"
#include "testutil.hpp"

using namespace fusecost;

namespace {

const NetworkModel& vgg() {
  static const NetworkModel model = build_vgg16();
  return model;
}

const HardwareConfig kB4444 = HardwareConfig::make(Arch::Blockwise3x3, 4, 4, 4, 4);

EvaluationOutcome sample_evaluation() {
  EvaluationOutcome outcome;
  outcome.model = {"builtin:vgg16", vgg().name, vgg().layer_count(), 1};
  outcome.grouping_selector = "pool";
  outcome.grouping = pool_delimited(vgg());
  outcome.config = kB4444;
  outcome.tech = TechParams{};
  outcome.report = evaluate(vgg(), outcome.grouping, outcome.config, outcome.tech);
  return outcome;
}

ExplorationOutcome sample_exploration(Constraints constraints) {
  std::vector<HardwareConfig> configs;
  for (uint32_t f : {2u, 4u, 8u, 16u})
    configs.push_back(HardwareConfig::make(Arch::Blockwise3x3, f, f, f, f));
  ExplorationOutcome outcome;
  outcome.model = {"builtin:vgg16", vgg().name, vgg().layer_count(), 1};
  outcome.grouping_selector = "pool";
  outcome.constraints = constraints;
  outcome.tech = TechParams{};
  outcome.sram = required_sram(vgg());
  outcome.result = explore(vgg(), configs, GroupingMode::PoolDelimitedOnly, constraints,
                           outcome.tech);
  return outcome;
}

Constraints survey_limits() {
  Constraints c;
  c.max_bandwidth_bytes = 20000000;
  c.max_latency_cycles = 12000000;
  c.max_energy_cnj = 6500000000;
  c.max_area_cum2 = 4500000000;
  return c;
}

// Follows a flattened CSV path ("inputs.config.f[2]") back into the tree.
const document* resolve_path(const document& doc, const std::string& path) {
  const document* node = &doc;
  size_t pos = 0;
  while (pos < path.size()) {
    if (path[pos] == '.') ++pos;
    if (path[pos] == '[') {
      const size_t close = path.find(']', pos);
      const size_t index = std::stoul(path.substr(pos + 1, close - pos - 1));
      if (!node->is_array() || index >= node->size()) return nullptr;
      node = &(*node)[index];
      pos = close + 1;
      continue;
    }
    size_t end = pos;
    while (end < path.size() && path[end] != '.' && path[end] != '[') ++end;
    const std::string key = path.substr(pos, end - pos);
    if (!node->is_object() || !node->contains(key)) return nullptr;
    node = &(*node)[key];
    pos = end;
  }
  return node;
}

// Splits CSV text into (key, value) rows, undoing RFC quoting. The reports
// never emit embedded newlines, so line splitting is safe here.
std::vector<std::pair<std::string, std::string>> parse_csv(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> rows;
  size_t line_start = 0;
  while (line_start < text.size()) {
    const size_t line_end = text.find('\n', line_start);
    const std::string line = text.substr(line_start, line_end - line_start);
    line_start = line_end + 1;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(std::move(field));
    REQUIRE(fields.size() == 2);
    rows.emplace_back(fields[0], fields[1]);
  }
  return rows;
}

uint64_t count_scalars(const document& node) {
  if (node.is_object() || node.is_array()) {
    uint64_t n = 0;
    for (const auto& child : node) n += count_scalars(child);
    return n;
  }
  return 1;
}

}  // namespace

TEST_CASE("fixed-point strings format hundredths exactly") {
  CHECK(centi_to_string(0) == "0.00");
  CHECK(centi_to_string(1) == "0.01");
  CHECK(centi_to_string(10) == "0.10");
  CHECK(centi_to_string(100) == "1.00");
  CHECK(centi_to_string(500000) == "5000.00");
  CHECK(centi_to_string(2246534176) == "22465341.76");
  CHECK(centi_to_string(3640729600) == "36407296.00");

  CHECK(centi_to_milli_string(0) == "0.00000000");
  CHECK(centi_to_milli_string(1) == "0.00000001");
  CHECK(centi_to_milli_string(2246534176) == "22.46534176");
  CHECK(centi_to_milli_string(100000000) == "1.00000000");

  CHECK(tenths_to_string(0) == "0.0");
  CHECK(tenths_to_string(602) == "60.2");
  CHECK(tenths_to_string(1000) == "100.0");

  CHECK(centi_from_double(1.0, "x") == 100);
  CHECK(centi_from_double(0.1, "x") == 10);
  CHECK(centi_from_double(0.01, "x") == 1);
  CHECK(centi_from_double(5000.0, "x") == 500000);
  CHECK(centi_from_double(0.125, "x") == 13);  // rounds to the nearest hundredth
  CHECK_THROWS_AS(centi_from_double(-0.5, "x"), Error);
}

TEST_CASE("evaluate document carries frozen totals and echoes inputs") {
  const document doc = to_document(sample_evaluation());
  CHECK(doc["schema"] == "fusecost.evaluate.v1");
  CHECK(doc["inputs"]["command"] == "evaluate");
  CHECK(doc["inputs"]["model"]["source"] == "builtin:vgg16");
  CHECK(doc["inputs"]["model"]["layers"] == 18);
  CHECK(doc["inputs"]["grouping"]["selector"] == "pool");
  CHECK(doc["inputs"]["grouping"]["group_count"] == 5);
  CHECK(doc["inputs"]["grouping"]["groups"][0] == document({0, 3}));
  CHECK(doc["inputs"]["config"]["arch"] == "blockwise");
  CHECK(doc["inputs"]["config"]["f"] == document({4, 4, 4, 4}));
  CHECK(doc["inputs"]["tech"]["e_dram_nj"] == "1.00");
  CHECK(doc["inputs"]["tech"]["e_sram_nj"] == "0.10");
  CHECK(doc["inputs"]["tech"]["e_pe_nj"] == "0.01");
  CHECK(doc["inputs"]["tech"]["a_pe_blockwise_um2"] == "5000.00");
  CHECK(doc["inputs"]["tech"]["a_sram_per_byte_um2"] == "4.00");
  CHECK(doc["inputs"]["tech"]["dram_bytes_per_cycle"] == 4);
  CHECK(doc["inputs"]["sram"]["mode"] == "auto");
  CHECK(doc["inputs"]["sram"]["ifm_bytes"] == 3211264);

  CHECK(doc["results"]["bandwidth_bytes"] == 17896640);
  CHECK(doc["results"]["latency_cycles"] == 11429336);
  CHECK(doc["results"]["energy_nj_x100"] == 2246534176);
  CHECK(doc["results"]["energy_mj"] == "22.46534176");
  CHECK(doc["results"]["area_um2_x100"] == 3640729600);
  CHECK(doc["results"]["area_um2"] == "36407296.00");
  CHECK(doc["results"]["latency"]["weight_read_cycles"] == 3677616);
  CHECK(doc["results"]["latency"]["compute_cycles"] == 6953376);
  CHECK(doc["results"]["latency"]["pipeline_cycles"] == 1800);
  CHECK(doc["results"]["latency"]["group_io_cycles"] == 796544);
  CHECK(doc["results"]["energy"]["dram"]["count"] == 17896640);
  CHECK(doc["results"]["energy"]["dram"]["nj_x100"] == 1789664000);
  CHECK(doc["results"]["area"]["pe_blocks_um2_x100"] == 128000000);

  REQUIRE(doc["per_group"].size() == 5);
  CHECK(doc["per_group"][0]["layers"] == document({0, 3}));
  CHECK(doc["per_group"][0]["bandwidth_bytes"] == 991936);
  CHECK_FALSE(doc.contains("feasibility"));

  // Integers and strings only: floating-point never reaches a document.
  CHECK(count_scalars(doc) > 50);
  const std::function<void(const document&)> no_floats = [&](const document& node) {
    CHECK_FALSE(node.is_number_float());
    if (node.is_object() || node.is_array())
      for (const auto& child : node) no_floats(child);
  };
  no_floats(doc);
}

TEST_CASE("evaluate document includes feasibility only when caps are given") {
  EvaluationOutcome outcome = sample_evaluation();
  const SramSizes caps{1000000, 2359296, 1000000};
  outcome.caps_given = true;
  outcome.report = evaluate(vgg(), outcome.grouping, outcome.config, outcome.tech, caps);
  outcome.feasibility = check_feasibility(vgg(), outcome.grouping, caps);
  const document doc = to_document(outcome);
  CHECK(doc["inputs"]["sram"]["mode"] == "caps");
  CHECK(doc["feasibility"]["feasible"] == false);
  CHECK(doc["feasibility"]["requirement"] == "intermediate output");
  CHECK(doc["feasibility"]["required_bytes"] == 3211264);
  CHECK(doc["feasibility"]["available_bytes"] == 1000000);
}

TEST_CASE("compare document reports reductions as tenths strings") {
  ComparisonOutcome outcome;
  outcome.model = {"builtin:vgg16", vgg().name, vgg().layer_count(), 1};
  outcome.grouping_selector = "pool";
  outcome.grouping = pool_delimited(vgg());
  outcome.config = kB4444;
  outcome.tech = TechParams{};
  outcome.result = compare(vgg(), outcome.grouping, outcome.config, outcome.tech);

  const document doc = to_document(outcome);
  CHECK(doc["schema"] == "fusecost.compare.v1");
  CHECK(doc["results"]["fused"]["energy_nj_x100"] == 2246534176);
  CHECK(doc["results"]["baseline"]["energy_nj_x100"] == 4956038176);
  CHECK(doc["reductions"]["bandwidth"]["percent"] == "60.2");
  CHECK(doc["reductions"]["latency"]["percent"] == "37.2");
  CHECK(doc["reductions"]["energy"]["percent"] == "54.7");
  CHECK(doc["reductions"]["bandwidth"]["baseline"] == 44991680);
  CHECK(doc["reductions"]["bandwidth"]["fused"] == 17896640);
  CHECK(doc["reductions"]["bandwidth"]["numerator"] == 44991680 - 17896640);
  REQUIRE(doc["per_group"].size() == 5);
  CHECK(doc["per_group"][0]["fused_energy_nj_x100"] == 238466688);
  CHECK(doc["per_group"][0]["baseline_energy_nj_x100"] == 1522972288);
}

TEST_CASE("explore document totals, best block and record detail levels") {
  const ExplorationOutcome outcome = sample_exploration(survey_limits());

  const document none = to_document(outcome, RecordDetail::None);
  CHECK(none["schema"] == "fusecost.explore.v1");
  CHECK(none["inputs"]["grouping_mode"] == "pool");
  CHECK(none["inputs"]["config_set"].size() == 4);
  CHECK(none["inputs"]["constraints"]["max_latency_cycles"] == 12000000);
  CHECK(none["totals"] ==
        document({{"candidates", 4}, {"groupings", 1}, {"feasible", 4}, {"passing", 1}}));
  CHECK(none["best"]["index"] == 1);
  CHECK(none["best"]["config"]["f"] == document({4, 4, 4, 4}));
  CHECK(none["best"]["results"]["energy_nj_x100"] == 2246534176);
  CHECK_FALSE(none.contains("records"));

  const document failures = to_document(outcome, RecordDetail::Failures);
  REQUIRE(failures["records"].size() == 3);  // the single passing candidate is omitted
  CHECK(failures["records"][0]["index"] == 0);
  CHECK(failures["records"][0]["violations"][0]["metric"] == "latency_cycles");
  CHECK(failures["records"][0]["violations"][0]["value"] == 111633080);
  CHECK(failures["records"][0]["passes"] == false);

  const document full = to_document(outcome, RecordDetail::Full);
  REQUIRE(full["records"].size() == 4);
  CHECK(full["records"][1]["passes"] == true);
  CHECK(full["records"][1]["energy_nj_x100"] == 2246534176);
  CHECK(full["records"][1]["feasible"] == true);
  CHECK_FALSE(full["records"][1].contains("feasibility"));

  // Unconstrained inputs serialize as an empty constraints object.
  const ExplorationOutcome open = sample_exploration(Constraints{});
  const document open_doc = to_document(open, RecordDetail::None);
  CHECK(open_doc["inputs"]["constraints"] == document::object());

  // No survivor: best is null.
  Constraints impossible;
  impossible.max_area_cum2 = 0;
  const document none_best = to_document(sample_exploration(impossible), RecordDetail::None);
  CHECK(none_best["best"].is_null());
  CHECK(none_best["totals"]["passing"] == 0);
}

TEST_CASE("serialization is deterministic and newline-terminated") {
  const EvaluationOutcome outcome = sample_evaluation();
  const std::string a = to_json_text(to_document(outcome));
  const std::string b = to_json_text(to_document(outcome));
  CHECK(a == b);
  CHECK(a.back() == '\n');
  CHECK(a.substr(0, 2) == "{\n");

  const ExplorationOutcome sweep = sample_exploration(survey_limits());
  CHECK(to_json_text(to_document(sweep, RecordDetail::Full)) ==
        to_json_text(to_document(sweep, RecordDetail::Full)));
  CHECK(to_csv_text(to_document(sweep, RecordDetail::Full)) ==
        to_csv_text(to_document(sweep, RecordDetail::Full)));
}

TEST_CASE("CSV rows mirror the JSON document value for value") {
  const std::vector<document> docs = {
      to_document(sample_evaluation()),
      to_document(sample_exploration(survey_limits()), RecordDetail::Full),
  };
  for (const document& doc : docs) {
    const auto rows = parse_csv(to_csv_text(doc));
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0] == std::pair<std::string, std::string>{"key", "value"});
    CHECK(rows.size() - 1 == count_scalars(doc));
    for (size_t i = 1; i < rows.size(); ++i) {
      const document* node = resolve_path(doc, rows[i].first);
      REQUIRE_MESSAGE(node != nullptr, rows[i].first);
      if (node->is_string())
        CHECK(rows[i].second == node->get<std::string>());
      else
        CHECK(rows[i].second == node->dump());
    }
  }
}

TEST_CASE("CSV quoting survives commas and quotes in values") {
  document doc;
  doc["name"] = "a,b";
  doc["quote"] = "say \"hi\"";
  doc["plain"] = 7;
  const std::string csv = to_csv_text(doc);
  CHECK(csv == "key,value\nname,\"a,b\"\nquote,\"say \"\"hi\"\"\"\nplain,7\n");
  const auto rows = parse_csv(csv);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].second == "a,b");
  CHECK(rows[2].second == "say \"hi\"");
}
