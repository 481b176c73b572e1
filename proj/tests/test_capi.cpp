// Exercises the shared-library surface exactly as an external C client
// would: only fusecost.h, no internal headers.
#include <doctest.h>

#include <fusecost.h>

#include <cstring>
#include <string>

namespace {

struct ModelGuard {
  fc_model* ptr = nullptr;
  ~ModelGuard() { fc_model_free(ptr); }
};
struct GroupingGuard {
  fc_grouping* ptr = nullptr;
  ~GroupingGuard() { fc_grouping_free(ptr); }
};
struct ReportGuard {
  fc_report* ptr = nullptr;
  ~ReportGuard() { fc_report_free(ptr); }
};
struct TextGuard {
  char* ptr = nullptr;
  ~TextGuard() { fc_string_free(ptr); }
};
struct ConfigsGuard {
  fc_hw_config* ptr = nullptr;
  size_t count = 0;
  ~ConfigsGuard() { fc_configs_free(ptr); }
};

fc_hw_config uniform(uint32_t f) { return {FC_ARCH_BLOCKWISE, f, f, f, f}; }

}  // namespace

TEST_CASE("builtin model evaluates to the frozen trunk totals") {
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);
  CHECK(fc_model_layer_count(model.ptr) == 18);
  CHECK(std::string(fc_model_name(model.ptr)) == "vgg16");

  GroupingGuard grouping;
  REQUIRE(fc_grouping_pool_delimited(model.ptr, &grouping.ptr) == FC_OK);
  CHECK(fc_grouping_group_count(grouping.ptr) == 5);

  const fc_hw_config config = uniform(4);
  ReportGuard report;
  REQUIRE(fc_evaluate(model.ptr, grouping.ptr, &config, nullptr, nullptr, &report.ptr) == FC_OK);
  CHECK(fc_report_best_found(report.ptr) == 1);

  uint64_t bandwidth = 0, latency = 0, energy = 0, area = 0;
  REQUIRE(fc_report_totals(report.ptr, &bandwidth, &latency, &energy, &area) == FC_OK);
  CHECK(bandwidth == 17896640);
  CHECK(latency == 11429336);
  CHECK(energy == 2246534176);
  CHECK(area == 3640729600);

  // Null out-pointers are allowed.
  CHECK(fc_report_totals(report.ptr, nullptr, nullptr, &energy, nullptr) == FC_OK);
}

TEST_CASE("emitted model text parses back to an equivalent model") {
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);
  TextGuard text;
  REQUIRE(fc_model_emit(model.ptr, &text.ptr) == FC_OK);
  REQUIRE(text.ptr != nullptr);

  ModelGuard reparsed;
  REQUIRE(fc_model_from_text(text.ptr, &reparsed.ptr) == FC_OK);
  CHECK(fc_model_layer_count(reparsed.ptr) == 18);
  TextGuard again;
  REQUIRE(fc_model_emit(reparsed.ptr, &again.ptr) == FC_OK);
  CHECK(std::string(text.ptr) == again.ptr);  // emission is a fixed point

  // Equivalent models produce identical reports.
  GroupingGuard g1, g2;
  REQUIRE(fc_grouping_pool_delimited(model.ptr, &g1.ptr) == FC_OK);
  REQUIRE(fc_grouping_pool_delimited(reparsed.ptr, &g2.ptr) == FC_OK);
  const fc_hw_config config = uniform(4);
  ReportGuard r1, r2;
  REQUIRE(fc_evaluate(model.ptr, g1.ptr, &config, nullptr, nullptr, &r1.ptr) == FC_OK);
  REQUIRE(fc_evaluate(reparsed.ptr, g2.ptr, &config, nullptr, nullptr, &r2.ptr) == FC_OK);
  TextGuard j1, j2;
  REQUIRE(fc_report_to_json(r1.ptr, FC_RECORDS_NONE, &j1.ptr) == FC_OK);
  REQUIRE(fc_report_to_json(r2.ptr, FC_RECORDS_NONE, &j2.ptr) == FC_OK);
  // Only the model-source echo may differ between the builtin and the
  // reparsed copy; every computed field must match.
  std::string doc1(j1.ptr);
  const std::string builtin_source = "\"source\": \"builtin:vgg16\"";
  const auto at = doc1.find(builtin_source);
  REQUIRE(at != std::string::npos);
  doc1.replace(at, builtin_source.size(), "\"source\": \"inline\"");
  CHECK(doc1 == j2.ptr);
}

TEST_CASE("failures set a status, keep out-params untouched and explain") {
  ModelGuard model;
  fc_model* sentinel = reinterpret_cast<fc_model*>(&model);
  model.ptr = nullptr;

  fc_model* out = sentinel;
  CHECK(fc_model_builtin("resnet50", &out) == FC_ERROR_INVALID_ARGUMENT);
  CHECK(out == sentinel);  // untouched on failure
  CHECK(std::strlen(fc_last_error()) > 0);

  CHECK(fc_model_from_text("{not json", &out) == FC_ERROR_MALFORMED_DOCUMENT);
  CHECK(fc_model_from_text("{\"layers\": 3}", &out) == FC_ERROR_SCHEMA_VIOLATION);
  CHECK(fc_model_from_file("/nonexistent/model.json", &out) == FC_ERROR_IO);

  // A 1x1 input cannot survive an unpadded 3x3 kernel.
  const char* degenerate =
      "{\"name\": \"tiny\", \"input\": {\"channels\": 1, \"height\": 1, \"width\": 1},"
      " \"layers\": [{\"type\": \"conv\", \"out_channels\": 1, \"kernel\": [3, 3],"
      " \"stride\": [1, 1], \"padding\": [0, 0]}]}";
  CHECK(fc_model_from_text(degenerate, &out) == FC_ERROR_DEGENERATE_SHAPE);
  CHECK(std::strlen(fc_last_error()) > 0);

  CHECK(fc_status_name(FC_OK) == std::string("ok"));
  CHECK(fc_status_name(FC_ERROR_DEGENERATE_SHAPE) == std::string("degenerate_shape"));
}

TEST_CASE("grouping constructors enforce the pool rule through the API") {
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);

  GroupingGuard pool_grouping;
  const uint32_t pool_ends[] = {3, 6, 10, 14};
  REQUIRE(fc_grouping_from_ends(model.ptr, pool_ends, 4, &pool_grouping.ptr) == FC_OK);
  CHECK(fc_grouping_group_count(pool_grouping.ptr) == 5);

  GroupingGuard whole;
  REQUIRE(fc_grouping_from_ends(model.ptr, nullptr, 0, &whole.ptr) == FC_OK);
  CHECK(fc_grouping_group_count(whole.ptr) == 1);

  fc_grouping* out = nullptr;
  const uint32_t before_pool[] = {2};  // layer 2 is a pool
  CHECK(fc_grouping_from_ends(model.ptr, before_pool, 1, &out) == FC_ERROR_INVALID_GROUPING);
  CHECK(out == nullptr);
  const uint32_t too_far[] = {40};
  CHECK(fc_grouping_from_ends(model.ptr, too_far, 1, &out) == FC_ERROR_INVALID_GROUPING);

  GroupingGuard baseline;
  REQUIRE(fc_grouping_layer_by_layer(model.ptr, &baseline.ptr) == FC_OK);
  CHECK(fc_grouping_group_count(baseline.ptr) == 18);
}

TEST_CASE("invalid configs and empty config sets are rejected") {
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);
  GroupingGuard grouping;
  REQUIRE(fc_grouping_pool_delimited(model.ptr, &grouping.ptr) == FC_OK);

  fc_hw_config zero = uniform(4);
  zero.f2 = 0;
  fc_report* out = nullptr;
  CHECK(fc_evaluate(model.ptr, grouping.ptr, &zero, nullptr, nullptr, &out) ==
        FC_ERROR_INVALID_CONFIG);
  CHECK(out == nullptr);

  const fc_hw_config config = uniform(4);
  CHECK(fc_explore(model.ptr, &config, 0, FC_GROUPINGS_POOL_DELIMITED, nullptr, nullptr, nullptr,
                   nullptr, 0, &out) == FC_ERROR_EMPTY_CONFIG_SET);
  CHECK(fc_explore(model.ptr, &config, 1, FC_GROUPINGS_ALL_CONTIGUOUS, nullptr, nullptr, nullptr,
                   nullptr, 4095, &out) == FC_ERROR_TOO_MANY_GROUPINGS);
}

TEST_CASE("tech parameter defaults, JSON overrides and quantization") {
  const fc_tech_params defaults = fc_tech_defaults();
  CHECK(defaults.e_dram_nj == 1.0);
  CHECK(defaults.e_sram_nj == 0.1);
  CHECK(defaults.e_pe_nj == 0.01);
  CHECK(defaults.a_pe_blockwise_um2 == 5000.0);
  CHECK(defaults.a_pe_vectorwise_um2 == 600.0);
  CHECK(defaults.a_sram_per_byte_um2 == 4.0);
  CHECK(defaults.dram_bytes_per_cycle == 4);
  CHECK(defaults.t_pl_cycles == 100);

  fc_tech_params tech = defaults;
  REQUIRE(fc_tech_apply_text("{\"e_dram\": 2.5, \"t_pl\": 40}", &tech) == FC_OK);
  CHECK(tech.e_dram_nj == 2.5);
  CHECK(tech.t_pl_cycles == 40);
  CHECK(tech.e_sram_nj == 0.1);  // untouched keys keep their values

  REQUIRE(fc_tech_apply_text("{\"tech\": {\"dram_bytes_per_cycle\": 8}}", &tech) == FC_OK);
  CHECK(tech.dram_bytes_per_cycle == 8);

  CHECK(fc_tech_apply_text("{\"e_dram\": -1}", &tech) == FC_ERROR_SCHEMA_VIOLATION);
  CHECK(fc_tech_apply_text("{\"volts\": 3}", &tech) == FC_ERROR_SCHEMA_VIOLATION);
  CHECK(fc_tech_apply_text("not json", &tech) == FC_ERROR_MALFORMED_DOCUMENT);

  // Doubled DRAM energy doubles the DRAM term exactly.
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);
  GroupingGuard grouping;
  REQUIRE(fc_grouping_pool_delimited(model.ptr, &grouping.ptr) == FC_OK);
  const fc_hw_config config = uniform(4);
  fc_tech_params doubled = fc_tech_defaults();
  doubled.e_dram_nj = 2.0;
  ReportGuard report;
  REQUIRE(fc_evaluate(model.ptr, grouping.ptr, &config, &doubled, nullptr, &report.ptr) == FC_OK);
  uint64_t energy = 0;
  REQUIRE(fc_report_totals(report.ptr, nullptr, nullptr, &energy, nullptr) == FC_OK);
  CHECK(energy == 2246534176 + 1789664000);
}

TEST_CASE("config sets parse from JSON and enumerate defaults") {
  ConfigsGuard defaults;
  REQUIRE(fc_config_set_default(FC_ARCH_BLOCKWISE, &defaults.ptr, &defaults.count) == FC_OK);
  CHECK(defaults.count == 256);
  ConfigsGuard vec;
  REQUIRE(fc_config_set_default(FC_ARCH_VECTORWISE, &vec.ptr, &vec.count) == FC_OK);
  CHECK(vec.count == 64);
  for (size_t i = 0; i < vec.count; ++i) CHECK(vec.ptr[i].f3 == 3);

  const char* text =
      "{\"configs\": [{\"f\": [4, 4, 4, 4]},"
      " {\"arch\": \"vectorwise\", \"f\": [8, 2, 1, 16]}],"
      " \"tech\": {\"e_pe\": 0.02}}";
  ConfigsGuard parsed;
  fc_tech_params tech = fc_tech_defaults();
  REQUIRE(fc_config_set_from_text(text, FC_ARCH_BLOCKWISE, &parsed.ptr, &parsed.count, &tech) ==
          FC_OK);
  REQUIRE(parsed.count == 2);
  CHECK(parsed.ptr[0].arch == FC_ARCH_BLOCKWISE);
  CHECK(parsed.ptr[0].f1 == 4);
  CHECK(parsed.ptr[1].arch == FC_ARCH_VECTORWISE);
  CHECK(parsed.ptr[1].f3 == 3);  // pinned regardless of the declared value
  CHECK(tech.e_pe_nj == 0.02);

  fc_hw_config* bad = nullptr;
  size_t bad_count = 0;
  CHECK(fc_config_set_from_text("{\"configs\": []}", FC_ARCH_BLOCKWISE, &bad, &bad_count,
                                nullptr) == FC_ERROR_SCHEMA_VIOLATION);
  CHECK(fc_config_set_from_text("{\"configs\": [{\"f\": [0, 1, 1, 1]}]}", FC_ARCH_BLOCKWISE, &bad,
                                &bad_count, nullptr) == FC_ERROR_SCHEMA_VIOLATION);
}

TEST_CASE("compare reports both points and explore selects the winner") {
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);
  GroupingGuard grouping;
  REQUIRE(fc_grouping_pool_delimited(model.ptr, &grouping.ptr) == FC_OK);
  const fc_hw_config config = uniform(4);

  ReportGuard comparison;
  REQUIRE(fc_compare(model.ptr, grouping.ptr, &config, nullptr, nullptr, &comparison.ptr) ==
          FC_OK);
  uint64_t energy = 0;
  REQUIRE(fc_report_totals(comparison.ptr, nullptr, nullptr, &energy, nullptr) == FC_OK);
  CHECK(energy == 2246534176);  // headline totals are the fused point
  TextGuard json;
  REQUIRE(fc_report_to_json(comparison.ptr, FC_RECORDS_NONE, &json.ptr) == FC_OK);
  CHECK(std::string(json.ptr).find("\"percent\": \"54.7\"") != std::string::npos);

  fc_hw_config sweep[4];
  for (uint32_t i = 0; i < 4; ++i) sweep[i] = uniform(2u << i);
  fc_constraints constraints = {};
  constraints.has_max_latency = 1;
  constraints.max_latency_cycles = 12000000;
  constraints.has_max_energy = 1;
  constraints.max_energy_nj = 65000000.0;
  constraints.has_max_area = 1;
  constraints.max_area_um2 = 45000000.0;
  constraints.has_max_bandwidth = 1;
  constraints.max_bandwidth_bytes = 20000000;

  ReportGuard sweep_report;
  REQUIRE(fc_explore(model.ptr, sweep, 4, FC_GROUPINGS_POOL_DELIMITED, nullptr, &constraints,
                     nullptr, nullptr, 0, &sweep_report.ptr) == FC_OK);
  CHECK(fc_report_best_found(sweep_report.ptr) == 1);
  uint64_t best_energy = 0, best_area = 0;
  REQUIRE(fc_report_totals(sweep_report.ptr, nullptr, nullptr, &best_energy, &best_area) ==
          FC_OK);
  CHECK(best_energy == 2246534176);
  CHECK(best_area == 3640729600);

  // With no survivor, best_found is 0 and totals become an error.
  fc_constraints impossible = {};
  impossible.has_max_area = 1;
  impossible.max_area_um2 = 0.0;
  ReportGuard empty;
  REQUIRE(fc_explore(model.ptr, sweep, 4, FC_GROUPINGS_POOL_DELIMITED, nullptr, &impossible,
                     nullptr, nullptr, 0, &empty.ptr) == FC_OK);
  CHECK(fc_report_best_found(empty.ptr) == 0);
  uint64_t unused = 0;
  CHECK(fc_report_totals(empty.ptr, &unused, nullptr, nullptr, nullptr) ==
        FC_ERROR_INVALID_ARGUMENT);

  // A fixed grouping overrides the mode.
  ReportGuard fixed;
  REQUIRE(fc_explore(model.ptr, sweep, 4, FC_GROUPINGS_ALL_CONTIGUOUS, grouping.ptr, nullptr,
                     nullptr, nullptr, 0, &fixed.ptr) == FC_OK);
  TextGuard fixed_json;
  REQUIRE(fc_report_to_json(fixed.ptr, FC_RECORDS_NONE, &fixed_json.ptr) == FC_OK);
  CHECK(std::string(fixed_json.ptr).find("\"groupings\": 1") != std::string::npos);
}

TEST_CASE("report serializations are deterministic and CSV mirrors JSON") {
  ModelGuard model;
  REQUIRE(fc_model_builtin("vgg16", &model.ptr) == FC_OK);
  GroupingGuard grouping;
  REQUIRE(fc_grouping_pool_delimited(model.ptr, &grouping.ptr) == FC_OK);
  const fc_hw_config config = uniform(4);
  ReportGuard report;
  REQUIRE(fc_evaluate(model.ptr, grouping.ptr, &config, nullptr, nullptr, &report.ptr) == FC_OK);

  TextGuard a, b, csv;
  REQUIRE(fc_report_to_json(report.ptr, FC_RECORDS_NONE, &a.ptr) == FC_OK);
  REQUIRE(fc_report_to_json(report.ptr, FC_RECORDS_NONE, &b.ptr) == FC_OK);
  CHECK(std::string(a.ptr) == b.ptr);
  REQUIRE(fc_report_to_csv(report.ptr, FC_RECORDS_NONE, &csv.ptr) == FC_OK);
  const std::string csv_text = csv.ptr;
  CHECK(csv_text.substr(0, 10) == "key,value\n");
  CHECK(csv_text.find("results.energy_nj_x100,2246534176") != std::string::npos);
  CHECK(csv_text.find("results.energy_mj,22.46534176") != std::string::npos);
  CHECK(csv_text.find("inputs.config.f[2],4") != std::string::npos);
}
