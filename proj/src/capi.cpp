// capi.cpp - the extern-C boundary: opaque handles over the C++ core,
// exception-to-status mapping and a thread-local last-error message.
#include "fusecost.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "configio.hpp"
#include "costmodel.hpp"
#include "errors.hpp"
#include "explorer.hpp"
#include "fixedpoint.hpp"
#include "fusion.hpp"
#include "hwmodel.hpp"
#include "netmodel.hpp"
#include "report.hpp"

struct fc_model {
  fusecost::NetworkModel model;
  std::string source;
};

struct fc_grouping {
  fusecost::FusionGrouping grouping;
  std::string selector;
};

struct fc_report {
  fusecost::ReportPayload payload;
};

namespace {

using namespace fusecost;

thread_local std::string t_last_error;

fc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return FC_ERROR_INVALID_ARGUMENT;
    case ErrorCode::MalformedDocument: return FC_ERROR_MALFORMED_DOCUMENT;
    case ErrorCode::SchemaViolation: return FC_ERROR_SCHEMA_VIOLATION;
    case ErrorCode::DegenerateShape: return FC_ERROR_DEGENERATE_SHAPE;
    case ErrorCode::InvalidGrouping: return FC_ERROR_INVALID_GROUPING;
    case ErrorCode::InvalidConfig: return FC_ERROR_INVALID_CONFIG;
    case ErrorCode::EmptyConfigSet: return FC_ERROR_EMPTY_CONFIG_SET;
    case ErrorCode::TooManyGroupings: return FC_ERROR_TOO_MANY_GROUPINGS;
    case ErrorCode::Io: return FC_ERROR_IO;
    case ErrorCode::Internal: return FC_ERROR_INTERNAL;
  }
  return FC_ERROR_INTERNAL;
}

fc_status fail(fc_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes + last-error text.
template <typename Fn>
fc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(FC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(FC_ERROR_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

Arch arch_of(fc_arch arch) {
  if (arch != FC_ARCH_BLOCKWISE && arch != FC_ARCH_VECTORWISE)
    throw Error(ErrorCode::InvalidArgument, "unknown arch enumerator");
  return arch == FC_ARCH_BLOCKWISE ? Arch::Blockwise3x3 : Arch::Vectorwise;
}

fc_arch arch_back(Arch arch) {
  return arch == Arch::Blockwise3x3 ? FC_ARCH_BLOCKWISE : FC_ARCH_VECTORWISE;
}

HardwareConfig config_of(const fc_hw_config& config) {
  return HardwareConfig::make(arch_of(config.arch), config.f1, config.f2, config.f3, config.f4);
}

fc_hw_config config_back(const HardwareConfig& config) {
  return {arch_back(config.arch), config.f1, config.f2, config.f3, config.f4};
}

TechParams tech_of(const fc_tech_params* tech) {
  if (tech == nullptr) return {};
  TechParams core;
  core.dram_energy_cnj = centi_from_double(tech->e_dram_nj, "e_dram_nj");
  core.sram_energy_cnj = centi_from_double(tech->e_sram_nj, "e_sram_nj");
  core.pe_energy_cnj = centi_from_double(tech->e_pe_nj, "e_pe_nj");
  core.pe_area_blockwise_cum2 = centi_from_double(tech->a_pe_blockwise_um2, "a_pe_blockwise_um2");
  core.pe_area_vectorwise_cum2 =
      centi_from_double(tech->a_pe_vectorwise_um2, "a_pe_vectorwise_um2");
  core.sram_area_cum2_per_byte =
      centi_from_double(tech->a_sram_per_byte_um2, "a_sram_per_byte_um2");
  core.dram_bytes_per_cycle = tech->dram_bytes_per_cycle;
  core.pipeline_latency_cycles = tech->t_pl_cycles;
  core.validate();
  return core;
}

fc_tech_params tech_back(const TechParams& core) {
  fc_tech_params tech;
  tech.e_dram_nj = static_cast<double>(core.dram_energy_cnj) / 100.0;
  tech.e_sram_nj = static_cast<double>(core.sram_energy_cnj) / 100.0;
  tech.e_pe_nj = static_cast<double>(core.pe_energy_cnj) / 100.0;
  tech.a_pe_blockwise_um2 = static_cast<double>(core.pe_area_blockwise_cum2) / 100.0;
  tech.a_pe_vectorwise_um2 = static_cast<double>(core.pe_area_vectorwise_cum2) / 100.0;
  tech.a_sram_per_byte_um2 = static_cast<double>(core.sram_area_cum2_per_byte) / 100.0;
  tech.dram_bytes_per_cycle = core.dram_bytes_per_cycle;
  tech.t_pl_cycles = core.pipeline_latency_cycles;
  return tech;
}

std::optional<SramSizes> caps_of(const fc_sram_caps* caps) {
  if (caps == nullptr) return std::nullopt;
  return SramSizes{caps->ifm_bytes, caps->wb_bytes, caps->ofm_bytes};
}

Constraints constraints_of(const fc_constraints* constraints) {
  Constraints core;
  if (constraints == nullptr) return core;
  if (constraints->has_max_bandwidth)
    core.max_bandwidth_bytes = constraints->max_bandwidth_bytes;
  if (constraints->has_max_latency) core.max_latency_cycles = constraints->max_latency_cycles;
  if (constraints->has_max_energy)
    core.max_energy_cnj = centi_from_double(constraints->max_energy_nj, "max_energy_nj");
  if (constraints->has_max_area)
    core.max_area_cum2 = centi_from_double(constraints->max_area_um2, "max_area_um2");
  return core;
}

ModelEcho echo_of(const fc_model& model) {
  return {model.source, model.model.name, model.model.layer_count(),
          model.model.bytes_per_element};
}

void require(bool condition, const char* message) {
  if (!condition) throw Error(ErrorCode::InvalidArgument, message);
}

RecordDetail detail_of(fc_record_detail detail) {
  switch (detail) {
    case FC_RECORDS_NONE: return RecordDetail::None;
    case FC_RECORDS_FAILURES: return RecordDetail::Failures;
    case FC_RECORDS_FULL: return RecordDetail::Full;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown record detail enumerator");
}

fc_status make_model(NetworkModel&& parsed, std::string source, fc_model** out_model) {
  *out_model = new fc_model{resolve_shapes(parsed), std::move(source)};
  return FC_OK;
}

}  // namespace

extern "C" {

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case FC_ERROR_MALFORMED_DOCUMENT: return "malformed_document";
    case FC_ERROR_SCHEMA_VIOLATION: return "schema_violation";
    case FC_ERROR_DEGENERATE_SHAPE: return "degenerate_shape";
    case FC_ERROR_INVALID_GROUPING: return "invalid_grouping";
    case FC_ERROR_INVALID_CONFIG: return "invalid_config";
    case FC_ERROR_EMPTY_CONFIG_SET: return "empty_config_set";
    case FC_ERROR_TOO_MANY_GROUPINGS: return "too_many_groupings";
    case FC_ERROR_IO: return "io_error";
    case FC_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* fc_last_error(void) { return t_last_error.c_str(); }

void fc_string_free(char* text) { std::free(text); }

fc_status fc_model_from_text(const char* text, fc_model** out_model) {
  return guarded([&] {
    require(text != nullptr && out_model != nullptr, "null argument");
    return make_model(parse_network(text), "inline", out_model);
  });
}

fc_status fc_model_from_file(const char* path, fc_model** out_model) {
  return guarded([&] {
    require(path != nullptr && out_model != nullptr, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, std::string("cannot open model file '") + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
      throw Error(ErrorCode::Io, std::string("cannot read model file '") + path + "'");
    return make_model(parse_network(buffer.str()), path, out_model);
  });
}

fc_status fc_model_builtin(const char* name, fc_model** out_model) {
  return guarded([&]() -> fc_status {
    require(name != nullptr && out_model != nullptr, "null argument");
    if (std::string_view(name) != "vgg16")
      throw Error(ErrorCode::InvalidArgument,
                  std::string("unknown builtin model '") + name + "' (available: vgg16)");
    *out_model = new fc_model{build_vgg16(), "builtin:vgg16"};
    return FC_OK;
  });
}

fc_status fc_model_emit(const fc_model* model, char** out_text) {
  return guarded([&] {
    require(model != nullptr && out_text != nullptr, "null argument");
    *out_text = copy_string(emit_network(model->model));
    return FC_OK;
  });
}

uint32_t fc_model_layer_count(const fc_model* model) {
  return model == nullptr ? 0 : model->model.layer_count();
}

const char* fc_model_name(const fc_model* model) {
  return model == nullptr ? "" : model->model.name.c_str();
}

void fc_model_free(fc_model* model) { delete model; }

fc_status fc_grouping_layer_by_layer(const fc_model* model, fc_grouping** out_grouping) {
  return guarded([&] {
    require(model != nullptr && out_grouping != nullptr, "null argument");
    *out_grouping = new fc_grouping{layer_by_layer(model->model), "layer"};
    return FC_OK;
  });
}

fc_status fc_grouping_pool_delimited(const fc_model* model, fc_grouping** out_grouping) {
  return guarded([&] {
    require(model != nullptr && out_grouping != nullptr, "null argument");
    *out_grouping = new fc_grouping{pool_delimited(model->model), "pool"};
    return FC_OK;
  });
}

fc_status fc_grouping_from_ends(const fc_model* model, const uint32_t* ends, size_t count,
                                fc_grouping** out_grouping) {
  return guarded([&] {
    require(model != nullptr && out_grouping != nullptr, "null argument");
    require(ends != nullptr || count == 0, "null ends with non-zero count");
    FusionGrouping grouping =
        FusionGrouping::from_boundaries(model->model, std::span<const uint32_t>(ends, count));
    // Canonical selector: the internal boundaries actually in effect.
    std::string selector = "explicit:";
    const auto& groups = grouping.groups();
    for (size_t i = 0; i + 1 < groups.size(); ++i) {
      if (i > 0) selector += ',';
      selector += std::to_string(groups[i].last);
    }
    *out_grouping = new fc_grouping{std::move(grouping), std::move(selector)};
    return FC_OK;
  });
}

uint32_t fc_grouping_group_count(const fc_grouping* grouping) {
  return grouping == nullptr ? 0 : grouping->grouping.group_count();
}

void fc_grouping_free(fc_grouping* grouping) { delete grouping; }

fc_tech_params fc_tech_defaults(void) { return tech_back(TechParams{}); }

fc_status fc_tech_apply_text(const char* text, fc_tech_params* tech) {
  return guarded([&] {
    require(text != nullptr && tech != nullptr, "null argument");
    *tech = tech_back(parse_tech_overrides(text, tech_of(tech)));
    return FC_OK;
  });
}

fc_status fc_config_set_from_text(const char* text, fc_arch default_arch,
                                  fc_hw_config** out_configs, size_t* out_count,
                                  fc_tech_params* tech) {
  return guarded([&] {
    require(text != nullptr && out_configs != nullptr && out_count != nullptr, "null argument");
    const TechParams base = tech != nullptr ? tech_of(tech) : TechParams{};
    const ConfigSetFile file = parse_config_set(text, arch_of(default_arch), base);
    auto* configs =
        static_cast<fc_hw_config*>(std::malloc(sizeof(fc_hw_config) * file.configs.size()));
    if (configs == nullptr) throw std::bad_alloc();
    for (size_t i = 0; i < file.configs.size(); ++i) configs[i] = config_back(file.configs[i]);
    *out_configs = configs;
    *out_count = file.configs.size();
    if (tech != nullptr && file.has_tech) *tech = tech_back(file.tech);
    return FC_OK;
  });
}

fc_status fc_config_set_default(fc_arch arch, fc_hw_config** out_configs, size_t* out_count) {
  return guarded([&] {
    require(out_configs != nullptr && out_count != nullptr, "null argument");
    const std::vector<HardwareConfig> set = default_config_set(arch_of(arch));
    auto* configs = static_cast<fc_hw_config*>(std::malloc(sizeof(fc_hw_config) * set.size()));
    if (configs == nullptr) throw std::bad_alloc();
    for (size_t i = 0; i < set.size(); ++i) configs[i] = config_back(set[i]);
    *out_configs = configs;
    *out_count = set.size();
    return FC_OK;
  });
}

void fc_configs_free(fc_hw_config* configs) { std::free(configs); }

fc_status fc_evaluate(const fc_model* model, const fc_grouping* grouping,
                      const fc_hw_config* config, const fc_tech_params* tech,
                      const fc_sram_caps* caps, fc_report** out_report) {
  return guarded([&] {
    require(model != nullptr && grouping != nullptr && config != nullptr &&
                out_report != nullptr,
            "null argument");
    EvaluationOutcome outcome;
    outcome.model = echo_of(*model);
    outcome.grouping_selector = grouping->selector;
    outcome.grouping = grouping->grouping;
    outcome.config = config_of(*config);
    outcome.tech = tech_of(tech);
    outcome.caps_given = caps != nullptr;
    const std::optional<SramSizes> core_caps = caps_of(caps);
    outcome.report =
        evaluate(model->model, outcome.grouping, outcome.config, outcome.tech, core_caps);
    if (core_caps)
      outcome.feasibility = check_feasibility(model->model, outcome.grouping, *core_caps);
    *out_report = new fc_report{ReportPayload(std::move(outcome))};
    return FC_OK;
  });
}

fc_status fc_compare(const fc_model* model, const fc_grouping* grouping,
                     const fc_hw_config* config, const fc_tech_params* tech,
                     const fc_sram_caps* caps, fc_report** out_report) {
  return guarded([&] {
    require(model != nullptr && grouping != nullptr && config != nullptr &&
                out_report != nullptr,
            "null argument");
    ComparisonOutcome outcome;
    outcome.model = echo_of(*model);
    outcome.grouping_selector = grouping->selector;
    outcome.grouping = grouping->grouping;
    outcome.config = config_of(*config);
    outcome.tech = tech_of(tech);
    outcome.caps_given = caps != nullptr;
    outcome.result =
        compare(model->model, outcome.grouping, outcome.config, outcome.tech, caps_of(caps));
    *out_report = new fc_report{ReportPayload(std::move(outcome))};
    return FC_OK;
  });
}

fc_status fc_explore(const fc_model* model, const fc_hw_config* configs, size_t config_count,
                     fc_grouping_mode mode, const fc_grouping* fixed_grouping,
                     const fc_constraints* constraints, const fc_tech_params* tech,
                     const fc_sram_caps* caps, uint64_t max_groupings, fc_report** out_report) {
  return guarded([&] {
    require(model != nullptr && out_report != nullptr, "null argument");
    require(configs != nullptr || config_count == 0, "null configs with non-zero count");
    std::vector<HardwareConfig> core_configs;
    core_configs.reserve(config_count);
    for (size_t i = 0; i < config_count; ++i) core_configs.push_back(config_of(configs[i]));

    ExplorationOutcome outcome;
    outcome.model = echo_of(*model);
    outcome.constraints = constraints_of(constraints);
    outcome.tech = tech_of(tech);
    const std::optional<SramSizes> core_caps = caps_of(caps);
    outcome.sram = core_caps ? *core_caps : required_sram(model->model);
    outcome.sram_auto = !core_caps;

    if (fixed_grouping != nullptr) {
      outcome.grouping_selector = fixed_grouping->selector;
      std::vector<FusionGrouping> groupings = {fixed_grouping->grouping};
      outcome.result = explore_fixed(model->model, core_configs, std::move(groupings),
                                     outcome.constraints, outcome.tech, core_caps);
    } else {
      if (mode != FC_GROUPINGS_POOL_DELIMITED && mode != FC_GROUPINGS_ALL_CONTIGUOUS)
        throw Error(ErrorCode::InvalidArgument, "unknown grouping mode enumerator");
      const GroupingMode core_mode = mode == FC_GROUPINGS_POOL_DELIMITED
                                         ? GroupingMode::PoolDelimitedOnly
                                         : GroupingMode::AllContiguous;
      outcome.grouping_selector = mode == FC_GROUPINGS_POOL_DELIMITED ? "pool" : "all";
      outcome.result = explore(model->model, core_configs, core_mode, outcome.constraints,
                               outcome.tech, core_caps,
                               max_groupings == 0 ? kDefaultGroupingCap : max_groupings);
    }
    *out_report = new fc_report{ReportPayload(std::move(outcome))};
    return FC_OK;
  });
}

fc_status fc_report_to_json(const fc_report* report, fc_record_detail detail, char** out_text) {
  return guarded([&] {
    require(report != nullptr && out_text != nullptr, "null argument");
    *out_text = copy_string(to_json_text(payload_document(report->payload, detail_of(detail))));
    return FC_OK;
  });
}

fc_status fc_report_to_csv(const fc_report* report, fc_record_detail detail, char** out_text) {
  return guarded([&] {
    require(report != nullptr && out_text != nullptr, "null argument");
    *out_text = copy_string(to_csv_text(payload_document(report->payload, detail_of(detail))));
    return FC_OK;
  });
}

int fc_report_best_found(const fc_report* report) {
  if (report == nullptr) return 0;
  if (const auto* exploration = std::get_if<ExplorationOutcome>(&report->payload))
    return exploration->result.best_index.has_value() ? 1 : 0;
  return 1;
}

fc_status fc_report_totals(const fc_report* report, uint64_t* out_bandwidth_bytes,
                           uint64_t* out_latency_cycles, uint64_t* out_energy_nj_x100,
                           uint64_t* out_area_um2_x100) {
  return guarded([&]() -> fc_status {
    require(report != nullptr, "null argument");
    const CostReport* cost = nullptr;
    if (const auto* evaluation = std::get_if<EvaluationOutcome>(&report->payload))
      cost = &evaluation->report;
    else if (const auto* comparison = std::get_if<ComparisonOutcome>(&report->payload))
      cost = &comparison->result.fused;
    else {
      const auto& exploration = std::get<ExplorationOutcome>(report->payload);
      if (!exploration.result.best_report)
        throw Error(ErrorCode::InvalidArgument, "exploration found no passing candidate");
      cost = &*exploration.result.best_report;
    }
    if (out_bandwidth_bytes != nullptr) *out_bandwidth_bytes = cost->bandwidth_bytes;
    if (out_latency_cycles != nullptr) *out_latency_cycles = cost->latency.total_cycles;
    if (out_energy_nj_x100 != nullptr) *out_energy_nj_x100 = cost->energy.total_cnj;
    if (out_area_um2_x100 != nullptr) *out_area_um2_x100 = cost->area.total_cum2;
    return FC_OK;
  });
}

void fc_report_free(fc_report* report) { delete report; }

}  // extern "C"
