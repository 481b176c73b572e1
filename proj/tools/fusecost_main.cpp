// fusecost_main.cpp - command-line front end over the fusecost C API.
//
// Exit codes: 0 success (for explore: a passing candidate was found),
// 1 exploration finished but nothing satisfied the constraints,
// 2 bad usage or bad input (unreadable files, malformed documents, invalid
// groupings or configurations).
#include <fusecost.h>

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct ModelDeleter {
  void operator()(fc_model* model) const { fc_model_free(model); }
};
struct GroupingDeleter {
  void operator()(fc_grouping* grouping) const { fc_grouping_free(grouping); }
};
struct ReportDeleter {
  void operator()(fc_report* report) const { fc_report_free(report); }
};
struct StringDeleter {
  void operator()(char* text) const { fc_string_free(text); }
};
struct ConfigsDeleter {
  void operator()(fc_hw_config* configs) const { fc_configs_free(configs); }
};
using ModelPtr = std::unique_ptr<fc_model, ModelDeleter>;
using GroupingPtr = std::unique_ptr<fc_grouping, GroupingDeleter>;
using ReportPtr = std::unique_ptr<fc_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;
using ConfigsPtr = std::unique_ptr<fc_hw_config, ConfigsDeleter>;

constexpr int kExitNoCandidate = 1;
constexpr int kExitBadInput = 2;

int fail(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return kExitBadInput;
}

int fail_api() { return fail(fc_last_error()); }

struct Options {
  std::string model;
  std::string grouping = "pool";
  std::string arch = "blockwise";
  std::string f;
  std::string config_set_path;
  std::string tech_path;
  std::string sram_caps;
  std::string format = "json";
  std::string out_path;
  std::string records = "none";
  uint64_t max_groupings = 0;  // 0: library default cap
  std::optional<uint64_t> max_bw;
  std::optional<uint64_t> max_latency;
  std::optional<double> max_energy;
  std::optional<double> max_area;
  std::optional<double> e_dram, e_sram, e_pe;
  std::optional<double> a_pe_blockwise, a_pe_vectorwise, a_sram_per_byte;
  std::optional<uint32_t> dram_bytes_per_cycle;
  std::optional<uint64_t> t_pl;
};

bool parse_uint_list(const std::string& text, std::vector<uint64_t>& out) {
  out.clear();
  if (text.empty()) return true;
  size_t pos = 0;
  while (true) {
    const size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty()) return false;
    uint64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size()) return false;
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

bool read_file(const std::string& path, std::string& out, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot open file '" + path + "'";
    return false;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    error = "cannot read file '" + path + "'";
    return false;
  }
  out = buffer.str();
  return true;
}

bool write_output(const std::string& path, const std::string& text, std::string& error) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    error = "cannot write output file '" + path + "'";
    return false;
  }
  return true;
}

ModelPtr load_model(const std::string& source, fc_status& status) {
  fc_model* model = nullptr;
  constexpr std::string_view kBuiltin = "builtin:";
  if (source.rfind(kBuiltin, 0) == 0)
    status = fc_model_builtin(source.substr(kBuiltin.size()).c_str(), &model);
  else
    status = fc_model_from_file(source.c_str(), &model);
  return ModelPtr(model);
}

fc_arch arch_of(const Options& opt) {
  return opt.arch == "vectorwise" ? FC_ARCH_VECTORWISE : FC_ARCH_BLOCKWISE;
}

// Fills config from --arch/--f. Returns 0 or an exit code.
int make_config(const Options& opt, fc_hw_config& config) {
  if (opt.f.empty())
    return fail("--f F1,F2,F3,F4 is required (tiling factors, e.g. --f 4,4,4,4)");
  std::vector<uint64_t> factors;
  if (!parse_uint_list(opt.f, factors) || factors.size() != 4)
    return fail("--f expects four comma-separated positive integers, e.g. 4,4,4,4");
  for (const uint64_t factor : factors)
    if (factor == 0 || factor > std::numeric_limits<uint32_t>::max())
      return fail("--f factors must be positive 32-bit integers");
  config = {arch_of(opt), static_cast<uint32_t>(factors[0]), static_cast<uint32_t>(factors[1]),
            static_cast<uint32_t>(factors[2]), static_cast<uint32_t>(factors[3])};
  return 0;
}

// Builds a fixed grouping handle for pool | layer | explicit:<ends>.
int make_fixed_grouping(const fc_model* model, const std::string& selector, GroupingPtr& out) {
  fc_grouping* grouping = nullptr;
  fc_status status = FC_OK;
  constexpr std::string_view kExplicit = "explicit:";
  if (selector == "pool") {
    status = fc_grouping_pool_delimited(model, &grouping);
  } else if (selector == "layer") {
    status = fc_grouping_layer_by_layer(model, &grouping);
  } else if (selector.rfind(kExplicit, 0) == 0) {
    std::vector<uint64_t> raw;
    if (!parse_uint_list(selector.substr(kExplicit.size()), raw))
      return fail("invalid group-end list in '" + selector + "'");
    std::vector<uint32_t> ends;
    ends.reserve(raw.size());
    for (const uint64_t value : raw) {
      if (value > std::numeric_limits<uint32_t>::max())
        return fail("group end " + std::to_string(value) + " is out of range");
      ends.push_back(static_cast<uint32_t>(value));
    }
    status = fc_grouping_from_ends(model, ends.data(), ends.size(), &grouping);
  } else {
    return fail("unknown grouping '" + selector +
                "' (expected pool, layer or explicit:<e0,e1,...>)");
  }
  if (status != FC_OK) return fail_api();
  out.reset(grouping);
  return 0;
}

// Applies --tech file overrides, then individual flags, onto tech.
int resolve_tech(const Options& opt, fc_tech_params& tech) {
  if (!opt.tech_path.empty()) {
    std::string text, error;
    if (!read_file(opt.tech_path, text, error)) return fail(error);
    if (fc_tech_apply_text(text.c_str(), &tech) != FC_OK) return fail_api();
  }
  if (opt.e_dram) tech.e_dram_nj = *opt.e_dram;
  if (opt.e_sram) tech.e_sram_nj = *opt.e_sram;
  if (opt.e_pe) tech.e_pe_nj = *opt.e_pe;
  if (opt.a_pe_blockwise) tech.a_pe_blockwise_um2 = *opt.a_pe_blockwise;
  if (opt.a_pe_vectorwise) tech.a_pe_vectorwise_um2 = *opt.a_pe_vectorwise;
  if (opt.a_sram_per_byte) tech.a_sram_per_byte_um2 = *opt.a_sram_per_byte;
  if (opt.dram_bytes_per_cycle) tech.dram_bytes_per_cycle = *opt.dram_bytes_per_cycle;
  if (opt.t_pl) tech.t_pl_cycles = *opt.t_pl;
  return 0;
}

int make_caps(const Options& opt, std::optional<fc_sram_caps>& caps) {
  if (opt.sram_caps.empty()) return 0;
  std::vector<uint64_t> sizes;
  if (!parse_uint_list(opt.sram_caps, sizes) || sizes.size() != 3)
    return fail("--sram-caps expects three byte counts: ifm,wb,ofm");
  caps = fc_sram_caps{sizes[0], sizes[1], sizes[2]};
  return 0;
}

fc_constraints make_constraints(const Options& opt) {
  fc_constraints constraints{};
  if (opt.max_bw) {
    constraints.has_max_bandwidth = 1;
    constraints.max_bandwidth_bytes = *opt.max_bw;
  }
  if (opt.max_latency) {
    constraints.has_max_latency = 1;
    constraints.max_latency_cycles = *opt.max_latency;
  }
  if (opt.max_energy) {
    constraints.has_max_energy = 1;
    constraints.max_energy_nj = *opt.max_energy;
  }
  if (opt.max_area) {
    constraints.has_max_area = 1;
    constraints.max_area_um2 = *opt.max_area;
  }
  return constraints;
}

fc_record_detail detail_of(const Options& opt) {
  if (opt.records == "failures") return FC_RECORDS_FAILURES;
  if (opt.records == "full") return FC_RECORDS_FULL;
  return FC_RECORDS_NONE;
}

int emit_report(const fc_report* report, const Options& opt) {
  char* text = nullptr;
  const fc_status status = opt.format == "csv"
                               ? fc_report_to_csv(report, detail_of(opt), &text)
                               : fc_report_to_json(report, detail_of(opt), &text);
  if (status != FC_OK) return fail_api();
  const StringPtr holder(text);
  std::string error;
  if (!write_output(opt.out_path, text, error)) return fail(error);
  return 0;
}

int run_point_command(const Options& opt, bool compare_mode) {
  fc_status status = FC_OK;
  const ModelPtr model = load_model(opt.model, status);
  if (status != FC_OK) return fail_api();

  fc_tech_params tech = fc_tech_defaults();
  if (const int rc = resolve_tech(opt, tech)) return rc;
  fc_hw_config config{};
  if (const int rc = make_config(opt, config)) return rc;
  GroupingPtr grouping;
  if (const int rc = make_fixed_grouping(model.get(), opt.grouping, grouping)) return rc;
  std::optional<fc_sram_caps> caps;
  if (const int rc = make_caps(opt, caps)) return rc;

  fc_report* raw_report = nullptr;
  status = compare_mode
               ? fc_compare(model.get(), grouping.get(), &config, &tech,
                            caps ? &*caps : nullptr, &raw_report)
               : fc_evaluate(model.get(), grouping.get(), &config, &tech,
                             caps ? &*caps : nullptr, &raw_report);
  if (status != FC_OK) return fail_api();
  const ReportPtr report(raw_report);
  return emit_report(report.get(), opt);
}

int run_explore(const Options& opt) {
  fc_status status = FC_OK;
  const ModelPtr model = load_model(opt.model, status);
  if (status != FC_OK) return fail_api();

  if (!opt.config_set_path.empty() && !opt.f.empty())
    return fail("--config-set and --f are mutually exclusive");

  fc_tech_params tech = fc_tech_defaults();
  ConfigsPtr config_set;
  fc_hw_config single{};
  const fc_hw_config* configs = nullptr;
  size_t config_count = 0;
  if (!opt.config_set_path.empty()) {
    std::string text, error;
    if (!read_file(opt.config_set_path, text, error)) return fail(error);
    fc_hw_config* raw = nullptr;
    if (fc_config_set_from_text(text.c_str(), arch_of(opt), &raw, &config_count, &tech) != FC_OK)
      return fail_api();
    config_set.reset(raw);
    configs = raw;
  } else if (!opt.f.empty()) {
    if (const int rc = make_config(opt, single)) return rc;
    configs = &single;
    config_count = 1;
  } else {
    fc_hw_config* raw = nullptr;
    if (fc_config_set_default(arch_of(opt), &raw, &config_count) != FC_OK) return fail_api();
    config_set.reset(raw);
    configs = raw;
  }
  // --tech and individual flags override any tech section in the set file.
  if (const int rc = resolve_tech(opt, tech)) return rc;

  std::optional<fc_sram_caps> caps;
  if (const int rc = make_caps(opt, caps)) return rc;
  const fc_constraints constraints = make_constraints(opt);

  fc_grouping_mode mode = FC_GROUPINGS_POOL_DELIMITED;
  GroupingPtr fixed;
  if (opt.grouping == "pool") {
    mode = FC_GROUPINGS_POOL_DELIMITED;
  } else if (opt.grouping == "all") {
    mode = FC_GROUPINGS_ALL_CONTIGUOUS;
  } else {
    if (const int rc = make_fixed_grouping(model.get(), opt.grouping, fixed)) return rc;
  }

  fc_report* raw_report = nullptr;
  status = fc_explore(model.get(), configs, config_count, mode, fixed.get(), &constraints,
                      &tech, caps ? &*caps : nullptr, opt.max_groupings, &raw_report);
  if (status != FC_OK) return fail_api();
  const ReportPtr report(raw_report);
  if (const int rc = emit_report(report.get(), opt)) return rc;
  return fc_report_best_found(report.get()) ? 0 : kExitNoCandidate;
}

int run_emit_model(const Options& opt) {
  const std::string source = opt.model.empty() ? "builtin:vgg16" : opt.model;
  if (source.rfind("builtin:", 0) != 0)
    return fail("emit-model writes builtin models only (e.g. --model builtin:vgg16)");
  fc_status status = FC_OK;
  const ModelPtr model = load_model(source, status);
  if (status != FC_OK) return fail_api();
  char* text = nullptr;
  if (fc_model_emit(model.get(), &text) != FC_OK) return fail_api();
  const StringPtr holder(text);
  std::string error;
  if (!write_output(opt.out_path, text, error)) return fail(error);
  return 0;
}

void add_output_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out_path, "Write the report to a file instead of stdout");
}

void add_tech_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--tech", opt.tech_path, "Technology parameter overrides (JSON file)");
  cmd->add_option("--e-dram", opt.e_dram, "Energy per DRAM element access (nJ)");
  cmd->add_option("--e-sram", opt.e_sram, "Energy per SRAM element access (nJ)");
  cmd->add_option("--e-pe", opt.e_pe, "Energy per PE-array active cycle (nJ)");
  cmd->add_option("--a-pe-blockwise", opt.a_pe_blockwise, "Area per blockwise PE (um^2)");
  cmd->add_option("--a-pe-vectorwise", opt.a_pe_vectorwise, "Area per vectorwise PE (um^2)");
  cmd->add_option("--a-sram-per-byte", opt.a_sram_per_byte, "SRAM area per byte (um^2)");
  cmd->add_option("--dram-bytes-per-cycle", opt.dram_bytes_per_cycle,
                  "DRAM bus width (bytes per cycle)");
  cmd->add_option("--t-pl", opt.t_pl, "Per-layer pipeline fill latency (cycles)");
}

void add_point_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model", opt.model, "Model source: a network file path or builtin:vgg16")
      ->required();
  cmd->add_option("--grouping", opt.grouping,
                  "Fusion grouping: pool, layer or explicit:<e0,e1,...>");
  cmd->add_option("--arch", opt.arch, "PE-array geometry")
      ->check(CLI::IsMember({"blockwise", "vectorwise"}));
  cmd->add_option("--f", opt.f, "Tiling factors F1,F2,F3,F4 (e.g. 4,4,4,4)");
  cmd->add_option("--sram-caps", opt.sram_caps, "SRAM capacities in bytes: ifm,wb,ofm");
  add_tech_options(cmd, opt);
  add_output_options(cmd, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusecost: pre-RTL cost evaluation and design-space exploration\n"
               "for CNN accelerators with fused-layer execution"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* cmd_evaluate =
      app.add_subcommand("evaluate", "Cost one (model, grouping, configuration) point");
  add_point_options(cmd_evaluate, opt);

  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "Evaluate a grouping against the ungrouped layer-by-layer baseline");
  add_point_options(cmd_compare, opt);

  CLI::App* cmd_explore = app.add_subcommand(
      "explore", "Sweep configurations and groupings, pick the lowest-energy candidate");
  cmd_explore->add_option("--model", opt.model, "Model source: a network file path or builtin:vgg16")
      ->required();
  cmd_explore->add_option("--grouping", opt.grouping,
                          "pool, layer, all (every legal contiguous grouping) or explicit:<ends>");
  cmd_explore->add_option("--arch", opt.arch, "PE-array geometry for --f and the default set")
      ->check(CLI::IsMember({"blockwise", "vectorwise"}));
  cmd_explore->add_option("--f", opt.f, "Sweep a single configuration F1,F2,F3,F4");
  cmd_explore->add_option("--config-set", opt.config_set_path,
                          "Configuration set (JSON file); default: all factors in {2,4,8,16}");
  cmd_explore->add_option("--max-bw", opt.max_bw, "Bandwidth limit (bytes per frame)");
  cmd_explore->add_option("--max-latency", opt.max_latency, "Latency limit (cycles per frame)");
  cmd_explore->add_option("--max-energy", opt.max_energy, "Energy limit (nJ per frame)");
  cmd_explore->add_option("--max-area", opt.max_area, "Area limit (um^2)");
  cmd_explore->add_option("--sram-caps", opt.sram_caps, "SRAM capacities in bytes: ifm,wb,ofm");
  cmd_explore->add_option("--max-groupings", opt.max_groupings,
                          "Abort if a grouping enumeration would exceed this count");
  cmd_explore->add_option("--records", opt.records, "Per-candidate records in the report")
      ->check(CLI::IsMember({"none", "failures", "full"}));
  add_tech_options(cmd_explore, opt);
  add_output_options(cmd_explore, opt);

  CLI::App* cmd_emit =
      app.add_subcommand("emit-model", "Write a builtin model as a canonical network file");
  cmd_emit->add_option("--model", opt.model, "Builtin model source (default builtin:vgg16)");
  cmd_emit->add_option("--out", opt.out_path, "Write the network file here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  if (app.got_subcommand(cmd_evaluate)) return run_point_command(opt, false);
  if (app.got_subcommand(cmd_compare)) return run_point_command(opt, true);
  if (app.got_subcommand(cmd_explore)) return run_explore(opt);
  return run_emit_model(opt);
}
