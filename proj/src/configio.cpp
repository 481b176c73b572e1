#include "configio.hpp"

#include <json.hpp>

#include <limits>

#include "errors.hpp"
#include "fixedpoint.hpp"

namespace fusecost {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::SchemaViolation, message);
}

json parse_document(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument,
                std::string(what) + " document is not valid JSON: " + e.what());
  }
}

double decimal_value(const json& value, const std::string& field) {
  if (!value.is_number())
    schema_error("tech: '" + field + "' must be a number");
  return value.get<double>();
}

uint64_t integer_value(const json& value, const std::string& field, uint64_t minimum) {
  if (!value.is_number_unsigned())
    schema_error("tech: '" + field + "' must be a non-negative integer");
  const uint64_t v = value.get<uint64_t>();
  if (v < minimum)
    schema_error("tech: '" + field + "' must be at least " + std::to_string(minimum));
  return v;
}

TechParams apply_tech_object(const json& obj, TechParams base) {
  if (!obj.is_object()) schema_error("tech section must be an object");
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    const json& value = item.value();
    if (key == "e_dram")
      base.dram_energy_cnj = centi_from_double(decimal_value(value, key), "tech: 'e_dram'");
    else if (key == "e_sram")
      base.sram_energy_cnj = centi_from_double(decimal_value(value, key), "tech: 'e_sram'");
    else if (key == "e_pe")
      base.pe_energy_cnj = centi_from_double(decimal_value(value, key), "tech: 'e_pe'");
    else if (key == "a_pe_blockwise")
      base.pe_area_blockwise_cum2 =
          centi_from_double(decimal_value(value, key), "tech: 'a_pe_blockwise'");
    else if (key == "a_pe_vectorwise")
      base.pe_area_vectorwise_cum2 =
          centi_from_double(decimal_value(value, key), "tech: 'a_pe_vectorwise'");
    else if (key == "a_sram_per_byte")
      base.sram_area_cum2_per_byte =
          centi_from_double(decimal_value(value, key), "tech: 'a_sram_per_byte'");
    else if (key == "dram_bytes_per_cycle") {
      const uint64_t v = integer_value(value, key, 1);
      if (v > std::numeric_limits<uint32_t>::max())
        schema_error("tech: 'dram_bytes_per_cycle' is out of range");
      base.dram_bytes_per_cycle = static_cast<uint32_t>(v);
    } else if (key == "t_pl")
      base.pipeline_latency_cycles = integer_value(value, key, 0);
    else
      schema_error("tech: unknown field '" + key + "'");
  }
  return base;
}

HardwareConfig parse_config_entry(const json& entry, size_t index, Arch default_arch) {
  const std::string where = "configs[" + std::to_string(index) + "]";
  if (!entry.is_object()) schema_error(where + ": entry must be an object");
  Arch arch = default_arch;
  bool saw_f = false;
  uint32_t f[4] = {0, 0, 0, 0};
  for (const auto& item : entry.items()) {
    const std::string& key = item.key();
    const json& value = item.value();
    if (key == "arch") {
      if (!value.is_string()) schema_error(where + ": 'arch' must be a string");
      const auto parsed = arch_from_name(value.get<std::string>());
      if (!parsed)
        schema_error(where + ": unknown arch '" + value.get<std::string>() +
                     "' (expected blockwise or vectorwise)");
      arch = *parsed;
    } else if (key == "f") {
      if (!value.is_array() || value.size() != 4)
        schema_error(where + ": 'f' must be a four-element array");
      for (size_t i = 0; i < 4; ++i) {
        if (!value[i].is_number_unsigned() || value[i].get<uint64_t>() == 0 ||
            value[i].get<uint64_t>() > std::numeric_limits<uint32_t>::max())
          schema_error(where + ": 'f' entries must be positive integers");
        f[i] = static_cast<uint32_t>(value[i].get<uint64_t>());
      }
      saw_f = true;
    } else {
      schema_error(where + ": unknown field '" + key + "'");
    }
  }
  if (!saw_f) schema_error(where + ": missing required field 'f'");
  return HardwareConfig::make(arch, f[0], f[1], f[2], f[3]);
}

}  // namespace

TechParams parse_tech_overrides(std::string_view text, TechParams base) {
  json doc = parse_document(text, "tech");
  if (doc.is_object() && doc.contains("tech") && doc.size() == 1) doc = doc["tech"];
  return apply_tech_object(doc, base);
}

ConfigSetFile parse_config_set(std::string_view text, Arch default_arch,
                               const TechParams& base_tech) {
  const json doc = parse_document(text, "configuration set");
  if (!doc.is_object()) schema_error("configuration set document must be a JSON object");
  for (const auto& item : doc.items())
    if (item.key() != "configs" && item.key() != "tech")
      schema_error("configuration set: unknown field '" + item.key() + "'");

  ConfigSetFile file;
  file.tech = base_tech;
  if (const auto it = doc.find("tech"); it != doc.end()) {
    file.tech = apply_tech_object(*it, base_tech);
    file.has_tech = true;
  }

  const auto configs_it = doc.find("configs");
  if (configs_it == doc.end())
    schema_error("configuration set: missing required field 'configs'");
  if (!configs_it->is_array() || configs_it->empty())
    schema_error("configuration set: 'configs' must be a non-empty array");
  file.configs.reserve(configs_it->size());
  for (size_t i = 0; i < configs_it->size(); ++i)
    file.configs.push_back(parse_config_entry((*configs_it)[i], i, default_arch));
  return file;
}

}  // namespace fusecost
