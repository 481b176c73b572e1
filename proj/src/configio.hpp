// configio.hpp - parsing of technology-parameter and configuration-set
// documents, shared by the C API and (through it) the CLI.
#pragma once

#include <string_view>
#include <vector>

#include "hwmodel.hpp"

namespace fusecost {

// Applies overrides from a tech document onto base. The document is a JSON
// object with any subset of: e_dram, e_sram, e_pe (nanojoules),
// a_pe_blockwise, a_pe_vectorwise, a_sram_per_byte (square micrometres),
// dram_bytes_per_cycle, t_pl (integers). A {"tech": {...}} wrapper is also
// accepted. Unknown keys are rejected.
TechParams parse_tech_overrides(std::string_view text, TechParams base);

struct ConfigSetFile {
  std::vector<HardwareConfig> configs;
  bool has_tech = false;
  TechParams tech;  // base_tech with the file's overrides when has_tech
};

// Parses {"configs": [{"arch": ..., "f": [f1,f2,f3,f4]}, ...], "tech": {...}}.
// Entries without "arch" use default_arch; "tech" is optional.
ConfigSetFile parse_config_set(std::string_view text, Arch default_arch,
                               const TechParams& base_tech);

}  // namespace fusecost
