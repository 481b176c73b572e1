#include "hwmodel.hpp"

#include <algorithm>

#include "errors.hpp"

namespace fusecost {

const char* arch_name(Arch arch) {
  return arch == Arch::Blockwise3x3 ? "blockwise" : "vectorwise";
}

std::optional<Arch> arch_from_name(std::string_view name) {
  if (name == "blockwise") return Arch::Blockwise3x3;
  if (name == "vectorwise") return Arch::Vectorwise;
  return std::nullopt;
}

HardwareConfig HardwareConfig::make(Arch arch, uint32_t f1, uint32_t f2, uint32_t f3,
                                    uint32_t f4) {
  HardwareConfig config{arch, f1, f2, arch == Arch::Vectorwise ? 3u : f3, f4};
  config.validate();
  return config;
}

void HardwareConfig::validate() const {
  if (f1 == 0 || f2 == 0 || f3 == 0 || f4 == 0)
    throw Error(ErrorCode::InvalidConfig, "tiling factors must all be at least 1");
}

uint64_t TechParams::pe_area_cum2(Arch arch) const {
  return arch == Arch::Blockwise3x3 ? pe_area_blockwise_cum2 : pe_area_vectorwise_cum2;
}

void TechParams::validate() const {
  if (dram_bytes_per_cycle == 0)
    throw Error(ErrorCode::InvalidConfig, "dram_bytes_per_cycle must be at least 1");
}

uint64_t pe_count(const HardwareConfig& config) {
  config.validate();
  const uint64_t columns = config.arch == Arch::Vectorwise ? 3 : config.f3;
  return static_cast<uint64_t>(config.f1) * config.f4 * config.f2 * columns;
}

SramSizes required_sram(const NetworkModel& model) {
  require_resolved(model);
  SramSizes sizes;
  const uint64_t bpe = model.bytes_per_element;
  for (const ConvLayer& layer : model.layers) {
    sizes.ifm_bytes = std::max(sizes.ifm_bytes, layer.input_elements() * bpe);
    sizes.wb_bytes = std::max(sizes.wb_bytes, layer.weight_elements() * bpe);
    sizes.ofm_bytes = std::max(sizes.ofm_bytes, layer.output_elements() * bpe);
  }
  return sizes;
}

AreaBreakdown area(const HardwareConfig& config, const SramSizes& sram, const TechParams& tech) {
  AreaBreakdown breakdown;
  breakdown.pe_blocks_cum2 = pe_count(config) * tech.pe_area_cum2(config.arch);
  breakdown.ifm_cum2 = sram.ifm_bytes * tech.sram_area_cum2_per_byte;
  breakdown.wb_cum2 = sram.wb_bytes * tech.sram_area_cum2_per_byte;
  breakdown.ofm_cum2 = sram.ofm_bytes * tech.sram_area_cum2_per_byte;
  breakdown.total_cum2 =
      breakdown.pe_blocks_cum2 + breakdown.ifm_cum2 + breakdown.wb_cum2 + breakdown.ofm_cum2;
  return breakdown;
}

}  // namespace fusecost
