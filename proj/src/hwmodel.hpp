// hwmodel.hpp - hardware configuration, technology calibration constants,
// SRAM sizing and the silicon area model.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "netmodel.hpp"

namespace fusecost {

// Two supported PE-array geometries. Both tile output channels by F1,
// input channels by F4, and output rows by F2:
//  - Blockwise3x3: F3 output columns in parallel; each PE holds nine
//    multipliers plus an adder tree and consumes a 3x3 kernel patch per
//    cycle (kernels tile in 3x3 steps).
//  - Vectorwise: one output column at a time; each PE block is F2 x 3
//    single-multiplier PEs that consume three kernel-row taps per cycle.
enum class Arch { Blockwise3x3, Vectorwise };

const char* arch_name(Arch arch);
std::optional<Arch> arch_from_name(std::string_view name);

struct HardwareConfig {
  Arch arch = Arch::Blockwise3x3;
  uint32_t f1 = 1;  // output-channel parallelism
  uint32_t f2 = 1;  // output-row parallelism (PE rows per block)
  uint32_t f3 = 1;  // output-column parallelism; pinned to 3 for vectorwise
  uint32_t f4 = 1;  // input-channel parallelism

  // Validates factors and pins f3 for the vectorwise geometry.
  static HardwareConfig make(Arch arch, uint32_t f1, uint32_t f2, uint32_t f3, uint32_t f4);
  void validate() const;  // throws InvalidConfig on any zero factor
  bool operator==(const HardwareConfig&) const = default;
};

// Calibration constants. Energies are integer hundredths of a nanojoule
// and areas integer hundredths of a square micrometre (see fixedpoint.hpp).
struct TechParams {
  uint64_t dram_energy_cnj = 100;            // 1 nJ per DRAM element access
  uint64_t sram_energy_cnj = 10;             // 0.1 nJ per SRAM element access
  uint64_t pe_energy_cnj = 1;                // 0.01 nJ per PE-array active cycle
  uint64_t pe_area_blockwise_cum2 = 500000;  // 5000 um^2 per blockwise PE
  uint64_t pe_area_vectorwise_cum2 = 60000;  // 600 um^2 per vectorwise PE
  uint64_t sram_area_cum2_per_byte = 400;    // 4.0 um^2 per SRAM byte
  uint32_t dram_bytes_per_cycle = 4;         // bus width for transfer cycles
  uint64_t pipeline_latency_cycles = 100;    // per-layer pipeline fill cost

  uint64_t pe_area_cum2(Arch arch) const;
  void validate() const;  // throws InvalidConfig if the bus width is zero
  bool operator==(const TechParams&) const = default;
};

struct SramSizes {
  uint64_t ifm_bytes = 0;
  uint64_t wb_bytes = 0;
  uint64_t ofm_bytes = 0;
  bool operator==(const SramSizes&) const = default;
};

struct AreaBreakdown {
  uint64_t pe_blocks_cum2 = 0;
  uint64_t ifm_cum2 = 0;
  uint64_t wb_cum2 = 0;
  uint64_t ofm_cum2 = 0;
  uint64_t total_cum2 = 0;  // always the exact sum of the four parts
  bool operator==(const AreaBreakdown&) const = default;
};

// PEs instantiated by a configuration: F1*F4 blocks of F2 x F3 PEs each
// (F2 x 3 for vectorwise regardless of the declared f3).
uint64_t pe_count(const HardwareConfig& config);

// Smallest per-buffer SRAM sizes that keep any layer's tensors resident:
// the network-wide maxima of input frames, weight sets and output frames.
// Independent of how layers are grouped.
SramSizes required_sram(const NetworkModel& model);

AreaBreakdown area(const HardwareConfig& config, const SramSizes& sram, const TechParams& tech);

}  // namespace fusecost
