// costmodel.hpp - the analytical cost model: DRAM bandwidth, cycle-level
// latency, access-count energy and the fused-vs-ungrouped comparison.
//
// Execution model: groups run one after another with no overlap. Inside a
// group, every layer pays a weight-load transfer, a compute phase and a
// pipeline fill; the group additionally pays one input-frame read and one
// output-frame write on the DRAM bus. Intermediate frames between fused
// layers stay on chip and cost no DRAM traffic at all.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fusion.hpp"
#include "hwmodel.hpp"
#include "netmodel.hpp"

namespace fusecost {

// DRAM traffic of one group, in elements: all member weights, plus the
// first layer's input frame, plus the last layer's output frame.
uint64_t group_bandwidth_elements(const NetworkModel& model, GroupRange group);

uint64_t network_bandwidth_elements(const NetworkModel& model, const FusionGrouping& grouping);
uint64_t network_bandwidth_bytes(const NetworkModel& model, const FusionGrouping& grouping);

// Compute cycles for one layer on a configuration. Every tile dimension
// rounds up: partially filled tiles cost a full cycle.
//   blockwise conv:   ceil(M/F1) ceil(N/F4) ceil(oh/F2) ceil(ow/F3) ceil(kh/3) ceil(kw/3)
//   vectorwise conv:  ceil(M/F1) ceil(N/F4) ceil(oh/F2) ow kh ceil(kw/3)
//   pool (both):      ceil(M*oh*ow / (F1*F2))
uint64_t compute_cycles(const ConvLayer& layer, const HardwareConfig& config);

struct LayerLatency {
  uint32_t layer = 0;
  uint64_t weight_read_cycles = 0;
  uint64_t compute_cycles = 0;
  uint64_t pipeline_cycles = 0;
};

struct GroupLatency {
  uint32_t group = 0;
  uint64_t input_read_cycles = 0;
  uint64_t output_write_cycles = 0;
};

struct LatencyBreakdown {
  std::vector<LayerLatency> per_layer;
  std::vector<GroupLatency> per_group;
  uint64_t weight_read_cycles = 0;
  uint64_t compute_cycles = 0;
  uint64_t pipeline_cycles = 0;
  uint64_t group_io_cycles = 0;
  uint64_t total_cycles = 0;  // exact sum of the four component totals
};

// Transfer cycles are ceil(bytes / dram_bytes_per_cycle), per transfer.
LatencyBreakdown network_latency(const NetworkModel& model, const FusionGrouping& grouping,
                                 const HardwareConfig& config, const TechParams& tech);

struct AccessCounts {
  uint64_t dram_elements = 0;  // equals network_bandwidth_elements
  uint64_t sram_elements = 0;  // per layer: input + weights + output
  uint64_t pe_cycles = 0;      // per layer: compute_cycles
  bool operator==(const AccessCounts&) const = default;
};

AccessCounts access_counts(const NetworkModel& model, const FusionGrouping& grouping,
                           const HardwareConfig& config);

struct EnergyBreakdown {
  AccessCounts counts;
  uint64_t dram_cnj = 0;
  uint64_t sram_cnj = 0;
  uint64_t pe_cnj = 0;
  uint64_t total_cnj = 0;
};

EnergyBreakdown energy(const AccessCounts& counts, const TechParams& tech);

struct GroupCost {
  uint32_t group = 0;
  GroupRange range;
  uint64_t bandwidth_bytes = 0;
  uint64_t latency_cycles = 0;
  uint64_t energy_cnj = 0;
};

struct CostReport {
  uint64_t bandwidth_bytes = 0;
  LatencyBreakdown latency;
  EnergyBreakdown energy;
  AreaBreakdown area;
  SramSizes sram;
  bool sram_auto = true;  // sized from the model (vs caller-provided caps)
  std::vector<GroupCost> per_group;
};

// Full evaluation of one (model, grouping, config) point. SRAM caps, when
// given, replace auto-sizing for the area terms; they do not gate the
// evaluation itself (see check_feasibility for that).
CostReport evaluate(const NetworkModel& model, const FusionGrouping& grouping,
                    const HardwareConfig& config, const TechParams& tech,
                    const std::optional<SramSizes>& caps = {});

struct ReductionRatio {
  uint64_t baseline = 0;
  uint64_t fused = 0;
  uint64_t numerator() const;        // baseline - fused (never negative)
  uint64_t percent_tenths() const;   // rounded half-up to one decimal
};

struct GroupEnergyComparison {
  uint32_t group = 0;
  GroupRange range;
  uint64_t fused_cnj = 0;
  uint64_t baseline_cnj = 0;  // same layers run ungrouped
};

struct CompareResult {
  CostReport fused;
  CostReport baseline;  // layer-by-layer on the same config
  ReductionRatio bandwidth;
  ReductionRatio latency;
  ReductionRatio energy;
  std::vector<GroupEnergyComparison> per_group_energy;
};

CompareResult compare(const NetworkModel& model, const FusionGrouping& grouping,
                      const HardwareConfig& config, const TechParams& tech,
                      const std::optional<SramSizes>& caps = {});

}  // namespace fusecost
