#include "costmodel.hpp"

#include "errors.hpp"
#include "fixedpoint.hpp"

namespace fusecost {

uint64_t group_bandwidth_elements(const NetworkModel& model, GroupRange group) {
  require_resolved(model);
  if (group.first >= group.last || group.last > model.layer_count())
    throw Error(ErrorCode::InvalidGrouping, "empty or out-of-range layer group");
  uint64_t total = 0;
  for (uint32_t i = group.first; i < group.last; ++i)
    total += model.layers[i].weight_elements();
  total += model.layers[group.first].input_elements();
  total += model.layers[group.last - 1].output_elements();
  return total;
}

uint64_t network_bandwidth_elements(const NetworkModel& model, const FusionGrouping& grouping) {
  validate_partition(model, grouping);
  uint64_t total = 0;
  for (const GroupRange& g : grouping.groups()) total += group_bandwidth_elements(model, g);
  return total;
}

uint64_t network_bandwidth_bytes(const NetworkModel& model, const FusionGrouping& grouping) {
  return network_bandwidth_elements(model, grouping) * model.bytes_per_element;
}

uint64_t compute_cycles(const ConvLayer& layer, const HardwareConfig& config) {
  config.validate();
  if (layer.is_pool())
    return ceil_div(layer.out_channels * layer.out_h * layer.out_w,
                    static_cast<uint64_t>(config.f1) * config.f2);
  const uint64_t out_ch_tiles = ceil_div(layer.out_channels, config.f1);
  const uint64_t in_ch_tiles = ceil_div(layer.in_channels, config.f4);
  const uint64_t row_tiles = ceil_div(layer.out_h, config.f2);
  if (config.arch == Arch::Blockwise3x3)
    return out_ch_tiles * in_ch_tiles * row_tiles * ceil_div(layer.out_w, config.f3) *
           ceil_div(layer.kernel_h, 3) * ceil_div(layer.kernel_w, 3);
  return out_ch_tiles * in_ch_tiles * row_tiles * layer.out_w * layer.kernel_h *
         ceil_div(layer.kernel_w, 3);
}

LatencyBreakdown network_latency(const NetworkModel& model, const FusionGrouping& grouping,
                                 const HardwareConfig& config, const TechParams& tech) {
  validate_partition(model, grouping);
  config.validate();
  tech.validate();

  LatencyBreakdown breakdown;
  const uint64_t bpe = model.bytes_per_element;
  const uint64_t bus = tech.dram_bytes_per_cycle;
  breakdown.per_layer.reserve(model.layers.size());
  for (const ConvLayer& layer : model.layers) {
    const LayerLatency entry{layer.id, ceil_div(layer.weight_elements() * bpe, bus),
                             compute_cycles(layer, config), tech.pipeline_latency_cycles};
    breakdown.weight_read_cycles += entry.weight_read_cycles;
    breakdown.compute_cycles += entry.compute_cycles;
    breakdown.pipeline_cycles += entry.pipeline_cycles;
    breakdown.per_layer.push_back(entry);
  }
  uint32_t gid = 0;
  breakdown.per_group.reserve(grouping.group_count());
  for (const GroupRange& g : grouping.groups()) {
    const GroupLatency entry{gid++,
                             ceil_div(model.layers[g.first].input_elements() * bpe, bus),
                             ceil_div(model.layers[g.last - 1].output_elements() * bpe, bus)};
    breakdown.group_io_cycles += entry.input_read_cycles + entry.output_write_cycles;
    breakdown.per_group.push_back(entry);
  }
  breakdown.total_cycles = breakdown.weight_read_cycles + breakdown.compute_cycles +
                           breakdown.pipeline_cycles + breakdown.group_io_cycles;
  return breakdown;
}

AccessCounts access_counts(const NetworkModel& model, const FusionGrouping& grouping,
                           const HardwareConfig& config) {
  validate_partition(model, grouping);
  config.validate();
  AccessCounts counts;
  counts.dram_elements = network_bandwidth_elements(model, grouping);
  for (const ConvLayer& layer : model.layers) {
    // Each element crosses SRAM once per role, whatever the grouping.
    counts.sram_elements +=
        layer.input_elements() + layer.weight_elements() + layer.output_elements();
    counts.pe_cycles += compute_cycles(layer, config);
  }
  return counts;
}

EnergyBreakdown energy(const AccessCounts& counts, const TechParams& tech) {
  EnergyBreakdown breakdown;
  breakdown.counts = counts;
  breakdown.dram_cnj = counts.dram_elements * tech.dram_energy_cnj;
  breakdown.sram_cnj = counts.sram_elements * tech.sram_energy_cnj;
  breakdown.pe_cnj = counts.pe_cycles * tech.pe_energy_cnj;
  breakdown.total_cnj = breakdown.dram_cnj + breakdown.sram_cnj + breakdown.pe_cnj;
  return breakdown;
}

CostReport evaluate(const NetworkModel& model, const FusionGrouping& grouping,
                    const HardwareConfig& config, const TechParams& tech,
                    const std::optional<SramSizes>& caps) {
  require_resolved(model);
  validate_grouping(model, grouping);
  config.validate();
  tech.validate();

  CostReport report;
  report.bandwidth_bytes = network_bandwidth_bytes(model, grouping);
  report.latency = network_latency(model, grouping, config, tech);
  report.energy = energy(access_counts(model, grouping, config), tech);
  report.sram = caps ? *caps : required_sram(model);
  report.sram_auto = !caps;
  report.area = area(config, report.sram, tech);

  const uint64_t bpe = model.bytes_per_element;
  uint32_t gid = 0;
  report.per_group.reserve(grouping.group_count());
  for (const GroupRange& g : grouping.groups()) {
    GroupCost cost;
    cost.group = gid;
    cost.range = g;
    const uint64_t dram_elements = group_bandwidth_elements(model, g);
    cost.bandwidth_bytes = dram_elements * bpe;
    const GroupLatency& io = report.latency.per_group[gid];
    cost.latency_cycles = io.input_read_cycles + io.output_write_cycles;
    uint64_t sram_elements = 0;
    uint64_t pe_cycles = 0;
    for (uint32_t i = g.first; i < g.last; ++i) {
      const LayerLatency& layer = report.latency.per_layer[i];
      cost.latency_cycles +=
          layer.weight_read_cycles + layer.compute_cycles + layer.pipeline_cycles;
      sram_elements += model.layers[i].input_elements() + model.layers[i].weight_elements() +
                       model.layers[i].output_elements();
      pe_cycles += layer.compute_cycles;
    }
    cost.energy_cnj = dram_elements * tech.dram_energy_cnj +
                      sram_elements * tech.sram_energy_cnj + pe_cycles * tech.pe_energy_cnj;
    report.per_group.push_back(cost);
    ++gid;
  }
  return report;
}

uint64_t ReductionRatio::numerator() const {
  if (fused > baseline)
    throw Error(ErrorCode::Internal, "fused total exceeds ungrouped baseline");
  return baseline - fused;
}

uint64_t ReductionRatio::percent_tenths() const {
  return fusecost::percent_tenths(numerator(), baseline);
}

CompareResult compare(const NetworkModel& model, const FusionGrouping& grouping,
                      const HardwareConfig& config, const TechParams& tech,
                      const std::optional<SramSizes>& caps) {
  CompareResult result;
  result.fused = evaluate(model, grouping, config, tech, caps);
  result.baseline = evaluate(model, layer_by_layer(model), config, tech, caps);
  result.bandwidth = {result.baseline.bandwidth_bytes, result.fused.bandwidth_bytes};
  result.latency = {result.baseline.latency.total_cycles, result.fused.latency.total_cycles};
  result.energy = {result.baseline.energy.total_cnj, result.fused.energy.total_cnj};

  // Baseline per_group has one entry per layer, so a fused group's
  // ungrouped cost is the sum over its member layers.
  uint32_t gid = 0;
  result.per_group_energy.reserve(grouping.group_count());
  for (const GroupRange& g : grouping.groups()) {
    GroupEnergyComparison entry;
    entry.group = gid;
    entry.range = g;
    entry.fused_cnj = result.fused.per_group[gid].energy_cnj;
    for (uint32_t i = g.first; i < g.last; ++i)
      entry.baseline_cnj += result.baseline.per_group[i].energy_cnj;
    result.per_group_energy.push_back(entry);
    ++gid;
  }
  return result;
}

}  // namespace fusecost
