#include "fusion.hpp"

#include <algorithm>

#include "errors.hpp"

namespace fusecost {
namespace {

[[noreturn]] void grouping_error(const std::string& message) {
  throw Error(ErrorCode::InvalidGrouping, message);
}

}  // namespace

FusionGrouping FusionGrouping::from_boundaries(const NetworkModel& model,
                                               std::span<const uint32_t> ends) {
  require_resolved(model);
  const uint32_t n = model.layer_count();
  std::vector<GroupRange> groups;
  uint32_t start = 0;
  for (const uint32_t end : ends) {
    if (end <= start)
      grouping_error("group ends must be strictly increasing (got " + std::to_string(end) +
                     " after " + std::to_string(start) + ")");
    if (end > n)
      grouping_error("group end " + std::to_string(end) + " exceeds layer count " +
                     std::to_string(n));
    groups.push_back({start, end});
    start = end;
  }
  if (start < n) groups.push_back({start, n});
  FusionGrouping grouping(std::move(groups));
  validate_grouping(model, grouping);
  return grouping;
}

bool FusionGrouping::is_layer_by_layer() const {
  return std::all_of(groups_.begin(), groups_.end(),
                     [](const GroupRange& g) { return g.size() == 1; });
}

FusionGrouping layer_by_layer(const NetworkModel& model) {
  require_resolved(model);
  std::vector<GroupRange> groups;
  groups.reserve(model.layer_count());
  for (uint32_t i = 0; i < model.layer_count(); ++i) groups.push_back({i, i + 1});
  return FusionGrouping(std::move(groups));
}

FusionGrouping pool_delimited(const NetworkModel& model) {
  require_resolved(model);
  std::vector<GroupRange> groups;
  uint32_t start = 0;
  const uint32_t n = model.layer_count();
  for (uint32_t i = 0; i < n; ++i) {
    // A run of consecutive pools ends one group; a boundary inside the run
    // would make the next group start at a pool.
    if (model.layers[i].is_pool() && (i + 1 == n || !model.layers[i + 1].is_pool())) {
      groups.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (start < n) groups.push_back({start, n});
  return FusionGrouping(std::move(groups));
}

void validate_partition(const NetworkModel& model, const FusionGrouping& grouping) {
  require_resolved(model);
  const auto& groups = grouping.groups();
  if (groups.empty()) grouping_error("grouping has no groups");
  uint32_t expected = 0;
  for (const GroupRange& g : groups) {
    if (g.first != expected)
      grouping_error("groups must tile the layer range contiguously (group starts at " +
                     std::to_string(g.first) + ", expected " + std::to_string(expected) + ")");
    if (g.last <= g.first) grouping_error("groups must not be empty");
    expected = g.last;
  }
  if (expected != model.layer_count())
    grouping_error("grouping covers " + std::to_string(expected) + " layers, model has " +
                   std::to_string(model.layer_count()));
}

void validate_grouping(const NetworkModel& model, const FusionGrouping& grouping) {
  validate_partition(model, grouping);
  if (grouping.is_layer_by_layer()) return;  // ungrouped baseline is exempt
  for (const GroupRange& g : grouping.groups()) {
    if (g.first > 0 && model.layers[g.first].is_pool())
      grouping_error("pool layer '" + model.layers[g.first].name + "' (index " +
                     std::to_string(g.first) +
                     ") cannot start a group; pools fuse with their producer");
  }
}

std::vector<FusionGrouping> enumerate_groupings(const NetworkModel& model, GroupingMode mode,
                                                uint64_t max_groupings) {
  require_resolved(model);
  if (mode == GroupingMode::PoolDelimitedOnly) return {pool_delimited(model)};

  const uint32_t n = model.layer_count();
  // A boundary may sit before any non-pool layer; boundaries before pools
  // are forbidden by the pool rule, so those gaps stay fused.
  std::vector<uint32_t> free_gaps;
  for (uint32_t i = 1; i < n; ++i)
    if (!model.layers[i].is_pool()) free_gaps.push_back(i);

  const size_t bits = free_gaps.size();
  if (bits >= 63 || (1ull << bits) > max_groupings)
    throw Error(ErrorCode::TooManyGroupings,
                "2^" + std::to_string(bits) + " candidate groupings exceed the cap of " +
                    std::to_string(max_groupings));

  const uint64_t count = 1ull << bits;
  std::vector<FusionGrouping> out;
  out.reserve(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    std::vector<GroupRange> groups;
    uint32_t start = 0;
    for (size_t i = 0; i < bits; ++i) {
      // Bit order chosen so the sequence of boundary flags (by layer index)
      // is lexicographic in mask order; the result is deterministic.
      if (mask >> (bits - 1 - i) & 1) {
        groups.push_back({start, free_gaps[i]});
        start = free_gaps[i];
      }
    }
    groups.push_back({start, n});
    out.emplace_back(std::move(groups));
  }
  return out;
}

std::string FeasibilityResult::describe() const {
  if (feasible) return "feasible";
  return "layer " + std::to_string(layer) + " " + requirement + ": " +
         std::to_string(required_bytes) + " bytes required, " +
         std::to_string(available_bytes) + " bytes available";
}

FeasibilityResult check_feasibility(const NetworkModel& model, const FusionGrouping& grouping,
                                    const SramSizes& caps) {
  require_resolved(model);
  validate_partition(model, grouping);
  const uint64_t bpe = model.bytes_per_element;
  const uint64_t intermediate_cap = std::min(caps.ifm_bytes, caps.ofm_bytes);
  for (const GroupRange& g : grouping.groups()) {
    if (g.size() == 1) continue;  // singletons stream and always fit

    const uint64_t input_bytes = model.layers[g.first].input_elements() * bpe;
    if (input_bytes > caps.ifm_bytes)
      return {false, g.first, "group input", input_bytes, caps.ifm_bytes};

    for (uint32_t i = g.first; i < g.last; ++i) {
      const uint64_t weight_bytes = model.layers[i].weight_elements() * bpe;
      if (weight_bytes > caps.wb_bytes)
        return {false, i, "weights", weight_bytes, caps.wb_bytes};
      if (i + 1 < g.last) {
        const uint64_t inter_bytes = model.layers[i].output_elements() * bpe;
        if (inter_bytes > intermediate_cap)
          return {false, i, "intermediate output", inter_bytes, intermediate_cap};
      }
    }

    const uint64_t output_bytes = model.layers[g.last - 1].output_elements() * bpe;
    if (output_bytes > caps.ofm_bytes)
      return {false, g.last - 1, "group output", output_bytes, caps.ofm_bytes};
  }
  return {};
}

}  // namespace fusecost
