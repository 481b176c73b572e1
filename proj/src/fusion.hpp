// fusion.hpp - fusion groupings: canonical constructions, exhaustive
// enumeration and SRAM residency feasibility.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hwmodel.hpp"
#include "netmodel.hpp"

namespace fusecost {

struct GroupRange {
  uint32_t first = 0;  // inclusive
  uint32_t last = 0;   // exclusive
  uint32_t size() const { return last - first; }
  bool operator==(const GroupRange&) const = default;
};

// An ordered partition of the layer index range into contiguous groups.
// Layers inside a group pass activations on chip; group boundaries go
// through DRAM.
class FusionGrouping {
 public:
  FusionGrouping() = default;
  explicit FusionGrouping(std::vector<GroupRange> groups) : groups_(std::move(groups)) {}

  // Builds a grouping from strictly increasing exclusive group-end indices.
  // The final end at layer_count is implicit; supplying it is accepted.
  // Validates the result fully (partition shape plus the pool rule).
  static FusionGrouping from_boundaries(const NetworkModel& model,
                                        std::span<const uint32_t> ends);

  const std::vector<GroupRange>& groups() const { return groups_; }
  uint32_t group_count() const { return static_cast<uint32_t>(groups_.size()); }
  uint32_t layer_count() const { return groups_.empty() ? 0 : groups_.back().last; }
  bool is_layer_by_layer() const;
  bool operator==(const FusionGrouping&) const = default;

 private:
  std::vector<GroupRange> groups_;
};

enum class GroupingMode { PoolDelimitedOnly, AllContiguous };

inline constexpr uint64_t kDefaultGroupingCap = 1ull << 20;

// One group per layer. Always valid: the ungrouped baseline is exempt from
// the pool rule (every layer, pools included, streams through DRAM).
FusionGrouping layer_by_layer(const NetworkModel& model);

// Groups end at (and include) each pool layer; a trailing run of layers
// after the last pool forms a final group. No pools: one group.
FusionGrouping pool_delimited(const NetworkModel& model);

// Structural check only: groups non-empty, sorted, contiguous, covering
// [0, layer_count) exactly.
void validate_partition(const NetworkModel& model, const FusionGrouping& grouping);

// Full check: partition shape plus the pool placement rule. A pool reuses
// its producer's on-chip output, so no pool may start a group mid-network
// (a group starting at layer 0 has no producer and is allowed). The
// all-singleton baseline is exempt.
void validate_grouping(const NetworkModel& model, const FusionGrouping& grouping);

// All groupings for the mode, deterministically ordered and duplicate-free.
// Throws TooManyGroupings when the candidate count exceeds max_groupings.
std::vector<FusionGrouping> enumerate_groupings(const NetworkModel& model, GroupingMode mode,
                                                uint64_t max_groupings = kDefaultGroupingCap);

struct FeasibilityResult {
  bool feasible = true;
  uint32_t layer = 0;
  std::string requirement;  // "group input" | "weights" | "intermediate output" | "group output"
  uint64_t required_bytes = 0;
  uint64_t available_bytes = 0;
  std::string describe() const;
};

// Checks whether a grouping's tensors fit the given SRAM capacities.
// Singleton groups stream tile-by-tile and always fit. A multi-layer group
// must hold its input frame in the IFM buffer, each member's weights in
// the weight buffer, its output frame in the OFM buffer, and every
// intermediate frame in whichever activation buffer is smaller (frames
// ping-pong between the two). Reports the first violation in layer order.
FeasibilityResult check_feasibility(const NetworkModel& model, const FusionGrouping& grouping,
                                    const SramSizes& caps);

}  // namespace fusecost
