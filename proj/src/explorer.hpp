// explorer.hpp - exhaustive design-space exploration: every configuration
// against every candidate grouping, constraint filtering, and selection of
// the smallest-energy survivor.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "costmodel.hpp"
#include "fusion.hpp"

namespace fusecost {

// Upper bounds on the four cost totals; absent means unconstrained.
// A candidate passes a present limit when value <= limit.
struct Constraints {
  std::optional<uint64_t> max_bandwidth_bytes;
  std::optional<uint64_t> max_latency_cycles;
  std::optional<uint64_t> max_energy_cnj;
  std::optional<uint64_t> max_area_cum2;
  bool operator==(const Constraints&) const = default;
};

struct ConstraintViolation {
  std::string metric;  // report key of the violated total
  uint64_t value = 0;
  uint64_t limit = 0;
  bool operator==(const ConstraintViolation&) const = default;
};

// One violation per failed limit, in fixed metric order.
std::vector<ConstraintViolation> check_constraints(const CostReport& report,
                                                   const Constraints& constraints);

struct CandidateRecord {
  uint64_t index = 0;  // config-major: config_index * groupings + grouping_index
  uint32_t config_index = 0;
  uint32_t grouping_index = 0;
  HardwareConfig config;
  uint64_t bandwidth_bytes = 0;
  uint64_t latency_cycles = 0;
  uint64_t energy_cnj = 0;
  uint64_t area_cum2 = 0;
  FeasibilityResult feasibility;  // trivially feasible when no caps given
  std::vector<ConstraintViolation> violations;
  bool passes = false;  // feasible and no violations
};

struct DseResult {
  std::vector<HardwareConfig> configs;
  std::vector<FusionGrouping> groupings;
  std::vector<CandidateRecord> records;  // one per candidate, in index order
  std::optional<uint64_t> best_index;
  std::optional<CostReport> best_report;
  uint64_t feasible_count = 0;
  uint64_t passing_count = 0;
};

// Evaluates configs x groupings(mode). The best candidate is the passing
// one with the smallest energy; ties break by latency, then bandwidth,
// then area, then candidate index. Candidates are independent, so the
// sweep may run on several threads; results are deterministic regardless.
DseResult explore(const NetworkModel& model, std::span<const HardwareConfig> configs,
                  GroupingMode mode, const Constraints& constraints, const TechParams& tech,
                  const std::optional<SramSizes>& caps = {},
                  uint64_t max_groupings = kDefaultGroupingCap);

// Same sweep over an explicit list of candidate groupings.
DseResult explore_fixed(const NetworkModel& model, std::span<const HardwareConfig> configs,
                        std::vector<FusionGrouping> groupings, const Constraints& constraints,
                        const TechParams& tech, const std::optional<SramSizes>& caps = {});

// Every (F1,F2,F3,F4) combination with each factor in {2,4,8,16}; the F3
// axis collapses to the pinned column count for vectorwise (64 configs
// instead of 256).
std::vector<HardwareConfig> default_config_set(Arch arch);

}  // namespace fusecost
