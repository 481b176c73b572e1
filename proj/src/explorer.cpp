#include "explorer.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <tuple>

#include "errors.hpp"
#include "fixedpoint.hpp"

namespace fusecost {
namespace {

// Runs fn(0..count) on a few threads when the sweep is large enough to be
// worth it. Every index writes only its own slot, so scheduling cannot
// change results.
void parallel_for(uint64_t count, const std::function<void(uint64_t)>& fn) {
  uint64_t workers = std::thread::hardware_concurrency();
  workers = std::min({workers == 0 ? uint64_t{1} : workers, uint64_t{8}, count / 512});
  if (workers <= 1) {
    for (uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const uint64_t chunk = ceil_div(count, workers);
  for (uint64_t w = 0; w < workers; ++w) {
    const uint64_t begin = w * chunk;
    const uint64_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, begin, end] {
      try {
        for (uint64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool better(const CandidateRecord& a, const CandidateRecord& b) {
  return std::tie(a.energy_cnj, a.latency_cycles, a.bandwidth_bytes, a.area_cum2, a.index) <
         std::tie(b.energy_cnj, b.latency_cycles, b.bandwidth_bytes, b.area_cum2, b.index);
}

// Post-selection audit: re-checks that the winner passed and that no other
// passing candidate beats it. Failure means a selection bug, never input.
void audit_selection(const DseResult& result) {
  if (!result.best_index) {
    for (const CandidateRecord& rec : result.records)
      if (rec.passes)
        throw Error(ErrorCode::Internal, "no best reported despite passing candidates");
    return;
  }
  const CandidateRecord& best = result.records[*result.best_index];
  if (!best.passes)
    throw Error(ErrorCode::Internal, "selected candidate does not pass constraints");
  for (const CandidateRecord& rec : result.records)
    if (rec.passes && better(rec, best))
      throw Error(ErrorCode::Internal, "a passing candidate beats the selected one");
}

}  // namespace

std::vector<ConstraintViolation> check_constraints(const CostReport& report,
                                                   const Constraints& constraints) {
  std::vector<ConstraintViolation> violations;
  if (constraints.max_bandwidth_bytes && report.bandwidth_bytes > *constraints.max_bandwidth_bytes)
    violations.push_back(
        {"bandwidth_bytes", report.bandwidth_bytes, *constraints.max_bandwidth_bytes});
  if (constraints.max_latency_cycles &&
      report.latency.total_cycles > *constraints.max_latency_cycles)
    violations.push_back(
        {"latency_cycles", report.latency.total_cycles, *constraints.max_latency_cycles});
  if (constraints.max_energy_cnj && report.energy.total_cnj > *constraints.max_energy_cnj)
    violations.push_back({"energy_nj_x100", report.energy.total_cnj, *constraints.max_energy_cnj});
  if (constraints.max_area_cum2 && report.area.total_cum2 > *constraints.max_area_cum2)
    violations.push_back({"area_um2_x100", report.area.total_cum2, *constraints.max_area_cum2});
  return violations;
}

DseResult explore(const NetworkModel& model, std::span<const HardwareConfig> configs,
                  GroupingMode mode, const Constraints& constraints, const TechParams& tech,
                  const std::optional<SramSizes>& caps, uint64_t max_groupings) {
  return explore_fixed(model, configs, enumerate_groupings(model, mode, max_groupings),
                       constraints, tech, caps);
}

DseResult explore_fixed(const NetworkModel& model, std::span<const HardwareConfig> configs,
                        std::vector<FusionGrouping> groupings, const Constraints& constraints,
                        const TechParams& tech, const std::optional<SramSizes>& caps) {
  require_resolved(model);
  if (configs.empty()) throw Error(ErrorCode::EmptyConfigSet, "configuration set is empty");
  for (const HardwareConfig& config : configs) config.validate();
  tech.validate();
  if (groupings.empty())
    throw Error(ErrorCode::InvalidGrouping, "no candidate groupings to explore");
  for (const FusionGrouping& grouping : groupings) validate_grouping(model, grouping);

  DseResult result;
  result.configs.assign(configs.begin(), configs.end());
  result.groupings = std::move(groupings);
  const uint64_t grouping_count = result.groupings.size();
  const uint64_t total = result.configs.size() * grouping_count;
  result.records.resize(total);

  parallel_for(total, [&](uint64_t index) {
    CandidateRecord record;
    record.index = index;
    record.config_index = static_cast<uint32_t>(index / grouping_count);
    record.grouping_index = static_cast<uint32_t>(index % grouping_count);
    record.config = result.configs[record.config_index];
    const FusionGrouping& grouping = result.groupings[record.grouping_index];
    const CostReport report = evaluate(model, grouping, record.config, tech, caps);
    record.bandwidth_bytes = report.bandwidth_bytes;
    record.latency_cycles = report.latency.total_cycles;
    record.energy_cnj = report.energy.total_cnj;
    record.area_cum2 = report.area.total_cum2;
    if (caps) record.feasibility = check_feasibility(model, grouping, *caps);
    record.violations = check_constraints(report, constraints);
    record.passes = record.feasibility.feasible && record.violations.empty();
    result.records[index] = std::move(record);
  });

  const CandidateRecord* best = nullptr;
  for (const CandidateRecord& record : result.records) {
    result.feasible_count += record.feasibility.feasible;
    result.passing_count += record.passes;
    if (record.passes && (best == nullptr || better(record, *best))) best = &record;
  }
  if (best != nullptr) {
    result.best_index = best->index;
    result.best_report = evaluate(model, result.groupings[best->grouping_index], best->config,
                                  tech, caps);
  }
  audit_selection(result);
  return result;
}

std::vector<HardwareConfig> default_config_set(Arch arch) {
  constexpr uint32_t kSteps[] = {2, 4, 8, 16};
  std::vector<HardwareConfig> configs;
  for (const uint32_t f1 : kSteps)
    for (const uint32_t f2 : kSteps) {
      if (arch == Arch::Vectorwise) {
        for (const uint32_t f4 : kSteps)
          configs.push_back(HardwareConfig::make(arch, f1, f2, 3, f4));
      } else {
        for (const uint32_t f3 : kSteps)
          for (const uint32_t f4 : kSteps)
            configs.push_back(HardwareConfig::make(arch, f1, f2, f3, f4));
      }
    }
  return configs;
}

}  // namespace fusecost
