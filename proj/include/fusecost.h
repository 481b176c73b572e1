/* fusecost.h - C API for the fusecost pre-RTL cost evaluator.
 *
 * The library estimates DRAM bandwidth, latency, energy and silicon area
 * for CNN accelerators running layer-by-layer or with fused layer groups,
 * and searches hardware/fusion design spaces under cost constraints.
 *
 * Conventions:
 *  - Every fallible call returns fc_status; FC_OK is zero. On failure the
 *    out-parameters are untouched and fc_last_error() describes the
 *    problem (thread-local).
 *  - Objects returned through fc_*_new/parse/... out-parameters are owned
 *    by the caller and released with the matching fc_*_free.
 *  - Strings returned through char** are released with fc_string_free.
 *  - Energy cost totals are integer hundredths of a nanojoule and area
 *    totals integer hundredths of a square micrometre, so values compare
 *    exactly; the struct fields below use natural units (nJ, um^2) and are
 *    quantized to hundredths on entry.
 */
#ifndef FUSECOST_H
#define FUSECOST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERROR_INVALID_ARGUMENT = 1,
  FC_ERROR_MALFORMED_DOCUMENT = 2, /* input text is not valid JSON */
  FC_ERROR_SCHEMA_VIOLATION = 3,   /* wrong keys, types or value ranges */
  FC_ERROR_DEGENERATE_SHAPE = 4,   /* a layer output dimension drops below 1 */
  FC_ERROR_INVALID_GROUPING = 5,
  FC_ERROR_INVALID_CONFIG = 6,
  FC_ERROR_EMPTY_CONFIG_SET = 7,
  FC_ERROR_TOO_MANY_GROUPINGS = 8,
  FC_ERROR_IO = 9,
  FC_ERROR_INTERNAL = 10
} fc_status;

const char* fc_status_name(fc_status status);

/* Message for the most recent failure on this thread; empty if none. */
const char* fc_last_error(void);

void fc_string_free(char* text);

/* ---- models ---------------------------------------------------------- */

typedef struct fc_model fc_model;

fc_status fc_model_from_text(const char* text, fc_model** out_model);
fc_status fc_model_from_file(const char* path, fc_model** out_model);
/* Built-in workloads; currently "vgg16" (13 conv + 5 pool, 3x224x224). */
fc_status fc_model_builtin(const char* name, fc_model** out_model);
/* Canonical network file text; parsing it back reproduces the model. */
fc_status fc_model_emit(const fc_model* model, char** out_text);
uint32_t fc_model_layer_count(const fc_model* model);
const char* fc_model_name(const fc_model* model);
void fc_model_free(fc_model* model);

/* ---- fusion groupings ------------------------------------------------ */

typedef struct fc_grouping fc_grouping;

/* One group per layer: the ungrouped baseline. */
fc_status fc_grouping_layer_by_layer(const fc_model* model, fc_grouping** out_grouping);
/* Groups end at (and include) each pool layer. */
fc_status fc_grouping_pool_delimited(const fc_model* model, fc_grouping** out_grouping);
/* Strictly increasing exclusive group-end indices; the final end at
 * layer_count is implicit. count may be zero for one whole-network group. */
fc_status fc_grouping_from_ends(const fc_model* model, const uint32_t* ends, size_t count,
                                fc_grouping** out_grouping);
uint32_t fc_grouping_group_count(const fc_grouping* grouping);
void fc_grouping_free(fc_grouping* grouping);

/* ---- hardware configuration and technology parameters ---------------- */

typedef enum fc_arch {
  FC_ARCH_BLOCKWISE = 0, /* PEs consume one 3x3 kernel patch per cycle */
  FC_ARCH_VECTORWISE = 1 /* PEs consume three kernel-row taps per cycle; F3 pinned to 3 */
} fc_arch;

typedef struct fc_hw_config {
  fc_arch arch;
  uint32_t f1; /* output-channel parallelism */
  uint32_t f2; /* output-row parallelism */
  uint32_t f3; /* output-column parallelism (forced to 3 for vectorwise) */
  uint32_t f4; /* input-channel parallelism */
} fc_hw_config;

typedef struct fc_tech_params {
  double e_dram_nj;          /* energy per DRAM element access */
  double e_sram_nj;          /* energy per SRAM element access */
  double e_pe_nj;            /* energy per PE-array active cycle */
  double a_pe_blockwise_um2; /* area per blockwise PE */
  double a_pe_vectorwise_um2;
  double a_sram_per_byte_um2;
  uint32_t dram_bytes_per_cycle;
  uint64_t t_pl_cycles; /* per-layer pipeline fill latency */
} fc_tech_params;

/* 1 nJ / 0.1 nJ / 0.01 nJ, 5000 / 600 um^2 per PE, 4 um^2 per byte,
 * 4 bytes per bus cycle, 100-cycle pipeline fill. */
fc_tech_params fc_tech_defaults(void);

/* Applies overrides from a JSON tech document onto *tech (in place).
 * Accepted keys: e_dram, e_sram, e_pe, a_pe_blockwise, a_pe_vectorwise,
 * a_sram_per_byte, dram_bytes_per_cycle, t_pl; {"tech": {...}} also works. */
fc_status fc_tech_apply_text(const char* text, fc_tech_params* tech);

typedef struct fc_sram_caps {
  uint64_t ifm_bytes;
  uint64_t wb_bytes;
  uint64_t ofm_bytes;
} fc_sram_caps;

/* ---- configuration sets ----------------------------------------------- */

/* Parses {"configs": [{"arch": "...", "f": [f1,f2,f3,f4]}, ...],
 *         "tech": {...}} (tech optional, applied onto *tech when present;
 * entries without "arch" use default_arch). The returned array is released
 * with fc_configs_free. */
fc_status fc_config_set_from_text(const char* text, fc_arch default_arch,
                                  fc_hw_config** out_configs, size_t* out_count,
                                  fc_tech_params* tech);
/* Every factor combination over {2,4,8,16}: 256 blockwise configs, or 64
 * vectorwise configs (the F3 axis is pinned). */
fc_status fc_config_set_default(fc_arch arch, fc_hw_config** out_configs, size_t* out_count);
void fc_configs_free(fc_hw_config* configs);

/* ---- evaluation, comparison, exploration ------------------------------ */

typedef struct fc_constraints {
  int has_max_bandwidth;
  uint64_t max_bandwidth_bytes;
  int has_max_latency;
  uint64_t max_latency_cycles;
  int has_max_energy;
  double max_energy_nj;
  int has_max_area;
  double max_area_um2;
} fc_constraints;

typedef struct fc_report fc_report;

/* tech NULL means defaults; caps NULL means SRAM auto-sized from the model. */
fc_status fc_evaluate(const fc_model* model, const fc_grouping* grouping,
                      const fc_hw_config* config, const fc_tech_params* tech,
                      const fc_sram_caps* caps, fc_report** out_report);

/* Evaluates the grouping and the ungrouped baseline on the same config and
 * reports totals, percentage reductions and a per-group energy table. */
fc_status fc_compare(const fc_model* model, const fc_grouping* grouping,
                     const fc_hw_config* config, const fc_tech_params* tech,
                     const fc_sram_caps* caps, fc_report** out_report);

typedef enum fc_grouping_mode {
  FC_GROUPINGS_POOL_DELIMITED = 0,
  FC_GROUPINGS_ALL_CONTIGUOUS = 1 /* every contiguous partition obeying the pool rule */
} fc_grouping_mode;

/* Sweeps configs x groupings. fixed_grouping, when non-NULL, overrides mode
 * and sweeps that single grouping. constraints/tech/caps may be NULL.
 * max_groupings of 0 means the default cap (2^20 candidates). */
fc_status fc_explore(const fc_model* model, const fc_hw_config* configs, size_t config_count,
                     fc_grouping_mode mode, const fc_grouping* fixed_grouping,
                     const fc_constraints* constraints, const fc_tech_params* tech,
                     const fc_sram_caps* caps, uint64_t max_groupings, fc_report** out_report);

/* ---- report access ----------------------------------------------------- */

typedef enum fc_record_detail {
  FC_RECORDS_NONE = 0,
  FC_RECORDS_FAILURES = 1, /* only candidates that failed */
  FC_RECORDS_FULL = 2
} fc_record_detail;

/* Serializations are deterministic: fixed key order, integers and
 * fixed-decimal strings only, byte-identical for identical inputs. The CSV
 * form flattens the JSON document into key,value rows with equal values. */
fc_status fc_report_to_json(const fc_report* report, fc_record_detail detail, char** out_text);
fc_status fc_report_to_csv(const fc_report* report, fc_record_detail detail, char** out_text);

/* 1 when an exploration found a passing candidate (always 1 for evaluate
 * and compare reports), else 0. */
int fc_report_best_found(const fc_report* report);

/* Headline totals: the evaluated point for evaluate, the fused point for
 * compare, the best candidate for explore (error if none passed). Any
 * out-pointer may be NULL. */
fc_status fc_report_totals(const fc_report* report, uint64_t* out_bandwidth_bytes,
                           uint64_t* out_latency_cycles, uint64_t* out_energy_nj_x100,
                           uint64_t* out_area_um2_x100);

void fc_report_free(fc_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FUSECOST_H */
