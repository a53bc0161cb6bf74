#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optkb/annotation.hpp"
#include "optkb/core_model.hpp"
#include "optkb/store.hpp"

namespace optkb {

// Cascading selection; unset fields and empty lists match everything.
struct ProblemFilter {
  std::optional<std::string> suite;
  std::optional<int> function_id;
  std::optional<int> dimension;
  std::vector<int> instances;
  std::vector<std::string> algorithms;

  bool matches(const ProblemInstanceKey& key) const;
  bool matches_algorithm(std::string_view name) const;
};

// One BenchmarkExecution node as read back from the store.
struct RunInfo {
  std::string iri;
  std::string algorithm;
  ProblemInstanceKey problem;
  int repetition = 0;
  std::int64_t budget = 1;
  int num_workers = 1;
  Granularity granularity = Granularity::RunLevel;
};

// Sorted by (algorithm, problem, repetition).
std::vector<RunInfo> find_runs(const Store& store, const ProblemFilter& filter);

// Q1: instance IRIs of one problem, sorted.
std::vector<std::string> q1_instances(const Store& store, std::string_view suite,
                                      int function_id);

// Q2: creators come back sorted; absent for an unknown identifier.
std::optional<Study> q2_provenance(const Store& store,
                                   std::string_view identifier);

// Q3: distinct algorithm names of a study, sorted.
std::vector<std::string> q3_algorithms(const Store& store,
                                       std::string_view identifier);

// Q4: sample-size factor -> feature name -> median value. With `factor`
// set the outer map has at most that one key.
using ElaFeatures = std::map<std::string, double>;
std::map<int, ElaFeatures> q4_ela(const Store& store,
                                  const ProblemInstanceKey& problem,
                                  SamplingTechnique technique,
                                  std::optional<int> factor = std::nullopt);

struct BudgetRow {
  std::string algorithm;
  ProblemInstanceKey problem;
  int repetition = 0;
  std::string run;
  std::optional<double> value;

  bool operator==(const BudgetRow&) const = default;
};

struct TargetRow {
  std::string algorithm;
  ProblemInstanceKey problem;
  int repetition = 0;
  std::string run;
  std::optional<std::int64_t> evaluations;  // unset: target never reached

  bool operator==(const TargetRow&) const = default;
};

// Q5: one row per matching run. Evaluation-level runs use the last event
// with evaluation number <= budget; run-level runs answer only when
// budget >= the run's total evaluations. Throws PreconditionViolation for
// budget < 1 and std::invalid_argument for a non-best-so-far kind.
std::vector<BudgetRow> q5_fitness_at_budget(const Store& store,
                                            const ProblemFilter& filter,
                                            std::int64_t budget,
                                            MeasureKind kind);

// Q6: first evaluation whose best-so-far value is <= target.
std::vector<TargetRow> q6_evals_to_target(const Store& store,
                                          const ProblemFilter& filter,
                                          double target, MeasureKind kind);

struct RankEntry {
  std::string algorithm;
  double median = 0.0;
  std::size_t runs = 0;      // runs contributing a value
  std::size_t excluded = 0;  // matching runs with no value at this budget

  bool operator==(const RankEntry&) const = default;
};

// Q7: median fixed-budget value per algorithm, ascending; ties broken by
// algorithm slug. Algorithms with no defined value are left out.
std::vector<RankEntry> q7_best_at_budget(const Store& store,
                                         const ProblemFilter& filter,
                                         std::int64_t budget, MeasureKind kind);

// Rebuilds RunTraces from stored triples. Run-level runs come back without
// events and with final_best_raw taken from the run's best noise-free value.
std::vector<RunTrace> materialize_traces(const Store& store,
                                         const ProblemFilter& filter);

// Catalog lookups; every list is distinct and sorted.
struct FunctionEntry {
  std::string suite;
  int function_id = 1;
  std::optional<std::string> name;

  bool operator==(const FunctionEntry&) const = default;
  auto operator<=>(const FunctionEntry&) const = default;
};

std::vector<std::string> catalog_suites(const Store& store);
std::vector<FunctionEntry> catalog_functions(const Store& store,
                                             const ProblemFilter& filter);
std::vector<int> catalog_dimensions(const Store& store,
                                    const ProblemFilter& filter);
std::vector<int> catalog_instances(const Store& store,
                                   const ProblemFilter& filter);
// Algorithms with at least one run under the filter; with an empty filter
// also algorithms that have no runs.
std::vector<std::string> catalog_algorithms(const Store& store,
                                            const ProblemFilter& filter);
std::vector<Study> catalog_studies(const Store& store);

struct StudyDetail {
  Study study;
  std::vector<std::string> algorithms;
  std::vector<ProblemInstanceKey> problems;
  std::size_t runs = 0;
};

std::optional<StudyDetail> study_detail(const Store& store,
                                        std::string_view identifier);
// Identifiers of studies whose title contains `text` (case-insensitive).
std::vector<std::string> find_studies_by_title(const Store& store,
                                               std::string_view text);

// Runs linked from a study node, sorted like find_runs.
std::vector<RunInfo> study_runs(const Store& store, std::string_view identifier);

// Every problem instance key with a BenchmarkProblem node.
std::vector<ProblemInstanceKey> stored_problems(const Store& store);

// One past the largest stored repetition per (algorithm, problem).
std::map<std::pair<std::string, ProblemInstanceKey>, int> next_repetitions(
    const Store& store);

}  // namespace optkb
