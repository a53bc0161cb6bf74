#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace optkb {

// Suites with a declared function range. Any other suite name is accepted
// and treated as unregistered (any positive function id).
struct SuiteInfo {
  std::string_view name;
  int max_function_id;
};

// BBOB (24 functions) followed by the ten Nevergrad YA* suites (21 each).
const std::vector<SuiteInfo>& registered_suites();
std::optional<SuiteInfo> find_suite(std::string_view name);

struct ProblemInstanceKey {
  std::string suite;
  int function_id = 1;
  int instance_number = 1;
  int dimension = 1;

  bool operator==(const ProblemInstanceKey&) const = default;
  auto operator<=>(const ProblemInstanceKey&) const = default;
};

// Empty string when valid, otherwise the first violated invariant.
std::string check_problem_key(const ProblemInstanceKey& key);

// "f{function}_i{instance}_dim{dimension}"; the suite lives in the IRI path.
std::string instance_label(const ProblemInstanceKey& key);

enum class Transformation { Shift, Scale, Rotate, Translate, Permute };
std::string_view transformation_name(Transformation t);

struct ProblemMeta {
  ProblemInstanceKey key;
  int number_of_objectives = 1;
  int number_of_constraints = 0;
  double noise_level = 0.0;
  std::vector<Transformation> transformations;
  // Set for platforms that name their functions (Nevergrad).
  std::optional<std::string> function_name;

  bool operator==(const ProblemMeta&) const = default;
};

struct AlgorithmRef {
  std::string name;
  std::optional<std::string> family;

  bool operator==(const AlgorithmRef&) const = default;
};

enum class SourcePlatform { Coco, Nevergrad, Other };
std::string_view platform_name(SourcePlatform p);
std::optional<SourcePlatform> platform_from_name(std::string_view name);

struct Study {
  std::string identifier;
  std::string title;
  std::vector<std::string> creators;
  std::string date;
  SourcePlatform source_platform = SourcePlatform::Other;

  bool operator==(const Study&) const = default;
};

// Empty string when valid.
std::string check_study(const Study& study);

struct EvaluationRecord {
  std::int64_t evaluation_number = 1;
  double raw_value = 0.0;
  double best_raw_value = 0.0;
  double measured_value = 0.0;
  double best_measured_value = 0.0;
  std::vector<double> coordinates;

  bool operator==(const EvaluationRecord&) const = default;
};

struct RunTrace {
  AlgorithmRef algorithm;
  ProblemInstanceKey problem;
  int repetition = 0;
  std::vector<EvaluationRecord> events;
  std::int64_t total_evaluations = 1;
  double final_best_raw = 0.0;
  int num_workers = 1;
  std::optional<std::int64_t> budget;

  bool operator==(const RunTrace&) const = default;
};

enum class MeasureKind {
  MeasuredFitness,
  BestMeasuredFitness,
  NoiseFreeFitness,
  BestNoiseFreeFitness,
};

inline constexpr std::array<MeasureKind, 4> kAllMeasureKinds{
    MeasureKind::MeasuredFitness, MeasureKind::BestMeasuredFitness,
    MeasureKind::NoiseFreeFitness, MeasureKind::BestNoiseFreeFitness};

std::string_view measure_name(MeasureKind kind);
std::optional<MeasureKind> measure_from_name(std::string_view name);
bool is_best_so_far(MeasureKind kind);
double measure_value(const EvaluationRecord& event, MeasureKind kind);

enum class FeatureGroup {
  Dispersion,
  YDistribution,
  MetaModel,
  InformationContent,
  NearestBetterClustering,
  Pca,
};
std::string_view feature_group_name(FeatureGroup g);
std::optional<FeatureGroup> feature_group_from_name(std::string_view name);

enum class SamplingTechnique { Lhs, ILhs, Random, Sobol, Randu };
std::string_view sampling_name(SamplingTechnique s);
std::optional<SamplingTechnique> sampling_from_name(std::string_view name);

inline constexpr std::array<int, 7> kStandardSampleSizeFactors{
    30, 50, 100, 250, 650, 800, 1000};

struct ELARecord {
  ProblemInstanceKey problem;
  std::string feature_name;
  FeatureGroup feature_group = FeatureGroup::Dispersion;
  SamplingTechnique sampling_technique = SamplingTechnique::Lhs;
  int sample_size_factor = 30;
  double median_value = 0.0;
  int repetitions = 100;

  bool operator==(const ELARecord&) const = default;
};

// Best-so-far value at the last event with evaluation_number <= budget.
// Throws PreconditionViolation for budget < 1 and std::invalid_argument when
// `kind` is not a best-so-far measure.
std::optional<double> fixed_budget_value(const RunTrace& trace,
                                         std::int64_t budget,
                                         MeasureKind kind);

// First evaluation whose best-so-far value is <= target.
std::optional<std::int64_t> fixed_target_evals(const RunTrace& trace,
                                               double target,
                                               MeasureKind kind);

struct TraceDiagnostic {
  std::size_t event_index = 0;
  std::string reason;

  // e.g. "non-monotone best-so-far at event 1"
  std::string message() const;
  bool operator==(const TraceDiagnostic&) const = default;
};

// One diagnostic per violated invariant; empty for a well-formed trace.
std::vector<TraceDiagnostic> validate_trace(const RunTrace& trace);

// Lowercase; every non-alphanumeric byte becomes '_'.
std::string slugify(std::string_view text);

}  // namespace optkb
