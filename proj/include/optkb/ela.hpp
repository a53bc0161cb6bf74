#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optkb/core_model.hpp"
#include "optkb/errors.hpp"

namespace optkb::ela {

// One feature value from one repetition, or one pre-aggregated median.
struct Observation {
  ProblemInstanceKey problem;
  std::string feature_name;
  FeatureGroup feature_group = FeatureGroup::Dispersion;
  SamplingTechnique sampling_technique = SamplingTechnique::Lhs;
  int sample_size_factor = 30;
  std::optional<int> repetition;   // set for per-repetition rows
  double value = 0.0;
  std::optional<int> repetitions;  // set for pre-aggregated rows
  std::size_t line = 0;

  bool operator==(const Observation&) const = default;
};

struct ParseOptions {
  char separator = ',';
  // Strict: bad rows are fatal and sample-size factors must be standard.
  bool strict = true;
};

struct ParseResult {
  std::vector<Observation> observations;
  std::vector<Diagnostic> diagnostics;
  bool pre_aggregated = false;
};

// Two header shapes (column order free):
//   suite,function_id,instance,dimension,feature_name,feature_group,
//   sampling_technique,sample_size_factor,repetition,value
//   suite,...,sample_size_factor,median_value[,repetitions]
// Throws SchemaError for a missing column.
ParseResult parse_ela_csv(std::string_view text,
                          const ParseOptions& options = {});

// Median of `values` (mean of the middle pair for even counts). Empty input
// is a precondition violation.
double median(std::span<const double> values);

// Groups by (problem, feature, sampling technique, sample-size factor).
// Output is sorted by that key.
std::vector<ELARecord> aggregate_medians(
    std::span<const Observation> observations);

}  // namespace optkb::ela
