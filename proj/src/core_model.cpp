#include "optkb/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "optkb/errors.hpp"
#include "optkb/term.hpp"

namespace optkb {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup_name(
    std::string_view name,
    const std::array<std::pair<Enum, std::string_view>, N>& table) {
  for (const auto& [value, text] : table) {
    if (iequals(text, name)) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(
    Enum value, const std::array<std::pair<Enum, std::string_view>, N>& table) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return {};
}

constexpr std::array<std::pair<MeasureKind, std::string_view>, 4> kMeasures{{
    {MeasureKind::MeasuredFitness, "MeasuredFitness"},
    {MeasureKind::BestMeasuredFitness, "BestMeasuredFitness"},
    {MeasureKind::NoiseFreeFitness, "NoiseFreeFitness"},
    {MeasureKind::BestNoiseFreeFitness, "BestNoiseFreeFitness"},
}};

constexpr std::array<std::pair<FeatureGroup, std::string_view>, 6> kGroups{{
    {FeatureGroup::Dispersion, "dispersion"},
    {FeatureGroup::YDistribution, "y-distribution"},
    {FeatureGroup::MetaModel, "meta-model"},
    {FeatureGroup::InformationContent, "information-content"},
    {FeatureGroup::NearestBetterClustering, "nearest-better-clustering"},
    {FeatureGroup::Pca, "pca"},
}};

constexpr std::array<std::pair<SamplingTechnique, std::string_view>, 5>
    kSampling{{
        {SamplingTechnique::Lhs, "LHS"},
        {SamplingTechnique::ILhs, "iLHS"},
        {SamplingTechnique::Random, "Random"},
        {SamplingTechnique::Sobol, "Sobol"},
        {SamplingTechnique::Randu, "Randu"},
    }};

constexpr std::array<std::pair<Transformation, std::string_view>, 5>
    kTransformations{{
        {Transformation::Shift, "shift"},
        {Transformation::Scale, "scale"},
        {Transformation::Rotate, "rotate"},
        {Transformation::Translate, "translate"},
        {Transformation::Permute, "permute"},
    }};

constexpr std::array<std::pair<SourcePlatform, std::string_view>, 3>
    kPlatforms{{
        {SourcePlatform::Coco, "COCO"},
        {SourcePlatform::Nevergrad, "Nevergrad"},
        {SourcePlatform::Other, "other"},
    }};

void require_best_kind(MeasureKind kind) {
  if (!is_best_so_far(kind)) {
    throw std::invalid_argument(
        std::string(measure_name(kind)) +
        " is not a best-so-far measure; it is undefined between improvement "
        "events");
  }
}

}  // namespace

const std::vector<SuiteInfo>& registered_suites() {
  static const std::vector<SuiteInfo> suites{
      {"BBOB", 24},
      {"YABBOB", 21},
      {"YABIGBBOB", 21},
      {"YACONSTRAINEDBBOB", 21},
      {"YAHDBBOB", 21},
      {"YAHDNOISYBBOB", 21},
      {"YAHDSPLITBBOB", 21},
      {"YANOISYBBOB", 21},
      {"YAPARABBOB", 21},
      {"YASMALLBBOB", 21},
      {"YASPLITBBOB", 21},
  };
  return suites;
}

std::optional<SuiteInfo> find_suite(std::string_view name) {
  for (const auto& suite : registered_suites()) {
    if (suite.name == name) return suite;
  }
  return std::nullopt;
}

std::string check_problem_key(const ProblemInstanceKey& key) {
  if (key.suite.empty()) return "suite name is empty";
  if (key.function_id < 1) return "function id must be positive";
  if (key.instance_number < 1) return "instance number must be positive";
  if (key.dimension < 1) return "dimension must be >= 1";
  if (auto suite = find_suite(key.suite);
      suite && key.function_id > suite->max_function_id) {
    return "function id " + std::to_string(key.function_id) +
           " outside the range 1-" + std::to_string(suite->max_function_id) +
           " of suite " + key.suite;
  }
  return {};
}

std::string instance_label(const ProblemInstanceKey& key) {
  return "f" + std::to_string(key.function_id) + "_i" +
         std::to_string(key.instance_number) + "_dim" +
         std::to_string(key.dimension);
}

std::string_view transformation_name(Transformation t) {
  return name_of(t, kTransformations);
}

std::string_view platform_name(SourcePlatform p) {
  return name_of(p, kPlatforms);
}

std::optional<SourcePlatform> platform_from_name(std::string_view name) {
  return lookup_name(name, kPlatforms);
}

std::string check_study(const Study& study) {
  if (study.identifier.empty()) return "study identifier is empty";
  if (!is_valid_date(study.date)) {
    return "study date must be YYYY or YYYY-MM-DD, got '" + study.date + "'";
  }
  return {};
}

std::string_view measure_name(MeasureKind kind) {
  return name_of(kind, kMeasures);
}

std::optional<MeasureKind> measure_from_name(std::string_view name) {
  return lookup_name(name, kMeasures);
}

bool is_best_so_far(MeasureKind kind) {
  return kind == MeasureKind::BestMeasuredFitness ||
         kind == MeasureKind::BestNoiseFreeFitness;
}

double measure_value(const EvaluationRecord& event, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::MeasuredFitness: return event.measured_value;
    case MeasureKind::BestMeasuredFitness: return event.best_measured_value;
    case MeasureKind::NoiseFreeFitness: return event.raw_value;
    case MeasureKind::BestNoiseFreeFitness: return event.best_raw_value;
  }
  return event.best_raw_value;
}

std::string_view feature_group_name(FeatureGroup g) {
  return name_of(g, kGroups);
}

std::optional<FeatureGroup> feature_group_from_name(std::string_view name) {
  return lookup_name(name, kGroups);
}

std::string_view sampling_name(SamplingTechnique s) {
  return name_of(s, kSampling);
}

std::optional<SamplingTechnique> sampling_from_name(std::string_view name) {
  return lookup_name(name, kSampling);
}

std::optional<double> fixed_budget_value(const RunTrace& trace,
                                         std::int64_t budget,
                                         MeasureKind kind) {
  if (budget < 1) {
    throw PreconditionViolation("budget must be >= 1, got " +
                                std::to_string(budget));
  }
  require_best_kind(kind);
  if (trace.events.empty()) {
    if (budget >= trace.total_evaluations) return trace.final_best_raw;
    return std::nullopt;
  }
  // Events are sorted by evaluation number: find the last one within budget.
  auto it = std::upper_bound(
      trace.events.begin(), trace.events.end(), budget,
      [](std::int64_t b, const EvaluationRecord& e) {
        return b < e.evaluation_number;
      });
  if (it == trace.events.begin()) return std::nullopt;
  return measure_value(*std::prev(it), kind);
}

std::optional<std::int64_t> fixed_target_evals(const RunTrace& trace,
                                               double target,
                                               MeasureKind kind) {
  require_best_kind(kind);
  if (trace.events.empty()) {
    if (trace.final_best_raw <= target) return trace.total_evaluations;
    return std::nullopt;
  }
  for (const auto& event : trace.events) {
    if (measure_value(event, kind) <= target) return event.evaluation_number;
  }
  return std::nullopt;
}

std::vector<TraceDiagnostic> validate_trace(const RunTrace& trace) {
  std::vector<TraceDiagnostic> out;
  const auto& events = trace.events;

  if (trace.total_evaluations < 1) {
    out.push_back({0, "total_evaluations must be positive"});
  }
  if (trace.num_workers < 1) {
    out.push_back({0, "num_workers must be positive"});
  }
  if (trace.repetition < 0) {
    out.push_back({0, "repetition must be nonnegative"});
  }

  double running_raw = 0.0;
  double running_measured = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.evaluation_number < 1) {
      out.push_back({i, "evaluation number not positive"});
    }
    if (i > 0 && e.evaluation_number <= events[i - 1].evaluation_number) {
      out.push_back({i, "evaluation numbers not ascending"});
    }
    running_raw = i == 0 ? e.raw_value : std::min(running_raw, e.raw_value);
    running_measured = i == 0 ? e.measured_value
                              : std::min(running_measured, e.measured_value);

    if (i > 0 && e.best_raw_value > events[i - 1].best_raw_value) {
      out.push_back({i, "non-monotone best-so-far"});
    } else if (e.best_raw_value != running_raw) {
      out.push_back({i, "best-so-far differs from running minimum of raw values"});
    }
    if (i > 0 && e.best_measured_value > events[i - 1].best_measured_value) {
      out.push_back({i, "non-monotone best-measured"});
    } else if (e.best_measured_value != running_measured) {
      out.push_back(
          {i, "best-measured differs from running minimum of measured values"});
    }
    if (!e.coordinates.empty() &&
        e.coordinates.size() != static_cast<std::size_t>(trace.problem.dimension)) {
      out.push_back({i, "coordinate count " +
                            std::to_string(e.coordinates.size()) +
                            " differs from dimension " +
                            std::to_string(trace.problem.dimension)});
    }
  }

  if (!events.empty()) {
    const auto last = events.size() - 1;
    if (events.back().evaluation_number > trace.total_evaluations) {
      out.push_back({last, "evaluation number exceeds total_evaluations"});
    }
    if (trace.final_best_raw != events.back().best_raw_value) {
      out.push_back({last, "final_best_raw mismatch"});
    }
  }
  return out;
}

std::string slugify(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    out += std::isalnum(uc) ? static_cast<char>(std::tolower(uc)) : '_';
  }
  return out;
}

std::string TraceDiagnostic::message() const {
  return reason + " at event " + std::to_string(event_index);
}

}  // namespace optkb
