#include "optkb/ela.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "optkb/csv.hpp"
#include "optkb/term.hpp"

namespace optkb::ela {

namespace {

using GroupKey = std::tuple<ProblemInstanceKey, std::string, SamplingTechnique, int>;

GroupKey key_of(const Observation& o) {
  return {o.problem, o.feature_name, o.sampling_technique, o.sample_size_factor};
}

std::string lower_trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  std::string out(s.substr(first, last - first + 1));
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

ParseResult parse_ela_csv(std::string_view text, const ParseOptions& options) {
  ParseResult result;
  const auto records = csv::parse(text, options.separator);
  if (records.empty()) throw SchemaError("suite", "missing header row");

  std::map<std::string, std::size_t> col;
  const auto& header = records.front().fields;
  for (std::size_t i = 0; i < header.size(); ++i) {
    col.try_emplace(lower_trim(header[i]), i);
  }
  result.pre_aggregated = col.contains("median_value");

  std::vector<std::string> required{"suite",         "function_id",
                                    "instance",      "dimension",
                                    "feature_name",  "feature_group",
                                    "sampling_technique", "sample_size_factor"};
  if (result.pre_aggregated) {
    required.push_back("median_value");
  } else {
    required.push_back("repetition");
    required.push_back("value");
  }
  for (const auto& name : required) {
    if (!col.contains(name)) throw SchemaError(name);
  }

  std::set<GroupKey> seen_aggregated;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    std::string problem;
    auto reject = [&](std::string message) {
      if (problem.empty()) problem = std::move(message);
    };
    auto field = [&](const std::string& name) -> std::string {
      const std::size_t i = col.at(name);
      return i < rec.fields.size() ? trim(rec.fields[i]) : std::string{};
    };
    auto int_field = [&](const std::string& name, int min) -> int {
      auto v = parse_integer(field(name));
      if (!v || *v < min || *v > std::numeric_limits<int>::max()) {
        reject(name + " '" + field(name) + "' is not an integer >= " +
               std::to_string(min));
        return min;
      }
      return static_cast<int>(*v);
    };

    if (rec.fields.size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, got " +
             std::to_string(rec.fields.size()));
    }
    Observation obs;
    obs.line = rec.line;
    obs.problem.suite = field("suite");
    if (obs.problem.suite.empty()) reject("empty suite");
    obs.problem.function_id = int_field("function_id", 1);
    obs.problem.instance_number = int_field("instance", 1);
    obs.problem.dimension = int_field("dimension", 1);
    obs.feature_name = field("feature_name");
    if (obs.feature_name.empty()) reject("empty feature_name");

    if (auto g = feature_group_from_name(field("feature_group"))) {
      obs.feature_group = *g;
    } else {
      reject("unknown feature group '" + field("feature_group") + "'");
    }
    if (auto s = sampling_from_name(field("sampling_technique"))) {
      obs.sampling_technique = *s;
    } else {
      reject("unknown sampling technique '" + field("sampling_technique") + "'");
    }
    obs.sample_size_factor = int_field("sample_size_factor", 1);
    if (options.strict &&
        std::find(kStandardSampleSizeFactors.begin(),
                  kStandardSampleSizeFactors.end(),
                  obs.sample_size_factor) == kStandardSampleSizeFactors.end()) {
      reject("sample_size_factor " + std::to_string(obs.sample_size_factor) +
             " is not one of 30, 50, 100, 250, 650, 800, 1000");
    }
    if (problem.empty()) {
      if (auto bad = check_problem_key(obs.problem); !bad.empty()) reject(bad);
    }

    const std::string value_col = result.pre_aggregated ? "median_value" : "value";
    if (auto v = parse_double(field(value_col))) {
      obs.value = *v;
    } else {
      reject(value_col + " '" + field(value_col) + "' not numeric");
    }
    if (result.pre_aggregated) {
      if (col.contains("repetitions") && !field("repetitions").empty()) {
        obs.repetitions = int_field("repetitions", 1);
      } else {
        obs.repetitions = 100;
      }
      if (problem.empty() && !seen_aggregated.insert(key_of(obs)).second) {
        reject("duplicate key for pre-aggregated median");
      }
    } else {
      obs.repetition = int_field("repetition", 0);
    }

    if (!problem.empty()) {
      if (options.strict) throw ParseError(problem, rec.line);
      result.diagnostics.push_back(
          {"", rec.line, problem + "; row skipped", Severity::Error});
      continue;
    }
    result.observations.push_back(std::move(obs));
  }
  return result;
}

double median(std::span<const double> values) {
  if (values.empty()) throw PreconditionViolation("median of an empty group");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

std::vector<ELARecord> aggregate_medians(
    std::span<const Observation> observations) {
  struct Group {
    FeatureGroup feature_group;
    std::vector<double> values;
    std::optional<int> repetitions_hint;
  };
  std::map<GroupKey, Group> groups;
  for (const auto& o : observations) {
    auto [it, inserted] = groups.try_emplace(key_of(o));
    if (inserted) {
      it->second.feature_group = o.feature_group;
      it->second.repetitions_hint = o.repetitions;
    }
    it->second.values.push_back(o.value);
  }

  std::vector<ELARecord> out;
  out.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    ELARecord rec;
    std::tie(rec.problem, rec.feature_name, rec.sampling_technique,
             rec.sample_size_factor) = key;
    rec.feature_group = group.feature_group;
    rec.median_value = median(group.values);
    rec.repetitions = group.values.size() == 1 && group.repetitions_hint
                          ? *group.repetitions_hint
                          : static_cast<int>(group.values.size());
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace optkb::ela
