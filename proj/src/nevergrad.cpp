#include "optkb/nevergrad.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>

#include "optkb/csv.hpp"
#include "optkb/errors.hpp"
#include "optkb/term.hpp"

namespace optkb::nevergrad {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

enum class Column {
  Optimizer,
  Budget,
  Loss,
  Dimension,
  FunctionName,
  NumWorkers,
  NoiseLevel,
  Suite,
  Extra,
};

Column classify(const std::string& header) {
  const std::string h = lower(header);
  if (h == "optimizer_name") return Column::Optimizer;
  if (h == "budget") return Column::Budget;
  if (h == "loss") return Column::Loss;
  if (h == "dimension") return Column::Dimension;
  if (h == "function_name" || h == "name") return Column::FunctionName;
  if (h == "num_workers") return Column::NumWorkers;
  if (h == "noise_level") return Column::NoiseLevel;
  if (h == "suite") return Column::Suite;
  return Column::Extra;
}

std::optional<std::int64_t> parse_whole(const std::string& text) {
  if (auto v = parse_integer(text)) return v;
  // pandas exports integer columns with NaN gaps as floats ("1000.0").
  if (auto d = parse_double(text);
      d && std::abs(*d) < 9.0e15 &&
      *d == static_cast<double>(static_cast<std::int64_t>(*d))) {
    return static_cast<std::int64_t>(*d);
  }
  return std::nullopt;
}

}  // namespace

ParseResult parse_nevergrad_csv(std::string_view text,
                                std::optional<std::string> suite_hint,
                                const ParseOptions& options) {
  ParseResult result;
  const auto records = csv::parse(text, options.separator);
  if (records.empty()) throw SchemaError("optimizer_name", "missing header row");

  const auto& header = records.front().fields;
  std::vector<Column> columns;
  columns.reserve(header.size());
  for (const auto& h : header) {
    Column c = classify(trimmed(h));
    // A repeated known column is kept verbatim as an extra.
    if (c != Column::Extra &&
        std::find(columns.begin(), columns.end(), c) != columns.end()) {
      c = Column::Extra;
    }
    columns.push_back(c);
  }
  for (auto [required, name] : {std::pair{Column::Optimizer, "optimizer_name"},
                                std::pair{Column::Budget, "budget"},
                                std::pair{Column::Loss, "loss"}}) {
    if (std::find(columns.begin(), columns.end(), required) == columns.end()) {
      throw SchemaError(name);
    }
  }

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    std::string problem;
    auto reject = [&](std::string message) {
      if (problem.empty()) problem = std::move(message);
    };

    if (rec.fields.size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, got " +
             std::to_string(rec.fields.size()));
    }
    NevergradRow row;
    row.line = rec.line;
    for (std::size_t i = 0; i < rec.fields.size() && i < header.size(); ++i) {
      const std::string value = trimmed(rec.fields[i]);
      switch (columns[i]) {
        case Column::Optimizer:
          row.optimizer_name = value;
          if (value.empty()) reject("empty optimizer_name");
          break;
        case Column::Budget: {
          auto v = parse_whole(value);
          if (!v) reject("budget '" + value + "' not numeric");
          else if (*v < 1) reject("budget must be >= 1, got " + value);
          else row.budget = *v;
          break;
        }
        case Column::Loss: {
          auto v = parse_double(value);
          if (!v) reject("loss '" + value + "' not numeric");
          else row.loss = *v;
          break;
        }
        case Column::Dimension: {
          if (value.empty()) break;
          auto v = parse_whole(value);
          if (!v || *v < 1 || *v > std::numeric_limits<int>::max()) {
            reject("dimension '" + value + "' is not a positive integer");
          } else {
            row.dimension = static_cast<int>(*v);
          }
          break;
        }
        case Column::FunctionName:
          if (!value.empty()) row.function_name = value;
          break;
        case Column::NumWorkers: {
          if (value.empty()) break;
          auto v = parse_whole(value);
          if (!v || *v < 1 || *v > std::numeric_limits<int>::max()) {
            reject("num_workers must be >= 1, got '" + value + "'");
          } else {
            row.num_workers = static_cast<int>(*v);
          }
          break;
        }
        case Column::NoiseLevel: {
          if (value.empty()) break;
          auto v = parse_double(value);
          if (!v || *v < 0) reject("noise_level '" + value + "' invalid");
          else row.noise_level = *v;
          break;
        }
        case Column::Suite:
          if (!value.empty()) row.suite = value;
          break;
        case Column::Extra:
          row.extras.emplace_back(header[i], rec.fields[i]);
          break;
      }
    }
    if (!row.suite && suite_hint) row.suite = suite_hint;

    if (!problem.empty()) {
      if (options.strict) throw ParseError(problem, rec.line);
      result.diagnostics.push_back(
          {"", rec.line, problem + "; row skipped", Severity::Error});
      continue;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::optional<int> FunctionRegistry::find(const std::string& suite,
                                          const std::string& name) const {
  if (auto it = ids_.find({suite, name}); it != ids_.end()) return it->second;
  return std::nullopt;
}

void FunctionRegistry::add(const std::string& suite, const std::string& name,
                           int id) {
  ids_[{suite, name}] = id;
}

void FunctionRegistry::reserve(const std::string& suite, int id) {
  int& m = max_reserved_[suite];
  m = std::max(m, id);
}

int FunctionRegistry::next_id(const std::string& suite) const {
  int max_id = 0;
  if (auto it = max_reserved_.find(suite); it != max_reserved_.end()) {
    max_id = it->second;
  }
  for (const auto& [key, id] : ids_) {
    if (key.first == suite) max_id = std::max(max_id, id);
  }
  return max_id + 1;
}

ConversionResult rows_to_traces(const std::vector<NevergradRow>& rows,
                                FunctionRegistry& registry) {
  ConversionResult result;
  auto& report = result.report;
  // Keyed without the budget: run IRIs carry (algorithm, problem, repetition)
  // only, so the same optimizer at several budgets needs distinct indexes.
  std::map<std::pair<std::string, ProblemInstanceKey>, int> repetitions;

  for (const auto& row : rows) {
    ++report.records_parsed;
    if (!row.dimension) {
      report.error("", row.line, "row has no dimension; skipped", false);
      ++report.records_excluded;
      continue;
    }
    const std::string suite = row.suite.value_or(std::string(kDefaultSuite));
    const std::string fname = row.function_name.value_or("unnamed");

    int function_id = 0;
    if (auto id = registry.find(suite, fname)) {
      function_id = *id;
    } else {
      function_id = registry.next_id(suite);
      if (auto info = find_suite(suite);
          info && function_id > info->max_function_id) {
        report.error("", row.line,
                     "cannot mint an id for " + fname + ": suite " + suite +
                         " already has " + std::to_string(info->max_function_id) +
                         " functions; skipped",
                     false);
        ++report.records_excluded;
        continue;
      }
      registry.add(suite, fname, function_id);
      report.notes.push_back("minted id for " + fname + ": " + suite + " f" +
                             std::to_string(function_id));
    }

    RunTrace trace;
    trace.algorithm.name = row.optimizer_name;
    trace.problem = {suite, function_id, 1, *row.dimension};
    trace.total_evaluations = row.budget;
    trace.budget = row.budget;
    trace.final_best_raw = row.loss;
    trace.num_workers = row.num_workers;
    trace.repetition = repetitions[{row.optimizer_name, trace.problem}]++;

    ProblemMeta meta;
    meta.key = trace.problem;
    meta.noise_level = row.noise_level.value_or(0.0);
    meta.function_name = fname;

    ++report.records_accepted;
    result.traces.push_back(std::move(trace));
    result.problems.push_back(std::move(meta));
  }
  return result;
}

}  // namespace optkb::nevergrad
