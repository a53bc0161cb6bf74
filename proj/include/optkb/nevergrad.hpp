#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optkb/core_model.hpp"
#include "optkb/report.hpp"

namespace optkb::nevergrad {

struct NevergradRow {
  std::string optimizer_name;
  std::int64_t budget = 1;
  double loss = 0.0;
  std::optional<int> dimension;
  std::optional<std::string> function_name;
  int num_workers = 1;
  std::optional<double> noise_level;
  std::optional<std::string> suite;
  // Unrecognized columns in header order.
  std::vector<std::pair<std::string, std::string>> extras;
  std::size_t line = 0;

  bool operator==(const NevergradRow&) const = default;
};

struct ParseOptions {
  char separator = ',';
  bool strict = true;
};

struct ParseResult {
  std::vector<NevergradRow> rows;
  std::vector<Diagnostic> diagnostics;
};

// Header must name optimizer_name, budget and loss (case-insensitive).
// Throws SchemaError for a missing required column; in strict mode a bad row
// throws ParseError, otherwise it is skipped with a diagnostic.
ParseResult parse_nevergrad_csv(std::string_view text,
                                std::optional<std::string> suite_hint = {},
                                const ParseOptions& options = {});

// (suite, function name) -> function id. Ids minted for unseen names are
// added, so a registry can be threaded through several files.
class FunctionRegistry {
 public:
  std::optional<int> find(const std::string& suite,
                          const std::string& name) const;
  void add(const std::string& suite, const std::string& name, int id);
  // Marks `id` as taken without naming it.
  void reserve(const std::string& suite, int id);
  // Next free id for `suite` (one past the largest known id).
  int next_id(const std::string& suite) const;

 private:
  std::map<std::pair<std::string, std::string>, int> ids_;
  std::map<std::string, int> max_reserved_;
};

struct ConversionResult {
  std::vector<RunTrace> traces;
  // Problem metadata per produced trace (same order).
  std::vector<ProblemMeta> problems;
  IngestReport report;
};

// Suite used when neither the row nor the hint names one.
inline constexpr std::string_view kDefaultSuite = "Nevergrad";

// Each accepted row becomes an event-less RunTrace with
// total_evaluations = budget and final_best_raw = loss.
ConversionResult rows_to_traces(const std::vector<NevergradRow>& rows,
                                FunctionRegistry& registry);

}  // namespace optkb::nevergrad
