#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "optkb/core_model.hpp"
#include "optkb/oql.hpp"
#include "optkb/term.hpp"

namespace fixture {

using Rng = std::mt19937_64;

// Monotone improvement trace with `n_events` events and coordinates.
optkb::RunTrace make_trace(Rng& rng, const std::string& algorithm,
                           const optkb::ProblemInstanceKey& key, int n_events,
                           std::int64_t first_gap_max = 400);

struct CocoLayout {
  std::vector<std::string> algorithms;
  std::vector<int> functions;
  std::vector<int> instances;
  std::vector<int> dimensions;
  int min_events = 10;
  int max_events = 16;
};

// Writes one folder per algorithm with one .info per function and one .dat
// per (function, dimension). Returns the traces in write order, each with
// repetition 0 and suite BBOB.
std::vector<optkb::RunTrace> write_coco_tree(Rng& rng, const std::filesystem::path& root,
                                             const CocoLayout& layout);

// Rewrites the .dat holding traces[trace_index] so that its best-so-far
// increases at `event_index` (>= 1).
void corrupt_monotonicity(const std::filesystem::path& root,
                          const std::vector<optkb::RunTrace>& traces,
                          std::size_t trace_index, std::size_t event_index);

struct NevergradRowSpec {
  std::string optimizer;
  std::int64_t budget;
  double loss;
  int dimension;
  std::string function_name;
  int num_workers;
};

std::vector<NevergradRowSpec> make_nevergrad_rows(Rng& rng, std::size_t n);
std::string nevergrad_csv(const std::vector<NevergradRowSpec>& rows);

// One per-repetition ELA observation.
struct ElaRowSpec {
  optkb::ProblemInstanceKey problem;
  std::string feature;
  std::string group;
  std::string technique;
  int factor;
  int repetition;
  double value;
};
std::string ela_csv(const std::vector<ElaRowSpec>& rows);

// Names of the 46 synthetic features and their groups, stable order.
const std::vector<std::pair<std::string, std::string>>& ela_feature_set();

// Random triple set over a small vocabulary so that joins hit.
std::vector<optkb::Triple> random_triples(Rng& rng, std::size_t n);

// Connected query built from a random walk over `triples`: 1-4 patterns,
// 0-2 filters, optional LIMIT.
optkb::oql::Query random_query(Rng& rng, const std::vector<optkb::Triple>& triples);

// ustar archive of every regular file below `dir`.
std::string tar_directory(const std::filesystem::path& dir);
std::string gzip(const std::string& data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Repository-relative path of a shipped file (docs/queries/...).
std::filesystem::path source_path(const std::string& relative);

}  // namespace fixture
