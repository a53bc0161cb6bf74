#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optkb/core_model.hpp"
#include "optkb/report.hpp"

namespace optkb::coco {

struct InstanceSummary {
  int instance_number = 1;
  std::int64_t evaluations = 1;
  double best_value = 0.0;

  bool operator==(const InstanceSummary&) const = default;
};

// One 3-line block of a .info file.
struct InfoEntry {
  int function_id = 1;
  int dimension = 1;
  std::string algorithm_name;
  std::optional<double> precision;
  std::string dat_path;
  std::vector<InstanceSummary> per_instance;
  // Header pairs after algId, verbatim.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::string comment;
  std::size_t line = 0;  // header line in the .info file

  bool operator==(const InfoEntry&) const = default;
};

// Throws ParseError with the offending line number.
std::vector<InfoEntry> parse_info_file(std::string_view text);

// One RunTrace per '%'-delimited segment, instances assigned positionally
// from `entry.per_instance`. Repetition indexes count repeats of the same
// instance within the entry. Throws ParseError (non-numeric fields, segment
// count mismatch).
std::vector<RunTrace> parse_dat_file(std::string_view text,
                                     const InfoEntry& entry,
                                     std::string_view suite = "BBOB");

// Debug emitters producing text the parsers above read back.
std::string emit_info(const std::vector<InfoEntry>& entries);
std::string emit_dat(const std::vector<RunTrace>& traces);

struct IngestOptions {
  std::string suite = "BBOB";
  // Lenient keeps traces that fail validation and skips unparsable files.
  bool lenient = false;
};

struct IngestResult {
  std::vector<RunTrace> traces;
  IngestReport report;
};

// Discovers every .info below `root` (lexicographic path order), parses the
// referenced .dat files and validates the traces. Repetitions are numbered
// per (algorithm, problem) across the whole directory. Throws IoError when
// `root` is unreadable or holds no .info file, std::invalid_argument for an
// invalid study.
IngestResult ingest_coco_dir(const std::filesystem::path& root,
                             const Study& study,
                             const IngestOptions& options = {});

}  // namespace optkb::coco
