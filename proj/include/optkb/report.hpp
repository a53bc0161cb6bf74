#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "optkb/errors.hpp"

namespace optkb {

struct IngestReport {
  std::vector<std::string> files_read;
  std::size_t records_parsed = 0;    // traces, rows or observations
  std::size_t records_accepted = 0;  // what reaches annotation
  std::size_t records_excluded = 0;
  // Parse failures that reject the whole input in strict mode.
  std::size_t fatal_errors = 0;
  std::size_t triples_emitted = 0;
  std::size_t triples_inserted = 0;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> notes;  // e.g. minted function ids

  void error(std::string source, std::size_t line, std::string message,
             bool fatal) {
    diagnostics.push_back(
        {std::move(source), line, std::move(message), Severity::Error});
    if (fatal) ++fatal_errors;
  }
  void warning(std::string source, std::size_t line, std::string message) {
    diagnostics.push_back(
        {std::move(source), line, std::move(message), Severity::Warning});
  }
};

}  // namespace optkb
