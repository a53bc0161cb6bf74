#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "optkb/annotation.hpp"
#include "optkb/core_model.hpp"
#include "optkb/oql.hpp"
#include "optkb/report.hpp"
#include "optkb/store.hpp"

namespace optkb {

// Study identifier already present and overwrite not requested.
class DuplicateStudyError : public std::runtime_error {
 public:
  explicit DuplicateStudyError(const std::string& identifier)
      : std::runtime_error("study '" + identifier +
                           "' already exists; pass overwrite to merge") {}
};

struct KbIngestOptions {
  bool strict = true;
  Granularity granularity = Granularity::EvaluationLevel;
  // Merge into an existing study (set union; nothing is deleted).
  bool overwrite = false;
};

struct CocoRequest {
  std::filesystem::path root;
  Study study;
  std::string suite = "BBOB";
};

struct NevergradRequest {
  std::string csv;
  std::string source;  // file name for diagnostics
  std::optional<std::string> suite;
  std::optional<Study> study;
  char separator = ',';
};

struct ElaRequest {
  std::string csv;
  std::string source;
  char separator = ',';
};

// One store behind snapshot semantics: readers take an immutable snapshot,
// writers serialize and publish a new store per ingest batch.
class KnowledgeBase {
 public:
  KnowledgeBase();
  explicit KnowledgeBase(Store store);

  std::shared_ptr<const Store> snapshot() const;
  std::size_t size() const { return snapshot()->size(); }

  // Each ingest inserts all of its triples or none. Inputs rejected as a
  // whole raise IngestError (diagnostics attached), SchemaError,
  // DuplicateStudyError, IoError or std::invalid_argument.
  IngestReport ingest_coco(const CocoRequest& request,
                           const KbIngestOptions& options = {});
  IngestReport ingest_nevergrad(const NevergradRequest& request,
                                const KbIngestOptions& options = {});
  IngestReport ingest_ela(const ElaRequest& request,
                          const KbIngestOptions& options = {});

  // Inserts raw triples atomically; returns the number of new triples.
  std::size_t insert(std::span<const Triple> triples);

  // Throws ParseError for malformed OQL.
  oql::BindingTable query(std::string_view text) const;

  // Replaces the content with the .nt file at `path`; a missing file gives
  // an empty store. Throws ParseError or IoError.
  void load(const std::filesystem::path& path);
  // Writes to a temporary file next to `path`, then renames it into place.
  void save(const std::filesystem::path& path) const;

 private:
  void publish(std::shared_ptr<const Store> store);

  mutable std::mutex snapshot_mutex_;
  std::mutex writer_mutex_;
  std::shared_ptr<const Store> current_;
};

}  // namespace optkb
