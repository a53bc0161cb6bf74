#include "optkb/knowledge_base.hpp"

#include <fstream>
#include <map>
#include <span>
#include <set>
#include <sstream>
#include <unistd.h>

#include "optkb/coco.hpp"
#include "optkb/competency.hpp"
#include "optkb/ela.hpp"
#include "optkb/errors.hpp"
#include "optkb/nevergrad.hpp"
#include "optkb/ntriples.hpp"
#include "optkb/vocabulary.hpp"

namespace optkb {

namespace {

using RunKey = std::pair<std::string, ProblemInstanceKey>;

[[noreturn]] void reject(const std::string& what, const IngestReport& report) {
  throw IngestError(what + "; nothing inserted", report.diagnostics);
}

// Drops traces whose algorithm name collides by slug with another name in
// the batch or in the store.
void check_algorithm_slugs(const Store& base, std::vector<RunTrace>& traces,
                           std::vector<ProblemMeta>* problems, bool strict,
                           IngestReport& report) {
  std::map<std::string, std::string> owner;
  for (const auto& name : catalog_algorithms(base, {})) owner.emplace(slugify(name), name);
  std::set<std::string> rejected;
  for (const auto& t : traces) {
    const std::string slug = slugify(t.algorithm.name);
    auto [it, inserted] = owner.emplace(slug, t.algorithm.name);
    if (!inserted && it->second != t.algorithm.name &&
        rejected.insert(t.algorithm.name).second) {
      report.error("", 0,
                   "algorithm name '" + t.algorithm.name + "' collides with '" +
                       it->second + "' (identifier '" + slug + "')",
                   strict);
    }
  }
  if (rejected.empty()) return;
  if (strict) reject("algorithm identifier collision", report);
  std::vector<RunTrace> kept_traces;
  std::vector<ProblemMeta> kept_problems;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (rejected.contains(traces[i].algorithm.name)) {
      ++report.records_excluded;
      --report.records_accepted;
      continue;
    }
    kept_traces.push_back(std::move(traces[i]));
    if (problems) kept_problems.push_back(std::move((*problems)[i]));
  }
  traces = std::move(kept_traces);
  if (problems) *problems = std::move(kept_problems);
}

// Renumbers repetitions so run IRIs never collide with stored runs. When a
// study is merged, its own stored runs are matched in order first, which
// makes re-ingesting the same data idempotent.
void assign_repetitions(const Store& base, const std::optional<Study>& study,
                        std::vector<RunTrace>& traces) {
  auto next = next_repetitions(base);
  std::map<RunKey, std::vector<int>> own;
  if (study) {
    for (const auto& run : study_runs(base, study->identifier)) {
      own[{run.algorithm, run.problem}].push_back(run.repetition);
    }
  }
  std::map<RunKey, std::size_t> seen;
  for (auto& t : traces) {
    const RunKey key{t.algorithm.name, t.problem};
    const std::size_t k = seen[key]++;
    const auto& reuse = own[key];
    if (k < reuse.size()) {
      t.repetition = reuse[k];
    } else {
      t.repetition = next[key]++;
    }
  }
}

ProblemMeta default_meta(const ProblemInstanceKey& key) {
  ProblemMeta meta;
  meta.key = key;
  return meta;
}

std::vector<Triple> annotate_batch(const std::vector<RunTrace>& traces,
                                   const std::vector<ProblemMeta>& problems,
                                   const std::optional<Study>& study,
                                   Granularity granularity, IngestReport& report) {
  std::vector<Triple> out;
  std::set<std::string> algorithms;
  std::set<ProblemInstanceKey> seen_problems;
  for (const auto& meta : problems) {
    if (!seen_problems.insert(meta.key).second) continue;
    auto t = annotate_problem_instance(meta);
    out.insert(out.end(), t.begin(), t.end());
  }
  std::vector<std::string> run_iris;
  for (const auto& trace : traces) {
    if (algorithms.insert(trace.algorithm.name).second) {
      auto t = annotate_algorithm(trace.algorithm);
      out.insert(out.end(), t.begin(), t.end());
    }
    if (seen_problems.insert(trace.problem).second) {
      auto t = annotate_problem_instance(default_meta(trace.problem));
      out.insert(out.end(), t.begin(), t.end());
    }
    auto a = annotate_run(trace, granularity);
    for (auto& w : a.warnings) report.warning("", 0, std::move(w));
    out.insert(out.end(), a.triples.begin(), a.triples.end());
    run_iris.push_back(run_iri(trace.algorithm.name, trace.problem, trace.repetition));
  }
  if (study) {
    auto t = annotate_study(*study, run_iris);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

void tag_source(std::vector<Diagnostic>& diagnostics, const std::string& source) {
  for (auto& d : diagnostics) {
    if (d.source.empty()) d.source = source;
  }
}

}  // namespace

KnowledgeBase::KnowledgeBase() : current_(std::make_shared<const Store>()) {}

KnowledgeBase::KnowledgeBase(Store store)
    : current_(std::make_shared<const Store>(std::move(store))) {}

std::shared_ptr<const Store> KnowledgeBase::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void KnowledgeBase::publish(std::shared_ptr<const Store> store) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(store);
}

std::size_t KnowledgeBase::insert(std::span<const Triple> triples) {
  std::lock_guard writer(writer_mutex_);
  auto next = std::make_shared<Store>(*snapshot());
  const std::size_t added = next->insert_batch(triples);
  if (added) publish(std::move(next));
  return added;
}

IngestReport KnowledgeBase::ingest_coco(const CocoRequest& request,
                                        const KbIngestOptions& options) {
  if (request.study.identifier.empty()) {
    throw std::invalid_argument("study identifier is required");
  }
  coco::IngestOptions parse_options;
  parse_options.suite = request.suite;
  parse_options.lenient = !options.strict;
  auto parsed = coco::ingest_coco_dir(request.root, request.study, parse_options);
  IngestReport report = std::move(parsed.report);
  if (options.strict && report.fatal_errors > 0) {
    reject(std::to_string(report.fatal_errors) + " file(s) failed to parse", report);
  }

  std::lock_guard writer(writer_mutex_);
  const auto base = snapshot();
  if (!options.overwrite && q2_provenance(*base, request.study.identifier)) {
    throw DuplicateStudyError(request.study.identifier);
  }
  check_algorithm_slugs(*base, parsed.traces, nullptr, options.strict, report);
  std::optional<Study> study = request.study;
  study->source_platform = SourcePlatform::Coco;
  assign_repetitions(*base, study, parsed.traces);

  const auto triples =
      annotate_batch(parsed.traces, {}, study, options.granularity, report);
  report.triples_emitted = triples.size();
  auto next = std::make_shared<Store>(*base);
  report.triples_inserted = next->insert_batch(triples);
  publish(std::move(next));
  return report;
}

IngestReport KnowledgeBase::ingest_nevergrad(const NevergradRequest& request,
                                             const KbIngestOptions& options) {
  if (request.study) {
    if (auto bad = check_study(*request.study); !bad.empty()) {
      throw std::invalid_argument(bad);
    }
  }
  nevergrad::ParseOptions parse_options;
  parse_options.separator = request.separator;
  parse_options.strict = options.strict;
  auto parsed = nevergrad::parse_nevergrad_csv(request.csv, request.suite, parse_options);

  std::lock_guard writer(writer_mutex_);
  const auto base = snapshot();
  if (request.study && !options.overwrite &&
      q2_provenance(*base, request.study->identifier)) {
    throw DuplicateStudyError(request.study->identifier);
  }
  nevergrad::FunctionRegistry registry;
  for (const auto& f : catalog_functions(*base, {})) {
    registry.reserve(f.suite, f.function_id);
    if (f.name) registry.add(f.suite, *f.name, f.function_id);
  }
  auto converted = nevergrad::rows_to_traces(parsed.rows, registry);
  IngestReport report = std::move(converted.report);
  report.files_read.push_back(request.source);
  report.records_parsed += parsed.diagnostics.size();
  report.records_excluded += parsed.diagnostics.size();
  report.diagnostics.insert(report.diagnostics.begin(), parsed.diagnostics.begin(),
                            parsed.diagnostics.end());
  tag_source(report.diagnostics, request.source);

  check_algorithm_slugs(*base, converted.traces, &converted.problems, options.strict,
                        report);
  std::optional<Study> study = request.study;
  if (study) study->source_platform = SourcePlatform::Nevergrad;
  assign_repetitions(*base, study, converted.traces);

  const auto triples = annotate_batch(converted.traces, converted.problems, study,
                                      Granularity::RunLevel, report);
  report.triples_emitted = triples.size();
  auto next = std::make_shared<Store>(*base);
  report.triples_inserted = next->insert_batch(triples);
  publish(std::move(next));
  return report;
}

IngestReport KnowledgeBase::ingest_ela(const ElaRequest& request,
                                       const KbIngestOptions& options) {
  ela::ParseOptions parse_options;
  parse_options.separator = request.separator;
  parse_options.strict = options.strict;
  auto parsed = ela::parse_ela_csv(request.csv, parse_options);
  const auto records = ela::aggregate_medians(parsed.observations);

  IngestReport report;
  report.files_read.push_back(request.source);
  report.records_parsed = parsed.observations.size() + parsed.diagnostics.size();
  report.records_excluded = parsed.diagnostics.size();
  report.diagnostics = std::move(parsed.diagnostics);

  std::lock_guard writer(writer_mutex_);
  const auto base = snapshot();
  const auto value_pred = base->find_id(vocab::has_value());

  std::vector<Triple> triples;
  std::set<ProblemInstanceKey> problems;
  for (const auto& rec : records) {
    const Term node = Term::iri(ela_iri(rec));
    if (auto id = base->find_id(node); id && value_pred) {
      const Term value = Term::real(rec.median_value);
      bool conflict = false;
      base->for_each_match({*id, *value_pred, kAnyTerm}, [&](const IdTriple& t) {
        conflict = conflict || base->term(t[2]) != value;
      });
      if (conflict) {
        report.error("", 0,
                     "feature " + rec.feature_name + " of " + rec.problem.suite + " " +
                         instance_label(rec.problem) + " (" +
                         std::string(sampling_name(rec.sampling_technique)) + ", " +
                         std::to_string(rec.sample_size_factor) +
                         "D) already stored with a different value",
                     options.strict);
        ++report.records_excluded;
        continue;
      }
    }
    if (problems.insert(rec.problem).second) {
      auto t = annotate_problem_instance(default_meta(rec.problem));
      triples.insert(triples.end(), t.begin(), t.end());
    }
    auto t = annotate_ela(rec);
    triples.insert(triples.end(), t.begin(), t.end());
    ++report.records_accepted;
  }
  tag_source(report.diagnostics, request.source);
  if (options.strict && report.fatal_errors > 0) {
    reject("conflicting ELA values", report);
  }
  report.triples_emitted = triples.size();
  auto next = std::make_shared<Store>(*base);
  report.triples_inserted = next->insert_batch(triples);
  publish(std::move(next));
  return report;
}

oql::BindingTable KnowledgeBase::query(std::string_view text) const {
  const auto query = oql::parse_query(text);
  const auto store = snapshot();
  return oql::evaluate(query, *store);
}

void KnowledgeBase::load(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    std::lock_guard writer(writer_mutex_);
    publish(std::make_shared<const Store>());
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  auto imported = import_ntriples(buffer.str(), true);
  std::lock_guard writer(writer_mutex_);
  publish(std::make_shared<const Store>(std::move(imported.store)));
}

void KnowledgeBase::save(const std::filesystem::path& path) const {
  const auto store = snapshot();
  const std::string text = export_ntriples(*store);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("error while writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

}  // namespace optkb
