#include "optkb/competency.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "optkb/ela.hpp"
#include "optkb/errors.hpp"
#include "optkb/vocabulary.hpp"

namespace optkb {

bool ProblemFilter::matches(const ProblemInstanceKey& key) const {
  if (suite && key.suite != *suite) return false;
  if (function_id && key.function_id != *function_id) return false;
  if (dimension && key.dimension != *dimension) return false;
  if (!instances.empty() &&
      std::find(instances.begin(), instances.end(), key.instance_number) ==
          instances.end()) {
    return false;
  }
  return true;
}

bool ProblemFilter::matches_algorithm(std::string_view name) const {
  return algorithms.empty() ||
         std::find(algorithms.begin(), algorithms.end(), name) != algorithms.end();
}

namespace {

// Read helpers over one store.
class View {
 public:
  explicit View(const Store& store) : store_(store) {}

  const Store& store() const { return store_; }

  std::optional<TermId> id(const Term& t) const { return store_.find_id(t); }

  std::vector<TermId> objects(TermId s, const Term& p) const {
    std::vector<TermId> out;
    auto pid = id(p);
    if (!pid) return out;
    store_.for_each_match({s, *pid, kAnyTerm},
                          [&](const IdTriple& t) { out.push_back(t[2]); });
    return out;
  }

  std::vector<TermId> subjects(const Term& p, const Term& o) const {
    std::vector<TermId> out;
    auto pid = id(p);
    auto oid = id(o);
    if (!pid || !oid) return out;
    store_.for_each_match({kAnyTerm, *pid, *oid},
                          [&](const IdTriple& t) { out.push_back(t[0]); });
    return out;
  }

  std::optional<TermId> object(TermId s, const Term& p) const {
    auto all = objects(s, p);
    if (all.empty()) return std::nullopt;
    return all.front();
  }

  bool has_type(TermId s, const Term& cls) const {
    auto pid = id(vocab::rdf_type());
    auto cid = id(cls);
    return pid && cid && store_.count({s, *pid, *cid}) > 0;
  }

  std::optional<std::int64_t> integer(TermId s, const Term& p) const {
    if (auto o = object(s, p)) return store_.term(*o).as_integer();
    return std::nullopt;
  }

  std::optional<double> number(TermId s, const Term& p) const {
    if (auto o = object(s, p)) return store_.term(*o).as_number();
    return std::nullopt;
  }

  std::optional<std::string> text(TermId s, const Term& p) const {
    if (auto o = object(s, p); o && store_.term(*o).is_literal()) {
      return store_.term(*o).value();
    }
    return std::nullopt;
  }

  const std::string& iri(TermId id) const { return store_.term(id).value(); }

  std::optional<ProblemInstanceKey> problem(TermId p) const {
    if (auto it = problems_.find(p); it != problems_.end()) return it->second;
    std::optional<ProblemInstanceKey> key;
    auto suite_node = object(p, vocab::suite_member());
    auto suite = suite_node ? text(*suite_node, vocab::name()) : std::nullopt;
    auto f = integer(p, vocab::function_id());
    auto i = integer(p, vocab::instance_number());
    auto d = integer(p, vocab::dimensionality());
    if (suite && f && i && d) {
      key = ProblemInstanceKey{*suite, static_cast<int>(*f), static_cast<int>(*i),
                               static_cast<int>(*d)};
    }
    problems_.emplace(p, key);
    return key;
  }

  // Specification node of the algorithm behind an execution node.
  std::optional<TermId> algorithm_spec(TermId run) const {
    for (TermId part : objects(run, vocab::has_part())) {
      if (!has_type(part, vocab::algorithm_execution())) continue;
      auto impl = object(part, vocab::realizes());
      if (!impl) continue;
      return object(*impl, vocab::is_concretization_of());
    }
    return std::nullopt;
  }

  std::optional<std::string> algorithm_name(TermId run) const {
    auto spec = algorithm_spec(run);
    if (!spec) return std::nullopt;
    if (auto it = names_.find(*spec); it != names_.end()) return it->second;
    auto name = text(*spec, vocab::name());
    names_.emplace(*spec, name);
    return name;
  }

  std::optional<RunInfo> run(TermId b) const {
    auto problem_node = object(b, vocab::has_specified_input());
    if (!problem_node) return std::nullopt;
    auto key = problem(*problem_node);
    auto alg = algorithm_name(b);
    auto rep = integer(b, vocab::repetition());
    auto budget = integer(b, vocab::budget());
    if (!key || !alg || !rep || !budget) return std::nullopt;
    RunInfo info;
    info.iri = iri(b);
    info.algorithm = *alg;
    info.problem = *key;
    info.repetition = static_cast<int>(*rep);
    info.budget = *budget;
    info.num_workers = static_cast<int>(integer(b, vocab::num_workers()).value_or(1));
    auto g = text(b, vocab::granularity());
    info.granularity = g ? granularity_from_name(*g).value_or(Granularity::RunLevel)
                         : Granularity::RunLevel;
    return info;
  }

  std::optional<TermId> experiment(TermId b) const {
    for (TermId part : objects(b, vocab::has_part())) {
      if (has_type(part, vocab::experiment_run())) return part;
    }
    return std::nullopt;
  }

  // (evaluation number, node) sorted ascending.
  std::vector<std::pair<std::int64_t, TermId>> events(TermId x) const {
    std::vector<std::pair<std::int64_t, TermId>> out;
    for (TermId e : objects(x, vocab::has_part())) {
      if (auto n = integer(e, vocab::evaluation_number())) out.emplace_back(*n, e);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<double> measure(TermId node, MeasureKind kind) const {
    const Term cls = vocab::measure_class(kind);
    for (TermId m : objects(node, vocab::has_specified_output())) {
      if (has_type(m, cls)) return number(m, vocab::has_value());
    }
    return std::nullopt;
  }

  std::optional<Study> study(TermId s) const {
    auto identifier = text(s, vocab::dc_identifier());
    if (!identifier) return std::nullopt;
    Study st;
    st.identifier = *identifier;
    st.title = text(s, vocab::dc_title()).value_or("");
    st.date = text(s, vocab::dc_date()).value_or("");
    for (TermId c : objects(s, vocab::dc_creator())) {
      st.creators.push_back(store_.term(c).value());
    }
    std::sort(st.creators.begin(), st.creators.end());
    if (auto p = text(s, vocab::source_platform())) {
      st.source_platform = platform_from_name(*p).value_or(SourcePlatform::Other);
    }
    return st;
  }

  std::optional<TermId> study_node(std::string_view identifier) const {
    for (TermId s : subjects(vocab::dc_identifier(),
                             Term::string(std::string(identifier)))) {
      if (has_type(s, vocab::study_execution())) return s;
    }
    return std::nullopt;
  }

 private:
  const Store& store_;
  mutable std::unordered_map<TermId, std::optional<ProblemInstanceKey>> problems_;
  mutable std::unordered_map<TermId, std::optional<std::string>> names_;
};

bool run_less(const RunInfo& a, const RunInfo& b) {
  return std::tie(a.algorithm, a.problem, a.repetition, a.iri) <
         std::tie(b.algorithm, b.problem, b.repetition, b.iri);
}

std::vector<std::pair<RunInfo, TermId>> runs_with_nodes(const View& view,
                                                        const ProblemFilter& filter) {
  std::vector<std::pair<RunInfo, TermId>> out;
  for (TermId b : view.subjects(vocab::rdf_type(), vocab::benchmark_execution())) {
    auto info = view.run(b);
    if (!info || !filter.matches(info->problem) ||
        !filter.matches_algorithm(info->algorithm)) {
      continue;
    }
    out.emplace_back(std::move(*info), b);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return run_less(a.first, b.first); });
  return out;
}

void require_best(MeasureKind kind) {
  if (!is_best_so_far(kind)) {
    throw std::invalid_argument(std::string(measure_name(kind)) +
                                " is not a best-so-far measure");
  }
}

bool has_problem_fields(const ProblemFilter& f) {
  return f.suite || f.function_id || f.dimension || !f.instances.empty();
}

}  // namespace

std::vector<RunInfo> find_runs(const Store& store, const ProblemFilter& filter) {
  View view(store);
  std::vector<RunInfo> out;
  for (auto& [info, node] : runs_with_nodes(view, filter)) out.push_back(std::move(info));
  return out;
}

std::vector<std::string> q1_instances(const Store& store, std::string_view suite,
                                      int function_id) {
  View view(store);
  std::vector<std::string> out;
  if (find_suite(suite)) {
    for (TermId p : view.subjects(vocab::rdf_type(),
                                  vocab::function_class(suite, function_id))) {
      out.push_back(view.iri(p));
    }
  } else {
    ProblemFilter filter;
    filter.suite = std::string(suite);
    filter.function_id = function_id;
    for (TermId p : view.subjects(vocab::rdf_type(), vocab::benchmark_problem())) {
      if (auto key = view.problem(p); key && filter.matches(*key)) {
        out.push_back(view.iri(p));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Study> q2_provenance(const Store& store,
                                   std::string_view identifier) {
  View view(store);
  auto node = view.study_node(identifier);
  if (!node) return std::nullopt;
  return view.study(*node);
}

std::vector<std::string> q3_algorithms(const Store& store,
                                       std::string_view identifier) {
  View view(store);
  std::set<std::string> names;
  if (auto node = view.study_node(identifier)) {
    for (TermId run : view.objects(*node, vocab::has_part())) {
      if (auto name = view.algorithm_name(run)) names.insert(*name);
    }
  }
  return {names.begin(), names.end()};
}

std::map<int, ElaFeatures> q4_ela(const Store& store,
                                  const ProblemInstanceKey& problem,
                                  SamplingTechnique technique,
                                  std::optional<int> factor) {
  View view(store);
  std::map<int, ElaFeatures> out;
  auto sampling = view.id(Term::iri(sampling_iri(technique)));
  if (!sampling) return out;
  for (TermId f : view.subjects(vocab::is_about(), Term::iri(problem_iri(problem)))) {
    if (!view.has_type(f, vocab::ela_feature())) continue;
    auto tech = view.object(f, vocab::has_sampling_technique());
    if (!tech || *tech != *sampling) continue;
    auto k = view.integer(f, vocab::sample_size_factor());
    auto name = view.text(f, vocab::feature_name());
    auto value = view.number(f, vocab::has_value());
    if (!k || !name || !value) continue;
    if (factor && *k != *factor) continue;
    out[static_cast<int>(*k)][*name] = *value;
  }
  return out;
}

std::vector<BudgetRow> q5_fitness_at_budget(const Store& store,
                                            const ProblemFilter& filter,
                                            std::int64_t budget,
                                            MeasureKind kind) {
  if (budget < 1) {
    throw PreconditionViolation("budget must be >= 1, got " + std::to_string(budget));
  }
  require_best(kind);
  View view(store);
  std::vector<BudgetRow> out;
  for (const auto& [info, b] : runs_with_nodes(view, filter)) {
    BudgetRow row{info.algorithm, info.problem, info.repetition, info.iri, {}};
    if (auto x = view.experiment(b)) {
      if (info.granularity == Granularity::EvaluationLevel) {
        const auto events = view.events(*x);
        auto it = std::upper_bound(
            events.begin(), events.end(), budget,
            [](std::int64_t v, const auto& e) { return v < e.first; });
        if (it != events.begin()) row.value = view.measure(std::prev(it)->second, kind);
      } else if (budget >= info.budget) {
        row.value = view.measure(*x, kind);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<TargetRow> q6_evals_to_target(const Store& store,
                                          const ProblemFilter& filter,
                                          double target, MeasureKind kind) {
  require_best(kind);
  View view(store);
  std::vector<TargetRow> out;
  for (const auto& [info, b] : runs_with_nodes(view, filter)) {
    TargetRow row{info.algorithm, info.problem, info.repetition, info.iri, {}};
    if (auto x = view.experiment(b)) {
      if (info.granularity == Granularity::EvaluationLevel) {
        for (const auto& [n, e] : view.events(*x)) {
          auto v = view.measure(e, kind);
          if (v && *v <= target) {
            row.evaluations = n;
            break;
          }
        }
      } else if (auto v = view.measure(*x, kind); v && *v <= target) {
        row.evaluations = info.budget;
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RankEntry> q7_best_at_budget(const Store& store,
                                         const ProblemFilter& filter,
                                         std::int64_t budget, MeasureKind kind) {
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> groups;
  for (const auto& row : q5_fitness_at_budget(store, filter, budget, kind)) {
    auto& g = groups[row.algorithm];
    if (row.value) {
      g.first.push_back(*row.value);
    } else {
      ++g.second;
    }
  }
  std::vector<RankEntry> out;
  for (const auto& [name, g] : groups) {
    if (g.first.empty()) continue;
    out.push_back({name, ela::median(g.first), g.first.size(), g.second});
  }
  std::sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.median != b.median) return a.median < b.median;
    return slugify(a.algorithm) < slugify(b.algorithm);
  });
  return out;
}

std::vector<RunTrace> materialize_traces(const Store& store,
                                         const ProblemFilter& filter) {
  View view(store);
  std::vector<RunTrace> out;
  for (const auto& [info, b] : runs_with_nodes(view, filter)) {
    RunTrace trace;
    trace.algorithm.name = info.algorithm;
    if (auto spec = view.algorithm_spec(b)) {
      trace.algorithm.family = view.text(*spec, vocab::family());
    }
    trace.problem = info.problem;
    trace.repetition = info.repetition;
    trace.total_evaluations = info.budget;
    trace.num_workers = info.num_workers;
    auto x = view.experiment(b);
    if (!x) continue;
    trace.final_best_raw =
        view.measure(*x, MeasureKind::BestNoiseFreeFitness).value_or(0.0);
    if (info.granularity == Granularity::EvaluationLevel) {
      for (const auto& [n, e] : view.events(*x)) {
        EvaluationRecord rec;
        rec.evaluation_number = n;
        rec.raw_value = view.measure(e, MeasureKind::NoiseFreeFitness).value_or(0.0);
        rec.best_raw_value =
            view.measure(e, MeasureKind::BestNoiseFreeFitness).value_or(0.0);
        rec.measured_value =
            view.measure(e, MeasureKind::MeasuredFitness).value_or(0.0);
        rec.best_measured_value =
            view.measure(e, MeasureKind::BestMeasuredFitness).value_or(0.0);
        for (TermId o : view.objects(e, vocab::has_specified_output())) {
          if (!view.has_type(o, vocab::solution())) continue;
          std::vector<std::pair<std::int64_t, double>> parts;
          for (TermId part : view.objects(o, vocab::has_part())) {
            auto idx = view.integer(part, vocab::coordinate_index());
            auto val = view.number(part, vocab::has_coordinate_value());
            if (idx && val) parts.emplace_back(*idx, *val);
          }
          std::sort(parts.begin(), parts.end());
          for (const auto& [idx, val] : parts) rec.coordinates.push_back(val);
        }
        trace.events.push_back(std::move(rec));
      }
    }
    out.push_back(std::move(trace));
  }
  return out;
}

std::vector<ProblemInstanceKey> stored_problems(const Store& store) {
  View view(store);
  std::set<ProblemInstanceKey> keys;
  for (TermId p : view.subjects(vocab::rdf_type(), vocab::benchmark_problem())) {
    if (auto key = view.problem(p)) keys.insert(*key);
  }
  return {keys.begin(), keys.end()};
}

std::vector<std::string> catalog_suites(const Store& store) {
  std::set<std::string> out;
  for (const auto& key : stored_problems(store)) out.insert(key.suite);
  return {out.begin(), out.end()};
}

std::vector<FunctionEntry> catalog_functions(const Store& store,
                                             const ProblemFilter& filter) {
  View view(store);
  std::set<FunctionEntry> out;
  ProblemFilter f;
  f.suite = filter.suite;
  for (TermId p : view.subjects(vocab::rdf_type(), vocab::benchmark_problem())) {
    auto key = view.problem(p);
    if (!key || !f.matches(*key)) continue;
    out.insert({key->suite, key->function_id, view.text(p, vocab::function_name())});
  }
  return {out.begin(), out.end()};
}

std::vector<int> catalog_dimensions(const Store& store,
                                    const ProblemFilter& filter) {
  ProblemFilter f;
  f.suite = filter.suite;
  f.function_id = filter.function_id;
  std::set<int> out;
  for (const auto& key : stored_problems(store)) {
    if (f.matches(key)) out.insert(key.dimension);
  }
  return {out.begin(), out.end()};
}

std::vector<int> catalog_instances(const Store& store,
                                   const ProblemFilter& filter) {
  ProblemFilter f;
  f.suite = filter.suite;
  f.function_id = filter.function_id;
  f.dimension = filter.dimension;
  std::set<int> out;
  for (const auto& key : stored_problems(store)) {
    if (f.matches(key)) out.insert(key.instance_number);
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> catalog_algorithms(const Store& store,
                                            const ProblemFilter& filter) {
  std::set<std::string> out;
  if (!has_problem_fields(filter)) {
    View view(store);
    for (TermId a : view.subjects(vocab::rdf_type(), vocab::optimization_algorithm())) {
      if (auto name = view.text(a, vocab::name());
          name && filter.matches_algorithm(*name)) {
        out.insert(*name);
      }
    }
    return {out.begin(), out.end()};
  }
  for (const auto& run : find_runs(store, filter)) out.insert(run.algorithm);
  return {out.begin(), out.end()};
}

std::vector<Study> catalog_studies(const Store& store) {
  View view(store);
  std::vector<Study> out;
  for (TermId s : view.subjects(vocab::rdf_type(), vocab::study_execution())) {
    if (auto st = view.study(s)) out.push_back(std::move(*st));
  }
  std::sort(out.begin(), out.end(), [](const Study& a, const Study& b) {
    return a.identifier < b.identifier;
  });
  return out;
}

std::optional<StudyDetail> study_detail(const Store& store,
                                        std::string_view identifier) {
  View view(store);
  auto node = view.study_node(identifier);
  if (!node) return std::nullopt;
  StudyDetail detail;
  detail.study = *view.study(*node);
  std::set<std::string> algorithms;
  std::set<ProblemInstanceKey> problems;
  for (TermId b : view.objects(*node, vocab::has_part())) {
    auto info = view.run(b);
    if (!info) continue;
    ++detail.runs;
    algorithms.insert(info->algorithm);
    problems.insert(info->problem);
  }
  detail.algorithms.assign(algorithms.begin(), algorithms.end());
  detail.problems.assign(problems.begin(), problems.end());
  return detail;
}

std::vector<RunInfo> study_runs(const Store& store, std::string_view identifier) {
  View view(store);
  std::vector<RunInfo> out;
  if (auto node = view.study_node(identifier)) {
    for (TermId b : view.objects(*node, vocab::has_part())) {
      if (auto info = view.run(b)) out.push_back(std::move(*info));
    }
  }
  std::sort(out.begin(), out.end(), run_less);
  return out;
}

std::vector<std::string> find_studies_by_title(const Store& store,
                                               std::string_view text) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string needle = lower(text);
  std::vector<std::string> out;
  for (const auto& st : catalog_studies(store)) {
    if (lower(st.title).find(needle) != std::string::npos) {
      out.push_back(st.identifier);
    }
  }
  return out;
}

std::map<std::pair<std::string, ProblemInstanceKey>, int> next_repetitions(
    const Store& store) {
  std::map<std::pair<std::string, ProblemInstanceKey>, int> out;
  for (const auto& run : find_runs(store, {})) {
    int& next = out[{run.algorithm, run.problem}];
    next = std::max(next, run.repetition + 1);
  }
  return out;
}

}  // namespace optkb
