// Acceptance gate: one PASS/FAIL line per primary criterion.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "agreement.hpp"
#include "fixtures.hpp"
#include "kb_fixture.hpp"
#include "optkb/archive.hpp"
#include "optkb/competency.hpp"
#include "optkb/ela.hpp"
#include "optkb/errors.hpp"
#include "optkb/knowledge_base.hpp"
#include "optkb/ntriples.hpp"
#include "optkb/oql.hpp"
#include "optkb/vocabulary.hpp"
#include "oracles.hpp"

using namespace optkb;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::int64_t uniform_int(fixture::Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

ProblemFilter single_run(const RunTrace& t) {
  ProblemFilter f;
  f.suite = t.problem.suite;
  f.function_id = t.problem.function_id;
  f.dimension = t.problem.dimension;
  f.instances = {t.problem.instance_number};
  f.algorithms = {t.algorithm.name};
  return f;
}

std::string opt_value(const std::optional<double>& v) { return v ? format_double(*v) : "absent"; }

Outcome round_trip() {
  Outcome o;
  const auto start = Clock::now();
  fixture::Rng rng(101);
  archive::TempDir dir;
  fixture::CocoLayout layout;
  layout.algorithms = {"BIPOP-CMA-ES", "NELDER-MEAD", "LSSTEP"};
  for (int f = 1; f <= 24; ++f) layout.functions.push_back(f);
  layout.instances = {1, 2, 3, 4, 5};
  layout.dimensions = {2, 5};
  layout.min_events = 10;
  layout.max_events = 18;
  const auto traces = fixture::write_coco_tree(rng, dir.path(), layout);

  KnowledgeBase kb;
  CocoRequest req;
  req.root = dir.path();
  req.study = {"roundtrip-study", "Round trip", {"Tester"}, "2024", SourcePlatform::Coco};
  const auto report = kb.ingest_coco(req);
  if (report.records_accepted != traces.size()) {
    o.fail("accepted " + std::to_string(report.records_accepted) + " of " +
           std::to_string(traces.size()));
  }
  const auto store = kb.snapshot();

  int budget_probes = 0;
  int target_probes = 0;
  for (int probe = 0; probe < 200 && o.ok; ++probe) {
    const auto& t = traces[rng() % traces.size()];
    const auto kind = rng() % 2 ? MeasureKind::BestNoiseFreeFitness : MeasureKind::BestMeasuredFitness;
    const auto filter = single_run(t);
    if (probe % 2 == 0) {
      ++budget_probes;
      const std::int64_t budget = uniform_int(rng, 1, t.events.back().evaluation_number * 5 / 4 + 1);
      const auto rows = q5_fitness_at_budget(*store, filter, budget, kind);
      const auto want = oracle::scan_budget(t, budget, kind);
      if (rows.size() != 1) {
        o.fail("q5 returned " + std::to_string(rows.size()) + " rows");
      } else if (rows[0].value.has_value() != want.has_value() ||
                 (want && std::memcmp(&*rows[0].value, &*want, sizeof(double)) != 0)) {
        o.fail("q5 " + t.algorithm.name + " budget " + std::to_string(budget) + ": " +
               opt_value(rows[0].value) + " vs " + opt_value(want));
      }
    } else {
      ++target_probes;
      const auto& e = t.events[rng() % t.events.size()];
      const double v = kind == MeasureKind::BestNoiseFreeFitness ? e.best_raw_value : e.best_measured_value;
      const double target = rng() % 4 == 0 ? v * 0.5 - 1.0 : v;
      const auto rows = q6_evals_to_target(*store, filter, target, kind);
      const auto want = oracle::scan_target(t, target, kind);
      if (rows.size() != 1 || rows[0].evaluations != want) {
        o.fail("q6 " + t.algorithm.name + " target " + format_double(target));
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) o.fail("took " + fmt(elapsed) + " s");
  if (o.ok) {
    o.detail = std::to_string(traces.size()) + " runs, " + std::to_string(store->size()) + " triples, " +
               std::to_string(budget_probes) + " budget + " + std::to_string(target_probes) +
               " target probes exact, " + fmt(elapsed) + " s";
  }
  return o;
}

Outcome study_window(const fixture::CompetencyKb& fx) {
  Outcome o;
  const auto text = fixture::read_file(fixture::source_path("docs/queries/study_budget_window.oql"));
  auto q = oql::parse_query(text);
  const auto store = fx.kb->snapshot();
  const auto triples = store->triples();

  const auto limited = oql::evaluate(q, *store).rows;
  const auto limited_oracle = oracle::nested_loop(q, triples);
  q.limit.reset();
  const auto full = oql::evaluate(q, *store).rows;
  const auto full_oracle = oracle::nested_loop(q, triples);

  if (full != full_oracle) o.fail("full row set differs from the join oracle");
  if (full.size() <= 5) o.fail("window holds only " + std::to_string(full.size()) + " rows");
  if (limited.size() != 5) o.fail("LIMIT 5 returned " + std::to_string(limited.size()) + " rows");
  if (limited != limited_oracle) o.fail("LIMIT 5 rows differ from the oracle");
  if (o.ok) o.detail = std::to_string(full.size()) + " rows equal the oracle, LIMIT 5 gives 5";
  return o;
}

Outcome competency(const fixture::CompetencyKb& fx) {
  Outcome o;
  std::string names;
  for (const auto& c : fixture::competency_agreement(fx)) {
    if (!c.ok) o.fail(c.name + ": " + c.detail);
    names += (names.empty() ? "" : " ") + c.name + "(" + std::to_string(c.rows) + ")";
  }
  if (o.ok) o.detail = names;
  return o;
}

Outcome query_oracle() {
  Outcome o;
  fixture::Rng rng(303);
  std::size_t largest = 0;
  std::size_t total_rows = 0;
  const auto start = Clock::now();
  for (int s = 0; s < 100 && o.ok; ++s) {
    const auto triples = fixture::random_triples(rng, static_cast<std::size_t>(uniform_int(rng, 200, 10000)));
    largest = std::max(largest, triples.size());
    Store store;
    store.insert_batch(triples);
    for (int k = 0; k < 10; ++k) {
      const auto q = fixture::random_query(rng, triples);
      const auto got = oql::evaluate(q, store).rows;
      total_rows += got.size();
      if (got != oracle::nested_loop(q, triples)) {
        o.fail("store " + std::to_string(s) + ": " + oql::to_string(q));
        break;
      }
    }
  }
  if (o.ok) {
    o.detail = "1000 queries over 100 stores (max " + std::to_string(largest) + " triples), " +
               std::to_string(total_rows) + " rows, 0 discrepancies, " + fmt(seconds_since(start)) + " s";
  }
  return o;
}

std::vector<Triple> awkward_literals(fixture::Rng& rng) {
  const std::vector<std::string> strings{"", "quote \" inside", "back\\slash", "line\nbreak",
                                         "tab\there", "carriage\rreturn", "caf\xc3\xa9 \xe2\x82\xac",
                                         "\xf0\x9f\x93\x88 chart", "trailing space "};
  std::vector<Triple> out;
  for (const auto& s : strings) {
    if (rng() % 2) continue;
    out.push_back({Term::iri("http://ex.org/lit"), Term::iri("http://ex.org/label"), Term::string(s)});
  }
  out.push_back({Term::iri("http://ex.org/lit"), Term::iri("http://ex.org/big"),
                 Term::real(1e308 * (rng() % 2 ? 1 : -1))});
  out.push_back({Term::iri("http://ex.org/lit"), Term::iri("http://ex.org/tiny"), Term::real(5e-324)});
  out.push_back({Term::iri("http://ex.org/lit"), Term::iri("http://ex.org/third"), Term::real(1.0 / 3.0)});
  out.push_back({Term::iri("http://ex.org/lit"), Term::iri("http://ex.org/neg"),
                 Term::integer(-static_cast<std::int64_t>(rng() % 1000000007))});
  return out;
}

Outcome persistence() {
  Outcome o;
  fixture::Rng rng(404);
  std::size_t total = 0;
  for (int s = 0; s < 100 && o.ok; ++s) {
    auto triples = fixture::random_triples(rng, static_cast<std::size_t>(uniform_int(rng, 0, 3000)));
    const auto extra = awkward_literals(rng);
    triples.insert(triples.end(), extra.begin(), extra.end());
    Store store;
    store.insert_batch(triples);
    total += store.size();
    const auto first = export_ntriples(store);
    const auto imported = import_ntriples(first);
    const auto second = export_ntriples(imported.store);
    if (first != second) o.fail("store " + std::to_string(s) + ": second export differs");
    const auto a = store.triples();
    const auto b = imported.store.triples();
    if (std::set<Triple>(a.begin(), a.end()) != std::set<Triple>(b.begin(), b.end())) {
      o.fail("store " + std::to_string(s) + ": imported triple set differs");
    }
  }
  if (o.ok) o.detail = "100 stores, " + std::to_string(total) + " triples, byte-identical re-export";
  return o;
}

Outcome validation() {
  Outcome o;
  fixture::Rng rng(505);
  int trials = 0;
  for (; trials < 12 && o.ok; ++trials) {
    archive::TempDir dir;
    fixture::CocoLayout layout;
    layout.algorithms = {"ALG-A", "ALG-B"};
    layout.functions = {static_cast<int>(uniform_int(rng, 1, 24)), 24 - trials};
    if (layout.functions[0] == layout.functions[1]) layout.functions.pop_back();
    layout.instances = {1, 2};
    layout.dimensions = {2, 5};
    const auto traces = fixture::write_coco_tree(rng, dir.path(), layout);
    const auto victim = static_cast<std::size_t>(rng() % traces.size());
    const auto event = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(traces[victim].events.size()) - 1));
    fixture::corrupt_monotonicity(dir.path(), traces, victim, event);

    KnowledgeBase kb;
    CocoRequest req;
    req.root = dir.path();
    req.study = {"validation", "Validation", {}, "2024", SourcePlatform::Coco};
    const auto report = kb.ingest_coco(req);
    const bool diagnosed = std::any_of(report.diagnostics.begin(), report.diagnostics.end(), [](const Diagnostic& d) {
      return d.message.find("non-monotone") != std::string::npos;
    });
    const auto runs = find_runs(*kb.snapshot(), {});
    const bool victim_stored = std::any_of(runs.begin(), runs.end(), [&](const RunInfo& r) {
      return r.algorithm == traces[victim].algorithm.name && r.problem == traces[victim].problem;
    });
    if (report.records_excluded != 1 || runs.size() != traces.size() - 1 || victim_stored || !diagnosed) {
      o.fail("trial " + std::to_string(trials) + ": excluded " + std::to_string(report.records_excluded) +
             ", stored " + std::to_string(runs.size()) + "/" + std::to_string(traces.size()));
    }
  }
  if (o.ok) o.detail = std::to_string(trials) + " corrupted fixtures, each excluded exactly the corrupted trace";
  return o;
}

Outcome nevergrad() {
  Outcome o;
  fixture::Rng rng(606);
  const auto rows = fixture::make_nevergrad_rows(rng, 300);
  KnowledgeBase kb;
  NevergradRequest req;
  req.csv = fixture::nevergrad_csv(rows);
  req.source = "nevergrad.csv";
  req.suite = "YABBOB";
  const auto report = kb.ingest_nevergrad(req);
  if (report.records_accepted != rows.size()) o.fail("accepted " + std::to_string(report.records_accepted));
  const auto store = kb.snapshot();

  ProblemFilter yabbob;
  yabbob.suite = "YABBOB";
  std::map<int, std::string> names;
  for (const auto& f : catalog_functions(*store, yabbob)) names[f.function_id] = f.name.value_or("");

  using Key = std::tuple<std::string, std::string, int, std::int64_t, double>;
  std::multiset<Key> want;
  for (const auto& r : rows) want.insert({r.optimizer, r.function_name, r.dimension, r.budget, r.loss});
  std::multiset<Key> got;
  const auto k = MeasureKind::BestNoiseFreeFitness;
  std::size_t smaller = 0;
  for (const auto& run : find_runs(*store, yabbob)) {
    ProblemFilter f;
    f.suite = run.problem.suite;
    f.function_id = run.problem.function_id;
    f.dimension = run.problem.dimension;
    f.instances = {run.problem.instance_number};
    f.algorithms = {run.algorithm};
    auto value_of = [&](std::int64_t budget) -> std::optional<double> {
      for (const auto& row : q5_fitness_at_budget(*store, f, budget, k)) {
        if (row.run == run.iri) return row.value;
      }
      o.fail("run " + run.iri + " missing from q5");
      return std::nullopt;
    };
    const auto full = value_of(run.budget);
    if (!full) {
      o.fail("no value at full budget for " + run.iri);
      continue;
    }
    got.insert({run.algorithm, names[run.problem.function_id], run.problem.dimension, run.budget, *full});
    for (std::int64_t b : {run.budget - 1, uniform_int(rng, 1, run.budget - 1)}) {
      ++smaller;
      if (value_of(b)) o.fail("value below full budget for " + run.iri);
    }
  }
  if (got != want) o.fail("stored (optimizer, function, dimension, budget, loss) differ from the CSV rows");
  if (o.ok) o.detail = std::to_string(rows.size()) + " rows exact at full budget, " + std::to_string(smaller) +
                       " smaller budgets absent";
  return o;
}

Outcome ela_median() {
  Outcome o;
  fixture::Rng rng(707);
  const auto& features = fixture::ela_feature_set();
  const std::vector<int> dims{2, 3, 5, 10, 20, 40};
  std::vector<ela::Observation> observations;
  std::map<std::tuple<int, int, int, std::string, int, int>, std::vector<double>> groups;
  for (int g = 0; g < 10000; ++g) {
    ela::Observation base;
    const int fid = 1 + g % 24;
    const int inst = 1 + (g / 24) % 5;
    const int dim = dims[(g / 120) % 6];
    const auto& feature = features[(g / 720) % features.size()];
    base.problem = {"BBOB", fid, inst, dim};
    base.feature_name = feature.first;
    base.feature_group = *feature_group_from_name(feature.second);
    base.sampling_technique = static_cast<SamplingTechnique>(rng() % 5);
    base.sample_size_factor = kStandardSampleSizeFactors[rng() % kStandardSampleSizeFactors.size()];
    const int n = static_cast<int>(uniform_int(rng, 1, 25));
    auto& values = groups[{fid, inst, dim, feature.first, static_cast<int>(base.sampling_technique),
                           base.sample_size_factor}];
    for (int r = 0; r < n; ++r) {
      auto obs = base;
      obs.repetition = r;
      obs.value = rng() % 7 == 0 ? static_cast<double>(uniform_int(rng, -3, 3))
                                 : std::uniform_real_distribution<double>(-1e3, 1e3)(rng);
      values.push_back(obs.value);
      observations.push_back(std::move(obs));
    }
  }
  std::shuffle(observations.begin(), observations.end(), rng);
  const auto records = ela::aggregate_medians(observations);
  if (records.size() != groups.size()) o.fail(std::to_string(records.size()) + " records for " +
                                              std::to_string(groups.size()) + " groups");
  for (const auto& rec : records) {
    auto it = groups.find({rec.problem.function_id, rec.problem.instance_number, rec.problem.dimension,
                           rec.feature_name, static_cast<int>(rec.sampling_technique), rec.sample_size_factor});
    if (it == groups.end()) {
      o.fail("unexpected group " + rec.feature_name);
      break;
    }
    const double want = oracle::sorted_median(it->second);
    if (std::memcmp(&want, &rec.median_value, sizeof(double)) != 0 ||
        rec.repetitions != static_cast<int>(it->second.size())) {
      o.fail("median of " + rec.feature_name + ": " + format_double(rec.median_value) + " vs " + format_double(want));
      break;
    }
  }
  if (o.ok) o.detail = std::to_string(groups.size()) + " groups, " + std::to_string(observations.size()) +
                       " observations, medians bit-equal";
  return o;
}

Outcome ela_shape() {
  Outcome o;
  const auto start = Clock::now();
  const auto& features = fixture::ela_feature_set();
  const std::vector<int> dims{2, 3, 5, 10, 20, 40};
  const std::vector<std::string> techniques{"LHS", "iLHS", "Random", "Sobol", "Randu"};
  auto value_of = [](int f, int i, int d, std::size_t feat, std::size_t tech, int factor) {
    return static_cast<double>(((f * 7 + i) * 41 + d) * 53 + static_cast<int>(feat)) / 97.0 +
           static_cast<double>(tech) * 1e3 + factor * 1e-3;
  };

  KnowledgeBase kb;
  std::size_t accepted = 0;
  for (int f = 1; f <= 24; ++f) {
    std::string csv =
        "suite,function_id,instance,dimension,feature_name,feature_group,"
        "sampling_technique,sample_size_factor,median_value,repetitions\n";
    for (int i = 1; i <= 5; ++i) {
      for (int d : dims) {
        for (std::size_t t = 0; t < techniques.size(); ++t) {
          for (int factor : kStandardSampleSizeFactors) {
            for (std::size_t k = 0; k < features.size(); ++k) {
              csv += "BBOB," + std::to_string(f) + "," + std::to_string(i) + "," + std::to_string(d) + "," +
                     features[k].first + "," + features[k].second + "," + techniques[t] + "," +
                     std::to_string(factor) + "," + format_double(value_of(f, i, d, k, t, factor)) + ",30\n";
            }
          }
        }
      }
    }
    accepted += kb.ingest_ela({std::move(csv), "ela_f" + std::to_string(f) + ".csv", ','}).records_accepted;
  }
  const std::size_t expected = 24u * 5 * 6 * 5 * 7 * 46;
  const auto store = kb.snapshot();
  const auto nodes = store->match({std::nullopt, vocab::rdf_type(), vocab::ela_feature()});
  if (accepted != expected) o.fail("accepted " + std::to_string(accepted) + " of " + std::to_string(expected));
  if (nodes.size() != expected) o.fail(std::to_string(nodes.size()) + " feature nodes for " + std::to_string(expected) + " keys");

  fixture::Rng rng(808);
  for (int probe = 0; probe < 200 && o.ok; ++probe) {
    const int f = static_cast<int>(uniform_int(rng, 1, 24));
    const int i = static_cast<int>(uniform_int(rng, 1, 5));
    const int d = dims[rng() % dims.size()];
    const auto t = static_cast<std::size_t>(rng() % techniques.size());
    const int factor = kStandardSampleSizeFactors[rng() % kStandardSampleSizeFactors.size()];
    const auto got = q4_ela(*store, {"BBOB", f, i, d}, *sampling_from_name(techniques[t]), factor);
    if (got.size() != 1 || got.begin()->first != factor || got.begin()->second.size() != features.size()) {
      o.fail("q4 probe " + std::to_string(probe) + " returned " +
             std::to_string(got.empty() ? 0 : got.begin()->second.size()) + " features");
      break;
    }
    for (std::size_t k = 0; k < features.size(); ++k) {
      const auto it = got.begin()->second.find(features[k].first);
      if (it == got.begin()->second.end() || it->second != value_of(f, i, d, k, t, factor)) {
        o.fail("q4 probe " + std::to_string(probe) + " wrong value for " + features[k].first);
        break;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(expected) + " unique keys, " + std::to_string(store->size()) +
                       " triples, 200 q4 probes x 46 features, " + fmt(seconds_since(start)) + " s";
  return o;
}

Outcome performance() {
  Outcome o;
  double rate = 0.0;
  {
    fixture::Rng rng(909);
    const auto triples = fixture::random_triples(rng, 1000000);
    Store store;
    const auto t0 = Clock::now();
    store.insert_batch(triples);
    rate = static_cast<double>(store.size()) / seconds_since(t0);
    if (store.size() < 1000000) o.fail("random store holds " + std::to_string(store.size()) + " triples");
    if (rate < 100000.0) o.fail("insert rate " + fmt(rate, 0) + " triples/s");
  }

  fixture::Rng rng(910);
  archive::TempDir dir;
  fixture::CocoLayout layout;
  layout.algorithms = {"BIPOP-CMA-ES", "NELDER-MEAD", "LSSTEP"};
  for (int f = 1; f <= 24; ++f) layout.functions.push_back(f);
  layout.instances = {1, 2, 3, 4, 5};
  layout.dimensions = {2, 5, 10, 20};
  fixture::write_coco_tree(rng, dir.path(), layout);
  KnowledgeBase kb;
  CocoRequest req;
  req.root = dir.path();
  req.study = {"performance-study", "Performance", {}, "2024", SourcePlatform::Coco};
  kb.ingest_coco(req);
  const auto store = kb.snapshot();
  if (store->size() < 1000000) o.fail("study store holds " + std::to_string(store->size()) + " triples");

  const std::vector<std::string> joins{
      "SELECT ?e ?n ?k ?v WHERE { ?e opt:evaluationNumber ?n . ?e opt:hasSpecifiedOutput ?m . ?m a ?k . ?m opt:hasValue ?v }",
      "SELECT ?run ?f ?i ?d WHERE { ?run opt:hasSpecifiedInput ?p . ?p opt:functionId ?f . ?p opt:instanceNumber ?i . ?p opt:dimensionality ?d }",
      "SELECT ?run ?x WHERE { ?run opt:hasPart ?x . ?x opt:hasPart ?e . ?e opt:evaluationNumber ?n . ?e opt:hasSpecifiedOutput ?m }",
      "SELECT ?e ?v WHERE { ?e opt:hasSpecifiedOutput ?m . ?m a opt:BestNoiseFreeFitness . ?m opt:hasValue ?v . ?e opt:evaluationNumber ?n . FILTER(?n >= 1000 && ?n <= 2000) }",
      "SELECT ?s ?run WHERE { ?s dc:identifier \"performance-study\" . ?s opt:hasPart ?run . ?run opt:hasSpecifiedInput ?p . ?p opt:dimensionality 20 }",
      "SELECT ?name ?run WHERE { ?run opt:hasPart ?x . ?x opt:realizes ?impl . ?impl opt:isConcretizationOf ?spec . ?spec opt:name ?name }",
      "SELECT ?sol ?part ?v WHERE { ?e opt:hasSpecifiedOutput ?sol . ?sol a opt:Solution . ?sol opt:hasPart ?part . ?part opt:hasCoordinateValue ?v }",
      "SELECT ?run ?e WHERE { ?p opt:functionId 7 . ?run opt:hasSpecifiedInput ?p . ?run opt:hasPart ?x . ?x opt:hasPart ?e }",
  };
  double worst = 0.0;
  std::size_t max_rows = 0;
  for (const auto& text : joins) {
    const auto q = oql::parse_query(text);
    const auto t1 = Clock::now();
    const auto rows = oql::evaluate(q, *store).rows.size();
    const double s = seconds_since(t1);
    max_rows = std::max(max_rows, rows);
    worst = std::max(worst, s);
    if (rows == 0) o.fail("join returned no rows: " + text);
    if (s >= 2.0) o.fail("join took " + fmt(s) + " s: " + text);
  }
  if (o.ok) o.detail = "insert " + fmt(rate, 0) + " triples/s on 1000000 random triples; " +
                       std::to_string(joins.size()) + " 4-pattern joins on a " + std::to_string(store->size()) +
                       "-triple study store, slowest " + fmt(worst, 3) + " s, largest result " +
                       std::to_string(max_rows) + " rows";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: run only criteria whose name contains it.
  const std::string only = argc > 1 ? argv[1] : "";
  const fixture::CompetencyKb fx = fixture::build_competency_kb();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"end-to-end round trip", round_trip},
      {"study budget window query", [&] { return study_window(fx); }},
      {"competency questions Q1-Q7", [&] { return competency(fx); }},
      {"query engine vs nested-loop oracle", query_oracle},
      {"persistence fixed point", persistence},
      {"monotonicity validation", validation},
      {"nevergrad full-budget answers", nevergrad},
      {"ELA median aggregation", ela_median},
      {"ELA dataset shape", ela_shape},
      {"performance", performance},
  };
  int failed = 0;
  int ran = 0;
  for (const auto& [name, check] : criteria) {
    if (name.find(only) == std::string::npos) continue;
    ++ran;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
