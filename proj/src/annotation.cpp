#include "optkb/annotation.hpp"

#include <limits>

#include "optkb/vocabulary.hpp"

namespace optkb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class TripleSink {
 public:
  explicit TripleSink(std::vector<Triple>& out) : out_(out) {}

  void add(const std::string& s, Term p, Term o) {
    out_.push_back({Term::iri(s), std::move(p), std::move(o)});
  }
  void link(const std::string& s, Term p, const std::string& o) {
    add(s, std::move(p), Term::iri(o));
  }
  void type(const std::string& s, Term cls) {
    add(s, vocab::rdf_type(), std::move(cls));
  }

 private:
  std::vector<Triple>& out_;
};

double summary_value(const RunTrace& trace, MeasureKind kind) {
  if (trace.events.empty()) return trace.final_best_raw;
  if (kind == MeasureKind::BestNoiseFreeFitness) return trace.final_best_raw;
  return measure_value(trace.events.back(), kind);
}

void emit_measures(TripleSink& sink, const std::string& producer,
                   const std::vector<double>& values,
                   const std::vector<double>* previous) {
  for (std::size_t k = 0; k < kAllMeasureKinds.size(); ++k) {
    const MeasureKind kind = kAllMeasureKinds[k];
    const std::string m = measure_iri(producer, kind);
    sink.link(producer, vocab::has_specified_output(), m);
    sink.type(m, vocab::measure_class(kind));
    sink.add(m, vocab::has_value(), Term::real(values[k]));
    if (previous && is_best_so_far(kind)) {
      sink.add(m, vocab::previous_value(), Term::real((*previous)[k]));
    }
  }
}

std::vector<double> event_values(const EvaluationRecord& e) {
  std::vector<double> v;
  for (MeasureKind kind : kAllMeasureKinds) v.push_back(measure_value(e, kind));
  return v;
}

}  // namespace

std::string_view granularity_name(Granularity g) {
  return g == Granularity::RunLevel ? "RunLevel" : "EvaluationLevel";
}

std::optional<Granularity> granularity_from_name(std::string_view name) {
  if (name == "RunLevel" || name == "run") return Granularity::RunLevel;
  if (name == "EvaluationLevel" || name == "eval" || name == "evaluation") {
    return Granularity::EvaluationLevel;
  }
  return std::nullopt;
}

std::vector<Triple> annotate_problem_instance(const ProblemMeta& meta) {
  std::vector<Triple> out;
  TripleSink sink(out);
  const auto& key = meta.key;
  const std::string p = problem_iri(key);
  const std::string s = suite_iri(key.suite);

  sink.type(p, vocab::benchmark_problem());
  if (find_suite(key.suite)) {
    sink.type(p, vocab::function_class(key.suite, key.function_id));
  }
  sink.link(p, vocab::suite_member(), s);
  sink.add(p, vocab::function_id(), Term::integer(key.function_id));
  sink.add(p, vocab::instance_number(), Term::integer(key.instance_number));
  sink.add(p, vocab::dimensionality(), Term::integer(key.dimension));
  sink.add(p, vocab::number_of_objectives(),
           Term::integer(meta.number_of_objectives));
  sink.add(p, vocab::number_of_constraints(),
           Term::integer(meta.number_of_constraints));
  sink.add(p, vocab::noise_level(), Term::real(meta.noise_level));
  sink.add(p, vocab::decision_space_type(), Term::string("real-vector"));
  sink.add(p, vocab::objective_space_type(),
           Term::string(meta.number_of_objectives > 1 ? "real-vector" : "real"));
  for (Transformation t : meta.transformations) {
    sink.add(p, vocab::has_transformation(),
             Term::string(std::string(transformation_name(t))));
  }
  if (meta.function_name) {
    sink.add(p, vocab::function_name(), Term::string(*meta.function_name));
  }
  sink.type(s, vocab::benchmark_suite());
  sink.add(s, vocab::name(), Term::string(key.suite));
  return out;
}

std::vector<Triple> annotate_algorithm(const AlgorithmRef& algorithm) {
  std::vector<Triple> out;
  TripleSink sink(out);
  const std::string spec = algorithm_iri(algorithm.name);
  const std::string impl = algorithm_implementation_iri(algorithm.name);
  const std::string exec = algorithm_execution_iri(algorithm.name);

  sink.type(spec, vocab::optimization_algorithm());
  sink.add(spec, vocab::name(), Term::string(algorithm.name));
  if (algorithm.family) {
    sink.add(spec, vocab::family(), Term::string(*algorithm.family));
  }
  sink.type(impl, vocab::algorithm_implementation());
  sink.link(impl, vocab::is_concretization_of(), spec);
  sink.type(exec, vocab::algorithm_execution());
  sink.link(exec, vocab::realizes(), impl);
  return out;
}

std::vector<Triple> annotate_study(const Study& study,
                                   const std::vector<std::string>& run_iris) {
  std::vector<Triple> out;
  TripleSink sink(out);
  const std::string st = study_iri(study.identifier);
  sink.type(st, vocab::study_execution());
  sink.add(st, vocab::dc_identifier(), Term::string(study.identifier));
  if (!study.title.empty()) {
    sink.add(st, vocab::dc_title(), Term::string(study.title));
  }
  if (!study.date.empty()) {
    sink.add(st, vocab::dc_date(), Term::date(study.date));
  }
  for (const auto& creator : study.creators) {
    sink.add(st, vocab::dc_creator(), Term::string(creator));
  }
  sink.add(st, vocab::source_platform(),
           Term::string(std::string(platform_name(study.source_platform))));
  for (const auto& run : run_iris) sink.link(st, vocab::has_part(), run);
  return out;
}

Annotation annotate_run(const RunTrace& trace, Granularity granularity) {
  Annotation result;
  TripleSink sink(result.triples);

  if (granularity == Granularity::EvaluationLevel && trace.events.empty()) {
    granularity = Granularity::RunLevel;
    result.warnings.push_back(
        "run " + run_iri(trace.algorithm.name, trace.problem, trace.repetition) +
        " has no evaluation events; annotated at run level");
  }

  const std::string b =
      run_iri(trace.algorithm.name, trace.problem, trace.repetition);
  const std::string x = experiment_iri(b);
  const std::string problem = problem_iri(trace.problem);

  sink.type(b, vocab::benchmark_execution());
  sink.link(b, vocab::has_part(), algorithm_execution_iri(trace.algorithm.name));
  sink.link(b, vocab::has_part(), x);
  sink.link(b, vocab::has_specified_input(), problem);
  sink.add(b, vocab::repetition(), Term::integer(trace.repetition));
  sink.add(b, vocab::budget(), Term::integer(trace.total_evaluations));
  sink.add(b, vocab::num_workers(), Term::integer(trace.num_workers));
  sink.add(b, vocab::granularity(),
           Term::string(std::string(granularity_name(granularity))));

  sink.type(x, vocab::experiment_run());
  sink.link(x, vocab::has_specified_input(), problem);
  std::vector<double> summary;
  for (MeasureKind kind : kAllMeasureKinds) {
    summary.push_back(summary_value(trace, kind));
  }
  emit_measures(sink, x, summary, nullptr);

  if (granularity == Granularity::RunLevel) return result;

  std::vector<double> previous(kAllMeasureKinds.size(), kInf);
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& event = trace.events[i];
    const std::string e = evaluation_iri(b, event.evaluation_number);
    const double next =
        i + 1 < trace.events.size()
            ? static_cast<double>(trace.events[i + 1].evaluation_number)
            : kInf;

    sink.link(x, vocab::has_part(), e);
    sink.type(e, vocab::function_evaluation_run());
    sink.add(e, vocab::evaluation_number(),
             Term::integer(event.evaluation_number));
    sink.add(e, vocab::next_improvement_at(), Term::real(next));
    const auto values = event_values(event);
    emit_measures(sink, e, values, &previous);
    previous = values;

    if (!event.coordinates.empty()) {
      const std::string sol = solution_iri(e);
      sink.link(e, vocab::has_specified_output(), sol);
      sink.type(sol, vocab::solution());
      for (std::size_t j = 0; j < event.coordinates.size(); ++j) {
        const std::string part = solution_part_iri(sol, j);
        sink.link(sol, vocab::has_part(), part);
        sink.type(part, vocab::solution_part());
        sink.add(part, vocab::coordinate_index(),
                 Term::integer(static_cast<std::int64_t>(j)));
        sink.add(part, vocab::has_coordinate_value(),
                 Term::real(event.coordinates[j]));
      }
    }
  }
  return result;
}

std::vector<Triple> annotate_ela(const ELARecord& record) {
  std::vector<Triple> out;
  TripleSink sink(out);
  const std::string node = ela_iri(record);
  const std::string sampling = sampling_iri(record.sampling_technique);

  sink.type(node, vocab::ela_feature());
  sink.link(node, vocab::is_about(), problem_iri(record.problem));
  sink.add(node, vocab::has_value(), Term::real(record.median_value));
  sink.link(node, vocab::has_sampling_technique(), sampling);
  sink.add(node, vocab::sample_size_factor(),
           Term::integer(record.sample_size_factor));
  sink.add(node, vocab::feature_name(), Term::string(record.feature_name));
  sink.add(node, vocab::feature_group(),
           Term::string(std::string(feature_group_name(record.feature_group))));
  sink.add(node, vocab::repetitions(), Term::integer(record.repetitions));
  sink.type(sampling, vocab::sampling_technique_class());
  sink.add(sampling, vocab::name(),
           Term::string(std::string(sampling_name(record.sampling_technique))));
  return out;
}

}  // namespace optkb
