#include "optkb/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace optkb::vocab {

namespace {

std::string opt_iri(std::string_view local) {
  return std::string(kOpt) + std::string(local);
}

struct Entry {
  std::string_view ns;
  std::string_view local;
  TermRole role;
  std::string_view domain;
  std::string_view range;
  std::string_view description;
};

// clang-format off
constexpr Entry kEntries[] = {
  // Classes
  {kOpt, "BenchmarkProblem", TermRole::Class, "", "", "A concrete benchmark problem instance."},
  {kOpt, "BenchmarkSuite", TermRole::Class, "", "", "A named test suite (BBOB, YABBOB, ...)."},
  {kOpt, "OptimizationAlgorithm", TermRole::Class, "", "", "Algorithm specification."},
  {kOpt, "OptimizationAlgorithmImplementation", TermRole::Class, "", "", "Implementation of an algorithm specification; the published algorithm variant."},
  {kOpt, "OptimizationAlgorithmExecution", TermRole::Class, "", "", "Execution process realizing an implementation."},
  {kOpt, "BenchmarkStudyExecution", TermRole::Class, "", "", "A benchmark study; groups benchmark executions."},
  {kOpt, "BenchmarkExecution", TermRole::Class, "", "", "One algorithm run on one problem instance."},
  {kOpt, "ExperimentRun", TermRole::Class, "", "", "Sub-process of a benchmark execution producing performance measures."},
  {kOpt, "FunctionEvaluationRun", TermRole::Class, "", "", "One logged (improving) function evaluation."},
  {kOpt, "Solution", TermRole::Class, "", "", "Candidate solution evaluated by a function evaluation run."},
  {kOpt, "SolutionPart", TermRole::Class, "", "", "One coordinate of a solution."},
  {kOpt, "MeasuredFitness", TermRole::Class, "", "", "Fitness as returned to the algorithm."},
  {kOpt, "BestMeasuredFitness", TermRole::Class, "", "", "Best-so-far measured fitness."},
  {kOpt, "NoiseFreeFitness", TermRole::Class, "", "", "Noise-free fitness minus the optimum."},
  {kOpt, "BestNoiseFreeFitness", TermRole::Class, "", "", "Best-so-far noise-free fitness minus the optimum."},
  {kOpt, "ELAFeature", TermRole::Class, "", "", "Median value of one landscape feature."},
  {kOpt, "SamplingTechnique", TermRole::Class, "", "", "Sampling strategy used to compute landscape features."},
  // Object properties
  {kOpt, "hasPart", TermRole::ObjectProperty, "BenchmarkStudyExecution | BenchmarkExecution | ExperimentRun | Solution", "BenchmarkExecution | OptimizationAlgorithmExecution | ExperimentRun | FunctionEvaluationRun | SolutionPart", "Parthood between processes and between a solution and its parts."},
  {kOpt, "hasSpecifiedInput", TermRole::ObjectProperty, "BenchmarkExecution | ExperimentRun", "BenchmarkProblem", "Problem instance a run is executed on."},
  {kOpt, "hasSpecifiedOutput", TermRole::ObjectProperty, "ExperimentRun | FunctionEvaluationRun", "measure | Solution", "Performance measures and solutions produced by a run."},
  {kOpt, "isAbout", TermRole::ObjectProperty, "ELAFeature", "BenchmarkProblem", "Problem instance a feature describes."},
  {kOpt, "isConcretizationOf", TermRole::ObjectProperty, "OptimizationAlgorithmImplementation", "OptimizationAlgorithm", "Implementation to specification link."},
  {kOpt, "realizes", TermRole::ObjectProperty, "OptimizationAlgorithmExecution", "OptimizationAlgorithmImplementation", "Execution to implementation link."},
  {kOpt, "suiteMember", TermRole::ObjectProperty, "BenchmarkProblem", "BenchmarkSuite", "Suite a problem instance belongs to."},
  {kOpt, "hasSamplingTechnique", TermRole::ObjectProperty, "ELAFeature", "SamplingTechnique", "Sampling technique used for a feature value."},
  // Data properties
  {kOpt, "dimensionality", TermRole::DataProperty, "BenchmarkProblem", "xsd:integer", "Search-space dimension."},
  {kOpt, "numberOfObjectives", TermRole::DataProperty, "BenchmarkProblem", "xsd:integer", "Number of objectives."},
  {kOpt, "numberOfConstraints", TermRole::DataProperty, "BenchmarkProblem", "xsd:integer", "Number of constraints."},
  {kOpt, "noiseLevel", TermRole::DataProperty, "BenchmarkProblem", "xsd:double", "Noise level (0 for noiseless problems)."},
  {kOpt, "instanceNumber", TermRole::DataProperty, "BenchmarkProblem", "xsd:integer", "Instance number within the function."},
  {kOpt, "functionId", TermRole::DataProperty, "BenchmarkProblem", "xsd:integer", "Function number within the suite."},
  {kOpt, "functionName", TermRole::DataProperty, "BenchmarkProblem", "xsd:string", "Source function name when the platform names functions."},
  {kOpt, "decisionSpaceType", TermRole::DataProperty, "BenchmarkProblem", "xsd:string", "Datatype of the decision space (first record component)."},
  {kOpt, "objectiveSpaceType", TermRole::DataProperty, "BenchmarkProblem", "xsd:string", "Datatype of the objective space (second record component)."},
  {kOpt, "hasTransformation", TermRole::DataProperty, "BenchmarkProblem", "xsd:string", "Applied transformation tag (shift, scale, rotate, translate, permute)."},
  {kOpt, "name", TermRole::DataProperty, "OptimizationAlgorithm | OptimizationAlgorithmImplementation | BenchmarkSuite | SamplingTechnique", "xsd:string", "Display name."},
  {kOpt, "family", TermRole::DataProperty, "OptimizationAlgorithm", "xsd:string", "Algorithm family."},
  {kOpt, "hasCoordinateValue", TermRole::DataProperty, "SolutionPart", "xsd:double", "Coordinate value of a solution part."},
  {kOpt, "coordinateIndex", TermRole::DataProperty, "SolutionPart", "xsd:integer", "0-based coordinate position."},
  {kOpt, "evaluationNumber", TermRole::DataProperty, "FunctionEvaluationRun", "xsd:integer", "Evaluation count at which the event was logged."},
  {kOpt, "nextImprovementAt", TermRole::DataProperty, "FunctionEvaluationRun", "xsd:double", "Evaluation number of the next logged event of the same run, INF for the last one."},
  {kOpt, "previousValue", TermRole::DataProperty, "best-so-far measure of a FunctionEvaluationRun", "xsd:double", "Best-so-far value at the preceding event, INF for the first one."},
  {kOpt, "hasValue", TermRole::DataProperty, "measure | ELAFeature", "xsd:double", "Numeric value."},
  {kOpt, "budget", TermRole::DataProperty, "BenchmarkExecution", "xsd:integer", "Total number of function evaluations of the run."},
  {kOpt, "numWorkers", TermRole::DataProperty, "BenchmarkExecution", "xsd:integer", "Parallel workers used for function evaluation."},
  {kOpt, "repetition", TermRole::DataProperty, "BenchmarkExecution", "xsd:integer", "0-based repetition index per (algorithm, problem instance)."},
  {kOpt, "granularity", TermRole::DataProperty, "BenchmarkExecution", "xsd:string", "RunLevel or EvaluationLevel."},
  {kOpt, "sampleSizeFactor", TermRole::DataProperty, "ELAFeature", "xsd:integer", "k where the sample size is k times the dimension."},
  {kOpt, "repetitions", TermRole::DataProperty, "ELAFeature", "xsd:integer", "Number of repetitions the median was taken over."},
  {kOpt, "featureName", TermRole::DataProperty, "ELAFeature", "xsd:string", "Feature name, e.g. ela_meta.lin_simple.adj_r2."},
  {kOpt, "featureGroup", TermRole::DataProperty, "ELAFeature", "xsd:string", "One of the six feature groups."},
  {kOpt, "sourcePlatform", TermRole::DataProperty, "BenchmarkStudyExecution", "xsd:string", "COCO, Nevergrad or other."},
  {kDc, "identifier", TermRole::DataProperty, "BenchmarkStudyExecution", "xsd:string", "Study identifier (DOI preferred)."},
  {kDc, "title", TermRole::DataProperty, "BenchmarkStudyExecution", "xsd:string", "Study title."},
  {kDc, "date", TermRole::DataProperty, "BenchmarkStudyExecution", "xsd:date", "Publication date (YYYY or YYYY-MM-DD)."},
  {kDc, "creator", TermRole::DataProperty, "BenchmarkStudyExecution", "xsd:string", "One creator per triple."},
  {kRdf, "type", TermRole::ObjectProperty, "any node", "class", "Class membership."},
};
// clang-format on

std::vector<SchemaTerm> build_terms() {
  std::vector<SchemaTerm> out;
  for (const auto& e : kEntries) {
    out.push_back({std::string(e.ns) + std::string(e.local), e.role,
                   std::string(e.domain), std::string(e.range),
                   std::string(e.description)});
  }
  for (const auto& suite : registered_suites()) {
    for (int f = 1; f <= suite.max_function_id; ++f) {
      out.push_back({function_class(suite.name, f).value(), TermRole::Class,
                     "", "",
                     "Function " + std::to_string(f) + " of suite " +
                         std::string(suite.name) +
                         " (subtype of BenchmarkProblem)."});
    }
  }
  return out;
}

std::string_view role_name(TermRole role) {
  switch (role) {
    case TermRole::Class: return "class";
    case TermRole::ObjectProperty: return "object property";
    case TermRole::DataProperty: return "data property";
  }
  return "";
}

}  // namespace

const std::vector<Prefix>& standard_prefixes() {
  static const std::vector<Prefix> prefixes{
      {"opt", kOpt}, {"inst", kInst}, {"rdf", kRdf}, {"dc", kDc}, {"xsd", kXsd}};
  return prefixes;
}

const std::vector<SchemaTerm>& schema_terms() {
  static const std::vector<SchemaTerm> terms = build_terms();
  return terms;
}

bool is_schema_term(std::string_view iri) {
  static const std::unordered_set<std::string> index = [] {
    std::unordered_set<std::string> s;
    for (const auto& t : schema_terms()) s.insert(t.iri);
    return s;
  }();
  return index.contains(std::string(iri));
}

std::string reference_document() {
  std::string out =
      "# Vocabulary reference\n\n"
      "Prefixes:\n\n";
  for (const auto& p : standard_prefixes()) {
    out += "- `" + std::string(p.name) + ":` = `<" + std::string(p.iri) +
           ">`\n";
  }
  out +=
      "\n| IRI | Kind | Domain | Range | Meaning |\n"
      "|-----|------|--------|-------|---------|\n";
  for (const auto& t : schema_terms()) {
    out += "| `" + t.iri + "` | " + std::string(role_name(t.role)) + " | " +
           t.domain + " | " + t.range + " | " + t.description + " |\n";
  }
  return out;
}

Term opt(std::string_view local) { return Term::iri(opt_iri(local)); }
Term dc(std::string_view local) {
  return Term::iri(std::string(kDc) + std::string(local));
}
Term rdf_type() { return Term::iri(std::string(kRdf) + "type"); }

Term benchmark_problem() { return opt("BenchmarkProblem"); }
Term benchmark_suite() { return opt("BenchmarkSuite"); }
Term optimization_algorithm() { return opt("OptimizationAlgorithm"); }
Term algorithm_implementation() {
  return opt("OptimizationAlgorithmImplementation");
}
Term algorithm_execution() { return opt("OptimizationAlgorithmExecution"); }
Term study_execution() { return opt("BenchmarkStudyExecution"); }
Term benchmark_execution() { return opt("BenchmarkExecution"); }
Term experiment_run() { return opt("ExperimentRun"); }
Term function_evaluation_run() { return opt("FunctionEvaluationRun"); }
Term solution() { return opt("Solution"); }
Term solution_part() { return opt("SolutionPart"); }
Term ela_feature() { return opt("ELAFeature"); }
Term sampling_technique_class() { return opt("SamplingTechnique"); }
Term measure_class(MeasureKind kind) { return opt(measure_name(kind)); }

Term function_class(std::string_view suite, int function_id) {
  return opt(std::string(suite) + "_f" + std::to_string(function_id));
}

Term has_part() { return opt("hasPart"); }
Term has_specified_input() { return opt("hasSpecifiedInput"); }
Term has_specified_output() { return opt("hasSpecifiedOutput"); }
Term is_about() { return opt("isAbout"); }
Term is_concretization_of() { return opt("isConcretizationOf"); }
Term realizes() { return opt("realizes"); }
Term suite_member() { return opt("suiteMember"); }
Term has_sampling_technique() { return opt("hasSamplingTechnique"); }

Term dimensionality() { return opt("dimensionality"); }
Term number_of_objectives() { return opt("numberOfObjectives"); }
Term number_of_constraints() { return opt("numberOfConstraints"); }
Term noise_level() { return opt("noiseLevel"); }
Term instance_number() { return opt("instanceNumber"); }
Term function_id() { return opt("functionId"); }
Term function_name() { return opt("functionName"); }
Term decision_space_type() { return opt("decisionSpaceType"); }
Term objective_space_type() { return opt("objectiveSpaceType"); }
Term has_transformation() { return opt("hasTransformation"); }
Term name() { return opt("name"); }
Term family() { return opt("family"); }
Term has_coordinate_value() { return opt("hasCoordinateValue"); }
Term coordinate_index() { return opt("coordinateIndex"); }
Term evaluation_number() { return opt("evaluationNumber"); }
Term next_improvement_at() { return opt("nextImprovementAt"); }
Term previous_value() { return opt("previousValue"); }
Term has_value() { return opt("hasValue"); }
Term budget() { return opt("budget"); }
Term num_workers() { return opt("numWorkers"); }
Term repetition() { return opt("repetition"); }
Term granularity() { return opt("granularity"); }
Term sample_size_factor() { return opt("sampleSizeFactor"); }
Term repetitions() { return opt("repetitions"); }
Term feature_name() { return opt("featureName"); }
Term feature_group() { return opt("featureGroup"); }
Term source_platform() { return opt("sourcePlatform"); }
Term dc_identifier() { return dc("identifier"); }
Term dc_title() { return dc("title"); }
Term dc_date() { return dc("date"); }
Term dc_creator() { return dc("creator"); }

}  // namespace optkb::vocab

namespace optkb {

namespace {

std::string inst(std::string_view path) {
  return std::string(vocab::kInst) + std::string(path);
}

std::string required_slug(std::string_view text, std::string_view what) {
  std::string slug = slugify(text);
  if (slug.empty()) {
    throw std::invalid_argument("empty slug for " + std::string(what));
  }
  return slug;
}

std::string problem_path(const ProblemInstanceKey& key) {
  return iri_segment(key.suite) + "/" + instance_label(key);
}

}  // namespace

std::string iri_segment(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || c == '.' || c == '_' || c == '~' || c == '-') {
      out += c;
    } else {
      out += '%';
      out += kHex[uc >> 4];
      out += kHex[uc & 0xF];
    }
  }
  return out;
}

std::string problem_iri(const ProblemInstanceKey& key) {
  if (key.suite.empty()) throw std::invalid_argument("empty suite name");
  return inst(problem_path(key));
}

std::string suite_iri(std::string_view suite) {
  if (suite.empty()) throw std::invalid_argument("empty suite name");
  return inst("suite/" + iri_segment(suite));
}

std::string algorithm_iri(std::string_view name) {
  return inst("alg/" + required_slug(name, "algorithm name"));
}

std::string algorithm_implementation_iri(std::string_view name) {
  return algorithm_iri(name) + "/implementation";
}

std::string algorithm_execution_iri(std::string_view name) {
  return algorithm_iri(name) + "/execution";
}

std::string study_iri(std::string_view identifier) {
  return inst("study/" + required_slug(identifier, "study identifier"));
}

std::string run_iri(std::string_view algorithm_name,
                    const ProblemInstanceKey& key, int repetition) {
  return inst("run/" + required_slug(algorithm_name, "algorithm name") + "/" +
              iri_segment(key.suite) + "/f" + std::to_string(key.function_id) +
              "_i" + std::to_string(key.instance_number) + "_d" +
              std::to_string(key.dimension) + "/r" +
              std::to_string(repetition));
}

std::string experiment_iri(std::string_view run) {
  return std::string(run) + "/experiment";
}

std::string evaluation_iri(std::string_view run, std::int64_t evaluation) {
  return std::string(run) + "/e" + std::to_string(evaluation);
}

std::string measure_iri(std::string_view node, MeasureKind kind) {
  return std::string(node) + "/" + std::string(measure_name(kind));
}

std::string solution_iri(std::string_view evaluation) {
  return std::string(evaluation) + "/solution";
}

std::string solution_part_iri(std::string_view solution, std::size_t index) {
  return std::string(solution) + "/x" + std::to_string(index);
}

std::string sampling_iri(SamplingTechnique technique) {
  return inst("sampling/" + std::string(sampling_name(technique)));
}

std::string ela_iri(const ELARecord& record) {
  if (record.feature_name.empty()) {
    throw std::invalid_argument("empty feature name");
  }
  return inst("ela/" + problem_path(record.problem) + "/" +
              iri_segment(record.feature_name) + "/" +
              std::string(sampling_name(record.sampling_technique)) + "/" +
              std::to_string(record.sample_size_factor));
}

}  // namespace optkb
