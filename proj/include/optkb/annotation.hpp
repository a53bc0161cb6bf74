#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "optkb/core_model.hpp"
#include "optkb/term.hpp"

namespace optkb {

enum class Granularity { RunLevel, EvaluationLevel };
std::string_view granularity_name(Granularity g);
std::optional<Granularity> granularity_from_name(std::string_view name);

struct Annotation {
  std::vector<Triple> triples;
  std::vector<std::string> warnings;
};

// Problem node, its suite node and all data properties. The per-suite
// function class is asserted only for registered suites.
std::vector<Triple> annotate_problem_instance(const ProblemMeta& meta);

// Specification, implementation and execution nodes of one algorithm.
// Emitted once per algorithm, not per run.
std::vector<Triple> annotate_algorithm(const AlgorithmRef& algorithm);

// Study node with Dublin Core provenance and one hasPart per run IRI.
std::vector<Triple> annotate_study(const Study& study,
                                   const std::vector<std::string>& run_iris);

// Benchmark execution, experiment run and measures. Evaluation level adds
// one FunctionEvaluationRun per event (plus a Solution when coordinates are
// present). A trace without events is annotated at run level with a warning.
Annotation annotate_run(const RunTrace& trace, Granularity granularity);

// Feature node plus the sampling-technique individual it links to.
std::vector<Triple> annotate_ela(const ELARecord& record);

}  // namespace optkb
