#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "optkb/core_model.hpp"
#include "optkb/term.hpp"

namespace optkb::vocab {

inline constexpr std::string_view kOpt = "https://w3id.org/optkb/schema#";
inline constexpr std::string_view kInst = "https://w3id.org/optkb/data#";
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kDc = "http://purl.org/dc/terms/";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

struct Prefix {
  std::string_view name;
  std::string_view iri;
};
// opt, inst, rdf, dc, xsd; predeclared in OQL.
const std::vector<Prefix>& standard_prefixes();

enum class TermRole { Class, ObjectProperty, DataProperty };

struct SchemaTerm {
  std::string iri;
  TermRole role;
  std::string domain;  // human-readable, for the reference document
  std::string range;
  std::string description;
};

// The closed list of schema terms, including one class per function of each
// registered suite (opt:BBOB_f1 ... opt:YASPLITBBOB_f21).
const std::vector<SchemaTerm>& schema_terms();
bool is_schema_term(std::string_view iri);

// Markdown reference table of every schema term.
std::string reference_document();

Term opt(std::string_view local);
Term dc(std::string_view local);
Term rdf_type();

// Classes.
Term benchmark_problem();
Term benchmark_suite();
Term optimization_algorithm();
Term algorithm_implementation();
Term algorithm_execution();
Term study_execution();
Term benchmark_execution();
Term experiment_run();
Term function_evaluation_run();
Term solution();
Term solution_part();
Term ela_feature();
Term sampling_technique_class();
Term measure_class(MeasureKind kind);
// Per-suite function class; only defined for registered suites.
Term function_class(std::string_view suite, int function_id);

// Object properties.
Term has_part();
Term has_specified_input();
Term has_specified_output();
Term is_about();
Term is_concretization_of();
Term realizes();
Term suite_member();
Term has_sampling_technique();

// Data properties.
Term dimensionality();
Term number_of_objectives();
Term number_of_constraints();
Term noise_level();
Term instance_number();
Term function_id();
Term function_name();
Term decision_space_type();
Term objective_space_type();
Term has_transformation();
Term name();
Term family();
Term has_coordinate_value();
Term coordinate_index();
Term evaluation_number();
Term next_improvement_at();
Term previous_value();
Term has_value();
Term budget();
Term num_workers();
Term repetition();
Term granularity();
Term sample_size_factor();
Term repetitions();
Term feature_name();
Term feature_group();
Term source_platform();
Term dc_identifier();
Term dc_title();
Term dc_date();
Term dc_creator();

}  // namespace optkb::vocab

namespace optkb {

// Deterministic IRIs for data nodes; all live under the inst: namespace.
// Functions taking free text throw std::invalid_argument on an empty slug.
std::string problem_iri(const ProblemInstanceKey& key);
std::string suite_iri(std::string_view suite);
std::string algorithm_iri(std::string_view name);
std::string algorithm_implementation_iri(std::string_view name);
std::string algorithm_execution_iri(std::string_view name);
std::string study_iri(std::string_view identifier);
std::string run_iri(std::string_view algorithm_name,
                    const ProblemInstanceKey& key, int repetition);
std::string experiment_iri(std::string_view run);
std::string evaluation_iri(std::string_view run, std::int64_t evaluation);
std::string measure_iri(std::string_view node, MeasureKind kind);
std::string solution_iri(std::string_view evaluation);
std::string solution_part_iri(std::string_view solution, std::size_t index);
std::string sampling_iri(SamplingTechnique technique);
std::string ela_iri(const ELARecord& record);

// Percent-encodes bytes outside [A-Za-z0-9._~-] for use as one IRI segment.
std::string iri_segment(std::string_view text);

}  // namespace optkb
