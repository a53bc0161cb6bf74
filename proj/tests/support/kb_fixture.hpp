#pragma once

#include <memory>
#include <vector>

#include "fixtures.hpp"
#include "optkb/knowledge_base.hpp"

namespace fixture {

inline constexpr const char* kStudyDoi = "10.1145/2739482.2768467";
inline constexpr const char* kNevergradStudy = "nevergrad-synthetic-2021";

// The KB the shipped docs/queries are written against:
//   COCO study kStudyDoi: 3 algorithms x BBOB f1,f7 x instances 1-5 x 2-D,5-D
//   Nevergrad study on YABBOB (run level)
//   ELA medians for BBOB f1 instances 1-5 in 2-D, LHS and Sobol, factors 50/100
struct CompetencyKb {
  std::unique_ptr<optkb::KnowledgeBase> kb;
  std::vector<optkb::RunTrace> coco_traces;
  std::vector<NevergradRowSpec> nevergrad_rows;
  std::vector<ElaRowSpec> ela_rows;
};

CompetencyKb build_competency_kb(std::uint64_t seed = 7);

}  // namespace fixture
