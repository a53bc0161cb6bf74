#include "optkb/json_io.hpp"

#include <cmath>

namespace optkb::json_io {

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

json to_json(const Term& term) {
  json j;
  if (term.is_iri()) {
    j["type"] = "iri";
  } else {
    j["type"] = "literal";
    j["datatype"] = std::string(datatype_name(term.datatype()));
  }
  j["value"] = term.value();
  return j;
}

json to_json(const oql::BindingTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& t : row) r.push_back(to_json(t));
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns},
          {"rows", std::move(rows)},
          {"filter_type_errors", table.filter_type_errors}};
}

json to_json(const Diagnostic& d) {
  return {{"source", d.source},
          {"line", d.line},
          {"message", d.message},
          {"severity", d.severity == Severity::Error ? "error" : "warning"}};
}

json to_json(const IngestReport& report) {
  json diagnostics = json::array();
  for (const auto& d : report.diagnostics) diagnostics.push_back(to_json(d));
  return {{"files_read", report.files_read},
          {"records_parsed", report.records_parsed},
          {"records_accepted", report.records_accepted},
          {"records_excluded", report.records_excluded},
          {"fatal_errors", report.fatal_errors},
          {"triples_emitted", report.triples_emitted},
          {"triples_inserted", report.triples_inserted},
          {"diagnostics", std::move(diagnostics)},
          {"notes", report.notes}};
}

json to_json(const Study& study) {
  return {{"identifier", study.identifier},
          {"title", study.title},
          {"creators", study.creators},
          {"date", study.date},
          {"source_platform", std::string(platform_name(study.source_platform))}};
}

json to_json(const ProblemInstanceKey& key) {
  return {{"suite", key.suite},
          {"function_id", key.function_id},
          {"instance", key.instance_number},
          {"dimension", key.dimension}};
}

json to_json(const StudyDetail& detail) {
  json problems = json::array();
  for (const auto& p : detail.problems) problems.push_back(to_json(p));
  return {{"study", to_json(detail.study)},
          {"algorithms", detail.algorithms},
          {"problems", std::move(problems)},
          {"runs", detail.runs}};
}

json to_json(const FunctionEntry& f) {
  json j{{"suite", f.suite}, {"function_id", f.function_id}};
  j["name"] = f.name ? json(*f.name) : json(nullptr);
  return j;
}

json to_json(const BudgetRow& row) {
  json j = to_json(row.problem);
  j["algorithm"] = row.algorithm;
  j["repetition"] = row.repetition;
  j["run"] = row.run;
  j["value"] = row.value ? number(*row.value) : json(nullptr);
  return j;
}

json to_json(const TargetRow& row) {
  json j = to_json(row.problem);
  j["algorithm"] = row.algorithm;
  j["repetition"] = row.repetition;
  j["run"] = row.run;
  j["evaluations"] = row.evaluations ? json(*row.evaluations) : json(nullptr);
  return j;
}

json to_json(const RankEntry& entry) {
  return {{"algorithm", entry.algorithm},
          {"median", number(entry.median)},
          {"runs", entry.runs},
          {"excluded", entry.excluded}};
}

json error_body(std::string_view code, std::string_view message,
                const std::vector<Diagnostic>& diagnostics) {
  json diags = json::array();
  for (const auto& d : diagnostics) diags.push_back(to_json(d));
  return {{"error",
           {{"code", code}, {"message", message}, {"diagnostics", std::move(diags)}}}};
}

json error_body(const ParseError& e) {
  json body = error_body("parse_error", e.detail());
  body["error"]["line"] = e.line();
  body["error"]["column"] = e.column();
  return body;
}

}  // namespace optkb::json_io
