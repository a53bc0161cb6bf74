#pragma once

#include <json.hpp>

#include "optkb/competency.hpp"
#include "optkb/errors.hpp"
#include "optkb/oql.hpp"
#include "optkb/report.hpp"

namespace optkb::json_io {

using nlohmann::json;

json to_json(const Term& term);
json to_json(const oql::BindingTable& table);
json to_json(const Diagnostic& d);
json to_json(const IngestReport& report);
json to_json(const Study& study);
json to_json(const StudyDetail& detail);
json to_json(const FunctionEntry& f);
json to_json(const ProblemInstanceKey& key);
json to_json(const BudgetRow& row);
json to_json(const TargetRow& row);
json to_json(const RankEntry& entry);

// {"error": {"code", "message", "diagnostics": [...]}} plus line/column for
// parse errors.
json error_body(std::string_view code, std::string_view message,
                const std::vector<Diagnostic>& diagnostics = {});
json error_body(const ParseError& e);

}  // namespace optkb::json_io
