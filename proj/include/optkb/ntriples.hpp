#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "optkb/errors.hpp"
#include "optkb/store.hpp"

namespace optkb {

// One `<s> <p> <o> .` line per triple, sorted bytewise, each terminated by
// '\n'. The output depends only on the triple set.
std::string export_ntriples(const Store& store);

struct ImportResult {
  Store store;
  std::vector<Diagnostic> diagnostics;
};

// Strict mode throws ParseError on the first malformed line; lenient mode
// skips it and records a diagnostic. Blank lines and '#' comments are ignored.
ImportResult import_ntriples(std::string_view text, bool strict = true);

// Parses a single non-empty, non-comment line. Throws ParseError (column set,
// line 0) on malformed input.
Triple parse_ntriples_line(std::string_view line);

}  // namespace optkb
