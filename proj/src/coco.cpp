#include "optkb/coco.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "optkb/errors.hpp"
#include "optkb/term.hpp"

namespace optkb::coco {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// Splits on commas that are not inside single quotes.
std::vector<std::string_view> split_top_level(std::string_view line) {
  std::vector<std::string_view> parts;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\'') quoted = !quoted;
    if (line[i] == ',' && !quoted) {
      parts.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(line.substr(start)));
  return parts;
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '\'' && v.back() == '\'') {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

bool is_header(std::string_view line) {
  return trim(line).substr(0, 6) == "funcId";
}

std::optional<std::int64_t> parse_count(std::string_view text) {
  if (auto v = parse_integer(text)) return v;
  // Some writers emit evaluation counts in floating-point notation.
  if (auto d = parse_double(text); d && std::isfinite(*d) &&
                                   *d == std::floor(*d) &&
                                   std::abs(*d) < 9.0e15) {
    return static_cast<std::int64_t>(*d);
  }
  return std::nullopt;
}

InfoEntry parse_header(std::string_view line, std::size_t line_no) {
  InfoEntry entry;
  entry.line = line_no;
  const auto parts = split_top_level(line);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto part : parts) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value' in header, got '" +
                           std::string(part) + "'",
                       line_no);
    }
    pairs.emplace_back(std::string(trim(part.substr(0, eq))),
                       std::string(trim(part.substr(eq + 1))));
  }

  std::size_t i = 0;
  auto expect_key = [&](std::string_view key) -> const std::string& {
    if (i >= pairs.size() || pairs[i].first != key) {
      throw ParseError("header is missing '" + std::string(key) +
                           "' (expected order: funcId, DIM, [Precision,] algId)",
                       line_no);
    }
    return pairs[i++].second;
  };
  auto positive_int = [&](const std::string& value, std::string_view key) {
    auto v = parse_integer(value);
    if (!v || *v < 1 || *v > std::numeric_limits<int>::max()) {
      throw ParseError(std::string(key) + " must be a positive integer, got '" +
                           value + "'",
                       line_no);
    }
    return static_cast<int>(*v);
  };

  entry.function_id = positive_int(expect_key("funcId"), "funcId");
  entry.dimension = positive_int(expect_key("DIM"), "DIM");
  if (i < pairs.size() && pairs[i].first == "Precision") {
    auto p = parse_double(pairs[i].second);
    if (!p) {
      throw ParseError("Precision is not numeric: '" + pairs[i].second + "'",
                       line_no);
    }
    entry.precision = *p;
    ++i;
  }
  entry.algorithm_name = unquote(expect_key("algId"));
  if (entry.algorithm_name.empty()) {
    throw ParseError("algId is empty", line_no);
  }
  for (; i < pairs.size(); ++i) {
    entry.metadata.emplace_back(pairs[i].first, unquote(pairs[i].second));
  }
  return entry;
}

void parse_data_line(std::string_view line, std::size_t line_no,
                     InfoEntry& entry) {
  const auto parts = split_top_level(line);
  entry.dat_path = std::string(parts.front());
  if (entry.dat_path.empty()) throw ParseError("empty .dat path", line_no);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto part = parts[k];
    const auto colon = part.find(':');
    const auto bar = part.find('|');
    if (colon == std::string_view::npos || bar == std::string_view::npos ||
        bar < colon) {
      throw ParseError("expected '<instance>:<evaluations>|<best>', got '" +
                           std::string(part) + "'",
                       line_no);
    }
    auto inst = parse_integer(trim(part.substr(0, colon)));
    auto evals = parse_count(trim(part.substr(colon + 1, bar - colon - 1)));
    auto best = parse_double(trim(part.substr(bar + 1)));
    if (!inst || *inst < 1 || *inst > std::numeric_limits<int>::max()) {
      throw ParseError("instance number must be a positive integer in '" +
                           std::string(part) + "'",
                       line_no);
    }
    if (!evals || !best) {
      throw ParseError("non-numeric instance summary '" + std::string(part) + "'",
                       line_no);
    }
    entry.per_instance.push_back({static_cast<int>(*inst), *evals, *best});
  }
  if (entry.per_instance.empty()) {
    throw ParseError("data line lists no instances", line_no);
  }
}

struct FileOutcome {
  std::string info_path;
  std::vector<std::string> dat_paths;
  std::vector<RunTrace> traces;
  std::vector<Diagnostic> diagnostics;
  std::size_t fatal = 0;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ss.str();
}

FileOutcome process_info(const fs::path& info, const fs::path& root,
                         const IngestOptions& options) {
  FileOutcome out;
  out.info_path = fs::relative(info, root).generic_string();
  std::vector<InfoEntry> entries;
  try {
    entries = parse_info_file(read_file(info));
  } catch (const ParseError& e) {
    out.diagnostics.push_back(
        {out.info_path, e.line(), e.detail(), Severity::Error});
    ++out.fatal;
    return out;
  } catch (const IoError& e) {
    out.diagnostics.push_back({out.info_path, 0, e.what(), Severity::Error});
    ++out.fatal;
    return out;
  }

  for (const auto& entry : entries) {
    std::string rel = entry.dat_path;
    std::replace(rel.begin(), rel.end(), '\\', '/');
    const fs::path dat = info.parent_path() / rel;
    const std::string dat_name = fs::relative(dat, root).generic_string();
    if (!fs::is_regular_file(dat)) {
      out.diagnostics.push_back(
          {out.info_path, entry.line,
           "referenced data file not found: " + dat_name, Severity::Error});
      continue;
    }
    try {
      auto traces = parse_dat_file(read_file(dat), entry, options.suite);
      out.dat_paths.push_back(dat_name);
      for (auto& t : traces) out.traces.push_back(std::move(t));
    } catch (const ParseError& e) {
      out.diagnostics.push_back({dat_name, e.line(), e.detail(), Severity::Error});
      ++out.fatal;
    } catch (const IoError& e) {
      out.diagnostics.push_back({dat_name, 0, e.what(), Severity::Error});
      ++out.fatal;
    }
  }
  return out;
}

}  // namespace

std::vector<InfoEntry> parse_info_file(std::string_view text) {
  std::vector<InfoEntry> entries;
  const auto lines = split_lines(text);
  enum class Expect { Header, Comment, Data };
  Expect state = Expect::Header;
  InfoEntry current;

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::size_t line_no = idx + 1;
    const auto line = trim(lines[idx]);
    if (line.empty()) continue;
    switch (state) {
      case Expect::Header:
        if (!is_header(line)) {
          if (entries.empty()) {
            throw ParseError("data line without a preceding funcId header",
                             line_no);
          }
          throw ParseError(
              "expected a funcId header; multi-line data lines are not "
              "supported",
              line_no);
        }
        current = parse_header(line, line_no);
        state = Expect::Comment;
        break;
      case Expect::Comment:
        if (line.front() != '%') {
          throw ParseError("expected '%' comment line after header", line_no);
        }
        current.comment = std::string(trim(line.substr(1)));
        state = Expect::Data;
        break;
      case Expect::Data:
        if (is_header(line) || line.front() == '%') {
          throw ParseError("expected data line '<path>, <inst>:<evals>|<best>'",
                           line_no);
        }
        parse_data_line(line, line_no, current);
        entries.push_back(std::move(current));
        current = InfoEntry{};
        state = Expect::Header;
        break;
    }
  }
  if (state != Expect::Header) {
    throw ParseError("incomplete block at end of file", lines.size());
  }
  return entries;
}

std::vector<RunTrace> parse_dat_file(std::string_view text,
                                     const InfoEntry& entry,
                                     std::string_view suite) {
  std::vector<std::vector<EvaluationRecord>> segments;
  bool segment_open = false;
  bool marker_seen = false;
  const auto lines = split_lines(text);

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::size_t line_no = idx + 1;
    const auto line = trim(lines[idx]);
    if (line.empty()) continue;
    if (line.front() == '%') {
      segment_open = false;
      marker_seen = true;
      continue;
    }
    if (!segment_open) {
      if (!marker_seen) {
        throw ParseError("data line before the first '%' run header", line_no);
      }
      segments.emplace_back();
      segment_open = true;
    }

    std::vector<double> values;
    std::istringstream fields{std::string(line)};
    std::string field;
    std::size_t column = 0;
    EvaluationRecord record;
    while (fields >> field) {
      ++column;
      if (column == 1) {
        auto eval = parse_count(field);
        if (!eval) {
          throw ParseError("field 1 not numeric", line_no);
        }
        record.evaluation_number = *eval;
        continue;
      }
      auto v = parse_double(field);
      if (!v) {
        throw ParseError("field " + std::to_string(column) + " not numeric",
                         line_no);
      }
      values.push_back(*v);
    }
    if (values.size() < 4) {
      throw ParseError("expected at least 5 columns, got " +
                           std::to_string(column),
                       line_no);
    }
    record.raw_value = values[0];
    record.best_raw_value = values[1];
    record.measured_value = values[2];
    record.best_measured_value = values[3];
    if (values.size() - 4 == static_cast<std::size_t>(entry.dimension)) {
      record.coordinates.assign(values.begin() + 4, values.end());
    }
    segments.back().push_back(std::move(record));
  }

  if (segments.size() != entry.per_instance.size()) {
    throw ParseError("reconciliation error: " + std::to_string(segments.size()) +
                         " run segments in data file but " +
                         std::to_string(entry.per_instance.size()) +
                         " instances listed in .info",
                     0);
  }

  std::vector<RunTrace> traces;
  std::map<int, int> seen;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto& summary = entry.per_instance[k];
    RunTrace trace;
    trace.algorithm.name = entry.algorithm_name;
    trace.problem = {std::string(suite), entry.function_id,
                     summary.instance_number, entry.dimension};
    trace.repetition = seen[summary.instance_number]++;
    trace.events = std::move(segments[k]);
    trace.total_evaluations = summary.evaluations;
    trace.final_best_raw = trace.events.back().best_raw_value;
    traces.push_back(std::move(trace));
  }
  return traces;
}

std::string emit_info(const std::vector<InfoEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += "funcId = " + std::to_string(e.function_id) +
           ", DIM = " + std::to_string(e.dimension);
    if (e.precision) out += ", Precision = " + format_double(*e.precision);
    out += ", algId = '" + e.algorithm_name + "'";
    for (const auto& [k, v] : e.metadata) out += ", " + k + " = '" + v + "'";
    out += "\n% " + e.comment + "\n" + e.dat_path;
    for (const auto& s : e.per_instance) {
      out += ", " + std::to_string(s.instance_number) + ":" +
             std::to_string(s.evaluations) + "|" + format_double(s.best_value);
    }
    out += "\n";
  }
  return out;
}

std::string emit_dat(const std::vector<RunTrace>& traces) {
  std::string out;
  for (const auto& t : traces) {
    out +=
        "% function evaluation | noise-free fitness - Fopt | best noise-free "
        "fitness - Fopt | measured fitness | best measured fitness";
    for (int j = 1; j <= t.problem.dimension; ++j) {
      out += " | x" + std::to_string(j);
    }
    out += "\n";
    for (const auto& e : t.events) {
      out += std::to_string(e.evaluation_number) + " " +
             format_double(e.raw_value) + " " + format_double(e.best_raw_value) +
             " " + format_double(e.measured_value) + " " +
             format_double(e.best_measured_value);
      for (double x : e.coordinates) out += " " + format_double(x);
      out += "\n";
    }
  }
  return out;
}

IngestResult ingest_coco_dir(const fs::path& root, const Study& study,
                             const IngestOptions& options) {
  if (auto problem = check_study(study); !problem.empty()) {
    throw std::invalid_argument(problem);
  }
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("cannot read directory " + root.string());
  }
  std::vector<fs::path> infos;
  fs::recursive_directory_iterator it(root, ec), end;
  if (ec) throw IoError("cannot read directory " + root.string());
  for (; it != end; it.increment(ec)) {
    if (ec) throw IoError("error while listing " + root.string());
    if (it->is_regular_file() && it->path().extension() == ".info") {
      infos.push_back(it->path());
    }
  }
  if (infos.empty()) throw IoError("no .info files found");
  std::sort(infos.begin(), infos.end(), [&](const fs::path& a, const fs::path& b) {
    return a.generic_string() < b.generic_string();
  });

  // Files are parsed concurrently; outcomes are merged in sorted path order.
  std::vector<FileOutcome> outcomes(infos.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < infos.size(); i = next++) {
      outcomes[i] = process_info(infos[i], root, options);
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(
      infos.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  IngestResult result;
  auto& report = result.report;
  std::map<std::pair<std::string, ProblemInstanceKey>, int> repetitions;
  for (auto& outcome : outcomes) {
    report.files_read.push_back(outcome.info_path);
    for (auto& p : outcome.dat_paths) report.files_read.push_back(p);
    for (auto& d : outcome.diagnostics) report.diagnostics.push_back(d);
    report.fatal_errors += outcome.fatal;

    for (auto& trace : outcome.traces) {
      ++report.records_parsed;
      const auto key = std::make_pair(trace.algorithm.name, trace.problem);
      trace.repetition = repetitions[key]++;
      const std::string where = trace.algorithm.name + " " + trace.problem.suite +
                                " " + instance_label(trace.problem) + " r" +
                                std::to_string(trace.repetition);
      if (auto bad_key = check_problem_key(trace.problem); !bad_key.empty()) {
        report.error(outcome.info_path, 0, where + ": " + bad_key + "; trace excluded",
                     false);
        ++report.records_excluded;
        continue;
      }
      auto problems = validate_trace(trace);
      if (!problems.empty()) {
        for (const auto& p : problems) {
          if (options.lenient) {
            report.warning(outcome.info_path, 0, where + ": " + p.message());
          } else {
            report.error(outcome.info_path, 0,
                         where + ": " + p.message() + "; trace excluded", false);
          }
        }
        if (!options.lenient) {
          ++report.records_excluded;
          continue;
        }
      }
      ++report.records_accepted;
      result.traces.push_back(std::move(trace));
    }
  }
  return result;
}

}  // namespace optkb::coco
