#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "optkb/csv.hpp"
#include "optkb/errors.hpp"
#include "optkb/json_io.hpp"
#include "optkb/knowledge_base.hpp"
#include "optkb/lockfile.hpp"
#include "optkb/ntriples.hpp"
#include "optkb/service.hpp"

namespace fs = std::filesystem;
using namespace optkb;

namespace {

enum Exit { kOk = 0, kInputError = 2, kQueryError = 3, kStoreError = 4 };

struct StoreFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void load(KnowledgeBase& kb, const fs::path& db) {
  try {
    kb.load(db);
  } catch (const ParseError& e) {
    throw StoreFailure("store " + db.string() + " is malformed: " + e.what());
  } catch (const IoError& e) {
    throw StoreFailure(e.what());
  }
}

void save(const KnowledgeBase& kb, const fs::path& db) {
  try {
    kb.save(db);
  } catch (const IoError& e) {
    throw StoreFailure(e.what());
  }
}

void print_report(const IngestReport& r, bool as_json) {
  for (const auto& d : r.diagnostics) std::cerr << d.to_string() << "\n";
  if (as_json) {
    std::cout << json_io::to_json(r).dump(2) << "\n";
    return;
  }
  std::cout << "files read:        " << r.files_read.size() << "\n"
            << "records parsed:    " << r.records_parsed << "\n"
            << "records accepted:  " << r.records_accepted << "\n"
            << "records excluded:  " << r.records_excluded << "\n"
            << "triples emitted:   " << r.triples_emitted << "\n"
            << "triples inserted:  " << r.triples_inserted << "\n";
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
}

std::string cell(const Term& t) { return t.value(); }

void print_table(const oql::BindingTable& table, const std::string& format) {
  if (format == "csv") {
    std::cout << csv::format_row(table.columns);
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      for (const auto& t : row) cells.push_back(cell(t));
      std::cout << csv::format_row(cells);
    }
    return;
  }
  if (format == "ntriples") {
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::cout << (c ? "\t" : "") << row[c].to_ntriples();
      }
      std::cout << "\n";
    }
    return;
  }
  std::vector<std::size_t> width;
  for (const auto& c : table.columns) width.push_back(c.size() + 1);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], cell(row[c]).size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::cout << cells[c];
      if (c + 1 < cells.size()) std::cout << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    std::cout << "\n";
  };
  std::vector<std::string> header;
  for (const auto& c : table.columns) header.push_back("?" + c);
  line(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (const auto& t : row) cells.push_back(cell(t));
    line(cells);
  }
  std::cerr << table.rows.size() << " row(s)";
  if (table.filter_type_errors) {
    std::cerr << ", " << table.filter_type_errors << " filter type error(s)";
  }
  std::cerr << "\n";
}

struct IngestFlags {
  std::string db;
  bool lenient = false;
  bool overwrite = false;
  bool json = false;
  std::string study_id;
  std::string title;
  std::vector<std::string> creators;
  std::string date;
};

void add_common(CLI::App* cmd, IngestFlags& f) {
  cmd->add_option("--db", f.db, "Store file (.nt)")->required();
  cmd->add_flag("--lenient", f.lenient, "Skip bad records instead of failing");
  cmd->add_flag("--overwrite", f.overwrite, "Merge into an existing study");
  cmd->add_flag("--json", f.json, "Print the report as JSON");
}

void add_study(CLI::App* cmd, IngestFlags& f, bool required) {
  auto* id = cmd->add_option("--study-id", f.study_id, "Study identifier (DOI)");
  if (required) id->required();
  cmd->add_option("--title", f.title, "Study title");
  cmd->add_option("--creator", f.creators, "Study creator (repeatable)");
  cmd->add_option("--date", f.date, "Publication date (YYYY or YYYY-MM-DD)");
}

Study study_of(const IngestFlags& f) {
  Study s;
  s.identifier = f.study_id;
  s.title = f.title;
  s.creators = f.creators;
  s.date = f.date;
  return s;
}

KbIngestOptions options_of(const IngestFlags& f) {
  KbIngestOptions o;
  o.strict = !f.lenient;
  o.overwrite = f.overwrite;
  return o;
}

template <typename Fn>
int with_store(const std::string& db, bool write, Fn&& fn) {
  StoreLock lock(db);
  KnowledgeBase kb;
  load(kb, db);
  fn(kb);
  if (write) save(kb, db);
  return kOk;
}

int run_serve(const std::string& db, const std::string& host, int port,
              const std::string& ui, bool lenient) {
  StoreLock lock(db);
  KnowledgeBase kb;
  load(kb, db);
  ServiceConfig config;
  config.host = host;
  config.port = port;
  config.db = db;
  config.strict = !lenient;
  config.ui_dir = ui;
  Service service(kb, config);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int bound = service.bind();
  std::cerr << "serving " << db << " (" << kb.size() << " triples) on http://" << host
            << ":" << bound << "\n";
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark performance and landscape knowledge base"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Annotate a data set and add it to a store");
  ingest->require_subcommand(1);

  IngestFlags coco_flags;
  std::string coco_dir;
  std::string coco_granularity = "eval";
  std::string coco_suite = "BBOB";
  auto* coco = ingest->add_subcommand("coco", "COCO .info/.dat directory tree");
  coco->add_option("dir", coco_dir, "Data directory")->required();
  add_common(coco, coco_flags);
  add_study(coco, coco_flags, true);
  coco->add_option("--granularity", coco_granularity, "eval or run")
      ->check(CLI::IsMember({"eval", "run"}));
  coco->add_option("--suite", coco_suite, "Suite name");

  IngestFlags ng_flags;
  std::string ng_csv;
  std::string ng_suite;
  auto* nevergrad = ingest->add_subcommand("nevergrad", "Nevergrad results CSV");
  nevergrad->add_option("csv", ng_csv, "CSV file")->required();
  nevergrad->add_option("--suite", ng_suite, "Suite for rows without one");
  add_common(nevergrad, ng_flags);
  add_study(nevergrad, ng_flags, false);

  IngestFlags ela_flags;
  std::string ela_csv;
  auto* ela = ingest->add_subcommand("ela", "ELA feature table CSV");
  ela->add_option("csv", ela_csv, "CSV file")->required();
  add_common(ela, ela_flags);

  std::string query_db;
  std::string query_file;
  std::string query_text;
  std::string query_format = "table";
  auto* query = app.add_subcommand("query", "Run an OQL query");
  query->add_option("--db", query_db, "Store file (.nt)")->required();
  auto* file_opt = query->add_option("-f,--file", query_file, "OQL file");
  auto* expr_opt = query->add_option("-e,--expr", query_text, "Inline OQL");
  file_opt->excludes(expr_opt);
  query->add_option("--format", query_format, "table, csv or ntriples")
      ->check(CLI::IsMember({"table", "csv", "ntriples"}));

  std::string export_db;
  std::string export_out = "-";
  auto* exp = app.add_subcommand("export", "Write the store as sorted N-Triples");
  exp->add_option("--db", export_db, "Store file (.nt)")->required();
  exp->add_option("-o,--output", export_out, "Output file, '-' for stdout");

  std::string serve_db;
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::string serve_ui = "webui/dist";
  bool serve_lenient = false;
  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--db", serve_db, "Store file (.nt)")->required()->envname("OPTKB_DB");
  serve->add_option("--port", serve_port, "Port")->envname("OPTKB_PORT");
  serve->add_option("--host", serve_host, "Bind address")->envname("OPTKB_HOST");
  serve->add_option("--ui", serve_ui, "Static UI directory")->envname("OPTKB_UI_DIR");
  serve->add_flag("--lenient", serve_lenient, "Lenient ingest by default")
      ->envname("OPTKB_LENIENT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (coco->parsed()) {
      return with_store(coco_flags.db, true, [&](KnowledgeBase& kb) {
        CocoRequest r;
        r.root = coco_dir;
        r.study = study_of(coco_flags);
        r.suite = coco_suite;
        auto o = options_of(coco_flags);
        o.granularity = *granularity_from_name(coco_granularity);
        print_report(kb.ingest_coco(r, o), coco_flags.json);
      });
    }
    if (nevergrad->parsed()) {
      return with_store(ng_flags.db, true, [&](KnowledgeBase& kb) {
        NevergradRequest r;
        r.csv = read_file(ng_csv);
        r.source = fs::path(ng_csv).filename().string();
        if (!ng_suite.empty()) r.suite = ng_suite;
        if (!ng_flags.study_id.empty()) r.study = study_of(ng_flags);
        print_report(kb.ingest_nevergrad(r, options_of(ng_flags)), ng_flags.json);
      });
    }
    if (ela->parsed()) {
      return with_store(ela_flags.db, true, [&](KnowledgeBase& kb) {
        ElaRequest r;
        r.csv = read_file(ela_csv);
        r.source = fs::path(ela_csv).filename().string();
        print_report(kb.ingest_ela(r, options_of(ela_flags)), ela_flags.json);
      });
    }
    if (query->parsed()) {
      if (query_file.empty() && query_text.empty()) {
        std::cerr << "error: provide -f <file> or -e <query>\n";
        return kInputError;
      }
      std::string text;
      try {
        text = query_file.empty() ? query_text : read_file(query_file);
      } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
      }
      StoreLock lock(query_db);
      KnowledgeBase kb;
      load(kb, query_db);
      try {
        print_table(kb.query(text), query_format);
      } catch (const ParseError& e) {
        std::cerr << "query error at line " << e.line() << ", column " << e.column()
                  << ": " << e.detail() << "\n";
        return kQueryError;
      }
      return kOk;
    }
    if (exp->parsed()) {
      return with_store(export_db, false, [&](KnowledgeBase& kb) {
        const std::string text = export_ntriples(*kb.snapshot());
        if (export_out == "-") {
          std::cout << text;
          return;
        }
        std::ofstream out(export_out, std::ios::binary | std::ios::trunc);
        if (!out) throw StoreFailure("cannot write " + export_out);
        out << text;
        if (!out) throw StoreFailure("error while writing " + export_out);
      });
    }
    if (serve->parsed()) {
      return run_serve(serve_db, serve_host, serve_port, serve_ui, serve_lenient);
    }
  } catch (const StoreFailure& e) {
    std::cerr << "store error: " << e.what() << "\n";
    return kStoreError;
  } catch (const LockedError& e) {
    std::cerr << "store error: " << e.what() << "\n";
    return kStoreError;
  } catch (const IngestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d.to_string() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DuplicateStudyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "store error: " << e.what() << "\n";
    return kStoreError;
  }
  return kOk;
}
