#include "optkb/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "optkb/archive.hpp"
#include "optkb/competency.hpp"
#include "optkb/errors.hpp"
#include "optkb/json_io.hpp"

namespace optkb {

namespace {

namespace fs = std::filesystem;
using json_io::json;

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const DuplicateStudyError& e) {
    send(res, 409, json_io::error_body("duplicate_study", e.what()));
  } catch (const IngestError& e) {
    send(res, 422, json_io::error_body("ingest_rejected", e.what(), e.diagnostics()));
  } catch (const SchemaError& e) {
    send(res, 422, json_io::error_body("schema_error", e.what()));
  } catch (const ParseError& e) {
    send(res, 400, json_io::error_body(e));
  } catch (const BadRequest& e) {
    send(res, 400, json_io::error_body("bad_request", e.what()));
  } catch (const NotFound& e) {
    send(res, 404, json_io::error_body("not_found", e.what()));
  } catch (const IoError& e) {
    send(res, 400, json_io::error_body("io_error", e.what()));
  } catch (const PreconditionViolation& e) {
    send(res, 400, json_io::error_body("bad_request", e.what()));
  } catch (const std::invalid_argument& e) {
    send(res, 422, json_io::error_body("invalid_input", e.what()));
  } catch (const std::exception& e) {
    send(res, 500, json_io::error_body("internal_error", e.what()));
  }
}

// Query-string parameter, falling back to a multipart text field.
std::optional<std::string> param(const httplib::Request& req, const std::string& name) {
  if (req.has_param(name)) return req.get_param_value(name);
  if (req.is_multipart_form_data() && req.has_file(name)) {
    const auto f = req.get_file_value(name);
    if (f.filename.empty()) return f.content;
  }
  return std::nullopt;
}

std::vector<std::string> params(const httplib::Request& req, const std::string& name) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < req.get_param_value_count(name); ++i) {
    out.push_back(req.get_param_value(name, i));
  }
  if (req.is_multipart_form_data()) {
    for (const auto& f : req.get_file_values(name)) {
      if (f.filename.empty()) out.push_back(f.content);
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

int int_param(const std::string& name, const std::string& value) {
  auto v = parse_integer(value);
  if (!v || *v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max()) {
    throw BadRequest("parameter '" + name + "' must be an integer, got '" + value + "'");
  }
  return static_cast<int>(*v);
}

bool flag(const httplib::Request& req, const std::string& name, bool fallback) {
  auto v = param(req, name);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw BadRequest("parameter '" + name + "' must be true or false");
}

ProblemFilter filter_from(const httplib::Request& req) {
  ProblemFilter f;
  if (auto v = param(req, "suite")) f.suite = *v;
  if (auto v = param(req, "function")) f.function_id = int_param("function", *v);
  if (auto v = param(req, "dimension")) f.dimension = int_param("dimension", *v);
  for (const auto& list : params(req, "instances")) {
    for (const auto& i : split(list, ',')) f.instances.push_back(int_param("instances", i));
  }
  for (const auto& i : params(req, "instance")) {
    f.instances.push_back(int_param("instance", i));
  }
  for (const auto& list : params(req, "algorithms")) {
    for (const auto& a : split(list, ',')) f.algorithms.push_back(a);
  }
  for (const auto& a : params(req, "algorithm")) f.algorithms.push_back(a);
  return f;
}

MeasureKind kind_from(const httplib::Request& req) {
  auto v = param(req, "kind");
  if (!v) return MeasureKind::BestNoiseFreeFitness;
  auto k = measure_from_name(*v);
  if (!k) throw BadRequest("unknown measure kind '" + *v + "'");
  if (!is_best_so_far(*k)) {
    throw BadRequest("measure kind '" + *v + "' is not a best-so-far measure");
  }
  return *k;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Uploaded payload: a multipart file field, else a raw non-form body.
std::optional<std::string> upload(const httplib::Request& req) {
  if (req.is_multipart_form_data()) {
    for (const char* field : {"archive", "file"}) {
      if (req.has_file(field)) return req.get_file_value(field).content;
    }
    for (const auto& [name, f] : req.files) {
      if (!f.filename.empty()) return f.content;
    }
    return std::nullopt;
  }
  if (!req.body.empty()) return req.body;
  return std::nullopt;
}

// A single CSV from raw text, gzip, or an archive holding exactly one .csv.
std::string csv_payload(const std::string& data, archive::TempDir& scratch) {
  switch (archive::detect(data)) {
    case archive::Format::Unknown:
      return data;
    case archive::Format::TarGz: {
      std::string inner = archive::gunzip(data);
      if (archive::detect(inner) != archive::Format::Tar) return inner;
      [[fallthrough]];
    }
    default: {
      auto files = archive::extract(data, scratch.path());
      std::vector<std::string> csvs;
      for (const auto& f : files) {
        if (fs::path(f).extension() == ".csv") csvs.push_back(f);
      }
      if (csvs.size() != 1) {
        throw BadRequest("archive must contain exactly one .csv file, found " +
                         std::to_string(csvs.size()));
      }
      return read_file(scratch.path() / csvs.front());
    }
  }
}

std::optional<Study> study_from(const httplib::Request& req, bool required) {
  auto id = param(req, "study_id");
  if (!id || id->empty()) {
    if (required) throw std::invalid_argument("study identifier (study_id) is required");
    return std::nullopt;
  }
  Study s;
  s.identifier = *id;
  s.title = param(req, "title").value_or("");
  s.date = param(req, "date").value_or("");
  for (const auto& c : params(req, "creator")) s.creators.push_back(c);
  if (auto bad = check_study(s); !bad.empty()) throw std::invalid_argument(bad);
  return s;
}

}  // namespace

struct Service::Impl {
  Impl(KnowledgeBase& kb_, ServiceConfig config_)
      : kb(kb_), config(std::move(config_)) {
    routes();
  }

  KnowledgeBase& kb;
  ServiceConfig config;
  httplib::Server server;
  std::mutex save_mutex;

  void persist() {
    if (!config.db) return;
    std::lock_guard lock(save_mutex);
    kb.save(*config.db);
  }

  KbIngestOptions ingest_options(const httplib::Request& req) const {
    KbIngestOptions o;
    o.strict = flag(req, "strict", config.strict);
    if (auto mode = param(req, "mode")) {
      if (*mode == "lenient") o.strict = false;
      else if (*mode == "strict") o.strict = true;
      else throw BadRequest("mode must be strict or lenient");
    }
    o.overwrite = flag(req, "overwrite", false);
    if (auto g = param(req, "granularity")) {
      auto parsed = granularity_from_name(*g);
      if (!parsed) throw BadRequest("granularity must be eval or run");
      o.granularity = *parsed;
    }
    return o;
  }

  IngestReport ingest(const std::string& kind, const httplib::Request& req) {
    const auto options = ingest_options(req);
    archive::TempDir scratch;
    const auto data = upload(req);
    const auto path = param(req, "path");
    if (!data && !path) {
      throw BadRequest("provide an uploaded file (field 'archive' or 'file') or 'path'");
    }

    if (kind == "coco") {
      CocoRequest r;
      r.study = *study_from(req, true);
      if (auto s = param(req, "suite")) r.suite = *s;
      if (data) {
        archive::extract(*data, scratch.path());
        r.root = scratch.path();
      } else if (fs::is_directory(*path)) {
        r.root = *path;
      } else {
        archive::extract(read_file(*path), scratch.path());
        r.root = scratch.path();
      }
      return kb.ingest_coco(r, options);
    }
    const std::string raw = data ? *data : read_file(*path);
    const std::string csv = csv_payload(raw, scratch);
    const std::string source = path ? fs::path(*path).filename().string() : "upload";
    if (kind == "nevergrad") {
      NevergradRequest r;
      r.csv = csv;
      r.source = source;
      r.suite = param(req, "suite");
      r.study = study_from(req, false);
      return kb.ingest_nevergrad(r, options);
    }
    ElaRequest r;
    r.csv = csv;
    r.source = source;
    return kb.ingest_ela(r, options);
  }

  void routes() {
    server.set_payload_max_length(std::size_t{1} << 31);

    server.Post(R"(/ingest/(coco|nevergrad|ela))",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const auto report = ingest(req.matches[1].str(), req);
                    try {
                      persist();
                    } catch (const std::exception& e) {
                      send(res, 500, json_io::error_body("store_error", e.what()));
                      return;
                    }
                    send(res, 200, json_io::to_json(report));
                  });
                });

    server.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        std::string text = req.body;
        if (req.get_header_value("Content-Type").find("application/json") == 0) {
          auto body = json::parse(req.body, nullptr, false);
          if (body.is_discarded() || !body.contains("query") ||
              !body["query"].is_string()) {
            throw BadRequest("JSON body must be {\"query\": \"...\"}");
          }
          text = body["query"].get<std::string>();
        } else if (auto q = param(req, "query")) {
          text = *q;
        }
        send(res, 200, json_io::to_json(kb.query(text)));
      });
    });

    server.Get(R"(/catalog/(suites|functions|algorithms|studies|dimensions|instances))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   const auto store = kb.snapshot();
                   const auto filter = filter_from(req);
                   const std::string what = req.matches[1].str();
                   json out = json::array();
                   if (what == "suites") {
                     out = catalog_suites(*store);
                   } else if (what == "functions") {
                     for (const auto& f : catalog_functions(*store, filter)) {
                       out.push_back(json_io::to_json(f));
                     }
                   } else if (what == "algorithms") {
                     out = catalog_algorithms(*store, filter);
                   } else if (what == "studies") {
                     for (const auto& s : catalog_studies(*store)) {
                       out.push_back(json_io::to_json(s));
                     }
                   } else if (what == "dimensions") {
                     out = catalog_dimensions(*store, filter);
                   } else {
                     out = catalog_instances(*store, filter);
                   }
                   send(res, 200, out);
                 });
               });

    server.Get("/performance/fixed-budget",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   auto b = param(req, "budget");
                   if (!b) throw BadRequest("missing parameter 'budget'");
                   auto budget = parse_integer(*b);
                   if (!budget) throw BadRequest("budget must be an integer");
                   const auto store = kb.snapshot();
                   json rows = json::array();
                   for (const auto& r : q5_fitness_at_budget(*store, filter_from(req),
                                                             *budget, kind_from(req))) {
                     rows.push_back(json_io::to_json(r));
                   }
                   send(res, 200, {{"budget", *budget}, {"rows", std::move(rows)}});
                 });
               });

    server.Get("/performance/fixed-target",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   auto t = param(req, "target");
                   if (!t) throw BadRequest("missing parameter 'target'");
                   auto target = parse_double(*t);
                   if (!target) throw BadRequest("target must be a number");
                   const auto store = kb.snapshot();
                   json rows = json::array();
                   for (const auto& r : q6_evals_to_target(*store, filter_from(req),
                                                           *target, kind_from(req))) {
                     rows.push_back(json_io::to_json(r));
                   }
                   send(res, 200, {{"target", *target}, {"rows", std::move(rows)}});
                 });
               });

    server.Get("/performance/ranking",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   auto b = param(req, "budget");
                   if (!b) throw BadRequest("missing parameter 'budget'");
                   auto budget = parse_integer(*b);
                   if (!budget) throw BadRequest("budget must be an integer");
                   const auto store = kb.snapshot();
                   json rows = json::array();
                   for (const auto& r : q7_best_at_budget(*store, filter_from(req),
                                                          *budget, kind_from(req))) {
                     rows.push_back(json_io::to_json(r));
                   }
                   send(res, 200, {{"budget", *budget}, {"ranking", std::move(rows)}});
                 });
               });

    server.Get(R"(/study/(.+))", [this](const httplib::Request& req,
                                       httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = httplib::detail::decode_url(req.matches[1].str(), false);
        auto detail = study_detail(*kb.snapshot(), id);
        if (!detail) throw NotFound("unknown study '" + id + "'");
        send(res, 200, json_io::to_json(*detail));
      });
    });

    server.Get("/study", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto store = kb.snapshot();
        if (auto id = param(req, "id")) {
          auto detail = study_detail(*store, *id);
          if (!detail) throw NotFound("unknown study '" + *id + "'");
          send(res, 200, json_io::to_json(*detail));
          return;
        }
        auto title = param(req, "title");
        if (!title) throw BadRequest("provide 'title' or 'id'");
        json out = json::array();
        for (const auto& id : find_studies_by_title(*store, *title)) {
          out.push_back(json_io::to_json(*study_detail(*store, id)));
        }
        if (out.empty()) throw NotFound("no study title matches '" + *title + "'");
        send(res, 200, out);
      });
    });

    server.Get("/ela", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        ProblemInstanceKey key;
        auto need = [&](const char* name) {
          auto v = param(req, name);
          if (!v) throw BadRequest(std::string("missing parameter '") + name + "'");
          return *v;
        };
        key.suite = need("suite");
        key.function_id = int_param("function", need("function"));
        key.instance_number = int_param("instance", need("instance"));
        key.dimension = int_param("dimension", need("dimension"));
        auto technique = sampling_from_name(need("sampling"));
        if (!technique) throw BadRequest("unknown sampling technique");
        std::optional<int> factor;
        if (auto f = param(req, "factor")) factor = int_param("factor", *f);
        json out = json::object();
        for (const auto& [k, features] : q4_ela(*kb.snapshot(), key, *technique, factor)) {
          out[std::to_string(k)] = features;
        }
        send(res, 200, out);
      });
    });

    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, {{"status", "ok"}, {"triples", kb.size()}});
    });

    if (!config.ui_dir.empty() && fs::is_directory(config.ui_dir)) {
      server.set_mount_point("/ui", config.ui_dir.string());
    }
  }
};

Service::Service(KnowledgeBase& kb, ServiceConfig config)
    : impl_(std::make_unique<Impl>(kb, std::move(config))) {}

Service::~Service() = default;

int Service::bind() {
  auto& c = impl_->config;
  if (c.port == 0) {
    const int port = impl_->server.bind_to_any_port(c.host);
    if (port < 0) throw std::runtime_error("cannot bind " + c.host);
    c.port = port;
  } else if (!impl_->server.bind_to_port(c.host, c.port)) {
    throw std::runtime_error("cannot bind " + c.host + ":" + std::to_string(c.port));
  }
  return c.port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

bool Service::running() const { return impl_->server.is_running(); }

}  // namespace optkb
