#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "optkb/knowledge_base.hpp"

namespace optkb {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Rewritten after every successful ingest when set.
  std::optional<std::filesystem::path> db;
  bool strict = true;
  // Served under /ui/ when the directory exists.
  std::filesystem::path ui_dir;
};

// HTTP/JSON facade over one KnowledgeBase.
//   POST /ingest/{coco|nevergrad|ela}   POST /query
//   GET  /catalog/{suites|functions|algorithms|studies|dimensions|instances}
//   GET  /performance/{fixed-budget|fixed-target|ranking}
//   GET  /study/{identifier}, /study?title=, /ela
class Service {
 public:
  Service(KnowledgeBase& kb, ServiceConfig config);
  ~Service();

  // Binds the socket; returns the bound port. Throws std::runtime_error.
  int bind();
  // Blocks until stop().
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace optkb
