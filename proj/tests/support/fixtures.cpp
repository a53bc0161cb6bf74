#include "fixtures.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "optkb/coco.hpp"

namespace fs = std::filesystem;
using optkb::ProblemInstanceKey;
using optkb::RunTrace;
using optkb::Term;
using optkb::Triple;

namespace fixture {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <typename T>
const T& choose(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(items.size()) - 1))];
}

std::string dat_name(int f, int d) {
  return "data_f" + std::to_string(f) + "/bbobexp_f" + std::to_string(f) + "_DIM" +
         std::to_string(d) + ".dat";
}

}  // namespace

RunTrace make_trace(Rng& rng, const std::string& algorithm,
                    const ProblemInstanceKey& key, int n_events,
                    std::int64_t first_gap_max) {
  RunTrace t;
  t.algorithm.name = algorithm;
  t.problem = key;
  std::int64_t n = uniform_int(rng, 1, 5);
  double raw = uniform(rng, 10.0, 1000.0);
  double best_measured = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_events; ++k) {
    optkb::EvaluationRecord e;
    e.evaluation_number = n;
    e.raw_value = raw;
    e.best_raw_value = raw;
    e.measured_value = raw * uniform(rng, 1.0, 1.2);
    best_measured = std::min(best_measured, e.measured_value);
    e.best_measured_value = best_measured;
    for (int j = 0; j < key.dimension; ++j) e.coordinates.push_back(uniform(rng, -5.0, 5.0));
    t.events.push_back(std::move(e));
    n += uniform_int(rng, 1, first_gap_max);
    raw *= uniform(rng, 0.2, 0.95);
  }
  t.total_evaluations = t.events.back().evaluation_number + uniform_int(rng, 0, 500);
  t.final_best_raw = t.events.back().best_raw_value;
  return t;
}

std::vector<RunTrace> write_coco_tree(Rng& rng, const fs::path& root,
                                      const CocoLayout& layout) {
  std::vector<RunTrace> all;
  for (const auto& alg : layout.algorithms) {
    const fs::path dir = root / optkb::slugify(alg);
    std::vector<optkb::coco::InfoEntry> entries;
    for (int f : layout.functions) {
      entries.clear();
      for (int d : layout.dimensions) {
        optkb::coco::InfoEntry entry;
        entry.function_id = f;
        entry.dimension = d;
        entry.algorithm_name = alg;
        entry.precision = 1e-8;
        entry.dat_path = dat_name(f, d);
        entry.comment = "synthetic run";
        std::vector<RunTrace> traces;
        for (int i : layout.instances) {
          const int n_events = static_cast<int>(uniform_int(rng, layout.min_events, layout.max_events));
          auto t = make_trace(rng, alg, {"BBOB", f, i, d}, n_events);
          entry.per_instance.push_back({i, t.total_evaluations, t.final_best_raw});
          traces.push_back(t);
          all.push_back(std::move(t));
        }
        write_file(dir / entry.dat_path, optkb::coco::emit_dat(traces));
        entries.push_back(std::move(entry));
      }
      write_file(dir / ("bbobexp_f" + std::to_string(f) + ".info"),
                 optkb::coco::emit_info(entries));
    }
  }
  return all;
}

void corrupt_monotonicity(const fs::path& root, const std::vector<RunTrace>& traces,
                          std::size_t trace_index, std::size_t event_index) {
  const RunTrace& target = traces.at(trace_index);
  std::vector<RunTrace> same_file;
  for (const auto& t : traces) {
    if (t.algorithm == target.algorithm && t.problem.function_id == target.problem.function_id &&
        t.problem.dimension == target.problem.dimension) {
      same_file.push_back(t);
    }
  }
  for (auto& t : same_file) {
    if (t.problem != target.problem) continue;
    auto& e = t.events.at(event_index);
    const double bumped = t.events.at(event_index - 1).best_raw_value * 2.0 + 1.0;
    e.raw_value = bumped;
    e.best_raw_value = bumped;
  }
  write_file(root / optkb::slugify(target.algorithm.name) /
                 dat_name(target.problem.function_id, target.problem.dimension),
             optkb::coco::emit_dat(same_file));
}

std::vector<NevergradRowSpec> make_nevergrad_rows(Rng& rng, std::size_t n) {
  const std::vector<std::string> optimizers{"NGOpt", "CMA", "DE", "PSO", "OnePlusOne", "RandomSearch"};
  const std::vector<std::string> functions{"sphere", "rastrigin", "cigar", "ellipsoid", "hm", "griewank"};
  const std::vector<std::int64_t> budgets{50, 200, 800, 3200};
  std::vector<NevergradRowSpec> rows;
  for (std::size_t k = 0; k < n; ++k) {
    NevergradRowSpec r;
    r.optimizer = choose(rng, optimizers);
    r.budget = choose(rng, budgets);
    r.loss = uniform(rng, 0.0, 50.0);
    r.dimension = static_cast<int>(choose(rng, std::vector<std::int64_t>{2, 10, 50}));
    r.function_name = choose(rng, functions);
    r.num_workers = static_cast<int>(choose(rng, std::vector<std::int64_t>{1, 10}));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string nevergrad_csv(const std::vector<NevergradRowSpec>& rows) {
  std::string out = "optimizer_name,budget,loss,dimension,function_name,num_workers\n";
  for (const auto& r : rows) {
    out += r.optimizer + "," + std::to_string(r.budget) + "," + optkb::format_double(r.loss) +
           "," + std::to_string(r.dimension) + "," + r.function_name + "," +
           std::to_string(r.num_workers) + "\n";
  }
  return out;
}

std::string ela_csv(const std::vector<ElaRowSpec>& rows) {
  std::string out =
      "suite,function_id,instance,dimension,feature_name,feature_group,"
      "sampling_technique,sample_size_factor,repetition,value\n";
  for (const auto& r : rows) {
    out += r.problem.suite + "," + std::to_string(r.problem.function_id) + "," +
           std::to_string(r.problem.instance_number) + "," +
           std::to_string(r.problem.dimension) + "," + r.feature + "," + r.group + "," +
           r.technique + "," + std::to_string(r.factor) + "," +
           std::to_string(r.repetition) + "," + optkb::format_double(r.value) + "\n";
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>>& ela_feature_set() {
  static const auto features = [] {
    const std::vector<std::pair<std::string, int>> groups{
        {"dispersion", 8}, {"y-distribution", 3},  {"meta-model", 9},
        {"information-content", 7}, {"nearest-better-clustering", 5}, {"pca", 14}};
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [group, n] : groups) {
      for (int k = 0; k < n; ++k) out.push_back({group + ".feature_" + std::to_string(k), group});
    }
    return out;
  }();
  return features;
}

std::vector<Triple> random_triples(Rng& rng, std::size_t n) {
  const std::int64_t entities = std::max<std::int64_t>(8, static_cast<std::int64_t>(n / 15));
  const std::int64_t predicates = uniform_int(rng, 3, 10);
  std::set<Triple> out;
  std::size_t attempts = 0;
  while (out.size() < n && attempts++ < n * 20) {
    Triple t;
    t.subject = Term::iri("http://ex.org/s" + std::to_string(uniform_int(rng, 0, entities - 1)));
    t.predicate = Term::iri("http://ex.org/p" + std::to_string(uniform_int(rng, 0, predicates - 1)));
    switch (uniform_int(rng, 0, 6)) {
      case 0:
      case 1:
        t.object = Term::iri("http://ex.org/s" + std::to_string(uniform_int(rng, 0, entities - 1)));
        break;
      case 2:
        t.object = Term::integer(uniform_int(rng, -20, 20));
        break;
      case 3: {
        const auto k = uniform_int(rng, 0, 40);
        t.object = k == 0 ? Term::real(std::nan("")) : Term::real(static_cast<double>(k - 20) / 2.0);
        break;
      }
      case 4:
        t.object = Term::string("v" + std::to_string(uniform_int(rng, 0, 25)));
        break;
      case 5:
        t.object = Term::date("20" + std::to_string(uniform_int(rng, 10, 20)) + "-0" +
                              std::to_string(uniform_int(rng, 1, 9)) + "-1" +
                              std::to_string(uniform_int(rng, 0, 9)));
        break;
      default:
        t.object = Term::real(uniform(rng, -20.0, 20.0));
    }
    out.insert(std::move(t));
  }
  return {out.begin(), out.end()};
}

namespace {

using optkb::oql::Expr;
using optkb::oql::ExprOp;
using optkb::oql::PatternTerm;
using optkb::oql::Variable;

Term random_constant(Rng& rng) {
  switch (uniform_int(rng, 0, 5)) {
    case 0: return Term::integer(uniform_int(rng, -20, 20));
    case 1: return Term::real(static_cast<double>(uniform_int(rng, -40, 40)) / 2.0);
    case 2: return Term::string("v" + std::to_string(uniform_int(rng, 0, 25)));
    case 3: return Term::date("20" + std::to_string(uniform_int(rng, 10, 20)) + "-05-15");
    case 4: return Term::iri("http://ex.org/s" + std::to_string(uniform_int(rng, 0, 20)));
    default: return Term::integer(0);
  }
}

Expr random_comparison(Rng& rng, const std::vector<std::string>& vars) {
  static const std::vector<ExprOp> ops{ExprOp::Eq, ExprOp::Ne, ExprOp::Lt,
                                       ExprOp::Le, ExprOp::Gt, ExprOp::Ge};
  const ExprOp op = choose(rng, ops);
  Expr lhs = Expr::variable(choose(rng, vars));
  Expr rhs = uniform_int(rng, 0, 4) == 0 ? Expr::variable(choose(rng, vars))
                                         : Expr::literal(random_constant(rng));
  if (uniform_int(rng, 0, 1)) std::swap(lhs, rhs);
  return Expr::node(op, {lhs, rhs});
}

Expr random_filter(Rng& rng, const std::vector<std::string>& vars) {
  switch (uniform_int(rng, 0, 5)) {
    case 0:
      return Expr::node(ExprOp::And, {random_comparison(rng, vars), random_comparison(rng, vars)});
    case 1:
      return Expr::node(ExprOp::Or, {random_comparison(rng, vars), random_comparison(rng, vars)});
    case 2:
      return Expr::node(ExprOp::Not, {random_comparison(rng, vars)});
    default:
      return random_comparison(rng, vars);
  }
}

}  // namespace

optkb::oql::Query random_query(Rng& rng, const std::vector<Triple>& triples) {
  std::map<Term, std::vector<const Triple*>> by_node;
  for (const auto& t : triples) {
    by_node[t.subject].push_back(&t);
    by_node[t.object].push_back(&t);
  }
  optkb::oql::Query q;
  std::vector<std::pair<std::string, Term>> nodes;  // bound variable and its walk value
  std::vector<std::string> vars;
  int next_var = 0;
  auto fresh = [&](const Term& value) {
    const std::string name = "v" + std::to_string(next_var++);
    vars.push_back(name);
    nodes.push_back({name, value});
    return PatternTerm{Variable{name}};
  };
  auto maybe_missing = [&](const Term& t) -> PatternTerm {
    if (uniform_int(rng, 0, 19) == 0) return Term::iri("http://ex.org/missing");
    return t;
  };

  const int n_patterns = static_cast<int>(uniform_int(rng, 1, 4));
  const Triple* seed = &choose(rng, triples);
  {
    optkb::oql::QueryPattern p;
    const bool var_pred = uniform_int(rng, 0, 9) == 0;
    p.subject = uniform_int(rng, 0, 9) < 8 ? fresh(seed->subject) : maybe_missing(seed->subject);
    p.predicate = var_pred ? fresh(seed->predicate) : maybe_missing(seed->predicate);
    const bool obj_var = var_pred ? !std::holds_alternative<Variable>(p.subject)
                                  : uniform_int(rng, 0, 9) < 7;
    p.object = obj_var ? fresh(seed->object) : maybe_missing(seed->object);
    if (!std::holds_alternative<Variable>(p.subject) &&
        !std::holds_alternative<Variable>(p.object) &&
        !std::holds_alternative<Variable>(p.predicate)) {
      p.object = fresh(seed->object);
    }
    q.patterns.push_back(std::move(p));
  }
  for (int k = 1; k < n_patterns; ++k) {
    std::vector<std::size_t> joinable;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (by_node.count(nodes[i].second)) joinable.push_back(i);
    }
    if (joinable.empty()) break;
    const auto& [var, value] = nodes[choose(rng, joinable)];
    const Triple* t = choose(rng, by_node.at(value));
    optkb::oql::QueryPattern p;
    const std::string shared = var;
    const Term shared_value = value;
    const bool at_subject = t->subject == shared_value;
    if (at_subject) {
      p.subject = Variable{shared};
      p.object = uniform_int(rng, 0, 9) < 7 ? fresh(t->object) : maybe_missing(t->object);
    } else {
      p.object = Variable{shared};
      p.subject = uniform_int(rng, 0, 9) < 7 ? fresh(t->subject) : maybe_missing(t->subject);
    }
    p.predicate = uniform_int(rng, 0, 9) == 0 ? fresh(t->predicate) : maybe_missing(t->predicate);
    q.patterns.push_back(std::move(p));
  }

  std::vector<std::string> pool = vars;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(pool.size()))));
  q.select_vars = pool;
  const auto n_filters = uniform_int(rng, 0, 2);
  for (std::int64_t k = 0; k < n_filters; ++k) q.filters.push_back(random_filter(rng, vars));
  if (uniform_int(rng, 0, 4) == 0) q.limit = uniform_int(rng, 1, 10);
  q.distinct = uniform_int(rng, 0, 3) == 0;
  return q;
}

namespace {

void octal(char* field, std::size_t width, std::uint64_t value) {
  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + (value & 7)));
    value >>= 3;
  } while (value);
  digits.insert(digits.begin(), width - 1 - digits.size(), '0');
  std::memcpy(field, digits.data(), width - 1);
  field[width - 1] = '\0';
}

}  // namespace

std::string tar_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string out;
  for (const auto& f : files) {
    const std::string name = fs::relative(f, dir).generic_string();
    if (name.size() > 99) throw std::runtime_error("name too long for the test tar writer");
    const std::string data = read_file(f);
    char header[512] = {};
    std::memcpy(header, name.data(), name.size());
    octal(header + 100, 8, 0644);
    octal(header + 108, 8, 0);
    octal(header + 116, 8, 0);
    octal(header + 124, 12, data.size());
    octal(header + 136, 12, 0);
    header[156] = '0';
    std::memcpy(header + 257, "ustar", 6);
    std::memcpy(header + 263, "00", 2);
    std::memset(header + 148, ' ', 8);
    unsigned sum = 0;
    for (unsigned char c : header) sum += c;
    octal(header + 148, 7, sum);
    out.append(header, 512);
    out += data;
    out.append((512 - data.size() % 512) % 512, '\0');
  }
  out.append(1024, '\0');
  return out;
}

std::string gzip(const std::string& data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, data.size()) + 64, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
  out.resize(zs.total_out);
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

fs::path source_path(const std::string& relative) {
  return fs::path(OPTKB_SOURCE_DIR) / relative;
}

}  // namespace fixture
