#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gqn/errors.hpp"
#include "gqn/parse.hpp"
#include "gqn/print.hpp"
#include "gqn/propcheck.hpp"
#include "gqn/query.hpp"

namespace {

constexpr long kOracleFreshBase = 1000000;

// Exit codes are a stable contract.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitEval = 2;
constexpr int kExitCheckMismatch = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct QueryOptions {
  std::string graph_path;
  std::string query_path;
  std::string query_text;
  std::string engine = "narrowing";
  std::string trace = "off";
  std::string trace_out;
  std::string output = "text";
  bool lenient = false;
};

gqn::QueryResult run_oracle(const gqn::Query& q, gqn::GraphPtr g, gqn::EvalPolicy policy) {
  gqn::FreshVarGen fresh(kOracleFreshBase);
  fresh.reserve_labels(*g);
  for (const gqn::Variable& v : gqn::query_text_vars(q)) fresh.reserve(v);
  gqn::EvalContext ctx{fresh, policy};
  return gqn::result_oracle(q, std::move(g), ctx);
}

void emit_trace(const QueryOptions& opt, const gqn::Trace& trace) {
  if (opt.trace == "off") return;
  bool expand = opt.trace == "full";
  std::string payload = opt.output == "json" ? gqn::to_json(trace).dump(2) + "\n"
                                             : gqn::print_trace(trace, expand);
  if (opt.trace_out.empty()) {
    std::cerr << payload;
  } else {
    std::ofstream out(opt.trace_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + opt.trace_out);
    out << payload;
  }
}

void emit_result(const QueryOptions& opt, const gqn::QueryResult& result) {
  if (opt.output == "json")
    std::cout << gqn::to_json(result).dump(2) << "\n";
  else
    std::cout << gqn::print_result(result);
}

int cmd_query(const QueryOptions& opt) {
  gqn::Graph data;
  gqn::Query query;
  try {
    data = gqn::parse_graph(read_file(opt.graph_path));
  } catch (const gqn::ParseError& ex) {
    std::cerr << "error: " << opt.graph_path << ":" << ex.what() << "\n";
    return kExitParse;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitParse;
  }
  try {
    std::string text = opt.query_text.empty() ? read_file(opt.query_path) : opt.query_text;
    query = gqn::parse_query(text);
  } catch (const gqn::ParseError& ex) {
    std::cerr << "error: "
              << (opt.query_text.empty() ? opt.query_path : std::string("<query>")) << ":"
              << ex.what() << "\n";
    return kExitParse;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitParse;
  }

  auto issues = gqn::validate(query);
  if (!issues.empty()) {
    for (const auto& issue : issues) std::cerr << "error: " << issue.message << "\n";
    return kExitParse;
  }

  gqn::GraphPtr g = gqn::make_graph(std::move(data));
  gqn::EvalPolicy policy{opt.lenient};

  try {
    if (opt.engine == "oracle") {
      if (opt.trace != "off")
        std::cerr << "note: the reference evaluator produces no trace\n";
      emit_result(opt, run_oracle(query, g, policy));
      return kExitOk;
    }

    gqn::FreshVarGen fresh;
    gqn::NarrowContext ctx{fresh, policy};
    auto [result, trace] = gqn::solve_query(query, g, ctx);
    emit_trace(opt, trace);

    if (opt.engine == "check") {
      gqn::QueryResult reference = run_oracle(query, g, policy);
      std::set<gqn::Variable> protect = gqn::query_text_vars(query);
      for (const gqn::Variable& v : g->variables()) protect.insert(v);
      if (!gqn::results_equal_up_to_renaming(result, reference, protect)) {
        std::cerr << "check failed: engines disagree\n";
        std::cerr << "--- rewriting engine ---\n" << gqn::print_result(result);
        std::cerr << "--- reference evaluator ---\n" << gqn::print_result(reference);
        return kExitCheckMismatch;
      }
    }
    emit_result(opt, result);
    return kExitOk;
  } catch (const gqn::ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitParse;
  } catch (const gqn::EvalException& ex) {
    std::cerr << "evaluation error: " << ex.what() << "\n";
    return kExitEval;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitEval;
  }
}

int cmd_props(std::uint64_t seed, int cases) {
  if (cases < 1) {
    std::cerr << "error: --cases must be at least 1\n";
    return kExitParse;
  }
  try {
    gqn::PropReport report = gqn::run_property_suite(seed, cases);
    std::cout << report.to_text();
    return report.ok() ? kExitOk : kExitEval;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitEval;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph query engine with a rule-based rewriting evaluator"};
  app.set_version_flag("--version", "gqn 0.1.0");
  app.require_subcommand(1);

  QueryOptions opt;
  CLI::App* query = app.add_subcommand("query", "evaluate a query over a graph file");
  query->add_option("-g,--graph", opt.graph_path, "graph file (triple text)")->required();
  auto* qfile = query->add_option("-q,--query", opt.query_path, "query file");
  auto* qtext = query->add_option("--query-text", opt.query_text, "inline query text");
  qfile->excludes(qtext);
  query->add_option("--engine", opt.engine, "narrowing, oracle, or check")
      ->check(CLI::IsMember({"narrowing", "oracle", "check"}));
  query->add_option("--trace", opt.trace, "off, summary, or full")
      ->check(CLI::IsMember({"off", "summary", "full"}));
  query->add_option("--trace-out", opt.trace_out, "write the trace to a file");
  query->add_flag("--lenient", opt.lenient,
                  "drop rows whose expressions fail instead of aborting");
  query->add_option("--output", opt.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::uint64_t seed = 1;
  int cases = 200;
  CLI::App* props = app.add_subcommand(
      "props", "randomized equivalence and calculus-property checks");
  props->add_option("--seed", seed, "generator seed");
  props->add_option("--cases", cases, "number of random instances");

  CLI11_PARSE(app, argc, argv);

  if (query->parsed()) {
    if (opt.query_path.empty() && opt.query_text.empty()) {
      std::cerr << "error: provide a query with -q or --query-text\n";
      return kExitParse;
    }
    return cmd_query(opt);
  }
  return cmd_props(seed, cases);
}
