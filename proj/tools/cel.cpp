#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cel/class_hierarchy.hpp"
#include "cel/error.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/learning_problem.hpp"
#include "cel/ntriples.hpp"
#include "cel/reasoner.hpp"
#include "cel/runner.hpp"
#include "cel/service.hpp"
#include "cel/sparql_client.hpp"
#include "cel/sparql_compiler.hpp"
#include "cel/syntax.hpp"
#include "cel/verbalizer.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitKnowledgeBase = 3;
constexpr int kExitEndpoint = 4;

struct ExitError {
  int code;
  std::string message;
};

struct LoadedKb {
  cel::KnowledgeBase kb;
  cel::ClassHierarchy hierarchy;
};

LoadedKb load_file_kb(const std::string& path) {
  try {
    LoadedKb loaded{cel::build_knowledge_base(cel::load_ntriples_file(path)), {}};
    loaded.hierarchy = cel::classify(loaded.kb);
    for (const auto& w : loaded.kb.warnings()) std::cerr << "warning: " << w << "\n";
    for (const auto& w : loaded.hierarchy.warnings()) std::cerr << "warning: " << w << "\n";
    return loaded;
  } catch (const std::exception& e) {
    throw ExitError{kExitKnowledgeBase, "cannot load knowledge base " + path + ": " + e.what()};
  }
}

std::string read_problem_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw ExitError{kExitConfig, "cannot read learning problem " + arg};
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

cel::LearningProblem load_problem(const std::string& arg) {
  try {
    cel::LearningProblem lp = cel::load_learning_problem(read_problem_text(arg));
    cel::validate(lp);
    return lp;
  } catch (const cel::ValidationError& e) {
    throw ExitError{kExitConfig, std::string("invalid learning problem: ") + e.what()};
  }
}

nlohmann::json option_value(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    return text;
  }
}

struct LearnArgs {
  std::string kb;
  std::string endpoint;
  std::string lp;
  std::string learner = "celoe";
  std::string output = "text";
  bool emit_sparql = false;
  bool verbalize = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_runtime;
  std::optional<std::size_t> max_iterations;
  std::optional<double> quality_threshold;
  std::optional<std::size_t> max_length;
  std::optional<std::size_t> top_k;
  std::string quality;
  std::optional<std::size_t> population;
  std::optional<std::size_t> generations;
  bool no_negation = false;
  bool no_universal = false;
  bool cardinality = false;
  bool serial = false;
  std::vector<std::string> settings;
  long timeout_ms = 30000;
  std::string bearer_token;
};

cel::RunOptions build_options(const LearnArgs& a) {
  cel::RunOptions options;
  try {
    options.learner = cel::parse_learner_kind(a.learner);
    options.emit_sparql = a.emit_sparql;
    options.verbalize = a.verbalize;
    const auto set = [&](const std::string& key, const nlohmann::json& v) { cel::apply_option(options, key, v, "--"); };
    if (a.seed) set("seed", *a.seed);
    if (a.max_runtime) set("max_runtime_seconds", *a.max_runtime);
    if (a.max_iterations) set("max_iterations", *a.max_iterations);
    if (a.quality_threshold) set("quality_threshold", *a.quality_threshold);
    if (a.max_length) {
      set("max_hypothesis_length", *a.max_length);
      set("max_tree_length", *a.max_length);
    }
    if (a.top_k) set("top_k", *a.top_k);
    if (!a.quality.empty()) set("quality_measure", a.quality);
    if (a.population) set("population_size", *a.population);
    if (a.generations) set("generations", *a.generations);
    if (a.no_negation) set("use_negation", false);
    if (a.no_universal) set("use_universal", false);
    if (a.cardinality) set("use_cardinality", true);
    if (a.serial) set("parallel_evaluation", false);
    for (const auto& s : a.settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw cel::ValidationError("--set", "expected key=value, got '" + s + "'");
      cel::apply_option(options, s.substr(0, eq), option_value(s.substr(eq + 1)), "--set ");
    }
    cel::validate(options);
  } catch (const cel::ValidationError& e) {
    throw ExitError{kExitConfig, e.what()};
  }
  return options;
}

void print_report(const cel::RunReport& report, const cel::LearningContext& context, const cel::RunOptions& options,
                  const std::string& output) {
  if (output == "json") {
    std::cout << cel::report_json(report, context, options).dump() << "\n";
  } else {
    std::cout << cel::report_text(report, context, options);
  }
}

int run_learn(const LearnArgs& a) {
  std::string endpoint = a.endpoint;
  if (endpoint.empty() && a.kb.empty()) {
    if (const char* env = std::getenv("CEL_SPARQL_ENDPOINT"); env != nullptr) endpoint = env;
  }
  if (a.kb.empty() == endpoint.empty()) {
    throw ExitError{kExitConfig, "exactly one of --kb or --endpoint (or CEL_SPARQL_ENDPOINT) is required"};
  }
  const cel::RunOptions options = build_options(a);
  const cel::LearningProblem problem = load_problem(a.lp);

  const auto learn = [&](const cel::LearningContext& context) {
    try {
      const cel::RunReport report = cel::run_learner(context, problem, options);
      print_report(report, context, options, a.output);
    } catch (const cel::UnknownIriError& e) {
      throw ExitError{kExitConfig, std::string("learning problem: ") + e.what()};
    } catch (const cel::ValidationError& e) {
      throw ExitError{kExitConfig, e.what()};
    }
  };

  if (!a.kb.empty()) {
    const LoadedKb loaded = load_file_kb(a.kb);
    const cel::Reasoner reasoner(loaded.kb, loaded.hierarchy);
    learn({loaded.kb, loaded.hierarchy, reasoner});
    return 0;
  }

  cel::EndpointOptions endpoint_options;
  endpoint_options.timeout = std::chrono::milliseconds(a.timeout_ms);
  if (!a.bearer_token.empty()) endpoint_options.bearer_token = a.bearer_token;
  try {
    const cel::KnowledgeBase kb = cel::load_endpoint_knowledge_base(endpoint, endpoint_options, &problem);
    const cel::ClassHierarchy hierarchy = cel::classify(kb);
    const cel::SparqlRetriever retriever(endpoint, kb, hierarchy, endpoint_options);
    learn({kb, hierarchy, retriever});
  } catch (const cel::EndpointError& e) {
    throw ExitError{kExitEndpoint, e.what()};
  } catch (const cel::ValidationError& e) {
    throw ExitError{kExitKnowledgeBase, std::string("endpoint knowledge base: ") + e.what()};
  }
  return 0;
}

int run_serve(const std::string& kb_path, const std::string& bind, double max_runtime, std::size_t threads) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw ExitError{kExitConfig, "--bind expects host:port"};
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw ExitError{kExitConfig, "invalid port in --bind " + bind};
  }
  if (max_runtime <= 0) throw ExitError{kExitConfig, "--max-runtime must be positive"};
  const LoadedKb loaded = load_file_kb(kb_path);
  const cel::Reasoner reasoner(loaded.kb, loaded.hierarchy);
  cel::LearningService service(loaded.kb, loaded.hierarchy, reasoner, {max_runtime, threads});
  std::cerr << "serving " << loaded.kb.universe_size() << " individuals on " << bind << "\n";
  try {
    service.listen(bind.substr(0, colon), port);
  } catch (const cel::Error& e) {
    throw ExitError{kExitConfig, e.what()};
  }
  return 0;
}

cel::ClassExpression parse_or_exit(const std::string& text, const cel::KnowledgeBase& kb) {
  try {
    return cel::parse_expression(text, kb);
  } catch (const cel::Error& e) {
    throw ExitError{kExitConfig, std::string("expression: ") + e.what()};
  }
}

int run_render(const std::string& kb_path, const std::string& expr, const std::string& syntax) {
  const LoadedKb loaded = load_file_kb(kb_path);
  const cel::ClassExpression e = parse_or_exit(expr, loaded.kb);
  if (syntax == "dl") {
    std::cout << cel::render(e, cel::Syntax::kDL) << "\n";
  } else if (syntax == "manchester") {
    std::cout << cel::render(e, cel::Syntax::kManchester) << "\n";
  } else if (syntax == "sparql") {
    const cel::HierarchyView view{loaded.kb, loaded.hierarchy};
    std::cout << cel::compile(e, &view, true).query_text << "\n";
  } else {
    std::cout << cel::verbalize(e, cel::LabelMap(loaded.kb)) << "\n";
  }
  return 0;
}

int run_instances(const std::string& kb_path, const std::string& expr) {
  const LoadedKb loaded = load_file_kb(kb_path);
  const cel::ClassExpression e = parse_or_exit(expr, loaded.kb);
  const cel::Reasoner reasoner(loaded.kb, loaded.hierarchy);
  reasoner.instances(e).for_each([&](std::size_t i) { std::cout << loaded.kb.individuals()[i] << "\n"; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class expression learning over RDF knowledge bases"};
  app.require_subcommand(1);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Learn class expressions for a learning problem");
  learn_cmd->add_option("--kb", learn.kb, "N-Triples knowledge base");
  learn_cmd->add_option("--endpoint", learn.endpoint, "SPARQL endpoint URL (default: $CEL_SPARQL_ENDPOINT)");
  learn_cmd->add_option("--lp", learn.lp, "Learning problem: JSON file path or inline JSON")->required();
  learn_cmd->add_option("--learner", learn.learner, "celoe, ocel or evo")->capture_default_str();
  learn_cmd->add_option("--output", learn.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  learn_cmd->add_flag("--emit-sparql", learn.emit_sparql, "Attach the compiled SPARQL query to each hypothesis");
  learn_cmd->add_flag("--verbalize", learn.verbalize, "Attach an English rendering to each hypothesis");
  learn_cmd->add_option("--seed", learn.seed, "Random seed");
  learn_cmd->add_option("--max-runtime", learn.max_runtime, "Search time limit in seconds");
  learn_cmd->add_option("--max-iterations", learn.max_iterations, "Search node expansion limit");
  learn_cmd->add_option("--quality-threshold", learn.quality_threshold, "Stop once this quality is reached");
  learn_cmd->add_option("--max-length", learn.max_length, "Maximum hypothesis length");
  learn_cmd->add_option("--top-k", learn.top_k, "Number of hypotheses reported");
  learn_cmd->add_option("--quality", learn.quality, "f1 or accuracy");
  learn_cmd->add_option("--population", learn.population, "Evolutionary population size");
  learn_cmd->add_option("--generations", learn.generations, "Evolutionary generation limit");
  learn_cmd->add_flag("--no-negation", learn.no_negation, "Disable negation in refinements");
  learn_cmd->add_flag("--no-universal", learn.no_universal, "Disable universal restrictions in refinements");
  learn_cmd->add_flag("--cardinality", learn.cardinality, "Enable minimum cardinality restrictions");
  learn_cmd->add_flag("--serial", learn.serial, "Evaluate candidates on one thread");
  learn_cmd->add_option("--set", learn.settings, "Any configuration field as key=value");
  learn_cmd->add_option("--timeout-ms", learn.timeout_ms, "Endpoint request timeout")->capture_default_str();
  learn_cmd->add_option("--bearer-token", learn.bearer_token, "Bearer token sent to the endpoint");

  std::string serve_kb, bind = "127.0.0.1:8080";
  double serve_runtime = 30.0;
  std::size_t threads = 8;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP learning service");
  serve_cmd->add_option("--kb", serve_kb, "N-Triples knowledge base")->required();
  serve_cmd->add_option("--bind", bind, "host:port")->capture_default_str();
  serve_cmd->add_option("--max-runtime", serve_runtime, "Per-request runtime cap in seconds")->capture_default_str();
  serve_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();

  std::string tool_kb, expr, syntax = "dl";
  auto* render_cmd = app.add_subcommand("render", "Parse a Manchester expression and render it");
  render_cmd->add_option("--kb", tool_kb, "N-Triples knowledge base")->required();
  render_cmd->add_option("expression", expr, "Manchester syntax expression")->required();
  render_cmd->add_option("--as", syntax, "dl, manchester, sparql or english")
      ->check(CLI::IsMember({"dl", "manchester", "sparql", "english"}))
      ->capture_default_str();
  auto* instances_cmd = app.add_subcommand("instances", "List the instances of a Manchester expression");
  instances_cmd->add_option("--kb", tool_kb, "N-Triples knowledge base")->required();
  instances_cmd->add_option("expression", expr, "Manchester syntax expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*learn_cmd) return run_learn(learn);
    if (*serve_cmd) return run_serve(serve_kb, bind, serve_runtime, threads);
    if (*render_cmd) return run_render(tool_kb, expr, syntax);
    if (*instances_cmd) return run_instances(tool_kb, expr);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
