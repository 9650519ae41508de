#include "cel/service.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>

#include "cel/error.hpp"
#include "cel/learning_problem.hpp"
#include "httplib.h"

namespace cel {

struct LearningService::Server {
  httplib::Server http;
  std::thread thread;
};

namespace {

HttpResponse json_response(int status, const nlohmann::ordered_json& body) { return {status, body.dump()}; }

HttpResponse field_error(int status, const std::string& field, const std::string& message) {
  nlohmann::ordered_json body;
  body["error"] = message;
  body["field"] = field;
  return json_response(status, body);
}

std::string next_error_id() {
  static std::atomic<unsigned> counter{0};
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%llx-%04x",
                static_cast<unsigned long long>(std::chrono::duration_cast<std::chrono::milliseconds>(now).count()),
                counter.fetch_add(1) & 0xffffu);
  return buffer;
}

}  // namespace

LearningService::LearningService(const KnowledgeBase& kb, const ClassHierarchy& hierarchy,
                                 const InstanceRetriever& retriever, ServiceOptions options)
    : kb_(kb), hierarchy_(hierarchy), retriever_(retriever), options_(options) {}

LearningService::~LearningService() { stop(); }

HttpResponse LearningService::handle_learn(std::string_view body) const {
  try {
    nlohmann::json request;
    try {
      request = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      return field_error(400, "body", std::string("invalid JSON: ") + e.what());
    }
    if (!request.is_object()) return field_error(400, "body", "expected a JSON object");
    for (const auto& [key, value] : request.items()) {
      if (key != "learning_problem" && key != "learner" && key != "config") {
        return field_error(400, key, "unknown field");
      }
    }
    if (!request.contains("learning_problem")) return field_error(400, "learning_problem", "missing field");
    const auto& lp_json = request["learning_problem"];
    if (!lp_json.is_object()) return field_error(400, "learning_problem", "expected an object");

    LearningProblem problem;
    try {
      problem = load_learning_problem(lp_json.dump());
      validate(problem);
    } catch (const ValidationError& e) {
      return field_error(400, e.field().empty() ? "learning_problem" : "learning_problem." + e.field(), e.message());
    }

    RunOptions options;
    options.search.max_runtime_seconds = options_.max_runtime_seconds;
    if (request.contains("learner")) apply_option(options, "learner", request["learner"], "");
    if (request.contains("config")) apply_options(options, request["config"]);
    options.search.max_runtime_seconds = std::min(options.search.max_runtime_seconds, options_.max_runtime_seconds);

    const LearningContext context{kb_, hierarchy_, retriever_};
    const RunReport report = run_learner(context, problem, options);
    return json_response(200, report_json(report, context, options));
  } catch (const ValidationError& e) {
    return field_error(400, e.field(), e.message());
  } catch (const UnknownIriError& e) {
    nlohmann::ordered_json body;
    body["error"] = e.what();
    body["iri"] = e.symbol();
    return json_response(422, body);
  } catch (const std::exception& e) {
    const std::string id = next_error_id();
    std::cerr << "error " << id << ": " << e.what() << "\n";
    nlohmann::ordered_json body;
    body["error"] = "internal error";
    body["error_id"] = id;
    return json_response(500, body);
  }
}

HttpResponse LearningService::handle_health() const {
  nlohmann::ordered_json body;
  body["status"] = "ok";
  body["individuals"] = kb_.universe_size();
  body["classes"] = kb_.classes().size();
  body["roles"] = kb_.roles().size();
  return json_response(200, body);
}

namespace {

void install_routes(httplib::Server& http, const LearningService& service, std::size_t threads) {
  http.new_task_queue = [threads] { return new httplib::ThreadPool(std::max<std::size_t>(threads, 2)); };
  const auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  http.Post("/learn", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_learn(req.body));
  });
  http.Get("/health", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.handle_health());
  });
}

}  // namespace

int LearningService::start(const std::string& host, int port) {
  stop();
  server_ = std::make_unique<Server>();
  install_routes(server_->http, *this, options_.threads);
  const int bound = port == 0 ? server_->http.bind_to_any_port(host) : (server_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    server_.reset();
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  server_->thread = std::thread([this] { server_->http.listen_after_bind(); });
  server_->http.wait_until_ready();
  return bound;
}

void LearningService::listen(const std::string& host, int port) {
  stop();
  server_ = std::make_unique<Server>();
  install_routes(server_->http, *this, options_.threads);
  if (!server_->http.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  server_->http.listen_after_bind();
}

void LearningService::stop() {
  if (!server_) return;
  server_->http.stop();
  if (server_->thread.joinable()) server_->thread.join();
  server_.reset();
}

}  // namespace cel
