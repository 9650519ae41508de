#include "mock_endpoint.hpp"

#include <mutex>
#include <stdexcept>
#include <thread>

#include "cel/sparql_engine.hpp"
#include "httplib.h"

namespace cel::testing {

struct MockEndpoint::State {
  explicit State(std::vector<Triple> triples) : store(std::move(triples)) {}

  TripleStore store;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  mutable std::mutex mutex;
  std::chrono::milliseconds delay{0};
  int status = 200;
  std::optional<std::string> body;
  std::size_t requests = 0;
  std::string authorization;
  std::string query;
};

MockEndpoint::MockEndpoint(std::vector<Triple> triples) : state_(std::make_unique<State>(std::move(triples))) {
  State& s = *state_;
  s.server.Post("/sparql", [&s](const httplib::Request& req, httplib::Response& res) {
    std::chrono::milliseconds delay;
    int status;
    std::optional<std::string> body;
    {
      std::lock_guard lock(s.mutex);
      ++s.requests;
      s.authorization = req.get_header_value("Authorization");
      s.query = req.get_param_value("query");
      delay = s.delay;
      status = s.status;
      body = s.body;
    }
    if (delay.count() > 0) std::this_thread::sleep_for(delay);
    res.status = status;
    if (body) {
      res.set_content(*body, "application/sparql-results+json");
      return;
    }
    try {
      res.set_content(to_sparql_results_json(execute_local(s.store, req.get_param_value("query"))),
                      "application/sparql-results+json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    }
  });
  s.port = s.server.bind_to_any_port("127.0.0.1");
  if (s.port <= 0) throw std::runtime_error("mock endpoint could not bind");
  s.thread = std::thread([&s] { s.server.listen_after_bind(); });
  s.server.wait_until_ready();
}

MockEndpoint::~MockEndpoint() {
  state_->server.stop();
  if (state_->thread.joinable()) state_->thread.join();
}

std::string MockEndpoint::url() const { return "http://127.0.0.1:" + std::to_string(state_->port) + "/sparql"; }

void MockEndpoint::set_delay(std::chrono::milliseconds delay) {
  std::lock_guard lock(state_->mutex);
  state_->delay = delay;
}

void MockEndpoint::set_status(int status) {
  std::lock_guard lock(state_->mutex);
  state_->status = status;
}

void MockEndpoint::set_body(std::optional<std::string> body) {
  std::lock_guard lock(state_->mutex);
  state_->body = std::move(body);
}

std::size_t MockEndpoint::request_count() const {
  std::lock_guard lock(state_->mutex);
  return state_->requests;
}

std::string MockEndpoint::last_authorization() const {
  std::lock_guard lock(state_->mutex);
  return state_->authorization;
}

std::string MockEndpoint::last_query() const {
  std::lock_guard lock(state_->mutex);
  return state_->query;
}

}  // namespace cel::testing
