#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "cel/class_hierarchy.hpp"
#include "cel/knowledge_base.hpp"
#include "cel/reasoner.hpp"
#include "cel/runner.hpp"

namespace cel {

struct ServiceOptions {
  // Upper bound applied to every request's max_runtime_seconds.
  double max_runtime_seconds = 30.0;
  // Worker threads serving requests.
  std::size_t threads = 8;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

// HTTP front end over a shared immutable knowledge base:
//   POST /learn   {learning_problem: {...}, learner?, config?} -> report JSON
//   GET  /health  {"individuals": n, "classes": n, "roles": n}
class LearningService {
 public:
  LearningService(const KnowledgeBase& kb, const ClassHierarchy& hierarchy, const InstanceRetriever& retriever,
                  ServiceOptions options = {});
  ~LearningService();
  LearningService(const LearningService&) = delete;
  LearningService& operator=(const LearningService&) = delete;

  HttpResponse handle_learn(std::string_view body) const;
  HttpResponse handle_health() const;

  // Binds and starts serving on a background thread; port 0 picks a free
  // port. Returns the bound port. Throws Error when binding fails.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Server;

  const KnowledgeBase& kb_;
  const ClassHierarchy& hierarchy_;
  const InstanceRetriever& retriever_;
  ServiceOptions options_;
  std::unique_ptr<Server> server_;
};

}  // namespace cel
