#include "cel/iri.hpp"

#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <unordered_set>

#include "cel/error.hpp"

namespace cel {

namespace {

// Process-wide pool. Node-based storage keeps element addresses stable.
class InternPool {
 public:
  const std::string* intern(std::string_view value) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = pool_.find(value); it != pool_.end()) return &*it;
    }
    std::unique_lock lock(mutex_);
    return &*pool_.emplace(value).first;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
  };
  std::shared_mutex mutex_;
  std::unordered_set<std::string, Hash, std::equal_to<>> pool_;
};

InternPool& pool() {
  static InternPool instance;
  return instance;
}

}  // namespace

bool is_absolute_iri(std::string_view value) noexcept {
  if (value.empty() || !std::isalpha(static_cast<unsigned char>(value[0]))) return false;
  std::size_t colon = std::string_view::npos;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto c = static_cast<unsigned char>(value[i]);
    if (std::isspace(c) || c == '<' || c == '>' || c == '"') return false;
    if (colon == std::string_view::npos) {
      if (c == ':') {
        colon = i;
      } else if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') {
        return false;
      }
    }
  }
  return colon != std::string_view::npos && colon > 0;
}

Iri::Iri(std::string_view value) {
  if (!is_absolute_iri(value)) {
    throw ValidationError("iri", "not an absolute IRI: '" + std::string(value) + "'");
  }
  value_ = pool().intern(value);
}

std::string_view Iri::local_name() const noexcept {
  std::string_view s = *value_;
  if (auto hash = s.rfind('#'); hash != std::string_view::npos && hash + 1 < s.size()) {
    return s.substr(hash + 1);
  }
  if (auto slash = s.rfind('/'); slash != std::string_view::npos && slash + 1 < s.size()) {
    return s.substr(slash + 1);
  }
  if (auto colon = s.find(':'); colon != std::string_view::npos && colon + 1 < s.size()) {
    return s.substr(colon + 1);
  }
  return s;
}

}  // namespace cel
