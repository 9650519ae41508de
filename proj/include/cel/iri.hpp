#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace cel {

// An interned absolute IRI. Two Iri values built from equal strings share the
// same storage, so equality and hashing are pointer operations. Ordering is by
// string content so that sorted output is stable across runs.
class Iri {
 public:
  // Interns `value`. Throws ValidationError when empty, containing whitespace
  // or lacking a URI scheme.
  explicit Iri(std::string_view value);

  const std::string& str() const noexcept { return *value_; }

  // Fragment after the last '#', else the last path segment after '/'.
  std::string_view local_name() const noexcept;

  friend bool operator==(const Iri& a, const Iri& b) noexcept { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) noexcept {
    if (a.value_ == b.value_) return std::strong_ordering::equal;
    return *a.value_ <=> *b.value_;
  }

  std::size_t hash() const noexcept { return std::hash<const void*>{}(value_); }

 private:
  const std::string* value_;
};

inline std::ostream& operator<<(std::ostream& os, const Iri& iri) { return os << iri.str(); }

// True for a non-empty string with a scheme and no whitespace or angle brackets.
bool is_absolute_iri(std::string_view value) noexcept;

namespace vocab {
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlNamedIndividual = "http://www.w3.org/2002/07/owl#NamedIndividual";
}  // namespace vocab

}  // namespace cel

template <>
struct std::hash<cel::Iri> {
  std::size_t operator()(const cel::Iri& iri) const noexcept { return iri.hash(); }
};
