#include "cel/ntriples.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cel/error.hpp"

namespace cel {

std::strong_ordering operator<=>(const Triple& a, const Triple& b) {
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (a.object.index() != b.object.index()) return a.object.index() <=> b.object.index();
  if (const auto* iri = std::get_if<Iri>(&a.object)) return *iri <=> std::get<Iri>(b.object);
  return std::get<Literal>(a.object).lexical <=> std::get<Literal>(b.object).lexical;
}

namespace {

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

unsigned hex_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  return static_cast<unsigned>(std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
}

// Cursor over a single statement line.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  Triple statement() {
    skip_ws();
    Iri subject = subject_iri();
    skip_ws();
    Iri predicate = iri_ref("predicate");
    skip_ws();
    Term object = object_term();
    skip_ws();
    expect('.');
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != '#') fail("unexpected trailing content");
    return Triple{subject, predicate, std::move(object)};
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_no_, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Iri subject_iri() {
    if (s_.substr(pos_, 2) == "_:") fail("blank node subjects are not supported");
    return iri_ref("subject");
  }

  Term object_term() {
    if (pos_ >= s_.size()) fail("missing object");
    if (s_[pos_] == '<') return iri_ref("object");
    if (s_[pos_] == '"') return literal();
    if (s_.substr(pos_, 2) == "_:") fail("blank node objects are not supported");
    fail("expected IRI or literal object");
  }

  Iri iri_ref(const char* role) {
    if (pos_ >= s_.size() || s_[pos_] != '<') fail(std::string("expected IRI for ") + role);
    ++pos_;
    std::string value;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated IRI");
      const char c = s_[pos_];
      if (c == '>') break;
      if (c == '\\') {
        value_escape(value);
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail(std::string("illegal character in IRI: '") + c + "'");
      }
      value += c;
      ++pos_;
    }
    ++pos_;
    if (!is_absolute_iri(value)) fail("IRI is not absolute: <" + value + ">");
    return Iri(value);
  }

  void value_escape(std::string& out) {
    // pos_ at backslash; only UCHAR is legal inside IRIREF
    if (pos_ + 1 >= s_.size()) fail("dangling escape");
    const char kind = s_[pos_ + 1];
    const std::size_t width = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (width == 0) fail("invalid escape in IRI");
    if (pos_ + 2 + width > s_.size()) fail("truncated unicode escape");
    unsigned long cp = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const char h = s_[pos_ + 2 + i];
      if (!is_hex(h)) fail("invalid hex digit in unicode escape");
      cp = cp * 16 + hex_value(h);
    }
    append_utf8(out, cp);
    pos_ += 2 + width;
  }

  Literal literal() {
    const std::size_t start = pos_;
    ++pos_;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated string literal");
      const char c = s_[pos_];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ + 1 >= s_.size()) fail("dangling escape");
        const char e = s_[pos_ + 1];
        if (e == 'u' || e == 'U') {
          const std::size_t width = e == 'u' ? 4 : 8;
          for (std::size_t i = 0; i < width; ++i) {
            if (pos_ + 2 + i >= s_.size() || !is_hex(s_[pos_ + 2 + i])) fail("invalid unicode escape");
          }
          pos_ += 2 + width;
          continue;
        }
        if (std::string_view("tbnrf\"'\\").find(e) == std::string_view::npos) fail("invalid escape");
        pos_ += 2;
        continue;
      }
      if (c == '\n' || c == '\r') fail("line break in string literal");
      ++pos_;
    }
    ++pos_;
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      iri_ref("datatype");
    } else if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      const std::size_t tag_start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (pos_ == tag_start) fail("empty language tag");
    }
    return Literal{std::string(s_.substr(start, pos_ - start))};
  }

  std::string_view s_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Triple> parse_ntriples(std::string_view text) {
  std::vector<Triple> triples;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    triples.push_back(LineParser(line, line_no).statement());
  }
  return triples;
}

std::string to_ntriples_term(const Term& term) {
  if (const auto* iri = std::get_if<Iri>(&term)) return "<" + iri->str() + ">";
  return std::get<Literal>(term).lexical;
}

std::string serialize_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += "<" + t.subject.str() + "> <" + t.predicate.str() + "> " + to_ntriples_term(t.object) + " .\n";
  }
  return out;
}

std::vector<Triple> load_ntriples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open ontology file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first != std::string::npos && text.compare(first, 5, "<?xml") == 0) {
    throw Error(path + ": RDF/XML and OWL/XML are not supported; convert the ontology to N-Triples");
  }
  return parse_ntriples(text);
}

}  // namespace cel
