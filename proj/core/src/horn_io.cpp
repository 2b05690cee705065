#include "hornforge/horn_io.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "hornforge/errors.hpp"

namespace hornforge {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Trims [b, e) in place, returning the new begin.
std::size_t trim(std::string_view s, std::size_t& b, std::size_t& e) {
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return b;
}

struct Token {
  std::string_view text;
  std::size_t col;  // 1-based
};

std::vector<Token> split_words(std::string_view line, std::size_t from) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

}  // namespace

HornDocument parse_horn(std::string_view text, bool allow_empty_bodies) {
  HornDocument doc;
  std::optional<std::size_t> declared;
  bool names_given = false;
  VarRegistry registry;
  struct PendingClause {
    std::vector<std::string> body;
    std::string head;
    std::size_t line, col;
  };
  std::vector<PendingClause> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (raw.size() >= 2 && raw[0] == '#' && raw[1] == '%') {
      std::string_view m = raw.substr(2);
      if (!m.empty() && m[0] == ' ') m.remove_prefix(1);
      if (!m.empty() && m.back() == '\r') m.remove_suffix(1);
      doc.meta.emplace_back(m);
      continue;
    }
    std::size_t b = 0;
    std::size_t e = raw.find('#');
    if (e == std::string_view::npos) e = raw.size();
    trim(raw, b, e);
    if (b == e) continue;
    std::string_view line = raw.substr(0, e);

    if (!declared) {
      if (line.substr(b, 5) != "vars:") fail(line_no, b + 1, "expected header 'vars: <n>'");
      auto words = split_words(line, b + 5);
      if (words.size() != 1) fail(line_no, b + 6, "expected a single variable count");
      std::size_t n = 0;
      auto [p, ec] = std::from_chars(words[0].text.data(), words[0].text.data() + words[0].text.size(), n);
      if (ec != std::errc() || p != words[0].text.data() + words[0].text.size()) {
        fail(line_no, words[0].col, "invalid variable count '" + std::string(words[0].text) + "'");
      }
      declared = n;
      continue;
    }
    if (line.substr(b, 6) == "names:") {
      if (names_given || !pending.empty()) fail(line_no, b + 1, "'names:' must directly follow the header");
      names_given = true;
      for (const Token& t : split_words(line, b + 6)) {
        try {
          registry.add(t.text);
        } catch (const InputError& err) {
          fail(line_no, t.col, err.what());
        }
      }
      continue;
    }

    const std::size_t arrow = line.find("->", b);
    if (arrow == std::string_view::npos) fail(line_no, b + 1, "expected '->' in clause");
    if (line.find("->", arrow + 2) != std::string_view::npos) {
      fail(line_no, line.find("->", arrow + 2) + 1, "more than one '->' in clause");
    }
    PendingClause pc;
    pc.line = line_no;
    pc.col = b + 1;
    std::size_t hb = arrow + 2, he = e;
    trim(line, hb, he);
    auto head_words = split_words(line.substr(0, he), hb);
    if (head_words.size() != 1) fail(line_no, arrow + 3, "expected exactly one head variable");
    pc.head = std::string(head_words[0].text);

    std::size_t seg = b;
    while (seg < arrow) {
      std::size_t amp = line.find('&', seg);
      if (amp == std::string_view::npos || amp > arrow) amp = arrow;
      std::size_t sb = seg, se = amp;
      trim(line, sb, se);
      auto words = split_words(line.substr(0, se), sb);
      if (words.size() != 1) {
        if (!(words.empty() && seg == b && amp == arrow)) {
          fail(line_no, sb + 1, "expected one variable name between '&' separators");
        }
      } else {
        pc.body.emplace_back(words[0].text);
      }
      seg = amp + 1;
    }
    pending.push_back(std::move(pc));
  }

  if (!declared) throw InputError("line 1, column 1: missing header 'vars: <n>'");

  for (const auto& pc : pending) {
    try {
      for (const auto& name : pc.body) names_given ? registry.id(name) : registry.intern(name);
      names_given ? registry.id(pc.head) : registry.intern(pc.head);
    } catch (const InputError& err) {
      fail(pc.line, pc.col, err.what());
    }
  }
  if (registry.size() != *declared) {
    throw InputError("header declares " + std::to_string(*declared) + " variables but " +
                     std::to_string(registry.size()) + " are named");
  }

  doc.cnf = HornCnf(std::move(registry), allow_empty_bodies);
  for (const auto& pc : pending) {
    std::vector<VarId> body;
    for (const auto& name : pc.body) body.push_back(doc.cnf.id(name));
    try {
      doc.cnf.add(Clause::make(std::move(body), doc.cnf.id(pc.head)));
    } catch (const InputError& err) {
      fail(pc.line, pc.col, err.what());
    }
  }
  return doc;
}

std::string format_clause(const HornCnf& cnf, const Clause& c) {
  std::string out;
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    if (i != 0) out += " & ";
    out += cnf.name(c.body[i]);
  }
  out += c.body.empty() ? "-> " : " -> ";
  out += cnf.name(c.head);
  return out;
}

std::string print_horn(const HornCnf& cnf, const std::vector<std::string>& meta) {
  std::ostringstream os;
  for (const auto& m : meta) os << "#% " << m << '\n';
  os << "vars: " << cnf.num_vars() << '\n';
  os << "names:";
  for (const auto& name : cnf.registry().names()) os << ' ' << name;
  os << '\n';
  for (const auto& c : cnf.clauses()) os << format_clause(cnf, c) << '\n';
  return os.str();
}

}  // namespace hornforge
