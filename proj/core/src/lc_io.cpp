#include "hornforge/lc_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hornforge/errors.hpp"

namespace hornforge {

namespace {

struct Token {
  std::string text;
  std::size_t line, col;
};

struct Section {
  std::string keyword;           // X, Y, LX, LY, E, PI
  std::vector<Token> args;       // tokens between the keyword and ':'
  std::vector<Token> items;      // tokens after ':' and on continuation lines
  std::size_t line, col;
};

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Token> tokenize(std::string_view line, std::size_t line_no, std::size_t from, std::size_t to) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < to) {
    while (i < to && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < to && !is_space(line[j])) ++j;
    if (j > i) out.push_back({std::string(line.substr(i, j - i)), line_no, i + 1});
    i = j;
  }
  return out;
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t stop = line.find('#');
    if (stop == std::string_view::npos) stop = line.size();
    const std::size_t colon = line.substr(0, stop).find(':');
    if (colon == std::string_view::npos) {
      auto toks = tokenize(line, line_no, 0, stop);
      if (toks.empty()) continue;
      if (sections.empty()) fail(line_no, toks[0].col, "expected a section header such as 'X:'");
      for (auto& t : toks) sections.back().items.push_back(std::move(t));
      continue;
    }
    auto head = tokenize(line, line_no, 0, colon);
    if (head.empty()) fail(line_no, colon + 1, "missing section keyword before ':'");
    Section sec;
    sec.keyword = head[0].text;
    sec.line = line_no;
    sec.col = head[0].col;
    sec.args.assign(head.begin() + 1, head.end());
    sec.items = tokenize(line, line_no, colon + 1, stop);
    sections.push_back(std::move(sec));
  }
  return sections;
}

template <typename Find>
std::uint32_t resolve(const Token& t, Find&& find, const char* what) {
  auto id = find(t.text);
  if (!id) fail(t.line, t.col, std::string("unknown ") + what + " '" + t.text + "'");
  return *id;
}

std::vector<std::string> texts(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

}  // namespace

LcInstance parse_lc(std::string_view text) {
  const auto sections = split_sections(text);
  const Section* xs = nullptr;
  const Section* ys = nullptr;
  const Section* lx = nullptr;
  const Section* ly = nullptr;
  std::vector<const Section*> lx_per, ly_per, es, pis;
  for (const auto& s : sections) {
    auto once = [&](const Section*& slot) {
      if (slot) fail(s.line, s.col, "section '" + s.keyword + ":' given twice");
      if (!s.args.empty()) fail(s.args[0].line, s.args[0].col, "unexpected token before ':'");
      slot = &s;
    };
    if (s.keyword == "X") once(xs);
    else if (s.keyword == "Y") once(ys);
    else if (s.keyword == "LX") s.args.empty() ? once(lx) : lx_per.push_back(&s);
    else if (s.keyword == "LY") s.args.empty() ? once(ly) : ly_per.push_back(&s);
    else if (s.keyword == "E") {
      if (!s.args.empty()) fail(s.args[0].line, s.args[0].col, "unexpected token before ':'");
      es.push_back(&s);
    } else if (s.keyword == "PI") pis.push_back(&s);
    else fail(s.line, s.col, "unknown section '" + s.keyword + "'");
  }
  if (!xs || !ys) throw InputError("line 1, column 1: missing 'X:' or 'Y:' section");

  LcSpec spec;
  spec.x_names = texts(xs->items);
  spec.y_names = texts(ys->items);
  std::map<std::string, VertexId, std::less<>> xi, yi;
  for (VertexId i = 0; i < spec.x_names.size(); ++i) {
    if (!xi.emplace(spec.x_names[i], i).second) fail(xs->items[i].line, xs->items[i].col, "duplicate vertex");
  }
  for (VertexId i = 0; i < spec.y_names.size(); ++i) {
    if (!yi.emplace(spec.y_names[i], i).second) fail(ys->items[i].line, ys->items[i].col, "duplicate vertex");
    if (xi.count(spec.y_names[i]) != 0) fail(ys->items[i].line, ys->items[i].col, "vertex is on both sides");
  }
  for (const Section* s : {xs, ys}) {
    for (const Token& t : s->items) {
      if (t.text.find('.') != std::string::npos) fail(t.line, t.col, "vertex names may not contain '.'");
    }
  }
  auto find_in = [](const auto& m) {
    return [&m](const std::string& n) -> std::optional<std::uint32_t> {
      auto it = m.find(n);
      return it == m.end() ? std::nullopt : std::optional<std::uint32_t>(it->second);
    };
  };

  spec.refined = !lx_per.empty() || !ly_per.empty();
  if (spec.refined) {
    if (lx || ly) fail((lx ? lx : ly)->line, 1, "refined instances list labels per vertex only");
    auto per_vertex = [&](const std::vector<const Section*>& secs, const auto& index, std::vector<std::string>& labels,
                          std::vector<VertexId>& owner, std::size_t count, const char* side) {
      std::vector<char> seen(count, 0);
      for (const Section* s : secs) {
        if (s->args.size() != 1) fail(s->line, s->col, std::string("expected 'L") + side + " <vertex>:'");
        const VertexId v = resolve(s->args[0], find_in(index), "vertex");
        if (seen[v]) fail(s->line, s->col, "labels of '" + s->args[0].text + "' given twice");
        seen[v] = 1;
        for (const auto& t : s->items) {
          labels.push_back(t.text);
          owner.push_back(v);
        }
      }
    };
    per_vertex(lx_per, xi, spec.x_labels, spec.x_label_owner, spec.x_names.size(), "X");
    per_vertex(ly_per, yi, spec.y_labels, spec.y_label_owner, spec.y_names.size(), "Y");
  } else {
    if (!lx || !ly) throw InputError("line 1, column 1: missing 'LX:' or 'LY:' section");
    spec.x_labels = texts(lx->items);
    spec.y_labels = texts(ly->items);
  }
  std::map<std::string, LabelId, std::less<>> lxi, lyi;
  for (LabelId i = 0; i < spec.x_labels.size(); ++i) lxi.emplace(spec.x_labels[i], i);
  for (LabelId i = 0; i < spec.y_labels.size(); ++i) lyi.emplace(spec.y_labels[i], i);

  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_slot;
  std::vector<Token> edge_tokens;
  for (const Section* s : es) {
    if (s->items.size() % 2 != 0) fail(s->items.back().line, s->items.back().col, "edge list has an odd token count");
    for (std::size_t k = 0; k < s->items.size(); k += 2) {
      const VertexId x = resolve(s->items[k], find_in(xi), "x-vertex");
      const VertexId y = resolve(s->items[k + 1], find_in(yi), "y-vertex");
      if (!edge_slot.emplace(std::make_pair(x, y), spec.edges.size()).second) {
        fail(s->items[k].line, s->items[k].col, "duplicate edge");
      }
      spec.edges.emplace_back(x, y);
      edge_tokens.push_back(s->items[k]);
    }
  }
  spec.constraints.assign(spec.edges.size(), {});
  std::vector<char> has_pi(spec.edges.size(), 0);
  for (const Section* s : pis) {
    if (s->args.size() != 2) fail(s->line, s->col, "expected 'PI <x> <y>:'");
    const VertexId x = resolve(s->args[0], find_in(xi), "x-vertex");
    const VertexId y = resolve(s->args[1], find_in(yi), "y-vertex");
    auto it = edge_slot.find({x, y});
    if (it == edge_slot.end()) fail(s->line, s->col, "constraint for an edge missing from 'E:'");
    if (has_pi[it->second]) fail(s->line, s->col, "constraint given twice for this edge");
    has_pi[it->second] = 1;
    if (s->items.size() % 2 != 0) fail(s->line, s->col, "constraint has an odd token count");
    for (std::size_t k = 0; k < s->items.size(); k += 2) {
      spec.constraints[it->second].push_back(
          {resolve(s->items[k], find_in(lxi), "x-label"), resolve(s->items[k + 1], find_in(lyi), "y-label")});
    }
  }
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    if (!has_pi[e]) fail(edge_tokens[e].line, edge_tokens[e].col, "edge has no 'PI' section");
  }
  return LcInstance(std::move(spec));
}

std::string print_lc(const LcInstance& inst) {
  const LcSpec& s = inst.spec();
  std::ostringstream os;
  auto list = [&](const std::vector<std::string>& v) {
    for (const auto& n : v) os << ' ' << n;
    os << '\n';
  };
  os << "X:";
  list(s.x_names);
  os << "Y:";
  list(s.y_names);
  if (inst.refined()) {
    for (VertexId x = 0; x < inst.num_x(); ++x) {
      os << "LX " << inst.x_name(x) << ':';
      for (LabelId l : inst.labels_of_x(x)) os << ' ' << inst.x_label(l);
      os << '\n';
    }
    for (VertexId y = 0; y < inst.num_y(); ++y) {
      os << "LY " << inst.y_name(y) << ':';
      for (LabelId l : inst.labels_of_y(y)) os << ' ' << inst.y_label(l);
      os << '\n';
    }
  } else {
    os << "LX:";
    list(s.x_labels);
    os << "LY:";
    list(s.y_labels);
  }
  os << "E:\n";
  for (const auto& [x, y] : s.edges) os << inst.x_name(x) << ' ' << inst.y_name(y) << '\n';
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const auto [x, y] = inst.edge(e);
    os << "PI " << inst.x_name(x) << ' ' << inst.y_name(y) << ':';
    for (const LabelPair& p : inst.constraint(e)) os << ' ' << inst.x_label(p.x) << ' ' << inst.y_label(p.y);
    os << '\n';
  }
  return os.str();
}

nlohmann::json lc_to_json(const LcInstance& inst) {
  using nlohmann::json;
  json j;
  j["schema"] = kLcSchema;
  j["refined"] = inst.refined();
  j["x"] = inst.spec().x_names;
  j["y"] = inst.spec().y_names;
  if (inst.refined()) {
    // One label list per vertex, parallel to "x" / "y".
    json lx = json::array(), ly = json::array();
    for (VertexId x = 0; x < inst.num_x(); ++x) {
      json arr = json::array();
      for (LabelId l : inst.labels_of_x(x)) arr.push_back(inst.x_label(l));
      lx.push_back(arr);
    }
    for (VertexId y = 0; y < inst.num_y(); ++y) {
      json arr = json::array();
      for (LabelId l : inst.labels_of_y(y)) arr.push_back(inst.y_label(l));
      ly.push_back(arr);
    }
    j["lx"] = lx;
    j["ly"] = ly;
  } else {
    j["lx"] = inst.spec().x_labels;
    j["ly"] = inst.spec().y_labels;
  }
  json edges = json::array();
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const auto [x, y] = inst.edge(e);
    json pi = json::array();
    for (const LabelPair& p : inst.constraint(e)) pi.push_back({inst.x_label(p.x), inst.y_label(p.y)});
    edges.push_back({{"x", inst.x_name(x)}, {"y", inst.y_name(y)}, {"pi", pi}});
  }
  j["edges"] = edges;
  return j;
}

LcInstance lc_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != kLcSchema) throw InputError("unsupported schema");
    LcSpec spec;
    spec.refined = j.at("refined").get<bool>();
    spec.x_names = j.at("x").get<std::vector<std::string>>();
    spec.y_names = j.at("y").get<std::vector<std::string>>();
    auto index = [](const std::vector<std::string>& names) {
      std::map<std::string, std::uint32_t> m;
      for (std::uint32_t i = 0; i < names.size(); ++i) m.emplace(names[i], i);
      return m;
    };
    auto lookup = [](const std::map<std::string, std::uint32_t>& m, const std::string& n, const char* what) {
      auto it = m.find(n);
      if (it == m.end()) throw InputError(std::string("unknown ") + what + " '" + n + "'");
      return it->second;
    };
    const auto xi = index(spec.x_names), yi = index(spec.y_names);
    if (spec.refined) {
      const auto& lx = j.at("lx");
      const auto& ly = j.at("ly");
      if (lx.size() != spec.x_names.size() || ly.size() != spec.y_names.size()) {
        throw InputError("refined label lists must parallel the vertex lists");
      }
      for (VertexId x = 0; x < lx.size(); ++x) {
        for (const auto& l : lx[x]) {
          spec.x_labels.push_back(l.get<std::string>());
          spec.x_label_owner.push_back(x);
        }
      }
      for (VertexId y = 0; y < ly.size(); ++y) {
        for (const auto& l : ly[y]) {
          spec.y_labels.push_back(l.get<std::string>());
          spec.y_label_owner.push_back(y);
        }
      }
    } else {
      spec.x_labels = j.at("lx").get<std::vector<std::string>>();
      spec.y_labels = j.at("ly").get<std::vector<std::string>>();
    }
    const auto lxi = index(spec.x_labels), lyi = index(spec.y_labels);
    for (const auto& e : j.at("edges")) {
      spec.edges.emplace_back(lookup(xi, e.at("x").get<std::string>(), "x-vertex"),
                              lookup(yi, e.at("y").get<std::string>(), "y-vertex"));
      std::vector<LabelPair> pi;
      for (const auto& p : e.at("pi")) {
        pi.push_back({lookup(lxi, p.at(0).get<std::string>(), "x-label"),
                      lookup(lyi, p.at(1).get<std::string>(), "y-label")});
      }
      spec.constraints.push_back(std::move(pi));
    }
    return LcInstance(std::move(spec));
  } catch (const nlohmann::json::exception& err) {
    throw InputError(std::string("malformed instance JSON: ") + err.what());
  }
}

nlohmann::json labeling_to_json(const LcInstance& inst, const Labeling& f) {
  using nlohmann::json;
  validate_labeling(inst, f);
  json jx = json::object(), jy = json::object();
  for (VertexId x = 0; x < inst.num_x(); ++x) {
    json arr = json::array();
    for (LabelId l : f.x[x]) arr.push_back(inst.x_label(l));
    jx[inst.x_name(x)] = arr;
  }
  for (VertexId y = 0; y < inst.num_y(); ++y) {
    json arr = json::array();
    for (LabelId l : f.y[y]) arr.push_back(inst.y_label(l));
    jy[inst.y_name(y)] = arr;
  }
  return json{{"x", jx}, {"y", jy}};
}

Labeling labeling_from_json(const LcInstance& inst, const nlohmann::json& j) {
  try {
    Labeling f;
    f.x.resize(inst.num_x());
    f.y.resize(inst.num_y());
    for (const auto& [name, labels] : j.at("x").items()) {
      auto x = inst.find_x(name);
      if (!x) throw InputError("unknown x-vertex '" + name + "'");
      for (const auto& l : labels) {
        auto id = inst.find_x_label(l.get<std::string>());
        if (!id) throw InputError("unknown x-label '" + l.get<std::string>() + "'");
        f.x[*x].push_back(*id);
      }
    }
    for (const auto& [name, labels] : j.at("y").items()) {
      auto y = inst.find_y(name);
      if (!y) throw InputError("unknown y-vertex '" + name + "'");
      for (const auto& l : labels) {
        auto id = inst.find_y_label(l.get<std::string>());
        if (!id) throw InputError("unknown y-label '" + l.get<std::string>() + "'");
        f.y[*y].push_back(*id);
      }
    }
    for (auto* side : {&f.x, &f.y}) {
      for (auto& set : *side) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
      }
    }
    validate_labeling(inst, f);
    return f;
  } catch (const nlohmann::json::exception& err) {
    throw InputError(std::string("malformed labeling JSON: ") + err.what());
  }
}

}  // namespace hornforge
