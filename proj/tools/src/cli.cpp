#include "hornforge_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hornforge/errors.hpp"
#include "hornforge/exact_oracle.hpp"
#include "hornforge/horn_io.hpp"
#include "hornforge/lc_io.hpp"
#include "hornforge/reduction_3cnf.hpp"
#include "hornforge_cli/config.hpp"
#include "hornforge_cli/verify.hpp"

namespace hornforge::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string input = "-";
  std::string second;
  std::string output = "-";
  std::string sidecar;
  std::string labeling;
  std::string limits;
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::size_t t = 1;
  std::optional<std::size_t> d;
  bool allow_d_override = false;
  bool packing = false;
  bool literals = false;
  bool as_json = false;
  std::vector<std::string> query;
  RandomLcParams random;
  std::optional<std::size_t> x_degree;
};

std::string slurp(std::istream& s) {
  std::ostringstream buf;
  buf << s.rdbuf();
  return buf.str();
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return slurp(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  return slurp(f);
}

enum class Format { horn, lc_text, lc_json };

Format detect(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    line.remove_prefix(first);
    if (line.starts_with("vars:")) return Format::horn;
    if (line.starts_with("{")) return Format::lc_json;
    return Format::lc_text;
  }
  throw InputError("line 1, column 1: empty input");
}

LcInstance load_lc(std::string_view text) {
  switch (detect(text)) {
    case Format::lc_text: return parse_lc(text);
    case Format::lc_json:
      try {
        return lc_from_json(json::parse(text));
      } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
      }
    case Format::horn: break;
  }
  throw InputError("expected a Label Cover instance, got a Horn CNF");
}

HornDocument load_horn(std::string_view text) {
  if (detect(text) != Format::horn) throw InputError("expected a Horn CNF ('vars:' header)");
  return parse_horn(text);
}

// Metadata written by reduce-cnf / reduce-3cnf.
struct Provenance {
  Construction kind = Construction::cnf;
  std::size_t t = 1;
  std::size_t d = 0;
  bool overridden = false;
  std::string lc_text;
};

std::vector<std::string> provenance_meta(const Provenance& p) {
  std::vector<std::string> meta = {std::string("construction ") + (p.kind == Construction::cnf ? "cnf" : "cnf3"),
                                   "t " + std::to_string(p.t), "d " + std::to_string(p.d),
                                   std::string("d_override ") + (p.overridden ? "1" : "0")};
  std::istringstream lines(p.lc_text);
  for (std::string line; std::getline(lines, line);) meta.push_back("lc " + line);
  return meta;
}

std::size_t meta_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw InputError("metadata '" + key + "' needs an integer, got '" + value + "'");
  }
}

std::optional<Provenance> read_provenance(const std::vector<std::string>& meta) {
  Provenance p;
  bool has_kind = false;
  for (const std::string& line : meta) {
    const std::size_t sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string value = sp == std::string::npos ? std::string() : line.substr(sp + 1);
    if (key == "construction") {
      if (value != "cnf" && value != "cnf3") throw InputError("unknown construction '" + value + "'");
      p.kind = value == "cnf" ? Construction::cnf : Construction::cnf3;
      has_kind = true;
    } else if (key == "t") {
      p.t = meta_number(key, value);
    } else if (key == "d") {
      p.d = meta_number(key, value);
    } else if (key == "d_override") {
      p.overridden = value == "1";
    } else if (key == "lc") {
      p.lc_text += value + "\n";
    }
  }
  if (!has_kind) return std::nullopt;
  if (p.lc_text.empty()) throw InputError("construction metadata without the source instance ('#% lc' lines)");
  return p;
}

ReductionArtifact rebuild(const Provenance& p) {
  const LcInstance original = parse_lc(p.lc_text);
  const LcInstance inst = original.refined() ? original : refine(original);
  if (p.kind == Construction::cnf3) return build_3cnf(inst, p.t);
  return build_cnf(inst, make_params(inst, p.t, p.overridden ? std::optional(p.d) : std::nullopt, p.overridden));
}

std::string rat(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json cover_json(const LcInstance& inst, const Labeling& f) {
  const CoverReport rep = check_cover(inst, f);
  json uncovered = json::array();
  for (EdgeId e : rep.uncovered_edges) {
    uncovered.push_back(json::array({inst.x_name(inst.edge(e).first), inst.y_name(inst.edge(e).second)}));
  }
  return {{"labeling", labeling_to_json(inst, f)}, {"total", rep.is_total}, {"tight", rep.tight},
          {"kappa", rat(rep.kappa)}, {"uncovered", uncovered}};
}

Labeling read_labeling(const LcInstance& inst, const std::string& path, std::istream& in) {
  try {
    json j = json::parse(read_source(path, in));
    if (j.is_object() && j.contains("labeling")) j = j["labeling"];
    return labeling_from_json(inst, j);
  } catch (const json::exception& e) {
    throw InputError("malformed labeling JSON: " + std::string(e.what()));
  }
}

std::vector<std::vector<int>> parse_dimacs(std::string_view text) {
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  std::istringstream lines{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(lines, line);) {
    ++lineno;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == 'p' || line[first] == '%') continue;
    std::istringstream toks(line);
    for (std::string tok; toks >> tok;) {
      try {
        std::size_t used = 0;
        const int lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        if (lit == 0) {
          clauses.push_back(std::move(current));
          current.clear();
        } else {
          current.push_back(lit);
        }
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(lineno) + ": bad DIMACS literal '" + tok + "'");
      }
    }
  }
  if (!current.empty()) clauses.push_back(std::move(current));
  return clauses;
}

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  int dispatch(const std::string& command, const Options& o) {
    opts_ = &o;
    cfg_.command = command;
    cfg_.seed = o.seed;
    cfg_.limits = parse_limits(o.limits, limits_from_env());
    cfg_.t = o.t;
    cfg_.d_override = o.d;
    cfg_.input = o.input;
    cfg_.output = o.output;
    cfg_.sidecar = o.sidecar;

    if (command == "lc-gen") return lc_gen();
    input_ = read_source(o.input, in_);
    if (command == "lc-refine") return emit(print_lc(refine(load_lc(input_))));
    if (command == "lc-solve") return lc_solve();
    if (command == "lc-tighten") return lc_tighten();
    if (command == "lc-round") return lc_round();
    if (command == "reduce-cnf") return reduce(Construction::cnf);
    if (command == "reduce-3cnf") return reduce(Construction::cnf3);
    if (command == "fc") return fc();
    if (command == "check-equiv") return check_equiv();
    if (command == "minimize") return minimize();
    if (command == "minimize-exact") return minimize_exact_cmd();
    if (command == "extract-cover") return extract_cover();
    if (command == "verify") return verify();
    if (command == "stats") return stats();
    throw InputError("unknown command '" + command + "'");
  }

 private:
  json header() const {
    return {{"schema", kReportSchema},
            {"tool_version", kToolVersion},
            {"config", to_json(cfg_)},
            {"input_digests", inputs_digest()}};
  }

  json inputs_digest() const {
    json d = {{"input", digest(input_)}};
    for (const auto& [name, text] : extra_inputs_) d[name] = digest(text);
    return d;
  }

  int emit(const std::string& text) {
    if (cfg_.output == "-") {
      out_ << text;
    } else {
      std::ofstream f(cfg_.output, std::ios::binary);
      if (!f) throw InputError("cannot write '" + cfg_.output + "'");
      f << text;
    }
    return 0;
  }

  int emit_json(json body) {
    json doc = header();
    doc.update(body);
    emit(doc.dump(2) + "\n");
    return 0;
  }

  void write_sidecar(json body) const {
    if (cfg_.sidecar.empty()) return;
    json doc = header();
    doc.update(body);
    std::ofstream f(cfg_.sidecar, std::ios::binary);
    if (!f) throw InputError("cannot write '" + cfg_.sidecar + "'");
    f << doc.dump(2) << "\n";
  }

  std::string read_extra(const std::string& key, const std::string& path) {
    std::string text = read_source(path, in_);
    extra_inputs_.emplace_back(key, text);
    return text;
  }

  int lc_gen() {
    const Options& o = *opts_;
    LcInstance inst = claw_instance();
    if (o.generator == "random") {
      if (!o.seed) throw InputError("lc-gen random requires --seed");
      inst = o.x_degree ? random_biregular_instance(o.random.r, *o.x_degree, o.random.s, o.random.lambda,
                                                    o.random.lambda_prime, o.random.pair_probability, *o.seed)
                        : random_instance(o.random, *o.seed);
    } else if (o.generator == "sat2lc") {
      input_ = read_source(o.input, in_);
      inst = sat_to_lc(parse_dimacs(input_));
    } else if (o.generator != "claw") {
      throw InputError("unknown generator '" + o.generator + "' (claw, random, sat2lc)");
    }
    return emit(o.as_json ? lc_to_json(inst).dump(2) + "\n" : print_lc(inst));
  }

  int lc_solve() {
    const LcInstance inst = load_lc(input_);
    if (opts_->packing) {
      const ExactPacking pk = solve_exact_packing(inst, cfg_.limits.max_nodes);
      return emit_json({{"mu", rat(pk.mu)}, {"labeling", labeling_to_json(inst, pk.labeling)}});
    }
    const ExactCover ec = solve_exact_cover(inst, cfg_.limits.max_nodes);
    json body = cover_json(inst, ec.labeling);
    body["nodes"] = ec.nodes;
    return emit_json(body);
  }

  int lc_tighten() {
    const LcInstance inst = load_lc(input_);
    read_extra("labeling", opts_->labeling);
    const Labeling f = read_labeling(inst, opts_->labeling, in_);
    return emit_json(cover_json(inst, tighten(inst, f)));
  }

  int lc_round() {
    const LcInstance inst = load_lc(input_);
    if (!opts_->seed) throw InputError("lc-round requires --seed");
    read_extra("labeling", opts_->labeling);
    const Labeling f = read_labeling(inst, opts_->labeling, in_);
    const Rounding r = round_cover_to_packing(inst, f, *opts_->seed);
    return emit_json({{"labeling", labeling_to_json(inst, r.packing)},
                      {"mu", rat(packing_value(inst, r.packing))},
                      {"expectation", rat(rounding_expectation(inst, f))},
                      {"regular", r.regular}});
  }

  int reduce(Construction kind) {
    const LcInstance original = load_lc(input_);
    const LcInstance inst = original.refined() ? original : refine(original);
    const ReductionArtifact art = kind == Construction::cnf
                                      ? build_cnf(inst, make_params(inst, opts_->t, opts_->d, opts_->allow_d_override))
                                      : build_3cnf(inst, opts_->t);
    Provenance p{kind, art.params.t, art.params.d, art.params.d_overridden, print_lc(original)};
    json sizes = {{"phi_c", art.phi.clause_count()}, {"phi_v", art.phi.num_vars()},
                  {"phi_l", art.phi.literal_count()}, {"psi_c", art.psi.clause_count()},
                  {"psi_v", art.psi.num_vars()}, {"families", art.family_counts}};
    json expected;
    if (kind == Construction::cnf) {
      const CnfSizes f = cnf_size_formulas(inst, art.params);
      expected = {{"phi_c", f.phi_c}, {"phi_v", f.phi_v}, {"psi_c", f.psi_c}, {"psi_v", f.psi_v},
                  {"families", f.family_counts}};
    } else {
      const Cnf3Sizes f = cnf3_exact_sizes(inst, art.params.t);
      expected = {{"phi_c", f.phi_c}, {"phi_v", f.phi_v}, {"psi_c", f.psi_c}, {"psi_v", f.psi_v},
                  {"families", f.family_counts}};
    }
    const LcSizes z = inst.sizes();
    write_sidecar({{"construction", kind == Construction::cnf ? "cnf" : "cnf3"},
                   {"d", art.params.d},
                   {"t", art.params.t},
                   {"d_overridden", art.params.d_overridden},
                   {"auto_refined", !original.refined()},
                   {"instance", {{"r", z.r}, {"s", z.s}, {"m", z.m}, {"lambda", z.lambda},
                                 {"lambda_prime", z.lambda_prime}, {"pi", z.pi}}},
                   {"sizes", sizes},
                   {"formulas", expected}});
    return emit(print_horn(art.phi, provenance_meta(p)));
  }

  int fc() {
    const HornDocument doc = load_horn(input_);
    std::vector<VarId> query;
    for (const std::string& name : opts_->query) {
      const auto id = doc.cnf.registry().find(name);
      if (!id) throw InputError("unknown variable '" + name + "'");
      query.push_back(*id);
    }
    ForwardChainer chainer(doc.cnf);
    const VarSet closure = chainer.closure(query);
    json names = json::array();
    for (VarId v : closure) names.push_back(doc.cnf.name(v));
    return emit_json({{"query", opts_->query}, {"size", closure.size()}, {"closure", names}});
  }

  int check_equiv() {
    const HornDocument a = load_horn(input_);
    const HornDocument b = load_horn(read_extra("second", opts_->second));
    VarRegistry joint = a.cnf.registry();
    for (const std::string& n : b.cnf.registry().names()) joint.intern(n);
    const bool eq = equivalent(remap_to(a.cnf, joint), remap_to(b.cnf, joint));
    emit_json({{"equivalent", eq}});
    return eq ? 0 : 1;
  }

  int minimize() {
    const HornDocument doc = load_horn(input_);
    const HornCnf m = minimize_heuristic(doc.cnf);
    write_sidecar({{"clauses", m.clause_count()}, {"literals", m.literal_count()},
                   {"input_clauses", doc.cnf.clause_count()}});
    return emit(print_horn(m, doc.meta));
  }

  int minimize_exact_cmd() {
    const HornDocument doc = load_horn(input_);
    const MinimizationResult r = minimize_exact(doc.cnf, cfg_.limits.exact());
    write_sidecar({{"tau", r.tau}, {"lambda", r.lambda}, {"nodes", r.nodes_explored},
                   {"prime_implicates", r.prime_implicate_count}});
    return emit(print_horn(opts_->literals ? r.witness_lambda : r.witness_tau, doc.meta));
  }

  int extract_cover() {
    const HornDocument doc = load_horn(input_);
    const auto prov = read_provenance(doc.meta);
    if (!prov) throw InputError("extract-cover needs a formula produced by reduce-cnf or reduce-3cnf");
    const ReductionArtifact art = rebuild(*prov);
    const Extraction ex = art.construction == Construction::cnf3 ? extract_covers_3cnf(art, doc.cnf)
                                                                 : extract_covers(art, doc.cnf);
    const LcInstance original = parse_lc(prov->lc_text);
    json covers = json::array();
    for (const ExtractedCover& c : ex.covers) {
      json entry = cover_json(art.inst, c.labeling);
      entry["j"] = c.j;
      entry["y_at_most_one"] = c.y_at_most_one;
      if (!original.refined()) entry["projected"] = labeling_to_json(original, project(original, c.labeling));
      covers.push_back(std::move(entry));
    }
    return emit_json({{"covers", covers}, {"warnings", ex.warnings}});
  }

  int verify() {
    VerifyRequest req;
    std::optional<LcInstance> inst;
    std::optional<HornDocument> doc;
    if (detect(input_) == Format::horn) {
      doc = load_horn(input_);
      const auto prov = read_provenance(doc->meta);
      if (!prov) throw InputError("verify needs an instance or a formula produced by reduce-cnf or reduce-3cnf");
      inst = parse_lc(prov->lc_text);
      req.construction = prov->kind;
      req.t = prov->t;
      if (prov->overridden) req.d_override = prov->d;
      req.formula = &doc->cnf;
    } else {
      inst = load_lc(input_);
      req.t = opts_->t;
      if (opts_->d) {
        if (!opts_->allow_d_override) throw InputError("--d requires --allow-d-override");
        req.d_override = opts_->d;
      }
    }
    req.instance = &*inst;
    const VerificationReport rep = run_verification(req, cfg_.limits);
    emit_json(rep.to_json());
    return rep.ok() ? 0 : 1;
  }

  int stats() {
    const Format fmt = detect(input_);
    if (fmt == Format::horn) {
      const HornDocument doc = load_horn(input_);
      json hist = json::object();
      for (auto [deg, n] : degree_histogram(doc.cnf)) hist[std::to_string(deg)] = n;
      return emit_json({{"kind", "horn"}, {"vars", doc.cnf.num_vars()}, {"clauses", doc.cnf.clause_count()},
                        {"literals", doc.cnf.literal_count()}, {"degree_histogram", hist},
                        {"meta_lines", doc.meta.size()}});
    }
    const LcInstance inst = load_lc(input_);
    const LcSizes z = inst.sizes();
    return emit_json({{"kind", "label_cover"}, {"refined", inst.refined()}, {"r", z.r}, {"s", z.s}, {"m", z.m},
                      {"lambda", z.lambda}, {"lambda_prime", z.lambda_prime}, {"pi", z.pi},
                      {"biregular", inst.biregular()}, {"feasible", inst.feasible()},
                      {"default_d", inst.refined() ? default_d(inst) : default_d(refine(inst))}});
  }

  std::istream& in_;
  std::ostream& out_;
  const Options* opts_ = nullptr;
  RunConfig cfg_;
  std::string input_;
  std::vector<std::pair<std::string, std::string>> extra_inputs_;
};

void add_common(CLI::App* sub, Options& o, bool with_input = true) {
  if (with_input) sub->add_option("input", o.input, "Input file ('-' for stdin)");
  sub->add_option("-o,--output", o.output, "Output file ('-' for stdout)");
  sub->add_option("--limits", o.limits, "Limit overrides, e.g. max_vars=10,max_nodes=1000");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Label Cover to pure Horn CNF reductions and minimization tooling", "hornforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  CLI::App* gen = app.add_subcommand("lc-gen", "Generate a Label Cover instance");
  gen->add_option("generator", o.generator, "claw | random | sat2lc")->required();
  gen->add_option("input", o.input, "DIMACS input for sat2lc");
  gen->add_option("-o,--output", o.output, "Output file");
  gen->add_option("--seed", o.seed, "PRNG seed (required for random)");
  gen->add_option("--r", o.random.r, "Number of x-vertices");
  gen->add_option("--s", o.random.s, "Number of y-vertices");
  gen->add_option("--lambda", o.random.lambda, "Labels per x-vertex");
  gen->add_option("--lambda-prime", o.random.lambda_prime, "Labels per y-vertex");
  gen->add_option("--density", o.random.edge_probability, "Edge probability");
  gen->add_option("--pair-density", o.random.pair_probability, "Constraint pair probability");
  gen->add_option("--x-degree", o.x_degree, "Generate a bi-regular graph with this x-degree");
  gen->add_flag("--json", o.as_json, "Emit JSON instead of text");

  add_common(app.add_subcommand("lc-refine", "Refine a Label Cover instance"), o);

  CLI::App* solve = app.add_subcommand("lc-solve", "Exact minimum-cost total cover");
  add_common(solve, o);
  solve->add_flag("--packing", o.packing, "Solve the maximum packing instead");

  CLI::App* tight = app.add_subcommand("lc-tighten", "Tighten a total cover");
  add_common(tight, o);
  tight->add_option("--labeling", o.labeling, "Labeling JSON")->required();

  CLI::App* round = app.add_subcommand("lc-round", "Round a tight cover to a packing");
  add_common(round, o);
  round->add_option("--labeling", o.labeling, "Labeling JSON")->required();
  round->add_option("--seed", o.seed, "PRNG seed")->required();

  for (const char* name : {"reduce-cnf", "reduce-3cnf"}) {
    CLI::App* red = app.add_subcommand(name, std::string(name) == "reduce-cnf" ? "Build the canonical Horn CNF"
                                                                               : "Build the degree-3 Horn CNF");
    add_common(red, o);
    red->add_option("--t", o.t, "Number of v(j) copies");
    red->add_option("--sidecar", o.sidecar, "JSON sidecar with sizes and parameters");
    if (std::string(name) == "reduce-cnf") {
      red->add_option("--d", o.d, "Gadget copies (needs --allow-d-override)");
      red->add_flag("--allow-d-override", o.allow_d_override, "Permit a non-default d");
    }
  }

  CLI::App* fc = app.add_subcommand("fc", "Forward-chaining closure");
  add_common(fc, o);
  fc->add_option("--query", o.query, "Variable names")->required();

  CLI::App* eq = app.add_subcommand("check-equiv", "Decide equivalence of two Horn CNFs");
  add_common(eq, o, false);
  eq->add_option("first", o.input, "First CNF")->required();
  eq->add_option("second", o.second, "Second CNF")->required();

  CLI::App* mh = app.add_subcommand("minimize", "Prime irredundant reduction");
  add_common(mh, o);
  mh->add_option("--sidecar", o.sidecar, "JSON sidecar with sizes");

  CLI::App* me = app.add_subcommand("minimize-exact", "Exact clause (or literal) minimum");
  add_common(me, o);
  me->add_flag("--literals", o.literals, "Emit the literal-minimum witness");
  me->add_option("--sidecar", o.sidecar, "JSON sidecar with tau, lambda and node count");

  add_common(app.add_subcommand("extract-cover", "Read label covers off a representation"), o);

  CLI::App* ver = app.add_subcommand("verify", "Run the invariant suite");
  add_common(ver, o);
  ver->add_option("--t", o.t, "Number of v(j) copies (instance input)");
  ver->add_option("--d", o.d, "Gadget copies for the CNF build (instance input)");
  ver->add_flag("--allow-d-override", o.allow_d_override, "Permit a non-default d");

  add_common(app.add_subcommand("stats", "Size statistics"), o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Runner runner(in, out);
    return runner.dispatch(command, o);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    err << "internal invariant failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hornforge::cli
