#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "plumbweave/error.hpp"
#include "plumbweave/fibration.hpp"
#include "plumbweave/invariants.hpp"
#include "plumbweave/json_io.hpp"
#include "plumbweave/moves.hpp"
#include "plumbweave/tree.hpp"

namespace fs = std::filesystem;
using namespace plumbweave;

namespace {

constexpr int kOk = 0, kFalse = 1, kInputError = 2, kLimit = 3;

struct RunConfig {
  std::vector<std::string> inputs;
  int n = 3;
  Convention convention;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t max_vertices = 14;
  SearchLimits limits;
  std::string out;
  std::string render;
  std::string tree;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_atomic(const fs::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot move into place " + path.string() + ": " + ec.message());
}

// Writes to `path`, or to stdout when no path was given.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) std::cout << text;
  else write_atomic(path, text);
}

AbstractLF load_fibration(const std::string& path) { return fibration_from_json(parse_json(read_file(path))); }

void check_n(int n) {
  if (n < 2) throw Error(ErrorKind::BadDimension, "n must be at least 2, got " + std::to_string(n));
}

std::string word_line(const AbstractLF& alf) {
  std::string out;
  for (std::size_t k = 0; k < alf.size(); ++k) out += (k ? ", " : "") + alf.cycles[k].rendered();
  return out;
}

std::string classes_line(const AbstractLF& alf) {
  std::string out;
  for (std::size_t k = 0; k < alf.size(); ++k) out += (k ? " " : "") + alf.cycles[k].cls.to_string();
  return out;
}

// a*alpha + b*beta, written the way one would by hand.
std::string ab_class(const CycleClass& c) {
  std::string out;
  auto term = [&](const Integer& x, const char* name) {
    if (x == 0) return;
    Integer mag = x < 0 ? Integer(-x) : x;
    if (out.empty()) out += x < 0 ? "-" : "";
    else out += x < 0 ? " - " : " + ";
    if (mag != 1) out += mag.str() + " ";
    out += name;
  };
  term(c.coords[1], "beta");
  term(c.coords[0], "alpha");
  return out.empty() ? "0" : out;
}

void add_convention(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--self-intersection", cfg.convention.self_intersection, "diagonal of the symmetric form");
  cmd->add_option("--edge-sign", cfg.convention.edge_sign, "pairing of adjacent fiber spheres");
  cmd->add_option("--twist-sign", cfg.convention.twist_sign, "sign in the Picard-Lefschetz formula");
}

// ---- order

int cmd_order(const RunConfig& cfg) {
  const auto ot = order_tree(parse_tree(read_file(cfg.inputs.at(0))));
  if (cfg.json) {
    emit(cfg.out, dump(to_json(ot)));
    return kOk;
  }
  std::ostringstream out;
  const auto& t = ot.base;
  out << "root " << t.vertices()[t.root_vertex()] << ' ' << t.edges()[t.root_edge()].id << '\n';
  out << "vertex  id          dist  height\n";
  for (std::size_t i = 0; i < ot.size(); ++i) {
    auto v = ot.v(i);
    out << "v" << i << std::string(7 - std::to_string(i).size(), ' ') << t.vertices()[v]
        << std::string(t.vertices()[v].size() < 12 ? 12 - t.vertices()[v].size() : 1, ' ') << ot.dist[v]
        << std::string(6 - std::to_string(ot.dist[v]).size(), ' ') << ot.height[v] << '\n';
  }
  out << "edge    id          tail  head  first\n";
  for (std::size_t i = 0; i < ot.edge_order.size(); ++i) {
    auto e = ot.e(i);
    const auto& id = t.edges()[e].id;
    auto tail = "v" + std::to_string(ot.vertex_rank[ot.tail[e]]);
    out << "e" << i << std::string(7 - std::to_string(i).size(), ' ') << id
        << std::string(id.size() < 12 ? 12 - id.size() : 1, ' ') << tail << std::string(6 - tail.size(), ' ') << 'v'
        << ot.vertex_rank[ot.head[e]] << "    " << (ot.is_first_outgoing(e) ? "yes" : "no") << '\n';
  }
  out << "boundary";
  for (auto v : ot.boundary_order) out << " v" << ot.vertex_rank[v];
  out << '\n';
  emit(cfg.out, out.str());
  return kOk;
}

// ---- fibrate / render

int cmd_fibrate(const RunConfig& cfg) {
  check_n(cfg.n);
  const auto ot = order_tree(parse_tree(read_file(cfg.inputs.at(0))));
  const auto alf = fibrate(ot, cfg.n, cfg.convention);
  emit(cfg.out, dump(to_json(alf)));
  if (!cfg.render.empty()) render_base(alf, matching_cycles(alf, ot), cfg.render);
  return kOk;
}

int cmd_render(const RunConfig& cfg) {
  const auto alf = load_fibration(cfg.inputs.at(0));
  std::vector<MatchingCycle> chords;
  if (!cfg.tree.empty()) chords = matching_cycles(alf, order_tree(parse_tree(read_file(cfg.tree))));
  if (cfg.out.empty()) std::cout << render_base_svg(alf, chords);
  else render_base(alf, chords, cfg.out);
  return kOk;
}

// ---- invariants

Json invariants_entry(const std::string& name, const RootedEmbeddedTree& t, const RunConfig& cfg, bool& all) {
  const auto alf = fibrate(order_tree(t), cfg.n, cfg.convention);
  const auto rep = total_homology(alf);
  const bool ok = oracle_match(rep, wedge_oracle(t.tree(), cfg.n));
  all = all && ok;
  return Json{{"tree", name},
              {"vertices", t.vertices().size()},
              {"word_length", alf.size()},
              {"report", to_json(rep)},
              {"oracle_match", ok}};
}

int cmd_invariants(const RunConfig& cfg) {
  check_n(cfg.n);
  bool all = true;
  Json entries = Json::array();
  if (!cfg.inputs.empty()) {
    for (const auto& path : cfg.inputs) entries.push_back(invariants_entry(path, parse_tree(read_file(path)), cfg, all));
  } else {
    for (std::size_t i = 0; i < cfg.count; ++i) {
      const auto seed = cfg.seed + i;
      entries.push_back(invariants_entry("seed:" + std::to_string(seed), random_tree(seed, cfg.max_vertices), cfg, all));
    }
  }
  if (cfg.json) {
    emit(cfg.out, dump(Json{{"n", cfg.n}, {"convention", to_json(cfg.convention)}, {"all_match", all},
                            {"results", entries}}));
    return all ? kOk : kFalse;
  }
  std::ostringstream out;
  out << "n " << cfg.n << "  convention self=" << cfg.convention.self_intersection
      << " edge=" << cfg.convention.edge_sign << " twist=" << cfg.convention.twist_sign << '\n';
  for (const auto& e : entries) {
    const auto& r = e["report"];
    out << e["tree"].get<std::string>() << ": |V|=" << e["vertices"] << " length=" << e["word_length"]
        << " chi=" << r["euler"];
    for (const auto& d : r["degrees"]) {
      out << " H" << d["degree"] << "=Z^" << d["free_rank"];
      for (const auto& t : d["torsion"]) out << "+Z/" << t.get<std::string>();
    }
    out << " oracle=" << (e["oracle_match"].get<bool>() ? "match" : "MISMATCH") << '\n';
    for (const auto& f : r["flags"]) out << "  flag: " << f.get<std::string>() << '\n';
  }
  out << (all ? "all match\n" : "some trees do not match the oracle\n");
  emit(cfg.out, out.str());
  return all ? kOk : kFalse;
}

// ---- moves

MoveSequence read_script(const std::string& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') return moves_from_json(parse_json(text));
  MoveSequence seq;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    seq.push_back(parse_move(line));
  }
  return seq;
}

int cmd_moves_apply(const RunConfig& cfg, const std::vector<std::string>& moves, const std::string& script,
                    const std::string& log) {
  auto alf = load_fibration(cfg.inputs.at(0));
  MoveSequence seq = script.empty() ? MoveSequence{} : read_script(script);
  for (const auto& m : moves) seq.push_back(parse_move(m));
  alf = replay(alf, seq);
  emit(cfg.out, dump(to_json(alf)));
  if (!log.empty()) write_atomic(log, dump(to_json(seq)));
  return kOk;
}

int cmd_moves_replay(const RunConfig& cfg) {
  const auto alf = replay(load_fibration(cfg.inputs.at(0)), read_script(cfg.inputs.at(1)));
  emit(cfg.out, dump(to_json(alf)));
  return kOk;
}

int cmd_moves_search(const RunConfig& cfg) {
  const auto a = load_fibration(cfg.inputs.at(0)), b = load_fibration(cfg.inputs.at(1));
  const auto res = search_equivalence(a, b, cfg.limits);
  if (!res.witness) {
    std::cerr << "NotFound: no witness within depth " << cfg.limits.max_depth << " (" << res.states_visited
              << " states" << (res.state_cap_hit ? ", state cap reached" : "") << ")\n";
    return kLimit;
  }
  if (!equal_homology(replay(a, *res.witness), b))
    throw Error(ErrorKind::NotAlgorithmOutput, "witness does not replay onto the target");
  emit(cfg.out, dump(to_json(*res.witness)));
  std::cerr << "witness of length " << res.witness->size() << " after " << res.states_visited << " states\n";
  return kOk;
}

void print_state(std::ostream& out, const AbstractLF& alf) {
  const auto rep = total_homology(alf);
  out << "word: " << word_line(alf) << '\n' << "classes: " << classes_line(alf) << '\n' << "chi " << rep.euler;
  for (const auto& d : rep.h) out << "  H" << d.degree << "=Z^" << d.free_rank;
  out << '\n';
}

int cmd_moves_repl(const RunConfig& cfg) {
  auto alf = load_fibration(cfg.inputs.at(0));
  MoveSequence seq;
  print_state(std::cout, alf);
  for (std::string line; std::cout << "> " << std::flush, std::getline(std::cin, line);) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "quit" || head == "exit") break;
    if (head == "show") {
      print_state(std::cout, alf);
      continue;
    }
    if (head == "json") {
      std::cout << dump(to_json(alf));
      continue;
    }
    if (head == "log") {
      std::cout << dump(to_json(seq));
      continue;
    }
    try {
      auto move = parse_move(line);
      alf = apply_move(alf, move);
      seq.push_back(move);
      print_state(std::cout, alf);
    } catch (const Error& e) {
      std::cout << "error: " << e.what() << '\n';
    }
  }
  std::cout << '\n';
  if (!cfg.out.empty()) write_atomic(cfg.out, dump(to_json(alf)));
  return kOk;
}

// ---- family

int cmd_family(const RunConfig& cfg, int m, int j, int shift) {
  check_n(cfg.n);
  if (shift != 2 && shift != 4) throw Error(ErrorKind::IndexOutOfRange, "shift must be 2 or 4");
  if (j < 1 || j + shift > m)
    throw Error(ErrorKind::IndexOutOfRange, "need 1 <= j and j + shift <= m, got m=" + std::to_string(m) +
                                                " j=" + std::to_string(j) + " shift=" + std::to_string(shift));
  const auto source = family_word(m, j, cfg.n, cfg.convention);
  const auto target = family_word(m, j + shift, cfg.n, cfg.convention);

  MoveSequence witness;
  for (int k = 0; k < shift; ++k)
    witness.push_back({MoveKind::HurwitzA, source.interior_beta + static_cast<std::size_t>(k), {}});
  const auto moved = replay(source.alf, witness);
  const auto landed = source.interior_beta + static_cast<std::size_t>(shift);
  const bool equal = equal_homology(moved, target.alf);
  const auto& final_class = moved.cycles[landed].cls;

  if (cfg.json) {
    Json w = to_json(witness);
    emit(cfg.out, dump(Json{{"m", m}, {"j", j}, {"shift", shift}, {"n", cfg.n},
                            {"parity", fiber_parity(cfg.n) == Parity::Symmetric ? "symmetric" : "antisymmetric"},
                            {"convention", to_json(cfg.convention)},
                            {"source_interior_beta", source.interior_beta},
                            {"target_interior_beta", target.interior_beta},
                            {"witness", w},
                            {"final_class", ab_class(final_class)},
                            {"final_twists", moved.cycles[landed].twists},
                            {"equal", equal}}));
    return equal ? kOk : kFalse;
  }
  std::ostringstream out;
  out << "family m=" << m << " j=" << j << " -> j=" << j + shift << "  n=" << cfg.n << " ("
      << (fiber_parity(cfg.n) == Parity::Symmetric ? "symmetric" : "antisymmetric") << " fiber form)\n";
  out << "convention self=" << cfg.convention.self_intersection << " edge=" << cfg.convention.edge_sign
      << " twist=" << cfg.convention.twist_sign << '\n';
  out << "source word: " << classes_line(source.alf) << '\n';
  out << "target word: " << classes_line(target.alf) << '\n';
  out << "interior beta: source index " << source.interior_beta << " (position " << source.interior_beta + 1
      << "), target index " << target.interior_beta << " (position " << target.interior_beta + 1 << ")\n";
  out << "witness (" << witness.size() << " moves):";
  for (const auto& mv : witness) out << ' ' << to_string(mv) << ';';
  out << '\n';
  out << "final interior class: " << ab_class(final_class) << "  [" << moved.cycles[landed].rendered() << "]\n";
  out << "moved word:  " << classes_line(moved) << '\n';
  out << (equal ? "verdict: equal\n" : "verdict: NOT equal\n");
  emit(cfg.out, out.str());
  return equal ? kOk : kFalse;
}

// ---- selftest

int cmd_selftest(const RunConfig& cfg) {
  std::ostringstream out;
  bool literal_ok = true;
  out << "base case T^(1) = A_2 against the wedge oracle\n";
  for (int n : {2, 3, 4, 5}) {
    const auto a = base_case_audit(n, cfg.convention);
    out << "  n=" << n << " (" << (fiber_parity(n) == Parity::Symmetric ? "symmetric" : "antisymmetric")
        << "): literal " << a.literal_length << "-cycle word " << (a.literal_matches ? "matches" : "MISMATCH")
        << "; two-cycle word " << (a.two_cycle_matches ? "matches" : "does not match") << '\n';
    literal_ok = literal_ok && a.literal_matches;
  }

  std::size_t count_failures = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto ot = order_tree(random_tree(cfg.seed + i, 14));
    const auto alf = fibrate(ot, 3, cfg.convention);
    if (alf.size() != ot.size() + alf.fiber.pattern.vertex_count()) ++count_failures;
  }
  out << "cycle count |V(T)| + |V(quotient)| on 1000 random trees: " << count_failures << " failures\n";

  std::size_t oracle_failures = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto t = random_tree(cfg.seed + i, 14);
    const auto ot = order_tree(t);
    for (int n : {3, 4, 5})
      if (!oracle_match(total_homology(fibrate(ot, n, cfg.convention)), wedge_oracle(t.tree(), n)))
        ++oracle_failures;
  }
  out << "homology oracle on 200 random trees, n in {3,4,5}: " << oracle_failures << " failures\n";

  const bool ok = literal_ok && count_failures == 0 && oracle_failures == 0;
  out << (ok ? "selftest passed\n" : "selftest FAILED\n");
  emit(cfg.out, out.str());
  return ok ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"plumbweave: Lefschetz fibrations of tree plumbings"};
  app.require_subcommand(1);

  auto* order = app.add_subcommand("order", "print the vertex and edge order of a rooted tree");
  order->add_option("tree", cfg.inputs, "tree file")->required()->expected(1);
  order->add_flag("--json", cfg.json, "machine-readable output");
  order->add_option("--out", cfg.out, "output file");

  auto* fib = app.add_subcommand("fibrate", "compute the abstract Lefschetz fibration");
  fib->add_option("tree", cfg.inputs, "tree file")->required()->expected(1);
  fib->add_option("--n", cfg.n, "half the real dimension of the total space")->required();
  fib->add_option("--out", cfg.out, "fibration JSON file");
  fib->add_option("--render", cfg.render, "also write the base diagram as SVG");
  add_convention(fib, cfg);

  auto* inv = app.add_subcommand("invariants", "total-space homology checked against the wedge oracle");
  inv->add_option("tree", cfg.inputs, "tree files");
  auto* seed_opt = inv->add_option("--seed", cfg.seed, "first seed of a random batch")->envname("PLUMBWEAVE_SEED");
  inv->add_option("--count", cfg.count, "number of random trees")->needs(seed_opt);
  inv->add_option("--max-vertices", cfg.max_vertices, "size bound for random trees")->check(CLI::Range(2, 1000));
  inv->add_option("--n", cfg.n, "half the real dimension of the total space")->required();
  inv->add_flag("--json", cfg.json, "machine-readable output");
  inv->add_option("--out", cfg.out, "output file");
  add_convention(inv, cfg);

  auto* moves = app.add_subcommand("moves", "apply, replay or search for moves");
  moves->require_subcommand(1);
  std::vector<std::string> move_lines;
  std::string script, log;
  auto* apply = moves->add_subcommand("apply", "apply moves to a fibration");
  apply->add_option("fibration", cfg.inputs, "fibration JSON")->required()->expected(1);
  apply->add_option("--move", move_lines, "a move such as 'hurwitzA 0' (repeatable)");
  apply->add_option("--script", script, "move script: one move per line, or a JSON move list");
  apply->add_option("--log", log, "write the applied moves as JSON");
  apply->add_option("--out", cfg.out, "output fibration JSON");
  auto* rep = moves->add_subcommand("replay", "replay a saved move sequence");
  rep->add_option("files", cfg.inputs, "fibration JSON and move file")->required()->expected(2);
  rep->add_option("--out", cfg.out, "output fibration JSON");
  auto* search = moves->add_subcommand("search", "breadth-first search for a witness");
  search->add_option("files", cfg.inputs, "source and target fibration JSON")->required()->expected(2);
  search->add_option("--depth", cfg.limits.max_depth, "maximum witness length")->check(CLI::PositiveNumber);
  search->add_option("--max-states", cfg.limits.max_states, "state budget")->check(CLI::PositiveNumber);
  search->add_option("--out", cfg.out, "witness JSON file");
  auto* repl = moves->add_subcommand("repl", "read one move per line from stdin");
  repl->add_option("fibration", cfg.inputs, "fibration JSON")->required()->expected(1);
  repl->add_option("--out", cfg.out, "write the final fibration on exit");

  int fm = 0, fj = 0, fshift = 4;
  auto* fam = app.add_subcommand("family", "verify the j -> j+shift family move");
  fam->add_option("--m", fm, "chain length")->required();
  fam->add_option("--j", fj, "position of the extra leaf")->required();
  fam->add_option("--shift", fshift, "2 or 4");
  fam->add_option("--n", cfg.n, "half the real dimension of the total space")->required();
  fam->add_flag("--json", cfg.json, "machine-readable output");
  fam->add_option("--out", cfg.out, "output file");
  add_convention(fam, cfg);

  auto* render = app.add_subcommand("render", "draw the base of a fibration");
  render->add_option("fibration", cfg.inputs, "fibration JSON")->required()->expected(1);
  render->add_option("--out", cfg.out, "SVG file");
  render->add_option("--tree", cfg.tree, "tree the fibration came from, for matching chords");

  auto* self = app.add_subcommand("selftest", "base-case audit and random oracle suite");
  self->add_option("--seed", cfg.seed, "first seed of the random suite")->envname("PLUMBWEAVE_SEED");
  self->add_option("--out", cfg.out, "report file");
  add_convention(self, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*order) return cmd_order(cfg);
    if (*fib) return cmd_fibrate(cfg);
    if (*inv) {
      if (cfg.inputs.empty() && seed_opt->count() == 0)
        throw Error(ErrorKind::ParseError, "give tree files or --seed/--count");
      return cmd_invariants(cfg);
    }
    if (*apply) return cmd_moves_apply(cfg, move_lines, script, log);
    if (*rep) return cmd_moves_replay(cfg);
    if (*search) return cmd_moves_search(cfg);
    if (*repl) return cmd_moves_repl(cfg);
    if (*fam) return cmd_family(cfg, fm, fj, fshift);
    if (*render) return cmd_render(cfg);
    if (*self) return cmd_selftest(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
