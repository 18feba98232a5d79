#include "plumbweave/moves.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "plumbweave/error.hpp"

namespace plumbweave {

namespace {

void check_pair(const AbstractLF& alf, std::size_t i) {
  if (alf.size() < 2 || i + 1 >= alf.size())
    throw Error(ErrorKind::IndexOutOfRange, "Hurwitz move at " + std::to_string(i) + " on a word of length " +
                                                std::to_string(alf.size()));
}

std::string twist_token(const VanishingCycle& about, int power) {
  auto name = about.display + (about.twists.empty() ? "" : "~");
  return (power > 0 ? "t[" : "t^-1[") + name + "]";
}

std::string inverse_token(const std::string& token) {
  if (token.rfind("t^-1[", 0) == 0) return "t[" + token.substr(5);
  return "t^-1[" + token.substr(2);
}

// Appends a twist token, cancelling against an inverse just applied.
void push_twist(VanishingCycle& c, std::string token) {
  if (!c.twists.empty() && c.twists.back() == inverse_token(token)) c.twists.pop_back();
  else c.twists.push_back(std::move(token));
}

}  // namespace

AbstractLF cyclic_permute(const AbstractLF& alf) {
  AbstractLF out = alf;
  if (out.cycles.empty()) throw Error(ErrorKind::IndexOutOfRange, "cyclic permutation of an empty word");
  std::rotate(out.cycles.begin(), out.cycles.begin() + 1, out.cycles.end());
  return out;
}

AbstractLF hurwitz_a(const AbstractLF& alf, std::size_t i) {
  check_pair(alf, i);
  AbstractLF out = alf;
  const auto& x = alf.cycles[i];
  const auto& y = alf.cycles[i + 1];
  VanishingCycle twisted = x;
  twisted.cls = dehn_twist(alf.form(), y.cls, x.cls, 1);
  push_twist(twisted, twist_token(y, 1));
  out.cycles[i] = y;
  out.cycles[i + 1] = std::move(twisted);
  return out;
}

AbstractLF hurwitz_b(const AbstractLF& alf, std::size_t i) {
  check_pair(alf, i);
  AbstractLF out = alf;
  const auto& x = alf.cycles[i];
  const auto& y = alf.cycles[i + 1];
  VanishingCycle twisted = y;
  twisted.cls = dehn_twist(alf.form(), x.cls, y.cls, -1);
  push_twist(twisted, twist_token(x, -1));
  out.cycles[i] = std::move(twisted);
  out.cycles[i + 1] = x;
  return out;
}

AbstractLF stabilize(const AbstractLF& alf, const std::string& attach_vertex, std::size_t position) {
  auto& pattern = alf.fiber.pattern;
  const auto attach = pattern.vertex_index(attach_vertex);
  if (position > alf.size())
    throw Error(ErrorKind::IndexOutOfRange, "stabilization position " + std::to_string(position) +
                                                " past word length " + std::to_string(alf.size()));
  std::size_t counter = 0;
  for (const auto& c : alf.cycles)
    if (c.origin.kind == OriginKind::Stab) counter = std::max(counter, c.origin.index + 1);
  std::string name;
  do {
    name = "s" + std::to_string(counter++);
  } while (pattern.find_vertex(name));

  AbstractLF out = alf;
  const auto new_index = out.fiber.pattern.vertices.size();
  out.fiber.pattern.vertices.push_back(name);
  out.fiber.pattern.edges.push_back({attach_vertex + "-" + name, attach, new_index});
  for (auto& c : out.cycles) c.cls.coords.push_back(0);
  VanishingCycle fresh{{OriginKind::Stab, counter - 1, name},
                       CycleClass::basis(new_index + 1, new_index), "L_{" + name + "}", {}};
  out.cycles.insert(out.cycles.begin() + static_cast<std::ptrdiff_t>(position), std::move(fresh));
  return out;
}

AbstractLF apply_move(const AbstractLF& alf, const MoveRecord& move) {
  switch (move.kind) {
    case MoveKind::CyclicPermute: return cyclic_permute(alf);
    case MoveKind::HurwitzA: return hurwitz_a(alf, move.index);
    case MoveKind::HurwitzB: return hurwitz_b(alf, move.index);
    case MoveKind::Stabilize: return stabilize(alf, move.vertex, move.index);
  }
  return alf;
}

AbstractLF replay(AbstractLF alf, const MoveSequence& moves) {
  for (const auto& m : moves) alf = apply_move(alf, m);
  return alf;
}

namespace {

bool same_shape(const Tree& a, const Tree& b) {
  if (a.vertex_count() != b.vertex_count() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    auto [a0, a1] = std::minmax(a.edges[i].a, a.edges[i].b);
    auto [b0, b1] = std::minmax(b.edges[i].a, b.edges[i].b);
    if (a0 != b0 || a1 != b1) return false;
  }
  return true;
}

std::string state_key(const std::vector<CycleClass>& word) {
  std::string key;
  for (const auto& c : word) {
    for (const auto& x : c.coords) {
      key += x.str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

}  // namespace

bool equal_homology(const AbstractLF& a, const AbstractLF& b) {
  if (a.n != b.n || a.size() != b.size()) return false;
  if (a.fiber.sphere_dim != b.fiber.sphere_dim || !same_shape(a.fiber.pattern, b.fiber.pattern)) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a.cycles[k].cls != b.cycles[k].cls) return false;
  return true;
}

SearchOutcome search_equivalence(const AbstractLF& a, const AbstractLF& b, SearchLimits limits) {
  SearchOutcome outcome;
  if (equal_homology(a, b)) {
    outcome.witness = MoveSequence{};
    return outcome;
  }
  if (a.size() != b.size() || a.n != b.n || !same_shape(a.fiber.pattern, b.fiber.pattern)) return outcome;

  const auto form = a.form();
  const std::size_t m = a.size();
  std::vector<MoveRecord> alphabet{{MoveKind::CyclicPermute, 0, {}}};
  for (std::size_t i = 0; i + 1 < m; ++i) alphabet.push_back({MoveKind::HurwitzA, i, {}});
  for (std::size_t i = 0; i + 1 < m; ++i) alphabet.push_back({MoveKind::HurwitzB, i, {}});

  using Word = std::vector<CycleClass>;
  auto classes = [](const AbstractLF& alf) {
    Word w;
    for (const auto& c : alf.cycles) w.push_back(c.cls);
    return w;
  };
  auto step = [&](const Word& w, const MoveRecord& mv) {
    Word out = w;
    switch (mv.kind) {
      case MoveKind::CyclicPermute: std::rotate(out.begin(), out.begin() + 1, out.end()); break;
      case MoveKind::HurwitzA:
        out[mv.index] = w[mv.index + 1];
        out[mv.index + 1] = dehn_twist(form, w[mv.index + 1], w[mv.index], 1);
        break;
      case MoveKind::HurwitzB:
        out[mv.index] = dehn_twist(form, w[mv.index], w[mv.index + 1], -1);
        out[mv.index + 1] = w[mv.index];
        break;
      case MoveKind::Stabilize: break;
    }
    return out;
  };

  const auto target = state_key(classes(b));
  // key -> (parent key, move index); the start state maps to a sentinel.
  std::unordered_map<std::string, std::pair<std::string, std::size_t>> parent;
  const auto start = state_key(classes(a));
  parent.emplace(start, std::pair{std::string{}, SIZE_MAX});

  std::deque<Word> layer{classes(a)};
  for (std::size_t depth = 0; depth < limits.max_depth && !layer.empty(); ++depth) {
    std::deque<Word> next;
    for (const auto& w : layer) {
      const auto wkey = state_key(w);
      for (std::size_t mi = 0; mi < alphabet.size(); ++mi) {
        Word nw = step(w, alphabet[mi]);
        auto key = state_key(nw);
        if (!parent.emplace(key, std::pair{wkey, mi}).second) continue;
        ++outcome.states_visited;
        if (key == target) {
          MoveSequence seq;
          for (auto k = key; k != start;) {
            const auto& [pk, move] = parent.at(k);
            seq.push_back(alphabet[move]);
            k = pk;
          }
          std::reverse(seq.begin(), seq.end());
          outcome.witness = std::move(seq);
          return outcome;
        }
        if (outcome.states_visited >= limits.max_states) {
          outcome.state_cap_hit = true;
          return outcome;
        }
        next.push_back(std::move(nw));
      }
    }
    layer = std::move(next);
  }
  return outcome;
}

std::string to_string(const MoveRecord& move) {
  switch (move.kind) {
    case MoveKind::CyclicPermute: return "cyclic";
    case MoveKind::HurwitzA: return "hurwitzA " + std::to_string(move.index);
    case MoveKind::HurwitzB: return "hurwitzB " + std::to_string(move.index);
    case MoveKind::Stabilize: return "stabilize " + move.vertex + " " + std::to_string(move.index);
  }
  return {};
}

MoveRecord parse_move(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tok;
  for (std::string w; in >> w;) tok.push_back(w);
  auto bad = [&] { return Error(ErrorKind::ParseError, "bad move '" + line + "'"); };
  auto index = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != s.size() || s.front() == '-') throw bad();
    return static_cast<std::size_t>(v);
  };
  if (tok.size() == 1 && tok[0] == "cyclic") return {MoveKind::CyclicPermute, 0, {}};
  if (tok.size() == 2 && tok[0] == "hurwitzA") return {MoveKind::HurwitzA, index(tok[1]), {}};
  if (tok.size() == 2 && tok[0] == "hurwitzB") return {MoveKind::HurwitzB, index(tok[1]), {}};
  if (tok.size() == 3 && tok[0] == "stabilize") return {MoveKind::Stabilize, index(tok[2]), tok[1]};
  throw bad();
}

}  // namespace plumbweave
