#include "plumbweave/tree.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "plumbweave/error.hpp"

namespace plumbweave {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadRoot: return "BadRoot";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::EmptyTree: return "EmptyTree";
    case ErrorKind::BadRotation: return "BadRotation";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotAlgorithmOutput: return "NotAlgorithmOutput";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

std::optional<std::size_t> Tree::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == id) return i;
  return std::nullopt;
}

std::size_t Tree::vertex_index(std::string_view id) const {
  if (auto i = find_vertex(id)) return *i;
  throw Error(ErrorKind::UnknownVertex, "no vertex named '" + std::string(id) + "'");
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

RootedEmbeddedTree make_rooted_tree(Tree tree, std::vector<std::vector<std::size_t>> rotation,
                                    std::size_t root_vertex, std::size_t root_edge) {
  const std::size_t nv = tree.vertices.size();
  if (tree.edges.empty()) throw Error(ErrorKind::EmptyTree, "a tree needs at least one edge");

  std::unordered_set<std::string> seen;
  for (const auto& v : tree.vertices)
    if (!seen.insert(v).second) throw Error(ErrorKind::DuplicateId, "vertex id '" + v + "'");
  seen.clear();
  for (const auto& e : tree.edges) {
    if (!seen.insert(e.id).second) throw Error(ErrorKind::DuplicateId, "edge id '" + e.id + "'");
    if (e.a >= nv || e.b >= nv)
      throw Error(ErrorKind::UnknownVertex, "edge '" + e.id + "' has an endpoint out of range");
  }

  DisjointSets sets(nv);
  for (const auto& e : tree.edges)
    if (!sets.unite(e.a, e.b)) throw Error(ErrorKind::CycleDetected, "edge '" + e.id + "' closes a cycle");
  for (std::size_t v = 1; v < nv; ++v)
    if (sets.find(v) != sets.find(0))
      throw Error(ErrorKind::Disconnected,
                  "vertex '" + tree.vertices[v] + "' is not connected to '" + tree.vertices[0] + "'");

  if (rotation.size() != nv) throw Error(ErrorKind::BadRotation, "one rotation per vertex required");
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<std::size_t> incident;
    for (std::size_t i = 0; i < tree.edges.size(); ++i)
      if (tree.edges[i].touches(v)) incident.push_back(i);
    auto rot = rotation[v];
    std::sort(rot.begin(), rot.end());
    if (rot != incident)
      throw Error(ErrorKind::BadRotation,
                  "rotation at '" + tree.vertices[v] + "' is not a permutation of its incident edges");
  }

  if (root_vertex >= nv || root_edge >= tree.edges.size())
    throw Error(ErrorKind::BadRoot, "root out of range");
  if (!tree.edges[root_edge].touches(root_vertex))
    throw Error(ErrorKind::BadRoot, "root edge '" + tree.edges[root_edge].id +
                                        "' is not incident to root vertex '" +
                                        tree.vertices[root_vertex] + "'");

  RootedEmbeddedTree t;
  t.tree_ = std::move(tree);
  t.rotation_ = std::move(rotation);
  t.root_vertex_ = root_vertex;
  t.root_edge_ = root_edge;
  return t;
}

std::string RootedEmbeddedTree::to_text() const {
  std::ostringstream out;
  out << "root " << vertices()[root_vertex_] << ' ' << edges()[root_edge_].id << '\n';
  for (const auto& e : edges())
    out << "edge " << e.id << ' ' << vertices()[e.a] << ' ' << vertices()[e.b] << '\n';
  for (std::size_t v = 0; v < vertices().size(); ++v) {
    out << "rot " << vertices()[v];
    for (auto e : rotation_[v]) out << ' ' << edges()[e].id;
    out << '\n';
  }
  return out.str();
}

RootedEmbeddedTree parse_tree(std::string_view text) {
  Tree tree;
  std::unordered_map<std::string, std::size_t> vertex_ids;
  struct PendingRot {
    std::string vertex;
    std::vector<std::string> edges;
    int line;
  };
  std::vector<PendingRot> rots;
  std::optional<std::pair<std::string, std::string>> root;

  auto vertex = [&](const std::string& id) {
    auto [it, inserted] = vertex_ids.emplace(id, tree.vertices.size());
    if (inserted) tree.vertices.push_back(id);
    return it->second;
  };
  std::unordered_set<std::string> edge_ids;
  auto add_edge = [&](const std::string& id, const std::string& a, const std::string& b) {
    if (!edge_ids.insert(id).second) throw Error(ErrorKind::DuplicateId, "edge id '" + id + "'");
    if (a == b) throw Error(ErrorKind::CycleDetected, "edge '" + id + "' is a loop");
    tree.edges.push_back({id, vertex(a), vertex(b)});
  };

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto bad = [&](const std::string& why) {
      return Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] == "root") {
      if (tok.size() != 3) throw bad("expected 'root <vertex> <edge>'");
      if (root) throw bad("duplicate root line");
      root = {tok[1], tok[2]};
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) throw bad("expected 'edge <id> <a> <b>'");
      add_edge(tok[1], tok[2], tok[3]);
    } else if (tok[0] == "rot") {
      if (tok.size() < 2) throw bad("expected 'rot <vertex> <edge>...'");
      rots.push_back({tok[1], {tok.begin() + 2, tok.end()}, lineno});
    } else if (tok.size() == 4 && tok[0].size() > 1 && tok[0].back() == ':' && tok[2] == "--") {
      add_edge(tok[0].substr(0, tok[0].size() - 1), tok[1], tok[3]);
    } else {
      throw bad("unrecognized directive '" + tok[0] + "'");
    }
  }

  if (tree.edges.empty()) throw Error(ErrorKind::EmptyTree, "no edges declared");

  std::vector<std::vector<std::size_t>> rotation(tree.vertices.size());
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    rotation[tree.edges[i].a].push_back(i);
    rotation[tree.edges[i].b].push_back(i);
  }
  std::unordered_set<std::string> rotated;
  for (const auto& r : rots) {
    auto vit = vertex_ids.find(r.vertex);
    if (vit == vertex_ids.end())
      throw Error(ErrorKind::UnknownVertex, "rot line " + std::to_string(r.line) + ": '" + r.vertex + "'");
    if (!rotated.insert(r.vertex).second)
      throw Error(ErrorKind::BadRotation, "second rot line for '" + r.vertex + "'");
    std::vector<std::size_t> order;
    for (const auto& eid : r.edges) {
      auto it = std::find_if(tree.edges.begin(), tree.edges.end(),
                             [&](const Edge& e) { return e.id == eid; });
      if (it == tree.edges.end())
        throw Error(ErrorKind::BadRotation, "rot line " + std::to_string(r.line) + ": unknown edge '" + eid + "'");
      order.push_back(static_cast<std::size_t>(it - tree.edges.begin()));
    }
    rotation[vit->second] = std::move(order);
  }

  if (!root) throw Error(ErrorKind::BadRoot, "missing 'root' line");
  auto rv = vertex_ids.find(root->first);
  if (rv == vertex_ids.end()) throw Error(ErrorKind::BadRoot, "root vertex '" + root->first + "' not in tree");
  auto re = std::find_if(tree.edges.begin(), tree.edges.end(),
                         [&](const Edge& e) { return e.id == root->second; });
  if (re == tree.edges.end()) throw Error(ErrorKind::BadRoot, "root edge '" + root->second + "' not in tree");
  const auto root_edge = static_cast<std::size_t>(re - tree.edges.begin());
  const auto root_vertex = rv->second;
  return make_rooted_tree(std::move(tree), std::move(rotation), root_vertex, root_edge);
}

OrderedTree order_tree(const RootedEmbeddedTree& t) {
  const std::size_t nv = t.vertices().size();
  const std::size_t ne = t.edges().size();
  OrderedTree ot;
  ot.base = t;
  ot.tail.assign(ne, 0);
  ot.head.assign(ne, 0);
  ot.incoming.assign(nv, std::nullopt);
  ot.linear_edges.resize(nv);
  ot.outgoing.resize(nv);
  ot.dist.assign(nv, 0);
  ot.height.assign(nv, 0);

  // Orient edges away from the root.
  std::vector<std::size_t> stack{t.root_vertex()};
  std::vector<bool> visited(nv, false);
  visited[t.root_vertex()] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : t.rotation(v)) {
      auto w = t.edges()[e].other(v);
      if (visited[w]) continue;
      visited[w] = true;
      ot.tail[e] = v;
      ot.head[e] = w;
      ot.incoming[w] = e;
      ot.dist[w] = ot.dist[v] + 1;
      stack.push_back(w);
    }
  }

  // Linearize each cyclic rotation.
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& rot = t.rotation(v);
    const bool is_root = v == t.root_vertex();
    const auto pivot = is_root ? t.root_edge() : *ot.incoming[v];
    auto at = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), pivot) - rot.begin());
    auto& lin = ot.linear_edges[v];
    for (std::size_t k = 0; k < rot.size(); ++k) {
      // At the root the pivot starts the order; elsewhere it ends it.
      auto idx = is_root ? (at + k) % rot.size() : (at + 1 + k) % rot.size();
      lin.push_back(rot[idx]);
    }
    for (auto e : lin)
      if (ot.tail[e] == v && ot.incoming[v] != e) ot.outgoing[v].push_back(e);
  }

  // Boundary vertices in the order a depth-first walk meets them.
  std::vector<std::size_t> walk{t.root_vertex()};
  while (!walk.empty()) {
    auto v = walk.back();
    walk.pop_back();
    if (v != t.root_vertex() && ot.outgoing[v].empty()) ot.boundary_order.push_back(v);
    const auto& out = ot.outgoing[v];
    for (auto it = out.rbegin(); it != out.rend(); ++it) walk.push_back(ot.head[*it]);
  }
  if (t.rotation(t.root_vertex()).size() == 1) ot.boundary_order.push_back(t.root_vertex());

  std::vector<int> boundary_index(nv, 0);
  for (std::size_t i = 0; i < ot.boundary_order.size(); ++i)
    boundary_index[ot.boundary_order[i]] = static_cast<int>(i) + 1;
  for (std::size_t v = 0; v < nv; ++v) {
    auto w = v;
    while (auto f = ot.first_outgoing(w)) w = ot.head[*f];
    ot.height[v] = boundary_index[w];
  }

  ot.vertex_order.resize(nv);
  std::iota(ot.vertex_order.begin(), ot.vertex_order.end(), 0);
  std::sort(ot.vertex_order.begin(), ot.vertex_order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(ot.height[a], ot.dist[a]) < std::pair(ot.height[b], ot.dist[b]);
  });
  ot.vertex_rank.assign(nv, 0);
  for (std::size_t i = 0; i < nv; ++i) ot.vertex_rank[ot.vertex_order[i]] = i;

  ot.edge_order.resize(ne);
  ot.edge_rank.assign(ne, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    auto rank = ot.vertex_rank[ot.head[e]] - 1;
    ot.edge_order[rank] = e;
    ot.edge_rank[e] = rank;
  }
  return ot;
}

RootedEmbeddedTree prefix_subtree(const OrderedTree& ot, std::size_t k) {
  const std::size_t m = ot.size() - 1;
  if (k < 1 || k > m)
    throw Error(ErrorKind::IndexOutOfRange,
                "prefix index " + std::to_string(k) + " outside 1.." + std::to_string(m));
  const auto& base = ot.base;

  std::vector<std::size_t> new_vertex(base.vertices().size(), SIZE_MAX);
  Tree sub;
  for (std::size_t i = 0; i <= k; ++i) {
    new_vertex[ot.v(i)] = i;
    sub.vertices.push_back(base.vertices()[ot.v(i)]);
  }
  std::vector<std::size_t> new_edge(base.edges().size(), SIZE_MAX);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& e = base.edges()[ot.e(i)];
    new_edge[ot.e(i)] = i;
    sub.edges.push_back({e.id, new_vertex[e.a], new_vertex[e.b]});
  }
  std::vector<std::vector<std::size_t>> rotation(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (auto e : base.rotation(ot.v(i)))
      if (new_edge[e] != SIZE_MAX) rotation[i].push_back(new_edge[e]);
  return make_rooted_tree(std::move(sub), std::move(rotation), new_vertex[base.root_vertex()],
                          new_edge[base.root_edge()]);
}

QuotientData quotient(const OrderedTree& ot) {
  const auto& base = ot.base;
  const std::size_t nv = base.vertices().size();
  DisjointSets sets(nv);
  QuotientData qd;
  std::vector<bool> contracted(base.edges().size(), false);
  for (std::size_t v = 0; v < nv; ++v)
    if (auto f = ot.first_outgoing(v)) {
      contracted[*f] = true;
      sets.unite(ot.tail[*f], ot.head[*f]);
    }

  qd.q.assign(nv, SIZE_MAX);
  std::vector<std::size_t> class_of_root(nv, SIZE_MAX);
  for (std::size_t i = 0; i < nv; ++i) {
    auto v = ot.v(i);
    auto r = sets.find(v);
    if (class_of_root[r] == SIZE_MAX) {
      class_of_root[r] = qd.quotient_tree.vertices.size();
      qd.quotient_tree.vertices.push_back("w" + std::to_string(class_of_root[r]));
    }
    qd.q[v] = class_of_root[r];
  }
  for (std::size_t i = 0; i < ot.edge_order.size(); ++i) {
    auto e = ot.e(i);
    if (contracted[e]) {
      qd.contracted_edges.push_back(e);
      continue;
    }
    qd.surviving_edges.push_back(e);
    qd.quotient_tree.edges.push_back({base.edges()[e].id, qd.q[ot.tail[e]], qd.q[ot.head[e]]});
  }
  return qd;
}

CanonicalCoords canonical_coords(const OrderedTree& ot, std::string_view vertex_id) {
  auto v = ot.base.tree().vertex_index(vertex_id);
  return {ot.dist[v], ot.height[v]};
}

RootedEmbeddedTree random_tree(std::uint64_t seed, std::size_t max_vertices) {
  if (max_vertices < 2)
    throw Error(ErrorKind::IndexOutOfRange, "random_tree needs max_vertices >= 2");
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  const std::size_t nv = 2 + below(max_vertices - 1);
  // Decode a random Pruefer sequence: uniform over labelled trees.
  std::vector<std::size_t> code(nv - 2);
  for (auto& c : code) c = below(nv);
  std::vector<std::size_t> degree(nv, 1);
  for (auto c : code) ++degree[c];
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto c : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    pairs.emplace_back(leaf, c);
    --degree[leaf];
    --degree[c];
  }
  std::vector<std::size_t> last;
  for (std::size_t v = 0; v < nv; ++v)
    if (degree[v] == 1) last.push_back(v);
  pairs.emplace_back(last[0], last[1]);

  // Number vertices by first appearance so the text form parses back to the same tree.
  std::vector<std::size_t> renumber(nv, nv);
  std::size_t next = 0;
  for (auto& [a, b] : pairs)
    for (auto* v : {&a, &b}) {
      if (renumber[*v] == nv) renumber[*v] = next++;
      *v = renumber[*v];
    }
  Tree tree;
  for (std::size_t i = 0; i < nv; ++i) tree.vertices.push_back("x" + std::to_string(i));

  // Shuffle edge ids so caller ids never coincide with the canonical order.
  std::vector<std::size_t> labels(pairs.size());
  std::iota(labels.begin(), labels.end(), 0);
  for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[below(i)]);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    tree.edges.push_back({"f" + std::to_string(labels[i]), pairs[i].first, pairs[i].second});

  std::vector<std::vector<std::size_t>> rotation(nv);
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    rotation[tree.edges[i].a].push_back(i);
    rotation[tree.edges[i].b].push_back(i);
  }
  for (auto& rot : rotation)
    for (std::size_t i = rot.size(); i > 1; --i) std::swap(rot[i - 1], rot[below(i)]);

  const auto root_edge = below(tree.edges.size());
  const auto root_vertex = below(2) == 0 ? tree.edges[root_edge].a : tree.edges[root_edge].b;
  return make_rooted_tree(std::move(tree), std::move(rotation), root_vertex, root_edge);
}

}  // namespace plumbweave
