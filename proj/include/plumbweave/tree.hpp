#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plumbweave {

/// Undirected edge between two vertex indices.
struct Edge {
  std::string id;
  std::size_t a = 0;
  std::size_t b = 0;

  std::size_t other(std::size_t v) const { return v == a ? b : a; }
  bool touches(std::size_t v) const { return v == a || v == b; }
  bool operator==(const Edge&) const = default;
};

/// Plain (unrooted, unembedded) tree; used for plumbing patterns such as the
/// quotient tree and the fiber of an abstract Lefschetz fibration.
struct Tree {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::size_t vertex_index(std::string_view id) const;  // throws UnknownVertex
  bool operator==(const Tree&) const = default;
};

/// Plane tree given by a rotation system, plus a root (vertex, edge) pair.
/// Construct through make_rooted_tree() or parse_tree(); both validate.
class RootedEmbeddedTree {
 public:
  const Tree& tree() const { return tree_; }
  const std::vector<std::string>& vertices() const { return tree_.vertices; }
  const std::vector<Edge>& edges() const { return tree_.edges; }
  /// Cyclic order of incident edge indices around `v`.
  const std::vector<std::size_t>& rotation(std::size_t v) const { return rotation_[v]; }
  std::size_t root_vertex() const { return root_vertex_; }
  std::size_t root_edge() const { return root_edge_; }

  /// Serializes back to the line-oriented tree file format.
  std::string to_text() const;

  bool operator==(const RootedEmbeddedTree&) const = default;

 private:
  friend RootedEmbeddedTree make_rooted_tree(Tree, std::vector<std::vector<std::size_t>>,
                                             std::size_t, std::size_t);
  Tree tree_;
  std::vector<std::vector<std::size_t>> rotation_;
  std::size_t root_vertex_ = 0;
  std::size_t root_edge_ = 0;
};

/// Validates and assembles a rooted embedded tree. `rotation[v]` must be a
/// permutation of the edges incident to v.
RootedEmbeddedTree make_rooted_tree(Tree tree, std::vector<std::vector<std::size_t>> rotation,
                                    std::size_t root_vertex, std::size_t root_edge);

/// Parses the tree file format:
///   root <vertex> <edge>
///   edge <id> <a> <b>          (also accepted: `<id>: <a> -- <b>`)
///   rot <vertex> <edge>...     (optional; default is declaration order)
/// `#` starts a comment.
RootedEmbeddedTree parse_tree(std::string_view text);

/// Canonical orders induced by the root and the rotation system.
struct OrderedTree {
  RootedEmbeddedTree base;

  std::vector<std::size_t> tail;  // per edge, oriented away from the root
  std::vector<std::size_t> head;
  std::vector<std::optional<std::size_t>> incoming;  // per vertex; empty at the root
  /// Per vertex, the incident edges as a linear order: the root edge first at
  /// the root, the incoming edge last everywhere else.
  std::vector<std::vector<std::size_t>> linear_edges;
  /// Per vertex, outgoing edges in linear order.
  std::vector<std::vector<std::size_t>> outgoing;

  std::vector<int> dist;
  std::vector<int> height;  // 1-based index into boundary_order
  std::vector<std::size_t> boundary_order;

  /// vertex_order[i] is the vertex index of v_i; vertex_rank is its inverse.
  std::vector<std::size_t> vertex_order;
  std::vector<std::size_t> vertex_rank;
  /// edge_order[i] is the edge index of e_i, whose head is v_{i+1}.
  std::vector<std::size_t> edge_order;
  std::vector<std::size_t> edge_rank;

  std::size_t size() const { return vertex_order.size(); }
  std::optional<std::size_t> first_outgoing(std::size_t v) const {
    if (outgoing[v].empty()) return std::nullopt;
    return outgoing[v].front();
  }
  /// Vertex index of v_i / edge index of e_i.
  std::size_t v(std::size_t i) const { return vertex_order.at(i); }
  std::size_t e(std::size_t i) const { return edge_order.at(i); }
  bool is_first_outgoing(std::size_t edge) const {
    return first_outgoing(tail[edge]) == edge;
  }
};

OrderedTree order_tree(const RootedEmbeddedTree& t);

/// T^(k): vertices v_0..v_k and edges e_0..e_{k-1}, rotation restricted.
RootedEmbeddedTree prefix_subtree(const OrderedTree& ot, std::size_t k);

/// The tree obtained by contracting every vertex's first outgoing edge.
struct QuotientData {
  Tree quotient_tree;
  std::vector<std::size_t> q;                    // V(T) -> V(T̄)
  std::vector<std::size_t> surviving_edges;      // edge indices of T, in T̄ edge order
  std::vector<std::size_t> contracted_edges;     // edge indices of T
};

/// Quotient vertices are named w0, w1, ... in order of first appearance along
/// v_0 < v_1 < ...; quotient edges keep the id of the surviving edge.
QuotientData quotient(const OrderedTree& ot);

struct CanonicalCoords {
  int dist = 0;
  int height = 0;
  bool operator==(const CanonicalCoords&) const = default;
};

CanonicalCoords canonical_coords(const OrderedTree& ot, std::string_view vertex_id);

/// Deterministic random rooted embedded tree with 2..max_vertices vertices.
RootedEmbeddedTree random_tree(std::uint64_t seed, std::size_t max_vertices);

}  // namespace plumbweave
