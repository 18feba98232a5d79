#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "plumbweave/lattice.hpp"
#include "plumbweave/tree.hpp"

namespace plumbweave {

/// Plumbing of copies of T*S^{sphere_dim} along `pattern`.
struct PlumbingDescriptor {
  Tree pattern;
  int sphere_dim = 1;
  bool operator==(const PlumbingDescriptor&) const = default;
};

enum class OriginKind { Vertex, Edge, Stab };

/// Where a vanishing cycle came from. `index` is the canonical order index
/// (v_i, e_i) for algorithm output, or the stabilization counter.
struct CycleOrigin {
  OriginKind kind = OriginKind::Vertex;
  std::size_t index = 0;
  std::string id;  // caller-supplied id of the vertex/edge, or the new fiber vertex
  bool operator==(const CycleOrigin&) const = default;
};

struct VanishingCycle {
  CycleOrigin origin;
  CycleClass cls;
  std::string display;  // e.g. L_{q(v3)}
  /// Formal record of twists applied by moves, innermost first, each token
  /// "t[name]" or "t^-1[name]". Provenance only; equality uses `cls`.
  std::vector<std::string> twists;

  std::string rendered() const;
  bool operator==(const VanishingCycle&) const = default;
};

struct AbstractLF {
  PlumbingDescriptor fiber;
  std::vector<VanishingCycle> cycles;
  int n = 2;  // total space has real dimension 2n
  Convention convention;

  std::size_t size() const { return cycles.size(); }
  IntersectionForm form() const { return intersection_form(fiber.pattern, n, convention); }
  bool operator==(const AbstractLF&) const = default;
};

/// Fiber vertex a basis class lives on, or the class vector otherwise.
std::string sphere_label(const AbstractLF& alf, std::size_t k);

/// Builds the abstract Lefschetz fibration of the tree plumbing P_n(T):
/// fiber P_{n-1}(T̄), one cycle per vertex of T, one per non-first outgoing
/// edge, and the root-edge cycle in front.
AbstractLF fibrate(const OrderedTree& ot, int n, const Convention& convention = {});

struct MatchingCycle {
  std::size_t vertex = 0;  // order index i of v_i
  std::size_t first = 0;   // cycle index of v_i's own cycle
  std::size_t second = 0;  // cycle index of the partner singular value
  bool operator==(const MatchingCycle&) const = default;
};

/// One matching cycle per vertex of T. Requires unmoved fibrate() output.
std::vector<MatchingCycle> matching_cycles(const AbstractLF& alf, const OrderedTree& ot);

/// Singular values spaced uniformly on the unit circle, in word order.
std::vector<double> layout(const AbstractLF& alf);

/// Deterministic SVG of the base: unit circle, base point, singular values,
/// skeleton rays and matching chords.
std::string render_base_svg(const AbstractLF& alf, const std::vector<MatchingCycle>& matching);
void render_base(const AbstractLF& alf, const std::vector<MatchingCycle>& matching,
                 const std::filesystem::path& path);

/// Word of the family T_m^j on the A_2 fiber: alpha^{j+1} beta alpha^{m-j+1} beta.
struct FamilyWord {
  AbstractLF alf;
  std::size_t interior_beta = 0;  // 0-based index of the interior beta
};

FamilyWord family_word(int m, int j, int n, const Convention& convention = {});

/// Chain u_0 - ... - u_m rooted at u_0 with an extra leaf on u_j placed after
/// the chain edge, so fibrate() reproduces family_word(m, j).
RootedEmbeddedTree family_tree(int m, int j);

}  // namespace plumbweave
