#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plumbweave/fibration.hpp"

namespace plumbweave {

enum class MoveKind { CyclicPermute, HurwitzA, HurwitzB, Stabilize };

struct MoveRecord {
  MoveKind kind = MoveKind::CyclicPermute;
  std::size_t index = 0;  // pair index for Hurwitz moves, insertion position for Stabilize
  std::string vertex;     // Stabilize only: fiber vertex the new sphere plumbs onto
  bool operator==(const MoveRecord&) const = default;
};

using MoveSequence = std::vector<MoveRecord>;

/// (L_1, ..., L_m) -> (L_2, ..., L_m, L_1).
AbstractLF cyclic_permute(const AbstractLF& alf);

/// (x, y) at positions (i, i+1) -> (y, tau_y(x)).
AbstractLF hurwitz_a(const AbstractLF& alf, std::size_t i);

/// (x, y) at positions (i, i+1) -> (tau_x^{-1}(y), x).
AbstractLF hurwitz_b(const AbstractLF& alf, std::size_t i);

/// Plumbs a new (n-1)-sphere onto `attach_vertex` of the fiber and inserts its
/// class as a vanishing cycle at `position`.
AbstractLF stabilize(const AbstractLF& alf, const std::string& attach_vertex, std::size_t position);

AbstractLF apply_move(const AbstractLF& alf, const MoveRecord& move);
AbstractLF replay(AbstractLF alf, const MoveSequence& moves);

/// Same fiber shape, same n, same length, pointwise equal classes.
bool equal_homology(const AbstractLF& a, const AbstractLF& b);

struct SearchLimits {
  std::size_t max_depth = 6;
  std::size_t max_states = 2'000'000;
};

struct SearchOutcome {
  std::optional<MoveSequence> witness;  // empty when nothing was found
  std::size_t states_visited = 0;
  bool state_cap_hit = false;
};

/// Breadth-first search over cyclic permutations and Hurwitz moves. Returns
/// the shortest witness; ties break by move order (cyclic, A(0..), B(0..)).
SearchOutcome search_equivalence(const AbstractLF& a, const AbstractLF& b, SearchLimits limits = {});

std::string to_string(const MoveRecord& move);
/// Parses one line of a move script: `cyclic`, `hurwitzA <i>`, `hurwitzB <i>`,
/// `stabilize <vertex> <position>`.
MoveRecord parse_move(const std::string& line);

}  // namespace plumbweave
