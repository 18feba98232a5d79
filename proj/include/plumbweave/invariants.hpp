#pragma once

#include <string>
#include <vector>

#include "plumbweave/fibration.hpp"
#include "plumbweave/lattice.hpp"

namespace plumbweave {

struct DegreeHomology {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  bool operator==(const DegreeHomology&) const = default;
};

/// Homology of the total space in degrees 0, n-1 and n. Other degrees vanish
/// for a tree-plumbing fiber and are not carried.
struct HomologyReport {
  int n = 2;
  long long euler = 0;
  std::vector<DegreeHomology> h;  // ascending degree
  IntMatrix boundary;             // thimble k -> class of cycle k
  std::vector<Integer> divisors;  // Smith invariants of the boundary map
  std::vector<std::string> flags;

  const DegreeHomology& degree(int d) const;
  /// Compares everything except the boundary matrix itself.
  bool same_invariants(const HomologyReport& other) const;
};

/// 1 + (-1)^{n-1} |V(fiber)| + (-1)^n |cycles|.
long long euler_characteristic(const AbstractLF& alf);

/// Cellular homology: one (n-1)-cell per fiber vertex, one n-cell per
/// vanishing cycle attached along its class.
HomologyReport total_homology(const AbstractLF& alf);

/// A tree plumbing of |V(T)| copies of T*S^n retracts onto a wedge of
/// |V(T)| n-spheres.
HomologyReport wedge_oracle(const Tree& t, int n);

/// Degree-wise agreement including torsion, plus Euler characteristic.
bool oracle_match(const HomologyReport& computed, const HomologyReport& expected);

/// Base step T^(1) = A_2 checked two ways against the oracle: the word the
/// construction emits, and the two-cycle word with both zero sections.
struct BaseCaseAudit {
  int n = 2;
  std::size_t literal_length = 0;
  bool literal_matches = false;
  bool two_cycle_matches = false;
};
BaseCaseAudit base_case_audit(int n, const Convention& convention = {});

}  // namespace plumbweave
