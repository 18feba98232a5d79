#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "plumbweave/tree.hpp"

namespace plumbweave {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

enum class Parity { Symmetric, Antisymmetric };

/// Sign conventions for the fiber lattice. Nothing upstream fixes them, so
/// every report carries the one it used.
struct Convention {
  long long self_intersection = -2;  // diagonal entry when the form is symmetric
  int edge_sign = 1;                 // <L_u, L_w> for adjacent u before w
  int twist_sign = 1;                // Picard-Lefschetz: x -> x + twist_sign <x,l> l
  bool operator==(const Convention&) const = default;
};

/// Homology class of a fiber cycle in the vertex basis of the fiber pattern.
struct CycleClass {
  std::vector<Integer> coords;

  static CycleClass basis(std::size_t dim, std::size_t index);
  std::size_t dim() const { return coords.size(); }
  bool is_basis_vector() const;
  CycleClass operator+(const CycleClass& rhs) const;
  CycleClass operator-(const CycleClass& rhs) const;
  CycleClass scaled(const Integer& k) const;
  std::string to_string() const;
  bool operator==(const CycleClass&) const = default;
};

struct IntersectionForm {
  std::vector<std::string> basis;
  IntMatrix pairing;
  Parity parity = Parity::Symmetric;
  Convention convention;

  std::size_t rank() const { return basis.size(); }
  Integer pair(const CycleClass& x, const CycleClass& y) const;
};

/// Parity of the middle-dimensional pairing on the fiber of a total space of
/// real dimension 2n: the fiber spheres have dimension n-1.
Parity fiber_parity(int n);

/// Intersection form on H_{n-1} of the plumbing of (n-1)-spheres along
/// `pattern`; the vertex order of `pattern` fixes the edge orientation.
IntersectionForm intersection_form(const Tree& pattern, int n, const Convention& convention = {});
IntersectionForm intersection_form(const QuotientData& qd, int n, const Convention& convention = {});

/// Picard-Lefschetz action of the Dehn twist about `l`, applied `power` times.
/// Negative powers need 1 + twist_sign <l,l> = +-1.
CycleClass dehn_twist(const IntersectionForm& form, const CycleClass& l, const CycleClass& x,
                      long long power = 1);

struct SmithResult {
  std::vector<Integer> divisors;  // nonzero invariant factors, d_1 | d_2 | ...
  std::size_t rank = 0;
  std::size_t kernel_rank = 0;       // cols - rank
  std::size_t cokernel_free_rank = 0;  // rows - rank
  std::vector<Integer> cokernel_torsion;  // divisors greater than one
};

SmithResult smith_normal_form(IntMatrix mat);

}  // namespace plumbweave
