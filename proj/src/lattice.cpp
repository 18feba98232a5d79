#include "plumbweave/lattice.hpp"

#include <sstream>
#include <utility>

#include "plumbweave/error.hpp"

namespace plumbweave {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

CycleClass CycleClass::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::IndexOutOfRange, "basis index past lattice rank");
  CycleClass c{std::vector<Integer>(dim)};
  c.coords[index] = 1;
  return c;
}

bool CycleClass::is_basis_vector() const {
  int ones = 0;
  for (const auto& x : coords) {
    if (x == 1) ++ones;
    else if (x != 0) return false;
  }
  return ones == 1;
}

CycleClass CycleClass::operator+(const CycleClass& rhs) const {
  if (dim() != rhs.dim()) throw Error(ErrorKind::DimensionMismatch, "class addition");
  CycleClass out = *this;
  for (std::size_t i = 0; i < dim(); ++i) out.coords[i] += rhs.coords[i];
  return out;
}

CycleClass CycleClass::operator-(const CycleClass& rhs) const { return *this + rhs.scaled(-1); }

CycleClass CycleClass::scaled(const Integer& k) const {
  CycleClass out = *this;
  for (auto& x : out.coords) x *= k;
  return out;
}

std::string CycleClass::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? "," : "") << coords[i];
  out << ')';
  return out.str();
}

Integer IntersectionForm::pair(const CycleClass& x, const CycleClass& y) const {
  if (x.dim() != rank() || y.dim() != rank())
    throw Error(ErrorKind::DimensionMismatch, "class dimension " + std::to_string(x.dim()) + "/" +
                                                  std::to_string(y.dim()) + " vs lattice rank " +
                                                  std::to_string(rank()));
  Integer sum = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x.coords[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y.coords[j] != 0) sum += x.coords[i] * pairing(i, j) * y.coords[j];
  }
  return sum;
}

Parity fiber_parity(int n) { return (n - 1) % 2 == 0 ? Parity::Symmetric : Parity::Antisymmetric; }

IntersectionForm intersection_form(const Tree& pattern, int n, const Convention& convention) {
  if (n < 2) throw Error(ErrorKind::BadDimension, "n must be at least 2, got " + std::to_string(n));
  IntersectionForm form;
  form.basis = pattern.vertices;
  form.parity = fiber_parity(n);
  form.convention = convention;
  const std::size_t r = pattern.vertex_count();
  form.pairing = IntMatrix(r, r);
  const bool symmetric = form.parity == Parity::Symmetric;
  for (std::size_t i = 0; i < r; ++i) form.pairing(i, i) = symmetric ? convention.self_intersection : 0;
  for (const auto& e : pattern.edges) {
    auto [u, w] = std::minmax(e.a, e.b);
    form.pairing(u, w) = convention.edge_sign;
    form.pairing(w, u) = symmetric ? convention.edge_sign : -convention.edge_sign;
  }
  return form;
}

IntersectionForm intersection_form(const QuotientData& qd, int n, const Convention& convention) {
  return intersection_form(qd.quotient_tree, n, convention);
}

CycleClass dehn_twist(const IntersectionForm& form, const CycleClass& l, const CycleClass& x,
                      long long power) {
  const Integer eps = form.convention.twist_sign;
  CycleClass out = x;
  if (power >= 0) {
    for (long long k = 0; k < power; ++k) out = out + l.scaled(eps * form.pair(out, l));
    return out;
  }
  // tau(x) pairs with l as <x,l>(1 + eps <l,l>), so the inverse divides by it.
  const Integer scale = 1 + eps * form.pair(l, l);
  if (scale != 1 && scale != -1)
    throw Error(ErrorKind::NotInvertible,
                "twist about a class with 1 + eps<l,l> = " + scale.str() + " has no integral inverse");
  for (long long k = 0; k < -power; ++k) out = out - l.scaled(eps * form.pair(out, l) * scale);
  return out;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(r1, c), a(r2, c));
}

void swap_cols(IntMatrix& a, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, c1), a(r, c2));
}

// Fraction-free elimination: returns the rank and, up to sign, a nonzero
// minor of maximal size. Intermediate entries are minors of `a`, so they
// stay bounded.
std::pair<std::size_t, Integer> bareiss(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  Integer prev = 1;
  std::size_t k = 0;
  for (; k < rows && k < cols; ++k) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = k; r < rows && pr == rows; ++r)
      for (std::size_t c = k; c < cols; ++c)
        if (a(r, c) != 0) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == rows) break;
    swap_rows(a, k, pr);
    swap_cols(a, k, pc);
    for (std::size_t r = k + 1; r < rows; ++r) {
      for (std::size_t c = k + 1; c < cols; ++c) a(r, c) = (a(k, k) * a(r, c) - a(r, k) * a(k, c)) / prev;
      a(r, k) = 0;
    }
    prev = a(k, k);
  }
  return {k, k == 0 ? Integer(0) : abs(prev)};
}

Integer gcd(Integer x, Integer y) {
  x = abs(x);
  y = abs(y);
  while (y != 0) {
    x %= y;
    std::swap(x, y);
  }
  return x;
}

// Symmetric residue in (-d/2, d/2]; d == 0 means no reduction.
void reduce(Integer& x, const Integer& d) {
  if (d == 0) return;
  x %= d;
  if (2 * x > d) x -= d;
  else if (2 * x <= -d) x += d;
}

// Diagonalizes in place. With d != 0 every entry is kept modulo d, which is
// sound when d Z^rows lies in the column lattice.
std::size_t diagonalize(IntMatrix& a, const Integer& d) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k, std::size_t from) {
    for (std::size_t c = from; c < cols; ++c) {
      a(dst, c) -= k * a(src, c);
      reduce(a(dst, c), d);
    }
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k, std::size_t from) {
    for (std::size_t r = from; r < rows; ++r) {
      a(r, dst) -= k * a(r, src);
      reduce(a(r, dst), d);
    }
  };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) reduce(a(r, c), d);

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot on the smallest nonzero entry of the trailing block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (a(r, c) != 0 && (pr == rows || abs(a(r, c)) < abs(a(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;
    swap_rows(a, t, pr);
    swap_cols(a, t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0) continue;
        row_op(r, t, a(r, t) / a(t, t), t);
        if (a(r, t) != 0) {
          swap_rows(a, t, r);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        col_op(c, t, a(t, c) / a(t, t), t);
        if (a(t, c) != 0) {
          swap_cols(a, t, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold any entry the pivot does not divide into row t.
      for (std::size_t r = t + 1; r < rows && clean; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a(r, c) % a(t, t) != 0) {
            row_op(t, r, -1, t);
            clean = false;
            break;
          }
    }
    ++t;
  }
  return t;
}

}  // namespace

SmithResult smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const auto [rank, minor] = bareiss(a);

  SmithResult res;
  res.rank = rank;
  res.kernel_rank = cols - rank;
  res.cokernel_free_rank = rows - rank;
  if (rank == rows && rank > 0) {
    // Full row rank: the column lattice contains minor * Z^rows, so work mod minor.
    diagonalize(a, minor);
    for (std::size_t i = 0; i < rows; ++i) res.divisors.push_back(i < cols ? gcd(a(i, i), minor) : minor);
    // Residues can land out of order; restore the divisibility chain.
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < rows; ++j) {
        const auto g = gcd(res.divisors[i], res.divisors[j]);
        res.divisors[j] = res.divisors[i] / g * res.divisors[j];
        res.divisors[i] = g;
      }
  } else {
    const auto t = diagonalize(a, 0);
    for (std::size_t i = 0; i < t; ++i) res.divisors.push_back(abs(a(i, i)));
  }
  for (const auto& d : res.divisors)
    if (d > 1) res.cokernel_torsion.push_back(d);
  return res;
}

}  // namespace plumbweave
