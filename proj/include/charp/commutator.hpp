#pragma once

// Matrices of indeterminates, commutator matrices and the ideal families
// cut out by their entries.

#include <string>
#include <utility>
#include <vector>

#include "charp/groebner.hpp"
#include "charp/ring.hpp"

namespace charp {

class SymbolicMatrix {
 public:
  SymbolicMatrix(Ring ring, std::size_t rows, std::size_t cols);
  SymbolicMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  /// 0-based access.
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  /// 1-based access, matching the usual c_ij labelling.
  const Poly& entry(std::size_t i, std::size_t j) const { return (*this)(i - 1, j - 1); }

  SymbolicMatrix transposed() const;
  bool operator==(const SymbolicMatrix& other) const;

 private:
  Ring ring_;
  std::size_t rows_, cols_;
  std::vector<Poly> entries_;
};

SymbolicMatrix operator*(const SymbolicMatrix& a, const SymbolicMatrix& b);
SymbolicMatrix operator-(const SymbolicMatrix& a, const SymbolicMatrix& b);

/// `x12` for n < 10, `x_1_2` otherwise.
std::string matrix_variable(char letter, std::size_t i, std::size_t j, std::size_t n);

/// All x_ij then all y_ij, row-major, 1-based indices.
std::vector<std::string> matrix_variable_names(std::size_t n);

struct MatrixPair {
  Ring ring;
  SymbolicMatrix x;
  SymbolicMatrix y;
};

/// k[X, Y] with X = (x_ij), Y = (y_ij) n x n matrices of indeterminates.
MatrixPair indeterminate_matrices(std::size_t n, std::uint32_t characteristic);

/// Matrices of the variables named x_ij / y_ij inside an existing ring.
MatrixPair indeterminate_matrices(const Ring& ring, std::size_t n);

/// XY - YX.
SymbolicMatrix commutator(const SymbolicMatrix& x, const SymbolicMatrix& y);

Poly trace(const SymbolicMatrix& m);

enum class IdealFamily { kDiagonal, kAntiDiagonal, kCrossDiagonal, kOffDiagonal, kTraceAdjustedCross };

std::string_view to_string(IdealFamily family);

/// 1-based (i, j) positions selected by a family, in generator order:
/// diagonal by increasing i, then anti-diagonal by increasing row;
/// off-diagonal row-major. The trace-adjusted set keeps c_11..c_{n-1,n-1}
/// plus the anti-diagonal, the centre entry once.
std::vector<std::pair<std::size_t, std::size_t>> family_positions(std::size_t n, IdealFamily family);

Ideal ideal_from_family(const SymbolicMatrix& c, IdealFamily family);

/// Rows follow `polys`, columns follow `vars`.
SymbolicMatrix jacobian(const std::vector<Poly>& polys, const std::vector<std::string>& vars);

/// Cofactor expansion along the sparsest row or column.
Poly determinant(const SymbolicMatrix& m);

}  // namespace charp
