#include <algorithm>
#include <stdexcept>

#include "charp/commutator.hpp"

namespace charp {

SymbolicMatrix::SymbolicMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring_)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

SymbolicMatrix::SymbolicMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
  ring_ = entries_.front().ring();
  for (const Poly& e : entries_) require_same_ring(e.ring(), ring_);
}

SymbolicMatrix SymbolicMatrix::transposed() const {
  SymbolicMatrix t(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool SymbolicMatrix::operator==(const SymbolicMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

SymbolicMatrix operator*(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not compose");
  require_same_ring(a.ring(), b.ring());
  SymbolicMatrix out(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Poly acc(a.ring());
      for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

SymbolicMatrix operator-(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  SymbolicMatrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  }
  return out;
}

std::string matrix_variable(char letter, std::size_t i, std::size_t j, std::size_t n) {
  if (n < 10) return std::string(1, letter) + std::to_string(i) + std::to_string(j);
  return std::string(1, letter) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

std::vector<std::string> matrix_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (char letter : {'x', 'y'}) {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) names.push_back(matrix_variable(letter, i, j, n));
    }
  }
  return names;
}

MatrixPair indeterminate_matrices(std::size_t n, std::uint32_t characteristic) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  return indeterminate_matrices(make_ring(characteristic, matrix_variable_names(n)), n);
}

MatrixPair indeterminate_matrices(const Ring& ring, std::size_t n) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  SymbolicMatrix x(ring, n, n), y(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      x(i, j) = Poly::variable(ring, matrix_variable('x', i + 1, j + 1, n));
      y(i, j) = Poly::variable(ring, matrix_variable('y', i + 1, j + 1, n));
    }
  }
  return {ring, std::move(x), std::move(y)};
}

SymbolicMatrix commutator(const SymbolicMatrix& x, const SymbolicMatrix& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) {
    throw std::invalid_argument("commutator needs square matrices of one size");
  }
  return x * y - y * x;
}

Poly trace(const SymbolicMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Poly acc(m.ring());
  for (std::size_t i = 0; i < m.rows(); ++i) acc = acc + m(i, i);
  return acc;
}

std::string_view to_string(IdealFamily family) {
  switch (family) {
    case IdealFamily::kDiagonal:
      return "diagonal";
    case IdealFamily::kAntiDiagonal:
      return "anti-diagonal";
    case IdealFamily::kCrossDiagonal:
      return "cross-diagonal";
    case IdealFamily::kOffDiagonal:
      return "off-diagonal";
    case IdealFamily::kTraceAdjustedCross:
      return "trace-adjusted-cross";
  }
  return "?";
}

std::vector<std::pair<std::size_t, std::size_t>> family_positions(std::size_t n, IdealFamily family) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto push_unique = [&](std::size_t i, std::size_t j) {
    if (std::find(out.begin(), out.end(), std::pair{i, j}) == out.end()) out.emplace_back(i, j);
  };
  switch (family) {
    case IdealFamily::kDiagonal:
      for (std::size_t i = 1; i <= n; ++i) out.emplace_back(i, i);
      break;
    case IdealFamily::kAntiDiagonal:
      for (std::size_t i = 1; i <= n; ++i) out.emplace_back(i, n + 1 - i);
      break;
    case IdealFamily::kCrossDiagonal:
      for (std::size_t i = 1; i <= n; ++i) out.emplace_back(i, i);
      for (std::size_t i = 1; i <= n; ++i) out.emplace_back(i, n + 1 - i);
      break;
    case IdealFamily::kOffDiagonal:
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
          if (i != j) out.emplace_back(i, j);
        }
      }
      break;
    case IdealFamily::kTraceAdjustedCross:
      for (std::size_t i = 1; i < n; ++i) out.emplace_back(i, i);
      for (std::size_t i = 1; i <= n; ++i) push_unique(i, n + 1 - i);
      break;
  }
  return out;
}

Ideal ideal_from_family(const SymbolicMatrix& c, IdealFamily family) {
  if (!c.is_square()) throw std::invalid_argument("ideal family needs a square matrix");
  std::vector<Poly> gens;
  for (auto [i, j] : family_positions(c.rows(), family)) gens.push_back(c.entry(i, j));
  return Ideal(c.ring(), std::move(gens));
}

SymbolicMatrix jacobian(const std::vector<Poly>& polys, const std::vector<std::string>& vars) {
  if (polys.empty() || vars.empty()) throw std::invalid_argument("jacobian needs polynomials and variables");
  for (std::size_t a = 0; a < vars.size(); ++a) {
    for (std::size_t b = a + 1; b < vars.size(); ++b) {
      if (vars[a] == vars[b]) throw std::invalid_argument("repeated jacobian variable '" + vars[a] + "'");
    }
  }
  SymbolicMatrix out(polys.front().ring(), polys.size(), vars.size());
  for (std::size_t r = 0; r < polys.size(); ++r) {
    require_same_ring(polys[r].ring(), polys.front().ring());
    for (std::size_t c = 0; c < vars.size(); ++c) out(r, c) = derivative(polys[r], vars[c]);
  }
  return out;
}

namespace {

Poly det_rec(const SymbolicMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  const Ring& ring = m.ring();
  const std::size_t k = rows.size();
  if (k == 0) return Poly::constant(ring, 1);
  if (k == 1) return m(rows[0], cols[0]);

  // Pick the row or column with the most zero entries.
  std::size_t best_zeros = 0, best_index = 0;
  bool best_is_row = true;
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t rz = 0, cz = 0;
    for (std::size_t b = 0; b < k; ++b) {
      if (m(rows[a], cols[b]).is_zero()) ++rz;
      if (m(rows[b], cols[a]).is_zero()) ++cz;
    }
    if (rz > best_zeros) {
      best_zeros = rz;
      best_index = a;
      best_is_row = true;
    }
    if (cz > best_zeros) {
      best_zeros = cz;
      best_index = a;
      best_is_row = false;
    }
  }
  if (best_zeros == k) return Poly(ring);

  Poly acc(ring);
  for (std::size_t b = 0; b < k; ++b) {
    const Poly& entry = best_is_row ? m(rows[best_index], cols[b]) : m(rows[b], cols[best_index]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_rows = rows, sub_cols = cols;
    if (best_is_row) {
      sub_rows.erase(sub_rows.begin() + static_cast<std::ptrdiff_t>(best_index));
      sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(b));
    } else {
      sub_rows.erase(sub_rows.begin() + static_cast<std::ptrdiff_t>(b));
      sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(best_index));
    }
    Poly minor = det_rec(m, sub_rows, sub_cols);
    Poly term = entry * minor;
    acc = ((best_index + b) % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

Poly determinant(const SymbolicMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<std::size_t> rows(m.rows()), cols(m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = cols[i] = i;
  return det_rec(m, rows, cols);
}

}  // namespace charp
