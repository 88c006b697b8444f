#pragma once

// Exact integer and rational linear algebra on top of GMP.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nstrat {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// x - floor(x), always in [0, 1).
inline Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline long long to_ll(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Determinant by fraction-free Gaussian elimination over Q.
inline Rational determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      m.add_row(r, c, -f);
    }
  }
  return det;
}

inline Integer determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

// Inverse of a square rational matrix; nullopt when singular.
inline std::optional<RatMatrix> inverse(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Rational f = m(r, c);
      m.add_row(r, c, -f);
      inv.add_row(r, c, -f);
    }
  }
  return inv;
}

// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  auto inv = inverse(to_rational(m));
  if (!inv) throw std::domain_error("matrix is singular");
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral((*inv)(i, j))) throw std::domain_error("matrix is not unimodular");
      out(i, j) = (*inv)(i, j).get_num();
    }
  return out;
}

struct SmithForm {
  IntMatrix S, U, V;  // U * M * V == S
  IntMatrix U_inv;     // inverse of U, tracked alongside
  std::size_t rank = 0;
};

// Row/column reduction, always pivoting on an entry of least magnitude.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm f{M, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m), 0};
  IntMatrix& S = f.S;
  auto row_swap = [&](std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    f.U.swap_rows(a, b);
    f.U_inv.swap_cols(a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    S.add_row(dst, src, q);
    f.U.add_row(dst, src, q);
    f.U_inv.add_col(src, dst, -q);
  };
  auto row_neg = [&](std::size_t r) {
    S.negate_row(r);
    f.U.negate_row(r);
    f.U_inv.negate_col(r);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    f.V.swap_cols(a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    S.add_col(dst, src, q);
    f.V.add_col(dst, src, q);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      // pivot: smallest nonzero magnitude in the trailing block
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          Integer a = abs(S(i, j));
          if (!found || a < best) {
            best = a;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) goto done;
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) row_neg(t);
  }
done:
  f.rank = t;
  return f;
}

struct HermiteForm {
  IntMatrix H, T;  // T * M == H, H in row echelon form with positive pivots
  std::vector<std::size_t> pivots;
};

// Row-style Hermite normal form with unimodular transform.
inline HermiteForm hermite_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  HermiteForm f{M, IntMatrix::identity(m), {}};
  IntMatrix& H = f.H;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (p == m || abs(H(i, c)) < abs(H(p, c)))) p = i;
      if (p == m) break;
      H.swap_rows(r, p);
      f.T.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        H.add_row(i, r, -q);
        f.T.add_row(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m && H(r, c) != 0) {
      if (H(r, c) < 0) {
        H.negate_row(r);
        f.T.negate_row(r);
      }
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        if (q != 0) {
          H.add_row(i, r, -q);
          f.T.add_row(i, r, -q);
        }
      }
      f.pivots.push_back(c);
      ++r;
    }
  }
  return f;
}

// Presentation of Z^ambient_rank / <relations> as torsion (+) free part.
struct AbelianPresentation {
  std::size_t ambient_rank = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_orders;  // each > 1, each dividing the next
  IntMatrix projection;                 // (#torsion + free_rank) x ambient_rank
  IntMatrix section;                    // ambient_rank x (#torsion + free_rank): lifts of generators

  std::size_t num_coords() const { return torsion_orders.size() + free_rank; }

  std::vector<Integer> project(const std::vector<Integer>& x) const {
    std::vector<Integer> y = projection * x;
    for (std::size_t i = 0; i < torsion_orders.size(); ++i) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), torsion_orders[i].get_mpz_t());
      y[i] = r;
    }
    return y;
  }

  std::vector<Integer> lift(std::size_t generator) const { return section.column(generator); }
};

inline AbelianPresentation quotient_presentation(std::size_t ambient_rank,
                                                 const std::vector<std::vector<Integer>>& relations) {
  for (auto& rel : relations)
    if (rel.size() != ambient_rank) throw std::invalid_argument("relation has wrong length");
  AbelianPresentation p;
  p.ambient_rank = ambient_rank;
  IntMatrix R = IntMatrix::from_columns(relations, ambient_rank);
  SmithForm snf = relations.empty() ? SmithForm{R, IntMatrix::identity(ambient_rank), IntMatrix(0, 0),
                                                IntMatrix::identity(ambient_rank), 0}
                                    : smith_normal_form(R);
  std::vector<std::size_t> tors_idx, free_idx;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    if (i < snf.rank) {
      if (snf.S(i, i) > 1) tors_idx.push_back(i);
    } else {
      free_idx.push_back(i);
    }
  }
  p.free_rank = free_idx.size();
  const std::size_t k = tors_idx.size() + free_idx.size();
  p.projection = IntMatrix(k, ambient_rank);
  p.section = IntMatrix(ambient_rank, k);
  std::size_t row = 0;
  for (std::size_t i : tors_idx) {
    p.torsion_orders.push_back(snf.S(i, i));
    for (std::size_t j = 0; j < ambient_rank; ++j) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), snf.U(i, j).get_mpz_t(), snf.S(i, i).get_mpz_t());
      p.projection(row, j) = r;
      p.section(j, row) = snf.U_inv(j, i);
    }
    ++row;
  }
  // Free rows are brought to Hermite form so coordinates are canonical.
  IntMatrix F(free_idx.size(), ambient_rank), L(ambient_rank, free_idx.size());
  for (std::size_t a = 0; a < free_idx.size(); ++a)
    for (std::size_t j = 0; j < ambient_rank; ++j) {
      F(a, j) = snf.U(free_idx[a], j);
      L(j, a) = snf.U_inv(j, free_idx[a]);
    }
  if (!free_idx.empty()) {
    HermiteForm h = hermite_normal_form(F);
    F = h.H;
    L = L * unimodular_inverse(h.T);
  }
  for (std::size_t a = 0; a < free_idx.size(); ++a, ++row)
    for (std::size_t j = 0; j < ambient_rank; ++j) {
      p.projection(row, j) = F(a, j);
      p.section(j, row) = L(j, a);
    }
  return p;
}

struct RationalSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;  // basis of the solution space of A x = 0
};

// Reduced row echelon solve of A x = b over Q.
inline std::optional<RationalSolution> solve_rational(const RatMatrix& A, const std::vector<Rational>& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve_rational: dimension mismatch");
  const std::size_t m = A.rows(), n = A.cols();
  RatMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && aug(p, c) == 0) ++p;
    if (p == m) continue;
    aug.swap_rows(r, p);
    Rational piv = aug(r, c);
    for (std::size_t j = 0; j <= n; ++j) aug(r, j) /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      Rational f = aug(i, c);
      aug.add_row(i, r, -f);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (aug(i, n) != 0) return std::nullopt;
  RationalSolution sol;
  sol.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) sol.particular[pivot_cols[i]] = aug(i, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[fcol] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivot_cols[i]] = -aug(i, fcol);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace nstrat
