#ifndef HECKE_LINALG_HPP
#define HECKE_LINALG_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/ratfun.hpp"

namespace hecke {

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline bool field_is_zero(const RatFun& x) { return x.is_zero(); }
inline bool field_is_zero(const mpq_class& x) { return sgn(x) == 0; }

/// Dense row-major matrix over a field T (RatFun or mpq_class).
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows * cols), T(0)) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw DimensionError("ragged rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<T>& data() const { return e_; }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same(b, "add");
    Matrix r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same(b, "sub");
    Matrix r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("mul: " + a.shape() + " * " + b.shape());
    }
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (field_is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (field_is_zero(bkj)) continue;
          r(i, j) += aik * bkj;
        }
      }
    }
    return r;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    if (field_is_zero(s)) return Matrix(a.rows_, a.cols_);
    for (auto& x : r.e_)
      if (!field_is_zero(x)) x = s * x;
    return r;
  }

  Matrix& operator+=(const Matrix& b) { return *this = *this + b; }
  Matrix& operator-=(const Matrix& b) { return *this = *this - b; }
  Matrix& operator*=(const Matrix& b) { return *this = *this * b; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  T trace() const {
    if (!square()) throw DimensionError("trace of non-square matrix");
    T s(0);
    for (int i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!field_is_zero(x)) return false;
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (i != j && !field_is_zero((*this)(i, j))) return false;
    return true;
  }

  /// True when the matrix equals s * Id; the scalar is returned through s.
  bool is_scalar(T* s = nullptr) const {
    if (!square() || !is_diagonal()) return false;
    for (int i = 1; i < rows_; ++i)
      if ((*this)(i, i) != (*this)(0, 0)) return false;
    if (s) *s = rows_ ? (*this)(0, 0) : T(0);
    return true;
  }

  Matrix block(int i0, int j0, int nr, int nc) const {
    if (i0 < 0 || j0 < 0 || i0 + nr > rows_ || j0 + nc > cols_) throw DimensionError("block out of range");
    Matrix r(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
  }

  /// Principal submatrix on the given 0-based index list.
  Matrix principal(const std::vector<int>& idx) const {
    const int n = static_cast<int>(idx.size());
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = (*this)(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    return r;
  }

  void set_block(int i0, int j0, const Matrix& b) {
    if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_) throw DimensionError("set_block out of range");
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  Matrix pow(int e) const;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
  void require_same(const Matrix& b, const char* op) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError(std::string(op) + ": " + shape() + " vs " + b.shape());
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> e_;
};

using FieldMatrix = Matrix<RatFun>;
using QMatrix = Matrix<mpq_class>;

// ---------------------------------------------------------------------------
// Fraction-free elimination

/// Result of Bareiss elimination on a copy of a matrix.
template <class T>
struct Echelon {
  Matrix<T> m;                 // upper echelon form
  std::vector<int> pivot_cols;  // column of the pivot in each nonzero row
  std::vector<int> row_perm;    // original row index of each echelon row
  int swaps = 0;
};

/// Bareiss elimination with the first nonzero entry (by row order) as pivot.
/// With augment_from >= 0, pivots are searched only in columns < augment_from.
template <class T>
Echelon<T> bareiss(Matrix<T> a, int augment_from = -1) {
  const int R = a.rows(), C = a.cols();
  const int pc_end = augment_from < 0 ? C : augment_from;
  Echelon<T> out;
  out.row_perm.resize(static_cast<std::size_t>(R));
  std::iota(out.row_perm.begin(), out.row_perm.end(), 0);
  T prev(1);
  int r = 0;
  for (int c = 0; c < pc_end && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i) {
      if (!field_is_zero(a(i, c))) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < C; ++j) std::swap(a(r, j), a(piv, j));
      std::swap(out.row_perm[static_cast<std::size_t>(r)], out.row_perm[static_cast<std::size_t>(piv)]);
      ++out.swaps;
    }
    const T pv = a(r, c);
    for (int i = r + 1; i < R; ++i) {
      const T f = a(i, c);
      for (int j = c + 1; j < C; ++j) {
        T v = pv * a(i, j);
        if (!field_is_zero(f) && !field_is_zero(a(r, j))) v -= f * a(r, j);
        a(i, j) = v / prev;
      }
      a(i, c) = T(0);
    }
    prev = pv;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.m = std::move(a);
  return out;
}

template <class T>
int rank(const Matrix<T>& a) {
  return static_cast<int>(bareiss(a).pivot_cols.size());
}

template <class T>
T determinant(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("determinant of non-square matrix");
  const int n = a.rows();
  if (n == 0) return T(1);
  auto e = bareiss(a);
  if (static_cast<int>(e.pivot_cols.size()) < n) return T(0);
  T d = e.m(n - 1, n - 1);
  return (e.swaps % 2) ? T(-d) : d;
}

/// Reduced row echelon form of a (via Bareiss, then back-substitution).
template <class T>
Echelon<T> rref(const Matrix<T>& a, int augment_from = -1) {
  auto e = bareiss(a, augment_from);
  Matrix<T>& m = e.m;
  const int C = m.cols();
  const int r = static_cast<int>(e.pivot_cols.size());
  for (int k = r - 1; k >= 0; --k) {
    const int c = e.pivot_cols[static_cast<std::size_t>(k)];
    const T inv = T(1) / m(k, c);
    for (int j = c; j < C; ++j)
      if (!field_is_zero(m(k, j))) m(k, j) = m(k, j) * inv;
    for (int i = 0; i < k; ++i) {
      const T f = m(i, c);
      if (field_is_zero(f)) continue;
      for (int j = c; j < C; ++j)
        if (!field_is_zero(m(k, j))) m(i, j) -= f * m(k, j);
    }
  }
  return e;
}

/// Solves A X = B. Returns nullopt when inconsistent; for rank-deficient A the
/// particular solution with free variables set to zero is returned.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: row mismatch");
  const int n = a.cols(), k = b.cols();
  Matrix<T> aug(a.rows(), n + k);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  auto e = rref(aug, n);
  const int r = static_cast<int>(e.pivot_cols.size());
  for (int i = r; i < a.rows(); ++i)
    for (int j = n; j < n + k; ++j)
      if (!field_is_zero(e.m(i, j))) return std::nullopt;
  Matrix<T> x(n, k);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) x(e.pivot_cols[static_cast<std::size_t>(i)], j) = e.m(i, n + j);
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("inverse of non-square matrix");
  const int n = a.rows();
  Matrix<T> aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix<T>::identity(n));
  auto e = rref(aug, n);
  if (static_cast<int>(e.pivot_cols.size()) < n) throw SingularMatrixError("singular matrix");
  return e.m.block(0, n, n, n);
}

/// Basis of the right nullspace {x : A x = 0}, one column per free variable.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& a) {
  auto e = rref(a);
  const int C = a.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(C), 0);
  for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<std::vector<T>> basis;
  for (int f = 0; f < C; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<T> v(static_cast<std::size_t>(C), T(0));
    v[static_cast<std::size_t>(f)] = T(1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      v[static_cast<std::size_t>(e.pivot_cols[i])] = -e.m(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
Matrix<T> Matrix<T>::pow(int e) const {
  if (!square()) throw DimensionError("power of non-square matrix");
  if (e < 0) return hecke::inverse(*this).pow(-e);
  Matrix r = identity(rows_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Block constructors

template <class T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& parts) {
  int R = 0, C = 0;
  for (const auto& p : parts) {
    R += p.rows();
    C += p.cols();
  }
  Matrix<T> m(R, C);
  int r = 0, c = 0;
  for (const auto& p : parts) {
    m.set_block(r, c, p);
    r += p.rows();
    c += p.cols();
  }
  return m;
}

/// (A (x) B)[i*rows(B)+k, j*cols(B)+l] = A[i,j] * B[k,l] (0-based).
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (field_is_zero(a(i, j))) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          if (!field_is_zero(b(k, l))) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

template <class T>
Matrix<T> diag_from_scalars(const std::vector<T>& d) {
  return Matrix<T>::diagonal(d);
}

// ---------------------------------------------------------------------------
// Permutations

/// A permutation of {0..n-1}; externally written 1-based in cycle notation.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int x : img_) {
      if (x < 0 || x >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(x)])
        throw std::invalid_argument("not a bijection");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }

  /// Cycles given with 1-based points, e.g. {{1,3},{4,6}}.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const int from = cyc[i] - 1, to = cyc[(i + 1) % cyc.size()] - 1;
        if (from < 0 || from >= n || to < 0 || to >= n) throw std::invalid_argument("cycle point out of range");
        v[static_cast<std::size_t>(from)] = to;
      }
    }
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const {
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    return Permutation(std::move(v));
  }

  /// P with P e_i = e_{pi(i)}.
  template <class T>
  Matrix<T> matrix() const {
    Matrix<T> m(size(), size());
    for (int i = 0; i < size(); ++i) m(img_[static_cast<std::size_t>(i)], i) = T(1);
    return m;
  }

  std::string cycle_string() const {
    std::ostringstream os;
    std::vector<char> seen(img_.size(), 0);
    bool any = false;
    for (int i = 0; i < size(); ++i) {
      if (seen[static_cast<std::size_t>(i)] || img_[static_cast<std::size_t>(i)] == i) continue;
      os << '(';
      int j = i;
      bool first = true;
      while (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        os << (first ? "" : ",") << j + 1;
        first = false;
        j = img_[static_cast<std::size_t>(j)];
      }
      os << ')';
      any = true;
    }
    return any ? os.str() : "()";
  }

private:
  std::vector<int> img_;
};

/// P A P^-1, i.e. result[pi(i)][pi(j)] = A[i][j].
template <class T>
Matrix<T> permutation_conjugate(const Matrix<T>& a, const Permutation& pi) {
  if (!a.square() || a.rows() != pi.size()) throw DimensionError("permutation size mismatch");
  Matrix<T> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(pi(i), pi(j)) = a(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Commutant

namespace detail {

/// Arithmetic modulo the prime 2^61 - 1.
struct Mod61 {
  static constexpr std::uint64_t P = (1ULL << 61) - 1;
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(z & P) + static_cast<std::uint64_t>(z >> 61);
    return r >= P ? r - P : r;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t r = a + b;
    return r >= P ? r - P : r;
  }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
  static std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  static std::uint64_t inv(std::uint64_t a) { return pow(a, P - 2); }
  static std::uint64_t from_mpz(const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mpz_class(std::to_string(P)).get_mpz_t());
    return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
  }
};

inline std::optional<std::uint64_t> eval_mod(const LaurentPoly& f, std::uint64_t p0, std::uint64_t q0) {
  using M = Mod61;
  const std::uint64_t pi = M::inv(p0), qi = M::inv(q0);
  std::uint64_t s = 0;
  for (const auto& t : f.terms()) {
    std::uint64_t v = M::from_mpz(t.c);
    v = M::mul(v, t.a >= 0 ? M::pow(p0, static_cast<std::uint64_t>(t.a)) : M::pow(pi, static_cast<std::uint64_t>(-t.a)));
    v = M::mul(v, t.b >= 0 ? M::pow(q0, static_cast<std::uint64_t>(t.b)) : M::pow(qi, static_cast<std::uint64_t>(-t.b)));
    s = M::add(s, v);
  }
  return s;
}

inline std::optional<std::uint64_t> eval_mod(const RatFun& x, std::uint64_t p0, std::uint64_t q0) {
  const auto d = eval_mod(x.den(), p0, q0);
  if (!d || *d == 0) return std::nullopt;
  return Mod61::mul(*eval_mod(x.num(), p0, q0), Mod61::inv(*d));
}

inline int rank_mod(std::vector<std::vector<std::uint64_t>> a, int cols) {
  using M = Mod61;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(a.size()); ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(piv)]);
    const std::uint64_t inv = M::inv(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    for (auto& x : a[static_cast<std::size_t>(r)]) x = M::mul(x, inv);
    for (int i = r + 1; i < static_cast<int>(a.size()); ++i) {
      const std::uint64_t f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < cols; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            M::sub(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                   M::mul(f, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]));
    }
    ++r;
  }
  return r;
}

template <class Entry>
std::vector<std::vector<Entry>> commutant_rows(const std::vector<Matrix<Entry>>& mats, int n) {
  // Unknown X[k][l] has index k*n + l; equation (XA - AX)[i][j] = 0.
  std::vector<std::vector<Entry>> rows;
  for (const auto& A : mats) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Entry> row(static_cast<std::size_t>(n * n), Entry(0));
        bool any = false;
        for (int k = 0; k < n; ++k) {
          if (!field_is_zero(A(k, j))) {
            row[static_cast<std::size_t>(i * n + k)] += A(k, j);
            any = true;
          }
          if (!field_is_zero(A(i, k))) {
            row[static_cast<std::size_t>(k * n + j)] -= A(i, k);
            any = true;
          }
        }
        if (any) rows.push_back(std::move(row));
      }
  }
  return rows;
}

}  // namespace detail

/// Dimension over Q(p,q) of the commutant {X : XA = AX for all A}.
///
/// The linear system is first specialized at random points modulo a large
/// prime; specialization can only lower the rank, so a specialized answer of
/// 1 (scalars always commute) is exact. Otherwise the system is eliminated
/// exactly over Q(p,q).
inline int commutant_dimension(const std::vector<FieldMatrix>& mats) {
  if (mats.empty()) throw DimensionError("commutant of empty set");
  const int n = mats[0].rows();
  for (const auto& m : mats)
    if (!m.square() || m.rows() != n) throw DimensionError("commutant: matrices must be square of equal size");
  std::mt19937_64 rng(0x5eed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const std::uint64_t p0 = rng() % (detail::Mod61::P - 2) + 2;
    const std::uint64_t q0 = rng() % (detail::Mod61::P - 2) + 2;
    std::vector<std::vector<std::uint64_t>> rows;
    bool ok = true;
    for (const auto& A : mats) {
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) {
          std::vector<std::uint64_t> row(static_cast<std::size_t>(n * n), 0);
          for (int k = 0; k < n && ok; ++k) {
            if (!A(k, j).is_zero()) {
              auto v = detail::eval_mod(A(k, j), p0, q0);
              if (!v) ok = false;
              else row[static_cast<std::size_t>(i * n + k)] = detail::Mod61::add(row[static_cast<std::size_t>(i * n + k)], *v);
            }
            if (ok && !A(i, k).is_zero()) {
              auto v = detail::eval_mod(A(i, k), p0, q0);
              if (!v) ok = false;
              else row[static_cast<std::size_t>(k * n + j)] = detail::Mod61::sub(row[static_cast<std::size_t>(k * n + j)], *v);
            }
          }
          rows.push_back(std::move(row));
        }
    }
    if (!ok) continue;
    const int dim = n * n - detail::rank_mod(std::move(rows), n * n);
    if (dim == 1) return 1;
    break;
  }
  auto rows = detail::commutant_rows(mats, n);
  FieldMatrix sys(static_cast<int>(rows.size()), n * n);
  for (int i = 0; i < sys.rows(); ++i)
    for (int j = 0; j < n * n; ++j) sys(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return n * n - rank(sys);
}

// ---------------------------------------------------------------------------
// Specialization

inline QMatrix evaluate(const FieldMatrix& m, const mpq_class& p0, const mpq_class& q0) {
  return m.map([&](const RatFun& x) { return x.evaluate(p0, q0); });
}

inline FieldMatrix apply_automorphism(const FieldMatrix& m, bool alpha_p, bool alpha_q) {
  return m.map([&](const RatFun& x) { return x.apply_automorphism(alpha_p, alpha_q); });
}

// ---------------------------------------------------------------------------
// JSON and LaTeX

inline nlohmann::json to_json(const FieldMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline FieldMatrix matrix_from_json(const nlohmann::json& j) {
  const int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
  FieldMatrix m(r, c);
  const auto& e = j.at("entries");
  if (static_cast<int>(e.size()) != r) throw std::invalid_argument("row count mismatch");
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(e[static_cast<std::size_t>(i)].size()) != c) throw std::invalid_argument("column count mismatch");
    for (int k = 0; k < c; ++k) m(i, k) = ratfun_from_json(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  }
  return m;
}

inline nlohmann::json to_json(const QMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

namespace detail {

inline std::string latex_monomial(int a, int b) {
  std::string s;
  auto pw = [](const char* v, int e) {
    std::string r = v;
    if (e != 1) r += "^{" + std::to_string(e) + "}";
    return r;
  };
  if (a != 0) s += pw("p", a);
  if (b != 0) s += pw("q", b);
  return s;
}

inline std::string latex_poly(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    mpz_class c = it->c;
    if (!first) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    if (c < 0) c = -c;
    first = false;
    const std::string m = latex_monomial(it->a, it->b);
    if (c != 1 || m.empty()) s += c.get_str();
    s += m;
  }
  return s;
}

struct BracketProduct {
  mpz_class c;
  int a = 0, b = 0;
  std::vector<std::string> names;
};

/// Writes f as c * p^a q^b * product of brackets when possible.
inline std::optional<BracketProduct> bracket_product(const LaurentPoly& f) {
  if (f.is_zero()) return std::nullopt;
  LaurentPoly rest = strip_monomial(f);
  BracketProduct out;
  out.a = f.min_a();
  out.b = f.min_b();
  // each stored bracket polynomial is x^(deg/2) * [n]_x
  for (const auto& br : allowed_denominator_brackets()) {
    while (!rest.is_constant()) {
      auto d = divide_exact(rest, br.poly);
      if (!d) break;
      rest = std::move(*d);
      out.names.push_back(br.name);
      out.a += br.poly.max_a() / 2;
      out.b += br.poly.max_b() / 2;
    }
  }
  if (!rest.is_constant()) return std::nullopt;
  out.c = rest.constant_value();
  return out;
}

inline std::string latex_product(mpz_class c, int a, int b, const std::vector<std::string>& names) {
  if (c < 0) c = -c;
  std::string body;
  if (c != 1) body += c.get_str();
  body += latex_monomial(a, b);
  for (const auto& n : names) body += n;
  return body.empty() ? "1" : body;
}

}  // namespace detail

inline std::string to_latex(const RatFun& x) {
  if (x.is_zero()) return "0";
  auto n = detail::bracket_product(x.num());
  auto d = detail::bracket_product(x.den());
  if (x.is_laurent()) {
    if (n && !n->names.empty()) return (n->c < 0 ? "-" : "") + detail::latex_product(n->c, n->a, n->b, n->names);
    return detail::latex_poly(x.num());
  }
  std::string ns, ds;
  bool neg = false;
  if (n && d) {
    neg = n->c < 0;
    ns = detail::latex_product(n->c, n->a - d->a, n->b - d->b, n->names);
    ds = detail::latex_product(d->c, 0, 0, d->names);
  } else if (d) {
    ns = detail::latex_poly(x.num().shifted(-d->a, -d->b));
    ds = detail::latex_product(d->c, 0, 0, d->names);
  } else {
    ns = n ? (n->c < 0 ? "-" : "") + detail::latex_product(n->c, n->a, n->b, n->names) : detail::latex_poly(x.num());
    ds = detail::latex_poly(x.den());
    if (!ns.empty() && ns[0] == '-') {
      neg = true;
      ns = ns.substr(1);
    }
  }
  return std::string(neg ? "-" : "") + "\\frac{" + ns + "}{" + ds + "}";
}

inline std::string to_latex(const FieldMatrix& m) {
  std::ostringstream os;
  os << "\\begin{pmatrix}\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " & " : "") << to_latex(m(i, j));
    os << (i + 1 < m.rows() ? " \\\\\n" : "\n");
  }
  os << "\\end{pmatrix}";
  return os.str();
}

}  // namespace hecke

#endif  // HECKE_LINALG_HPP
