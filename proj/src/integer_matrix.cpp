#include "connsum/integer_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "connsum/errors.hpp"

namespace connsum {

// ---------------------------------------------------------------------------
// IntegerMatrix basics
// ---------------------------------------------------------------------------

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows) {
  IntegerMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidArgument("column has the wrong length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

std::vector<Integer> IntegerMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x.is_zero(); });
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix IntegerMatrix::column_range(std::size_t first, std::size_t count) const {
  IntegerMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

IntegerMatrix IntegerMatrix::row_range(std::size_t first, std::size_t count) const {
  IntegerMatrix out(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(first + r, c);
  return out;
}

Integer IntegerMatrix::max_abs() const {
  Integer best = 0;
  for (const Integer& x : data_) best = std::max(best, Integer(abs(x)));
  return best;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << '\n';
  }
  return os.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product dimension mismatch");
  IntegerMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("hstack row mismatch");
  IntegerMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.cols()) throw InvalidArgument("vstack column mismatch");
  IntegerMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

std::vector<Integer> InvariantFactors::torsion() const {
  std::vector<Integer> out;
  for (const Integer& d : factors)
    if (d > 1) out.push_back(d);
  return out;
}

// ---------------------------------------------------------------------------
// Elimination kernels, templated over the scalar. Each algorithm first runs on
// overflow-checked 64-bit integers and reruns on Integer if any step overflows.
// ---------------------------------------------------------------------------

namespace {

struct Overflow {};

class Checked64 {
 public:
  Checked64() = default;
  Checked64(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  std::int64_t get() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1) throw Overflow{};
    return a.v_ / b.v_;
  }
  friend Checked64 operator%(Checked64 a, Checked64 b) {
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  Checked64 operator-() const {
    if (v_ == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v_;
  }
  friend auto operator<=>(Checked64, Checked64) = default;
  friend bool operator==(Checked64, Checked64) = default;

 private:
  std::int64_t v_ = 0;
};

bool is_zero(const Checked64& x) { return x.is_zero(); }
bool is_zero(const Integer& x) { return x.is_zero(); }
Checked64 abs_of(const Checked64& x) { return x < 0 ? -x : x; }
Integer abs_of(const Integer& x) { return abs(x); }
Integer to_integer(const Checked64& x) { return Integer(x.get()); }
Integer to_integer(const Integer& x) { return x; }

template <typename T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  if (!is_zero(a % b) && ((a < 0) != (b < 0))) q = q - T(1);
  return q;
}

template <typename T>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;
  T& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

const Integer kFastLimit = Integer(1) << 61;

template <typename T>
Dense<T> to_dense(const IntegerMatrix& m) {
  Dense<T> d{m.rows(), m.cols(), {}};
  d.data.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if constexpr (std::is_same_v<T, Checked64>) {
        if (abs(m(r, c)) >= kFastLimit) throw Overflow{};
        d.data.emplace_back(static_cast<std::int64_t>(m(r, c)));
      } else {
        d.data.push_back(m(r, c));
      }
    }
  return d;
}

template <typename T>
IntegerMatrix from_dense(const Dense<T>& d) {
  IntegerMatrix m(d.rows, d.cols);
  for (std::size_t r = 0; r < d.rows; ++r)
    for (std::size_t c = 0; c < d.cols; ++c) m(r, c) = to_integer(d.at(r, c));
  return m;
}

template <typename Fn>
auto with_fallback(Fn&& fn) {
  try {
    return fn(Checked64{});
  } catch (const Overflow&) {
    return fn(Integer{});
  }
}

template <typename T>
void swap_rows(Dense<T>& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
}

template <typename T>
void swap_cols(Dense<T>& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
}

/// row_dst -= q * row_src, restricted to the listed columns.
template <typename T>
void row_axpy(Dense<T>& a, std::size_t dst, std::size_t src, const T& q, const std::vector<std::size_t>& cols) {
  for (std::size_t c : cols) a.at(dst, c) = a.at(dst, c) - q * a.at(src, c);
}

template <typename T>
void row_axpy_full(Dense<T>& a, std::size_t dst, std::size_t src, const T& q) {
  for (std::size_t c = 0; c < a.cols; ++c)
    if (!is_zero(a.at(src, c))) a.at(dst, c) = a.at(dst, c) - q * a.at(src, c);
}

template <typename T>
void col_axpy(Dense<T>& a, std::size_t dst, std::size_t src, const T& q) {
  for (std::size_t r = 0; r < a.rows; ++r)
    if (!is_zero(a.at(r, src))) a.at(r, dst) = a.at(r, dst) - q * a.at(r, src);
}

/// Position of a smallest-magnitude nonzero entry in the trailing block
/// starting at (t, t); stops early at a unit.
template <typename T>
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const Dense<T>& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  T best_abs{};
  for (std::size_t r = t; r < a.rows; ++r)
    for (std::size_t c = t; c < a.cols; ++c) {
      const T& x = a.at(r, c);
      if (is_zero(x)) continue;
      T ax = abs_of(x);
      if (!best || ax < best_abs) {
        best = {r, c};
        best_abs = ax;
        if (ax == T(1)) return best;
      }
    }
  return best;
}

/// Smallest nonzero entry on column t (rows >= t) or row t (cols >= t).
template <typename T>
std::pair<std::size_t, std::size_t> find_cross_pivot(const Dense<T>& a, std::size_t t) {
  std::pair<std::size_t, std::size_t> best{t, t};
  T best_abs = abs_of(a.at(t, t));
  auto consider = [&](std::size_t r, std::size_t c) {
    const T& x = a.at(r, c);
    if (is_zero(x)) return;
    T ax = abs_of(x);
    if (is_zero(best_abs) || ax < best_abs) {
      best = {r, c};
      best_abs = ax;
    }
  };
  for (std::size_t r = t; r < a.rows; ++r) consider(r, t);
  for (std::size_t c = t; c < a.cols; ++c) consider(t, c);
  return best;
}

/// Diagonalizes `a` in place by unimodular row/column operations, mirroring
/// them into `u` (rows) and `v` (columns) when given. With `divisibility`
/// the diagonal also satisfies d1 | d2 | ... Returns the rank.
template <typename T>
std::size_t diagonalize(Dense<T>& a, Dense<T>* u, Dense<T>* v, bool divisibility) {
  const std::size_t limit = std::min(a.rows, a.cols);
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto pivot = find_pivot(a, t);
    if (!pivot) break;
    swap_rows(a, t, pivot->first);
    if (u) swap_rows(*u, t, pivot->first);
    swap_cols(a, t, pivot->second);
    if (v) swap_cols(*v, t, pivot->second);

    while (true) {
      bool done = true;
      std::vector<std::size_t> row_t_nonzero;
      for (std::size_t c = t; c < a.cols; ++c)
        if (!is_zero(a.at(t, c))) row_t_nonzero.push_back(c);
      for (std::size_t r = t + 1; r < a.rows; ++r) {
        if (is_zero(a.at(r, t))) continue;
        const T q = a.at(r, t) / a.at(t, t);
        row_axpy(a, r, t, q, row_t_nonzero);
        if (u) row_axpy_full(*u, r, t, q);
        if (!is_zero(a.at(r, t))) done = false;
      }
      for (std::size_t c = t + 1; c < a.cols; ++c) {
        if (is_zero(a.at(t, c))) continue;
        const T q = a.at(t, c) / a.at(t, t);
        col_axpy(a, c, t, q);
        if (v) col_axpy(*v, c, t, q);
        if (!is_zero(a.at(t, c))) done = false;
      }
      if (done && divisibility) {
        for (std::size_t r = t + 1; r < a.rows && done; ++r)
          for (std::size_t c = t + 1; c < a.cols; ++c) {
            if (!is_zero(a.at(r, c) % a.at(t, t))) {
              // Pull the offending row into row t; the next row sweep leaves a
              // remainder smaller than the pivot.
              row_axpy_full(a, t, r, T(-1));
              if (u) row_axpy_full(*u, t, r, T(-1));
              done = false;
              break;
            }
          }
      }
      if (done) break;
      auto [pr, pc] = find_cross_pivot(a, t);
      swap_rows(a, t, pr);
      if (u) swap_rows(*u, t, pr);
      swap_cols(a, t, pc);
      if (v) swap_cols(*v, t, pc);
    }
    if (a.at(t, t) < T(0)) {
      for (std::size_t c = 0; c < a.cols; ++c) a.at(t, c) = -a.at(t, c);
      if (u)
        for (std::size_t c = 0; c < u->cols; ++c) u->at(t, c) = -u->at(t, c);
    }
  }
  return t;
}

template <typename T>
Dense<T> dense_identity(std::size_t n) {
  Dense<T> d{n, n, std::vector<T>(n * n, T(0))};
  for (std::size_t i = 0; i < n; ++i) d.at(i, i) = T(1);
  return d;
}

/// Column-echelon reduction of M tracking the column transform; the trailing
/// columns of the transform span the kernel lattice.
template <typename T>
IntegerMatrix kernel_impl(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<T>> a(cols, std::vector<T>(rows));
  {
    Dense<T> d = to_dense<T>(m);
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t r = 0; r < rows; ++r) a[c][r] = d.at(r, c);
  }
  std::vector<std::vector<T>> v(cols, std::vector<T>(cols, T(0)));
  for (std::size_t c = 0; c < cols; ++c) v[c][c] = T(1);

  auto col_op = [&](std::size_t dst, std::size_t src, const T& q, std::size_t from_row) {
    for (std::size_t r = from_row; r < rows; ++r)
      if (!is_zero(a[src][r])) a[dst][r] = a[dst][r] - q * a[src][r];
    for (std::size_t r = 0; r < cols; ++r)
      if (!is_zero(v[src][r])) v[dst][r] = v[dst][r] - q * v[src][r];
  };

  std::size_t k = 0;
  for (std::size_t row = 0; row < rows && k < cols; ++row) {
    while (true) {
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t c = k; c < cols; ++c) {
        if (is_zero(a[c][row])) continue;
        ++nonzero;
        if (!best || abs_of(a[c][row]) < abs_of(a[*best][row])) best = c;
      }
      if (!best) break;
      std::swap(a[k], a[*best]);
      std::swap(v[k], v[*best]);
      if (nonzero == 1) {
        ++k;
        break;
      }
      for (std::size_t c = k + 1; c < cols; ++c) {
        if (is_zero(a[c][row])) continue;
        const T q = a[c][row] / a[k][row];
        col_op(c, k, q, row);
      }
    }
  }
  IntegerMatrix out(cols, cols - k);
  for (std::size_t c = k; c < cols; ++c)
    for (std::size_t r = 0; r < cols; ++r) out(r, c - k) = to_integer(v[c][r]);
  return out;
}

template <typename T>
IntegerMatrix hermite_impl(const IntegerMatrix& generators) {
  // Generators become rows; reduce to row Hermite normal form.
  const std::size_t dim = generators.rows();
  std::vector<std::vector<T>> g;
  {
    Dense<T> d = to_dense<T>(generators);
    for (std::size_t c = 0; c < generators.cols(); ++c) {
      std::vector<T> row(dim);
      bool nonzero = false;
      for (std::size_t r = 0; r < dim; ++r) {
        row[r] = d.at(r, c);
        nonzero = nonzero || !is_zero(row[r]);
      }
      if (nonzero) g.push_back(std::move(row));
    }
  }
  auto row_op = [&](std::size_t dst, std::size_t src, const T& q, std::size_t from) {
    for (std::size_t c = from; c < dim; ++c)
      if (!is_zero(g[src][c])) g[dst][c] = g[dst][c] - q * g[src][c];
  };
  std::size_t k = 0;
  for (std::size_t col = 0; col < dim && k < g.size(); ++col) {
    while (true) {
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t r = k; r < g.size(); ++r) {
        if (is_zero(g[r][col])) continue;
        ++nonzero;
        if (!best || abs_of(g[r][col]) < abs_of(g[*best][col])) best = r;
      }
      if (!best) break;
      std::swap(g[k], g[*best]);
      if (nonzero == 1) {
        if (g[k][col] < T(0))
          for (std::size_t c = col; c < dim; ++c) g[k][c] = -g[k][c];
        for (std::size_t r = 0; r < k; ++r) {
          if (is_zero(g[r][col])) continue;
          row_op(r, k, floor_div(g[r][col], g[k][col]), col);
        }
        ++k;
        break;
      }
      for (std::size_t r = k + 1; r < g.size(); ++r) {
        if (is_zero(g[r][col])) continue;
        row_op(r, k, g[r][col] / g[k][col], col);
      }
    }
  }
  IntegerMatrix out(dim, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < dim; ++c) out(c, r) = to_integer(g[r][c]);
  return out;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  SmithDecomposition result = with_fallback([&](auto tag) {
    using T = decltype(tag);
    Dense<T> a = to_dense<T>(m);
    Dense<T> u = dense_identity<T>(m.rows());
    Dense<T> v = dense_identity<T>(m.cols());
    const std::size_t r = diagonalize(a, &u, &v, true);
    return SmithDecomposition{from_dense(u), from_dense(a), from_dense(v), r};
  });
  if (result.u * m * result.v != result.d) throw std::logic_error("Smith normal form check U*M*V == D failed");
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    for (std::size_t j = 0; j < std::min(m.rows(), m.cols()); ++j)
      if (i != j && !result.d(i, j).is_zero()) throw std::logic_error("Smith normal form is not diagonal");
    if (i + 1 < result.rank && result.d(i + 1, i + 1) % result.d(i, i) != 0)
      throw std::logic_error("Smith normal form divisibility chain broken");
  }
  return result;
}

InvariantFactors invariant_factors(const IntegerMatrix& m) {
  std::vector<Integer> diag = with_fallback([&](auto tag) {
    using T = decltype(tag);
    Dense<T> a = to_dense<T>(m);
    const std::size_t r = diagonalize<T>(a, nullptr, nullptr, false);
    std::vector<Integer> d;
    for (std::size_t i = 0; i < r; ++i) d.push_back(abs(to_integer(a.at(i, i))));
    return d;
  });
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      if (diag[j] % diag[i] == 0) continue;
      Integer g = gcd(diag[i], diag[j]);
      Integer l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return {diag.size(), diag};
}

std::size_t rank(const IntegerMatrix& m) { return invariant_factors(m).rank; }

std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p) {
  if (p < 2) throw InvalidArgument("rank_mod_p needs a prime p >= 2");
  const std::uint64_t mod = p;
  std::vector<std::uint64_t> a(m.rows() * m.cols());
  const Integer ip(p);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer x = m(r, c) % ip;
      if (x < 0) x += ip;
      a[r * m.cols() + c] = static_cast<std::uint64_t>(x);
    }
  auto inverse = [&](std::uint64_t x) {
    std::uint64_t result = 1, base = x, e = mod - 2;
    while (e) {
      if (e & 1) result = result * base % mod;
      base = base * base % mod;
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && rank < m.rows(); ++c) {
    std::size_t pr = rank;
    while (pr < m.rows() && a[pr * cols + c] == 0) ++pr;
    if (pr == m.rows()) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[pr * cols + j], a[rank * cols + j]);
    const std::uint64_t inv = inverse(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const std::uint64_t f = a[r * cols + c] * inv % mod;
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[r * cols + j] = (a[r * cols + j] + (mod - f) * a[rank * cols + j]) % mod;
    }
    ++rank;
  }
  return rank;
}

IntegerMatrix kernel_basis(const IntegerMatrix& m) {
  return with_fallback([&](auto tag) { return kernel_impl<decltype(tag)>(m); });
}

IntegerMatrix hermite_basis(const IntegerMatrix& generators) {
  return with_fallback([&](auto tag) { return hermite_impl<decltype(tag)>(generators); });
}

}  // namespace connsum
