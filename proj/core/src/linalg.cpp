#include "nonholonomy/linalg.hpp"

#include <algorithm>

#include "nonholonomy/errors.hpp"

namespace nonholonomy {

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty()) return {};
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw InputError("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
  }
  return m;
}

std::vector<Scalar> RationalMatrix::row(std::size_t r) const {
  const auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
  return {first, first + static_cast<std::ptrdiff_t>(cols_)};
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s == 0; });
}

std::size_t rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }

  std::size_t rk = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t pivot = rk;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rk]);
    for (std::size_t r = rk + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[r][j] = a[rk][c] * a[r][j] - a[r][c] * a[rk][j];
        mpz_divexact(a[r][j].get_mpz_t(), a[r][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rk][c];
    ++rk;
  }
  return rk;
}

std::vector<std::vector<Scalar>> kernel(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  RationalMatrix a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Scalar inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

Polynomial det_rec(const std::vector<std::vector<Polynomial>>& m, std::vector<std::size_t>& cols,
                   std::size_t row) {
  const std::size_t n = m.size();
  if (row == n) return Polynomial(m[0][0].chart(), Scalar(1));
  Polynomial total(m[0][0].chart());
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (!m[row][c].is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      Polynomial minor = det_rec(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      if (!minor.is_zero()) {
        Polynomial term = m[row][c] * minor;
        if (sign > 0) {
          total += term;
        } else {
          total -= term;
        }
      }
    }
    sign = -sign;
  }
  return total;
}

}  // namespace

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  if (m.empty()) throw InputError("determinant of an empty matrix");
  for (const auto& r : m) {
    if (r.size() != m.size()) throw InputError("determinant of a non-square matrix");
  }
  std::vector<std::size_t> cols(m.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return det_rec(m, cols, 0);
}

namespace {

Scalar scalar_determinant(RationalMatrix a) {
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Scalar f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

}  // namespace

std::optional<std::vector<std::size_t>> constant_maximal_minor(const std::vector<std::vector<Polynomial>>& m,
                                                               std::size_t max_tries) {
  if (m.empty() || m.front().empty()) return std::vector<std::size_t>{};
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  const bool pick_rows = rows > cols;
  const std::size_t size = pick_rows ? cols : rows;
  const std::size_t pool = pick_rows ? rows : cols;
  if (size == 0) return std::vector<std::size_t>{};

  // A constant minor takes the same nonzero value everywhere; two fixed probe
  // points filter candidates before the symbolic determinant is expanded.
  const Chart& chart = m.front().front().chart();
  std::vector<Point> probes;
  for (std::size_t p = 0; p < 2; ++p) {
    Point pt(chart.dim());
    for (std::size_t i = 0; i < pt.size(); ++i) {
      pt[i] = Scalar(static_cast<long>((7 * i + 3 * p + 2) % 11) - 5, p + 2);
      pt[i].canonicalize();
    }
    probes.push_back(std::move(pt));
  }
  std::vector<RationalMatrix> values;
  for (const auto& pt : probes) {
    RationalMatrix v(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) v(r, c) = m[r][c].eval(pt);
    }
    values.push_back(std::move(v));
  }

  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  std::vector<std::vector<Polynomial>> minor(size);
  for (std::size_t tried = 0; tried < max_tries; ++tried) {
    Scalar first;
    bool candidate = true;
    for (std::size_t p = 0; p < values.size() && candidate; ++p) {
      RationalMatrix sub(size, size);
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
          sub(r, c) = pick_rows ? values[p](pick[r], c) : values[p](r, pick[c]);
        }
      }
      const Scalar d = scalar_determinant(std::move(sub));
      if (p == 0) first = d;
      candidate = d != 0 && d == first;
    }
    for (std::size_t r = 0; candidate && r < size; ++r) {
      minor[r].clear();
      for (std::size_t c = 0; c < size; ++c) {
        minor[r].push_back(pick_rows ? m[pick[r]][c] : m[r][pick[c]]);
      }
    }
    if (candidate) {
      const Polynomial det = determinant(minor);
      if (!det.is_zero() && det.is_constant()) return pick;
    }

    std::size_t k = size;
    while (k > 0 && pick[k - 1] == pool - size + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
  return std::nullopt;
}

}  // namespace nonholonomy
