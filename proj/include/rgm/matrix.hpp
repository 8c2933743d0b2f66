#pragma once

#include <cstddef>
#include <vector>

#include "rgm/modular.hpp"

namespace rgm {

using Vec = std::vector<u64>;

// Dense row-major matrix of residues.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  u64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  u64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Vec column(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec row(std::size_t i) const {
    return Vec(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
               a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
  }
  void set_column(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
  }

  static Mat from_columns(std::size_t nrows, const std::vector<Vec>& cs) {
    Mat m(nrows, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) m.set_column(j, cs[j]);
    return m;
  }
  static Mat from_rows(std::size_t ncols, const std::vector<Vec>& rs) {
    Mat m(rs.size(), ncols);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rs[i][j];
    return m;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline Mat mat_mul(const Mat& x, const Mat& y, const Zmod& R) {
  Mat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t l = 0; l < x.cols; ++l) {
      u64 c = x(i, l);
      if (c == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        z(i, j) = (z(i, j) + c * y(l, j)) % R.q();
    }
  return z;
}

inline Vec mat_vec(const Mat& x, const Vec& v, const Zmod& R) {
  Vec out(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    u64 s = 0;
    for (std::size_t j = 0; j < x.cols; ++j) s = (s + x(i, j) * v[j]) % R.q();
    out[i] = s;
  }
  return out;
}

inline Mat mat_add(const Mat& x, const Mat& y, const Zmod& R) {
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = R.add(z.a[i], y.a[i]);
  return z;
}

inline Mat mat_sub(const Mat& x, const Mat& y, const Zmod& R) {
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = R.sub(z.a[i], y.a[i]);
  return z;
}

inline Mat mat_scale(const Mat& x, u64 c, const Zmod& R) {
  Mat z = x;
  for (auto& e : z.a) e = R.mul(e, c);
  return z;
}

inline Vec vec_add(const Vec& x, const Vec& y, const Zmod& R) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.add(x[i], y[i]);
  return z;
}

inline Vec vec_sub(const Vec& x, const Vec& y, const Zmod& R) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.sub(x[i], y[i]);
  return z;
}

inline Vec vec_scale(const Vec& x, u64 c, const Zmod& R) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.mul(x[i], c);
  return z;
}

inline bool is_zero(const Vec& v) {
  for (u64 x : v)
    if (x != 0) return false;
  return true;
}

// Block-diagonal matrix with `copies` copies of m.
inline Mat block_diagonal(const Mat& m, std::size_t copies) {
  Mat out(m.rows * copies, m.cols * copies);
  for (std::size_t b = 0; b < copies; ++b)
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) out(b * m.rows + i, b * m.cols + j) = m(i, j);
  return out;
}

}  // namespace rgm
