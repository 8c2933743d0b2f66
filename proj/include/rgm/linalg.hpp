#pragma once

// Exact linear algebra over Z/ell^k (a local principal ideal ring) and over F_ell.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "rgm/matrix.hpp"

namespace rgm {

struct SmithOptions {
  bool U = false;
  bool Uinv = false;
  bool V = false;
};

// U * A * V = diag(ell^vals[0], ell^vals[1], ...), vals nondecreasing, k meaning 0.
struct SmithForm {
  std::vector<int> vals;
  Mat U, Uinv, V;
};

inline SmithForm smith_form(Mat A, const Zmod& R, SmithOptions opt = {}) {
  const std::size_t m = A.rows, n = A.cols, r = std::min(m, n);
  const int k = R.k();
  const u64 q = R.q();
  SmithForm s;
  if (opt.U) s.U = Mat::identity(m);
  if (opt.Uinv) s.Uinv = Mat::identity(m);
  if (opt.V) s.V = Mat::identity(n);
  s.vals.assign(r, k);

  for (std::size_t t = 0; t < r; ++t) {
    int best = k;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < m && best > 0; ++i)
      for (std::size_t j = t; j < n; ++j) {
        u64 x = A(i, j);
        if (x == 0) continue;
        int v = R.val(x);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best == k) break;

    if (bi != t) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(t, j), A(bi, j));
      if (opt.U)
        for (std::size_t j = 0; j < m; ++j) std::swap(s.U(t, j), s.U(bi, j));
      if (opt.Uinv)
        for (std::size_t i = 0; i < m; ++i) std::swap(s.Uinv(i, t), s.Uinv(i, bi));
    }
    if (bj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(A(i, t), A(i, bj));
      if (opt.V)
        for (std::size_t i = 0; i < n; ++i) std::swap(s.V(i, t), s.V(i, bj));
    }

    const u64 pe = R.pow(best);
    const u64 unit = R.unit_part(A(t, t), best);
    if (unit != 1) {
      const u64 uinv = R.inv_unit(unit);
      for (std::size_t j = t; j < n; ++j) A(t, j) = R.mul(A(t, j), uinv);
      if (opt.U)
        for (std::size_t j = 0; j < m; ++j) s.U(t, j) = R.mul(s.U(t, j), uinv);
      if (opt.Uinv)
        for (std::size_t i = 0; i < m; ++i) s.Uinv(i, t) = R.mul(s.Uinv(i, t), unit);
    }
    A(t, t) = pe;

    for (std::size_t i = t + 1; i < m; ++i) {
      const u64 c = A(i, t) / pe;
      if (c == 0) continue;
      for (std::size_t j = t; j < n; ++j) A(i, j) = (A(i, j) + (q - c) * A(t, j)) % q;
      if (opt.U)
        for (std::size_t j = 0; j < m; ++j) s.U(i, j) = (s.U(i, j) + (q - c) * s.U(t, j)) % q;
      if (opt.Uinv)
        for (std::size_t l = 0; l < m; ++l) s.Uinv(l, t) = (s.Uinv(l, t) + c * s.Uinv(l, i)) % q;
    }
    // Column t is now zero below the pivot, so column operations only touch row t.
    for (std::size_t j = t + 1; j < n; ++j) {
      const u64 c = A(t, j) / pe;
      A(t, j) = 0;
      if (c == 0 || !opt.V) continue;
      for (std::size_t i = 0; i < n; ++i) s.V(i, j) = (s.V(i, j) + (q - c) * s.V(i, t)) % q;
    }
    s.vals[t] = best;
  }
  return s;
}

// Independent cyclic generators: the group is the direct sum of <gens[t]> ~ Z/ell^exps[t].
struct CyclicBasis {
  std::vector<Vec> gens;
  std::vector<int> exps;

  int log_order() const {
    int s = 0;
    for (int e : exps) s += e;
    return s;
  }
};

// Kernel of x |-> A x. Row i of the target is read modulo ell^{row_exps[i]}
// when row_exps is given (target is a quotient of a free module).
inline CyclicBasis kernel(const Mat& A, const Zmod& R, const std::vector<int>* row_exps = nullptr) {
  Mat B = A;
  if (row_exps != nullptr) {
    for (std::size_t i = 0; i < B.rows; ++i) {
      const u64 s = R.pow(R.k() - (*row_exps)[i]);
      for (std::size_t j = 0; j < B.cols; ++j) B(i, j) = R.mul(B(i, j), s);
    }
  }
  SmithForm sf = smith_form(B, R, {.V = true});
  CyclicBasis out;
  for (std::size_t t = 0; t < B.cols; ++t) {
    const int a = t < sf.vals.size() ? sf.vals[t] : R.k();
    if (a == 0) continue;
    out.gens.push_back(vec_scale(sf.V.column(t), R.pow(R.k() - a), R));
    out.exps.push_back(a);
  }
  return out;
}

// Some x with A x = b, where row i is read modulo ell^{row_exps[i]} when given.
inline std::optional<Vec> solve_mod(const Mat& A, const Vec& b, const Zmod& R,
                                    const std::vector<int>* row_exps = nullptr) {
  const std::size_t m = A.rows, n = A.cols;
  Mat B = A;
  if (row_exps != nullptr) {
    // extra unknowns absorb the relations ell^{e_i} in row i
    B = Mat(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) B(i, j) = A(i, j);
      B(i, n + i) = R.pow((*row_exps)[i]) % R.q();
    }
  }
  SmithForm sf = smith_form(B, R, {.U = true, .V = true});
  Vec ub = mat_vec(sf.U, b, R);
  Vec y(B.cols, 0);
  for (std::size_t t = 0; t < m; ++t) {
    const int a = t < sf.vals.size() ? sf.vals[t] : R.k();
    if (a >= R.k()) {
      if (ub[t] != 0) return std::nullopt;
      continue;
    }
    if (ub[t] % R.pow(a) != 0) return std::nullopt;
    y[t] = ub[t] / R.pow(a);
  }
  Vec x = mat_vec(sf.V, y, R);
  x.resize(n);
  return x;
}

// log_ell of the order of the subgroup generated by the given vectors.
inline int span_log_order(const std::vector<Vec>& vs, std::size_t dim, const Zmod& R) {
  if (vs.empty() || dim == 0) return 0;
  SmithForm sf = smith_form(Mat::from_columns(dim, vs), R);
  int s = 0;
  for (int a : sf.vals) s += R.k() - a;
  return s;
}

// Cyclic invariants (exponents) of the span, nondecreasing.
inline std::vector<int> span_invariants(const std::vector<Vec>& vs, std::size_t dim, const Zmod& R) {
  std::vector<int> out;
  if (vs.empty() || dim == 0) return out;
  SmithForm sf = smith_form(Mat::from_columns(dim, vs), R);
  for (int a : sf.vals)
    if (a < R.k()) out.push_back(R.k() - a);
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical (Howell) generating set of the row span.
struct HowellForm {
  std::size_t ncols = 0;
  int k = 1;
  std::vector<Vec> rows;
  std::vector<std::size_t> pivot_cols;
  std::vector<int> pivot_vals;

  int log_order() const {
    int s = 0;
    for (int a : pivot_vals) s += k - a;
    return s;
  }
  bool operator==(const HowellForm& o) const { return ncols == o.ncols && rows == o.rows; }
};

inline HowellForm howell_form(const std::vector<Vec>& gens, std::size_t ncols, const Zmod& R) {
  const u64 q = R.q();
  HowellForm hf;
  hf.ncols = ncols;
  hf.k = R.k();
  std::vector<Vec> pool;
  for (const Vec& g : gens) {
    Vec v(ncols);
    for (std::size_t j = 0; j < ncols; ++j) v[j] = g[j] % q;
    if (!is_zero(v)) pool.push_back(std::move(v));
  }
  for (std::size_t c = 0; c < ncols && !pool.empty(); ++c) {
    int best = R.k();
    std::size_t bi = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i][c] == 0) continue;
      int v = R.val(pool[i][c]);
      if (v < best) {
        best = v;
        bi = i;
      }
    }
    if (best == R.k()) continue;
    Vec p = std::move(pool[bi]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(bi));
    const u64 unit = R.unit_part(p[c], best);
    if (unit != 1) p = vec_scale(p, R.inv_unit(unit), R);
    const u64 pe = R.pow(best);
    std::vector<Vec> next;
    for (Vec& r : pool) {
      const u64 f = r[c] / pe;
      if (f != 0)
        for (std::size_t j = c; j < ncols; ++j) r[j] = (r[j] + (q - f) * p[j]) % q;
      if (!is_zero(r)) next.push_back(std::move(r));
    }
    if (best > 0) {
      Vec extra = vec_scale(p, R.pow(R.k() - best), R);
      if (!is_zero(extra)) next.push_back(std::move(extra));
    }
    pool = std::move(next);
    hf.rows.push_back(std::move(p));
    hf.pivot_cols.push_back(c);
    hf.pivot_vals.push_back(best);
  }
  for (std::size_t t = 0; t < hf.rows.size(); ++t) {
    const std::size_t c = hf.pivot_cols[t];
    const u64 pe = R.pow(hf.pivot_vals[t]);
    for (std::size_t s = 0; s < t; ++s) {
      const u64 f = hf.rows[s][c] / pe;
      if (f == 0) continue;
      for (std::size_t j = c; j < ncols; ++j)
        hf.rows[s][j] = (hf.rows[s][j] + (q - f) * hf.rows[t][j]) % q;
    }
  }
  return hf;
}

// ---------------------------------------------------------------------------
// Field case (k = 1). All routines take a Zmod with k() == 1.

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& A, const Zmod& F) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t p = r;
    while (p < A.rows && A(p, c) == 0) ++p;
    if (p == A.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
    const u64 inv = F.inv_unit(A(r, c));
    for (std::size_t j = c; j < A.cols; ++j) A(r, j) = F.mul(A(r, j), inv);
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == r || A(i, c) == 0) continue;
      const u64 f = A(i, c);
      for (std::size_t j = c; j < A.cols; ++j) A(i, j) = F.sub(A(i, j), F.mul(f, A(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::size_t rank_field(Mat A, const Zmod& F) { return rref(A, F).size(); }

// Basis of {x : A x = 0}.
inline std::vector<Vec> nullspace_field(Mat A, const Zmod& F) {
  std::vector<std::size_t> piv = rref(A, F);
  std::vector<bool> is_piv(A.cols, false);
  for (std::size_t c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    Vec x(A.cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = F.neg(A(i, f));
    basis.push_back(std::move(x));
  }
  return basis;
}

// Some solution of A x = b, if any.
inline std::optional<Vec> solve_field(const Mat& A, const Vec& b, const Zmod& F) {
  Mat aug(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    aug(i, A.cols) = b[i] % F.q();
  }
  std::vector<std::size_t> piv = rref(aug, F);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  Vec x(A.cols, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, A.cols);
  return x;
}

inline std::optional<Mat> inverse_field(const Mat& A, const Zmod& F) {
  const std::size_t n = A.rows;
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv = rref(aug, F);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Incrementally maintained echelon basis of a subspace of F^dim.
class SubspaceBuilder {
 public:
  SubspaceBuilder(std::size_t dim, const Zmod& F) : dim_(dim), F_(F) {}

  // Adds v if it is independent; returns true when the span grew.
  bool add(const Vec& v) {
    Vec w = reduce(v);
    std::size_t c = 0;
    while (c < dim_ && w[c] == 0) ++c;
    if (c == dim_) return false;
    const u64 inv = F_.inv_unit(w[c]);
    for (auto& x : w) x = F_.mul(x, inv);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const u64 f = rows_[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) rows_[i][j] = F_.sub(rows_[i][j], F_.mul(f, w[j]));
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(c);
    basis_.push_back(v);
    return true;
  }

  bool contains(const Vec& v) const { return is_zero(reduce(v)); }
  std::size_t size() const { return rows_.size(); }
  // The vectors that were accepted, in insertion order.
  const std::vector<Vec>& basis() const { return basis_; }

 private:
  Vec reduce(const Vec& v) const {
    Vec w(dim_);
    for (std::size_t j = 0; j < dim_; ++j) w[j] = v[j] % F_.q();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const u64 f = w[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) w[j] = F_.sub(w[j], F_.mul(f, rows_[i][j]));
    }
    return w;
  }

  std::size_t dim_;
  Zmod F_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> basis_;
};

}  // namespace rgm
