#pragma once

// Finite Gamma-modules over Z/ell^k in cyclic coordinates:
//   X = (+)_t Z/ell^{e_t} g_t,   g . g_t = sum_s A_g(s, t) g_s.

#include <vector>

#include "rgm/group.hpp"
#include "rgm/linalg.hpp"

namespace rgm {

struct FiniteModule {
  GroupPtr gamma;
  Zmod R;
  std::vector<int> exps;    // each in [1, k]
  std::vector<Mat> action;  // one per element of gamma; row s reduced mod ell^{exps[s]}

  std::size_t rank() const { return exps.size(); }
  int log_order() const {
    int s = 0;
    for (int e : exps) s += e;
    return s;
  }
  bool is_trivial() const { return exps.empty(); }

  Vec reduce(Vec v) const {
    for (std::size_t t = 0; t < v.size(); ++t) v[t] %= R.pow(exps[t]);
    return v;
  }
  Vec act(int g, const Vec& x) const { return reduce(mat_vec(action[static_cast<std::size_t>(g)], x, R)); }
  Vec add(const Vec& x, const Vec& y) const { return reduce(vec_add(x, y, R)); }
  Vec sub(const Vec& x, const Vec& y) const { return reduce(vec_sub(x, y, R)); }
  Vec scale(const Vec& x, u64 c) const { return reduce(vec_scale(x, c, R)); }
  Vec zero() const { return Vec(rank(), 0); }
  Vec generator(std::size_t t) const {
    Vec v(rank(), 0);
    v[t] = 1;
    return v;
  }

  // Relations of the free cover: ell^{e_t} g_t.
  std::vector<Vec> cover_relations() const {
    std::vector<Vec> out;
    for (std::size_t t = 0; t < rank(); ++t)
      if (exps[t] < R.k()) {
        Vec v(rank(), 0);
        v[t] = R.pow(exps[t]);
        out.push_back(v);
      }
    return out;
  }
  int cover_log_excess() const {
    int s = 0;
    for (int e : exps) s += R.k() - e;
    return s;
  }

  // Elements by mixed-radix index (first coordinate fastest).
  u64 size_u64() const {
    u64 s = 1;
    for (int e : exps) {
      const u64 p = R.pow(e);
      if (s > (u64{1} << 62) / p) throw BoundError("module too large to enumerate");
      s *= p;
    }
    return s;
  }
  Vec element_at(u64 idx) const {
    Vec v(rank());
    for (std::size_t t = 0; t < rank(); ++t) {
      const u64 p = R.pow(exps[t]);
      v[t] = idx % p;
      idx /= p;
    }
    return v;
  }
  u64 index_of(const Vec& v) const {
    u64 idx = 0, mult = 1;
    for (std::size_t t = 0; t < rank(); ++t) {
      idx += (v[t] % R.pow(exps[t])) * mult;
      mult *= R.pow(exps[t]);
    }
    return idx;
  }
};

// log_ell |subgroup of X generated by vs|.
inline int module_span_log_order(const FiniteModule& X, const std::vector<Vec>& vs) {
  std::vector<Vec> all = vs;
  for (Vec& r : X.cover_relations()) all.push_back(std::move(r));
  return span_log_order(all, X.rank(), X.R) - X.cover_log_excess();
}

// log_ell |{x in X : F x = 0 in Y}| for a matrix F from X-coordinates to Y-coordinates.
inline int module_kernel_log_order(const FiniteModule& X, const Mat& F, const std::vector<int>& target_exps) {
  if (X.rank() == 0) return 0;
  if (F.rows == 0) return X.log_order();
  CyclicBasis kb = kernel(F, X.R, &target_exps);
  return kb.log_order() - X.cover_log_excess();
}

// log_ell |X^{H}| for a subgroup H of Gamma.
inline int fixed_log_order(const FiniteModule& X, const Subgroup& H) {
  std::vector<int> gens = subgroup_generators(H);
  if (gens.empty() || X.rank() == 0) return X.log_order();
  const std::size_t r = X.rank();
  Mat F(r * gens.size(), r);
  std::vector<int> texps;
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const Mat& A = X.action[static_cast<std::size_t>(gens[s])];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) F(s * r + i, j) = X.R.sub(A(i, j), i == j ? 1 : 0);
      texps.push_back(X.exps[i]);
    }
  }
  return module_kernel_log_order(X, F, texps);
}

// Result of presenting a subquotient L/K of an ambient (Z/ell^k)^D carrying a
// (lifted) Gamma-action. `project` maps ambient vectors of L to module coordinates.
struct Presentation {
  FiniteModule module;
  bool whole = true;
  Mat U1;
  std::vector<std::size_t> keep1;
  std::vector<int> a1;
  Mat U2;
  std::vector<std::size_t> keep2;

  Vec coords_in_L(const Vec& w) const {
    if (whole) return w;
    const Zmod& R = module.R;
    Vec u = mat_vec(U1, w, R);
    Vec y(keep1.size());
    for (std::size_t i = 0; i < keep1.size(); ++i) y[i] = u[keep1[i]] / R.pow(a1[i]);
    return y;
  }
  Vec project(const Vec& w) const {
    Vec y = coords_in_L(w);
    Vec z = mat_vec(U2, y, module.R);
    Vec out(keep2.size());
    for (std::size_t i = 0; i < keep2.size(); ++i) out[i] = z[keep2[i]];
    return module.reduce(out);
  }
};

// L = span(sub_gens) (or everything when whole_ambient), K = span(rel_gens) subset of L.
// ambient_action[g] must map L into L and K into K.
inline Presentation subquotient(const GroupPtr& gamma, const Zmod& R, std::size_t D,
                                const std::vector<Mat>& ambient_action, bool whole_ambient,
                                const std::vector<Vec>& sub_gens, const std::vector<Vec>& rel_gens) {
  Presentation P;
  P.whole = whole_ambient;
  P.module.gamma = gamma;
  P.module.R = R;
  const int k = R.k();
  const std::size_t ng = static_cast<std::size_t>(gamma->order());

  std::size_t s = D;
  std::vector<Mat> lift_action;
  std::vector<Vec> rels;
  if (whole_ambient) {
    lift_action = ambient_action;
    rels = rel_gens;
  } else {
    if (!sub_gens.empty() && D > 0) {
      SmithForm sf = smith_form(Mat::from_columns(D, sub_gens), R, {.U = true, .Uinv = true});
      P.U1 = sf.U;
      std::vector<Vec> hs;
      std::vector<int> orders;
      for (std::size_t t = 0; t < sf.vals.size(); ++t) {
        if (sf.vals[t] >= k) continue;
        P.keep1.push_back(t);
        P.a1.push_back(sf.vals[t]);
        hs.push_back(vec_scale(sf.Uinv.column(t), R.pow(sf.vals[t]), R));
        orders.push_back(k - sf.vals[t]);
      }
      s = hs.size();
      for (std::size_t g = 0; g < ng; ++g) {
        Mat m(s, s);
        for (std::size_t t = 0; t < s; ++t) m.set_column(t, P.coords_in_L(mat_vec(ambient_action[g], hs[t], R)));
        lift_action.push_back(std::move(m));
      }
      for (std::size_t t = 0; t < s; ++t)
        if (orders[t] < k) {
          Vec e(s, 0);
          e[t] = R.pow(orders[t]);
          rels.push_back(e);
        }
      for (const Vec& r : rel_gens) rels.push_back(P.coords_in_L(r));
    } else {
      s = 0;
      lift_action.assign(ng, Mat(0, 0));
    }
  }

  if (s == 0) {
    P.U2 = Mat(0, 0);
    P.module.action.assign(ng, Mat(0, 0));
    return P;
  }
  std::vector<int> vals;
  Mat Uinv;
  if (rels.empty()) {
    P.U2 = Mat::identity(s);
    Uinv = Mat::identity(s);
  } else {
    SmithForm sf = smith_form(Mat::from_columns(s, rels), R, {.U = true, .Uinv = true});
    P.U2 = std::move(sf.U);
    Uinv = std::move(sf.Uinv);
    vals = std::move(sf.vals);
  }
  for (std::size_t t = 0; t < s; ++t) {
    const int e = t < vals.size() ? vals[t] : k;
    if (e == 0) continue;
    P.keep2.push_back(t);
    P.module.exps.push_back(e);
  }
  const std::size_t r = P.keep2.size();
  for (std::size_t g = 0; g < ng; ++g) {
    Mat full = mat_mul(mat_mul(P.U2, lift_action[g], R), Uinv, R);
    Mat a(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) a(i, j) = full(P.keep2[i], P.keep2[j]) % R.pow(P.module.exps[i]);
    P.module.action.push_back(std::move(a));
  }
  return P;
}

// Quotient of the free (Z/ell^k)^D by the Gamma-closure of the relation vectors.
inline Presentation cokernel_presentation(const GroupPtr& gamma, const Zmod& R, std::size_t D,
                                          const std::vector<Mat>& action, const std::vector<Vec>& relators) {
  std::vector<Vec> rels;
  for (const Vec& x : relators)
    for (int g = 0; g < gamma->order(); ++g) {
      Vec y = mat_vec(action[static_cast<std::size_t>(g)], x, R);
      if (!is_zero(y)) rels.push_back(std::move(y));
    }
  return subquotient(gamma, R, D, action, true, {}, rels);
}

inline FiniteModule direct_sum(const FiniteModule& X, const FiniteModule& Y) {
  FiniteModule Z;
  Z.gamma = X.gamma;
  Z.R = X.R;
  Z.exps = X.exps;
  Z.exps.insert(Z.exps.end(), Y.exps.begin(), Y.exps.end());
  const std::size_t a = X.rank(), b = Y.rank();
  for (std::size_t g = 0; g < static_cast<std::size_t>(X.gamma->order()); ++g) {
    Mat m(a + b, a + b);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) m(i, j) = X.action[g](i, j);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) m(a + i, a + j) = Y.action[g](i, j);
    Z.action.push_back(std::move(m));
  }
  return Z;
}

inline FiniteModule zero_module(const GroupPtr& gamma, const Zmod& R) {
  FiniteModule Z;
  Z.gamma = gamma;
  Z.R = R;
  Z.action.assign(static_cast<std::size_t>(gamma->order()), Mat(0, 0));
  return Z;
}

inline bool module_has_exponent_at_most(const FiniteModule& X, int k) {
  for (int e : X.exps)
    if (e > k) return false;
  return true;
}

}  // namespace rgm
