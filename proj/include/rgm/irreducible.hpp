#pragma once

// Irreducible F_ell[Gamma]-modules (ell not dividing |Gamma|): Meataxe splitting
// of the regular module, isomorphism classes via Hom dimensions, central and
// primitive idempotents.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "rgm/finite_module.hpp"
#include "rgm/group.hpp"
#include "rgm/linalg.hpp"

namespace rgm {

// Representation over F_ell: one matrix per group element.
struct FieldRep {
  std::size_t dim = 0;
  std::vector<Mat> action;
};

struct IrreducibleModule {
  u64 ell = 2;
  std::size_t dim = 0;
  std::vector<Mat> action;
  int endo_dim = 1;          // dim over F_ell of End(S)
  u64 endo_order = 2;        // ell^endo_dim
  bool trivial = false;
  bool in_B = true;          // occurs in B/ell (every nontrivial irreducible does)
  int regular_multiplicity = 1;  // multiplicity in F_ell[Gamma] = dim / endo_dim

  FieldRep rep() const { return FieldRep{dim, action}; }
};

namespace poly {

using Poly = std::vector<u64>;  // low degree first, no trailing zeros (zero poly = {})

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mod(Poly a, const Poly& b, const Zmod& F) {
  trim(a);
  const u64 lead_inv = F.inv_unit(b.back());
  while (a.size() >= b.size()) {
    const u64 f = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(f, b[i]));
    trim(a);
  }
  return a;
}

inline bool divides(const Poly& p, const Poly& f, const Zmod& F) { return mod(f, p, F).empty(); }

// Characteristic polynomial via Hessenberg reduction.
inline Poly charpoly(Mat H, const Zmod& F) {
  const std::size_t n = H.rows;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && H(i, j) == 0) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(H(i, c), H(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(H(r, i), H(r, j + 1));
    }
    const u64 pinv = F.inv_unit(H(j + 1, j));
    for (std::size_t i2 = j + 2; i2 < n; ++i2) {
      const u64 u = F.mul(H(i2, j), pinv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) H(i2, c) = F.sub(H(i2, c), F.mul(u, H(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) H(r, j + 1) = F.add(H(r, j + 1), F.mul(u, H(r, i2)));
    }
  }
  std::vector<Poly> P(n + 1);
  P[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Poly cur(m + 1, 0);
    // (x - H[m-1][m-1]) P[m-1]
    for (std::size_t d = 0; d < P[m - 1].size(); ++d) {
      cur[d + 1] = F.add(cur[d + 1], P[m - 1][d]);
      cur[d] = F.sub(cur[d], F.mul(H(m - 1, m - 1), P[m - 1][d]));
    }
    u64 prod = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      prod = F.mul(prod, H(i, i - 1));
      const u64 c = F.mul(H(i - 1, m - 1), prod);
      if (c != 0)
        for (std::size_t d = 0; d < P[i - 1].size(); ++d) cur[d] = F.sub(cur[d], F.mul(c, P[i - 1][d]));
    }
    trim(cur);
    P[m] = cur;
  }
  return P[n];
}

inline Mat evaluate(const Poly& p, const Mat& A, const Zmod& F) {
  Mat acc(A.rows, A.cols);
  for (std::size_t d = p.size(); d-- > 0;) {
    acc = mat_mul(acc, A, F);
    for (std::size_t i = 0; i < A.rows; ++i) acc(i, i) = F.add(acc(i, i), p[d]);
  }
  return acc;
}

// Monic irreducible polynomials over F_ell of degree <= max_deg, skipping
// degrees with more than `cap` candidates.
inline std::vector<Poly> irreducibles_up_to(std::size_t max_deg, const Zmod& F, u64 cap = 20000) {
  std::vector<Poly> out;
  const u64 p = F.q();
  u64 count = 1;
  for (std::size_t d = 1; d <= max_deg; ++d) {
    if (count > cap / p) break;
    count *= p;
    for (u64 code = 0; code < count; ++code) {
      Poly f(d + 1, 0);
      u64 c = code;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[d] = 1;
      bool irr = true;
      for (const Poly& g : out) {
        if (2 * (g.size() - 1) > d) break;
        if (divides(g, f, F)) {
          irr = false;
          break;
        }
      }
      if (irr) out.push_back(f);
    }
  }
  return out;
}

}  // namespace poly

namespace detail {

// Submodule spanned by the orbit of v under the given matrices.
inline std::vector<Vec> spin(const std::vector<const Mat*>& gens, const Vec& v, std::size_t dim, const Zmod& F) {
  SubspaceBuilder sb(dim, F);
  if (!sb.add(v)) return {};
  for (std::size_t h = 0; h < sb.basis().size(); ++h) {
    const Vec cur = sb.basis()[h];
    for (const Mat* g : gens) sb.add(mat_vec(*g, cur, F));
  }
  return sb.basis();
}

// Basis change adapted to an invariant subspace W; returns (sub, quotient).
inline std::pair<FieldRep, FieldRep> split_rep(const FieldRep& V, const std::vector<Vec>& W, const Zmod& F) {
  const std::size_t d = V.dim, s = W.size();
  SubspaceBuilder sb(d, F);
  for (const Vec& w : W) sb.add(w);
  for (std::size_t i = 0; i < d && sb.size() < d; ++i) {
    Vec e(d, 0);
    e[i] = 1;
    sb.add(e);
  }
  Mat P = Mat::from_columns(d, sb.basis());
  Mat Pinv = *inverse_field(P, F);
  FieldRep sub{s, {}}, quo{d - s, {}};
  for (const Mat& A : V.action) {
    Mat B = mat_mul(mat_mul(Pinv, A, F), P, F);
    Mat a(s, s), b(d - s, d - s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) a(i, j) = B(i, j);
    for (std::size_t i = s; i < d; ++i)
      for (std::size_t j = s; j < d; ++j) b(i - s, j - s) = B(i, j);
    sub.action.push_back(std::move(a));
    quo.action.push_back(std::move(b));
  }
  return {std::move(sub), std::move(quo)};
}

inline std::vector<const Mat*> gen_ptrs(const FieldRep& V, const std::vector<int>& gens) {
  std::vector<const Mat*> out;
  for (int g : gens) out.push_back(&V.action[static_cast<std::size_t>(g)]);
  return out;
}

}  // namespace detail

// Exhaustive search for a proper nonzero invariant subspace (spins every
// nonzero vector up to scalars). Returns nullopt if V is irreducible.
inline std::optional<std::vector<Vec>> find_submodule_exhaustive(const FieldRep& V, const std::vector<int>& gens,
                                                                  const Zmod& F, u64 cap = 2000000) {
  const std::size_t d = V.dim;
  const u64 p = F.q();
  u64 total = checked_pow(p, static_cast<unsigned>(d), cap * p + 1);
  if (total > cap * p) throw BoundError("exhaustive invariant-subspace search too large");
  auto gp = detail::gen_ptrs(V, gens);
  for (u64 code = 1; code < total; ++code) {
    Vec v(d);
    u64 c = code;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = c % p;
      c /= p;
    }
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    std::vector<Vec> W = detail::spin(gp, v, d, F);
    if (W.size() < d) return W;
  }
  return std::nullopt;
}

inline bool is_irreducible_exhaustive(const FieldRep& V, const std::vector<int>& gens, const Zmod& F) {
  if (V.dim == 0) return false;
  return !find_submodule_exhaustive(V, gens, F).has_value();
}

// Meataxe step: a proper nonzero submodule, or nullopt when V is certified irreducible.
inline std::optional<std::vector<Vec>> meataxe_split(const FieldRep& V, const std::vector<int>& gens, const Zmod& F,
                                                     std::mt19937_64& rng) {
  const std::size_t d = V.dim;
  if (d <= 1) return std::nullopt;
  auto gp = detail::gen_ptrs(V, gens);
  std::vector<Mat> transposes;
  for (int g : gens) transposes.push_back(V.action[static_cast<std::size_t>(g)].transpose());
  std::vector<const Mat*> tp;
  for (const Mat& m : transposes) tp.push_back(&m);

  const std::vector<poly::Poly> irr = poly::irreducibles_up_to(d, F);
  std::uniform_int_distribution<u64> coef(0, F.q() - 1);
  for (int trial = 0; trial < 60; ++trial) {
    Mat theta(d, d);
    for (const Mat& A : V.action) theta = mat_add(theta, mat_scale(A, coef(rng), F), F);
    const poly::Poly chi = poly::charpoly(theta, F);
    for (const poly::Poly& p : irr) {
      if (!poly::divides(p, chi, F)) continue;
      const Mat pt = poly::evaluate(p, theta, F);
      std::vector<Vec> N = nullspace_field(pt, F);
      if (N.size() == p.size() - 1) {
        std::vector<Vec> W = detail::spin(gp, N[0], d, F);
        if (W.size() < d) return W;
        std::vector<Vec> NT = nullspace_field(pt.transpose(), F);
        std::vector<Vec> WT = detail::spin(tp, NT[0], d, F);
        if (WT.size() < d) {
          // annihilator of WT is invariant
          return nullspace_field(Mat::from_rows(d, WT), F);
        }
        return std::nullopt;
      }
      for (std::size_t i = 0; i < N.size() && i < 3; ++i) {
        std::vector<Vec> W = detail::spin(gp, N[i], d, F);
        if (W.size() < d) return W;
      }
    }
  }
  return find_submodule_exhaustive(V, gens, F);
}

// dim over F_ell of Hom_Gamma(S, T).
inline std::vector<Mat> hom_basis_field(const FieldRep& S, const FieldRep& T, const std::vector<int>& gens,
                                        const Zmod& F) {
  const std::size_t ds = S.dim, dt = T.dim, nu = ds * dt;
  if (nu == 0) return {};
  Mat eq(gens.size() * nu, nu);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Mat& RS = S.action[static_cast<std::size_t>(gens[g])];
    const Mat& RT = T.action[static_cast<std::size_t>(gens[g])];
    for (std::size_t i = 0; i < dt; ++i)
      for (std::size_t j = 0; j < ds; ++j) {
        const std::size_t row = g * nu + i * ds + j;
        for (std::size_t l = 0; l < dt; ++l) eq(row, l * ds + j) = F.add(eq(row, l * ds + j), RT(i, l));
        for (std::size_t l = 0; l < ds; ++l) eq(row, i * ds + l) = F.sub(eq(row, i * ds + l), RS(l, j));
      }
  }
  std::vector<Mat> out;
  for (const Vec& x : nullspace_field(eq, F)) {
    Mat X(dt, ds);
    X.a = x;
    out.push_back(std::move(X));
  }
  return out;
}

inline FieldRep regular_rep(const FiniteGroupTable& G) {
  const std::size_t n = static_cast<std::size_t>(G.order());
  FieldRep V{n, {}};
  for (int g = 0; g < G.order(); ++g) {
    Mat m(n, n);
    for (int d = 0; d < G.order(); ++d) m(static_cast<std::size_t>(G.mul(g, d)), static_cast<std::size_t>(d)) = 1;
    V.action.push_back(std::move(m));
  }
  return V;
}

inline void composition_factors(const FieldRep& V, const std::vector<int>& gens, const Zmod& F, std::mt19937_64& rng,
                                std::vector<FieldRep>& out) {
  if (V.dim == 0) return;
  std::optional<std::vector<Vec>> W = meataxe_split(V, gens, F, rng);
  if (!W) {
    out.push_back(V);
    return;
  }
  auto [sub, quo] = detail::split_rep(V, *W, F);
  composition_factors(sub, gens, F, rng, out);
  composition_factors(quo, gens, F, rng, out);
}

// Data attached to (Gamma, ell): irreducibles (trivial first), idempotents.
class RepresentationData {
 public:
  RepresentationData(GroupPtr gamma, u64 ell) : gamma_(std::move(gamma)), F_(ell, 1) {
    const int n = gamma_->order();
    if (n % static_cast<int>(ell) == 0)
      throw CoprimalityError("ell = " + std::to_string(ell) + " divides |Gamma| = " + std::to_string(n));
    gens_ = gamma_->generators();
    if (gens_.empty() && n > 1) gens_ = subgroup_generators(full_subgroup(gamma_));

    std::mt19937_64 rng(0x5eed0000ULL + ell * 1000003ULL + static_cast<u64>(n));
    std::vector<FieldRep> factors;
    composition_factors(regular_rep(*gamma_), gens_, F_, rng, factors);

    std::vector<FieldRep> classes;
    std::vector<int> counts;
    for (const FieldRep& f : factors) {
      bool found = false;
      for (std::size_t c = 0; c < classes.size() && !found; ++c)
        if (classes[c].dim == f.dim && !hom_basis_field(f, classes[c], gens_, F_).empty()) {
          ++counts[c];
          found = true;
        }
      if (!found) {
        classes.push_back(f);
        counts.push_back(1);
      }
    }
    // Order: trivial first, then by dimension, then by trace vector.
    std::vector<std::size_t> order(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t c) {
      std::vector<u64> kv;
      kv.push_back(is_trivial_rep(classes[c]) ? 0 : 1);
      kv.push_back(classes[c].dim);
      for (const Mat& A : classes[c].action) {
        u64 tr = 0;
        for (std::size_t i = 0; i < A.rows; ++i) tr = F_.add(tr, A(i, i));
        kv.push_back(tr);
      }
      return kv;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    std::size_t total = 0;
    for (std::size_t c : order) {
      IrreducibleModule S;
      S.ell = ell;
      S.dim = classes[c].dim;
      S.action = classes[c].action;
      S.endo_dim = static_cast<int>(hom_basis_field(classes[c], classes[c], gens_, F_).size());
      S.endo_order = checked_pow(ell, static_cast<unsigned>(S.endo_dim));
      S.trivial = is_trivial_rep(classes[c]);
      S.in_B = !S.trivial;
      S.regular_multiplicity = static_cast<int>(S.dim) / S.endo_dim;
      check_internal(S.regular_multiplicity == counts[c], "regular multiplicity mismatch");
      total += static_cast<std::size_t>(S.regular_multiplicity) * S.dim;
      irreps_.push_back(std::move(S));
    }
    check_internal(total == static_cast<std::size_t>(n), "regular module dimension count failed");
    check_internal(!irreps_.empty() && irreps_[0].trivial, "trivial irreducible missing");
    compute_idempotents();
  }

  const GroupPtr& gamma() const { return gamma_; }
  u64 ell() const { return F_.ell(); }
  const Zmod& field() const { return F_; }
  const std::vector<int>& gamma_generators() const { return gens_; }
  const std::vector<IrreducibleModule>& irreducibles() const { return irreps_; }
  std::size_t size() const { return irreps_.size(); }
  const IrreducibleModule& operator[](std::size_t i) const { return irreps_[i]; }

  // Central idempotent of block i: coefficients over group elements, in F_ell.
  const Vec& central_idempotent(std::size_t i) const { return central_[i]; }
  // A primitive idempotent e with F_ell[Gamma] e ~ S_i.
  const Vec& primitive_idempotent(std::size_t i) const { return primitive_[i]; }

  // Primitive idempotent lifted to (Z/ell^k)[Gamma].
  Vec lifted_primitive_idempotent(std::size_t i, const Zmod& R) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(i, R.k());
    auto it = lifted_.find(key);
    if (it != lifted_.end()) return it->second;
    Vec e = primitive_[i];
    for (int it2 = 0; it2 < 64; ++it2) {
      Vec e2 = group_ring_mul(e, e, R);
      if (e2 == e) break;
      Vec e3 = group_ring_mul(e2, e, R);
      Vec next(e.size());
      for (std::size_t j = 0; j < e.size(); ++j) next[j] = R.sub(R.mul(3, e2[j]), R.mul(2, e3[j]));
      e = std::move(next);
    }
    check_internal(group_ring_mul(e, e, R) == e, "idempotent lift did not converge");
    lifted_.emplace(key, e);
    return e;
  }

  // dim over F_ell of S_i^H.
  int fixed_dim(std::size_t i, const Subgroup& H) const {
    const IrreducibleModule& S = irreps_[i];
    std::vector<int> hg = subgroup_generators(H);
    if (hg.empty()) return static_cast<int>(S.dim);
    Mat eq(S.dim * hg.size(), S.dim);
    for (std::size_t s = 0; s < hg.size(); ++s) {
      const Mat& A = S.action[static_cast<std::size_t>(hg[s])];
      for (std::size_t r = 0; r < S.dim; ++r)
        for (std::size_t c = 0; c < S.dim; ++c) eq(s * S.dim + r, c) = F_.sub(A(r, c), r == c ? 1 : 0);
    }
    return static_cast<int>(S.dim - rank_field(eq, F_));
  }

  Vec group_ring_mul(const Vec& a, const Vec& b, const Zmod& R) const {
    const int n = gamma_->order();
    Vec c(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
      if (a[static_cast<std::size_t>(x)] == 0) continue;
      for (int y = 0; y < n; ++y) {
        const std::size_t z = static_cast<std::size_t>(gamma_->mul(x, y));
        c[z] = (c[z] + a[static_cast<std::size_t>(x)] * b[static_cast<std::size_t>(y)]) % R.q();
      }
    }
    return c;
  }

 private:
  static bool is_trivial_rep(const FieldRep& V) {
    if (V.dim != 1) return false;
    for (const Mat& A : V.action)
      if (A(0, 0) != 1) return false;
    return true;
  }

  void compute_idempotents() {
    const std::size_t n = static_cast<std::size_t>(gamma_->order());
    // sum_g c_g rho_j(g) = delta_ij I
    std::size_t nrows = 0;
    for (const auto& S : irreps_) nrows += S.dim * S.dim;
    Mat A(nrows, n);
    std::size_t row = 0;
    for (const auto& S : irreps_)
      for (std::size_t r = 0; r < S.dim; ++r)
        for (std::size_t c = 0; c < S.dim; ++c, ++row)
          for (std::size_t g = 0; g < n; ++g) A(row, g) = S.action[g](r, c);
    for (std::size_t i = 0; i < irreps_.size(); ++i) {
      Vec b(nrows, 0);
      std::size_t off = 0;
      for (std::size_t j = 0; j < irreps_.size(); ++j) {
        const std::size_t d = irreps_[j].dim;
        if (j == i)
          for (std::size_t r = 0; r < d; ++r) b[off + r * d + r] = 1;
        off += d * d;
      }
      std::optional<Vec> c = solve_field(A, b, F_);
      check_internal(c.has_value(), "central idempotent system is inconsistent");
      central_.push_back(*c);
    }

    const FieldRep reg = regular_rep(*gamma_);
    for (std::size_t i = 0; i < irreps_.size(); ++i) {
      const FieldRep S = irreps_[i].rep();
      std::vector<Mat> embeds = hom_basis_field(S, reg, gens_, F_);
      check_internal(!embeds.empty(), "irreducible does not embed in the regular module");
      const Mat& phi = embeds[0];  // n x dim
      // find s with rho_S(phi(b)) s = b for every basis vector b
      const std::size_t d = S.dim;
      Mat eq(d * d, d);
      Vec rhs(d * d, 0);
      for (std::size_t b = 0; b < d; ++b) {
        Mat M(d, d);
        for (std::size_t g = 0; g < n; ++g)
          if (phi(g, b) != 0) M = mat_add(M, mat_scale(S.action[g], phi(g, b), F_), F_);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) eq(b * d + r, c) = M(r, c);
          rhs[b * d + r] = r == b ? 1 : 0;
        }
      }
      std::optional<Vec> s = solve_field(eq, rhs, F_);
      check_internal(s.has_value(), "projection onto irreducible not found");
      Vec e = mat_vec(phi, *s, F_);
      check_internal(group_ring_mul(e, e, F_) == e, "primitive idempotent check failed");
      primitive_.push_back(std::move(e));
    }
  }

  GroupPtr gamma_;
  Zmod F_;
  std::vector<int> gens_;
  std::vector<IrreducibleModule> irreps_;
  std::vector<Vec> central_;
  std::vector<Vec> primitive_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, int>, Vec> lifted_;
};

using RepPtr = std::shared_ptr<const RepresentationData>;

inline RepPtr make_representation_data(GroupPtr gamma, u64 ell) {
  return std::make_shared<const RepresentationData>(std::move(gamma), ell);
}

inline std::vector<IrreducibleModule> irreducible_modules(GroupPtr gamma, u64 ell) {
  return RepresentationData(std::move(gamma), ell).irreducibles();
}

// P_i / ell^a as an explicit module over Z/ell^k (a <= k).
inline FiniteModule projective_quotient(const RepresentationData& rd, std::size_t i, int a, const Zmod& R) {
  const GroupPtr& G = rd.gamma();
  const std::size_t n = static_cast<std::size_t>(G->order());
  std::vector<Mat> act;
  for (int g = 0; g < G->order(); ++g) {
    Mat m(n, n);
    for (int d = 0; d < G->order(); ++d) m(static_cast<std::size_t>(G->mul(g, d)), static_cast<std::size_t>(d)) = 1;
    act.push_back(std::move(m));
  }
  Vec e = rd.lifted_primitive_idempotent(i, R);
  Vec one_minus_e(n);
  for (std::size_t j = 0; j < n; ++j) one_minus_e[j] = R.sub(j == 0 ? 1 : 0, e[j]);
  std::vector<Vec> rels{one_minus_e};
  if (a < R.k())
    for (std::size_t j = 0; j < n; ++j) {
      Vec v(n, 0);
      v[j] = R.pow(a);
      rels.push_back(v);
    }
  return cokernel_presentation(G, R, n, act, rels).module;
}

}  // namespace rgm
