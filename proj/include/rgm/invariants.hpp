#pragma once

// Classification and counting for finite B-modules.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rgm/finite_module.hpp"
#include "rgm/group_ring.hpp"
#include "rgm/irreducible.hpp"
#include "rgm/numeric.hpp"

namespace rgm {

// d[i][j-1] = multiplicity of S_i in ell^{j-1} X / ell^j X.
struct Fingerprint {
  int k = 1;
  std::vector<std::vector<int>> d;

  Fingerprint() = default;
  Fingerprint(std::size_t num_irreps, int k_) : k(k_), d(num_irreps, std::vector<int>(static_cast<std::size_t>(k_), 0)) {}

  int at(std::size_t i, int j) const { return j > k ? 0 : d[i][static_cast<std::size_t>(j - 1)]; }
  std::size_t num_irreps() const { return d.size(); }

  bool is_zero() const {
    for (const auto& row : d)
      for (int x : row)
        if (x != 0) return false;
    return true;
  }

  // Parts of the partition of block i, largest first.
  std::vector<int> parts(std::size_t i) const {
    std::vector<int> out;
    for (int a = k; a >= 1; --a) {
      const int cnt = at(i, a) - at(i, a + 1);
      for (int c = 0; c < cnt; ++c) out.push_back(a);
    }
    return out;
  }
  int total(std::size_t i) const {
    int s = 0;
    for (int x : d[i]) s += x;
    return s;
  }

  static Fingerprint from_parts(const std::vector<std::vector<int>>& parts, int k) {
    Fingerprint f(parts.size(), k);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int a : parts[i]) {
        if (a < 1 || a > k) throw ConfigError("partition part out of range [1, k]");
        for (int j = 1; j <= a; ++j) ++f.d[i][static_cast<std::size_t>(j - 1)];
      }
    return f;
  }

  // "0" for the trivial module, otherwise e.g. "S1:2.1|S2:1".
  std::string class_id() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      auto p = parts(i);
      if (p.empty()) continue;
      if (!first) os << '|';
      first = false;
      os << 'S' << i << ':';
      for (std::size_t t = 0; t < p.size(); ++t) os << (t ? "." : "") << p[t];
    }
    return first ? "0" : os.str();
  }

  static Fingerprint parse(const std::string& id, std::size_t num_irreps, int k) {
    std::vector<std::vector<int>> parts(num_irreps);
    if (id != "0") {
      std::stringstream ss(id);
      std::string block;
      while (std::getline(ss, block, '|')) {
        const auto colon = block.find(':');
        if (block.empty() || block[0] != 'S' || colon == std::string::npos)
          throw ConfigError("malformed class id '" + id + "'");
        std::size_t i = 0;
        try {
          i = std::stoul(block.substr(1, colon - 1));
        } catch (...) {
          throw ConfigError("malformed class id '" + id + "'");
        }
        if (i >= num_irreps) throw ConfigError("class id '" + id + "' names an unknown irreducible");
        std::stringstream ps(block.substr(colon + 1));
        std::string part;
        while (std::getline(ps, part, '.')) {
          try {
            parts[i].push_back(std::stoi(part));
          } catch (...) {
            throw ConfigError("malformed class id '" + id + "'");
          }
        }
      }
    }
    return from_parts(parts, k);
  }

  bool operator==(const Fingerprint& o) const { return k == o.k && d == o.d; }
  bool operator!=(const Fingerprint& o) const { return !(*this == o); }
  bool operator<(const Fingerprint& o) const { return std::tie(k, d) < std::tie(o.k, o.d); }
};

inline Fingerprint fingerprint(const FiniteModule& X, const RepresentationData& rd) {
  const int k = X.R.k();
  const Zmod& F = rd.field();
  const std::size_t ng = static_cast<std::size_t>(X.gamma->order());
  Fingerprint fp(rd.size(), k);
  for (int j = 1; j <= k; ++j) {
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < X.rank(); ++t)
      if (X.exps[t] >= j) idx.push_back(t);
    if (idx.empty()) break;
    const std::size_t L = idx.size();
    std::vector<Mat> layer(ng, Mat(L, L));
    for (std::size_t g = 0; g < ng; ++g)
      for (std::size_t a = 0; a < L; ++a)
        for (std::size_t b = 0; b < L; ++b) layer[g](a, b) = X.action[g](idx[a], idx[b]) % F.q();
    std::size_t covered = 0;
    for (std::size_t i = 0; i < rd.size(); ++i) {
      Mat M(L, L);
      const Vec& c = rd.central_idempotent(i);
      for (std::size_t g = 0; g < ng; ++g)
        if (c[g] != 0) M = mat_add(M, mat_scale(layer[g], c[g], F), F);
      const std::size_t r = rank_field(M, F);
      check_internal(r % rd[i].dim == 0, "isotypic rank not divisible by irreducible dimension");
      fp.d[i][static_cast<std::size_t>(j - 1)] = static_cast<int>(r / rd[i].dim);
      covered += r;
    }
    check_internal(covered == L, "layer not covered by isotypic components");
  }
  return fp;
}

// ---------------------------------------------------------------------------
// Closed forms from fingerprints.

inline int fp_log_order(const Fingerprint& f, const RepresentationData& rd) {
  int s = 0;
  for (std::size_t i = 0; i < f.num_irreps(); ++i) s += static_cast<int>(rd[i].dim) * f.total(i);
  return s;
}

inline Int fp_order(const Fingerprint& f, const RepresentationData& rd) { return ipow(rd.ell(), fp_log_order(f, rd)); }

inline int fp_hom_log(const Fingerprint& X, const Fingerprint& H, const RepresentationData& rd) {
  int s = 0;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    int e = 0;
    for (int j = 1; j <= std::max(X.k, H.k); ++j) e += X.at(i, j) * H.at(i, j);
    s += rd[i].endo_dim * e;
  }
  return s;
}

inline Int hom_count_closed(const Fingerprint& X, const Fingerprint& H, const RepresentationData& rd) {
  return ipow(rd.ell(), fp_hom_log(X, H, rd));
}

inline Int sur_count_closed(const Fingerprint& X, const Fingerprint& H, const RepresentationData& rd) {
  Int total = 1;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    const Int q = rd[i].endo_order;
    const std::vector<int> b = H.parts(i);
    long e = 0;
    for (int j = 1; j <= std::max(X.k, H.k); ++j) e += static_cast<long>(X.at(i, j)) * H.at(i, j);
    long csum = 0;
    Int block = 1;
    for (std::size_t t = 0; t < b.size(); ++t) {
      const long c = X.at(i, b[t]);
      if (c <= static_cast<long>(t)) return 0;
      csum += c;
      block *= ipow(q, c) - ipow(q, static_cast<long>(t));
    }
    total *= block * ipow(q, e - csum);
  }
  return total;
}

inline Int aut_count_closed(const Fingerprint& H, const RepresentationData& rd) { return sur_count_closed(H, H, rd); }

// Fingerprint of B_k^n.
inline Fingerprint free_fingerprint(std::size_t n, int k, const RepresentationData& rd) {
  Fingerprint f(rd.size(), k);
  for (std::size_t i = 0; i < rd.size(); ++i)
    if (rd[i].in_B)
      for (int j = 0; j < k; ++j) f.d[i][static_cast<std::size_t>(j)] = static_cast<int>(n) * rd[i].regular_multiplicity;
  return f;
}

// |Sur(B_k^n, H)|
inline Int sur_from_free_closed(std::size_t n, const Fingerprint& H, const RepresentationData& rd) {
  return sur_count_closed(free_fingerprint(n, H.k, rd), H, rd);
}

inline int fp_fixed_log(const Fingerprint& H, const Subgroup& sub, const RepresentationData& rd) {
  int s = 0;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    const int t = H.total(i);
    if (t) s += rd.fixed_dim(i, sub) * t;
  }
  return s;
}

inline bool fp_admissible(const Fingerprint& H) { return H.total(0) == 0; }

// m(C, n, H, S_i) = n r_i - #{parts of H_i equal to k}.
inline int relation_multiplicity_closed(std::size_t n, const Fingerprint& H, std::size_t i,
                                        const RepresentationData& rd) {
  if (!rd[i].in_B) return 0;
  return static_cast<int>(n) * rd[i].regular_multiplicity - H.at(i, H.k);
}

// lambda(C, H, S_i) = q_i^{-#{parts of H_i equal to k}}; 0 for the trivial irreducible.
inline Rational lambda_closed(const Fingerprint& H, std::size_t i, const RepresentationData& rd) {
  if (!rd[i].in_B) return Rational(0);
  return Rational(Int(1), ipow(rd[i].endo_order, H.at(i, H.k)));
}

// Minimal number of B-module generators.
inline int fp_rank(const Fingerprint& H, const RepresentationData& rd) {
  int r = 0;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    const int m = rd[i].regular_multiplicity;
    r = std::max(r, (H.at(i, 1) + m - 1) / m);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Explicit modules from fingerprints.

class ModuleFactory {
 public:
  ModuleFactory(RepPtr rd, int k) : rd_(std::move(rd)), R_(rd_->ell(), k) {}

  const Zmod& zmod() const { return R_; }
  const RepresentationData& rep() const { return *rd_; }

  FiniteModule build(const Fingerprint& f) const {
    FiniteModule X = zero_module(rd_->gamma(), R_);
    for (std::size_t i = 0; i < f.num_irreps(); ++i)
      for (int a : f.parts(i)) X = direct_sum(X, piece(i, a));
    return X;
  }

 private:
  const FiniteModule& piece(std::size_t i, int a) const {
    auto key = std::make_pair(i, a);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, projective_quotient(*rd_, i, a, R_)).first;
    return it->second;
  }

  RepPtr rd_;
  Zmod R_;
  mutable std::map<std::pair<std::size_t, int>, FiniteModule> cache_;
};

// ---------------------------------------------------------------------------
// Brute-force counting (independent of fingerprints).

// Gamma-generators of X chosen greedily among the cyclic generators.
inline std::vector<Vec> gamma_generators(const FiniteModule& X) {
  std::vector<Vec> gens, span;
  int cur = 0;
  for (std::size_t t = 0; t < X.rank(); ++t) {
    std::vector<Vec> trial = span;
    for (int g = 0; g < X.gamma->order(); ++g) trial.push_back(X.act(g, X.generator(t)));
    const int lo = module_span_log_order(X, trial);
    if (lo > cur) {
      gens.push_back(X.generator(t));
      span = std::move(trial);
      cur = lo;
    }
  }
  check_internal(cur == X.log_order(), "gamma generators do not span");
  return gens;
}

// Enumerates Gamma-homomorphisms X -> H by images of Gamma-generators of X.
class HomEnumerator {
 public:
  HomEnumerator(const FiniteModule& X, const FiniteModule& H) : X_(X), H_(H) {
    gens_ = gamma_generators(X);
    const std::size_t ng = static_cast<std::size_t>(X.gamma->order());
    const std::size_t cols = gens_.size() * ng;
    Mat psi(X.rank(), cols);
    for (std::size_t j = 0; j < gens_.size(); ++j)
      for (std::size_t g = 0; g < ng; ++g) psi.set_column(j * ng + g, X.act(static_cast<int>(g), gens_[j]));
    if (cols > 0 && X.rank() > 0) {
      CyclicBasis kb = kernel(psi, X.R, &X.exps);
      HowellForm hf = howell_form(kb.gens, cols, X.R);
      relations_ = hf.rows;
    }
    // express each cyclic generator in terms of the g * x_j
    express_ = Mat(cols, X.rank());
    for (std::size_t t = 0; t < X.rank(); ++t) {
      auto c = solve_mod(psi, X.generator(t), X.R, &X.exps);
      check_internal(c.has_value(), "generator not in span of gamma generators");
      express_.set_column(t, *c);
    }
  }

  std::size_t num_generators() const { return gens_.size(); }

  // Number of candidate tuples, saturating at cap + 1.
  u64 candidates(u64 cap) const {
    const u64 h = saturating_pow(H_.R.ell(), static_cast<unsigned>(H_.log_order()), cap);
    return saturating_pow(h, static_cast<unsigned>(gens_.size()), cap);
  }

  // Calls f(F) for every hom, F = matrix from X-coordinates to H-coordinates.
  void for_each(const std::function<void(const Mat&)>& f, u64 cap = 4000000) const {
    if (candidates(cap) > cap) throw BoundError("hom enumeration exceeds candidate bound");
    const std::size_t g = gens_.size();
    const std::size_t ng = static_cast<std::size_t>(X_.gamma->order());
    const u64 hsize = H_.size_u64();
    // orbit[h][gamma] for each element of H
    std::vector<std::vector<Vec>> orbit(hsize);
    for (u64 h = 0; h < hsize; ++h) {
      Vec v = H_.element_at(h);
      for (std::size_t a = 0; a < ng; ++a) orbit[h].push_back(H_.act(static_cast<int>(a), v));
    }
    std::vector<u64> choice(g, 0);
    const u64 total = candidates(cap);
    for (u64 code = 0; code < total; ++code) {
      u64 c = code;
      for (std::size_t j = 0; j < g; ++j) {
        choice[j] = c % hsize;
        c /= hsize;
      }
      bool ok = true;
      for (const Vec& kappa : relations_) {
        Vec s = H_.zero();
        for (std::size_t j = 0; j < g && ok; ++j)
          for (std::size_t a = 0; a < ng; ++a) {
            const u64 coef = kappa[j * ng + a];
            if (coef) s = H_.add(s, H_.scale(orbit[choice[j]][a], coef));
          }
        if (!is_zero(s)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Mat F(H_.rank(), X_.rank());
      for (std::size_t t = 0; t < X_.rank(); ++t) {
        Vec col = H_.zero();
        for (std::size_t j = 0; j < g; ++j)
          for (std::size_t a = 0; a < ng; ++a) {
            const u64 coef = express_(j * ng + a, t);
            if (coef) col = H_.add(col, H_.scale(orbit[choice[j]][a], coef));
          }
        F.set_column(t, col);
      }
      f(F);
    }
  }

 private:
  const FiniteModule& X_;
  const FiniteModule& H_;
  std::vector<Vec> gens_;
  std::vector<Vec> relations_;
  Mat express_;
};

// Image of a hom is all of H (Nakayama: test modulo ell).
inline bool hom_is_surjective(const Mat& F, const FiniteModule& H) {
  Zmod Fl(H.R.ell(), 1);
  Mat m = F;
  for (auto& x : m.a) x %= Fl.q();
  return rank_field(m, Fl) == H.rank();
}

inline Int hom_count_brute(const FiniteModule& X, const FiniteModule& H, u64 cap = 4000000) {
  Int n = 0;
  HomEnumerator(X, H).for_each([&](const Mat&) { ++n; }, cap);
  return n;
}

inline Int sur_count_brute(const FiniteModule& X, const FiniteModule& H, u64 cap = 4000000) {
  Int n = 0;
  HomEnumerator(X, H).for_each([&](const Mat& F) { n += hom_is_surjective(F, H) ? 1 : 0; }, cap);
  return n;
}

inline Int aut_count_brute(const FiniteModule& H, u64 cap = 4000000) { return sur_count_brute(H, H, cap); }

// Exact |Hom_Gamma(X, H)| as the order of a solution module of a linear system.
inline Int hom_count_linear(const FiniteModule& X, const FiniteModule& H, const std::vector<int>& gamma_gens) {
  const std::size_t rx = X.rank(), rh = H.rank(), nv = rx * rh;
  if (nv == 0) return 1;
  const Zmod& R = X.R;
  auto var = [&](std::size_t s, std::size_t t) { return s * rx + t; };
  Mat eq(nv * (1 + gamma_gens.size()), nv);
  std::vector<int> texps;
  // ell^{e_t(X)} F(s, t) = 0
  for (std::size_t s = 0; s < rh; ++s)
    for (std::size_t t = 0; t < rx; ++t) {
      eq(var(s, t), var(s, t)) = R.pow(X.exps[t]) % R.q();
      texps.push_back(H.exps[s]);
    }
  // A_H F - F A_X = 0
  for (std::size_t gi = 0; gi < gamma_gens.size(); ++gi) {
    const Mat& AH = H.action[static_cast<std::size_t>(gamma_gens[gi])];
    const Mat& AX = X.action[static_cast<std::size_t>(gamma_gens[gi])];
    const std::size_t base = nv * (1 + gi);
    for (std::size_t s = 0; s < rh; ++s)
      for (std::size_t t = 0; t < rx; ++t) {
        const std::size_t row = base + var(s, t);
        for (std::size_t u = 0; u < rh; ++u) eq(row, var(u, t)) = R.add(eq(row, var(u, t)), AH(s, u));
        for (std::size_t u = 0; u < rx; ++u) eq(row, var(s, u)) = R.sub(eq(row, var(s, u)), AX(u, t));
        texps.push_back(H.exps[s]);
      }
  }
  CyclicBasis kb = kernel(eq, R, &texps);
  int excess = 0;
  for (std::size_t s = 0; s < rh; ++s) excess += static_cast<int>(rx) * (R.k() - H.exps[s]);
  return ipow(R.ell(), kb.log_order() - excess);
}

enum class CountPath { Auto, Brute, Linear };

// Hom count without fingerprints: enumeration when small, otherwise the linear-system count.
inline Int hom_count_gamma(const FiniteModule& X, const FiniteModule& H, CountPath path = CountPath::Auto,
                           u64 cap = 200000) {
  if (path == CountPath::Brute) return hom_count_brute(X, H, cap);
  if (path == CountPath::Auto) {
    HomEnumerator he(X, H);
    if (he.candidates(cap) <= cap) {
      Int n = 0;
      he.for_each([&](const Mat&) { ++n; }, cap);
      return n;
    }
  }
  std::vector<int> gens;
  for (int g = 1; g < X.gamma->order(); ++g) gens.push_back(g);
  return hom_count_linear(X, H, gens);
}

// ---------------------------------------------------------------------------
// Fixed points, Y map, admissibility on explicit modules.

inline Int fixed_points_count(const FiniteModule& H, const Subgroup& sub) { return ipow(H.R.ell(), fixed_log_order(H, sub)); }

// |Y(H^{sub})| by enumerating H^{sub} and collecting (g h - h)_g.
inline Int y_image_size(const FiniteModule& H, const Subgroup& sub, u64 cap = 2000000) {
  const u64 n = H.size_u64();
  if (n > cap) throw BoundError("module too large for Y-image enumeration");
  std::set<std::vector<u64>> images;
  const int ng = H.gamma->order();
  for (u64 idx = 0; idx < n; ++idx) {
    Vec h = H.element_at(idx);
    bool fixed = true;
    for (int s : sub.members)
      if (H.act(s, h) != h) {
        fixed = false;
        break;
      }
    if (!fixed) continue;
    std::vector<u64> tup;
    for (int g = 0; g < ng; ++g) tup.push_back(H.index_of(H.sub(H.act(g, h), h)));
    images.insert(std::move(tup));
  }
  return Int(images.size());
}

// Coinvariants H_Gamma trivial, i.e. the elements g h - h span H.
inline bool is_admissible(const FiniteModule& H) {
  if (H.gamma->order() % static_cast<int>(H.R.ell()) == 0) return false;
  std::vector<Vec> vs;
  for (int g = 1; g < H.gamma->order(); ++g)
    for (std::size_t t = 0; t < H.rank(); ++t) vs.push_back(H.sub(H.act(g, H.generator(t)), H.generator(t)));
  return module_span_log_order(H, vs) == H.log_order();
}

// ---------------------------------------------------------------------------
// Relation module multiplicity via an explicit surjection B_k^n -> H.

inline int relation_multiplicity(const GroupRingB& ring, std::size_t n, const FiniteModule& H, std::size_t i,
                                 const RepresentationData& rd, std::mt19937_64& rng) {
  if (!rd[i].in_B) return 0;
  const std::size_t D = ring.dim(), N = n * D;
  const Zmod& R = ring.zmod();
  const int ng = ring.gamma()->order();
  // random tuple h_1..h_n with Gamma-span H
  std::vector<Vec> hs;
  bool found = H.rank() == 0;
  for (int attempt = 0; attempt < 2000 && !found; ++attempt) {
    hs.clear();
    std::vector<Vec> span;
    for (std::size_t b = 0; b < n; ++b) {
      Vec h(H.rank());
      for (std::size_t t = 0; t < H.rank(); ++t) h[t] = rng() % R.pow(H.exps[t]);
      hs.push_back(h);
      for (int g = 0; g < ng; ++g) span.push_back(H.act(g, h));
    }
    found = module_span_log_order(H, span) == H.log_order();
  }
  if (!found) throw PreconditionError("no surjection B_k^n -> H found (n too small?)");
  if (H.rank() == 0) hs.assign(n, Vec{});
  Mat phi(H.rank(), N);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t d = 0; d < D; ++d) {
      // (d - 1) h_b
      Vec img = H.sub(H.act(static_cast<int>(d + 1), hs[b]), hs[b]);
      phi.set_column(b * D + d, img);
    }
  CyclicBasis kb;
  if (H.rank() == 0) {
    for (std::size_t c = 0; c < N; ++c) {
      Vec e(N, 0);
      e[c] = 1;
      kb.gens.push_back(e);
      kb.exps.push_back(R.k());
    }
  } else {
    kb = kernel(phi, R, &H.exps);
  }
  Presentation P = subquotient(ring.gamma(), R, N, ring.module_actions(n), false, kb.gens, {});
  return fingerprint(P.module, rd).at(i, 1);
}

// ---------------------------------------------------------------------------
// lambda by enumerating extensions 0 -> S_i -> E -> H -> 0 of level C.

inline std::vector<std::vector<int>> partitions_with_total(int total, int max_part) {
  // partitions of `total` (sum of parts) into parts <= max_part, largest first
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxp) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(total, max_part);
  return out;
}

struct LambdaBruteResult {
  Rational lambda;
  int extension_classes = 0;  // number of E
  int pair_classes = 0;       // number of (E, pi) up to Aut(E)
};

inline LambdaBruteResult lambda_brute(const Fingerprint& H, std::size_t i, const ModuleFactory& mf,
                                      u64 cap = 4000000) {
  const RepresentationData& rd = mf.rep();
  LambdaBruteResult res;
  if (!rd[i].in_B) return res;
  const FiniteModule Hm = mf.build(H);
  // E has the composition factors of H plus one copy of S_i, per block.
  std::vector<std::vector<std::vector<int>>> choices(rd.size());
  for (std::size_t b = 0; b < rd.size(); ++b) {
    const int tot = H.total(b) + (b == i ? 1 : 0);
    choices[b] = partitions_with_total(tot, H.k);
  }
  std::vector<std::size_t> pick(rd.size(), 0);
  Rational sum = 0;
  while (true) {
    std::vector<std::vector<int>> parts(rd.size());
    for (std::size_t b = 0; b < rd.size(); ++b) parts[b] = choices[b][pick[b]];
    const FiniteModule E = mf.build(Fingerprint::from_parts(parts, H.k));
    ++res.extension_classes;
    std::vector<Mat> auts, surs;
    HomEnumerator(E, E).for_each([&](const Mat& F) {
      if (hom_is_surjective(F, E)) auts.push_back(F);
    }, cap);
    HomEnumerator(E, Hm).for_each([&](const Mat& F) {
      if (hom_is_surjective(F, Hm)) surs.push_back(F);
    }, cap);
    std::set<std::vector<u64>> seen;
    auto canon = [&](const Mat& F) {
      std::vector<u64> key = F.a;
      for (std::size_t s = 0; s < F.rows; ++s)
        for (std::size_t t = 0; t < F.cols; ++t) key[s * F.cols + t] %= Hm.R.pow(Hm.exps[s]);
      return key;
    };
    for (const Mat& pi : surs) {
      if (seen.count(canon(pi))) continue;
      int stab = 0;
      for (const Mat& a : auts) {
        const auto key = canon(mat_mul(pi, a, E.R));
        if (key == canon(pi)) ++stab;
        seen.insert(key);
      }
      ++res.pair_classes;
      sum += Rational(Int(1), Int(stab));
    }
    std::size_t b = 0;
    while (b < rd.size() && ++pick[b] == choices[b].size()) pick[b++] = 0;
    if (b == rd.size()) break;
  }
  res.lambda = sum * Rational(Int(rd[i].endo_order - 1));
  return res;
}

}  // namespace rgm
