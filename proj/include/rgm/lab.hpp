#pragma once

// Exhaustive checks on small, possibly nonabelian, groups with a Gamma-action.

#include <functional>
#include <json.hpp>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rgm/group.hpp"
#include "rgm/numeric.hpp"

namespace rgm {

inline constexpr int kLabOrderBound = 343;

// G with Gamma acting by automorphisms; action[g] is a permutation of G's elements.
class SmallGammaGroup {
 public:
  SmallGammaGroup(GroupPtr G, GroupPtr gamma, std::vector<Perm> action, std::string name = "")
      : G_(std::move(G)), gamma_(std::move(gamma)), action_(std::move(action)), name_(std::move(name)) {
    if (G_->order() > kLabOrderBound) throw BoundError("lab group order exceeds " + std::to_string(kLabOrderBound));
    validate();
  }

  // Action given on the generators of Gamma, extended multiplicatively.
  static SmallGammaGroup from_generator_images(GroupPtr G, GroupPtr gamma, const std::vector<Perm>& gen_images,
                                               std::string name = "") {
    const auto& gens = gamma->generators();
    if (gens.size() != gen_images.size()) throw ConfigError("one automorphism per generator of Gamma is required");
    const int n = gamma->order();
    std::vector<Perm> act(static_cast<std::size_t>(n));
    Perm id(static_cast<std::size_t>(G->order()));
    std::iota(id.begin(), id.end(), 0);
    act[0] = id;
    std::vector<int> queue{0};
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    seen[0] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int x = queue[h];
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const int y = gamma->mul(x, gens[gi]);
        if (seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = true;
        Perm p(id.size());
        // act(x g) = act(x) o act(g)
        for (std::size_t e = 0; e < id.size(); ++e)
          p[e] = act[static_cast<std::size_t>(x)][static_cast<std::size_t>(gen_images[gi][e])];
        act[static_cast<std::size_t>(y)] = std::move(p);
        queue.push_back(y);
      }
    }
    return SmallGammaGroup(std::move(G), std::move(gamma), std::move(act), std::move(name));
  }

  const GroupPtr& group() const { return G_; }
  const GroupPtr& gamma() const { return gamma_; }
  const std::string& name() const { return name_; }
  int order() const { return G_->order(); }
  int act(int gamma_el, int x) const {
    return action_[static_cast<std::size_t>(gamma_el)][static_cast<std::size_t>(x)];
  }
  bool abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = 0; b < a; ++b)
        if (G_->mul(a, b) != G_->mul(b, a)) return false;
    return true;
  }
  bool coprime() const { return std::gcd(order(), gamma_->order()) == 1; }

 private:
  void validate() const {
    const int n = G_->order(), ng = gamma_->order();
    if (static_cast<int>(action_.size()) != ng) throw ConfigError("action must list one permutation per Gamma element");
    for (const Perm& p : action_) {
      if (static_cast<int>(p.size()) != n) throw ConfigError("action permutation has wrong size");
      std::vector<bool> hit(static_cast<std::size_t>(n), false);
      for (int x : p) {
        if (x < 0 || x >= n || hit[static_cast<std::size_t>(x)]) throw ConfigError("action map is not a bijection");
        hit[static_cast<std::size_t>(x)] = true;
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (p[static_cast<std::size_t>(G_->mul(a, b))] != G_->mul(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]))
            throw ConfigError("action map is not an automorphism");
    }
    for (int x = 0; x < n; ++x)
      if (action_[0][static_cast<std::size_t>(x)] != x) throw ConfigError("identity of Gamma must act trivially");
    for (int g = 0; g < ng; ++g)
      for (int h = 0; h < ng; ++h)
        for (int x = 0; x < n; ++x)
          if (act(gamma_->mul(g, h), x) != act(g, act(h, x))) throw ConfigError("action is not a homomorphism");
  }

  GroupPtr G_;
  GroupPtr gamma_;
  std::vector<Perm> action_;
  std::string name_;
};

// (g^{-1} gamma(g))_{gamma in Gamma}
inline std::vector<int> y_map(int g, const SmallGammaGroup& grp) {
  std::vector<int> out;
  const auto& G = *grp.group();
  for (int c = 0; c < grp.gamma()->order(); ++c) out.push_back(G.mul(G.inv(g), grp.act(c, g)));
  return out;
}

inline std::vector<int> fixed_elements(const SmallGammaGroup& grp, const Subgroup& sub) {
  std::vector<int> out;
  for (int x = 0; x < grp.order(); ++x) {
    bool fixed = true;
    for (int c : sub.members) fixed = fixed && grp.act(c, x) == x;
    if (fixed) out.push_back(x);
  }
  return out;
}

inline int y_image_size(const SmallGammaGroup& grp, const Subgroup& sub) {
  std::set<std::vector<int>> img;
  for (int x : fixed_elements(grp, sub)) img.insert(y_map(x, grp));
  return static_cast<int>(img.size());
}

// ---------------------------------------------------------------------------
// A group given by multiplication/inverse/Gamma-action callbacks, so that products
// G^m need no full table.

struct GammaGroupOps {
  int order = 1;
  int gamma_order = 1;
  std::vector<int> gamma_gens;
  std::vector<int> group_gens;
  std::function<int(int, int)> mul;
  std::function<int(int)> inv;
  std::function<int(int, int)> act;  // (gamma, x)
};

inline GammaGroupOps ops_of(const SmallGammaGroup& grp) {
  GammaGroupOps o;
  auto G = grp.group();
  o.order = grp.order();
  o.gamma_order = grp.gamma()->order();
  o.gamma_gens = grp.gamma()->generators();
  o.group_gens = G->generators();
  o.mul = [G](int a, int b) { return G->mul(a, b); };
  o.inv = [G](int a) { return G->inv(a); };
  o.act = [&grp](int c, int x) { return grp.act(c, x); };
  return o;
}

// G^m with the diagonal action; element = sum_t x_t |G|^t.
inline GammaGroupOps power_ops(const SmallGammaGroup& grp, int m) {
  GammaGroupOps o;
  auto G = grp.group();
  const int g = grp.order();
  int N = 1;
  for (int t = 0; t < m; ++t) {
    if (N > 1000000 / g) throw BoundError("G^m too large for the lab");
    N *= g;
  }
  o.order = N;
  o.gamma_order = grp.gamma()->order();
  o.gamma_gens = grp.gamma()->generators();
  for (int t = 0, base = 1; t < m; ++t, base *= g)
    for (int x : G->generators()) o.group_gens.push_back(x * base);
  auto coordwise = [g, m](int a, int b, const std::function<int(int, int)>& f) {
    int out = 0;
    for (int t = 0, base = 1; t < m; ++t, base *= g) {
      out += f(a % g, b % g) * base;
      a /= g;
      b /= g;
    }
    return out;
  };
  o.mul = [G, coordwise](int a, int b) { return coordwise(a, b, [&](int x, int y) { return G->mul(x, y); }); };
  o.inv = [G, coordwise](int a) { return coordwise(a, 0, [&](int x, int) { return G->inv(x); }); };
  o.act = [&grp, coordwise](int c, int a) { return coordwise(a, 0, [&](int x, int) { return grp.act(c, x); }); };
  return o;
}

// Lattice of Gamma-invariant normal subgroups, built on demand.
class NormalLattice {
 public:
  explicit NormalLattice(GammaGroupOps ops) : ops_(std::move(ops)) {
    trivial_ = intern({0});
  }

  const GammaGroupOps& ops() const { return ops_; }
  int trivial() const { return trivial_; }
  const std::vector<int>& members(int id) const { return subs_[static_cast<std::size_t>(id)]; }
  int size_of(int id) const { return static_cast<int>(members(id).size()); }
  std::size_t count() const { return subs_.size(); }

  // Gamma-invariant normal closure of a set of elements.
  int closure(const std::vector<int>& seeds) {
    std::vector<char> in(static_cast<std::size_t>(ops_.order), 0);
    std::vector<int> elems{0}, gens;
    in[0] = 1;
    std::vector<int> pending(seeds.begin(), seeds.end());
    while (!pending.empty()) {
      const int s = pending.back();
      pending.pop_back();
      if (in[static_cast<std::size_t>(s)]) continue;
      gens.push_back(s);
      // extend the subgroup by the new generator
      for (std::size_t h = 0; h < elems.size(); ++h)
        for (int gi : gens) {
          const int y = ops_.mul(elems[h], gi);
          if (!in[static_cast<std::size_t>(y)]) {
            in[static_cast<std::size_t>(y)] = 1;
            elems.push_back(y);
          }
        }
      // conjugates and Gamma-images of generators must lie inside
      for (int gi : gens) {
        for (int x : ops_.group_gens) {
          const int c = ops_.mul(ops_.mul(ops_.inv(x), gi), x);
          if (!in[static_cast<std::size_t>(c)]) pending.push_back(c);
        }
        for (int c : ops_.gamma_gens) {
          const int y = ops_.act(c, gi);
          if (!in[static_cast<std::size_t>(y)]) pending.push_back(y);
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return intern(elems);
  }

  int element_closure(int x) {
    auto it = elem_cache_.find(x);
    if (it != elem_cache_.end()) return it->second;
    const int id = closure({x});
    elem_cache_.emplace(x, id);
    return id;
  }

  int join(int a, int b) {
    if (a == b || b == trivial_) return a;
    if (a == trivial_) return b;
    auto key = std::minmax(a, b);
    auto it = join_cache_.find(key);
    if (it != join_cache_.end()) return it->second;
    const auto& A = members(a);
    const auto& B = members(b);
    int id;
    if (std::includes(A.begin(), A.end(), B.begin(), B.end())) {
      id = a;
    } else if (std::includes(B.begin(), B.end(), A.begin(), A.end())) {
      id = b;
    } else {
      std::vector<int> seeds = A;
      seeds.insert(seeds.end(), B.begin(), B.end());
      id = closure(seeds);
    }
    join_cache_.emplace(key, id);
    return id;
  }

  // Every Gamma-invariant normal subgroup.
  std::vector<int> all() {
    std::vector<int> cl;
    for (int x = 0; x < ops_.order; ++x) cl.push_back(element_closure(x));
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    std::set<int> found{trivial_};
    std::vector<int> queue{trivial_};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (int c : cl) {
        const int j = join(queue[h], c);
        if (found.insert(j).second) queue.push_back(j);
      }
    return {found.begin(), found.end()};
  }

 private:
  int intern(const std::vector<int>& members) {
    auto it = index_.find(members);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(subs_.size());
    subs_.push_back(members);
    index_.emplace(members, id);
    return id;
  }

  GammaGroupOps ops_;
  int trivial_ = 0;
  std::vector<std::vector<int>> subs_;
  std::map<std::vector<int>, int> index_;
  std::map<int, int> elem_cache_;
  std::map<std::pair<int, int>, int> join_cache_;
};

// |G / <<g^{-1} gamma(g)>>|
inline int coinvariants(const SmallGammaGroup& grp) {
  NormalLattice L(ops_of(grp));
  std::vector<int> seeds;
  for (int x = 0; x < grp.order(); ++x)
    for (int y : y_map(x, grp)) seeds.push_back(y);
  return grp.order() / L.size_of(L.closure(seeds));
}

// |End| of an abelian group with Gamma-action (Gamma-equivariant endomorphisms).
inline Int endomorphism_count(const SmallGammaGroup& grp) {
  const auto& G = *grp.group();
  const std::vector<int>& gens = G.generators();
  const int n = G.order();
  // BFS spanning tree from the identity over the generators
  std::vector<int> via_parent(static_cast<std::size_t>(n), -1), via_gen(static_cast<std::size_t>(n), -1), order{0};
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  seen[0] = true;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const int y = G.mul(order[h], gens[gi]);
      if (seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = true;
      via_parent[static_cast<std::size_t>(y)] = order[h];
      via_gen[static_cast<std::size_t>(y)] = static_cast<int>(gi);
      order.push_back(y);
    }
  Int count = 0;
  std::vector<int> img(gens.size(), 0);
  u64 total = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) total *= static_cast<u64>(n);
  if (total > 10000000) throw BoundError("endomorphism enumeration too large");
  for (u64 code = 0; code < total; ++code) {
    u64 c = code;
    for (auto& v : img) {
      v = static_cast<int>(c % static_cast<u64>(n));
      c /= static_cast<u64>(n);
    }
    std::vector<int> f(static_cast<std::size_t>(n), 0);
    for (std::size_t h = 1; h < order.size(); ++h) {
      const int y = order[h];
      f[static_cast<std::size_t>(y)] = G.mul(f[static_cast<std::size_t>(via_parent[static_cast<std::size_t>(y)])],
                                             img[static_cast<std::size_t>(via_gen[static_cast<std::size_t>(y)])]);
    }
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (std::size_t gi = 0; gi < gens.size() && ok; ++gi)
        ok = f[static_cast<std::size_t>(G.mul(x, gens[gi]))] == G.mul(f[static_cast<std::size_t>(x)], img[gi]);
    for (int x = 0; x < n && ok; ++x)
      for (int cg : grp.gamma()->generators())
        ok = ok && f[static_cast<std::size_t>(grp.act(cg, x))] == grp.act(cg, f[static_cast<std::size_t>(x)]);
    if (ok) ++count;
  }
  return count;
}

// No proper nontrivial Gamma-invariant normal subgroup.
inline bool is_gamma_irreducible(const SmallGammaGroup& grp) {
  if (grp.order() == 1) return false;
  NormalLattice L(ops_of(grp));
  return L.all().size() == 2;
}

inline bool is_power_of(const Int& x, const Int& h) {
  if (x < 1 || h < 2) return x == 1;
  Int y = x;
  while (y % h == 0) y /= h;
  return y == 1;
}

struct FixedPointPowers {
  bool ok = true;
  Int h = 1;
  std::vector<std::pair<int, int>> sizes;  // (|G^{Gamma_0}|, |Y(G^{Gamma_0})|) per subgroup
  bool y_identity = true;
};

inline FixedPointPowers verify_fixed_point_powers(const SmallGammaGroup& grp) {
  if (!grp.abelian()) throw PreconditionError("fixed-point powers need an abelian group");
  FixedPointPowers r;
  r.h = endomorphism_count(grp);
  const int full = static_cast<int>(fixed_elements(grp, full_subgroup(grp.gamma())).size());
  for (const auto& s : enumerate_subgroups(grp.gamma())) {
    const int f = static_cast<int>(fixed_elements(grp, s).size());
    const int y = y_image_size(grp, s);
    r.sizes.emplace_back(f, y);
    if (!is_power_of(f, r.h) || !is_power_of(y, r.h)) r.ok = false;
    if (y * full != f) r.y_identity = false;
  }
  r.ok = r.ok && r.y_identity;
  return r;
}

// Y-identity |Y(G^{Gamma_0})| = |G^{Gamma_0}| / |G^Gamma| for every subgroup.
inline bool verify_y_identity(const SmallGammaGroup& grp) {
  if (!grp.coprime()) throw CoprimalityError("|G| and |Gamma| are not coprime");
  const int full = static_cast<int>(fixed_elements(grp, full_subgroup(grp.gamma())).size());
  for (const auto& s : enumerate_subgroups(grp.gamma()))
    if (y_image_size(grp, s) * full != static_cast<int>(fixed_elements(grp, s).size())) return false;
  return true;
}

struct QuotientScan {
  bool admissible = false;              // coprime and <g^{-1} gamma(g)> = G
  bool coinvariants_trivial = false;    // <<g^{-1} gamma(g)>> = G
  int quotients = 0;                    // Gamma-invariant normal subgroups N
  int admissible_quotients = 0;
  bool closure_holds = true;            // admissible G => every G/N admissible
  bool criteria_agree = true;           // both admissibility tests agree on every G/N
};

// Admissibility of every Gamma-quotient G/N.
inline QuotientScan admissible_quotient_scan(const SmallGammaGroup& grp) {
  if (!grp.coprime()) throw CoprimalityError("|G| and |Gamma| are not coprime");
  QuotientScan r;
  NormalLattice L(ops_of(grp));
  const auto& G = *grp.group();
  std::vector<int> yel;
  for (int x = 0; x < grp.order(); ++x)
    for (int y : y_map(x, grp)) yel.push_back(y);
  std::sort(yel.begin(), yel.end());
  yel.erase(std::unique(yel.begin(), yel.end()), yel.end());
  const int C = L.closure(yel);
  // subgroup generated (no normal closure) by the Y-elements together with N
  auto generated_with = [&](const std::vector<int>& extra) {
    std::vector<int> gens = yel;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return static_cast<int>(generated_subgroup(grp.group(), gens).members.size());
  };
  r.coinvariants_trivial = L.size_of(C) == G.order();
  r.admissible = generated_with({}) == G.order();
  if (r.admissible != r.coinvariants_trivial) r.criteria_agree = false;
  for (int N : L.all()) {
    ++r.quotients;
    const bool by_coinv = L.size_of(L.join(N, C)) == G.order();
    const bool by_gen = generated_with(L.members(N)) == G.order();
    if (by_coinv != by_gen) r.criteria_agree = false;
    if (by_gen) ++r.admissible_quotients;
    if (r.admissible && !by_gen) r.closure_holds = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Probability that random relators normally generate R = G^m.

struct RelationProbability {
  Rational empirical = 0;  // exact count / number of tuples
  Rational formula = 0;
  bool equal = false;
  Int tuples = 0;
};

struct NormalGenerationInstance {
  const SmallGammaGroup* group = nullptr;
  int m = 1;
  int n = 1;
  SubgroupTuple gammas;  // (Gamma_1, ..., Gamma_{u+1})

  int u() const { return gammas.u(); }
  std::string label() const {
    std::string s = group->name() + " m=" + std::to_string(m) + " n=" + std::to_string(n) + " tuple=";
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      s += i ? "," : "";
      s += "{";
      for (std::size_t j = 0; j < gammas[i].members.size(); ++j) s += (j ? " " : "") + std::to_string(gammas[i].members[j]);
      s += "}";
    }
    return s;
  }
};

// Shared lattice data for R = G^m, reused across (n, tuple).
class RelationLab {
 public:
  RelationLab(const SmallGammaGroup& grp, int m) : grp_(grp), m_(m), L_(power_ops(grp, m)) {
    if (!grp.coprime()) throw CoprimalityError("|G| and |Gamma| are not coprime");
    full_ = L_.closure(L_.ops().group_gens);
    const auto& ops = L_.ops();
    y_contrib_.resize(static_cast<std::size_t>(ops.order));
    plain_contrib_.resize(static_cast<std::size_t>(ops.order));
    for (int r = 0; r < ops.order; ++r) {
      plain_contrib_[static_cast<std::size_t>(r)] = L_.element_closure(r);
      int acc = L_.trivial();
      for (int c = 0; c < ops.gamma_order; ++c) acc = L_.join(acc, L_.element_closure(ops.mul(ops.inv(r), ops.act(c, r))));
      y_contrib_[static_cast<std::size_t>(r)] = acc;
    }
    if (grp.abelian()) h_ = endomorphism_count(grp);
  }

  int m() const { return m_; }
  const SmallGammaGroup& group() const { return grp_; }

  std::vector<int> fixed_in_R(const Subgroup& s) const {
    std::vector<int> out;
    const auto& ops = L_.ops();
    for (int r = 0; r < ops.order; ++r) {
      bool fixed = true;
      for (int c : s.members) fixed = fixed && ops.act(c, r) == r;
      if (fixed) out.push_back(r);
    }
    return out;
  }

  // Exact count of generating tuples by dynamic programming over the lattice
  // of Gamma-invariant normal subgroups: identical contributions are merged.
  RelationProbability evaluate(int n, const SubgroupTuple& gammas) {
    const auto& ops = L_.ops();
    std::vector<int> all(static_cast<std::size_t>(ops.order));
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::pair<std::vector<int>, bool>> domains;  // (elements, via Y)
    for (int i = 0; i < n; ++i) domains.emplace_back(all, true);
    domains.emplace_back(fixed_in_R(gammas[0]), true);
    for (std::size_t i = 1; i < gammas.size(); ++i) domains.emplace_back(fixed_in_R(gammas[i]), false);

    std::map<int, Int> dist{{L_.trivial(), Int(1)}};
    Int tuples = 1;
    for (const auto& [dom, via_y] : domains) {
      std::map<int, u64> contrib;
      for (int r : dom) ++contrib[(via_y ? y_contrib_ : plain_contrib_)[static_cast<std::size_t>(r)]];
      std::map<int, Int> next;
      for (const auto& [state, cnt] : dist)
        for (const auto& [c, k] : contrib) next[L_.join(state, c)] += cnt * Int(k);
      dist = std::move(next);
      tuples *= Int(dom.size());
    }
    RelationProbability res;
    res.tuples = tuples;
    res.empirical = Rational(dist.count(full_) ? dist[full_] : Int(0), tuples);
    res.formula = formula(n, gammas);
    res.equal = res.empirical == res.formula;
    return res;
  }

  // Literal enumeration of every tuple (small spaces only).
  RelationProbability enumerate(int n, const SubgroupTuple& gammas, u64 cap = 2000000) {
    const auto& ops = L_.ops();
    std::vector<int> all(static_cast<std::size_t>(ops.order));
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> doms;
    for (int i = 0; i < n; ++i) doms.push_back(all);
    for (std::size_t i = 0; i < gammas.size(); ++i) doms.push_back(fixed_in_R(gammas[i]));
    u64 total = 1;
    for (const auto& d : doms) {
      total *= d.size();
      if (total > cap) throw BoundError("relator tuple space too large for enumeration");
    }
    u64 good = 0;
    for (u64 code = 0; code < total; ++code) {
      u64 c = code;
      std::vector<int> seeds;
      for (std::size_t p = 0; p < doms.size(); ++p) {
        const int r = doms[p][c % doms[p].size()];
        c /= doms[p].size();
        if (p <= static_cast<std::size_t>(n)) {
          for (int g = 0; g < ops.gamma_order; ++g) seeds.push_back(ops.mul(ops.inv(r), ops.act(g, r)));
        } else {
          seeds.push_back(r);
        }
      }
      if (L_.closure(seeds) == full_) ++good;
    }
    RelationProbability res;
    res.tuples = total;
    res.empirical = Rational(Int(good), Int(total));
    res.formula = formula(n, gammas);
    res.equal = res.empirical == res.formula;
    return res;
  }

  // Product formula for R = G^m with G irreducible.
  Rational formula(int n, const SubgroupTuple& gammas) const {
    const Int y_g = y_image_size(grp_, trivial_subgroup(grp_.gamma()));
    Int den = ipow(y_g, n) * Int(y_image_size(grp_, gammas[0]));
    for (std::size_t i = 1; i < gammas.size(); ++i) den *= Int(fixed_elements(grp_, gammas[i]).size());
    Rational p = 1;
    if (grp_.abelian()) {
      for (int l = 0; l < m_; ++l) p *= Rational(1) - Rational(ipow(h_, l), den);
    } else {
      for (int l = 0; l < m_; ++l) p *= Rational(1) - Rational(Int(1), den);
    }
    return p;
  }

 private:
  const SmallGammaGroup& grp_;
  int m_;
  NormalLattice L_;
  int full_ = 0;
  std::vector<int> y_contrib_, plain_contrib_;
  Int h_ = 1;
};

inline RelationProbability verify_relation_probability(const NormalGenerationInstance& inst) {
  RelationLab lab(*inst.group, inst.m);
  return lab.evaluate(inst.n, inst.gammas);
}

// ---------------------------------------------------------------------------
// Built-in groups.

inline GroupPtr cyclic_additive(int p) {
  return make_group(FiniteGroupTable::from_function(p, [p](int a, int b) { return (a + b) % p; }, kLabOrderBound,
                                                    "Z" + std::to_string(p)));
}

// Z/p with the generator of C_c acting by x -> a x.
inline SmallGammaGroup cyclic_lab_group(int p, int c, int a, const std::string& name) {
  auto G = cyclic_additive(p);
  auto gamma = make_group(FiniteGroupTable::builtin("C" + std::to_string(c)));
  Perm img(static_cast<std::size_t>(p));
  for (int x = 0; x < p; ++x) img[static_cast<std::size_t>(x)] = (a * x) % p;
  return SmallGammaGroup::from_generator_images(G, gamma, {img}, name);
}

inline SmallGammaGroup z3_squared_c4() {
  // (Z/3)^2, element 3 a + b, generator of C4 acting by (a, b) -> (-b, a)
  auto G = make_group(FiniteGroupTable::from_function(
      9, [](int x, int y) { return ((x / 3 + y / 3) % 3) * 3 + (x % 3 + y % 3) % 3; }, kLabOrderBound, "Z3^2"));
  auto gamma = make_group(FiniteGroupTable::builtin("C4"));
  Perm img(9);
  for (int x = 0; x < 9; ++x) {
    const int a = x / 3, b = x % 3;
    img[static_cast<std::size_t>(x)] = ((3 - b) % 3) * 3 + a;
  }
  return SmallGammaGroup::from_generator_images(G, gamma, {img}, "Z3^2 C4-rotation");
}

inline SmallGammaGroup a5_trivial_c7() {
  auto G = make_group(FiniteGroupTable::from_permutations({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}, kLabOrderBound, "A5"));
  auto gamma = make_group(FiniteGroupTable::builtin("C7"));
  Perm id(60);
  std::iota(id.begin(), id.end(), 0);
  return SmallGammaGroup::from_generator_images(G, gamma, {id}, "A5 trivial C7");
}

// Heisenberg group mod 3 with C2 acting by (a, b, c) -> (-a, -b, c).
inline SmallGammaGroup heisenberg27_c2() {
  auto enc = [](int a, int b, int c) { return (a % 3) * 9 + (b % 3) * 3 + c % 3; };
  auto G = make_group(FiniteGroupTable::from_function(
      27,
      [enc](int x, int y) {
        const int a = x / 9, b = x / 3 % 3, c = x % 3, a2 = y / 9, b2 = y / 3 % 3, c2 = y % 3;
        return enc(a + a2, b + b2, c + c2 + a * b2);
      },
      kLabOrderBound, "Heis27"));
  auto gamma = make_group(FiniteGroupTable::builtin("C2"));
  Perm img(27);
  for (int x = 0; x < 27; ++x) img[static_cast<std::size_t>(x)] = enc(3 - x / 9, 3 - x / 3 % 3, x % 3);
  return SmallGammaGroup::from_generator_images(G, gamma, {img}, "Heis27 C2");
}

inline SmallGammaGroup z9_sign() { return cyclic_lab_group(9, 2, 8, "Z9 sign"); }

// W-irreducible groups used by the relation-probability suite.
inline std::vector<SmallGammaGroup> builtin_irreducible_suite() {
  std::vector<SmallGammaGroup> out;
  out.push_back(cyclic_lab_group(3, 2, 2, "Z3 sign"));
  out.push_back(cyclic_lab_group(5, 2, 4, "Z5 sign"));
  out.push_back(cyclic_lab_group(5, 4, 2, "Z5 C4"));
  out.push_back(cyclic_lab_group(5, 2, 1, "Z5 trivial C2"));
  out.push_back(cyclic_lab_group(7, 2, 6, "Z7 sign"));
  out.push_back(cyclic_lab_group(7, 3, 2, "Z7 C3"));
  out.push_back(cyclic_lab_group(7, 6, 3, "Z7 C6"));
  out.push_back(cyclic_lab_group(7, 6, 2, "Z7 C6 via C3"));
  out.push_back(cyclic_lab_group(3, 4, 2, "Z3 C4 via C2"));
  out.push_back(z3_squared_c4());
  out.push_back(a5_trivial_c7());
  return out;
}

// Further groups for Y-identity and quotient scans (not all irreducible).
inline std::vector<SmallGammaGroup> builtin_scan_suite() {
  std::vector<SmallGammaGroup> out = builtin_irreducible_suite();
  out.push_back(z9_sign());
  out.push_back(heisenberg27_c2());
  return out;
}

}  // namespace rgm

namespace rgm {

struct SuiteResult {
  std::string label;
  RelationProbability result;
  int m = 0, n = 0, u = 0;
  bool abelian = true;
};

// Every group of the irreducible suite, m, n in {1, 2}, all subgroup tuples of length 1..3.
inline std::vector<SuiteResult> run_relation_suite(int max_m = 2, int max_n = 2, int max_u = 2) {
  std::vector<SuiteResult> out;
  for (const auto& g : builtin_irreducible_suite()) {
    const auto subs = enumerate_subgroups(g.gamma());
    for (int m = 1; m <= max_m; ++m) {
      RelationLab lab(g, m);
      for (int n = 1; n <= max_n; ++n)
        for (int u = 0; u <= max_u; ++u) {
          std::vector<std::size_t> pick(static_cast<std::size_t>(u + 1), 0);
          while (true) {
            std::vector<Subgroup> t;
            for (std::size_t i : pick) t.push_back(subs[i]);
            NormalGenerationInstance inst{&g, m, n, SubgroupTuple(t)};
            out.push_back({inst.label(), lab.evaluate(n, inst.gammas), m, n, u, g.abelian()});
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == subs.size()) pick[i++] = 0;
            if (i == pick.size()) break;
          }
        }
    }
  }
  return out;
}

}  // namespace rgm
