#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rgm/errors.hpp"

namespace rgm {

using Perm = std::vector<int>;

// Finite group given by its full multiplication table. Element 0 is the identity.
class FiniteGroupTable {
 public:
  static constexpr int kDefaultBound = 64;

  // Closure of permutation generators. Elements are listed in breadth-first
  // order (x * g over generators g), identity first.
  static FiniteGroupTable from_permutations(const std::vector<Perm>& gens, int bound = kDefaultBound,
                                            std::string name = "") {
    std::size_t degree = 0;
    for (const Perm& g : gens) degree = std::max(degree, g.size());
    std::vector<Perm> padded;
    for (const Perm& g : gens) {
      Perm p(degree);
      std::vector<bool> seen(degree, false);
      for (std::size_t i = 0; i < degree; ++i) {
        p[i] = i < g.size() ? g[i] : static_cast<int>(i);
        if (p[i] < 0 || static_cast<std::size_t>(p[i]) >= degree || seen[static_cast<std::size_t>(p[i])])
          throw ConfigError("generator is not a permutation");
        seen[static_cast<std::size_t>(p[i])] = true;
      }
      padded.push_back(std::move(p));
    }
    Perm id(degree);
    for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);

    std::vector<Perm> elems{id};
    std::map<Perm, int> index{{id, 0}};
    FiniteGroupTable t;
    t.parent_.push_back(-1);
    t.parent_gen_.push_back(-1);
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (std::size_t gi = 0; gi < padded.size(); ++gi) {
        Perm y = compose(elems[head], padded[gi]);
        if (index.count(y)) continue;
        if (static_cast<int>(elems.size()) >= bound)
          throw BoundError("group closure exceeds order bound " + std::to_string(bound));
        index.emplace(y, static_cast<int>(elems.size()));
        elems.push_back(std::move(y));
        t.parent_.push_back(static_cast<int>(head));
        t.parent_gen_.push_back(static_cast<int>(gi));
      }
    }
    const int n = static_cast<int>(elems.size());
    t.n_ = n;
    t.mul_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t.mul_[idx(n, a, b)] = index.at(compose(elems[a], elems[b]));
    t.perms_ = elems;
    for (std::size_t gi = 0; gi < padded.size(); ++gi) t.gens_.push_back(index.at(padded[gi]));
    t.name_ = std::move(name);
    t.finish();
    return t;
  }

  // Explicit table; mul[a][b] = a*b. Validated exhaustively; the identity is
  // moved to index 0, otherwise the given order is kept.
  static FiniteGroupTable from_table(const std::vector<std::vector<int>>& mul, int bound = kDefaultBound,
                                     std::string name = "") {
    const int n = static_cast<int>(mul.size());
    if (n == 0) throw ConfigError("empty group table");
    if (n > bound) throw BoundError("group order exceeds bound " + std::to_string(bound));
    for (const auto& row : mul) {
      if (static_cast<int>(row.size()) != n) throw ConfigError("group table is not square");
      for (int x : row)
        if (x < 0 || x >= n) throw ConfigError("group table entry out of range");
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
      bool ok = true;
      for (int b = 0; b < n && ok; ++b) ok = mul[a][b] == b && mul[b][a] == b;
      if (ok) e = a;
    }
    if (e < 0) throw ConfigError("group table has no identity");
    std::vector<int> to_new(n), to_old;
    to_old.push_back(e);
    for (int a = 0; a < n; ++a)
      if (a != e) to_old.push_back(a);
    for (int i = 0; i < n; ++i) to_new[to_old[i]] = i;

    FiniteGroupTable t;
    t.n_ = n;
    t.mul_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t.mul_[idx(n, a, b)] = to_new[mul[to_old[a]][to_old[b]]];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)))
            throw ConfigError("group table is not associative");
    t.name_ = std::move(name);
    t.parent_.assign(static_cast<std::size_t>(n), -1);
    t.parent_gen_.assign(static_cast<std::size_t>(n), -1);
    t.finish();
    t.gens_ = t.greedy_generators();
    return t;
  }

  template <class MulFn>
  static FiniteGroupTable from_function(int order, MulFn f, int bound, std::string name = "") {
    std::vector<std::vector<int>> mul(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) mul[a][b] = f(a, b);
    return from_table(mul, bound, std::move(name));
  }

  // Named groups: "1" (or "trivial"), "C2", "C3", "C4", "C5", "C6", "C7", "C2xC2", "S3".
  static FiniteGroupTable builtin(std::string_view name) {
    auto cyc = [](int m) {
      Perm p(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) p[i] = (i + 1) % m;
      return p;
    };
    std::string nm(name);
    if (nm == "1" || nm == "trivial" || nm == "C1") return from_permutations({}, kDefaultBound, "1");
    if (nm.size() == 2 && nm[0] == 'C' && nm[1] >= '2' && nm[1] <= '9')
      return from_permutations({cyc(nm[1] - '0')}, kDefaultBound, nm);
    if (nm == "C2xC2" || nm == "V4") return from_permutations({{1, 0, 2, 3}, {0, 1, 3, 2}}, kDefaultBound, "C2xC2");
    if (nm == "S3") return from_permutations({{1, 2, 0}, {1, 0, 2}}, kDefaultBound, "S3");
    throw ConfigError("unknown builtin group '" + nm + "'");
  }

  int order() const { return n_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mul_[idx(n_, a, b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int pow(int a, int e) const {
    int r = 0;
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  int element_order(int a) const {
    int r = a, o = 1;
    while (r != 0) {
      r = mul(r, a);
      ++o;
    }
    return o;
  }
  // Generating set (element indices).
  const std::vector<int>& generators() const { return gens_; }
  // For permutation-built groups: element = parent * generators()[parent_gen].
  int parent(int a) const { return parent_[static_cast<std::size_t>(a)]; }
  int parent_gen(int a) const { return parent_gen_[static_cast<std::size_t>(a)]; }
  const std::vector<Perm>& permutations() const { return perms_; }
  const std::string& name() const { return name_; }

  // Element index of a permutation (permutation-built groups only).
  int find_permutation(const Perm& p) const {
    for (int a = 0; a < n_; ++a) {
      const Perm& x = perms_.at(static_cast<std::size_t>(a));
      bool eq = true;
      for (std::size_t i = 0; i < x.size() && eq; ++i) eq = (i < p.size() ? p[i] : static_cast<int>(i)) == x[i];
      for (std::size_t i = x.size(); i < p.size() && eq; ++i) eq = p[i] == static_cast<int>(i);
      if (eq) return a;
    }
    return -1;
  }

 private:
  static std::size_t idx(int n, int a, int b) {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b);
  }
  // (p*q)(i) = p(q(i))
  static Perm compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
    return r;
  }

  void finish() {
    inv_.assign(static_cast<std::size_t>(n_), -1);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) throw ConfigError("group table: inverses are not two-sided");
          inv_[static_cast<std::size_t>(a)] = b;
          break;
        }
    for (int x : inv_)
      if (x < 0) throw ConfigError("group table: missing inverse");
  }

  std::vector<int> greedy_generators() const {
    std::vector<int> gens;
    std::vector<bool> in(static_cast<std::size_t>(n_), false);
    in[0] = true;
    for (int a = 0; a < n_; ++a) {
      if (in[static_cast<std::size_t>(a)]) continue;
      gens.push_back(a);
      std::vector<int> members;
      for (int x = 0; x < n_; ++x)
        if (in[static_cast<std::size_t>(x)]) members.push_back(x);
      for (std::size_t h = 0; h < members.size(); ++h)
        for (int g : gens) {
          int y = mul(members[h], g);
          if (!in[static_cast<std::size_t>(y)]) {
            in[static_cast<std::size_t>(y)] = true;
            members.push_back(y);
          }
        }
    }
    return gens;
  }

  int n_ = 1;
  std::vector<int> mul_{0};
  std::vector<int> inv_{0};
  std::vector<int> gens_;
  std::vector<int> parent_{-1};
  std::vector<int> parent_gen_{-1};
  std::vector<Perm> perms_;
  std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroupTable>;

inline GroupPtr make_group(FiniteGroupTable t) { return std::make_shared<const FiniteGroupTable>(std::move(t)); }

struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }
  bool is_trivial() const { return members.size() == 1; }
  bool is_full() const { return static_cast<int>(members.size()) == parent->order(); }

  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool operator<(const Subgroup& o) const {
    if (members.size() != o.members.size()) return members.size() < o.members.size();
    return members < o.members;
  }
};

// Subgroup generated by the given elements.
inline Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens) {
  std::vector<bool> in(static_cast<std::size_t>(g->order()), false);
  std::vector<int> members{0};
  in[0] = true;
  for (std::size_t h = 0; h < members.size(); ++h)
    for (int s : gens) {
      int y = g->mul(members[h], s);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = true;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup{g, members};
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {0}}; }

inline Subgroup full_subgroup(const GroupPtr& g) {
  Subgroup s{g, {}};
  for (int a = 0; a < g->order(); ++a) s.members.push_back(a);
  return s;
}

// All subgroups, sorted by order then by member list.
inline std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g) {
  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> queue;  // (members, generators)
  Subgroup triv = trivial_subgroup(g);
  seen.insert(triv.members);
  queue.push_back({triv.members, {}});
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const std::vector<int> members = queue[h].first;
    const std::vector<int> gens = queue[h].second;
    for (int x = 0; x < g->order(); ++x) {
      if (std::binary_search(members.begin(), members.end(), x)) continue;
      std::vector<int> ng = gens;
      ng.push_back(x);
      Subgroup s = generated_subgroup(g, ng);
      if (seen.insert(s.members).second) queue.push_back({s.members, ng});
    }
  }
  std::vector<Subgroup> out;
  for (const auto& m : seen) out.push_back(Subgroup{g, m});
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup conjugate_subgroup(const Subgroup& h, int g) {
  const GroupPtr& G = h.parent;
  Subgroup out{G, {}};
  for (int x : h.members) out.members.push_back(G->mul(G->mul(g, x), G->inv(g)));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

inline bool is_normal(const Subgroup& h) {
  for (int g = 0; g < h.parent->order(); ++g)
    if (!(conjugate_subgroup(h, g) == h)) return false;
  return true;
}

// Small generating set of a subgroup (greedy over members).
inline std::vector<int> subgroup_generators(const Subgroup& h) {
  std::vector<int> gens;
  Subgroup cur = trivial_subgroup(h.parent);
  for (int x : h.members) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generated_subgroup(h.parent, gens);
  }
  return gens;
}

// (Gamma_1, ..., Gamma_{u+1}).
struct SubgroupTuple {
  std::vector<Subgroup> groups;

  SubgroupTuple() = default;
  explicit SubgroupTuple(std::vector<Subgroup> gs) : groups(std::move(gs)) {
    if (groups.empty()) throw ConfigError("subgroup tuple must have at least one entry");
    for (const auto& s : groups)
      if (s.parent != groups.front().parent && s.parent->order() != groups.front().parent->order())
        throw ConfigError("subgroup tuple entries must share a parent group");
  }
  int u() const { return static_cast<int>(groups.size()) - 1; }
  const Subgroup& operator[](std::size_t i) const { return groups[i]; }
  std::size_t size() const { return groups.size(); }
};

}  // namespace rgm
