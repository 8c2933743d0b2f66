#pragma once

// Closed-form probabilities and moments of the random model.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rgm/catalog.hpp"

namespace rgm {

struct Factor {
  std::string label;
  Rational value;      // exact for finite n
  double approx = 0.0; // limit factors are infinite products
};

struct ProbabilityResult {
  std::string id;
  std::optional<int> n;  // empty for the n -> infinity limit
  Rational value = 0;    // exact (finite n)
  double value_float = 0.0;
  double truncation_bound = 0.0;  // |true - value_float| bound for the limit
  std::vector<Factor> factors;
  std::string zero_reason;
};

// Data shared by all formulas for one (Gamma, ell, k, subgroup tuple).
class TheoryContext {
 public:
  TheoryContext(RepPtr rd, int k, SubgroupTuple gammas) : rd_(std::move(rd)), k_(k), gammas_(std::move(gammas)) {
    if (rd_->gamma()->order() % static_cast<int>(rd_->ell()) == 0)
      throw CoprimalityError("ell divides |Gamma|");
    full_ = full_subgroup(rd_->gamma());
  }

  const RepresentationData& rep() const { return *rd_; }
  const RepPtr& rep_ptr() const { return rd_; }
  int k() const { return k_; }
  const SubgroupTuple& gammas() const { return gammas_; }

  Int fixed(const Fingerprint& H, const Subgroup& s) const { return ipow(rd_->ell(), fp_fixed_log(H, s, *rd_)); }
  Int order(const Fingerprint& H) const { return fp_order(H, *rd_); }
  Int gamma_fixed(const Fingerprint& H) const { return fixed(H, full_); }

  // |S_i^{Gamma_0}|
  Int irrep_fixed(std::size_t i, const Subgroup& s) const { return ipow(rd_->ell(), rd_->fixed_dim(i, s)); }
  Int irrep_order(std::size_t i) const { return ipow(rd_->ell(), static_cast<long>((*rd_)[i].dim)); }

 private:
  RepPtr rd_;
  int k_;
  SubgroupTuple gammas_;
  Subgroup full_;
};

inline ProbabilityResult finite_n_probability(const TheoryContext& ctx, int n, const Fingerprint& H) {
  const RepresentationData& rd = ctx.rep();
  ProbabilityResult res;
  res.id = H.class_id();
  res.n = n;
  if (n < 0) throw ConfigError("n must be nonnegative");
  if (!fp_admissible(H)) {
    res.zero_reason = "not admissible";
    return res;
  }
  const Int sur = sur_from_free_closed(static_cast<std::size_t>(n), H, rd);
  const Int hg = ctx.gamma_fixed(H);
  Int den = aut_count_closed(H, rd) * ipow(ctx.order(H), n);
  for (const auto& s : ctx.gammas().groups) den *= ctx.fixed(H, s);
  Rational lead(sur * ipow(hg, n + 1), den);
  res.factors.push_back({"leading", lead, to_double(lead)});
  Rational value = lead;
  if (sur == 0) res.zero_reason = "no surjection from B_k^n";
  for (std::size_t i = 0; i < rd.size(); ++i) {
    if (!rd[i].in_B) continue;
    const int m = relation_multiplicity_closed(static_cast<std::size_t>(n), H, i, rd);
    if (m <= 0) continue;
    // |G^Gamma| = 1 for a nontrivial irreducible G
    Int gden = ipow(ctx.irrep_order(i), n);
    for (const auto& s : ctx.gammas().groups) gden *= ctx.irrep_fixed(i, s);
    const Int gnum = ipow(ctx.irrep_fixed(i, full_subgroup(rd.gamma())), n + 1);
    for (int j = 0; j < m; ++j) {
      Rational f = Rational(1) - Rational(ipow(rd[i].endo_order, j) * gnum, gden);
      res.factors.push_back({"S" + std::to_string(i) + "^" + std::to_string(j), f, to_double(f)});
      if (f <= 0) {
        value = 0;
        if (res.zero_reason.empty()) res.zero_reason = "nonpositive relation factor";
      } else {
        value *= f;
      }
    }
  }
  res.value = value;
  res.value_float = to_double(value);
  return res;
}

inline ProbabilityResult limit_probability(const TheoryContext& ctx, const Fingerprint& H, double tail = 1e-12) {
  const RepresentationData& rd = ctx.rep();
  ProbabilityResult res;
  res.id = H.class_id();
  if (!fp_admissible(H)) {
    res.zero_reason = "not admissible";
    return res;
  }
  Int den = aut_count_closed(H, rd);
  for (const auto& s : ctx.gammas().groups) den *= ctx.fixed(H, s);
  const Rational lead(ctx.gamma_fixed(H), den);
  res.factors.push_back({"leading", lead, to_double(lead)});
  long double v = to_double(lead);
  double bound_rel = 0.0;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    if (!rd[i].in_B) continue;
    Int gden = 1;
    for (const auto& s : ctx.gammas().groups) gden *= ctx.irrep_fixed(i, s);
    const Rational c = lambda_closed(H, i, rd) * Rational(Int(1), gden);
    const long double cd = to_double(c);
    const long double q = static_cast<long double>(rd[i].endo_order);
    if (cd == 0) continue;
    // prod_{j>J} (1 - c q^{-j}) lies in [1 - c q^{-J}/(q-1), 1]
    long double prod = 1, qj = 1;
    int J = 0;
    while (true) {
      ++J;
      qj *= q;
      prod *= 1 - cd / qj;
      if (cd / (qj * (q - 1)) < tail) break;
    }
    const double rem = static_cast<double>(cd / (qj * (q - 1)));
    bound_rel += rem;
    res.factors.push_back({"S" + std::to_string(i) + "^inf", c, static_cast<double>(prod)});
    v *= prod;
  }
  res.value_float = static_cast<double>(v);
  res.truncation_bound = res.value_float * bound_rel + 1e-15;
  return res;
}

inline Rational theoretical_moment(const TheoryContext& ctx, const Fingerprint& H) {
  if (!fp_admissible(H)) return 0;
  Int den = 1;
  for (const auto& s : ctx.gammas().groups) den *= ctx.fixed(H, s);
  return Rational(ctx.gamma_fixed(H), den);
}

// E_n |Sur(X, H)| = |Sur(B^n, H)| / (|Y(H)|^n |Y(H^{Gamma_1})| prod_{i>=2} |H^{Gamma_i}|)
inline Rational finite_n_moment(const TheoryContext& ctx, int n, const Fingerprint& H) {
  const Int hg = ctx.gamma_fixed(H);
  const Int sur = sur_from_free_closed(static_cast<std::size_t>(n), H, ctx.rep());
  Rational den = ipow(ctx.order(H) / hg, n);
  const auto& gs = ctx.gammas().groups;
  den *= Rational(ctx.fixed(H, gs[0]), hg);
  for (std::size_t i = 1; i < gs.size(); ++i) den *= Rational(ctx.fixed(H, gs[i]));
  return Rational(sur) / den;
}

struct MassCheck {
  Rational total_exact = 0;  // finite n
  double total = 0.0;
  double deficit = 1.0;
  double truncation_bound = 0.0;
  std::size_t classes = 0;
  bool complete = false;     // catalog holds every class that can occur
};

// n >= 0: finite-n probabilities; n < 0: limit.
inline MassCheck mass_check(const TheoryContext& ctx, const Catalog& cat, int n) {
  MassCheck mc;
  for (const auto& e : cat.entries) {
    if (!e.admissible) continue;
    ++mc.classes;
    if (n >= 0) {
      mc.total_exact += finite_n_probability(ctx, n, e.fp).value;
    } else {
      auto r = limit_probability(ctx, e.fp);
      mc.total += r.value_float;
      mc.truncation_bound += r.truncation_bound;
    }
  }
  if (n >= 0) {
    mc.total = to_double(mc.total_exact);
    mc.complete = cat.max_rank >= n;
    mc.deficit = to_double(Rational(1) - mc.total_exact);
  } else {
    mc.deficit = 1.0 - mc.total;
  }
  return mc;
}

}  // namespace rgm
