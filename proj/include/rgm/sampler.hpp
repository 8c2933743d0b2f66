#pragma once

// Relator tuples of the random model and their cokernels.

#include <json.hpp>
#include <optional>
#include <vector>

#include "rgm/finite_module.hpp"
#include "rgm/group_ring.hpp"
#include "rgm/rng.hpp"

namespace rgm {

struct RngProvenance {
  u64 seed = 0;
  std::uint32_t stream_id = 0;
  u64 sample_index = 0;
};

struct RelatorSample {
  std::size_t n = 0;
  std::vector<Vec> s1;  // x_1..x_{n+1}; x_{n+1} fixed by Gamma_1
  std::vector<Vec> s2;  // x_{n+2}..x_{n+u+1}; x_{n+1+j} fixed by Gamma_{1+j}
  RngProvenance provenance;
};

// Sampling domains for every relator slot: B_k^n for the first n, then
// (B_k^n)^{Gamma_i} for i = 1..u+1.
class RelatorSpace {
 public:
  RelatorSpace(RingPtr ring, std::size_t n, const SubgroupTuple& gammas) : ring_(std::move(ring)), n_(n), u_(static_cast<std::size_t>(gammas.u())) {
    const std::size_t N = n * ring_->dim();
    CyclicBasis free;
    for (std::size_t c = 0; c < N; ++c) {
      Vec e(N, 0);
      e[c] = 1;
      free.gens.push_back(std::move(e));
      free.exps.push_back(ring_->k());
    }
    for (std::size_t i = 0; i < n; ++i) slots_.push_back(free);
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      if (gammas[i].parent.get() != ring_->gamma().get() && gammas[i].parent->order() != ring_->gamma()->order())
        throw PreconditionError("subgroup tuple does not belong to the ring's group");
      slots_.push_back(fixed_submodule(*ring_, n, gammas[i]).basis);
    }
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return n_; }
  std::size_t u() const { return u_; }
  std::size_t ambient_dim() const { return n_ * ring_->dim(); }
  const std::vector<CyclicBasis>& slots() const { return slots_; }

  // log_ell of the number of relator tuples
  int log_size() const {
    int s = 0;
    for (const auto& b : slots_) s += b.log_order();
    return s;
  }

  RelatorSample sample(PhiloxStream& rng) const {
    RelatorSample out;
    out.n = n_;
    out.provenance = {rng.seed(), rng.stream_id(), rng.sample_index()};
    const Zmod& R = ring_->zmod();
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      Vec x(ambient_dim(), 0);
      const CyclicBasis& b = slots_[s];
      for (std::size_t t = 0; t < b.gens.size(); ++t) {
        const u64 c = rng.uniform(R.pow(b.exps[t]));
        if (c) x = vec_add(x, vec_scale(b.gens[t], c, R), R);
      }
      (s <= n_ ? out.s1 : out.s2).push_back(std::move(x));
    }
    return out;
  }

  // Tuple number idx in mixed radix over all cyclic coefficients (idx < ell^log_size()).
  RelatorSample at(u64 idx) const {
    RelatorSample out;
    out.n = n_;
    out.provenance.sample_index = idx;
    const Zmod& R = ring_->zmod();
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      Vec x(ambient_dim(), 0);
      const CyclicBasis& b = slots_[s];
      for (std::size_t t = 0; t < b.gens.size(); ++t) {
        const u64 m = R.pow(b.exps[t]);
        const u64 c = idx % m;
        idx /= m;
        if (c) x = vec_add(x, vec_scale(b.gens[t], c, R), R);
      }
      (s <= n_ ? out.s1 : out.s2).push_back(std::move(x));
    }
    return out;
  }

 private:
  RingPtr ring_;
  std::size_t n_;
  std::size_t u_;
  std::vector<CyclicBasis> slots_;
};

inline RelatorSample sample_relators(const RelatorSpace& space, PhiloxStream& rng) { return space.sample(rng); }

struct GammaModule {
  RingPtr ring;
  std::size_t n = 0;
  HowellForm relations;  // canonical generating set of the relation span in B_k^n
  FiniteModule module;   // cyclic decomposition with Gamma-action

  int log_order() const { return module.log_order(); }
};

// X = B_k^n / <B x_1, ..., B x_{n+u+1}>.
// `act` must be ring->module_actions(s.n); pass it to avoid rebuilding per sample.
inline GammaModule cokernel(const RingPtr& ring, const RelatorSample& s, const std::vector<Mat>& act,
                            bool with_howell = true) {
  GammaModule X;
  X.ring = ring;
  X.n = s.n;
  const std::size_t N = s.n * ring->dim();
  const Zmod& R = ring->zmod();
  std::vector<Vec> rels;
  for (const auto* part : {&s.s1, &s.s2})
    for (const Vec& x : *part)
      if (!is_zero(x))
        for (int g = 0; g < ring->gamma()->order(); ++g) rels.push_back(mat_vec(act[static_cast<std::size_t>(g)], x, R));
  if (with_howell) X.relations = howell_form(rels, N, R);
  X.module = subquotient(ring->gamma(), R, N, act, true, {}, rels).module;
  check_internal(!with_howell || X.module.log_order() == ring->k() * static_cast<int>(N) - X.relations.log_order(),
                 "cokernel order does not match relation span");
  return X;
}

inline GammaModule cokernel(const RingPtr& ring, const RelatorSample& s, bool with_howell = true) {
  return cokernel(ring, s, ring->module_actions(s.n), with_howell);
}

inline nlohmann::json sample_to_json(const RelatorSample& s) {
  nlohmann::json j;
  j["seed"] = s.provenance.seed;
  j["stream"] = s.provenance.stream_id;
  j["sample"] = s.provenance.sample_index;
  j["n"] = s.n;
  j["s1"] = s.s1;
  j["s2"] = s.s2;
  return j;
}

}  // namespace rgm
