#pragma once

// B_k = (Z/ell^k)[Gamma] / (N), N = sum of all group elements, in the basis
// {g - 1 : g != 1}. Vectors are column vectors; B_k^n is n stacked blocks.

#include <memory>
#include <vector>

#include "rgm/group.hpp"
#include "rgm/linalg.hpp"

namespace rgm {

class GroupRingB {
 public:
  GroupRingB(GroupPtr gamma, u64 ell, int k) : gamma_(std::move(gamma)), R_(ell, k) {
    const int n = gamma_->order();
    if (n % static_cast<int>(ell) == 0)
      throw CoprimalityError("ell = " + std::to_string(ell) + " divides |Gamma| = " + std::to_string(n));
    dim_ = static_cast<std::size_t>(n - 1);
    inv_order_ = R_.inv_unit(static_cast<u64>(n) % R_.q());
    action_.reserve(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) {
      Mat m(dim_, dim_);
      // g (d - 1) = (gd - 1) - (g - 1)
      for (int d = 1; d < n; ++d) {
        const std::size_t col = static_cast<std::size_t>(d - 1);
        const int gd = gamma_->mul(g, d);
        if (gd != 0) m(static_cast<std::size_t>(gd - 1), col) = R_.add(m(static_cast<std::size_t>(gd - 1), col), 1);
        if (g != 0) m(static_cast<std::size_t>(g - 1), col) = R_.sub(m(static_cast<std::size_t>(g - 1), col), 1);
      }
      action_.push_back(std::move(m));
    }
  }

  const GroupPtr& gamma() const { return gamma_; }
  const Zmod& zmod() const { return R_; }
  u64 ell() const { return R_.ell(); }
  int k() const { return R_.k(); }
  std::size_t dim() const { return dim_; }
  bool degenerate() const { return dim_ == 0; }

  // Left multiplication by group element g.
  const Mat& action(int g) const { return action_[static_cast<std::size_t>(g)]; }

  // Image of the group element g:  e_g - |Gamma|^{-1} sum_d e_d  (e_1 := 0).
  Vec element(int g) const {
    Vec v(dim_, R_.neg(inv_order_));
    if (g != 0) v[static_cast<std::size_t>(g - 1)] = R_.add(v[static_cast<std::size_t>(g - 1)], 1);
    return v;
  }
  Vec one() const { return element(0); }

  // Image of N; always the zero vector.
  Vec norm_element() const {
    Vec v(dim_, 0);
    for (int g = 0; g < gamma_->order(); ++g) v = vec_add(v, element(g), R_);
    return v;
  }

  // Matrix of left multiplication by a = sum_d a_d (d - 1).
  Mat left_mult_matrix(const Vec& a) const {
    Mat m(dim_, dim_);
    const Mat id = Mat::identity(dim_);
    for (std::size_t d = 0; d < dim_; ++d) {
      if (a[d] == 0) continue;
      m = mat_add(m, mat_scale(mat_sub(action(static_cast<int>(d + 1)), id, R_), a[d], R_), R_);
    }
    return m;
  }

  Vec multiply(const Vec& a, const Vec& b) const { return mat_vec(left_mult_matrix(a), b, R_); }

  // (i - 1)(j - 1) in basis coordinates, for basis indices i, j (0-based).
  Vec structure_constant(std::size_t i, std::size_t j) const {
    Vec ei(dim_, 0), ej(dim_, 0);
    ei[i] = 1;
    ej[j] = 1;
    return multiply(ei, ej);
  }

  // Action of g on B_k^n (block diagonal).
  Mat module_action(int g, std::size_t n) const { return block_diagonal(action(g), n); }
  std::vector<Mat> module_actions(std::size_t n) const {
    std::vector<Mat> out;
    for (int g = 0; g < gamma_->order(); ++g) out.push_back(module_action(g, n));
    return out;
  }

  // g acting on a vector of B_k^n.
  Vec act(int g, const Vec& v) const {
    const std::size_t n = dim_ == 0 ? 0 : v.size() / dim_;
    Vec out(v.size(), 0);
    const Mat& m = action(g);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < dim_; ++i) {
        u64 s = 0;
        for (std::size_t j = 0; j < dim_; ++j) s = (s + m(i, j) * v[b * dim_ + j]) % R_.q();
        out[b * dim_ + i] = s;
      }
    return out;
  }

  // The "1" of the i-th summand of B_k^n.
  Vec free_generator(std::size_t i, std::size_t n) const {
    Vec v(n * dim_, 0);
    Vec o = one();
    for (std::size_t j = 0; j < dim_; ++j) v[i * dim_ + j] = o[j];
    return v;
  }

 private:
  GroupPtr gamma_;
  Zmod R_;
  std::size_t dim_ = 0;
  u64 inv_order_ = 1;
  std::vector<Mat> action_;
};

using RingPtr = std::shared_ptr<const GroupRingB>;

inline RingPtr build_ring(GroupPtr gamma, u64 ell, int k) {
  return std::make_shared<const GroupRingB>(std::move(gamma), ell, k);
}

// Element of B_k^n.
struct ModuleVector {
  RingPtr ring;
  std::size_t n = 0;
  Vec coords;
};

// (B_k^n)^{Gamma_0} with independent cyclic generators.
struct FixedSubmodule {
  std::size_t n = 0;
  Subgroup subgroup;
  CyclicBasis basis;

  int log_order() const { return basis.log_order(); }
};

inline FixedSubmodule fixed_submodule(const GroupRingB& ring, std::size_t n, const Subgroup& sub) {
  const std::size_t d = ring.dim();
  const Zmod& R = ring.zmod();
  std::vector<int> gens = subgroup_generators(sub);
  FixedSubmodule out;
  out.n = n;
  out.subgroup = sub;
  if (d == 0 || n == 0) return out;
  CyclicBasis one_block;
  if (gens.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      Vec e(d, 0);
      e[i] = 1;
      one_block.gens.push_back(e);
      one_block.exps.push_back(R.k());
    }
  } else {
    Mat stacked(d * gens.size(), d);
    const Mat id = Mat::identity(d);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Mat m = mat_sub(ring.action(gens[s]), id, R);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) stacked(s * d + i, j) = m(i, j);
    }
    one_block = kernel(stacked, R);
  }
  // (B^n)^{Gamma_0} = ((B)^{Gamma_0})^n
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t t = 0; t < one_block.gens.size(); ++t) {
      Vec v(n * d, 0);
      for (std::size_t j = 0; j < d; ++j) v[b * d + j] = one_block.gens[t][j];
      out.basis.gens.push_back(std::move(v));
      out.basis.exps.push_back(one_block.exps[t]);
    }
  return out;
}

}  // namespace rgm
