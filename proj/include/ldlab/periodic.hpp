#ifndef LDLAB_PERIODIC_HPP
#define LDLAB_PERIODIC_HPP

#include <vector>

#include "ldlab/subspace.hpp"

namespace ldlab {

/// The decoder's structured output: a chained affine system over blocks of
/// width block_dim = tau*m F_h-coordinates,
///   x in H  iff  for every block j:  T x_j = P_j (x_0..x_{j-1}) + o_j,
/// so conditioned on any prefix the valid block-j values form a coset of
/// W = ker T. T is F_q-linear (q = h^tau), making W an F_q-subspace of
/// dimension at most s-1 for a non-degenerate decoder run.
class PeriodicSubspace {
  public:
    PeriodicSubspace(const Gf& f, int tau, size_t block_dim, size_t blocks);
    static PeriodicSubspace empty_space(const Gf& f, int tau, size_t block_dim, size_t blocks);

    void set_block_operator(FhMatrix t);
    void set_block_map(size_t j, FhMatrix prefix_map, FhVec offset);

    const Gf& field() const { return *f_; }
    int tau() const { return tau_; }
    size_t block_dim() const { return block_dim_; }
    size_t blocks() const { return blocks_; }
    bool is_empty() const { return empty_; }
    const FhMatrix& block_operator() const { return t_mat_; }
    const FhMatrix& prefix_map(size_t j) const { return maps_[j]; }
    const FhVec& offset(size_t j) const { return offs_[j]; }

    /// W = ker T as a subspace of one block.
    FhSubspace kernel_w() const;
    /// dim_{F_q} W; the kernel of an F_q-linear operator has F_h-dimension
    /// divisible by tau.
    int kernel_dim_q() const;

    bool contains(const FhVec& full) const;

    /// Direct enumeration by chaining cosets; oracle-grade, capped.
    std::vector<FhVec> enumerate(uint64_t max_points = 1u << 22) const;

  private:
    const Gf* f_;
    int tau_;
    size_t block_dim_, blocks_;
    bool empty_ = false;
    FhMatrix t_mat_;
    std::vector<FhMatrix> maps_;
    std::vector<FhVec> offs_;
};

/// H ∩ (H_1 x ... x H_k) as an affine F_h-subspace of F_h^{blocks*block_dim},
/// by a dynamic program that keeps an affine parameterization of valid
/// prefixes and solves the joint block condition at each step. When
/// claimed_a >= 0 the result dimension is checked against it and
/// ListDimensionExceeded is thrown on violation.
AffineFhSubspace periodic_intersect(const PeriodicSubspace& h,
                                    const std::vector<FhSubspace>& blocks,
                                    double claimed_a = -1);

}  // namespace ldlab

#endif
