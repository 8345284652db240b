#include "ldlab/periodic.hpp"

#include "ldlab/errors.hpp"

namespace ldlab {

PeriodicSubspace::PeriodicSubspace(const Gf& f, int tau, size_t block_dim, size_t blocks)
    : f_(&f), tau_(tau), block_dim_(block_dim), blocks_(blocks) {
    if (tau < 1 || block_dim % tau != 0)
        throw ParameterError("periodic subspace: block width must be a multiple of tau");
    t_mat_ = FhMatrix(f, block_dim, block_dim);
    maps_.reserve(blocks);
    offs_.reserve(blocks);
    for (size_t j = 0; j < blocks; ++j) {
        maps_.emplace_back(f, block_dim, j * block_dim);
        offs_.emplace_back(block_dim, 0);
    }
}

PeriodicSubspace PeriodicSubspace::empty_space(const Gf& f, int tau, size_t block_dim,
                                               size_t blocks) {
    PeriodicSubspace p(f, tau, block_dim, blocks);
    p.empty_ = true;
    return p;
}

void PeriodicSubspace::set_block_operator(FhMatrix t) {
    if (t.rows() != block_dim_ || t.cols() != block_dim_)
        throw ParameterError("block operator shape mismatch");
    t_mat_ = std::move(t);
}

void PeriodicSubspace::set_block_map(size_t j, FhMatrix prefix_map, FhVec offset) {
    if (j >= blocks_) throw ParameterError("block index out of range");
    if (prefix_map.rows() != block_dim_ || prefix_map.cols() != j * block_dim_)
        throw ParameterError("prefix map shape mismatch");
    if (offset.size() != block_dim_) throw ParameterError("offset length mismatch");
    maps_[j] = std::move(prefix_map);
    offs_[j] = std::move(offset);
}

FhSubspace PeriodicSubspace::kernel_w() const {
    return FhSubspace::from_generators(t_mat_.kernel());
}

int PeriodicSubspace::kernel_dim_q() const {
    size_t d = kernel_w().dim();
    if (d % tau_ != 0) throw ParameterError("kernel is not F_q-linear (internal)");
    return static_cast<int>(d) / tau_;
}

bool PeriodicSubspace::contains(const FhVec& full) const {
    if (empty_) return false;
    if (full.size() != blocks_ * block_dim_) throw ParameterError("vector length mismatch");
    for (size_t j = 0; j < blocks_; ++j) {
        FhVec prefix(full.begin(), full.begin() + j * block_dim_);
        FhVec block(full.begin() + j * block_dim_, full.begin() + (j + 1) * block_dim_);
        FhVec lhs = t_mat_.mul_vec(block);
        FhVec rhs = maps_[j].mul_vec(prefix);
        for (size_t i = 0; i < block_dim_; ++i)
            if (lhs[i] != f_->add(rhs[i], offs_[j][i])) return false;
    }
    return true;
}

std::vector<FhVec> PeriodicSubspace::enumerate(uint64_t max_points) const {
    std::vector<FhVec> result;
    if (empty_) return result;
    std::vector<FhVec> prefixes{FhVec{}};
    for (size_t j = 0; j < blocks_; ++j) {
        std::vector<FhVec> next;
        for (const auto& p : prefixes) {
            FhVec rhs = maps_[j].mul_vec(p);
            for (size_t i = 0; i < block_dim_; ++i) rhs[i] = f_->add(rhs[i], offs_[j][i]);
            AffineFhSubspace sols = affine_solve(t_mat_, rhs);
            for (const auto& x : sols.enumerate(max_points)) {
                FhVec ext = p;
                ext.insert(ext.end(), x.begin(), x.end());
                next.push_back(std::move(ext));
                if (next.size() > max_points)
                    throw EnumerationLimit("periodic subspace too large to enumerate");
            }
        }
        prefixes = std::move(next);
    }
    return prefixes;
}

AffineFhSubspace periodic_intersect(const PeriodicSubspace& h,
                                    const std::vector<FhSubspace>& blocks, double claimed_a) {
    if (blocks.size() != h.blocks())
        throw ParameterError("periodic_intersect: block count mismatch");
    const Gf& f = h.field();
    const size_t bd = h.block_dim();
    for (const auto& b : blocks)
        if (b.ambient() != bd) throw ParameterError("periodic_intersect: block ambient mismatch");
    if (h.is_empty()) return AffineFhSubspace::empty_set();

    // Affine parameterization of valid prefixes: x_{<j} = off + lambda * basis.
    FhVec off{};                 // length j*bd
    FhMatrix basis(f, 0, 0);     // dim x (j*bd)

    for (size_t j = 0; j < h.blocks(); ++j) {
        const FhMatrix& hb = blocks[j].basis();      // dimH x bd
        const size_t d = basis.rows();
        const size_t dim_h_j = hb.rows();
        // Unknowns (mu, lambda): T hb^T mu - P_j basis^T lambda = P_j off + o_j.
        FhMatrix t_hbt = h.block_operator().mul(hb.transpose());  // bd x dimH
        FhMatrix p_bt = h.prefix_map(j).mul(basis.transpose());   // bd x d
        FhMatrix sys(f, bd, dim_h_j + d);
        for (size_t r = 0; r < bd; ++r) {
            for (size_t c = 0; c < dim_h_j; ++c) sys.set(r, c, t_hbt.at(r, c));
            for (size_t c = 0; c < d; ++c) sys.set(r, dim_h_j + c, f.neg(p_bt.at(r, c)));
        }
        FhVec rhs = h.prefix_map(j).mul_vec(off);
        for (size_t i = 0; i < bd; ++i) rhs[i] = f.add(rhs[i], h.offset(j)[i]);

        AffineFhSubspace sol = affine_solve(sys, rhs);
        if (sol.is_empty()) return AffineFhSubspace::empty_set();

        // Rebuild the prefix parameterization one block longer.
        auto expand = [&](const FhVec& mu_lambda, bool with_offset) {
            FhVec mu(mu_lambda.begin(), mu_lambda.begin() + dim_h_j);
            FhVec lambda(mu_lambda.begin() + dim_h_j, mu_lambda.end());
            FhVec prefix = basis.rows() ? basis.transpose().mul_vec(lambda) : FhVec(j * bd, 0);
            if (with_offset)
                for (size_t i = 0; i < prefix.size(); ++i) prefix[i] = f.add(prefix[i], off[i]);
            FhVec block = hb.rows() ? hb.transpose().mul_vec(mu) : FhVec(bd, 0);
            prefix.insert(prefix.end(), block.begin(), block.end());
            return prefix;
        };
        FhVec new_off = expand(sol.offset(), true);
        std::vector<FhVec> gens;
        for (size_t r = 0; r < sol.direction().dim(); ++r)
            gens.push_back(expand(sol.direction().basis().row(r), false));
        FhMatrix gen_m = gens.empty() ? FhMatrix(f, 0, (j + 1) * bd)
                                      : FhMatrix::from_rows(f, gens);
        FhSubspace dir = FhSubspace::from_generators(gen_m);
        off = std::move(new_off);
        basis = dir.basis();
    }

    AffineFhSubspace out(off, FhSubspace::from_generators(basis));
    if (claimed_a >= 0 && out.dim() > claimed_a)
        throw ListDimensionExceeded("pruned space has dimension " + std::to_string(out.dim()) +
                                    " > verified bound " + std::to_string(claimed_a));
    return out;
}

}  // namespace ldlab
