#include "ldlab/subspace.hpp"

#include <algorithm>

#include "ldlab/errors.hpp"

namespace ldlab {

FhSubspace FhSubspace::zero(const Gf& f, size_t ambient) {
    FhSubspace s;
    s.basis_ = FhMatrix(f, 0, ambient);
    return s;
}

FhSubspace FhSubspace::full(const Gf& f, size_t ambient) {
    FhSubspace s;
    s.basis_ = FhMatrix::identity(f, ambient);
    for (size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
}

FhSubspace FhSubspace::from_generators(const FhMatrix& gens) {
    FhMatrix m = gens;
    std::vector<size_t> pivots = m.rref_in_place();
    FhSubspace s;
    s.basis_ = m.slice_rows(0, pivots.size());
    s.pivots_ = std::move(pivots);
    return s;
}

FhVec FhSubspace::reduce(FhVec v) const {
    if (v.size() != ambient()) throw ParameterError("vector/subspace ambient mismatch");
    const Gf& f = field();
    for (size_t r = 0; r < dim(); ++r) {
        uint32_t c = v[pivots_[r]];
        if (!c) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, basis_.at(r, j)));
    }
    return v;
}

bool FhSubspace::contains(const FhVec& v) const {
    FhVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](uint32_t d) { return d == 0; });
}

FhSubspace FhSubspace::sum(const FhSubspace& o) const {
    return from_generators(FhMatrix::vstack(basis_, o.basis_));
}

FhSubspace FhSubspace::intersect(const FhSubspace& o) const {
    if (ambient() != o.ambient()) throw ParameterError("intersect ambient mismatch");
    const size_t n = ambient();
    const Gf& f = field();
    // Zassenhaus: rref of [A|A; B|0]; rows with zero left half carry the
    // intersection in their right half.
    FhMatrix big(f, dim() + o.dim(), 2 * n);
    for (size_t r = 0; r < dim(); ++r)
        for (size_t c = 0; c < n; ++c) {
            big.set(r, c, basis_.at(r, c));
            big.set(r, n + c, basis_.at(r, c));
        }
    for (size_t r = 0; r < o.dim(); ++r)
        for (size_t c = 0; c < n; ++c) big.set(dim() + r, c, o.basis_.at(r, c));
    big.rref_in_place();
    std::vector<FhVec> inter_rows;
    for (size_t r = 0; r < big.rows(); ++r) {
        bool left_zero = true;
        for (size_t c = 0; c < n && left_zero; ++c) left_zero = big.at(r, c) == 0;
        if (!left_zero) continue;
        FhVec right(n);
        bool right_zero = true;
        for (size_t c = 0; c < n; ++c) {
            right[c] = big.at(r, n + c);
            right_zero = right_zero && right[c] == 0;
        }
        if (!right_zero) inter_rows.push_back(std::move(right));
    }
    if (inter_rows.empty()) return zero(f, n);
    return from_generators(FhMatrix::from_rows(f, inter_rows));
}

std::vector<FhVec> FhSubspace::enumerate(uint64_t max_points) const {
    const Gf& f = field();
    uint64_t count = 1;
    for (size_t i = 0; i < dim(); ++i) {
        if (count > max_points / f.size() + 1) throw EnumerationLimit("subspace too large to enumerate");
        count *= f.size();
    }
    if (count > max_points) throw EnumerationLimit("subspace too large to enumerate");
    std::vector<FhVec> pts;
    pts.reserve(count);
    FhVec lambda(dim(), 0);
    while (true) {
        pts.push_back(basis_.mul_row_vec(lambda));
        size_t i = 0;
        for (; i < lambda.size(); ++i) {
            if (++lambda[i] < f.size()) break;
            lambda[i] = 0;
        }
        if (i == lambda.size()) break;
        if (lambda.empty()) break;
    }
    return pts;
}

AffineFhSubspace::AffineFhSubspace(FhVec offset, FhSubspace direction)
    : empty_(false), offset_(std::move(offset)), dir_(std::move(direction)) {
    if (offset_.size() != dir_.ambient()) throw ParameterError("affine offset length mismatch");
    offset_ = dir_.reduce(std::move(offset_));
}

AffineFhSubspace AffineFhSubspace::point(const Gf& f, FhVec at) {
    const size_t n = at.size();
    return AffineFhSubspace(std::move(at), FhSubspace::zero(f, n));
}

bool AffineFhSubspace::contains(const FhVec& v) const {
    if (empty_) return false;
    const Gf& f = dir_.field();
    FhVec d(v.size());
    for (size_t i = 0; i < v.size(); ++i) d[i] = f.sub(v[i], offset_[i]);
    return dir_.contains(d);
}

bool AffineFhSubspace::operator==(const AffineFhSubspace& o) const {
    if (empty_ || o.empty_) return empty_ == o.empty_;
    return offset_ == o.offset_ && dir_ == o.dir_;
}

std::vector<FhVec> AffineFhSubspace::enumerate(uint64_t max_points) const {
    if (empty_) return {};
    std::vector<FhVec> pts = dir_.enumerate(max_points);
    const Gf& f = dir_.field();
    for (auto& p : pts)
        for (size_t i = 0; i < p.size(); ++i) p[i] = f.add(p[i], offset_[i]);
    return pts;
}

AffineFhSubspace affine_solve(const FhMatrix& m, const FhVec& rhs) {
    auto part = m.solve(rhs);
    if (!part) return AffineFhSubspace::empty_set();
    return AffineFhSubspace(*part, FhSubspace::from_generators(m.kernel()));
}

AffineFhSubspace affine_intersect(const AffineFhSubspace& a, const AffineFhSubspace& b) {
    if (a.is_empty() || b.is_empty()) return AffineFhSubspace::empty_set();
    if (a.ambient() != b.ambient()) throw ParameterError("affine intersect ambient mismatch");
    const Gf& f = a.direction().field();
    const size_t n = a.ambient();
    // o_a + Ba u = o_b + Bb v  =>  [Ba^T | -Bb^T] (u,v)^T = o_b - o_a.
    const FhMatrix bat = a.direction().basis().transpose();
    const FhMatrix bbt = b.direction().basis().transpose();
    FhMatrix sys(f, n, bat.cols() + bbt.cols());
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < bat.cols(); ++c) sys.set(r, c, bat.at(r, c));
        for (size_t c = 0; c < bbt.cols(); ++c) sys.set(r, bat.cols() + c, f.neg(bbt.at(r, c)));
    }
    FhVec rhs(n);
    for (size_t i = 0; i < n; ++i) rhs[i] = f.sub(b.offset()[i], a.offset()[i]);
    AffineFhSubspace uv = affine_solve(sys, rhs);
    if (uv.is_empty()) return AffineFhSubspace::empty_set();
    // Map (u, v) solutions back through the a-side parameterization.
    const size_t ua = a.direction().dim();
    FhVec u0(uv.offset().begin(), uv.offset().begin() + ua);
    FhVec off = a.direction().basis().mul_row_vec(u0);
    for (size_t i = 0; i < n; ++i) off[i] = f.add(off[i], a.offset()[i]);
    std::vector<FhVec> gens;
    for (size_t r = 0; r < uv.direction().dim(); ++r) {
        FhVec krow = uv.direction().basis().row(r);
        FhVec u(krow.begin(), krow.begin() + ua);
        gens.push_back(a.direction().basis().mul_row_vec(u));
    }
    FhSubspace dir = gens.empty() ? FhSubspace::zero(f, n)
                                  : FhSubspace::from_generators(FhMatrix::from_rows(f, gens));
    return AffineFhSubspace(std::move(off), std::move(dir));
}

std::optional<uint64_t> count_subspaces(const BigUint& q, int m, int s, uint64_t limit) {
    if (s < 0 || s > m) return 0;
    if (s == 0) return 1;
    if (!q.fits_u64()) return std::nullopt;
    const uint64_t qq = q.to_u64();
    // [m s]_q = prod_{i=0}^{s-1} (q^{m-i} - 1) / (q^{i+1} - 1), evaluated in a
    // running rational with __int128 guard.
    __int128 num = 1;
    for (int i = 0; i < s; ++i) {
        __int128 top = 1;
        for (int j = 0; j < m - i; ++j) {
            top *= qq;
            if (top > (__int128)1 << 100) return std::nullopt;
        }
        top -= 1;
        __int128 bot = 1;
        for (int j = 0; j < i + 1; ++j) bot *= qq;
        bot -= 1;
        num *= top;
        if (num > ((__int128)1 << 126) / 2) return std::nullopt;
        num /= bot;  // exact at each step for Gaussian binomials in this order
        if (num > (__int128)limit) return std::nullopt;
    }
    if (num > (__int128)limit) return std::nullopt;
    return static_cast<uint64_t>(num);
}

LevelSubspaceEnumerator::LevelSubspaceEnumerator(const FieldTower& t, int level, int m, int s)
    : t_(&t), level_(level), m_(m), s_(s) {
    if (s < 0 || s > m) throw ParameterError("subspace enumeration: bad dimension");
    if (s == 0) {
        done_ = false;  // single empty basis
        return;
    }
    pivot_.resize(s);
    for (int i = 0; i < s; ++i) pivot_[i] = i;
    reset_free();
}

void LevelSubspaceEnumerator::reset_free() {
    free_pos_.clear();
    for (int r = 0; r < s_; ++r) {
        for (int c = pivot_[r] + 1; c < m_; ++c) {
            bool piv = false;
            for (int r2 = 0; r2 < s_; ++r2) piv = piv || pivot_[r2] == c;
            if (!piv) free_pos_.emplace_back(r, c);
        }
    }
    free_val_.assign(free_pos_.size(), t_->zero(level_));
}

std::vector<std::vector<Felem>> LevelSubspaceEnumerator::current() const {
    std::vector<std::vector<Felem>> rows(s_, std::vector<Felem>(m_, t_->zero(level_)));
    for (int r = 0; r < s_; ++r) rows[r][pivot_[r]] = t_->one(level_);
    for (size_t i = 0; i < free_pos_.size(); ++i)
        rows[free_pos_[i].first][free_pos_[i].second] = free_val_[i];
    return rows;
}

bool LevelSubspaceEnumerator::advance_free() {
    for (size_t i = 0; i < free_val_.size(); ++i) {
        if (t_->next_element(free_val_[i])) return true;
    }
    return false;
}

bool LevelSubspaceEnumerator::advance_pivots() {
    // next combination of pivot columns, lexicographic
    for (int i = s_ - 1; i >= 0; --i) {
        if (pivot_[i] < m_ - (s_ - i)) {
            ++pivot_[i];
            for (int j = i + 1; j < s_; ++j) pivot_[j] = pivot_[j - 1] + 1;
            reset_free();
            return true;
        }
    }
    return false;
}

std::optional<std::vector<std::vector<Felem>>> LevelSubspaceEnumerator::next() {
    if (done_) return std::nullopt;
    if (s_ == 0) {
        done_ = true;
        return std::vector<std::vector<Felem>>{};
    }
    if (fresh_) {
        fresh_ = false;
        return current();
    }
    if (advance_free()) return current();
    if (advance_pivots()) return current();
    done_ = true;
    return std::nullopt;
}

}  // namespace ldlab
