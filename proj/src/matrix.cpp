#include "ldlab/matrix.hpp"

#include "ldlab/errors.hpp"

namespace ldlab {

FhMatrix FhMatrix::identity(const Gf& f, size_t n) {
    FhMatrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FhMatrix FhMatrix::from_rows(const Gf& f, const std::vector<FhVec>& rows) {
    if (rows.empty()) return FhMatrix(f, 0, 0);
    FhMatrix m(f, rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw ParameterError("ragged rows");
        for (size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void FhMatrix::set_row(size_t r, const FhVec& v) {
    if (v.size() != cols_) throw ParameterError("row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + r * cols_);
}

FhMatrix FhMatrix::transpose() const {
    FhMatrix m(*f_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) m.set(c, r, at(r, c));
    return m;
}

FhMatrix FhMatrix::mul(const FhMatrix& o) const {
    if (cols_ != o.rows_) throw ParameterError("matrix product shape mismatch");
    FhMatrix m(*f_, rows_, o.cols_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t k = 0; k < cols_; ++k) {
            uint32_t v = at(r, k);
            if (!v) continue;
            for (size_t c = 0; c < o.cols_; ++c) {
                uint32_t prod = f_->mul(v, o.at(k, c));
                m.set(r, c, f_->add(m.at(r, c), prod));
            }
        }
    }
    return m;
}

FhVec FhMatrix::mul_vec(const FhVec& v) const {
    if (v.size() != cols_) throw ParameterError("matrix-vector shape mismatch");
    FhVec out(rows_, 0);
    for (size_t r = 0; r < rows_; ++r) {
        uint32_t acc = 0;
        for (size_t c = 0; c < cols_; ++c) acc = f_->add(acc, f_->mul(at(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

FhVec FhMatrix::mul_row_vec(const FhVec& v) const {
    if (v.size() != rows_) throw ParameterError("vector-matrix shape mismatch");
    FhVec out(cols_, 0);
    for (size_t r = 0; r < rows_; ++r) {
        if (!v[r]) continue;
        for (size_t c = 0; c < cols_; ++c) out[c] = f_->add(out[c], f_->mul(v[r], at(r, c)));
    }
    return out;
}

FhMatrix FhMatrix::add(const FhMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ParameterError("matrix sum shape mismatch");
    FhMatrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->add(a_[i], o.a_[i]);
    return m;
}

FhMatrix FhMatrix::sub(const FhMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ParameterError("matrix diff shape mismatch");
    FhMatrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->sub(a_[i], o.a_[i]);
    return m;
}

FhMatrix FhMatrix::vstack(const FhMatrix& top, const FhMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw ParameterError("vstack width mismatch");
    FhMatrix m(top.field(), top.rows() + bottom.rows(), top.cols());
    for (size_t r = 0; r < top.rows(); ++r)
        for (size_t c = 0; c < top.cols(); ++c) m.set(r, c, top.at(r, c));
    for (size_t r = 0; r < bottom.rows(); ++r)
        for (size_t c = 0; c < top.cols(); ++c) m.set(top.rows() + r, c, bottom.at(r, c));
    return m;
}

FhMatrix FhMatrix::hstack(const FhMatrix& left, const FhMatrix& right) {
    if (left.rows() != right.rows()) throw ParameterError("hstack height mismatch");
    FhMatrix m(left.field(), left.rows(), left.cols() + right.cols());
    for (size_t r = 0; r < left.rows(); ++r) {
        for (size_t c = 0; c < left.cols(); ++c) m.set(r, c, left.at(r, c));
        for (size_t c = 0; c < right.cols(); ++c) m.set(r, left.cols() + c, right.at(r, c));
    }
    return m;
}

FhMatrix FhMatrix::slice_cols(size_t from, size_t count) const {
    FhMatrix m(*f_, rows_, count);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < count; ++c) m.set(r, c, at(r, from + c));
    return m;
}

FhMatrix FhMatrix::slice_rows(size_t from, size_t count) const {
    FhMatrix m(*f_, count, cols_);
    for (size_t r = 0; r < count; ++r)
        for (size_t c = 0; c < cols_; ++c) m.set(r, c, at(from + r, c));
    return m;
}

std::vector<size_t> FhMatrix::rref_in_place() {
    std::vector<size_t> pivots;
    size_t lead = 0;
    for (size_t col = 0; col < cols_ && lead < rows_; ++col) {
        size_t sel = lead;
        while (sel < rows_ && at(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != lead)
            for (size_t c = 0; c < cols_; ++c) std::swap(a_[sel * cols_ + c], a_[lead * cols_ + c]);
        uint32_t inv = f_->inv(at(lead, col));
        for (size_t c = 0; c < cols_; ++c) set(lead, c, f_->mul(at(lead, c), inv));
        for (size_t r = 0; r < rows_; ++r) {
            if (r == lead) continue;
            uint32_t v = at(r, col);
            if (!v) continue;
            for (size_t c = 0; c < cols_; ++c) set(r, c, f_->sub(at(r, c), f_->mul(v, at(lead, c))));
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

size_t FhMatrix::rank() const {
    FhMatrix m = *this;
    return m.rref_in_place().size();
}

FhMatrix FhMatrix::kernel() const {
    FhMatrix m = *this;
    std::vector<size_t> pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t p : pivots) is_pivot[p] = true;
    FhMatrix k(*f_, cols_ - pivots.size(), cols_);
    size_t kr = 0;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        k.set(kr, free, 1);
        for (size_t r = 0; r < pivots.size(); ++r)
            k.set(kr, pivots[r], f_->neg(m.at(r, free)));
        ++kr;
    }
    return k;
}

std::optional<FhVec> FhMatrix::solve(const FhVec& rhs) const {
    if (rhs.size() != rows_) throw ParameterError("solve rhs length mismatch");
    FhMatrix aug(*f_, rows_, cols_ + 1);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) aug.set(r, c, at(r, c));
        aug.set(r, cols_, rhs[r]);
    }
    std::vector<size_t> pivots = aug.rref_in_place();
    FhVec x(cols_, 0);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols_) return std::nullopt;  // 0 = nonzero row
        x[pivots[r]] = aug.at(r, cols_);
    }
    return x;
}

RankRrefKernel rank_and_rref(const FhMatrix& m) {
    FhMatrix r = m;
    size_t rank = r.rref_in_place().size();
    return RankRrefKernel{rank, std::move(r), m.kernel()};
}

int rank_distance(const FhMatrix& a, const FhMatrix& b) {
    return static_cast<int>(a.sub(b).rank());
}

LevelMatrix::LevelMatrix(const FieldTower& t, int level, size_t rows, size_t cols)
    : t_(&t), level_(level), rows_(rows), cols_(cols), a_(rows * cols, t.zero(level)) {}

std::vector<size_t> LevelMatrix::rref_in_place() {
    std::vector<size_t> pivots;
    size_t lead = 0;
    for (size_t col = 0; col < cols_ && lead < rows_; ++col) {
        size_t sel = lead;
        while (sel < rows_ && t_->is_zero(at(sel, col))) ++sel;
        if (sel == rows_) continue;
        if (sel != lead)
            for (size_t c = 0; c < cols_; ++c) std::swap(a_[sel * cols_ + c], a_[lead * cols_ + c]);
        Felem inv = t_->inv(at(lead, col));
        for (size_t c = 0; c < cols_; ++c) set(lead, c, t_->mul(at(lead, c), inv));
        for (size_t r = 0; r < rows_; ++r) {
            if (r == lead) continue;
            Felem v = at(r, col);
            if (t_->is_zero(v)) continue;
            for (size_t c = 0; c < cols_; ++c)
                set(r, c, t_->sub(at(r, c), t_->mul(v, at(lead, c))));
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

std::vector<std::vector<Felem>> LevelMatrix::kernel() const {
    LevelMatrix m = *this;
    std::vector<size_t> pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Felem>> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Felem> v(cols_, t_->zero(level_));
        v[free] = t_->one(level_);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = t_->neg(m.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ldlab
