#ifndef LDLAB_MATRIX_HPP
#define LDLAB_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ldlab/gf.hpp"
#include "ldlab/tower.hpp"

namespace ldlab {

using FhVec = std::vector<uint32_t>;

/// Dense matrix over a base field Gf. The workhorse for everything that lives
/// in F_h coordinates: rank-metric codewords, subspace bases, design members,
/// the periodic-subspace dynamic program.
class FhMatrix {
  public:
    FhMatrix() = default;
    FhMatrix(const Gf& f, size_t rows, size_t cols)
        : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static FhMatrix identity(const Gf& f, size_t n);
    static FhMatrix from_rows(const Gf& f, const std::vector<FhVec>& rows);

    const Gf& field() const { return *f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = v; }
    FhVec row(size_t r) const { return FhVec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }
    void set_row(size_t r, const FhVec& v);

    bool operator==(const FhMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    FhMatrix transpose() const;
    FhMatrix mul(const FhMatrix& o) const;
    FhVec mul_vec(const FhVec& v) const;        // this * v (column action)
    FhVec mul_row_vec(const FhVec& v) const;    // v * this
    FhMatrix add(const FhMatrix& o) const;
    FhMatrix sub(const FhMatrix& o) const;
    /// Stack vertically.
    static FhMatrix vstack(const FhMatrix& top, const FhMatrix& bottom);
    static FhMatrix hstack(const FhMatrix& left, const FhMatrix& right);
    FhMatrix slice_cols(size_t from, size_t count) const;
    FhMatrix slice_rows(size_t from, size_t count) const;

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<size_t> rref_in_place();
    size_t rank() const;
    /// Kernel basis as rows (canonical for a given matrix: free columns in order).
    FhMatrix kernel() const;
    /// One solution of this * x = rhs, if consistent.
    std::optional<FhVec> solve(const FhVec& rhs) const;

  private:
    const Gf* f_ = nullptr;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> a_;
};

struct RankRrefKernel {
    size_t rank;
    FhMatrix rref;
    FhMatrix kernel;
};
/// rank_and_rref operation: Gaussian elimination over F_h.
RankRrefKernel rank_and_rref(const FhMatrix& m);

int rank_distance(const FhMatrix& a, const FhMatrix& b);

/// Dense matrix over a tower level; used for the interpolation systems over
/// the big message fields and nothing performance-critical.
class LevelMatrix {
  public:
    LevelMatrix(const FieldTower& t, int level, size_t rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Felem& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, Felem v) { a_[r * cols_ + c] = std::move(v); }

    std::vector<size_t> rref_in_place();
    /// Canonical kernel basis (one vector per free column, in column order).
    std::vector<std::vector<Felem>> kernel() const;

  private:
    const FieldTower* t_;
    int level_;
    size_t rows_, cols_;
    std::vector<Felem> a_;
};

}  // namespace ldlab

#endif
