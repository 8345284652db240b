#ifndef LDLAB_SUBSPACE_HPP
#define LDLAB_SUBSPACE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/matrix.hpp"

namespace ldlab {

/// Subspace of F_h^ambient in canonical form: basis rows in reduced row
/// echelon form, so equality is representation equality.
class FhSubspace {
  public:
    FhSubspace() = default;
    static FhSubspace zero(const Gf& f, size_t ambient);
    static FhSubspace full(const Gf& f, size_t ambient);
    static FhSubspace from_generators(const FhMatrix& gens);

    const Gf& field() const { return basis_.field(); }
    size_t ambient() const { return basis_.cols(); }
    size_t dim() const { return basis_.rows(); }
    const FhMatrix& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    bool contains(const FhVec& v) const;
    /// Residue of v after eliminating the basis components (zero iff contained).
    FhVec reduce(FhVec v) const;

    FhSubspace intersect(const FhSubspace& o) const;  // Zassenhaus
    FhSubspace sum(const FhSubspace& o) const;

    bool operator==(const FhSubspace& o) const { return basis_ == o.basis_; }

    /// All points; throws EnumerationLimit if h^dim exceeds max_points.
    std::vector<FhVec> enumerate(uint64_t max_points = 1u << 22) const;

  private:
    FhMatrix basis_;  // RREF, full row rank
    std::vector<size_t> pivots_;
};

/// Affine subspace: offset + direction, with the offset reduced against the
/// direction basis so equal sets have equal representations. The empty set is
/// first-class (a decoder outcome).
class AffineFhSubspace {
  public:
    AffineFhSubspace() : empty_(true) {}
    static AffineFhSubspace empty_set() { return AffineFhSubspace(); }
    static AffineFhSubspace point(const Gf& f, FhVec at);
    AffineFhSubspace(FhVec offset, FhSubspace direction);

    bool is_empty() const { return empty_; }
    size_t ambient() const { return dir_.ambient(); }
    /// Dimension; -1 for the empty set.
    int dim() const { return empty_ ? -1 : static_cast<int>(dir_.dim()); }
    const FhVec& offset() const { return offset_; }
    const FhSubspace& direction() const { return dir_; }

    bool contains(const FhVec& v) const;
    bool operator==(const AffineFhSubspace& o) const;

    std::vector<FhVec> enumerate(uint64_t max_points = 1u << 22) const;

  private:
    bool empty_ = false;
    FhVec offset_;
    FhSubspace dir_;
};

/// Intersection of two affine subspaces (a linear subspace is an affine one
/// with zero offset).
AffineFhSubspace affine_intersect(const AffineFhSubspace& a, const AffineFhSubspace& b);

/// Solution set of M x = rhs as an affine subspace of F_h^{cols}.
AffineFhSubspace affine_solve(const FhMatrix& m, const FhVec& rhs);

/// Count of s-dimensional F_Q-subspaces of F_Q^m (Gaussian binomial), capped:
/// returns nullopt when the count exceeds `limit`.
std::optional<uint64_t> count_subspaces(const BigUint& q, int m, int s, uint64_t limit);

/// Canonical enumeration of all s-dimensional subspaces of level^m over the
/// given tower level, by reduced-echelon pattern. Rows are level elements.
class LevelSubspaceEnumerator {
  public:
    LevelSubspaceEnumerator(const FieldTower& t, int level, int m, int s);
    /// Next basis (s rows of m level-elements); nullopt when exhausted.
    std::optional<std::vector<std::vector<Felem>>> next();

  private:
    bool advance_free();
    bool advance_pivots();
    void reset_free();
    std::vector<std::vector<Felem>> current() const;

    const FieldTower* t_;
    int level_, m_, s_;
    std::vector<int> pivot_;             // increasing pivot columns
    std::vector<std::pair<int, int>> free_pos_;  // (row, col) free slots
    std::vector<Felem> free_val_;
    bool done_ = false;
    bool fresh_ = true;
};

}  // namespace ldlab

#endif
