#ifndef LDLAB_DESIGNS_HPP
#define LDLAB_DESIGNS_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/rng.hpp"
#include "ldlab/subspace.hpp"
#include "ldlab/tower.hpp"

namespace ldlab {

/// Common zero set of the stacked diagonal power maps
///   f_i(x_1..x_m) = sum_j gamma_j^i x_j^{h^{m-j}},   i = 1..s,
/// inside F_Q^m (Q = h^tau, the given tower level), restricted to rational
/// points. All degrees are powers of h, so each f_i is F_h-linear and the
/// point set is an F_h-subspace of dimension exactly tau(m-s).
struct EvasiveVariety {
    std::shared_ptr<const FieldTower> tower;
    int level = 1;  // F_Q
    int m = 0, s = 0;
    std::vector<Felem> gammas;  // first m powers of the canonical generator
    FhSubspace basis;           // rational points, in F_h^{tau m}

    int tau() const { return tower->degree(level); }
    /// Membership through the defining maps (independent of `basis`).
    bool contains_by_maps(const FhVec& point) const;
};

EvasiveVariety dl_variety(std::shared_ptr<const FieldTower> tower, int level, int m, int s);

enum class DesignKind { Random, Window, Combined, Search };
/// Which field the intersection dimensions are measured over: the window
/// construction is a (s, 2s/eps, 1) design over F_Q itself, everything else
/// is an (s, A, tau) F_h-design.
enum class DesignMeasure { OverBase, OverLevel };

struct DesignFamily {
    std::shared_ptr<const FieldTower> tower;
    int level = 1;  // F_Q = h^tau
    int m = 0, s = 0;
    double epsilon = 0;
    double claimed_a = 0;  // recorded hypothesis, confirmed only by verify_design
    DesignKind kind = DesignKind::Random;
    DesignMeasure measure = DesignMeasure::OverBase;
    std::vector<FhSubspace> members;  // subspaces of F_h^{tau m}
    std::vector<std::string> notes;   // provenance + parameter-regime warnings

    int tau() const { return tower->degree(level); }
    size_t ambient() const { return static_cast<size_t>(tau()) * m; }

    std::string to_json() const;
    static DesignFamily from_json(const std::string& text);
};

/// M independent uniformly random F_h-subspaces of codimension ceil(eps*tau*m).
/// The analysis-regime conditions (s < m*eps/2, M within the stated cap) are
/// recorded as notes when violated; verify_design remains the gate.
DesignFamily random_design(std::shared_ptr<const FieldTower> tower, int level, int m, int s,
                           double epsilon, size_t members, Rng& rng);

/// Folded-evaluation kernels: identify F_Q^m with polynomials of degree < m,
/// fix the canonical generator g of F_Q^*, and take
///   H_i = { p : p(g^{i*r + j}) = 0 for 0 <= j < r },  r = ceil(eps*m),
/// over disjoint windows of the generator cycle. members = 0 takes all
/// available windows. Claimed bound 2s/eps measured over F_Q.
DesignFamily window_design(std::shared_ptr<const FieldTower> tower, int level, int m, int s,
                           double epsilon, size_t members);

/// H_i = V_i intersect S; claimed bound 2(m-1)s/eps measured over F_h.
DesignFamily combined_design(const DesignFamily& window, const EvasiveVariety& variety);

/// Greedy fallback for tests: draw `pool` random subspaces of the given
/// codimension and keep the `members` whose family minimizes the exhaustively
/// verified worst-case sum.
DesignFamily search_design(std::shared_ptr<const FieldTower> tower, int level, int m, int s,
                           int codim, size_t members, size_t pool, Rng& rng);

struct VerifyMode {
    bool exhaustive = true;
    uint64_t samples = 0;    // for sampled mode
    uint64_t limit = 1000000;  // exhaustive cap on the subspace count
};

struct VerifyReport {
    bool exhaustive = true;
    uint64_t inspected = 0;
    uint64_t max_sum_dim_h = 0;
    uint64_t max_sum_dim_level = 0;  // only when every member is F_Q-linear
    bool level_dims_valid = false;
    std::vector<std::vector<Felem>> worst_witness;  // F_Q basis of the worst W
    double claimed_a = 0;
    DesignMeasure measure = DesignMeasure::OverBase;
    bool pass = false;

    uint64_t observed_bound() const {
        return measure == DesignMeasure::OverLevel ? max_sum_dim_level : max_sum_dim_h;
    }
};

/// Enumerates (or samples) s-dimensional F_Q-subspaces W of F_Q^m, computes
/// sum_i dim(H_i ∩ W) over F_h (and over F_Q when well-defined), and reports
/// the maximum with its witness. When csv is non-null, one row per inspected W.
VerifyReport verify_design(const DesignFamily& family, int s, const VerifyMode& mode,
                           Rng* rng = nullptr, std::ostream* csv = nullptr);

/// Expand an F_Q-row-space basis into the F_h-subspace of F_h^{tau m} it spans.
FhSubspace expand_level_rows(const FieldTower& t, int level, int m,
                             const std::vector<std::vector<Felem>>& rows);

}  // namespace ldlab

#endif
