#ifndef LDLAB_GABIDULIN_HPP
#define LDLAB_GABIDULIN_HPP

#include <memory>
#include <vector>

#include "ldlab/designs.hpp"
#include "ldlab/linpoly.hpp"
#include "ldlab/matrix.hpp"
#include "ldlab/periodic.hpp"
#include "ldlab/rng.hpp"

namespace ldlab {

/// Gabidulin code over the tower F_h <= F_q = F_{h^n} <= F_{h^t}, t = n*m.
/// Messages are linearized polynomials with k coefficients in F_{h^t}
/// (monomials X^{h^i}); evaluation points are an F_h-basis of F_q embedded in
/// the message field. Codewords are n x t matrices over F_h.
struct GabidulinCode {
    std::shared_ptr<const FieldTower> tower;  // levels [1, n, n*m]
    int n = 0, m = 0, k = 0;
    std::vector<Felem> alphas;  // level-2 elements, F_h-independent, spanning F_q

    int t() const { return n * m; }
    int evaluation_level() const { return 1; }
    int message_level() const { return tower->num_levels() - 1; }  // == 1 when m == 1
};

/// Default construction: evaluation points are the embedded coordinate basis
/// of F_q. Validates independence and the span-F_q invariant.
GabidulinCode make_gabidulin(uint32_t h, int n, int m, int k);

using RankCodeword = FhMatrix;  // n x t over F_h

LinearizedPoly gab_message(const GabidulinCode& code, std::vector<Felem> coeffs);
LinearizedPoly gab_random_message(const GabidulinCode& code, Rng& rng);

RankCodeword gab_encode(const GabidulinCode& code, const LinearizedPoly& f);

/// Adds an error matrix of rank exactly e (product of full-rank factors).
RankCodeword rank_error_channel(const GabidulinCode& code, const RankCodeword& cw, int e,
                                Rng& rng);

/// Interpolant Q(X, Y_1..Y_s) = A_0(X) + sum_l A_l(Y_l) with h-linearized A_l,
/// h-degree(A_0) <= D + k - 1 and h-degree(A_l) <= D for l >= 1.
struct GabInterpolant {
    int s = 0;
    int D = 0;
    std::vector<std::vector<Felem>> a;  // a[l][u]: l = 0..s, u up to the degree bound
};

/// Degree budget D = floor((conditions - k + 1)/(s + 1)); the operative list
/// radius is conditions - k - D.
int gab_degree_budget(int conditions, int k, int s);
int gab_list_radius(const GabidulinCode& code, int s);

GabInterpolant gab_interpolate(const GabidulinCode& code, const RankCodeword& y, int s);

/// Interpolation over explicit (x_i, y_i) pairs; the subspace-code decoder
/// feeds received-basis pairs through this same system.
GabInterpolant gab_interpolate_pairs(const GabidulinCode& code, const std::vector<Felem>& xs,
                                     const std::vector<Felem>& ys, int s);

/// Expands the functional identity A_0(X) + sum_l A_l(twist_{l-1} f (X)) = 0
/// into the chained block system on the k message coefficients. Degenerate
/// leading coefficients are absorbed by Frobenius-rooting the identity; a
/// fully vanished identity throws DegenerateIdentity.
PeriodicSubspace gab_solve_periodic(const GabidulinCode& code, const GabInterpolant& q);

/// s = 1 pipeline; returns the message when exactly one candidate lies within
/// floor((n-k)/2) rank errors, throws DecodeFailure otherwise.
LinearizedPoly gab_unique_decode(const GabidulinCode& code, const RankCodeword& y);

/// Subcode restriction: message coefficient f_i ranges over design member
/// H_{i+1}. verified_a is the exhaustively verified design bound used as the
/// enumeration guard.
struct SubcodeSpec {
    GabidulinCode code;
    DesignFamily design;
    double verified_a = 0;

    std::vector<FhSubspace> blocks() const;  // H_1..H_k
    double rate() const;                     // sum dim H_i / (n t)
};

SubcodeSpec make_subcode(GabidulinCode code, DesignFamily design, double verified_a);

/// Message from per-block coordinates in the design bases.
LinearizedPoly subcode_encode_message(const SubcodeSpec& spec,
                                      const std::vector<FhVec>& block_coords);
RankCodeword subcode_encode(const SubcodeSpec& spec, const std::vector<FhVec>& block_coords);

struct ListDecodeResult {
    std::vector<LinearizedPoly> list;
    int pruned_dim = -1;    // affine dimension after design pruning (-1: empty)
    int kernel_dim_q = 0;   // dim_{F_q} W of the periodic output
    int radius = 0;         // operative radius used by the distance filter
};

ListDecodeResult subcode_list_decode(const SubcodeSpec& spec, const RankCodeword& y, int s);

}  // namespace ldlab

#endif
