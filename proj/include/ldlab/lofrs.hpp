#ifndef LDLAB_LOFRS_HPP
#define LDLAB_LOFRS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/designs.hpp"
#include "ldlab/matrix.hpp"
#include "ldlab/poly.hpp"
#include "ldlab/rng.hpp"
#include "ldlab/subspace.hpp"

namespace ldlab {

/// Low-order folded Reed-Solomon code over F_Q: gamma generates F_Q^*,
/// ell | Q-1, N = (Q-1)/ell, zeta = gamma^N of order ell. A codeword is the
/// ell x N matrix of f on the cosets zeta^i gamma^j; column j carries the
/// coset of gamma^j.
struct LofrsCode {
    std::shared_ptr<const FieldTower> ftower;  // trivial tower, base = F_Q
    uint32_t q = 0;
    uint64_t ell = 0, n_cols = 0;
    int k = 0;
    uint32_t gamma = 0, zeta = 0;

    const Gf& field() const { return ftower->base(); }
    uint64_t block_length() const { return ell * n_cols; }  // = Q - 1
    double rate() const { return static_cast<double>(k) / static_cast<double>(block_length()); }
};

LofrsCode make_lofrs(uint32_t q, uint64_t ell, int k);

/// Message polynomials over F_Q as level-0 coefficient lists.
Poly qpoly(const LofrsCode& code, const std::vector<uint32_t>& digits);
Poly random_qpoly(const LofrsCode& code, int deg_bound, Rng& rng);

FhMatrix lofrs_encode(const LofrsCode& code, const Poly& f);

struct LofrsInterpolant {
    int s = 0;
    int D = 0;
    std::vector<Poly> a;  // a[0] deg <= D+k-1, a[1..s] deg <= D, not all zero
};

/// D = floor((ell*N - k + 1)/(s + 1)); conditions wrap around the rows, so s
/// may go up to ell.
LofrsInterpolant lofrs_interpolate(const LofrsCode& code, const FhMatrix& y, int s);

/// True iff A_0(X) + sum_r A_r(X) f(zeta^{r-1} X) is the zero polynomial.
bool lofrs_candidate_check(const LofrsCode& code, const LofrsInterpolant& q, const Poly& f);

/// Smallest agreement (count of fully correct columns) that forces
/// candidate_check for the transmitted polynomial: t > (D + k - 1)/ell.
int lofrs_agreement_threshold(const LofrsCode& code, int s);
/// Number of columns of y equal to the encoding of f.
int lofrs_agreement(const LofrsCode& code, const FhMatrix& y, const Poly& f);

/// Corrupt exactly `errors` distinct columns (each changed somewhere).
FhMatrix lofrs_column_errors(const LofrsCode& code, const FhMatrix& cw, int errors, Rng& rng);
/// Corrupt columns by adding one nonzero constant to every entry; on
/// codewords of polynomials in X^ell this keeps columns constant, which is
/// the degenerate instance of the RS reduction.
FhMatrix lofrs_constant_shift_errors(const LofrsCode& code, const FhMatrix& cw, int errors,
                                     Rng& rng);

/// Irreducible R over F_Q with deg R >= k and zeta X = X^{Q^a} mod R.
struct IrreducibleModulus {
    uint32_t q = 0;
    uint64_t ell = 0;
    int a = 0;
    Poly r;  // monic, coefficients at level 0 of a trivial tower over F_Q
    int attempts_used = 0;
    bool widened_interval = false;
    bool witness_ok = false;
    std::vector<uint32_t> witness_lhs;  // digits of X^{Q^a} mod R
    std::vector<uint32_t> witness_rhs;  // digits of zeta * X

    int degree() const { return static_cast<int>(r.size()) - 1; }
    std::string to_json() const;
};

/// Smallest prime a != ell in [ceil(k/ell), floor(2k/ell)], widening upward
/// when the interval holds no admissible prime.
int choose_extension_exponent(uint64_t ell, int k, bool* widened = nullptr);

IrreducibleModulus find_modulus(uint32_t q, uint64_t ell, int k, Rng& rng,
                                int max_attempts = 512);

struct ModulusStats {
    int attempts = 0;
    int successes = 0;
    int a = 0;
    std::vector<uint8_t> outcomes;  // per-attempt success flags
    std::optional<IrreducibleModulus> first;
};
/// Runs exactly `attempts` attempts (no early stop) and counts successes.
ModulusStats modulus_search_stats(uint32_t q, uint64_t ell, int k, Rng& rng, int attempts);

struct LofrsSolveResult {
    AffineFhSubspace residues;  // F_Q-affine candidates in F_Q[X]/R, ambient deg R
    AffineFhSubspace messages;  // the deg < k slice, ambient k
    bool operator_vanished = false;  // every A_i (i >= 1) divisible by R
    int r_power_removed = 0;
};

/// Reduces the interpolation identity modulo R, divides out common R powers,
/// and solves the F_Q-linear system A_0 + sum_i A_i f^{Q^{a(i-1)}} = 0 mod R.
LofrsSolveResult lofrs_solve(const LofrsCode& code, const LofrsInterpolant& q,
                             const IrreducibleModulus& modulus);

/// Linear precoding: messages restricted to the rational points of the
/// power-map variety over F_{Q^a}-blocks of the coefficient vector.
struct PrecodeSet {
    std::shared_ptr<const FieldTower> tower;  // (Q, {1, a})
    int a = 0, m_blocks = 0, s = 0, k = 0;
    double epsilon = 0;         // recorded rate target
    FhSubspace message_set;     // F_Q-subspace of the k coefficient coordinates
    uint64_t bound_base = 0;    // enumeration bound is q^{(m'-1) * dim}

    uint64_t enumeration_bound(int affine_dim) const;
};

PrecodeSet lofrs_precode(const LofrsCode& code, int a, int s, double epsilon);
Poly precode_message(const LofrsCode& code, const PrecodeSet& ps, const FhVec& params);
bool precode_contains(const LofrsCode& code, const PrecodeSet& ps, const Poly& f);
/// Intersect the solver's message space with the precode set and enumerate.
std::vector<Poly> precode_intersect(const LofrsCode& code, const PrecodeSet& ps,
                                    const AffineFhSubspace& messages,
                                    uint64_t max_points = 1u << 22);

enum class DemoCorruption { Random, ConstantShift };

/// The Reed-Solomon reduction: encode g(X) = f(X^ell) (all rows identical),
/// corrupt columns, decode. Reports the unique-recovery branch
/// g = -A_0 / sum A_i when some kernel vector keeps sum A_i nonzero, and the
/// degenerate branch (A_0 = 0, sum A_i = 0 present in the kernel) with the
/// solver-space dimension it produces, plus the precoded list on the same
/// received word.
struct RsDemoReport {
    bool recovered = false;
    Poly f_hat;
    bool degenerate_present = false;
    int degenerate_message_dim = -1;    // F_Q-dim of the solver's message space
    int precoded_list_size = -1;
    uint64_t precode_bound = 0;
    int agreement = 0;
};

RsDemoReport rs_reduce_demo(const LofrsCode& code, const Poly& f_low, int s, int errors,
                            DemoCorruption mode, Rng& rng,
                            const IrreducibleModulus* modulus = nullptr,
                            const PrecodeSet* precode = nullptr);

}  // namespace ldlab

#endif
