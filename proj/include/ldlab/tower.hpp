#ifndef LDLAB_TOWER_HPP
#define LDLAB_TOWER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/biguint.hpp"
#include "ldlab/gf.hpp"
#include "ldlab/rng.hpp"

namespace ldlab {

class Rng;

/// Element of a FieldTower level: flat coordinate vector over the base field,
/// length = absolute degree of the level. The layout is the nested polynomial
/// basis, so the coordinates of a level-(i-1) element are a prefix of its image
/// at level i and down-casting is a suffix-zero check.
struct Felem {
    int level = 0;
    std::vector<uint32_t> c;

    bool operator==(const Felem& o) const { return level == o.level && c == o.c; }
    bool operator!=(const Felem& o) const { return !(*this == o); }
    bool operator<(const Felem& o) const {  // coordinate-lex, for canonical ordering
        if (level != o.level) return level < o.level;
        for (size_t i = c.size(); i-- > 0;)
            if (c[i] != o.c[i]) return c[i] < o.c[i];
        return false;
    }
};

/// Chain F_h = L_0 <= L_1 <= ... with L_i = L_{i-1}[x]/(modulus_i). Moduli are
/// the lexicographically smallest monic irreducibles over the level below
/// (coefficient vectors ordered as integers), so a tower is reproducible
/// bit-for-bit from (h, degrees). Immutable after construction.
class FieldTower {
  public:
    /// degrees are absolute over F_h, starting at 1, strictly increasing,
    /// each dividing the next (e.g. {1, n, n*m}).
    FieldTower(uint32_t h, const std::vector<int>& degrees);

    FieldTower(FieldTower&& o) noexcept
        : base_(std::move(o.base_)),
          levels_(std::move(o.levels_)),
          inv_exp_(std::move(o.inv_exp_)),
          sylow_cache_(std::move(o.sylow_cache_)) {}
    FieldTower(const FieldTower&) = delete;
    FieldTower& operator=(const FieldTower&) = delete;

    const Gf& base() const { return base_; }
    uint32_t h() const { return base_.size(); }
    int num_levels() const { return static_cast<int>(levels_.size()); }
    int degree(int level) const { return levels_.at(level).abs_deg; }
    int rel_degree(int level) const { return levels_.at(level).rel_deg; }
    /// Level index with the given absolute degree, or -1.
    int level_with_degree(int deg) const;

    BigUint level_size(int level) const;   // h^degree
    BigUint level_order(int level) const;  // h^degree - 1

    /// Modulus of a level as coefficients over the level below (rel_deg + 1 of
    /// them, monic). Level 0 has no modulus.
    const std::vector<Felem>& modulus(int level) const { return levels_.at(level).modulus; }

    // --- element construction -------------------------------------------------
    Felem zero(int level) const;
    Felem one(int level) const;
    Felem from_base(int level, uint32_t c) const;
    /// from_coordinates: validates the length against the level degree.
    Felem from_coords(int level, std::vector<uint32_t> coords) const;
    /// fh_coordinates is the identity on the stored representation.
    const std::vector<uint32_t>& coords(const Felem& a) const { return a.c; }

    bool is_zero(const Felem& a) const;
    bool is_one(const Felem& a) const;

    // --- arithmetic -----------------------------------------------------------
    Felem add(const Felem& a, const Felem& b) const;
    Felem sub(const Felem& a, const Felem& b) const;
    Felem neg(const Felem& a) const;
    Felem mul(const Felem& a, const Felem& b) const;
    Felem inv(const Felem& a) const;
    Felem div(const Felem& a, const Felem& b) const { return mul(a, inv(b)); }
    Felem pow(const Felem& a, uint64_t e) const;
    Felem pow(const Felem& a, const BigUint& e) const;
    /// Multiply by a base-field scalar (coordinatewise).
    Felem scale(const Felem& a, uint32_t c) const;

    /// x -> x^{h^e}; F_h-linear bijection of every level.
    Felem frobenius(const Felem& a, int e) const;
    /// Inverse Frobenius (h^e-th root), also a bijection.
    Felem frobenius_inv(const Felem& a, int e) const;

    // --- level changes ----------------------------------------------------------
    /// Canonical injection into a higher level (zero-pad in the nested basis).
    Felem embed(const Felem& a, int to_level) const;
    /// Down-cast to a lower level when a lies in its image; nullopt otherwise.
    std::optional<Felem> try_project(const Felem& a, int to_level) const;
    /// Embedding matrix over F_h between two levels, row-major degree(to) x degree(from).
    std::vector<std::vector<uint32_t>> embedding_matrix(int from_level, int to_level) const;

    /// Coordinates of `a` over an intermediate level: the flat vector chunked
    /// into degree(over) wide groups, each a level-`over` element.
    std::vector<Felem> coords_over(const Felem& a, int over_level) const;
    Felem from_coords_over(int level, int over_level, const std::vector<Felem>& chunks) const;

    // --- enumeration / sampling -------------------------------------------------
    /// Odometer step through the level, starting from zero; false on wrap.
    bool next_element(Felem& a) const;
    Felem random_element(int level, Rng& rng) const;
    Felem random_nonzero(int level, Rng& rng) const;

    /// Smallest generator of the level's multiplicative group (by coordinate
    /// order). Requires the level size to fit in 64 bits.
    Felem multiplicative_generator(int level) const;

    /// All roots of X^ell - beta in beta's level; empty when none lie there.
    /// For gcd(ell, h) = 1 the count is 0, 1 or gcd(ell, |L*|); characteristic
    /// powers in ell are handled by inverse Frobenius. ell's non-characteristic
    /// part must be prime.
    std::vector<Felem> roots_of_binomial(uint64_t ell, const Felem& beta) const;

    std::string to_json() const;
    static FieldTower from_json(const std::string& text);

  private:
    struct Level {
        int abs_deg = 1;
        int rel_deg = 1;
        std::vector<Felem> modulus;  // over the level below; empty for level 0
    };

    void check_level(int level) const;
    void check_same(const Felem& a, const Felem& b) const;
    // Raw kernels on coordinate spans; `level` indexes levels_.
    void mul_raw(int level, const uint32_t* a, const uint32_t* b, uint32_t* out) const;
    void add_span(const uint32_t* a, const uint32_t* b, uint32_t* out, int n) const;
    void sub_span(const uint32_t* a, const uint32_t* b, uint32_t* out, int n) const;

    Gf base_;
    std::vector<Level> levels_;
    std::vector<BigUint> inv_exp_;  // h^deg - 2 per level, for inversion

    // Memoized ell-Sylow data for root extraction, keyed by (level, ell).
    struct SylowCache {
        BigUint u;
        int v = 0;
        Felem g, g_inv;
        std::vector<Felem> omega_pow;
    };
    const SylowCache& sylow_data(int level, uint64_t ell, const BigUint& m_div) const;
    mutable std::mutex cache_mu_;
    mutable std::map<std::pair<int, uint64_t>, SylowCache> sylow_cache_;

    friend class PolyRing;
};

/// build_tower per the module contract; validates h and the degree chain.
std::shared_ptr<FieldTower> build_tower(uint32_t h, const std::vector<int>& degrees);

}  // namespace ldlab

#endif
