#ifndef LDLAB_POLY_HPP
#define LDLAB_POLY_HPP

#include <vector>

#include "ldlab/tower.hpp"

namespace ldlab {

/// Dense univariate polynomial over one tower level: coefficient list, index =
/// degree, trimmed so the leading coefficient is nonzero (zero poly = empty).
using Poly = std::vector<Felem>;

/// Polynomial arithmetic over a fixed tower level. Stateless apart from the
/// (tower, level) handle; safe to create on the fly.
class PolyRing {
  public:
    PolyRing(const FieldTower& t, int level) : t_(&t), level_(level) {}

    const FieldTower& tower() const { return *t_; }
    int level() const { return level_; }

    Poly zero() const { return {}; }
    Poly one() const { return {t_->one(level_)}; }
    Poly x() const { return {t_->zero(level_), t_->one(level_)}; }
    Poly constant(const Felem& c) const;
    Poly from_coeffs(std::vector<Felem> cs) const;

    int deg(const Poly& p) const { return static_cast<int>(p.size()) - 1; }
    bool is_zero(const Poly& p) const { return p.empty(); }
    void trim(Poly& p) const;

    bool equal(const Poly& a, const Poly& b) const { return a == b; }

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly scale(const Poly& a, const Felem& c) const;
    Poly shift(const Poly& a, int k) const;  // multiply by X^k

    /// Quotient and remainder; b must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    /// Exact division; throws if the remainder is nonzero.
    Poly div_exact(const Poly& a, const Poly& b) const;

    Poly monic(const Poly& a) const;
    Poly gcd(Poly a, Poly b) const;  // monic gcd

    Felem eval(const Poly& p, const Felem& x) const;
    /// Substitute c*X for X: coefficient i gets multiplied by c^i.
    Poly compose_scale(const Poly& p, const Felem& c) const;

    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const;
    Poly powmod(const Poly& a, const BigUint& e, const Poly& m) const;
    Poly powmod(const Poly& a, uint64_t e, const Poly& m) const;
    /// a^{|level|} mod m via repeated h-th powers (cheap Frobenius of residues).
    Poly frob_powmod(const Poly& a, const Poly& m) const;

    /// Deterministic Rabin irreducibility test for monic p of degree >= 1.
    bool irreducible(const Poly& p) const;

    std::string to_string(const Poly& p) const;

  private:
    const FieldTower* t_;
    int level_;
};

/// Lexicographically smallest monic irreducible of degree d over the level
/// (non-leading coefficient vectors ordered as integers, constant term fastest).
Poly lex_smallest_irreducible(const FieldTower& t, int level, int d);

/// Monic minimal polynomial of beta over a lower level; degree divides the
/// relative extension degree.
Poly minimal_polynomial(const FieldTower& t, const Felem& beta, int over_level);

}  // namespace ldlab

#endif
