#ifndef LDLAB_LINPOLY_HPP
#define LDLAB_LINPOLY_HPP

#include <vector>

#include "ldlab/subspace.hpp"
#include "ldlab/tower.hpp"

namespace ldlab {

/// Linearized polynomial sum_i c_i X^{h^{b*i}} over a tower level. The base
/// exponent b tags whether the monomials step by h (b = 1) or by q = h^n
/// (b = n); both views share this one type so they cannot be mixed silently.
class LinearizedPoly {
  public:
    LinearizedPoly(const FieldTower& t, int level, int base_exp)
        : t_(&t), level_(level), base_exp_(base_exp) {}
    LinearizedPoly(const FieldTower& t, int level, int base_exp, std::vector<Felem> coeffs);

    const FieldTower& tower() const { return *t_; }
    int level() const { return level_; }
    int base_exp() const { return base_exp_; }
    const std::vector<Felem>& coeffs() const { return c_; }
    size_t coeff_count() const { return c_.size(); }
    const Felem& coeff(size_t i) const { return c_[i]; }

    bool is_zero() const;
    /// Largest i with c_i != 0, or -1 for the zero polynomial.
    int b_degree() const;

    /// lin_eval: x may live at a sublevel; it is embedded first.
    Felem eval(const Felem& x) const;

    /// lin_twist: coefficients through frobenius(., q_exp * j). Satisfies
    /// twist(f, j).eval(a) = frobenius(f.eval(a), q_exp*j) for a in F_{h^q_exp}.
    LinearizedPoly twist(int j, int q_exp) const;

    /// lin_kernel: {x : f(x) = 0} as a subspace of the level's F_h-coordinate
    /// space. Throws on the zero polynomial.
    FhSubspace kernel() const;

    /// F_h-matrix of the evaluation map on the level (column j = image of the
    /// j-th coordinate basis vector).
    FhMatrix matrix() const;

    LinearizedPoly add(const LinearizedPoly& o) const;
    bool operator==(const LinearizedPoly& o) const {
        return level_ == o.level_ && base_exp_ == o.base_exp_ && c_ == o.c_;
    }

  private:
    const FieldTower* t_;
    int level_;
    int base_exp_;
    std::vector<Felem> c_;  // dense, fixed length (degree bound is the caller's contract)
};

}  // namespace ldlab

#endif
