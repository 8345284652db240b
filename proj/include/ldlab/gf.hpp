#ifndef LDLAB_GF_HPP
#define LDLAB_GF_HPP

#include <cstdint>
#include <vector>

#include "ldlab/biguint.hpp"

namespace ldlab {

/// Base field F_h for a prime power h = p^e <= 2^16.
///
/// Elements are the integers 0..h-1, read as base-p digit vectors: the value
/// sum d_i p^i stands for the residue of sum d_i x^i modulo the field's
/// irreducible polynomial. Addition is digit-wise mod p; multiplication,
/// inversion and powers go through log/antilog tables built at construction.
/// Tower levels above F_h store their elements as coordinate vectors of these
/// values, so nothing here ever needs more than one machine word.
class Gf {
  public:
    /// Throws ParameterError unless h is a prime power in [2, 2^16].
    explicit Gf(uint32_t h);

    uint32_t size() const { return h_; }
    uint32_t characteristic() const { return p_; }
    int prime_degree() const { return e_; }

    /// Smallest generator of F_h^* (by integer encoding); deterministic.
    uint32_t generator() const { return gen_; }

    /// Modulus used to build F_h over F_p, as p-ary digits, degree e_ monic.
    const std::vector<uint32_t>& prime_modulus() const { return mod_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (p_ == 2) return a ^ b;
        return add_general(a, b);
    }
    uint32_t neg(uint32_t a) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[idx(uint64_t{log_[a]} + log_[b])];
    }
    /// Throws ParameterError on a == 0.
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t pow(uint32_t a, const BigUint& e) const;

    /// Multiplicative order of a nonzero element.
    uint64_t order(uint32_t a) const;

    /// Discrete log base generator(); a must be nonzero.
    uint32_t log(uint32_t a) const { return log_[a]; }
    uint32_t exp(uint64_t e) const { return exp_[e % (h_ - 1)]; }

    /// True when h = p^e with p prime (and h in range); used by build_tower.
    static bool is_prime_power(uint32_t h, uint32_t* p_out = nullptr, int* e_out = nullptr);

  private:
    uint32_t add_general(uint32_t a, uint32_t b) const;
    uint32_t poly_mul(uint32_t a, uint32_t b) const;  // table-free, for setup
    uint32_t idx(uint64_t e) const { return static_cast<uint32_t>(e % (h_ - 1)); }

    uint32_t h_ = 0, p_ = 0, gen_ = 0;
    int e_ = 0;
    std::vector<uint32_t> mod_;   // monic irreducible over F_p, digits, length e_+1
    std::vector<uint32_t> exp_;   // exp_[i] = g^i, i in [0, h-2]
    std::vector<uint32_t> log_;   // log_[x] for x in [1, h-1]
};

}  // namespace ldlab

#endif
