#include "ldlab/gf.hpp"

#include "ldlab/errors.hpp"

namespace ldlab {

namespace {

bool small_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

bool Gf::is_prime_power(uint32_t h, uint32_t* p_out, int* e_out) {
    if (h < 2 || h > 65536) return false;
    uint32_t p = h;
    for (uint32_t d = 2; d * d <= h; ++d) {
        if (h % d == 0) {
            p = d;
            break;
        }
    }
    if (!small_prime(p)) return false;
    uint32_t v = h;
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1) return false;
    if (p_out) *p_out = p;
    if (e_out) *e_out = e;
    return true;
}

Gf::Gf(uint32_t h) : h_(h) {
    uint32_t p;
    int e;
    if (!is_prime_power(h, &p, &e))
        throw ParameterError("base field size must be a prime power in [2, 2^16], got " +
                             std::to_string(h));
    p_ = p;
    e_ = e;

    // Modulus over F_p: lexicographically smallest monic irreducible of degree e,
    // coefficient vectors ordered as integers. Irreducibility by exhaustive root /
    // factor scan is fine at this size; for e == 1 the modulus is x - 0 placeholder.
    mod_.assign(static_cast<size_t>(e_) + 1, 0);
    mod_[e_] = 1;
    if (e_ > 1) {
        uint64_t count = 1;
        for (int i = 0; i < e_; ++i) count *= p_;
        bool found = false;
        for (uint64_t low = 0; low < count && !found; ++low) {
            uint64_t v = low;
            for (int i = 0; i < e_; ++i) {
                mod_[i] = static_cast<uint32_t>(v % p_);
                v /= p_;
            }
            // Trial division by all monic polynomials of degree <= e/2.
            bool irred = mod_[0] != 0;  // x | f otherwise
            for (int dd = 1; irred && dd <= e_ / 2; ++dd) {
                uint64_t dcount = 1;
                for (int i = 0; i < dd; ++i) dcount *= p_;
                for (uint64_t dv = 0; dv < dcount && irred; ++dv) {
                    std::vector<uint32_t> divisor(static_cast<size_t>(dd) + 1, 0);
                    divisor[dd] = 1;
                    uint64_t t = dv;
                    for (int i = 0; i < dd; ++i) {
                        divisor[i] = static_cast<uint32_t>(t % p_);
                        t /= p_;
                    }
                    // Remainder of mod_ by divisor over F_p.
                    std::vector<uint32_t> r(mod_);
                    for (int i = e_; i >= dd; --i) {
                        uint32_t c = r[i];
                        if (c == 0) continue;
                        for (int j = 0; j <= dd; ++j) {
                            uint32_t prod = (c * divisor[j]) % p_;
                            uint32_t& slot = r[i - dd + j];
                            slot = (slot + p_ - prod) % p_;
                        }
                    }
                    bool zero = true;
                    for (int i = 0; i < dd; ++i) zero = zero && r[i] == 0;
                    if (zero) irred = false;
                }
            }
            if (irred) found = true;
        }
        if (!found) throw ParameterError("no irreducible modulus found (internal)");
    }

    // Log/antilog tables. Generator = smallest element (integer order) whose
    // multiplicative order is h-1, found by direct power stepping.
    exp_.assign(h_ - 1, 0);
    log_.assign(h_, 0);
    if (h_ == 2) {
        gen_ = 1;
        exp_[0] = 1;
        log_[1] = 0;
        return;
    }
    for (uint32_t cand = 2; cand < h_; ++cand) {
        uint32_t x = 1;
        uint32_t steps = 0;
        bool full = false;
        do {
            x = poly_mul(x, cand);
            ++steps;
            if (x == 1) {
                full = (steps == h_ - 1);
                break;
            }
        } while (steps < h_);
        if (full) {
            gen_ = cand;
            break;
        }
    }
    if (gen_ == 0) throw ParameterError("no generator found (internal)");
    uint32_t x = 1;
    for (uint32_t i = 0; i < h_ - 1; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = poly_mul(x, gen_);
    }
}

uint32_t Gf::add_general(uint32_t a, uint32_t b) const {
    uint32_t out = 0, mult = 1;
    while (a || b) {
        uint32_t d = (a % p_ + b % p_) % p_;
        out += d * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

uint32_t Gf::neg(uint32_t a) const {
    if (p_ == 2) return a;
    uint32_t out = 0, mult = 1;
    while (a) {
        uint32_t d = a % p_;
        out += (d ? p_ - d : 0) * mult;
        mult *= p_;
        a /= p_;
    }
    return out;
}

uint32_t Gf::poly_mul(uint32_t a, uint32_t b) const {
    // Schoolbook digits-with-reduction; only used while building the tables.
    std::vector<uint32_t> acc(2 * static_cast<size_t>(e_), 0);
    std::vector<uint32_t> da(e_, 0), db(e_, 0);
    for (int i = 0; i < e_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) acc[i + j] = (acc[i + j] + da[i] * db[j]) % p_;
    for (int i = 2 * e_ - 1; i >= e_; --i) {
        uint32_t c = acc[i];
        if (c == 0) continue;
        acc[i] = 0;
        for (int j = 0; j < e_; ++j) {
            uint32_t prod = (c * mod_[j]) % p_;
            acc[i - e_ + j] = (acc[i - e_ + j] + p_ - prod) % p_;
        }
    }
    uint32_t out = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        out += acc[i] * mult;
        mult *= p_;
    }
    return out;
}

uint32_t Gf::inv(uint32_t a) const {
    if (a == 0) throw ParameterError("division by zero in F_" + std::to_string(h_));
    if (h_ == 2) return 1;
    return exp_[(h_ - 1 - log_[a]) % (h_ - 1)];
}

uint32_t Gf::pow(uint32_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (h_ == 2) return 1;
    uint64_t l = (uint64_t{log_[a]} * (e % (h_ - 1))) % (h_ - 1);
    return exp_[l];
}

uint32_t Gf::pow(uint32_t a, const BigUint& e) const {
    if (a == 0) return e.is_zero() ? 1 : 0;
    if (h_ == 2) return 1;
    uint64_t er = e.mod_small(h_ - 1);
    return pow(a, er);
}

uint64_t Gf::order(uint32_t a) const {
    if (a == 0) throw ParameterError("order of zero");
    if (a == 1) return 1;
    uint64_t group = h_ - 1;
    uint64_t l = log_[a];
    // ord = (h-1) / gcd(h-1, log a)
    uint64_t x = group, y = l;
    while (y) {
        uint64_t t = x % y;
        x = y;
        y = t;
    }
    return group / x;
}

}  // namespace ldlab
