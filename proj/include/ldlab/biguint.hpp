#ifndef LDLAB_BIGUINT_HPP
#define LDLAB_BIGUINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ldlab {

/// Minimal unsigned big integer. Field orders in this library reach h^deg with
/// h^deg up to ~2^512 (e.g. |F_{8^119}| ~ 2^357), so exponents do not fit in a
/// machine word. Only the handful of operations the exponent plumbing needs are
/// provided: small-operand arithmetic, bit access, and small divmod.
class BigUint {
  public:
    BigUint() = default;
    BigUint(uint64_t v) {  // NOLINT: implicit by design
        while (v) {
            limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
            v >>= 32;
        }
    }

    static BigUint power(uint64_t base, uint64_t exp) {
        BigUint r{1};
        for (uint64_t i = 0; i < exp; ++i) r.mul_small(base);
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }

    void add(const BigUint& o) {
        uint64_t carry = 0;
        size_t n = o.limbs_.size() > limbs_.size() ? o.limbs_.size() : limbs_.size();
        limbs_.resize(n, 0);
        for (size_t i = 0; i < n; ++i) {
            uint64_t s = uint64_t{limbs_[i]} + (i < o.limbs_.size() ? o.limbs_[i] : 0) + carry;
            limbs_[i] = static_cast<uint32_t>(s & 0xffffffffu);
            carry = s >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    }

    void add_small(uint64_t v) {
        size_t i = 0;
        uint64_t carry = v;
        while (carry) {
            if (i == limbs_.size()) limbs_.push_back(0);
            uint64_t s = uint64_t{limbs_[i]} + (carry & 0xffffffffu);
            limbs_[i] = static_cast<uint32_t>(s & 0xffffffffu);
            carry = (carry >> 32) + (s >> 32);
            ++i;
        }
    }

    /// Subtract a small value; the result must stay nonnegative.
    void sub_small(uint64_t v) {
        size_t i = 0;
        uint64_t borrow = v;
        while (borrow) {
            uint64_t piece = borrow & 0xffffffffu;
            borrow >>= 32;
            uint64_t cur = limbs_[i];
            if (cur >= piece) {
                limbs_[i] = static_cast<uint32_t>(cur - piece);
            } else {
                limbs_[i] = static_cast<uint32_t>(cur + 0x100000000ULL - piece);
                borrow += 1;
            }
            ++i;
        }
        trim();
    }

    void mul_small(uint64_t v) {
        if (v == 0 || is_zero()) {
            limbs_.clear();
            return;
        }
        uint64_t lo = v & 0xffffffffu, hi = v >> 32;
        std::vector<uint32_t> out(limbs_.size() + 2, 0);
        auto add_at = [&](size_t pos, uint64_t val) {
            while (val) {
                if (pos >= out.size()) out.push_back(0);
                uint64_t s = uint64_t{out[pos]} + (val & 0xffffffffu);
                out[pos] = static_cast<uint32_t>(s & 0xffffffffu);
                val = (val >> 32) + (s >> 32);
                ++pos;
            }
        };
        for (size_t i = 0; i < limbs_.size(); ++i) {
            add_at(i, lo * limbs_[i]);
            if (hi) add_at(i + 1, hi * limbs_[i]);
        }
        limbs_ = std::move(out);
        trim();
    }

    /// Divide in place by a value < 2^64, returning the remainder.
    uint64_t divmod_small(uint64_t v) {
        uint64_t rem = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            unsigned __int128 cur = (static_cast<unsigned __int128>(rem) << 32) | limbs_[i];
            limbs_[i] = static_cast<uint32_t>(cur / v);  // < 2^32 since rem < v
            rem = static_cast<uint64_t>(cur % v);
        }
        trim();
        return rem;
    }

    uint64_t mod_small(uint64_t v) const {
        uint64_t rem = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            unsigned __int128 cur = (static_cast<unsigned __int128>(rem) << 32) | limbs_[i];
            rem = static_cast<uint64_t>(cur % v);
        }
        return rem;
    }

    size_t bit_length() const {
        if (limbs_.empty()) return 0;
        uint32_t top = limbs_.back();
        size_t b = 0;
        while (top) {
            ++b;
            top >>= 1;
        }
        return 32 * (limbs_.size() - 1) + b;
    }

    bool bit(size_t i) const {
        size_t limb = i / 32;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i % 32)) & 1u;
    }

    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
    bool operator<(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
        for (size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
        return false;
    }
    bool operator<=(const BigUint& o) const { return *this == o || *this < o; }

    uint64_t to_u64() const {
        uint64_t v = 0;
        for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
        return v;
    }
    bool fits_u64() const { return limbs_.size() <= 2; }

    std::string to_string() const {
        if (is_zero()) return "0";
        BigUint t = *this;
        std::string s;
        while (!t.is_zero()) s.push_back(static_cast<char>('0' + t.divmod_small(10)));
        return {s.rbegin(), s.rend()};
    }

  private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<uint32_t> limbs_;  // little-endian base 2^32
};

}  // namespace ldlab

#endif
