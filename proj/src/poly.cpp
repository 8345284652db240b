#include "ldlab/poly.hpp"

#include <sstream>

#include "ldlab/errors.hpp"

namespace ldlab {

Poly PolyRing::constant(const Felem& c) const {
    if (t_->is_zero(c)) return {};
    return {c};
}

Poly PolyRing::from_coeffs(std::vector<Felem> cs) const {
    Poly p = std::move(cs);
    trim(p);
    return p;
}

void PolyRing::trim(Poly& p) const {
    while (!p.empty() && t_->is_zero(p.back())) p.pop_back();
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
    Poly out(std::max(a.size(), b.size()), t_->zero(level_));
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < a.size() && i < b.size())
            out[i] = t_->add(a[i], b[i]);
        else if (i < a.size())
            out[i] = a[i];
        else
            out[i] = b[i];
    }
    trim(out);
    return out;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::neg(const Poly& a) const {
    Poly out = a;
    for (auto& c : out) c = t_->neg(c);
    return out;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, t_->zero(level_));
    for (size_t i = 0; i < a.size(); ++i) {
        if (t_->is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (t_->is_zero(b[j])) continue;
            out[i + j] = t_->add(out[i + j], t_->mul(a[i], b[j]));
        }
    }
    trim(out);
    return out;
}

Poly PolyRing::scale(const Poly& a, const Felem& c) const {
    if (t_->is_zero(c)) return {};
    Poly out = a;
    for (auto& x : out) x = t_->mul(x, c);
    return out;
}

Poly PolyRing::shift(const Poly& a, int k) const {
    if (a.empty()) return {};
    Poly out(a.size() + k, t_->zero(level_));
    for (size_t i = 0; i < a.size(); ++i) out[i + k] = a[i];
    return out;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
    if (b.empty()) throw ParameterError("polynomial division by zero");
    Poly rem = a;
    trim(rem);
    const int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(rem.size()) - 1 < db) return {Poly{}, rem};
    Poly quo(rem.size() - db, t_->zero(level_));
    const Felem lead_inv = t_->inv(b.back());
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        if (t_->is_zero(rem[i])) continue;
        Felem q = t_->mul(rem[i], lead_inv);
        quo[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = t_->sub(rem[i - db + j], t_->mul(q, b[j]));
    }
    rem.resize(db, t_->zero(level_));
    trim(rem);
    trim(quo);
    return {quo, rem};
}

Poly PolyRing::div_exact(const Poly& a, const Poly& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) throw ParameterError("polynomial division is not exact");
    return q;
}

Poly PolyRing::monic(const Poly& a) const {
    if (a.empty()) return {};
    return scale(a, t_->inv(a.back()));
}

Poly PolyRing::gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return {};
    return monic(a);
}

Felem PolyRing::eval(const Poly& p, const Felem& x) const {
    Felem acc = t_->zero(level_);
    for (size_t i = p.size(); i-- > 0;) acc = t_->add(t_->mul(acc, x), p[i]);
    return acc;
}

Poly PolyRing::compose_scale(const Poly& p, const Felem& c) const {
    Poly out = p;
    Felem power = t_->one(level_);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = t_->mul(out[i], power);
        power = t_->mul(power, c);
    }
    trim(out);
    return out;
}

Poly PolyRing::mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    return divmod(mul(a, b), m).second;
}

Poly PolyRing::powmod(const Poly& a, const BigUint& e, const Poly& m) const {
    if (e.is_zero()) return one();
    Poly r = divmod(a, m).second;
    for (size_t i = e.bit_length() - 1; i-- > 0;) {
        r = mulmod(r, r, m);
        if (e.bit(i)) r = mulmod(r, a, m);
    }
    return r;
}

Poly PolyRing::powmod(const Poly& a, uint64_t e, const Poly& m) const {
    return powmod(a, BigUint{e}, m);
}

Poly PolyRing::frob_powmod(const Poly& a, const Poly& m) const {
    // a^{|L|} mod m = (a^h)^h... applied deg(L) times; each step is a small power.
    Poly r = divmod(a, m).second;
    const int deg = t_->degree(level_);
    for (int i = 0; i < deg; ++i) r = powmod(r, uint64_t{t_->h()}, m);
    return r;
}

bool PolyRing::irreducible(const Poly& p) const {
    const int d = deg(p);
    if (d < 1) return false;
    if (!t_->is_one(p.back())) throw ParameterError("irreducibility test expects monic input");
    if (d == 1) return true;
    // Rabin: X^{S^d} = X mod p and gcd(X^{S^{d/r}} - X, p) = 1 for prime r | d.
    std::vector<int> prime_divs;
    int dd = d;
    for (int r = 2; r * r <= dd; ++r) {
        if (dd % r == 0) {
            prime_divs.push_back(r);
            while (dd % r == 0) dd /= r;
        }
    }
    if (dd > 1) prime_divs.push_back(dd);

    Poly xp = x();
    std::vector<Poly> frob_chain(d + 1);  // frob_chain[j] = X^{S^j} mod p, filled as needed
    frob_chain[0] = divmod(xp, p).second;
    int have = 0;
    auto frob_to = [&](int j) {
        while (have < j) {
            frob_chain[have + 1] = frob_powmod(frob_chain[have], p);
            ++have;
        }
        return frob_chain[j];
    };
    for (int r : prime_divs) {
        Poly diff = sub(frob_to(d / r), frob_chain[0]);
        if (deg(gcd(diff, p)) != 0) return false;
    }
    return equal(frob_to(d), frob_chain[0]);
}

std::string PolyRing::to_string(const Poly& p) const {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (t_->is_zero(p[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << "(";
        for (size_t c = 0; c < p[i].c.size(); ++c) {
            if (c) os << ",";
            os << p[i].c[c];
        }
        os << ")";
        if (i > 0) os << "*X^" << i;
    }
    return os.str();
}

Poly lex_smallest_irreducible(const FieldTower& t, int level, int d) {
    PolyRing ring(t, level);
    if (d < 1) throw ParameterError("irreducible degree must be >= 1");
    if (d == 1) return ring.x();  // X itself
    std::vector<Felem> lower(d, t.zero(level));
    // Odometer over the non-leading coefficients, constant term fastest; the
    // combined vector read as an integer is the lex order the contract pins.
    while (true) {
        bool carried = true;
        Poly cand(lower);
        cand.push_back(t.one(level));
        if (ring.irreducible(cand)) return cand;
        size_t i = 0;
        for (; i < lower.size(); ++i) {
            if (t.next_element(lower[i])) {
                carried = false;
                break;
            }
        }
        if (carried) throw ParameterError("no irreducible found (internal)");
    }
}

Poly minimal_polynomial(const FieldTower& t, const Felem& beta, int over_level) {
    if (over_level > beta.level) throw ParameterError("minimal_polynomial: not a sublevel");
    const int reldim = t.degree(beta.level) / t.degree(over_level);
    PolyRing ring(t, over_level);
    if (t.is_zero(beta)) return ring.x();

    // Krylov elimination over the lower level with an augmented combination
    // block: the first linear dependency among 1, beta, beta^2, ... gives the
    // monic minimal polynomial directly.
    struct Row {
        std::vector<Felem> v;    // coords over the lower level (length reldim)
        std::vector<Felem> comb; // which powers built this row
        int pivot = -1;
    };
    std::vector<Row> rows;
    Felem power = t.one(beta.level);
    for (int d = 0; d <= reldim; ++d) {
        Row r;
        r.v = t.coords_over(power, over_level);
        r.comb.assign(reldim + 1, t.zero(over_level));
        r.comb[d] = t.one(over_level);
        // reduce against existing rows
        for (const Row& e : rows) {
            if (t.is_zero(r.v[e.pivot])) continue;
            Felem f = r.v[e.pivot];
            for (int j = 0; j < reldim; ++j) r.v[j] = t.sub(r.v[j], t.mul(f, e.v[j]));
            for (int j = 0; j <= reldim; ++j) r.comb[j] = t.sub(r.comb[j], t.mul(f, e.comb[j]));
        }
        int piv = -1;
        for (int j = 0; j < reldim; ++j) {
            if (!t.is_zero(r.v[j])) {
                piv = j;
                break;
            }
        }
        if (piv < 0) {
            // dependency: comb gives sum c_i beta^i = 0 with c_d != 0
            Felem lead_inv = t.inv(r.comb[d]);
            std::vector<Felem> coeffs(d + 1, t.zero(over_level));
            for (int j = 0; j <= d; ++j) coeffs[j] = t.mul(r.comb[j], lead_inv);
            return ring.from_coeffs(std::move(coeffs));
        }
        Felem piv_inv = t.inv(r.v[piv]);
        for (int j = 0; j < reldim; ++j) r.v[j] = t.mul(r.v[j], piv_inv);
        for (int j = 0; j <= reldim; ++j) r.comb[j] = t.mul(r.comb[j], piv_inv);
        r.pivot = piv;
        rows.push_back(std::move(r));
        power = t.mul(power, beta);
    }
    throw ParameterError("internal: no minimal polynomial dependency found");
}

}  // namespace ldlab
