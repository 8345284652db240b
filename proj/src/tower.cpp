#include "ldlab/tower.hpp"

#include <algorithm>

#include "ldlab/errors.hpp"
#include "ldlab/poly.hpp"
#include "ldlab/rng.hpp"

#include <json.hpp>

namespace ldlab {

namespace {

std::vector<uint64_t> prime_factors_u64(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

FieldTower::FieldTower(uint32_t h, const std::vector<int>& degrees) : base_(h) {
    if (degrees.empty() || degrees[0] != 1)
        throw ParameterError("tower degrees must start at 1");
    for (size_t i = 1; i < degrees.size(); ++i) {
        if (degrees[i] <= degrees[i - 1])
            throw ParameterError("tower degrees must be strictly increasing");
        if (degrees[i] % degrees[i - 1] != 0)
            throw ParameterError("tower degree " + std::to_string(degrees[i]) +
                                 " does not divide into " + std::to_string(degrees[i - 1]));
    }
    if (BigUint::power(h, degrees.back()).bit_length() > 513)
        throw ParameterError("top level exceeds the configured 2^512 size bound");

    levels_.push_back(Level{1, 1, {}});
    inv_exp_.push_back(BigUint{h - 2});
    for (size_t i = 1; i < degrees.size(); ++i) {
        int rel = degrees[i] / degrees[i - 1];
        Level lv;
        lv.abs_deg = degrees[i];
        lv.rel_deg = rel;
        // Uses levels_[0..i-1], which are complete at this point.
        Poly m = lex_smallest_irreducible(*this, static_cast<int>(i) - 1, rel);
        lv.modulus = std::move(m);
        levels_.push_back(std::move(lv));
        BigUint e = BigUint::power(h, degrees[i]);
        e.sub_small(2);
        inv_exp_.push_back(e);
    }
}

std::shared_ptr<FieldTower> build_tower(uint32_t h, const std::vector<int>& degrees) {
    return std::make_shared<FieldTower>(h, degrees);
}

void FieldTower::check_level(int level) const {
    if (level < 0 || level >= num_levels())
        throw ParameterError("no such tower level: " + std::to_string(level));
}

void FieldTower::check_same(const Felem& a, const Felem& b) const {
    if (a.level != b.level)
        throw ParameterError("level mismatch: " + std::to_string(a.level) + " vs " +
                             std::to_string(b.level));
    check_level(a.level);
}

int FieldTower::level_with_degree(int deg) const {
    for (int i = 0; i < num_levels(); ++i)
        if (levels_[i].abs_deg == deg) return i;
    return -1;
}

BigUint FieldTower::level_size(int level) const {
    check_level(level);
    return BigUint::power(h(), levels_[level].abs_deg);
}

BigUint FieldTower::level_order(int level) const {
    BigUint s = level_size(level);
    s.sub_small(1);
    return s;
}

Felem FieldTower::zero(int level) const {
    check_level(level);
    return Felem{level, std::vector<uint32_t>(levels_[level].abs_deg, 0)};
}

Felem FieldTower::one(int level) const {
    Felem e = zero(level);
    e.c[0] = 1;
    return e;
}

Felem FieldTower::from_base(int level, uint32_t c) const {
    if (c >= h()) throw ParameterError("base element out of range");
    Felem e = zero(level);
    e.c[0] = c;
    return e;
}

Felem FieldTower::from_coords(int level, std::vector<uint32_t> coords) const {
    check_level(level);
    if (static_cast<int>(coords.size()) != levels_[level].abs_deg)
        throw ParameterError("coordinate vector has wrong length");
    for (uint32_t d : coords)
        if (d >= h()) throw ParameterError("coordinate out of range");
    return Felem{level, std::move(coords)};
}

bool FieldTower::is_zero(const Felem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](uint32_t d) { return d == 0; });
}

bool FieldTower::is_one(const Felem& a) const {
    if (a.c.empty() || a.c[0] != 1) return false;
    return std::all_of(a.c.begin() + 1, a.c.end(), [](uint32_t d) { return d == 0; });
}

void FieldTower::add_span(const uint32_t* a, const uint32_t* b, uint32_t* out, int n) const {
    for (int i = 0; i < n; ++i) out[i] = base_.add(a[i], b[i]);
}

void FieldTower::sub_span(const uint32_t* a, const uint32_t* b, uint32_t* out, int n) const {
    for (int i = 0; i < n; ++i) out[i] = base_.sub(a[i], b[i]);
}

Felem FieldTower::add(const Felem& a, const Felem& b) const {
    check_same(a, b);
    Felem out = a;
    add_span(a.c.data(), b.c.data(), out.c.data(), static_cast<int>(a.c.size()));
    return out;
}

Felem FieldTower::sub(const Felem& a, const Felem& b) const {
    check_same(a, b);
    Felem out = a;
    sub_span(a.c.data(), b.c.data(), out.c.data(), static_cast<int>(a.c.size()));
    return out;
}

Felem FieldTower::neg(const Felem& a) const {
    Felem out = a;
    for (auto& d : out.c) d = base_.neg(d);
    return out;
}

Felem FieldTower::scale(const Felem& a, uint32_t c) const {
    Felem out = a;
    for (auto& d : out.c) d = base_.mul(d, c);
    return out;
}

void FieldTower::mul_raw(int level, const uint32_t* a, const uint32_t* b, uint32_t* out) const {
    if (level == 0) {
        out[0] = base_.mul(a[0], b[0]);
        return;
    }
    const Level& lv = levels_[level];
    const int d = lv.rel_deg;
    const int w = levels_[level - 1].abs_deg;
    // Per-level scratch. The recursion only descends, so the buffers of a
    // level are never aliased within one call tree; thread_local keeps the
    // tower shareable across threads.
    static thread_local std::vector<std::vector<uint32_t>> acc_pool, tmp_pool;
    if (acc_pool.size() <= static_cast<size_t>(level)) {
        acc_pool.resize(level + 1);
        tmp_pool.resize(level + 1);
    }
    std::vector<uint32_t>& acc = acc_pool[level];
    std::vector<uint32_t>& tmp = tmp_pool[level];
    acc.assign(static_cast<size_t>(2 * d - 1) * w, 0);
    tmp.assign(w, 0);
    auto chunk_zero = [&](const uint32_t* p) {
        for (int i = 0; i < w; ++i)
            if (p[i]) return false;
        return true;
    };
    for (int i = 0; i < d; ++i) {
        const uint32_t* ai = a + static_cast<size_t>(i) * w;
        if (chunk_zero(ai)) continue;
        for (int j = 0; j < d; ++j) {
            const uint32_t* bj = b + static_cast<size_t>(j) * w;
            if (chunk_zero(bj)) continue;
            mul_raw(level - 1, ai, bj, tmp.data());
            uint32_t* slot = acc.data() + static_cast<size_t>(i + j) * w;
            add_span(slot, tmp.data(), slot, w);
        }
    }
    // Reduce by the monic level modulus: X^t = -sum_j mod_j X^{t-d+j}.
    for (int idx = 2 * d - 2; idx >= d; --idx) {
        uint32_t* top = acc.data() + static_cast<size_t>(idx) * w;
        if (chunk_zero(top)) continue;
        for (int j = 0; j < d; ++j) {
            const Felem& mj = lv.modulus[j];
            mul_raw(level - 1, top, mj.c.data(), tmp.data());
            uint32_t* slot = acc.data() + static_cast<size_t>(idx - d + j) * w;
            sub_span(slot, tmp.data(), slot, w);
        }
    }
    std::copy(acc.begin(), acc.begin() + static_cast<size_t>(d) * w, out);
}

Felem FieldTower::mul(const Felem& a, const Felem& b) const {
    check_same(a, b);
    Felem out = zero(a.level);
    mul_raw(a.level, a.c.data(), b.c.data(), out.c.data());
    return out;
}

Felem FieldTower::pow(const Felem& a, uint64_t e) const {
    check_level(a.level);
    Felem r = one(a.level);
    if (e == 0) return r;
    Felem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

Felem FieldTower::pow(const Felem& a, const BigUint& e) const {
    check_level(a.level);
    if (e.is_zero()) return one(a.level);
    if (is_zero(a)) return a;
    // An element of a small sublevel can be raised there, with the exponent
    // reduced modulo the sublevel's group order. This turns the huge-exponent
    // powers of embedded elements (the modulus search lives on them) into
    // cheap low-level ones.
    for (int j = 0; j < a.level; ++j) {
        if (!level_order(j).fits_u64()) continue;
        auto down = try_project(a, j);
        if (!down) continue;
        uint64_t ord = level_order(j).to_u64();
        return embed(pow(*down, e.mod_small(ord)), a.level);
    }
    Felem r = a;
    for (size_t i = e.bit_length() - 1; i-- > 0;) {
        r = mul(r, r);
        if (e.bit(i)) r = mul(r, a);
    }
    return r;
}

Felem FieldTower::inv(const Felem& a) const {
    check_level(a.level);
    if (is_zero(a)) throw ParameterError("division by zero at tower level");
    if (a.level == 0) return Felem{0, {base_.inv(a.c[0])}};
    return pow(a, inv_exp_[a.level]);
}

Felem FieldTower::frobenius(const Felem& a, int e) const {
    check_level(a.level);
    const int deg = levels_[a.level].abs_deg;
    e %= deg;  // x^{h^deg} = x on the whole level
    if (e < 0) e += deg;
    Felem r = a;
    for (int i = 0; i < e; ++i) r = pow(r, uint64_t{h()});
    return r;
}

Felem FieldTower::frobenius_inv(const Felem& a, int e) const {
    const int deg = levels_.at(a.level).abs_deg;
    e %= deg;
    if (e < 0) e += deg;
    return frobenius(a, (deg - e) % deg);
}

Felem FieldTower::embed(const Felem& a, int to_level) const {
    check_level(a.level);
    check_level(to_level);
    if (to_level < a.level) throw ParameterError("embed goes upward only");
    Felem out = a;
    out.level = to_level;
    out.c.resize(levels_[to_level].abs_deg, 0);
    return out;
}

std::optional<Felem> FieldTower::try_project(const Felem& a, int to_level) const {
    check_level(a.level);
    check_level(to_level);
    if (to_level > a.level) return std::nullopt;
    const size_t keep = levels_[to_level].abs_deg;
    for (size_t i = keep; i < a.c.size(); ++i)
        if (a.c[i] != 0) return std::nullopt;
    Felem out;
    out.level = to_level;
    out.c.assign(a.c.begin(), a.c.begin() + keep);
    return out;
}

std::vector<std::vector<uint32_t>> FieldTower::embedding_matrix(int from_level,
                                                                int to_level) const {
    check_level(from_level);
    check_level(to_level);
    const int fr = levels_[from_level].abs_deg;
    const int to = levels_[to_level].abs_deg;
    std::vector<std::vector<uint32_t>> m(to, std::vector<uint32_t>(fr, 0));
    for (int j = 0; j < fr && j < to; ++j) m[j][j] = 1;
    return m;
}

std::vector<Felem> FieldTower::coords_over(const Felem& a, int over_level) const {
    check_level(a.level);
    check_level(over_level);
    const int w = levels_[over_level].abs_deg;
    const int full = levels_[a.level].abs_deg;
    if (full % w != 0 || over_level > a.level)
        throw ParameterError("coords_over: not a sublevel");
    std::vector<Felem> chunks;
    chunks.reserve(full / w);
    for (int i = 0; i < full / w; ++i) {
        Felem e;
        e.level = over_level;
        e.c.assign(a.c.begin() + static_cast<size_t>(i) * w,
                   a.c.begin() + static_cast<size_t>(i + 1) * w);
        chunks.push_back(std::move(e));
    }
    return chunks;
}

Felem FieldTower::from_coords_over(int level, int over_level,
                                   const std::vector<Felem>& chunks) const {
    check_level(level);
    check_level(over_level);
    const int w = levels_[over_level].abs_deg;
    if (static_cast<int>(chunks.size()) * w != levels_[level].abs_deg)
        throw ParameterError("from_coords_over: wrong chunk count");
    Felem out = zero(level);
    for (size_t i = 0; i < chunks.size(); ++i) {
        if (chunks[i].level != over_level) throw ParameterError("chunk level mismatch");
        std::copy(chunks[i].c.begin(), chunks[i].c.end(), out.c.begin() + i * w);
    }
    return out;
}

bool FieldTower::next_element(Felem& a) const {
    for (auto& d : a.c) {
        if (++d < h()) return true;
        d = 0;
    }
    return false;
}

Felem FieldTower::random_element(int level, Rng& rng) const {
    Felem e = zero(level);
    for (auto& d : e.c) d = static_cast<uint32_t>(rng.below(h()));
    return e;
}

Felem FieldTower::random_nonzero(int level, Rng& rng) const {
    Felem e = random_element(level, rng);
    while (is_zero(e)) e = random_element(level, rng);
    return e;
}

Felem FieldTower::multiplicative_generator(int level) const {
    check_level(level);
    BigUint ord = level_order(level);
    if (ord.bit_length() > 40)
        throw ParameterError("multiplicative generator search limited to levels below 2^40");
    const uint64_t n = ord.to_u64();
    auto fs = prime_factors_u64(n);
    Felem cand = zero(level);
    while (next_element(cand)) {
        if (is_zero(cand) || is_one(cand)) continue;
        bool gen = true;
        for (uint64_t p : fs) {
            if (is_one(pow(cand, n / p))) {
                gen = false;
                break;
            }
        }
        if (gen) return cand;
    }
    throw ParameterError("no generator found (internal)");
}

const FieldTower::SylowCache& FieldTower::sylow_data(int level, uint64_t ell,
                                                     const BigUint& m_div) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto key = std::make_pair(level, ell);
    auto it = sylow_cache_.find(key);
    if (it != sylow_cache_.end()) return it->second;

    SylowCache sc;
    sc.u = level_order(level);
    while (sc.u.mod_small(ell) == 0) {  // |L*| = ell^v * u, gcd(u, ell) = 1
        sc.u.divmod_small(ell);
        ++sc.v;
    }
    // Non-residue by canonical enumeration, top coordinate first: the
    // bottom-first odometer would crawl through entire sublevels (which can
    // consist purely of residues) before reaching a generic element.
    Felem eta = zero(level);
    bool found = false;
    uint64_t budget = 1u << 20;
    auto next_topdown = [&](Felem& a) {
        for (size_t i = a.c.size(); i-- > 0;) {
            if (++a.c[i] < h()) return true;
            a.c[i] = 0;
        }
        return false;
    };
    while (budget-- && next_topdown(eta)) {
        if (!is_one(pow(eta, m_div))) {
            found = true;
            break;
        }
    }
    if (!found) throw ParameterError("internal: no non-residue found");
    sc.g = pow(eta, sc.u);  // generates the ell-Sylow subgroup, order ell^v
    sc.g_inv = inv(sc.g);
    Felem omega = pow(sc.g, BigUint::power(ell, static_cast<uint64_t>(sc.v - 1)));
    sc.omega_pow.resize(ell);
    sc.omega_pow[0] = one(level);
    for (uint64_t j = 1; j < ell; ++j) sc.omega_pow[j] = mul(sc.omega_pow[j - 1], omega);
    return sylow_cache_.emplace(key, std::move(sc)).first->second;
}

std::vector<Felem> FieldTower::roots_of_binomial(uint64_t ell, const Felem& beta_in) const {
    check_level(beta_in.level);
    if (ell == 0) throw ParameterError("roots_of_binomial: ell must be positive");
    const int level = beta_in.level;
    if (is_zero(beta_in)) return {zero(level)};

    Felem beta = beta_in;
    const uint32_t p = base_.characteristic();
    while (ell % p == 0) {  // characteristic part: the p-th root x^{|L|/p} is unique
        ell /= p;
        BigUint e = level_size(level);
        e.divmod_small(p);
        beta = pow(beta, e);
    }
    if (ell == 1) return {beta};
    for (uint64_t d = 2; d * d <= ell; ++d)
        if (ell % d == 0)
            throw ParameterError("roots_of_binomial: non-characteristic part must be prime");

    const BigUint order = level_order(level);
    const uint64_t rem = order.mod_small(ell);
    if (rem != 0) {
        // gcd(ell, |L*|) = 1: unique root beta^{ell^{-1} mod |L*|}.
        uint64_t k = 0;
        while ((1 + k * rem) % ell != 0) ++k;
        BigUint e = order;
        e.mul_small(k);
        e.add_small(1);
        uint64_t exact = e.divmod_small(ell);
        if (exact != 0) throw ParameterError("internal: inverse exponent not exact");
        return {pow(beta, e)};
    }

    // ell | |L*|. Solvable iff beta is an ell-th power.
    BigUint m_div = order;
    m_div.divmod_small(ell);
    if (!is_one(pow(beta, m_div))) return {};

    const SylowCache& sc = sylow_data(level, ell, m_div);
    const BigUint& u = sc.u;
    const int v = sc.v;
    const Felem& g = sc.g;
    const Felem& g_inv = sc.g_inv;
    const std::vector<Felem>& omega_pow = sc.omega_pow;

    // Digit discrete log in <g>; z must be an ell-th power (lowest digit 0).
    auto sylow_root = [&](const Felem& z) -> Felem {
        Felem cur = z;
        BigUint acc{0};  // accumulated exponent, digits base ell
        for (int i = 0; i < v; ++i) {
            Felem probe = pow(cur, BigUint::power(ell, static_cast<uint64_t>(v - 1 - i)));
            uint64_t digit = ell;  // sentinel
            for (uint64_t j = 0; j < ell; ++j) {
                if (probe == omega_pow[j]) {
                    digit = j;
                    break;
                }
            }
            if (digit == ell) throw ParameterError("internal: dlog probe not a root of unity");
            if (digit != 0) {
                BigUint step = BigUint::power(ell, static_cast<uint64_t>(i));
                step.mul_small(digit);
                cur = mul(cur, pow(g_inv, step));
                acc.add(step);
            }
        }
        uint64_t rem0 = acc.divmod_small(ell);
        if (rem0 != 0) throw ParameterError("internal: sylow part is not an ell-th power");
        return pow(g, acc);
    };

    // u-part: A = (1 + k*u)/ell for the k < ell making it integral; then
    // x0 = beta^A has x0^ell = beta * z^k with z = beta^u, and the correction
    // w^ell = z^{-k} lives in the Sylow subgroup.
    const uint64_t u_mod = u.mod_small(ell);
    uint64_t k = 0;
    while ((1 + k * u_mod) % ell != 0) ++k;
    BigUint a_exp = u;
    a_exp.mul_small(k);
    a_exp.add_small(1);
    uint64_t exact = a_exp.divmod_small(ell);
    if (exact != 0) throw ParameterError("internal: u-inverse not exact");
    const Felem x0 = pow(beta, a_exp);
    const Felem z = pow(beta, u);
    const Felem zk_inv = inv(pow(z, k));
    const Felem w = sylow_root(zk_inv);
    Felem root = mul(x0, w);
    if (pow(root, ell) != beta) throw ParameterError("internal: root extraction failed");

    std::vector<Felem> roots;
    roots.reserve(ell);
    for (uint64_t j = 0; j < ell; ++j) roots.push_back(mul(root, omega_pow[j]));
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string FieldTower::to_json() const {
    nlohmann::json j;
    j["h"] = h();
    std::vector<int> degs;
    for (const auto& lv : levels_) degs.push_back(lv.abs_deg);
    j["degrees"] = degs;
    nlohmann::json moduli = nlohmann::json::array();
    for (size_t i = 1; i < levels_.size(); ++i) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : levels_[i].modulus) coeffs.push_back(c.c);
        moduli.push_back(coeffs);
    }
    j["moduli"] = moduli;
    return j.dump(2);
}

FieldTower FieldTower::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    FieldTower t(j.at("h").get<uint32_t>(), j.at("degrees").get<std::vector<int>>());
    // Moduli are derived deterministically; stored ones must agree.
    const auto& moduli = j.at("moduli");
    for (size_t i = 1; i < t.levels_.size(); ++i) {
        const auto& stored = moduli.at(i - 1);
        if (stored.size() != t.levels_[i].modulus.size())
            throw ParameterError("tower file modulus mismatch");
        for (size_t c = 0; c < stored.size(); ++c) {
            if (stored[c].get<std::vector<uint32_t>>() != t.levels_[i].modulus[c].c)
                throw ParameterError("tower file modulus mismatch");
        }
    }
    return t;
}

}  // namespace ldlab
