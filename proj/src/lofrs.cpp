#include "ldlab/lofrs.hpp"

#include <algorithm>
#include <cmath>

#include "ldlab/errors.hpp"

#include <json.hpp>

namespace ldlab {

namespace {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Felem fq(const LofrsCode&, uint32_t v) { return Felem{0, {v}}; }

uint32_t digit(const Felem& e) { return e.c[0]; }

}  // namespace

LofrsCode make_lofrs(uint32_t q, uint64_t ell, int k) {
    LofrsCode code;
    code.ftower = build_tower(q, {1});
    code.q = q;
    if (ell == 0 || (q - 1) % ell != 0)
        throw ParameterError("folding order must divide Q - 1");
    code.ell = ell;
    code.n_cols = (q - 1) / ell;
    if (k < 1 || static_cast<uint64_t>(k) > code.block_length())
        throw ParameterError("dimension k out of range");
    code.k = k;
    code.gamma = code.field().generator();
    code.zeta = code.field().pow(code.gamma, code.n_cols);
    return code;
}

Poly qpoly(const LofrsCode& code, const std::vector<uint32_t>& digits) {
    Poly p;
    for (uint32_t d : digits) {
        if (d >= code.q) throw ParameterError("coefficient out of range");
        p.push_back(fq(code, d));
    }
    PolyRing(*code.ftower, 0).trim(p);
    return p;
}

Poly random_qpoly(const LofrsCode& code, int deg_bound, Rng& rng) {
    std::vector<uint32_t> digits(deg_bound);
    for (auto& d : digits) d = static_cast<uint32_t>(rng.below(code.q));
    return qpoly(code, digits);
}

FhMatrix lofrs_encode(const LofrsCode& code, const Poly& f) {
    PolyRing ring(*code.ftower, 0);
    if (ring.deg(f) >= code.k) throw ParameterError("message degree too high");
    const Gf& fld = code.field();
    FhMatrix y(fld, code.ell, code.n_cols);
    for (uint64_t i = 0; i < code.ell; ++i)
        for (uint64_t j = 0; j < code.n_cols; ++j) {
            Felem x = fq(code, fld.exp(i * code.n_cols + j));  // zeta^i gamma^j
            y.set(i, j, digit(ring.eval(f, x)));
        }
    return y;
}

namespace {

/// Kernel basis of the interpolation system as interpolants; with
/// force_degenerate the constraints A_0 = 0 and sum_r A_r = 0 are appended.
std::vector<LofrsInterpolant> interpolation_kernel(const LofrsCode& code, const FhMatrix& y,
                                                   int s, bool force_degenerate) {
    if (s < 1 || static_cast<uint64_t>(s) > code.ell)
        throw ParameterError("interpolation needs 1 <= s <= ell (wrap-around)");
    if (y.rows() != code.ell || y.cols() != code.n_cols)
        throw ParameterError("received word shape mismatch");
    const Gf& fld = code.field();
    const int len = static_cast<int>(code.block_length());
    const int d_budget = (len - code.k + 1) / (s + 1);
    const int a0_len = d_budget + code.k;
    const int al_len = d_budget + 1;
    const int unknowns = a0_len + s * al_len;
    const int extra = force_degenerate ? a0_len + al_len : 0;

    FhMatrix sys(fld, len + extra, unknowns);
    int row = 0;
    for (uint64_t i = 0; i < code.ell; ++i) {
        for (uint64_t j = 0; j < code.n_cols; ++j, ++row) {
            uint32_t x = fld.exp(i * code.n_cols + j);
            uint32_t xp = 1;
            for (int u = 0; u < a0_len; ++u) {
                sys.set(row, u, xp);
                xp = fld.mul(xp, x);
            }
            for (int r = 1; r <= s; ++r) {
                uint32_t yv = y.at((i + r - 1) % code.ell, j);
                uint32_t xpy = yv;
                for (int u = 0; u < al_len; ++u) {
                    sys.set(row, a0_len + (r - 1) * al_len + u, xpy);
                    xpy = fld.mul(xpy, x);
                }
            }
        }
    }
    if (force_degenerate) {
        for (int u = 0; u < a0_len; ++u) sys.set(row++, u, 1);
        for (int u = 0; u < al_len; ++u) {
            for (int r = 1; r <= s; ++r) sys.set(row, a0_len + (r - 1) * al_len + u, 1);
            ++row;
        }
    }
    FhMatrix kernel = sys.kernel();
    PolyRing ring(*code.ftower, 0);
    std::vector<LofrsInterpolant> out;
    for (size_t kr = 0; kr < kernel.rows(); ++kr) {
        FhVec sol = kernel.row(kr);
        LofrsInterpolant q;
        q.s = s;
        q.D = d_budget;
        auto take = [&](int from, int count) {
            std::vector<Felem> cs;
            for (int u = 0; u < count; ++u) cs.push_back(fq(code, sol[from + u]));
            return ring.from_coeffs(std::move(cs));
        };
        q.a.push_back(take(0, a0_len));
        for (int r = 1; r <= s; ++r) q.a.push_back(take(a0_len + (r - 1) * al_len, al_len));
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace

LofrsInterpolant lofrs_interpolate(const LofrsCode& code, const FhMatrix& y, int s) {
    auto kernel = interpolation_kernel(code, y, s, false);
    if (kernel.empty()) throw ParameterError("internal: interpolation kernel empty");
    return kernel.front();
}

bool lofrs_candidate_check(const LofrsCode& code, const LofrsInterpolant& q, const Poly& f) {
    PolyRing ring(*code.ftower, 0);
    if (ring.deg(f) >= code.k) throw ParameterError("candidate degree too high");
    Poly acc = q.a[0];
    Felem zeta_pow = ring.tower().one(0);
    const Felem zeta = fq(code, code.zeta);
    for (int r = 1; r <= q.s; ++r) {
        Poly fr = ring.compose_scale(f, zeta_pow);  // f(zeta^{r-1} X)
        acc = ring.add(acc, ring.mul(q.a[r], fr));
        zeta_pow = ring.tower().mul(zeta_pow, zeta);
    }
    return ring.is_zero(acc);
}

int lofrs_agreement_threshold(const LofrsCode& code, int s) {
    const int len = static_cast<int>(code.block_length());
    const int d_budget = (len - code.k + 1) / (s + 1);
    return (d_budget + code.k - 1) / static_cast<int>(code.ell) + 1;
}

int lofrs_agreement(const LofrsCode& code, const FhMatrix& y, const Poly& f) {
    FhMatrix cw = lofrs_encode(code, f);
    int t = 0;
    for (uint64_t j = 0; j < code.n_cols; ++j) {
        bool same = true;
        for (uint64_t i = 0; i < code.ell && same; ++i) same = y.at(i, j) == cw.at(i, j);
        if (same) ++t;
    }
    return t;
}

namespace {

std::vector<uint64_t> pick_columns(const LofrsCode& code, int errors, Rng& rng) {
    if (errors < 0 || static_cast<uint64_t>(errors) > code.n_cols)
        throw ParameterError("error column count out of range");
    std::vector<uint64_t> cols;
    while (cols.size() < static_cast<size_t>(errors)) {
        uint64_t c = rng.below(code.n_cols);
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }
    return cols;
}

}  // namespace

FhMatrix lofrs_column_errors(const LofrsCode& code, const FhMatrix& cw, int errors, Rng& rng) {
    FhMatrix y = cw;
    for (uint64_t c : pick_columns(code, errors, rng)) {
        while (true) {
            bool differs = false;
            for (uint64_t i = 0; i < code.ell; ++i) {
                uint32_t v = static_cast<uint32_t>(rng.below(code.q));
                y.set(i, c, v);
                differs = differs || v != cw.at(i, c);
            }
            if (differs) break;
        }
    }
    return y;
}

FhMatrix lofrs_constant_shift_errors(const LofrsCode& code, const FhMatrix& cw, int errors,
                                     Rng& rng) {
    FhMatrix y = cw;
    const Gf& fld = code.field();
    for (uint64_t c : pick_columns(code, errors, rng)) {
        uint32_t shift = 1 + static_cast<uint32_t>(rng.below(code.q - 1));
        for (uint64_t i = 0; i < code.ell; ++i) y.set(i, c, fld.add(cw.at(i, c), shift));
    }
    return y;
}

int choose_extension_exponent(uint64_t ell, int k, bool* widened) {
    const int lo = std::max<int>(2, static_cast<int>((k + ell - 1) / ell));
    const int hi = static_cast<int>((2 * static_cast<uint64_t>(k)) / ell);
    if (widened) *widened = false;
    for (int a = lo; a <= hi; ++a)
        if (is_prime_u64(a) && static_cast<uint64_t>(a) != ell) return a;
    if (widened) *widened = true;
    for (int a = std::max(lo, hi + 1);; ++a)
        if (is_prime_u64(a) && static_cast<uint64_t>(a) != ell) return a;
}

namespace {

struct ModulusSearch {
    std::shared_ptr<FieldTower> tower;  // (Q, {1, a, a*ell})
    uint32_t q;
    uint64_t ell;
    int k, a;
    bool widened;
    Felem zeta_top;   // zeta embedded at the top level
    BigUint qa_m1;    // Q^a - 1

    ModulusSearch(uint32_t q_, uint64_t ell_, int k_) : q(q_), ell(ell_), k(k_) {
        if (!is_prime_u64(ell)) throw ParameterError("find_modulus needs prime ell");
        if ((q - 1) % ell != 0) throw ParameterError("folding order must divide Q - 1");
        a = choose_extension_exponent(ell, k, &widened);
        tower = build_tower(q, {1, a, a * static_cast<int>(ell)});
        uint32_t zeta = tower->base().pow(tower->base().generator(), (q - 1) / ell);
        zeta_top = tower->embed(tower->from_base(0, zeta), 2);
        qa_m1 = BigUint::power(q, a);
        qa_m1.sub_small(1);
    }

    std::optional<IrreducibleModulus> attempt(Rng& rng) const {
        Felem beta = tower->random_nonzero(1, rng);
        Felem bhat = tower->embed(beta, 2);
        std::vector<Felem> roots = tower->roots_of_binomial(ell, bhat);
        if (roots.empty()) return std::nullopt;
        // All roots differ by ell-th roots of unity, which lie in F_{Q^a}
        // since ell | Q - 1; they share rho^{Q^a - 1} and the minimal
        // polynomial, so testing the first root decides the attempt.
        const Felem& rho = roots.front();
        if (tower->pow(rho, qa_m1) != zeta_top) return std::nullopt;
        Poly r = minimal_polynomial(*tower, rho, 0);
        const int deg = static_cast<int>(r.size()) - 1;
        if (deg < k) return std::nullopt;
        // witnessed relation: zeta X = X^{Q^a} mod R, transcript kept
        PolyRing ring(*tower, 0);
        Poly frob = ring.powmod(ring.x(), BigUint::power(q, a), r);
        Poly want = ring.scale(ring.x(), tower->from_base(0, zeta_top.c[0]));
        IrreducibleModulus out;
        out.q = q;
        out.ell = ell;
        out.a = a;
        out.r = std::move(r);
        out.widened_interval = widened;
        out.witness_ok = ring.equal(frob, want);
        for (const auto& c : frob) out.witness_lhs.push_back(c.c[0]);
        for (const auto& c : want) out.witness_rhs.push_back(c.c[0]);
        if (!out.witness_ok)
            throw ParameterError("internal: witnessed relation failed for a found modulus");
        return out;
    }
};

}  // namespace

IrreducibleModulus find_modulus(uint32_t q, uint64_t ell, int k, Rng& rng, int max_attempts) {
    ModulusSearch search(q, ell, k);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        auto got = search.attempt(rng);
        if (got) {
            got->attempts_used = attempt;
            return *got;
        }
    }
    throw SearchExhausted("no modulus found in " + std::to_string(max_attempts) +
                          " attempts (a = " + std::to_string(search.a) + ")");
}

ModulusStats modulus_search_stats(uint32_t q, uint64_t ell, int k, Rng& rng, int attempts) {
    ModulusSearch search(q, ell, k);
    ModulusStats stats;
    stats.attempts = attempts;
    stats.a = search.a;
    stats.outcomes.resize(attempts, 0);
    for (int i = 0; i < attempts; ++i) {
        auto got = search.attempt(rng);
        if (got) {
            ++stats.successes;
            stats.outcomes[i] = 1;
            if (!stats.first) {
                got->attempts_used = i + 1;
                stats.first = got;
            }
        }
    }
    return stats;
}

std::string IrreducibleModulus::to_json() const {
    nlohmann::json j;
    j["q"] = q;
    j["ell"] = ell;
    j["a"] = a;
    j["degree"] = degree();
    std::vector<uint32_t> digits;
    for (const auto& c : r) digits.push_back(c.c[0]);
    j["coeffs"] = digits;
    j["witness_ok"] = witness_ok;
    j["witness_x_pow_qa"] = witness_lhs;
    j["witness_zeta_x"] = witness_rhs;
    j["attempts"] = attempts_used;
    j["widened_interval"] = widened_interval;
    return j.dump(2);
}

LofrsSolveResult lofrs_solve(const LofrsCode& code, const LofrsInterpolant& q,
                             const IrreducibleModulus& modulus) {
    if (modulus.q != code.q || modulus.ell != code.ell)
        throw ParameterError("modulus does not match the code");
    if (modulus.degree() < code.k)
        throw ParameterError("modulus degree below the message dimension");
    PolyRing ring(*code.ftower, 0);
    const Gf& fld = code.field();
    const Poly& r_mod = modulus.r;
    const int d = modulus.degree();

    LofrsSolveResult out;
    std::vector<Poly> a = q.a;
    // Divide out the highest power of R dividing every A_i.
    while (true) {
        bool all_div = true;
        bool any_nonzero = false;
        for (const auto& p : a) {
            if (ring.is_zero(p)) continue;
            any_nonzero = true;
            if (!ring.is_zero(ring.mod(p, r_mod))) all_div = false;
        }
        if (!any_nonzero) throw DegenerateIdentity("interpolant vanished (internal)");
        if (!all_div) break;
        for (auto& p : a)
            if (!ring.is_zero(p)) p = ring.div_exact(p, r_mod);
        ++out.r_power_removed;
    }
    std::vector<Poly> abar;
    for (const auto& p : a) abar.push_back(ring.mod(p, r_mod));

    bool op_zero = true;
    for (int i = 1; i <= q.s; ++i) op_zero = op_zero && ring.is_zero(abar[i]);
    if (op_zero) {
        // A_0 != 0 mod R here, so the congruence has no solution at all.
        out.operator_vanished = true;
        out.residues = AffineFhSubspace::empty_set();
        out.messages = AffineFhSubspace::empty_set();
        return out;
    }

    // Matrices over F_Q on the residue ring F_Q[X]/R.
    auto poly_coords = [&](const Poly& p) {
        FhVec v(d, 0);
        for (size_t i = 0; i < p.size(); ++i) v[i] = p[i].c[0];
        return v;
    };
    auto mul_matrix = [&](const Poly& p) {
        FhMatrix m(fld, d, d);
        Poly col = ring.mod(p, r_mod);
        for (int j = 0; j < d; ++j) {
            FhVec v = poly_coords(col);
            for (int i = 0; i < d; ++i) m.set(i, j, v[i]);
            col = ring.mod(ring.shift(col, 1), r_mod);
        }
        return m;
    };
    // Frobenius x -> x^{Q^a} on the residue ring.
    FhMatrix frob_a(fld, d, d);
    {
        Poly xq = ring.powmod(ring.x(), BigUint::power(code.q, modulus.a), r_mod);
        Poly col = ring.one();
        for (int j = 0; j < d; ++j) {
            FhVec v = poly_coords(col);
            for (int i = 0; i < d; ++i) frob_a.set(i, j, v[i]);
            col = ring.mulmod(col, xq, r_mod);
        }
    }

    FhMatrix m(fld, d, d);
    FhMatrix frob_pow = FhMatrix::identity(fld, d);
    for (int i = 1; i <= q.s; ++i) {
        if (!ring.is_zero(abar[i])) m = m.add(mul_matrix(abar[i]).mul(frob_pow));
        if (i < q.s) frob_pow = frob_a.mul(frob_pow);
    }
    FhVec rhs = poly_coords(ring.neg(abar[0]));
    out.residues = affine_solve(m, rhs);
    if (out.residues.is_empty()) {
        out.messages = AffineFhSubspace::empty_set();
        return out;
    }

    // The solution set is F_{Q^a}-affine: its F_Q dimension stays within a(s-1).
    if (out.residues.dim() > modulus.a * (q.s - 1))
        throw ParameterError("internal: solver space exceeds the q^{(s-1)a} bound");

    // Lift: the deg < k slice. Residues with zero coordinates at k..d-1 are
    // exactly the candidates (deg f < k <= deg R determines f by its residue).
    FhMatrix low(fld, code.k, d);
    for (int i = 0; i < code.k; ++i) low.set(i, i, 1);
    AffineFhSubspace low_slice(FhVec(d, 0), FhSubspace::from_generators(low));
    AffineFhSubspace inter = affine_intersect(out.residues, low_slice);
    if (inter.is_empty()) {
        out.messages = AffineFhSubspace::empty_set();
        return out;
    }
    FhVec off(inter.offset().begin(), inter.offset().begin() + code.k);
    std::vector<FhVec> rows;
    for (size_t r = 0; r < inter.direction().dim(); ++r) {
        FhVec row = inter.direction().basis().row(r);
        rows.emplace_back(row.begin(), row.begin() + code.k);
    }
    FhSubspace dir = rows.empty() ? FhSubspace::zero(fld, code.k)
                                  : FhSubspace::from_generators(FhMatrix::from_rows(fld, rows));
    out.messages = AffineFhSubspace(std::move(off), std::move(dir));
    return out;
}

uint64_t PrecodeSet::enumeration_bound(int affine_dim) const {
    uint64_t b = 1;
    for (int i = 0; i < (m_blocks - 1) * affine_dim; ++i) {
        if (b > (uint64_t{1} << 62) / bound_base) return uint64_t{1} << 62;  // saturate
        b *= bound_base;
    }
    return b;
}

PrecodeSet lofrs_precode(const LofrsCode& code, int a, int s, double epsilon) {
    if (a < 1) throw ParameterError("precode block size must be positive");
    PrecodeSet ps;
    ps.a = a;
    ps.s = s;
    ps.k = code.k;
    ps.epsilon = epsilon;
    ps.m_blocks = (code.k + a - 1) / a;
    ps.bound_base = code.q;
    if (s > ps.m_blocks)
        throw ParameterError("precode needs s <= ceil(k/a) blocks");
    ps.tower = build_tower(code.q, {1, a});
    EvasiveVariety v = dl_variety(ps.tower, 1, ps.m_blocks, s);

    // Intersect with the zero-padding constraint and slice the k live
    // coordinates; rebuild over the code's own field handle.
    const size_t ambient = static_cast<size_t>(a) * ps.m_blocks;
    FhMatrix live(ps.tower->base(), code.k, ambient);
    for (int i = 0; i < code.k; ++i) live.set(i, i, 1);
    FhSubspace inter = v.basis.intersect(FhSubspace::from_generators(live));
    std::vector<FhVec> rows;
    for (size_t r = 0; r < inter.dim(); ++r) {
        FhVec row = inter.basis().row(r);
        rows.emplace_back(row.begin(), row.begin() + code.k);
    }
    ps.message_set = rows.empty()
                         ? FhSubspace::zero(code.field(), code.k)
                         : FhSubspace::from_generators(FhMatrix::from_rows(code.field(), rows));
    return ps;
}

Poly precode_message(const LofrsCode& code, const PrecodeSet& ps, const FhVec& params) {
    if (params.size() != ps.message_set.dim())
        throw ParameterError("precode parameter length mismatch");
    FhVec coeffs = ps.message_set.basis().mul_row_vec(params);
    std::vector<uint32_t> digits(coeffs.begin(), coeffs.end());
    return qpoly(code, digits);
}

bool precode_contains(const LofrsCode& code, const PrecodeSet& ps, const Poly& f) {
    FhVec digits(code.k, 0);
    for (size_t i = 0; i < f.size(); ++i) digits[i] = f[i].c[0];
    return ps.message_set.contains(digits);
}

std::vector<Poly> precode_intersect(const LofrsCode& code, const PrecodeSet& ps,
                                    const AffineFhSubspace& messages, uint64_t max_points) {
    if (messages.is_empty()) return {};
    AffineFhSubspace lin(FhVec(code.k, 0), ps.message_set);
    AffineFhSubspace inter = affine_intersect(messages, lin);
    std::vector<Poly> out;
    for (const auto& v : inter.enumerate(max_points)) {
        std::vector<uint32_t> digits(v.begin(), v.end());
        out.push_back(qpoly(code, digits));
    }
    return out;
}

RsDemoReport rs_reduce_demo(const LofrsCode& code, const Poly& f_low, int s, int errors,
                            DemoCorruption mode, Rng& rng, const IrreducibleModulus* modulus,
                            const PrecodeSet* precode) {
    PolyRing ring(*code.ftower, 0);
    const int low_deg = ring.deg(f_low);
    if (low_deg >= 0 && static_cast<uint64_t>(low_deg) * code.ell >= static_cast<uint64_t>(code.k))
        throw ParameterError("demo message degree too high for g(X) = f(X^ell)");
    Poly g(f_low.empty() ? 0 : static_cast<size_t>(low_deg) * code.ell + 1,
           ring.tower().zero(0));
    for (size_t i = 0; i < f_low.size(); ++i) g[i * code.ell] = f_low[i];
    ring.trim(g);

    FhMatrix cw = lofrs_encode(code, g);
    FhMatrix y = mode == DemoCorruption::Random ? lofrs_column_errors(code, cw, errors, rng)
                                                : lofrs_constant_shift_errors(code, cw, errors, rng);

    RsDemoReport rep;
    rep.agreement = lofrs_agreement(code, y, g);

    // Unique-recovery branch: take the first kernel vector with sum_r A_r != 0
    // that divides out to a valid polynomial in X^ell, then compare.
    auto kernel = interpolation_kernel(code, y, s, false);
    for (const auto& q : kernel) {
        Poly b = ring.zero();
        for (int r = 1; r <= s; ++r) b = ring.add(b, q.a[r]);
        if (ring.is_zero(b)) continue;
        Poly num = ring.neg(q.a[0]);
        auto [quo, remn] = ring.divmod(num, b);
        if (!remn.empty()) continue;
        if (ring.deg(quo) >= code.k) continue;
        bool in_xell = true;
        for (size_t i = 0; i < quo.size(); ++i)
            if (i % code.ell != 0 && !ring.tower().is_zero(quo[i])) in_xell = false;
        if (!in_xell) continue;
        rep.recovered = ring.equal(quo, g);
        for (size_t i = 0; i < quo.size(); i += code.ell) rep.f_hat.push_back(quo[i]);
        ring.trim(rep.f_hat);
        break;
    }

    // Degenerate branch: is (A_0 = 0, sum A_r = 0) present in the kernel?
    auto degen = interpolation_kernel(code, y, s, true);
    std::optional<LofrsInterpolant> q_deg;
    for (auto& q : degen) {
        bool zero = true;
        for (const auto& p : q.a) zero = zero && ring.is_zero(p);
        if (!zero) {
            q_deg = std::move(q);
            break;
        }
    }
    rep.degenerate_present = q_deg.has_value();

    if (q_deg && modulus) {
        LofrsSolveResult sol = lofrs_solve(code, *q_deg, *modulus);
        rep.degenerate_message_dim = sol.messages.dim();
        if (precode) {
            auto list = precode_intersect(code, *precode, sol.messages);
            rep.precoded_list_size = static_cast<int>(list.size());
            // The residue space is F_{Q^a}-affine of dimension at most s-1;
            // the variety meets such a space in at most q^{(m'-1)(s-1)} points.
            rep.precode_bound = precode->enumeration_bound(s - 1);
        }
    }
    return rep;
}

}  // namespace ldlab
