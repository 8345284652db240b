#include "ldlab/gabidulin.hpp"

#include <algorithm>

#include "ldlab/errors.hpp"

namespace ldlab {

GabidulinCode make_gabidulin(uint32_t h, int n, int m, int k) {
    if (n < 2 || m < 1 || k < 1 || k >= n)
        throw ParameterError("gabidulin needs 1 <= k < n and m >= 1");
    GabidulinCode code;
    code.tower = m == 1 ? build_tower(h, {1, n}) : build_tower(h, {1, n, n * m});
    code.n = n;
    code.m = m;
    code.k = k;
    const int msg = code.tower->num_levels() - 1;
    for (int i = 0; i < n; ++i) {
        FhVec unit(n, 0);
        unit[i] = 1;
        code.alphas.push_back(code.tower->embed(code.tower->from_coords(1, unit), msg));
    }
    // invariants: independence and span of F_q (a basis gives both)
    FhMatrix alpha_rows(code.tower->base(), n, code.tower->degree(msg));
    for (int i = 0; i < n; ++i) alpha_rows.set_row(i, code.alphas[i].c);
    if (alpha_rows.rank() != static_cast<size_t>(n))
        throw ParameterError("evaluation points are not F_h-independent");
    return code;
}

namespace {

int message_level(const GabidulinCode& code) { return code.tower->num_levels() - 1; }

}  // namespace

LinearizedPoly gab_message(const GabidulinCode& code, std::vector<Felem> coeffs) {
    if (static_cast<int>(coeffs.size()) != code.k)
        throw ParameterError("message needs exactly k coefficients");
    return LinearizedPoly(*code.tower, message_level(code), 1, std::move(coeffs));
}

LinearizedPoly gab_random_message(const GabidulinCode& code, Rng& rng) {
    std::vector<Felem> cs;
    for (int i = 0; i < code.k; ++i) cs.push_back(code.tower->random_element(message_level(code), rng));
    return gab_message(code, std::move(cs));
}

RankCodeword gab_encode(const GabidulinCode& code, const LinearizedPoly& f) {
    if (f.base_exp() != 1 || static_cast<int>(f.coeff_count()) > code.k)
        throw ParameterError("message degree bound exceeded");
    RankCodeword cw(code.tower->base(), code.n, code.t());
    for (int i = 0; i < code.n; ++i) cw.set_row(i, f.eval(code.alphas[i]).c);
    return cw;
}

RankCodeword rank_error_channel(const GabidulinCode& code, const RankCodeword& cw, int e,
                                Rng& rng) {
    const int n = code.n, t = code.t();
    if (e < 0 || e > std::min(n, t)) throw ParameterError("error rank out of range");
    if (e == 0) return cw;
    const Gf& f = code.tower->base();
    auto random_full_rank = [&](size_t r, size_t c) {
        while (true) {
            FhMatrix m(f, r, c);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < c; ++j) m.set(i, j, static_cast<uint32_t>(rng.below(f.size())));
            if (m.rank() == std::min(r, c)) return m;
        }
    };
    FhMatrix u = random_full_rank(n, e);
    FhMatrix v = random_full_rank(e, t);
    return cw.add(u.mul(v));
}

int gab_degree_budget(int conditions, int k, int s) {
    int d = (conditions - k + 1) / (s + 1);
    return d < 0 ? 0 : d;
}

int gab_list_radius(const GabidulinCode& code, int s) {
    return code.n - code.k - gab_degree_budget(code.n, code.k, s);
}

GabInterpolant gab_interpolate_pairs(const GabidulinCode& code, const std::vector<Felem>& xs,
                                     const std::vector<Felem>& ys, int s) {
    if (s < 1 || s > code.m) throw ParameterError("interpolation needs 1 <= s <= m");
    if (xs.size() != ys.size()) throw ParameterError("point/value count mismatch");
    const FieldTower& t = *code.tower;
    const int lvl = message_level(code);
    const int conditions = static_cast<int>(xs.size());
    const int d_budget = gab_degree_budget(conditions, code.k, s);
    const int a0_len = d_budget + code.k;      // h-degree <= D + k - 1
    const int al_len = d_budget + 1;           // h-degree <= D
    const int unknowns = a0_len + s * al_len;

    LevelMatrix sys(t, lvl, conditions, unknowns);
    for (int i = 0; i < conditions; ++i) {
        Felem xp = xs[i];
        for (int u = 0; u < a0_len; ++u) {
            sys.set(i, u, xp);
            xp = t.frobenius(xp, 1);
        }
        for (int l = 1; l <= s; ++l) {
            Felem yp = t.frobenius(ys[i], code.n * (l - 1));  // y^{q^{l-1}}
            for (int u = 0; u < al_len; ++u) {
                sys.set(i, a0_len + (l - 1) * al_len + u, yp);
                yp = t.frobenius(yp, 1);
            }
        }
    }
    auto kernel = sys.kernel();
    if (kernel.empty()) throw ParameterError("internal: interpolation system has no kernel");
    const auto& sol = kernel.front();  // canonical nonzero solution

    GabInterpolant q;
    q.s = s;
    q.D = d_budget;
    q.a.resize(s + 1);
    q.a[0].assign(sol.begin(), sol.begin() + a0_len);
    for (int l = 1; l <= s; ++l)
        q.a[l].assign(sol.begin() + a0_len + (l - 1) * al_len,
                      sol.begin() + a0_len + l * al_len);
    return q;
}

GabInterpolant gab_interpolate(const GabidulinCode& code, const RankCodeword& y, int s) {
    if (y.rows() != static_cast<size_t>(code.n) || y.cols() != static_cast<size_t>(code.t()))
        throw ParameterError("received word shape mismatch");
    const int lvl = message_level(code);
    std::vector<Felem> ys;
    for (int i = 0; i < code.n; ++i) ys.push_back(code.tower->from_coords(lvl, y.row(i)));
    return gab_interpolate_pairs(code, code.alphas, ys, s);
}

PeriodicSubspace gab_solve_periodic(const GabidulinCode& code, const GabInterpolant& q_in) {
    const FieldTower& t = *code.tower;
    const int lvl = message_level(code);
    const int bd = t.degree(lvl);  // block width tau*m = t over F_h
    const Gf& f = t.base();
    GabInterpolant q = q_in;

    // Frobenius-root the identity while every A_l (l >= 1) has zero constant
    // term: exponents divide by h, coefficients through the inverse Frobenius.
    while (true) {
        bool some_nonzero_tail = false;
        for (int l = 1; l <= q.s; ++l)
            for (const auto& c : q.a[l]) some_nonzero_tail = some_nonzero_tail || !t.is_zero(c);
        if (!some_nonzero_tail) {
            // identity reads A_0(X) = 0
            bool a0_zero = true;
            for (const auto& c : q.a[0]) a0_zero = a0_zero && t.is_zero(c);
            if (a0_zero)
                throw DegenerateIdentity("interpolation identity vanished entirely");
            return PeriodicSubspace::empty_space(f, code.n, bd, code.k);
        }
        bool lead_zero = true;
        for (int l = 1; l <= q.s; ++l) lead_zero = lead_zero && t.is_zero(q.a[l][0]);
        if (!lead_zero) break;
        if (!t.is_zero(q.a[0][0]))
            return PeriodicSubspace::empty_space(f, code.n, bd, code.k);
        for (int l = 0; l <= q.s; ++l) {
            for (size_t u = 0; u + 1 < q.a[l].size(); ++u)
                q.a[l][u] = t.frobenius_inv(q.a[l][u + 1], 1);
            q.a[l].pop_back();
            if (q.a[l].empty()) q.a[l].push_back(t.zero(lvl));
        }
    }

    // Block operator T(z) = sum_l a_{l,0} z^{q^{l-1}}, F_q-linear on the
    // message field.
    std::vector<Felem> t_coeffs;
    for (int l = 1; l <= q.s; ++l) t_coeffs.push_back(q.a[l][0]);
    LinearizedPoly t_op(t, lvl, code.n, std::move(t_coeffs));
    PeriodicSubspace ps(f, code.n, bd, code.k);
    ps.set_block_operator(t_op.matrix());

    // Block r condition: T(f_r) = -a_{0,r} - sum_l sum_{u>=1} a_{l,u} f_{r-u}^{q^{l-1} h^u}.
    const int d_eff = static_cast<int>(q.a[1].size()) - 1;
    for (int r = 0; r < code.k; ++r) {
        FhMatrix pmap(f, bd, static_cast<size_t>(r) * bd);
        for (int u = 1; u <= std::min(d_eff, r); ++u) {
            const int src = r - u;  // prefix block index
            for (int b = 0; b < bd; ++b) {
                FhVec unit(bd, 0);
                unit[b] = 1;
                Felem e = t.from_coords(lvl, unit);
                Felem acc = t.zero(lvl);
                for (int l = 1; l <= q.s; ++l) {
                    if (t.is_zero(q.a[l][u])) continue;
                    Felem term = t.frobenius(e, code.n * (l - 1) + u);
                    acc = t.add(acc, t.mul(q.a[l][u], term));
                }
                acc = t.neg(acc);
                for (int row = 0; row < bd; ++row)
                    pmap.set(row, static_cast<size_t>(src) * bd + b, acc.c[row]);
            }
        }
        Felem off = r < static_cast<int>(q.a[0].size()) ? t.neg(q.a[0][r]) : t.zero(lvl);
        ps.set_block_map(r, std::move(pmap), off.c);
    }
    return ps;
}

LinearizedPoly gab_unique_decode(const GabidulinCode& code, const RankCodeword& y) {
    const FieldTower& t = *code.tower;
    const int radius = (code.n - code.k) / 2;
    GabInterpolant q = gab_interpolate(code, y, 1);
    PeriodicSubspace ps = gab_solve_periodic(code, q);
    std::vector<FhSubspace> full(code.k,
                                 FhSubspace::full(t.base(), ps.block_dim()));
    AffineFhSubspace cand = periodic_intersect(ps, full);
    std::vector<LinearizedPoly> in_radius;
    for (const auto& v : cand.enumerate()) {
        std::vector<Felem> coeffs;
        for (int i = 0; i < code.k; ++i) {
            FhVec part(v.begin() + static_cast<size_t>(i) * ps.block_dim(),
                       v.begin() + static_cast<size_t>(i + 1) * ps.block_dim());
            coeffs.push_back(t.from_coords(code.tower->num_levels() - 1, std::move(part)));
        }
        LinearizedPoly f = gab_message(code, std::move(coeffs));
        if (rank_distance(gab_encode(code, f), y) <= radius) in_radius.push_back(std::move(f));
    }
    if (in_radius.size() != 1)
        throw DecodeFailure("unique decoding found " + std::to_string(in_radius.size()) +
                            " candidates within radius " + std::to_string(radius));
    return in_radius.front();
}

std::vector<FhSubspace> SubcodeSpec::blocks() const {
    return {design.members.begin(), design.members.begin() + code.k};
}

double SubcodeSpec::rate() const {
    size_t total = 0;
    for (int i = 0; i < code.k; ++i) total += design.members[i].dim();
    return static_cast<double>(total) / (static_cast<double>(code.n) * code.t());
}

SubcodeSpec make_subcode(GabidulinCode code, DesignFamily design, double verified_a) {
    if (design.tower->h() != code.tower->h())
        throw ParameterError("subcode: design base field mismatch");
    if (design.tau() != code.n || design.m != code.m)
        throw ParameterError("subcode: design must live on tau = n, width m");
    if (static_cast<int>(design.members.size()) < code.k)
        throw ParameterError("subcode needs at least k distinct design members");
    for (size_t i = 0; i < design.members.size(); ++i)
        for (size_t j = i + 1; j < design.members.size(); ++j)
            if (design.members[i] == design.members[j])
                throw ParameterError("subcode: design members must be distinct");
    SubcodeSpec spec;
    spec.code = std::move(code);
    spec.design = std::move(design);
    spec.verified_a = verified_a;
    return spec;
}

LinearizedPoly subcode_encode_message(const SubcodeSpec& spec,
                                      const std::vector<FhVec>& block_coords) {
    const GabidulinCode& code = spec.code;
    if (static_cast<int>(block_coords.size()) != code.k)
        throw ParameterError("subcode message needs k blocks");
    std::vector<Felem> coeffs;
    for (int i = 0; i < code.k; ++i) {
        const FhSubspace& h_i = spec.design.members[i];
        if (block_coords[i].size() != h_i.dim())
            throw ParameterError("block " + std::to_string(i) + " coordinate length mismatch");
        FhVec v = h_i.basis().mul_row_vec(block_coords[i]);
        coeffs.push_back(code.tower->from_coords(code.tower->num_levels() - 1, std::move(v)));
    }
    return gab_message(code, std::move(coeffs));
}

RankCodeword subcode_encode(const SubcodeSpec& spec, const std::vector<FhVec>& block_coords) {
    return gab_encode(spec.code, subcode_encode_message(spec, block_coords));
}

ListDecodeResult subcode_list_decode(const SubcodeSpec& spec, const RankCodeword& y, int s) {
    const GabidulinCode& code = spec.code;
    const FieldTower& t = *code.tower;
    ListDecodeResult out;
    out.radius = gab_list_radius(code, s);

    GabInterpolant q = gab_interpolate(code, y, s);
    PeriodicSubspace ps = gab_solve_periodic(code, q);
    out.kernel_dim_q = ps.is_empty() ? 0 : ps.kernel_dim_q();
    AffineFhSubspace pruned = periodic_intersect(ps, spec.blocks(), spec.verified_a);
    out.pruned_dim = pruned.dim();
    if (pruned.is_empty()) return out;

    const int lvl = t.num_levels() - 1;
    for (const auto& v : pruned.enumerate()) {
        std::vector<Felem> coeffs;
        bool member = true;
        for (int i = 0; i < code.k; ++i) {
            FhVec part(v.begin() + static_cast<size_t>(i) * ps.block_dim(),
                       v.begin() + static_cast<size_t>(i + 1) * ps.block_dim());
            member = member && spec.design.members[i].contains(part);
            coeffs.push_back(t.from_coords(lvl, std::move(part)));
        }
        if (!member) continue;  // rechecked even though the DP enforces it
        LinearizedPoly f = gab_message(code, std::move(coeffs));
        if (rank_distance(gab_encode(code, f), y) <= out.radius) out.list.push_back(std::move(f));
    }
    return out;
}

}  // namespace ldlab
