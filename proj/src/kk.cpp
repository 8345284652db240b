#include "ldlab/kk.hpp"

#include "ldlab/errors.hpp"

namespace ldlab {

SubspaceCodeword kk_encode(const GabidulinCode& code, const LinearizedPoly& f) {
    if (f.base_exp() != 1 || static_cast<int>(f.coeff_count()) > code.k)
        throw ParameterError("message degree bound exceeded");
    const FieldTower& t = *code.tower;
    const int n = code.n, tt = code.t();
    FhMatrix rows(t.base(), n, n + tt);
    for (int i = 0; i < n; ++i) {
        // alpha_i lives in the embedded F_q: its first n coordinates carry it
        FhVec row(n + tt, 0);
        for (int c = 0; c < n; ++c) row[c] = code.alphas[i].c[c];
        Felem img = f.eval(code.alphas[i]);
        for (int c = 0; c < tt; ++c) row[n + c] = img.c[c];
        rows.set_row(i, row);
    }
    FhSubspace v = FhSubspace::from_generators(rows);
    if (v.dim() != static_cast<size_t>(n)) throw ParameterError("internal: codeword not n-dim");
    return v;
}

OperatorChannelOutcome operator_channel(const GabidulinCode& code, const SubspaceCodeword& v,
                                        int mu, int rho, Rng& rng, ChannelMode mode) {
    const int n = code.n;
    const size_t ambient = static_cast<size_t>(n) + code.t();
    if (mu < 0 || mu > n) throw ParameterError("deletions out of range");
    if (rho < 0 || static_cast<size_t>(rho) + (n - mu) > ambient)
        throw ParameterError("insertions do not fit the ambient space");
    const Gf& f = code.tower->base();

    // H(V): an (n-mu)-dimensional subspace of V.
    FhMatrix hv(f, n - mu, ambient);
    if (mode == ChannelMode::FirstCoords) {
        for (int r = 0; r < n - mu; ++r) hv.set_row(r, v.basis().row(r));
    } else {
        while (true) {
            FhMatrix coeff(f, n - mu, n);
            for (size_t r = 0; r + mu < static_cast<size_t>(n); ++r)
                for (int c = 0; c < n; ++c) coeff.set(r, c, static_cast<uint32_t>(rng.below(f.size())));
            if (coeff.rank() != static_cast<size_t>(n - mu)) continue;
            hv = coeff.mul(v.basis());
            break;
        }
    }

    // E: rho random dimensions with E ∩ V = {0}.
    FhMatrix stacked = v.basis();
    FhMatrix err(f, rho, ambient);
    if (rho > 0) {
        while (true) {
            for (int r = 0; r < rho; ++r)
                for (size_t c = 0; c < ambient; ++c) err.set(r, c, static_cast<uint32_t>(rng.below(f.size())));
            FhMatrix both = FhMatrix::vstack(v.basis(), err);
            if (both.rank() == v.dim() + rho) break;  // full: E independent of V
        }
    }

    OperatorChannelOutcome out;
    out.deletions = mu;
    out.insertions = rho;
    out.received = FhSubspace::from_generators(FhMatrix::vstack(hv, err));
    if (out.received.dim() != static_cast<size_t>(n - mu + rho))
        throw ParameterError("internal: channel output dimension drifted");
    return out;
}

KkDecodeResult kk_list_decode(const SubcodeSpec& spec, const FhSubspace& u, int s) {
    const GabidulinCode& code = spec.code;
    const FieldTower& t = *code.tower;
    const int n = code.n, tt = code.t();
    if (u.ambient() != static_cast<size_t>(n) + tt)
        throw ParameterError("received subspace has the wrong ambient dimension");

    // Canonical basis rows (x_j | y_j); the RREF basis makes the decoder
    // independent of the caller's basis choice.
    const int lvl = code.message_level();
    std::vector<Felem> xs, ys;
    for (size_t r = 0; r < u.dim(); ++r) {
        FhVec row = u.basis().row(r);
        FhVec xpart(row.begin(), row.begin() + n);
        FhVec ypart(row.begin() + n, row.end());
        xpart.resize(t.degree(lvl), 0);  // F_q coordinates sit in the low positions
        xs.push_back(t.from_coords(lvl, std::move(xpart)));
        ys.push_back(t.from_coords(lvl, std::move(ypart)));
    }

    KkDecodeResult out;
    GabInterpolant q = gab_interpolate_pairs(code, xs, ys, s);
    PeriodicSubspace ps = gab_solve_periodic(code, q);
    out.kernel_dim_q = ps.is_empty() ? 0 : ps.kernel_dim_q();
    AffineFhSubspace pruned = periodic_intersect(ps, spec.blocks(), spec.verified_a);
    out.pruned_dim = pruned.dim();
    if (pruned.is_empty()) return out;

    for (const auto& v : pruned.enumerate()) {
        std::vector<Felem> coeffs;
        bool member = true;
        for (int i = 0; i < code.k; ++i) {
            FhVec part(v.begin() + static_cast<size_t>(i) * ps.block_dim(),
                       v.begin() + static_cast<size_t>(i + 1) * ps.block_dim());
            member = member && spec.design.members[i].contains(part);
            coeffs.push_back(t.from_coords(lvl, std::move(part)));
        }
        if (!member) continue;
        LinearizedPoly f = gab_message(code, std::move(coeffs));
        // channel consistency: if f was sent, the channel committed
        // mu_f = n - dim(V_f ∩ U) deletions and rho_f = dim U - dim(V_f ∩ U)
        // insertions; keep f iff that pair is inside the guarantee region.
        SubspaceCodeword vf = kk_encode(code, f);
        const int overlap = static_cast<int>(vf.intersect(u).dim());
        const int mu_f = n - overlap;
        const int rho_f = static_cast<int>(u.dim()) - overlap;
        if (rho_f + s * mu_f < s * (n - code.k + 1)) out.list.push_back(std::move(f));
    }
    return out;
}

}  // namespace ldlab
