#include "ldlab/designs.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "ldlab/errors.hpp"

#include <json.hpp>

namespace ldlab {

namespace {

std::vector<Felem> split_point(const FieldTower& t, int level, const FhVec& point, int m) {
    const int tau = t.degree(level);
    std::vector<Felem> xs;
    xs.reserve(m);
    for (int j = 0; j < m; ++j) {
        FhVec part(point.begin() + static_cast<size_t>(j) * tau,
                   point.begin() + static_cast<size_t>(j + 1) * tau);
        xs.push_back(t.from_coords(level, std::move(part)));
    }
    return xs;
}

FhVec join_point(const std::vector<Felem>& xs) {
    FhVec out;
    for (const auto& x : xs) out.insert(out.end(), x.c.begin(), x.c.end());
    return out;
}

/// Uniformly random subspace of the given dimension (rejection on full rank).
FhSubspace random_subspace(const Gf& f, size_t ambient, size_t dim, Rng& rng) {
    while (true) {
        FhMatrix m(f, dim, ambient);
        for (size_t r = 0; r < dim; ++r)
            for (size_t c = 0; c < ambient; ++c) m.set(r, c, static_cast<uint32_t>(rng.below(f.size())));
        if (m.rank() == dim) return FhSubspace::from_generators(m);
    }
}

}  // namespace

FhSubspace expand_level_rows(const FieldTower& t, int level, int m,
                             const std::vector<std::vector<Felem>>& rows) {
    const int tau = t.degree(level);
    const Gf& f = t.base();
    if (rows.empty()) return FhSubspace::zero(f, static_cast<size_t>(tau) * m);
    std::vector<FhVec> gens;
    for (const auto& row : rows) {
        for (int b = 0; b < tau; ++b) {
            FhVec unit(tau, 0);
            unit[b] = 1;
            Felem theta = t.from_coords(level, unit);
            std::vector<Felem> scaled;
            scaled.reserve(m);
            for (const auto& w : row) scaled.push_back(t.mul(theta, w));
            gens.push_back(join_point(scaled));
        }
    }
    return FhSubspace::from_generators(FhMatrix::from_rows(f, gens));
}

bool EvasiveVariety::contains_by_maps(const FhVec& point) const {
    const FieldTower& t = *tower;
    auto xs = split_point(t, level, point, m);
    for (int i = 1; i <= s; ++i) {
        Felem acc = t.zero(level);
        for (int j = 1; j <= m; ++j) {
            Felem term = t.frobenius(xs[j - 1], m - j);  // x^{h^{m-j}}
            term = t.mul(term, t.pow(gammas[j - 1], static_cast<uint64_t>(i)));
            acc = t.add(acc, term);
        }
        if (!t.is_zero(acc)) return false;
    }
    return true;
}

EvasiveVariety dl_variety(std::shared_ptr<const FieldTower> tower, int level, int m, int s) {
    const FieldTower& t = *tower;
    const int tau = t.degree(level);
    const uint32_t h = t.h();
    if (s < 0 || s > m) throw ParameterError("variety needs 0 <= s <= m");
    // Q >= h^{m-1} (equality allowed; the dimension check below still decides),
    // and Q - 1 >= m distinct nonzero gammas.
    if (tau < m - 1)
        throw ParameterError("field too small for the variety: need h^tau >= h^(m-1)");
    BigUint qm1 = t.level_order(level);
    if (qm1 <= BigUint(static_cast<uint64_t>(m) - 1))
        throw ParameterError("field too small: need Q - 1 >= m distinct gammas");

    EvasiveVariety v;
    v.tower = tower;
    v.level = level;
    v.m = m;
    v.s = s;
    Felem g = t.multiplicative_generator(level);
    Felem acc = t.one(level);
    for (int j = 0; j < m; ++j) {
        v.gammas.push_back(acc);  // g^0 .. g^{m-1}
        acc = t.mul(acc, g);
    }

    // Basis: kernel of the stacked F_h-linear maps f_1..f_s.
    const size_t ambient = static_cast<size_t>(tau) * m;
    if (s == 0) {
        v.basis = FhSubspace::full(t.base(), ambient);
        return v;
    }
    FhMatrix map(t.base(), static_cast<size_t>(tau) * s, ambient);
    for (int j = 0; j < m; ++j) {
        for (int b = 0; b < tau; ++b) {
            FhVec unit(tau, 0);
            unit[b] = 1;
            Felem x = t.from_coords(level, unit);
            Felem powd = t.frobenius(x, m - j - 1);  // x^{h^{m-(j+1)}}
            for (int i = 1; i <= s; ++i) {
                Felem val = t.mul(powd, t.pow(v.gammas[j], static_cast<uint64_t>(i)));
                for (int r = 0; r < tau; ++r)
                    map.set(static_cast<size_t>(i - 1) * tau + r, static_cast<size_t>(j) * tau + b,
                            val.c[r]);
            }
        }
    }
    v.basis = FhSubspace::from_generators(map.kernel());
    const size_t expect = static_cast<size_t>(tau) * (m - s);
    if (v.basis.dim() != expect)
        throw ParameterError("variety degenerated: rational point space has F_h-dimension " +
                             std::to_string(v.basis.dim()) + ", expected " +
                             std::to_string(expect) + " (h=" + std::to_string(h) + ")");
    return v;
}

DesignFamily random_design(std::shared_ptr<const FieldTower> tower, int level, int m, int s,
                           double epsilon, size_t members, Rng& rng) {
    const FieldTower& t = *tower;
    const int tau = t.degree(level);
    if (members < 1) throw ParameterError("random design needs at least one member");
    const size_t ambient = static_cast<size_t>(tau) * m;
    const size_t codim = static_cast<size_t>(std::ceil(epsilon * tau * m));
    if (codim >= ambient)
        throw ParameterError("random design codimension " + std::to_string(codim) +
                             " leaves no subspace in dimension " + std::to_string(ambient));

    DesignFamily fam;
    fam.tower = tower;
    fam.level = level;
    fam.m = m;
    fam.s = s;
    fam.epsilon = epsilon;
    fam.kind = DesignKind::Random;
    fam.measure = DesignMeasure::OverBase;
    fam.claimed_a = 8.0 * s / epsilon;
    if (!(s < m * epsilon / 2))
        fam.notes.push_back("outside the analyzed regime: s < m*eps/2 fails; bound is a hypothesis");
    const double cap = std::pow(static_cast<double>(t.h()), epsilon * tau * m / 8.0);
    if (static_cast<double>(members) > cap)
        fam.notes.push_back("outside the analyzed regime: M exceeds h^{eps*tau*m/8}");

    while (fam.members.size() < members) {
        FhSubspace cand = random_subspace(t.base(), ambient, ambient - codim, rng);
        bool dup = false;
        for (const auto& b : fam.members) dup = dup || b == cand;
        if (!dup) fam.members.push_back(std::move(cand));
    }
    return fam;
}

DesignFamily window_design(std::shared_ptr<const FieldTower> tower, int level, int m, int s,
                           double epsilon, size_t members) {
    const FieldTower& t = *tower;
    const int tau = t.degree(level);
    BigUint qb = t.level_size(level);
    if (!qb.fits_u64()) throw ParameterError("window design level too large");
    const uint64_t q = qb.to_u64();
    if (q <= static_cast<uint64_t>(m)) throw ParameterError("window design needs Q > m");
    const size_t r = static_cast<size_t>(std::ceil(epsilon * m));
    if (r >= static_cast<size_t>(m))
        throw ParameterError("window design codimension ceil(eps*m) must stay below m");
    const size_t available = (q - 1) / r;
    if (members == 0) members = available;
    if (members > available)
        throw ParameterError("not enough disjoint generator windows: have " +
                             std::to_string(available) + ", asked " + std::to_string(members));

    DesignFamily fam;
    fam.tower = tower;
    fam.level = level;
    fam.m = m;
    fam.s = s;
    fam.epsilon = epsilon;
    fam.kind = DesignKind::Window;
    fam.measure = DesignMeasure::OverLevel;
    fam.claimed_a = 2.0 * s / epsilon;
    if (!(s <= epsilon * m / 4))
        fam.notes.push_back("outside stated regime: s <= eps*m/4 fails; verifier decides");

    const Felem g = t.multiplicative_generator(level);
    // Identify F_Q^m with polynomials of degree < m: coordinate j = coefficient
    // of X^j. H_i = kernel of evaluation at the window points, as an F_Q-linear
    // map F_Q^m -> F_Q^r expanded over F_h.
    const Gf& f = t.base();
    for (size_t i = 0; i < members; ++i) {
        FhMatrix map(f, static_cast<size_t>(tau) * r, static_cast<size_t>(tau) * m);
        for (size_t w = 0; w < r; ++w) {
            Felem point = t.pow(g, static_cast<uint64_t>(i * r + w));
            Felem power = t.one(level);
            for (int j = 0; j < m; ++j) {
                // condition row block: coefficient_j * point^j summed to zero
                for (int b = 0; b < tau; ++b) {
                    FhVec unit(tau, 0);
                    unit[b] = 1;
                    Felem val = t.mul(t.from_coords(level, unit), power);
                    for (int rr = 0; rr < tau; ++rr)
                        map.set(w * tau + rr, static_cast<size_t>(j) * tau + b, val.c[rr]);
                }
                power = t.mul(power, point);
            }
        }
        fam.members.push_back(FhSubspace::from_generators(map.kernel()));
    }
    for (size_t i = 0; i < fam.members.size(); ++i)
        for (size_t j = i + 1; j < fam.members.size(); ++j)
            if (fam.members[i] == fam.members[j])
                throw ParameterError("window design produced duplicate members");
    return fam;
}

DesignFamily combined_design(const DesignFamily& window, const EvasiveVariety& variety) {
    if (window.tower->h() != variety.tower->h() || window.tau() != variety.tau() ||
        window.m != variety.m)
        throw ParameterError("combined design: window/variety parameter mismatch");

    DesignFamily fam;
    fam.tower = window.tower;
    fam.level = window.level;
    fam.m = window.m;
    fam.s = window.s;
    fam.epsilon = window.epsilon;
    fam.kind = DesignKind::Combined;
    fam.measure = DesignMeasure::OverBase;
    fam.claimed_a = 2.0 * (window.m - 1) * window.s / window.epsilon;
    fam.notes = window.notes;
    if (variety.s < window.s)
        fam.notes.push_back("variety s below design s: combined bound is a hypothesis");
    for (const auto& v : window.members) fam.members.push_back(v.intersect(variety.basis));
    return fam;
}

DesignFamily search_design(std::shared_ptr<const FieldTower> tower, int level, int m, int s,
                           int codim, size_t members, size_t pool, Rng& rng) {
    const FieldTower& t = *tower;
    const size_t ambient = static_cast<size_t>(t.degree(level)) * m;
    if (codim <= 0 || static_cast<size_t>(codim) >= ambient)
        throw ParameterError("search design: bad codimension");
    std::vector<FhSubspace> cands;
    while (cands.size() < pool) {
        FhSubspace c = random_subspace(t.base(), ambient, ambient - codim, rng);
        bool dup = false;
        for (const auto& b : cands) dup = dup || b == c;
        if (!dup) cands.push_back(std::move(c));
    }

    DesignFamily fam;
    fam.tower = tower;
    fam.level = level;
    fam.m = m;
    fam.s = s;
    fam.epsilon = static_cast<double>(codim) / ambient;
    fam.kind = DesignKind::Search;
    fam.measure = DesignMeasure::OverBase;
    fam.notes.push_back("greedy search provenance; claimed bound is the verified one");

    VerifyMode mode;
    while (fam.members.size() < members) {
        size_t best = SIZE_MAX;
        uint64_t best_sum = UINT64_MAX;
        for (size_t i = 0; i < cands.size(); ++i) {
            bool used = false;
            for (const auto& b : fam.members) used = used || b == cands[i];
            if (used) continue;
            DesignFamily trial = fam;
            trial.members.push_back(cands[i]);
            trial.claimed_a = static_cast<double>(ambient * trial.members.size());
            VerifyReport rep = verify_design(trial, s, mode);
            if (rep.max_sum_dim_h < best_sum) {
                best_sum = rep.max_sum_dim_h;
                best = i;
            }
        }
        if (best == SIZE_MAX) throw ParameterError("search design: candidate pool exhausted");
        fam.members.push_back(cands[best]);
    }
    DesignFamily final_check = fam;
    final_check.claimed_a = static_cast<double>(ambient * members);
    fam.claimed_a = static_cast<double>(verify_design(final_check, s, mode).max_sum_dim_h);
    return fam;
}

VerifyReport verify_design(const DesignFamily& family, int s, const VerifyMode& mode, Rng* rng,
                           std::ostream* csv) {
    const FieldTower& t = *family.tower;
    const int tau = family.tau();
    const int m = family.m;
    VerifyReport rep;
    rep.exhaustive = mode.exhaustive;
    rep.claimed_a = family.claimed_a;
    rep.measure = family.measure;
    rep.level_dims_valid = true;

    if (csv) {
        *csv << "# ldlab design-verify v1 h=" << t.h() << " tau=" << tau << " m=" << m
             << " s=" << s << " members=" << family.members.size()
             << " claimed_a=" << family.claimed_a << "\n";
        *csv << "w_index,w_basis,sum_dim_h,sum_dim_level\n";
    }

    auto inspect = [&](const std::vector<std::vector<Felem>>& rows, uint64_t index) {
        FhSubspace wh = expand_level_rows(t, family.level, m, rows);
        uint64_t sum_h = 0, sum_q = 0;
        bool q_ok = true;
        for (const auto& hsub : family.members) {
            size_t d = hsub.intersect(wh).dim();
            sum_h += d;
            if (d % tau == 0)
                sum_q += d / tau;
            else
                q_ok = false;
        }
        if (!q_ok) rep.level_dims_valid = false;
        if (csv) {
            std::ostringstream basis;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r) basis << ";";
                for (size_t c = 0; c < rows[r].size(); ++c) {
                    if (c) basis << "|";
                    for (size_t k = 0; k < rows[r][c].c.size(); ++k) {
                        if (k) basis << ".";
                        basis << rows[r][c].c[k];
                    }
                }
            }
            *csv << index << "," << basis.str() << "," << sum_h << ","
                 << (q_ok ? std::to_string(sum_q) : std::string("-")) << "\n";
        }
        bool worse = family.measure == DesignMeasure::OverLevel
                         ? (q_ok && sum_q >= rep.max_sum_dim_level)
                         : sum_h >= rep.max_sum_dim_h;
        if (rep.inspected == 0 || worse) rep.worst_witness = rows;
        if (sum_h > rep.max_sum_dim_h) rep.max_sum_dim_h = sum_h;
        if (q_ok && sum_q > rep.max_sum_dim_level) rep.max_sum_dim_level = sum_q;
        ++rep.inspected;
    };

    if (mode.exhaustive) {
        auto count = count_subspaces(t.level_size(family.level), m, s, mode.limit);
        if (!count)
            throw EnumerationLimit("too many subspaces for exhaustive verification (limit " +
                                   std::to_string(mode.limit) + ")");
        LevelSubspaceEnumerator en(t, family.level, m, s);
        uint64_t idx = 0;
        while (auto rows = en.next()) inspect(*rows, idx++);
        if (idx != *count)
            throw ParameterError("internal: enumerator count mismatch (" + std::to_string(idx) +
                                 " vs " + std::to_string(*count) + ")");
    } else {
        if (!rng) throw ParameterError("sampled verification needs an RNG");
        for (uint64_t i = 0; i < mode.samples; ++i) {
            // random full-rank s x m over the level, canonicalized
            LevelMatrix lm(t, family.level, s, m);
            while (true) {
                for (int r = 0; r < s; ++r)
                    for (int c = 0; c < m; ++c) lm.set(r, c, t.random_element(family.level, *rng));
                LevelMatrix probe = lm;
                if (probe.rref_in_place().size() == static_cast<size_t>(s)) break;
            }
            LevelMatrix red = lm;
            red.rref_in_place();
            std::vector<std::vector<Felem>> rows(s);
            for (int r = 0; r < s; ++r)
                for (int c = 0; c < m; ++c) rows[r].push_back(red.at(r, c));
            inspect(rows, i);
        }
    }

    rep.pass = static_cast<double>(rep.observed_bound()) <= family.claimed_a;
    return rep;
}

std::string DesignFamily::to_json() const {
    nlohmann::json j;
    j["h"] = tower->h();
    j["tau"] = tau();
    j["m"] = m;
    j["s"] = s;
    j["epsilon"] = epsilon;
    j["claimed_a"] = claimed_a;
    j["kind"] = static_cast<int>(kind);
    j["measure"] = static_cast<int>(measure);
    j["notes"] = notes;
    nlohmann::json mem = nlohmann::json::array();
    for (const auto& sub : members) {
        nlohmann::json rows = nlohmann::json::array();
        for (size_t r = 0; r < sub.dim(); ++r) rows.push_back(sub.basis().row(r));
        mem.push_back(rows);
    }
    j["members"] = mem;
    return j.dump(2);
}

DesignFamily DesignFamily::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    DesignFamily fam;
    const uint32_t h = j.at("h").get<uint32_t>();
    const int tau = j.at("tau").get<int>();
    fam.tower = build_tower(h, {1, tau});
    fam.level = 1;
    fam.m = j.at("m").get<int>();
    fam.s = j.at("s").get<int>();
    fam.epsilon = j.at("epsilon").get<double>();
    fam.claimed_a = j.at("claimed_a").get<double>();
    fam.kind = static_cast<DesignKind>(j.at("kind").get<int>());
    fam.measure = static_cast<DesignMeasure>(j.at("measure").get<int>());
    fam.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& rows : j.at("members")) {
        std::vector<FhVec> gen;
        for (const auto& row : rows) gen.push_back(row.get<FhVec>());
        if (gen.empty())
            fam.members.push_back(FhSubspace::zero(fam.tower->base(), fam.ambient()));
        else
            fam.members.push_back(
                FhSubspace::from_generators(FhMatrix::from_rows(fam.tower->base(), gen)));
    }
    return fam;
}

}  // namespace ldlab
