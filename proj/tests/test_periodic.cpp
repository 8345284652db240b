#include <doctest.h>

#include <algorithm>
#include <set>

#include "ldlab/errors.hpp"
#include "ldlab/linpoly.hpp"
#include "ldlab/periodic.hpp"
#include "ldlab/rng.hpp"

using namespace ldlab;

namespace {

// Random (s, m, k)-periodic subspace at q = h^tau: T is a random F_q-linear
// operator (built from a random q-tagged linearized polynomial so the kernel
// really is F_q-linear), prefix maps and offsets are arbitrary F_h-affine.
PeriodicSubspace random_periodic(const FieldTower& t, int tau, int m, int k, int s, Rng& rng) {
    const int lvl = t.num_levels() - 1;
    const size_t bd = static_cast<size_t>(tau) * m;
    REQUIRE(t.degree(lvl) == static_cast<int>(bd));
    PeriodicSubspace ps(t.base(), tau, bd, k);
    while (true) {
        std::vector<Felem> cs;
        for (int i = 0; i <= s; ++i) cs.push_back(t.random_element(lvl, rng));
        LinearizedPoly op(t, lvl, tau, std::move(cs));
        if (op.is_zero()) continue;
        FhMatrix tm = op.matrix();
        FhSubspace w = FhSubspace::from_generators(tm.kernel());
        if (w.dim() / tau > static_cast<size_t>(s)) continue;  // dim_q W <= s
        ps.set_block_operator(std::move(tm));
        break;
    }
    for (int j = 0; j < k; ++j) {
        FhMatrix pm(t.base(), bd, static_cast<size_t>(j) * bd);
        for (size_t r = 0; r < pm.rows(); ++r)
            for (size_t c = 0; c < pm.cols(); ++c)
                pm.set(r, c, static_cast<uint32_t>(rng.below(t.h())));
        FhVec off(bd);
        for (auto& d : off) d = static_cast<uint32_t>(rng.below(t.h()));
        ps.set_block_map(j, std::move(pm), std::move(off));
    }
    return ps;
}

FhSubspace random_subspace(const Gf& f, size_t ambient, size_t dim, Rng& rng) {
    while (true) {
        FhMatrix m(f, dim, ambient);
        for (size_t r = 0; r < dim; ++r)
            for (size_t c = 0; c < ambient; ++c) m.set(r, c, static_cast<uint32_t>(rng.below(f.size())));
        if (m.rank() == dim) return FhSubspace::from_generators(m);
    }
}

}  // namespace

TEST_CASE("periodic_intersect equals brute-force enumeration, 50 seeded instances") {
    // q = 4 (h = 2, tau = 2), m = 2, k = 3, s = 2.
    auto t = build_tower(2, {1, 2, 4});
    const size_t bd = 4;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng = Rng::substream(900, seed);
        PeriodicSubspace ps = random_periodic(*t, 2, 2, 3, 2, rng);
        std::vector<FhSubspace> blocks;
        for (int j = 0; j < 3; ++j)
            blocks.push_back(random_subspace(t->base(), bd, 1 + rng.below(3), rng));

        AffineFhSubspace dp = periodic_intersect(ps, blocks);

        // Oracle: enumerate H, filter by block membership.
        std::set<FhVec> expect;
        for (const auto& x : ps.enumerate()) {
            bool ok = true;
            for (int j = 0; j < 3 && ok; ++j) {
                FhVec part(x.begin() + j * bd, x.begin() + (j + 1) * bd);
                ok = blocks[j].contains(part);
            }
            if (ok) expect.insert(x);
        }
        std::set<FhVec> got;
        for (const auto& x : dp.enumerate()) got.insert(x);
        CHECK(got == expect);

        // containment invariants
        for (const auto& x : got) {
            CHECK(ps.contains(x));
        }
    }
}

TEST_CASE("W = 0 forces a single point or empty; full blocks reproduce H") {
    auto t = build_tower(2, {1, 2, 4});
    Rng rng(77);
    // invertible T: kernel {0}
    PeriodicSubspace ps = [&] {
        while (true) {
            PeriodicSubspace cand = random_periodic(*t, 2, 2, 2, 2, rng);
            if (cand.kernel_w().dim() == 0) return cand;
        }
    }();
    std::vector<FhSubspace> full(2, FhSubspace::full(t->base(), 4));
    AffineFhSubspace all = periodic_intersect(ps, full);
    CHECK(all.dim() == 0);  // unique continuation per prefix: a single point
    auto pts = all.enumerate();
    REQUIRE(pts.size() == 1);
    CHECK(ps.contains(pts[0]));

    // full blocks, arbitrary T: the DP output must equal H element-for-element
    PeriodicSubspace any = random_periodic(*t, 2, 2, 2, 2, rng);
    std::vector<FhSubspace> full2(2, FhSubspace::full(t->base(), 4));
    AffineFhSubspace dp = periodic_intersect(any, full2);
    std::set<FhVec> expect;
    for (const auto& x : any.enumerate()) expect.insert(x);
    std::set<FhVec> got;
    for (const auto& x : dp.enumerate()) got.insert(x);
    CHECK(got == expect);
}

TEST_CASE("dimension is bounded by sum of W-block intersections") {
    auto t = build_tower(2, {1, 2, 4});
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = Rng::substream(901, seed);
        PeriodicSubspace ps = random_periodic(*t, 2, 2, 3, 2, rng);
        FhSubspace w = ps.kernel_w();
        std::vector<FhSubspace> blocks;
        size_t bound = 0;
        for (int j = 0; j < 3; ++j) {
            blocks.push_back(random_subspace(t->base(), 4, 1 + rng.below(3), rng));
            bound += w.intersect(blocks.back()).dim();
        }
        AffineFhSubspace dp = periodic_intersect(ps, blocks);
        if (!dp.is_empty()) CHECK(static_cast<size_t>(dp.dim()) <= bound);
    }
}

TEST_CASE("claimed bound violations raise ListDimensionExceeded") {
    auto t = build_tower(2, {1, 2, 4});
    Rng rng(5);
    PeriodicSubspace ps = random_periodic(*t, 2, 2, 2, 2, rng);
    std::vector<FhSubspace> full(2, FhSubspace::full(t->base(), 4));
    AffineFhSubspace unbounded = periodic_intersect(ps, full);
    if (unbounded.dim() > 0) {
        CHECK_THROWS_AS(periodic_intersect(ps, full, unbounded.dim() - 1),
                        ListDimensionExceeded);
    }
    CHECK_THROWS_AS(periodic_intersect(ps, std::vector<FhSubspace>{}, 1), ParameterError);
}

TEST_CASE("empty periodic subspace intersects to the empty set") {
    auto t = build_tower(2, {1, 2, 4});
    PeriodicSubspace ps = PeriodicSubspace::empty_space(t->base(), 2, 4, 2);
    std::vector<FhSubspace> full(2, FhSubspace::full(t->base(), 4));
    CHECK(periodic_intersect(ps, full).is_empty());
    CHECK(ps.enumerate().empty());
}
