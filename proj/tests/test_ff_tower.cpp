#include <doctest.h>

#include <map>
#include <set>

#include "ldlab/errors.hpp"
#include "ldlab/matrix.hpp"
#include "ldlab/poly.hpp"
#include "ldlab/rng.hpp"
#include "ldlab/tower.hpp"

using namespace ldlab;

namespace {

// Oracle: rank over F_h by enumerating the row span and counting points.
size_t rank_by_span_enumeration(const FhMatrix& m) {
    const Gf& f = m.field();
    std::set<FhVec> span;
    FhVec lambda(m.rows(), 0);
    while (true) {
        span.insert(m.mul_row_vec(lambda));
        size_t i = 0;
        for (; i < lambda.size(); ++i) {
            if (++lambda[i] < f.size()) break;
            lambda[i] = 0;
        }
        if (i == lambda.size()) break;
    }
    size_t r = 0;
    size_t pts = 1;
    while (pts < span.size()) {
        pts *= f.size();
        ++r;
    }
    REQUIRE(pts == span.size());
    return r;
}

// Oracle: power by square-and-multiply written against the public mul only.
Felem pow_oracle(const FieldTower& t, Felem x, uint64_t e) {
    Felem acc = t.one(x.level);
    while (e) {
        if (e & 1) acc = t.mul(acc, x);
        x = t.mul(x, x);
        e >>= 1;
    }
    return acc;
}

}  // namespace

TEST_CASE("build_tower basics and errors") {
    auto t = build_tower(2, {1});
    CHECK(t->num_levels() == 1);
    CHECK(t->h() == 2);

    CHECK_THROWS_AS(build_tower(6, {1, 2}), ParameterError);   // not a prime power
    CHECK_THROWS_AS(build_tower(1, {1}), ParameterError);
    CHECK_THROWS_AS(build_tower(2, {1, 4, 6}), ParameterError);  // 4 does not divide 6
    CHECK_THROWS_AS(build_tower(2, {2, 4}), ParameterError);     // must start at 1
}

TEST_CASE("tower of F_2 in F_16 in F_256 with verified embeddings") {
    auto t = build_tower(2, {1, 4, 8});
    CHECK(t->degree(1) == 4);
    CHECK(t->degree(2) == 8);

    // Homomorphism of the embedding F_16 -> F_256, exhaustively.
    Felem x = t->zero(1);
    do {
        Felem y = t->zero(1);
        do {
            CHECK(t->embed(t->mul(x, y), 2) == t->mul(t->embed(x, 2), t->embed(y, 2)));
            CHECK(t->embed(t->add(x, y), 2) == t->add(t->embed(x, 2), t->embed(y, 2)));
        } while (t->next_element(y));
        // injective: embeds back down
        auto down = t->try_project(t->embed(x, 2), 1);
        REQUIRE(down.has_value());
        CHECK(*down == x);
    } while (t->next_element(x));
}

TEST_CASE("build_tower(4, [1,3]) modulus is irreducible by exhaustive root test") {
    auto t = build_tower(4, {1, 3});
    const auto& mod = t->modulus(1);  // degree 3 over F_4; no roots in F_4 suffices
    REQUIRE(mod.size() == 4);
    PolyRing ring(*t, 0);
    Poly m(mod);
    Felem x = t->zero(0);
    do {
        CHECK(!t->is_zero(ring.eval(m, x)));
    } while (t->next_element(x));
}

TEST_CASE("field axioms exhaustive on F_16, sampled on F_4096") {
    auto t = build_tower(2, {1, 4, 12});
    // Exhaustive on the 4-bit level.
    Felem x = t->zero(1);
    do {
        if (!t->is_zero(x)) CHECK(t->is_one(t->mul(x, t->inv(x))));
        CHECK(t->is_zero(t->add(x, x)));  // char 2
        Felem y = t->zero(1);
        do {
            CHECK(t->mul(x, y) == t->mul(y, x));
            Felem z = t->from_coords(1, {1, 0, 1, 1});
            CHECK(t->mul(x, t->add(y, z)) == t->add(t->mul(x, y), t->mul(x, z)));
            CHECK(t->mul(t->mul(x, y), z) == t->mul(x, t->mul(y, z)));
        } while (t->next_element(y));
    } while (t->next_element(x));

    // Random samples on the top level.
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Felem a = t->random_element(2, rng);
        Felem b = t->random_element(2, rng);
        Felem c = t->random_element(2, rng);
        CHECK(t->mul(a, b) == t->mul(b, a));
        CHECK(t->mul(a, t->add(b, c)) == t->add(t->mul(a, b), t->mul(a, c)));
        CHECK(t->mul(t->mul(a, b), c) == t->mul(a, t->mul(b, c)));
        if (!t->is_zero(a)) CHECK(t->is_one(t->mul(a, t->inv(a))));
    }
}

TEST_CASE("odd characteristic arithmetic on F_9 and F_81") {
    auto t = build_tower(9, {1, 2});
    Felem x = t->zero(1);
    do {
        if (!t->is_zero(x)) CHECK(t->is_one(t->mul(x, t->inv(x))));
        CHECK(t->is_zero(t->add(x, t->neg(x))));
        Felem three_x = t->add(x, t->add(x, x));
        CHECK(t->is_zero(three_x));  // char 3
    } while (t->next_element(x));
}

TEST_CASE("inv matches the square-and-multiply oracle in F_256") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        Felem g = t->random_nonzero(2, rng);
        CHECK(t->inv(g) == pow_oracle(*t, g, 254));
    }
    CHECK_THROWS_AS(t->inv(t->zero(2)), ParameterError);
}

TEST_CASE("frobenius: identity, additivity, full order, embedding compatibility") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        Felem x = t->random_element(2, rng);
        Felem y = t->random_element(2, rng);
        CHECK(t->frobenius(x, 0) == x);
        CHECK(t->frobenius(t->add(x, y), 3) == t->add(t->frobenius(x, 3), t->frobenius(y, 3)));
        CHECK(t->frobenius(x, 8) == x);  // fixed by the full Frobenius
        CHECK(t->frobenius_inv(t->frobenius(x, 5), 5) == x);
    }
    // embed(frobenius(x,e)) == frobenius(embed(x),e)
    Felem x = t->zero(1);
    do {
        for (int e = 0; e < 4; ++e)
            CHECK(t->embed(t->frobenius(x, e), 2) == t->frobenius(t->embed(x, 2), e));
    } while (t->next_element(x));
}

TEST_CASE("coordinates round-trip and linearity") {
    auto t = build_tower(2, {1, 4});
    CHECK(t->coords(t->zero(1)) == FhVec{0, 0, 0, 0});
    Felem x = t->zero(1);
    do {
        CHECK(t->from_coords(1, t->coords(x)) == x);
        Felem y = t->zero(1);
        do {
            FhVec sum(4);
            for (int i = 0; i < 4; ++i) sum[i] = t->base().add(x.c[i], y.c[i]);
            CHECK(t->coords(t->add(x, y)) == sum);
        } while (t->next_element(y));
    } while (t->next_element(x));
    CHECK_THROWS_AS(t->from_coords(1, {0, 0}), ParameterError);
}

TEST_CASE("rank_and_rref on trivial shapes") {
    Gf f2(2);
    auto id = FhMatrix::identity(f2, 4);
    auto res = rank_and_rref(id);
    CHECK(res.rank == 4);
    CHECK(res.kernel.rows() == 0);

    FhMatrix zero(f2, 5, 7);
    CHECK(rank_and_rref(zero).rank == 0);
    CHECK(rank_and_rref(zero).kernel.rows() == 7);
}

TEST_CASE("rank matches brute-force row-span oracle on all small F_2 matrices") {
    Gf f2(2);
    for (size_t rows = 1; rows <= 4; ++rows) {
        for (size_t cols = 1; cols <= 4; ++cols) {
            uint64_t total = 1ull << (rows * cols);
            for (uint64_t bits = 0; bits < total; ++bits) {
                FhMatrix m(f2, rows, cols);
                for (size_t i = 0; i < rows * cols; ++i)
                    m.set(i / cols, i % cols, (bits >> i) & 1u);
                auto res = rank_and_rref(m);
                CHECK(res.rank == rank_by_span_enumeration(m));
                CHECK(res.rank + res.kernel.rows() == cols);
                // kernel rows really annihilate
                for (size_t r = 0; r < res.kernel.rows(); ++r) {
                    FhVec prod = m.mul_vec(res.kernel.row(r));
                    for (uint32_t v : prod) CHECK(v == 0);
                }
            }
        }
    }
}

TEST_CASE("random 5x5 over F_2 rank equals oracle") {
    Gf f2(2);
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        FhMatrix m(f2, 5, 5);
        for (size_t i = 0; i < 25; ++i) m.set(i / 5, i % 5, rng.below(2));
        CHECK(rank_and_rref(m).rank == rank_by_span_enumeration(m));
    }
}

TEST_CASE("minimal_polynomial: zero, primitive element, base element") {
    auto t = build_tower(2, {1, 4});
    PolyRing r0(*t, 0);
    CHECK(minimal_polynomial(*t, t->zero(1), 0) == r0.x());

    Felem g = t->multiplicative_generator(1);
    Poly m = minimal_polynomial(*t, g, 0);
    CHECK(r0.deg(m) == 4);
    CHECK(r0.irreducible(m));
    // root substitution: evaluate m at g inside F_16
    PolyRing r1(*t, 1);
    Poly m_up;
    for (const auto& c : m) m_up.push_back(t->embed(c, 1));
    r1.trim(m_up);
    CHECK(t->is_zero(r1.eval(m_up, g)));

    auto t2 = build_tower(4, {1, 3});
    Felem b = t2->embed(t2->from_base(0, 2), 1);  // F_4 element inside F_64
    Poly mb = minimal_polynomial(*t2, b, 0);
    CHECK(PolyRing(*t2, 0).deg(mb) == 1);
}

TEST_CASE("minimal_polynomial degree divides the extension degree") {
    auto t = build_tower(2, {1, 8});
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        Felem x = t->random_element(1, rng);
        if (t->is_zero(x)) continue;
        int d = PolyRing(*t, 0).deg(minimal_polynomial(*t, x, 0));
        CHECK(8 % d == 0);
    }
}

TEST_CASE("roots_of_binomial: roots of unity, characteristic-2 square roots") {
    auto t = build_tower(2, {1, 4});

    // beta = 1, ell = 5: the 5th roots of unity in F_16 (5 | 15).
    auto roots = t->roots_of_binomial(5, t->one(1));
    CHECK(roots.size() == 5);
    for (const auto& r : roots) CHECK(t->is_one(t->pow(r, uint64_t{5})));

    // ell = 2 in characteristic 2: squaring is a bijection, so every beta has
    // exactly one root. Oracle: exhaustive squaring table of F_16.
    std::map<Felem, std::vector<Felem>> by_square;
    Felem x = t->zero(1);
    do {
        by_square[t->mul(x, x)].push_back(x);
    } while (t->next_element(x));
    Felem beta = t->zero(1);
    do {
        auto rs = t->roots_of_binomial(2, beta);
        REQUIRE(by_square.count(beta) == 1);
        CHECK(rs == by_square[beta]);
        CHECK(rs.size() == 1);
    } while (t->next_element(beta));
}

TEST_CASE("roots_of_binomial: odd characteristic squares have two roots") {
    auto t = build_tower(5, {1, 2});  // F_25
    std::map<Felem, std::vector<Felem>> by_square;
    Felem x = t->zero(1);
    do {
        by_square[t->mul(x, x)].push_back(x);
    } while (t->next_element(x));
    Felem beta = t->zero(1);
    size_t nonempty = 0;
    do {
        auto rs = t->roots_of_binomial(2, beta);
        std::vector<Felem> expect = by_square.count(beta) ? by_square[beta] : std::vector<Felem>{};
        std::sort(expect.begin(), expect.end());
        CHECK(rs == expect);
        if (!rs.empty() && !t->is_zero(beta)) {
            CHECK(rs.size() == 2);  // gcd(2, 24) = 2 roots per square
            ++nonempty;
        }
    } while (t->next_element(beta));
    CHECK(nonempty == 12);  // half the nonzero elements are squares
}

TEST_CASE("roots_of_binomial count is ell whenever nonempty (gcd(ell,h)=1)") {
    auto t = build_tower(4, {1, 2});  // F_16 over F_4; |F_16*| = 15, ell = 3 and 5 divide
    for (uint64_t ell : {3ull, 5ull}) {
        Felem beta = t->zero(1);
        do {
            if (t->is_zero(beta)) continue;
            auto rs = t->roots_of_binomial(ell, beta);
            CHECK((rs.empty() || rs.size() == ell));
            for (const auto& r : rs) CHECK(t->pow(r, ell) == beta);
        } while (t->next_element(beta));
    }
}

TEST_CASE("tower json round-trips and moduli are deterministic") {
    auto t1 = build_tower(2, {1, 4, 8});
    auto t2 = build_tower(2, {1, 4, 8});
    CHECK(t1->to_json() == t2->to_json());
    FieldTower back = FieldTower::from_json(t1->to_json());
    CHECK(back.to_json() == t1->to_json());
}

TEST_CASE("level elements: embedding matrices and chunked coordinates") {
    auto t = build_tower(2, {1, 4, 8});
    auto em = t->embedding_matrix(1, 2);
    CHECK(em.size() == 8);
    CHECK(em[0][0] == 1);
    CHECK(em[5][2] == 0);

    Rng rng(9);
    Felem x = t->random_element(2, rng);
    auto chunks = t->coords_over(x, 1);
    CHECK(chunks.size() == 2);
    CHECK(t->from_coords_over(2, 1, chunks) == x);
}
