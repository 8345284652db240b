#include <doctest.h>

#include "ldlab/errors.hpp"
#include "ldlab/linpoly.hpp"
#include "ldlab/rng.hpp"

using namespace ldlab;

TEST_CASE("lin_eval: zero, identity, additivity") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(1);

    LinearizedPoly zero(*t, 2, 1, {t->zero(2), t->zero(2)});
    LinearizedPoly ident(*t, 2, 1, {t->one(2)});
    for (int i = 0; i < 40; ++i) {
        Felem x = t->random_element(2, rng);
        Felem y = t->random_element(2, rng);
        CHECK(t->is_zero(zero.eval(x)));
        CHECK(ident.eval(x) == x);
        LinearizedPoly f(*t, 2, 1,
                         {t->random_element(2, rng), t->random_element(2, rng),
                          t->random_element(2, rng)});
        CHECK(f.eval(t->add(x, y)) == t->add(f.eval(x), f.eval(y)));
    }
}

TEST_CASE("evaluation is F_b-linear for the q-tagged view") {
    // base_exp n: monomials X^{q^i}, so scaling by F_q elements commutes.
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(2);
    LinearizedPoly f(*t, 2, 4, {t->random_element(2, rng), t->random_element(2, rng)});
    Felem c = t->embed(t->random_element(1, rng), 2);  // scalar in F_16
    Felem x = t->random_element(2, rng);
    CHECK(f.eval(t->mul(c, x)) == t->mul(c, f.eval(x)));
}

TEST_CASE("lin_twist at h=2, n=4, m=2: decoder identity on all of F_q") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(3);
    const int n = 4;
    LinearizedPoly f(*t, 2, 1,
                     {t->random_element(2, rng), t->random_element(2, rng),
                      t->random_element(2, rng)});
    CHECK(f.twist(0, n) == f);

    // twist(f,1)(alpha) = frobenius(f(alpha), n) for alpha spanning F_q.
    Felem a = t->zero(1);
    do {
        Felem alpha = t->embed(a, 2);
        CHECK(f.twist(1, n).eval(alpha) == t->frobenius(f.eval(alpha), n));
    } while (t->next_element(a));

    // sigma^m = identity on F_{q^m}: twist composes to the identity.
    LinearizedPoly tw = f.twist(1, n).twist(2 - 1, n);
    CHECK(tw == f);
}

TEST_CASE("twisting commutes with addition") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(4);
    LinearizedPoly f(*t, 2, 1, {t->random_element(2, rng), t->random_element(2, rng)});
    LinearizedPoly g(*t, 2, 1, {t->random_element(2, rng), t->random_element(2, rng)});
    CHECK(f.add(g).twist(1, 4) == f.twist(1, 4).add(g.twist(1, 4)));
}

TEST_CASE("lin_kernel: X, Artin-Schreier style, random degree-2 vs exhaustive") {
    auto t = build_tower(2, {1, 4});

    LinearizedPoly x_poly(*t, 1, 1, {t->one(1)});
    CHECK(x_poly.kernel().dim() == 0);

    // X^2 - X over F_16 (h = 2): kernel is F_2, F_h-dimension 1.
    LinearizedPoly artin(*t, 1, 1, {t->one(1), t->one(1)});  // x + x^2 in char 2
    CHECK(artin.kernel().dim() == 1);
    CHECK(artin.kernel().contains(t->one(1).c));

    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        LinearizedPoly f(*t, 1, 1,
                         {t->random_element(1, rng), t->random_element(1, rng),
                          t->random_element(1, rng)});
        if (f.is_zero()) continue;
        // oracle: exhaustive root count over F_16
        size_t roots = 0;
        Felem x = t->zero(1);
        do {
            if (t->is_zero(f.eval(x))) ++roots;
        } while (t->next_element(x));
        CHECK((size_t{1} << f.kernel().dim()) == roots);
        CHECK(f.kernel().dim() <= static_cast<size_t>(f.b_degree()));
    }

    LinearizedPoly zero(*t, 1, 1, {t->zero(1)});
    CHECK_THROWS_AS(zero.kernel(), ParameterError);
}

TEST_CASE("kernel of the q-tagged operator is an F_q-subspace") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        LinearizedPoly op(*t, 2, 4, {t->random_element(2, rng), t->random_element(2, rng)});
        if (op.is_zero()) continue;
        size_t d = op.kernel().dim();
        CHECK(d % 4 == 0);  // divisible by n = [F_q : F_h]
        CHECK(d / 4 <= static_cast<size_t>(op.b_degree()));
    }
}

TEST_CASE("eval of a sum of polynomials is the sum of evaluations") {
    auto t = build_tower(2, {1, 4, 8});
    Rng rng(9);
    LinearizedPoly f(*t, 2, 1, {t->random_element(2, rng), t->random_element(2, rng)});
    LinearizedPoly g(*t, 2, 1, {t->random_element(2, rng), t->random_element(2, rng)});
    for (int i = 0; i < 20; ++i) {
        Felem x = t->random_element(2, rng);
        CHECK(f.add(g).eval(x) == t->add(f.eval(x), g.eval(x)));
    }
}

TEST_CASE("level mismatches are rejected") {
    auto t = build_tower(2, {1, 4, 8});
    CHECK_THROWS_AS(t->add(t->one(1), t->one(2)), ParameterError);
    CHECK_THROWS_AS(LinearizedPoly(*t, 2, 1, {t->one(1)}), ParameterError);
}
