#include <catch2/catch_amalgamated.hpp>

#include "gramlab/determinant.hpp"
#include "gramlab/matrix.hpp"
#include "support.hpp"

using namespace gramlab;
using gramlab::testing::rvec;
using Vec = std::vector<Rational>;

TEST_CASE("gram_matrix basics", "[matrix]") {
    SECTION("orthonormal pair gives the identity") {
        SymMatrix<Rational> g = gram_matrix<Rational>({rvec({1, 0}), rvec({0, 1})});
        REQUIRE(g(0, 0) == 1);
        REQUIRE(g(0, 1) == 0);
        REQUIRE(g(1, 1) == 1);
    }
    SECTION("duplicated vector") {
        SymMatrix<Rational> g = gram_matrix<Rational>({rvec({1, 1}), rvec({1, 1})});
        REQUIRE(g(0, 0) == 2);
        REQUIRE(g(0, 1) == 2);
        REQUIRE(g(1, 1) == 2);
        REQUIRE(determinant(g) == 0);
    }
    SECTION("direct inner products") {
        SymMatrix<Rational> g = gram_matrix<Rational>({rvec({1, 0}), rvec({1, 1})});
        REQUIRE(g(0, 0) == 1);
        REQUIRE(g(0, 1) == 1);
        REQUIRE(g(1, 1) == 2);
    }
    SECTION("length mismatch carries both lengths") {
        try {
            gram_matrix<Rational>({rvec({1, 0}), rvec({1})});
            FAIL("expected DimensionError");
        } catch (const DimensionError& e) {
            REQUIRE(e.got == 1);
            REQUIRE(e.expected == 2);
        }
    }
}

TEST_CASE("gram matrices are positive semidefinite", "[matrix][property]") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t count = 1 + rng.uniform_int(0, 3);
        std::size_t len = 1 + rng.uniform_int(0, 5);
        std::vector<Vec> vectors;
        for (std::size_t i = 0; i < count; ++i)
            vectors.push_back(testing::random_int_vector(rng, len));
        SymMatrix<Rational> g = gram_matrix(vectors);
        for (int probe = 0; probe < 20; ++probe) {
            Vec v = testing::random_int_vector(rng, count, -5, 5);
            std::vector<Rational> gv = mat_vec(g, std::span<const Rational>(v));
            REQUIRE(inner_product(gv, v) >= 0);
        }
    }
}

TEST_CASE("determinant fixed values", "[determinant]") {
    SymMatrix<Rational> id3 = SymMatrix<Rational>::identity(3);
    REQUIRE(determinant(id3) == 1);

    RectMatrix<Rational> dependent =
        RectMatrix<Rational>::from_rows({rvec({2, 2}), rvec({2, 2})});
    REQUIRE(determinant(dependent) == 0);

    RectMatrix<Rational> m = RectMatrix<Rational>::from_rows({rvec({1, 1}), rvec({1, 2})});
    REQUIRE(determinant(m) == 1);

    REQUIRE(determinant(RectMatrix<Rational>(0, 0)) == 1);
}

TEST_CASE("determinant equals the permutation expansion", "[determinant][property]") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng.uniform_int(0, 3);
        RectMatrix<Rational> m = testing::random_int_matrix(rng, n, n);
        REQUIRE(determinant(m) == testing::permanent_style_determinant(m));
    }
}

TEST_CASE("float determinant tracks the exact value", "[determinant][float]") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 1 + rng.uniform_int(0, 11);
        RectMatrix<Rational> y = testing::random_int_matrix(rng, n, n, -1000, 1000);
        SymMatrix<Rational> exact = gram_of_columns(y);

        SymMatrix<double> approx(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                approx.set(i, j, exact(i, j).convert_to<double>());

        double expected = determinant(exact).convert_to<double>();
        double got = determinant(approx);
        REQUIRE(approx_equal(got, expected, Tolerance{1e-9, 1e-9}));
    }
}

TEST_CASE("indefinite symmetric float determinant falls back to LU", "[determinant][float]") {
    SymMatrix<double> swap2(2);
    swap2.set(0, 1, 1.0);  // [[0,1],[1,0]], leading pivot exactly zero
    REQUIRE(determinant(swap2) == -1.0);
}

TEST_CASE("cofactors", "[determinant]") {
    RectMatrix<Rational> id2 = SymMatrix<Rational>::identity(2).to_rect();
    REQUIRE(cofactor(id2, 0, 0) == 1);
    REQUIRE(cofactor(id2, 0, 1) == 0);

    RectMatrix<Rational> m = RectMatrix<Rational>::from_rows({rvec({1, 2}), rvec({3, 4})});
    REQUIRE(cofactor(m, 0, 1) == -3);
    REQUIRE_THROWS_AS(cofactor(m, 2, 0), IndexError);
}

TEST_CASE("cofactor expansion reproduces the determinant", "[determinant][property]") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + rng.uniform_int(0, 4);
        RectMatrix<Rational> m = testing::random_int_matrix(rng, n, n);
        Rational det = determinant(m);
        for (std::size_t r = 0; r < n; ++r) {
            Rational expansion(0);
            for (std::size_t s = 0; s < n; ++s) expansion += m(r, s) * cofactor(m, r, s);
            REQUIRE(expansion == det);
        }
    }
}

TEST_CASE("principal minors", "[determinant]") {
    SymMatrix<Rational> d(3);
    d.set(0, 0, Rational(2));
    d.set(1, 1, Rational(3));
    d.set(2, 2, Rational(5));

    REQUIRE(principal_minor(d, SubsetIndex::full(3)) == determinant(d));
    REQUIRE(principal_minor(d, SubsetIndex({0, 2})) == 10);
    REQUIRE(principal_minor(d, SubsetIndex{}) == 1);
    REQUIRE_THROWS_AS(principal_minor(d, SubsetIndex({0, 3})), IndexError);
    REQUIRE_THROWS_AS(SubsetIndex({2, 1}), InvalidInputError);
}

TEST_CASE("spd_solve", "[solve]") {
    SECTION("identity returns the rhs") {
        SymMatrix<Rational> id = SymMatrix<Rational>::identity(3);
        Vec b = rvec({4, -2, 9});
        REQUIRE(spd_solve(id, b) == b);
    }
    SECTION("worked 2x2") {
        SymMatrix<Rational> a(2);
        a.set(0, 0, Rational(1));
        a.set(0, 1, Rational(1));
        a.set(1, 1, Rational(2));
        Vec t = spd_solve(a, rvec({1, 1}));
        REQUIRE(t == rvec({1, 0}));
    }
    SECTION("residual is exactly zero on random SPD systems") {
        Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            SymMatrix<Rational> a = testing::random_spd(rng, 4);
            Vec b = testing::random_int_vector(rng, 4);
            Vec t = spd_solve(a, b);
            std::vector<Rational> at = mat_vec(a, std::span<const Rational>(t));
            REQUIRE(at == b);
        }
    }
    SECTION("singular matrix raises") {
        SymMatrix<Rational> s(2);
        s.set(0, 0, Rational(1));
        s.set(0, 1, Rational(1));
        s.set(1, 1, Rational(1));
        REQUIRE_THROWS_AS(spd_solve(s, rvec({1, 1})), SingularityError);
    }
}

TEST_CASE("det_rank1_update", "[determinant]") {
    SECTION("identity plus e1 e1^T") {
        SymMatrix<Rational> id = SymMatrix<Rational>::identity(2);
        REQUIRE(det_rank1_update(Rational(1), id, rvec({1, 0})) == 2);
    }
    SECTION("zero update leaves the determinant") {
        SymMatrix<Rational> id = SymMatrix<Rational>::identity(2);
        REQUIRE(det_rank1_update(Rational(1), id, rvec({0, 0})) == 1);
    }
    SECTION("matches the batch determinant") {
        Rng rng(19);
        for (int trial = 0; trial < 20; ++trial) {
            SymMatrix<Rational> a = testing::random_spd(rng, 5);
            Vec c = testing::random_int_vector(rng, 5, -5, 5);
            Rational det_a = determinant(a);
            Rational updated = det_rank1_update(det_a, a, c);

            SymMatrix<Rational> b = a;
            b.rank1_add(std::span<const Rational>(c));
            REQUIRE(updated == determinant(b));
        }
    }
    SECTION("float path stays within relative 1e-10") {
        Rng rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            SymMatrix<Rational> exact = testing::random_spd(rng, 5);
            SymMatrix<double> a(5);
            std::vector<double> c(5);
            for (std::size_t i = 0; i < 5; ++i) {
                c[i] = static_cast<double>(rng.uniform_int(-5, 5));
                for (std::size_t j = 0; j <= i; ++j)
                    a.set(i, j, exact(i, j).convert_to<double>());
            }
            double updated = det_rank1_update(determinant(a), a, c);
            SymMatrix<double> b = a;
            b.rank1_add(std::span<const double>(c));
            REQUIRE(approx_equal(updated, determinant(b), Tolerance{1e-10, 1e-12}));
        }
    }
    SECTION("singular base raises") {
        SymMatrix<Rational> z(2);
        REQUIRE_THROWS_AS(det_rank1_update(Rational(0), z, rvec({1, 0})),
                          SingularityError);
    }
}
