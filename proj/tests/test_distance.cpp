#include <catch2/catch_amalgamated.hpp>

#include "gramlab/distance.hpp"
#include "support.hpp"

using namespace gramlab;
using gramlab::testing::rvec;
using Vec = std::vector<Rational>;

TEST_CASE("distance_squared fixed cases", "[distance]") {
    SECTION("orthogonal complement") {
        DistanceResult<Rational> d =
            distance_squared(rvec({0, 0, 1}), {rvec({1, 0, 0}), rvec({0, 1, 0})});
        REQUIRE(d.d_squared == 1);
        REQUIRE(d.minimizer == rvec({0, 0}));
    }
    SECTION("f0 inside the span") {
        DistanceResult<Rational> d =
            distance_squared(rvec({1, 1, 0}), {rvec({1, 1, 0}), rvec({0, 0, 1})});
        REQUIRE(d.d_squared == 0);
    }
    SECTION("one-dimensional projection") {
        DistanceResult<Rational> d = distance_squared(rvec({1, 1}), {rvec({1, 0})});
        REQUIRE(d.d_squared == 1);
        REQUIRE(d.minimizer == rvec({1}));
        REQUIRE(d.gram_full == 1);
        REQUIRE(d.gram_reduced == 1);
    }
    SECTION("dependent basis names the offending subset") {
        try {
            distance_squared(rvec({1, 0, 0}), {rvec({1, 1, 0}), rvec({2, 2, 0})});
            FAIL("expected SingularityError");
        } catch (const SingularityError& e) {
            REQUIRE(e.offending == std::vector<std::size_t>{0, 1});
        }
    }
}

TEST_CASE("gram ratio agrees with the normal equations", "[distance][property]") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 1 + rng.uniform_int(0, 4);
        std::size_t n = m + rng.uniform_int(0, static_cast<long long>(8 - m));
        std::vector<Vec> basis;
        do {
            basis.clear();
            for (std::size_t r = 0; r < m; ++r)
                basis.push_back(testing::random_int_vector(rng, n));
        } while (determinant(gram_matrix(basis)) == 0);
        Vec f0 = testing::random_int_vector(rng, n);

        DistanceResult<Rational> d = distance_squared(f0, basis);
        QuadraticForm<Rational> q = QuadraticForm<Rational>::from_vectors(f0, basis);

        REQUIRE(d.d_squared * d.gram_reduced == d.gram_full);
        REQUIRE(d.d_squared == q.c - inner_product(d.minimizer, q.b));

        // residual orthogonal to every basis vector
        Vec residual = f0;
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < n; ++j) residual[j] -= d.minimizer[k] * basis[k][j];
        for (const Vec& f : basis) REQUIRE(inner_product(f, residual) == 0);

        // the minimizer really minimizes
        for (int probe = 0; probe < 10; ++probe) {
            Vec t = testing::random_int_vector(rng, m, -6, 6);
            REQUIRE(eval_form(q, t) >= d.d_squared);
        }
    }
}

TEST_CASE("minimizer_cramer", "[distance]") {
    SECTION("orthonormal basis returns the inner products") {
        Vec f0 = rvec({3, 4, 5});
        std::vector<Vec> basis = {rvec({1, 0, 0}), rvec({0, 1, 0})};
        REQUIRE(minimizer_cramer(f0, basis) == rvec({3, 4}));
    }
    SECTION("m=1 worked example") {
        REQUIRE(minimizer_cramer(rvec({3, 4}), {rvec({1, 0})}) == rvec({3}));
    }
    SECTION("equals spd_solve on random instances up to m = 6") {
        Rng rng(103);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t m = 1 + rng.uniform_int(0, 5);
            std::size_t n = m + rng.uniform_int(0, 2);
            std::vector<Vec> basis;
            do {
                basis.clear();
                for (std::size_t r = 0; r < m; ++r)
                    basis.push_back(testing::random_int_vector(rng, n, -6, 6));
            } while (determinant(gram_matrix(basis)) == 0);
            Vec f0 = testing::random_int_vector(rng, n, -6, 6);

            QuadraticForm<Rational> q = QuadraticForm<Rational>::from_vectors(f0, basis);
            REQUIRE(minimizer_cramer(f0, basis) == spd_solve(q.a, q.b));
        }
    }
    SECTION("dependent basis raises") {
        REQUIRE_THROWS_AS(minimizer_cramer(rvec({1, 0}), {rvec({1, 1}), rvec({1, 1})}),
                          SingularityError);
    }
}

TEST_CASE("eval_form", "[distance]") {
    Vec f0 = rvec({2, -1, 3});
    std::vector<Vec> basis = {rvec({1, 1, 0}), rvec({0, 1, 1})};
    QuadraticForm<Rational> q = QuadraticForm<Rational>::from_vectors(f0, basis);

    SECTION("zero argument returns the constant term") {
        REQUIRE(eval_form(q, rvec({0, 0})) == q.c);
        REQUIRE(q.c == 14);
    }
    SECTION("minimizer attains the distance") {
        DistanceResult<Rational> d = distance_squared(f0, basis);
        REQUIRE(eval_form(q, d.minimizer) == d.d_squared);
    }
    SECTION("F(t) - F(t0) is the shifted quadratic") {
        DistanceResult<Rational> d = distance_squared(f0, basis);
        Rng rng(107);
        for (int probe = 0; probe < 20; ++probe) {
            Vec t = testing::random_int_vector(rng, 2, -5, 5);
            Vec shift(2);
            for (std::size_t k = 0; k < 2; ++k) shift[k] = t[k] - d.minimizer[k];
            std::vector<Rational> a_shift = mat_vec(q.a, std::span<const Rational>(shift));
            Rational expected = inner_product(a_shift, shift);
            REQUIRE(eval_form(q, t) - eval_form(q, d.minimizer) == expected);
        }
    }
    SECTION("dimension mismatch") {
        REQUIRE_THROWS_AS(eval_form(q, rvec({1})), DimensionError);
    }
}

namespace {

/// Dense grid search over the constraint plane; oracle for the diagonal
/// closed forms. Scans x_0 on a grid and fills the last coordinate from
/// the constraint (2-D cases only).
Rational grid_search_min_2d(const SymMatrix<Rational>& a, const Vec& b) {
    Rational best;
    bool first = true;
    const int steps = 400;
    for (int i = -steps; i <= steps; ++i) {
        Rational x0(i, 100);
        // solve x0 b0 + x1 b1 = 1 for x1
        if (b[1] == 0) continue;
        Rational x1 = (Rational(1) - x0 * b[0]) / b[1];
        Vec x = {x0, x1};
        std::vector<Rational> ax = mat_vec(a, std::span<const Rational>(x));
        Rational value = inner_product(ax, x);
        if (first || value < best) {
            best = value;
            first = false;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("constrained_min", "[distance]") {
    SECTION("identity with a unit direction") {
        SymMatrix<Rational> id = SymMatrix<Rational>::identity(3);
        ConstrainedMin<Rational> cm = constrained_min(id, rvec({1, 0, 0}));
        REQUIRE(cm.value == 1);
        REQUIRE(cm.argmin == rvec({1, 0, 0}));
    }
    SECTION("diagonal closed form, unit constraint: a=(1,2) gives 2/3") {
        SymMatrix<Rational> a(2);
        a.set(0, 0, Rational(1));
        a.set(1, 1, Rational(2));
        ConstrainedMin<Rational> cm = constrained_min(a, rvec({1, 1}));
        REQUIRE(cm.value == Rational(2, 3));
        // grid-search oracle brackets the same minimum
        Rational grid = grid_search_min_2d(a, rvec({1, 1}));
        REQUIRE(grid >= cm.value);
        REQUIRE(grid - cm.value < Rational(1, 100));
    }
    SECTION("diagonal closed form, general constraint: value 1/5, argmin (1/5, 2/5)") {
        SymMatrix<Rational> a = SymMatrix<Rational>::identity(2);
        ConstrainedMin<Rational> cm = constrained_min(a, rvec({1, 2}));
        REQUIRE(cm.value == Rational(1, 5));
        REQUIRE(cm.argmin == Vec{Rational(1, 5), Rational(2, 5)});
        Rational grid = grid_search_min_2d(a, rvec({1, 2}));
        REQUIRE(grid >= cm.value);
        REQUIRE(grid - cm.value < Rational(1, 100));
    }
    SECTION("value is a lower bound over random feasible points") {
        Rng rng(109);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t n = 1 + rng.uniform_int(0, 4);
            SymMatrix<Rational> a = testing::random_spd(rng, n);
            Vec b = testing::random_int_vector(rng, n, -5, 5);
            bool zero = true;
            for (const auto& v : b) zero = zero && v == 0;
            if (zero) b[0] = 1;

            ConstrainedMin<Rational> cm = constrained_min(a, b);
            REQUIRE(inner_product(cm.argmin, b) == 1);

            Rational bb = inner_product(b, b);
            for (int probe = 0; probe < 100; ++probe) {
                Vec z = testing::random_int_vector(rng, n, -4, 4);
                Rational shift = inner_product(z, b) / bb;
                Vec x = cm.argmin;
                for (std::size_t k = 0; k < n; ++k) x[k] += z[k] - shift * b[k];
                std::vector<Rational> ax = mat_vec(a, std::span<const Rational>(x));
                REQUIRE(inner_product(ax, x) >= cm.value);
            }
        }
    }
    SECTION("zero constraint vector is invalid") {
        SymMatrix<Rational> id = SymMatrix<Rational>::identity(2);
        REQUIRE_THROWS_AS(constrained_min(id, rvec({0, 0})), InvalidInputError);
    }
}
