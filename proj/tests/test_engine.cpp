#include <catch2/catch_amalgamated.hpp>

#include "gramlab/distance.hpp"
#include "gramlab/engine.hpp"
#include "support.hpp"

using namespace gramlab;
using gramlab::testing::rvec;
using Vec = std::vector<Rational>;

namespace {

/// Batch oracle: Gram determinants built from scratch at window n.
template <class S>
std::pair<S, S> batch_dets(const VectorFamily<S>& family, std::size_t n,
                           std::size_t drop, bool shifted) {
    std::vector<std::vector<S>> all;
    std::vector<std::vector<S>> kept;
    for (std::size_t r = 0; r < family.rows(); ++r) {
        all.push_back(family.projection(r, n));
        if (r != drop) kept.push_back(family.projection(r, n));
    }
    SymMatrix<S> full = gram_matrix(all);
    SymMatrix<S> reduced = gram_matrix(kept);
    if (shifted) {
        for (std::size_t i = 0; i < full.order(); ++i) full.set(i, i, full(i, i) + S(1));
        for (std::size_t i = 0; i < reduced.order(); ++i)
            reduced.set(i, i, reduced(i, i) + S(1));
    }
    return {determinant(full), determinant(reduced)};
}

VectorFamily<Rational> random_padded_family(Rng& rng, std::size_t m, std::size_t width) {
    std::vector<Vec> rows;
    for (std::size_t r = 0; r <= m; ++r)
        rows.push_back(testing::random_int_vector(rng, width, -4, 4));
    return VectorFamily<Rational>::padded_table(rows, PadRule::monomial, "random");
}

}  // namespace

TEST_CASE("GramState advance", "[engine]") {
    SECTION("zero columns leave the determinants unchanged") {
        std::vector<Vec> rows = {rvec({1, 2}), rvec({0, 1})};
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::padded_table(rows, PadRule::zero);
        GramState<Rational> state(2, 0);
        for (int k = 0; k < 2; ++k) state.advance(fam);
        Rational full = state.det_full();
        Rational reduced = state.det_reduced();
        for (int k = 0; k < 5; ++k) state.advance(fam);
        REQUIRE(state.det_full() == full);
        REQUIRE(state.det_reduced() == reduced);
    }
    SECTION("monomial m=1 at n=2 reproduces the hand Gram matrix") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(1);
        GramState<Rational> state(2, 0);
        state.advance(fam);
        state.advance(fam);
        REQUIRE(state.bordered()(0, 0) == 2);
        REQUIRE(state.bordered()(0, 1) == 3);
        REQUIRE(state.bordered()(1, 1) == 5);
        REQUIRE(state.det_full() == 1);
        REQUIRE(state.det_reduced() == 5);
    }
    SECTION("incremental equals batch on a random family") {
        Rng rng(307);
        VectorFamily<Rational> fam = random_padded_family(rng, 2, 6);
        GramState<Rational> state(3, 0);
        for (std::size_t n = 1; n <= 20; ++n) {
            state.advance(fam);
            auto [full, reduced] = batch_dets(fam, n, 0, false);
            REQUIRE(state.det_full() == full);
            REQUIRE(state.det_reduced() == reduced);
        }
    }
    SECTION("a plain table family runs out at its horizon") {
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::table({rvec({1, 2}), rvec({3, 4})});
        GramState<Rational> state(2, 0);
        state.advance(fam);
        state.advance(fam);
        REQUIRE_THROWS_AS(state.advance(fam), InvalidInputError);
    }
}

TEST_CASE("ratio_series values", "[engine]") {
    SECTION("duplicated row: every ratio is zero") {
        std::vector<Vec> rows = {rvec({1, 2, 3}), rvec({1, 2, 3})};
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::padded_table(rows, PadRule::cycle, "dup");
        RatioSeries<Rational> series = ratio_series(fam, 10);
        REQUIRE(series.entries.size() == 9);
        for (const auto& e : series.entries) REQUIRE(e.value == 0);
    }
    SECTION("monomial m=1: R_2 = 1/5 and the series is nondecreasing") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(1);
        RatioSeries<Rational> series = ratio_series(fam, 30);
        REQUIRE(series.entries.front().n == 2);
        REQUIRE(series.entries.front().value == Rational(1, 5));
        REQUIRE(series.entries.front().t0_norm_sq.has_value());
        REQUIRE(*series.entries.front().t0_norm_sq == Rational(9, 25));
        for (std::size_t i = 1; i < series.entries.size(); ++i) {
            REQUIRE(series.entries[i].value >= series.entries[i - 1].value);
        }
    }
    SECTION("monomial m=2, drop 0: strictly increasing, R_200 > R_20") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(2);
        RatioSeries<Rational> series = ratio_series(fam, 200);
        REQUIRE(series.entries.front().n == 3);
        Rational r20, r200;
        for (std::size_t i = 1; i < series.entries.size(); ++i) {
            REQUIRE(series.entries[i].value > series.entries[i - 1].value);
            if (series.entries[i].n == 20) r20 = series.entries[i].value;
            if (series.entries[i].n == 200) r200 = series.entries[i].value;
        }
        REQUIRE(r200 > r20);

        // spot-check against the batch oracle
        auto [full, reduced] = batch_dets(fam, 200, 0, false);
        REQUIRE(series.entries.back().value == full / reduced);
    }
    SECTION("every drop index matches its batch oracle") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(2);
        for (std::size_t drop = 0; drop <= 2; ++drop) {
            RatioSeries<Rational> series = ratio_series(fam, 40, drop);
            for (const auto& e : series.entries) {
                auto [full, reduced] = batch_dets(fam, e.n, drop, false);
                REQUIRE(e.value == full / reduced);
            }
            for (std::size_t i = 1; i < series.entries.size(); ++i) {
                REQUIRE(series.entries[i].value >= series.entries[i - 1].value);
            }
        }
    }
    SECTION("monomial growth rate: R_{4n} > 2 R_n") {
        for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
            VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(m);
            RatioSeries<Rational> series = ratio_series(fam, 200);
            auto value_at = [&](std::size_t n) {
                for (const auto& e : series.entries) {
                    if (e.n == n) return e.value;
                }
                FAIL("missing entry");
                return Rational(0);
            };
            for (std::size_t n : {std::size_t{10}, std::size_t{25}, std::size_t{50}}) {
                REQUIRE(value_at(4 * n) > 2 * value_at(n));
            }
        }
    }
    SECTION("degenerate family raises") {
        // rows 1 and 2 proportional: the reduced Gram determinant stays 0
        std::vector<Vec> rows = {rvec({1, 0, 0}), rvec({1, 2, 1}), rvec({2, 4, 2})};
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::padded_table(rows, PadRule::cycle, "deg");
        REQUIRE_THROWS_AS(ratio_series(fam, 12), DegenerateFamilyError);
    }
    SECTION("n_max below m+1 is invalid") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(2);
        REQUIRE_THROWS_AS(ratio_series(fam, 2), InvalidInputError);
    }
    SECTION("anchor cadence does not change exact results") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(2);
        EngineOptions every_step;
        every_step.anchor_interval = 1;
        EngineOptions rarely;
        rarely.anchor_interval = 1000;
        RatioSeries<Rational> a = ratio_series(fam, 50, 0, every_step);
        RatioSeries<Rational> b = ratio_series(fam, 50, 0, rarely);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            REQUIRE(a.entries[i].value == b.entries[i].value);
        }
    }
    SECTION("float engine tracks the exact engine") {
        RatioSeries<Rational> exact =
            ratio_series(VectorFamily<Rational>::monomial(1), 100);
        RatioSeries<double> approx = ratio_series(VectorFamily<double>::monomial(1), 100);
        REQUIRE(exact.entries.size() == approx.entries.size());
        for (std::size_t i = 0; i < exact.entries.size(); ++i) {
            REQUIRE(approx_equal(approx.entries[i].value,
                                 exact.entries[i].value.convert_to<double>(),
                                 Tolerance{1e-8, 1e-12}));
        }
    }
    SECTION("R_n is the quadratic form at the minimizer") {
        Rng rng(313);
        VectorFamily<Rational> fam = random_padded_family(rng, 2, 5);
        RatioSeries<Rational> series = ratio_series(fam, 25);
        GramState<Rational> state(3, 0);
        std::size_t next = 0;
        for (std::size_t n = 1; n <= 25; ++n) {
            state.advance(fam);
            if (next >= series.entries.size() || series.entries[next].n != n) continue;
            Vec f0 = fam.projection(0, n);
            std::vector<Vec> basis = {fam.projection(1, n), fam.projection(2, n)};
            QuadraticForm<Rational> q = QuadraticForm<Rational>::from_vectors(f0, basis);
            REQUIRE(eval_form(q, state.minimizer()) == series.entries[next].value);
            REQUIRE(distance_squared(f0, basis).d_squared == series.entries[next].value);
            ++next;
        }
        REQUIRE(next == series.entries.size());
    }
}

TEST_CASE("shifted_ratio_series", "[engine]") {
    SECTION("zero family: every ratio is one") {
        std::vector<Vec> rows = {rvec({0, 0}), rvec({0, 0})};
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::padded_table(rows, PadRule::zero, "zero");
        RatioSeries<Rational> series = shifted_ratio_series(fam, 8);
        REQUIRE(series.entries.size() == 8);
        for (const auto& e : series.entries) REQUIRE(e.value == 1);
    }
    SECTION("monomial m=1 at n=1 gives 3/2") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(1);
        RatioSeries<Rational> series = shifted_ratio_series(fam, 4);
        REQUIRE(series.entries.front().n == 1);
        REQUIRE(series.entries.front().value == Rational(3, 2));
    }
    SECTION("incremental equals batch at checkpoints") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(2);
        RatioSeries<Rational> series = shifted_ratio_series(fam, 100);
        for (std::size_t checkpoint : {std::size_t{10}, std::size_t{50}, std::size_t{100}}) {
            auto [full, reduced] = batch_dets(fam, checkpoint, 0, true);
            const auto& entry = series.entries[checkpoint - 1];
            REQUIRE(entry.n == checkpoint);
            REQUIRE(entry.value == full / reduced);
        }
    }
    SECTION("diverges for the monomial family") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(1);
        RatioSeries<Rational> series = shifted_ratio_series(fam, 200);
        REQUIRE(series.entries.back().value > 20 * series.entries.front().value);
    }
}

TEST_CASE("boundedness_report", "[engine]") {
    SECTION("monomial m=1: minimizer matches the scalar formula") {
        VectorFamily<Rational> fam = VectorFamily<Rational>::monomial(1);
        BoundednessReport<Rational> report = boundedness_report(fam, 12);
        REQUIRE(report.all_cauchy_schwarz_ok);
        REQUIRE(report.all_envelope_ok);
        const auto& first = report.rows.front();
        REQUIRE(first.n == 2);
        REQUIRE(first.t0 == Vec{Rational(3, 5)});
        REQUIRE(first.t0_norm_sq == Rational(9, 25));
        for (const auto& row : report.rows) {
            // t0 = (f1.f0)/(f1.f1) for m = 1
            std::vector<Rational> f0 = fam.projection(0, row.n);
            std::vector<Rational> f1 = fam.projection(1, row.n);
            REQUIRE(row.t0 == Vec{inner_product(f1, f0) / inner_product(f1, f1)});
        }
    }
    SECTION("orthogonal table family: fixed coefficients past the horizon") {
        std::vector<Vec> rows = {rvec({2, 3, 1}), rvec({1, 0, 0}), rvec({0, 1, 0})};
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::padded_table(rows, PadRule::zero, "orth");
        BoundednessReport<Rational> report = boundedness_report(fam, 9);
        for (const auto& row : report.rows) {
            REQUIRE(row.t0 == rvec({2, 3}));
        }
    }
    SECTION("random families pass both inequality checks") {
        Rng rng(311);
        for (int trial = 0; trial < 8; ++trial) {
            std::size_t m = 1 + rng.uniform_int(0, 2);
            VectorFamily<Rational> fam = random_padded_family(rng, m, 5);
            BoundednessReport<Rational> report = boundedness_report(fam, 24, 2);
            REQUIRE(report.all_cauchy_schwarz_ok);
            REQUIRE(report.all_envelope_ok);
        }
    }
    SECTION("a zero basis row is flagged singular and skipped, not fatal") {
        std::vector<Vec> rows = {rvec({1, 1}), rvec({0, 0})};
        VectorFamily<Rational> fam =
            VectorFamily<Rational>::padded_table(rows, PadRule::zero, "sing");
        BoundednessReport<Rational> report = boundedness_report(fam, 6);
        REQUIRE(!report.rows.empty());
        for (const auto& row : report.rows) {
            REQUIRE(row.singular_reduced);
            REQUIRE(row.t0.empty());
        }
        REQUIRE(report.all_cauchy_schwarz_ok);
    }
}

TEST_CASE("l2_escape_probe", "[engine]") {
    SECTION("monomial closed-form partial sums") {
        VectorFamily<double> fam = VectorFamily<double>::monomial(1);
        ProbeReport report = l2_escape_probe(fam, 1, 1024, 5,
                                             {{"row0", {1.0, 0.0}}, {"row1", {0.0, 1.0}}});
        const ProbeSample* row0 = nullptr;
        const ProbeSample* row1 = nullptr;
        for (const auto& s : report.samples) {
            if (s.label == "row0") row0 = &s;
            if (s.label == "row1") row1 = &s;
        }
        REQUIRE(row0 != nullptr);
        REQUIRE(row1 != nullptr);
        for (const auto& cp : row0->checkpoints) {
            REQUIRE(cp.partial_sum == static_cast<double>(cp.n));
        }
        for (const auto& cp : row1->checkpoints) {
            double n = static_cast<double>(cp.n);
            REQUIRE(approx_equal(cp.partial_sum, n * (n + 1) * (2 * n + 1) / 6,
                                 Tolerance{1e-12, 0}));
        }
        REQUIRE(approx_equal(row0->growth_slope, 1.0, Tolerance{0.05, 0}));
        REQUIRE(approx_equal(row1->growth_slope, 3.0, Tolerance{0.05, 0}));
        REQUIRE(!row0->bounded);
        REQUIRE(!row1->bounded);
    }
    SECTION("a dependent combination is flagged") {
        std::vector<std::vector<double>> rows = {{1, 2, 3}, {1, 2, 3}};
        VectorFamily<double> fam =
            VectorFamily<double>::padded_table(rows, PadRule::cycle, "dup");
        ProbeReport report = l2_escape_probe(fam, 4, 512, 11);
        REQUIRE(report.any_bounded);
        REQUIRE(report.samples.front().label == "min-direction");
        REQUIRE(report.samples.front().bounded);
    }
    SECTION("an independent family is not flagged") {
        VectorFamily<double> fam = VectorFamily<double>::monomial(2);
        ProbeReport report = l2_escape_probe(fam, 6, 1024, 17);
        REQUIRE(!report.any_bounded);
    }
}

TEST_CASE("log-power family", "[engine]") {
    SECTION("exact mode is rejected") {
        REQUIRE_THROWS_AS(VectorFamily<Rational>::log_power(1), InvalidInputError);
    }
    SECTION("float series is nondecreasing and grows") {
        VectorFamily<double> fam = VectorFamily<double>::log_power(1);
        RatioSeries<double> series = ratio_series(fam, 400);
        REQUIRE(series.entries.back().value >
                4 * series.entries.front().value);
    }
}
