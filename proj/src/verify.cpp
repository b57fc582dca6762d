#include "gramlab/verify.hpp"

#include <algorithm>
#include <chrono>

#include "gramlab/charpoly.hpp"
#include "gramlab/distance.hpp"
#include "gramlab/matrix.hpp"
#include "gramlab/rng.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {
namespace {

using Vec = std::vector<Rational>;

Vec random_int_vector(Rng& rng, std::size_t len, long long lo, long long hi) {
    Vec v(len);
    for (auto& x : v) x = Rational(rng.uniform_int(lo, hi));
    return v;
}

std::vector<Vec> random_int_vectors(Rng& rng, std::size_t count, std::size_t len,
                                    long long lo, long long hi) {
    std::vector<Vec> vs(count);
    for (auto& v : vs) v = random_int_vector(rng, len, lo, hi);
    return vs;
}

RectMatrix<Rational> random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                                       long long lo, long long hi) {
    RectMatrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(rng.uniform_int(lo, hi));
    return m;
}

/// Random integer SPD matrix: Y^T Y + I for a random square integer Y.
SymMatrix<Rational> random_spd(Rng& rng, std::size_t order, long long lo, long long hi) {
    RectMatrix<Rational> y = random_int_matrix(rng, order, order, lo, hi);
    SymMatrix<Rational> a = gram_of_columns(y);
    for (std::size_t i = 0; i < order; ++i) a.set(i, i, a(i, i) + Rational(1));
    return a;
}

/// Independent random integer basis (resamples until the Gram determinant
/// is nonzero; at these sizes a couple of draws suffice).
std::vector<Vec> random_basis(Rng& rng, std::size_t count, std::size_t len) {
    for (;;) {
        std::vector<Vec> basis = random_int_vectors(rng, count, len, -9, 9);
        if (determinant(gram_matrix(basis)) != Rational(0)) return basis;
    }
}

struct Tally {
    SuiteResult result;
    explicit Tally(std::string name) { result.name = std::move(name); }
    void check(bool ok) {
        ++result.checks;
        if (!ok) ++result.failures;
    }
};

SuiteResult suite_distance_ratio(const VerifyOptions& o) {
    Tally t("distance-gram-ratio");
    Rng rng(o.seed * 1000003 + 1);
    const std::size_t max_m = std::min<std::size_t>(5, o.max_order);
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t m = 1 + rng.uniform_int(0, static_cast<long long>(max_m) - 1);
        std::size_t n = m + rng.uniform_int(0, static_cast<long long>(8 - m));
        std::vector<Vec> basis = random_basis(rng, m, n);
        Vec f0 = random_int_vector(rng, n, -9, 9);

        DistanceResult<Rational> d = distance_squared(f0, basis);
        t.check(d.d_squared * d.gram_reduced == d.gram_full);

        QuadraticForm<Rational> q = QuadraticForm<Rational>::from_vectors(f0, basis);
        t.check(d.d_squared == q.c - inner_product(d.minimizer, q.b));
        t.check(d.d_squared == eval_form(q, d.minimizer));
    }
    return t.result;
}

SuiteResult suite_residual_orthogonality(const VerifyOptions& o) {
    Tally t("residual-orthogonality");
    Rng rng(o.seed * 1000003 + 2);
    const std::size_t max_m = std::min<std::size_t>(5, o.max_order);
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t m = 1 + rng.uniform_int(0, static_cast<long long>(max_m) - 1);
        std::size_t n = m + rng.uniform_int(0, static_cast<long long>(8 - m));
        std::vector<Vec> basis = random_basis(rng, m, n);
        Vec f0 = random_int_vector(rng, n, -9, 9);

        std::vector<Rational> t0 = distance_squared(f0, basis).minimizer;
        Vec residual = f0;
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < n; ++j) residual[j] -= t0[k] * basis[k][j];
        bool all_zero = true;
        for (const Vec& f : basis) {
            all_zero = all_zero && inner_product(f, residual) == Rational(0);
        }
        t.check(all_zero);
    }
    return t.result;
}

SuiteResult suite_cramer(const VerifyOptions& o) {
    Tally t("cramer-vs-solve");
    Rng rng(o.seed * 1000003 + 3);
    const std::size_t max_m = std::min<std::size_t>(6, o.max_order);
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t m = 1 + rng.uniform_int(0, static_cast<long long>(max_m) - 1);
        std::size_t n = m + rng.uniform_int(0, 3);
        std::vector<Vec> basis = random_basis(rng, m, n);
        Vec f0 = random_int_vector(rng, n, -9, 9);

        QuadraticForm<Rational> q = QuadraticForm<Rational>::from_vectors(f0, basis);
        t.check(minimizer_cramer(f0, basis) == spd_solve(q.a, q.b));
    }
    return t.result;
}

SuiteResult suite_charpoly_subset(const VerifyOptions& o) {
    Tally t("charpoly-subset");
    Rng rng(o.seed * 1000003 + 4);
    const std::size_t max_n = std::min<std::size_t>(8, o.max_order);
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t n = 1 + rng.uniform_int(0, static_cast<long long>(max_n) - 1);
        RectMatrix<Rational> c = random_int_matrix(rng, n, n, -5, 5);
        LambdaWeights<Rational> lambda{random_int_vector(rng, n, -3, 6)};
        t.check(gen_charpoly_subset(c, lambda) == gen_charpoly_direct(c, lambda));
    }
    return t.result;
}

SuiteResult suite_inverse_quadform(const VerifyOptions& o) {
    Tally t("lambda-inverse-quadform");
    Rng rng(o.seed * 1000003 + 5);
    const std::size_t max_n = std::min<std::size_t>(6, o.max_order);
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t n = 1 + rng.uniform_int(0, static_cast<long long>(max_n) - 1);
        RectMatrix<Rational> y = random_int_matrix(rng, n, n, -4, 4);
        SymMatrix<Rational> c = gram_of_columns(y);  // PSD, possibly singular
        LambdaWeights<Rational> lambda{random_int_vector(rng, n, 1, 9)};

        RectMatrix<Rational> inv = inverse_lambda(c, lambda);
        RectMatrix<Rational> shifted = c.to_rect();
        for (std::size_t k = 0; k < n; ++k)
            shifted(k, k) = shifted(k, k) + lambda.values[k];
        bool is_identity = true;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t s = 0; s < n; ++s) {
                Rational acc(0);
                for (std::size_t k = 0; k < n; ++k) acc += inv(r, k) * shifted(k, s);
                is_identity = is_identity && acc == Rational(r == s ? 1 : 0);
            }
        }
        t.check(is_identity);

        Vec a = random_int_vector(rng, n, -5, 5);
        Rational quad = quadform_lambda(c, lambda, a);  // cross-checks internally
        Vec x = spd_solve(detail::add_diag(c, lambda), a);
        t.check(quad == inner_product(x, a));
    }
    return t.result;
}

SuiteResult suite_delta_identity(const VerifyOptions& o) {
    Tally t("delta-identity");
    Rng rng(o.seed * 1000003 + 6);
    const std::size_t max_m = std::min<std::size_t>(4, std::max<std::size_t>(o.max_order, 2));
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t m = 2 + rng.uniform_int(0, static_cast<long long>(max_m) - 2);
        std::size_t n = 1 + rng.uniform_int(0, 5);
        RectMatrix<Rational> a = random_int_matrix(rng, m, n, -4, 4);
        LambdaWeights<Rational> lambda{Vec(n)};
        for (auto& l : lambda.values) {
            Rational root(rng.uniform_int(1, 3));
            l = root * root;
        }
        t.check(delta_identity_check(a, lambda).equal);
    }
    return t.result;
}

SuiteResult suite_cauchy_binet(const VerifyOptions& o) {
    Tally t("cauchy-binet");
    Rng rng(o.seed * 1000003 + 7);
    for (std::size_t i = 0; i < o.instances; ++i) {
        std::size_t m = 1 + rng.uniform_int(0, 3);
        std::size_t n = m + rng.uniform_int(0, static_cast<long long>(7 - m));
        RectMatrix<Rational> x = random_int_matrix(rng, m, n, -5, 5);

        std::size_t r = 1 + rng.uniform_int(0, static_cast<long long>(std::min(m, n)) - 1);
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
        for (std::size_t j = 0; j < r; ++j) {
            std::size_t pick = j + rng.uniform_int(0, static_cast<long long>(n - j) - 1);
            std::swap(cols[j], cols[pick]);
        }
        cols.resize(r);
        std::sort(cols.begin(), cols.end());

        auto res = cauchy_binet_check(x, SubsetIndex(cols));
        t.check(res.gram_det == res.minor_sum);
    }
    return t.result;
}

SuiteResult suite_constrained_min(const VerifyOptions& o) {
    Tally t("constrained-min");
    Rng rng(o.seed * 1000003 + 8);
    const std::size_t max_n = std::min<std::size_t>(6, o.max_order);
    for (std::size_t i = 0; i < o.min_instances; ++i) {
        std::size_t n = 1 + rng.uniform_int(0, static_cast<long long>(max_n) - 1);
        SymMatrix<Rational> a = random_spd(rng, n, -4, 4);
        Vec b = random_int_vector(rng, n, -5, 5);
        bool zero = true;
        for (const auto& v : b) zero = zero && v == 0;
        if (zero) b[0] = Rational(1);

        ConstrainedMin<Rational> cm = constrained_min(a, b);
        Rational bb = inner_product(b, b);

        // The closed-form value is a true lower bound over feasible probes.
        bool lower_bound = true;
        for (std::size_t p = 0; p < o.min_probes; ++p) {
            Vec z = random_int_vector(rng, n, -5, 5);
            Rational shift = inner_product(z, b) / bb;
            Vec x = cm.argmin;
            for (std::size_t k = 0; k < n; ++k) x[k] += z[k] - shift * b[k];
            std::vector<Rational> ax = mat_vec(a, std::span<const Rational>(x));
            lower_bound = lower_bound &&
                          inner_product(std::span<const Rational>(ax),
                                        std::span<const Rational>(x)) >= cm.value;
        }
        t.check(lower_bound);

        // Diagonal closed forms.
        SymMatrix<Rational> diag(n);
        Vec coeffs = random_int_vector(rng, n, 1, 9);
        for (std::size_t k = 0; k < n; ++k) diag.set(k, k, coeffs[k]);

        Vec ones(n, Rational(1));
        Rational harmonic(0);
        for (std::size_t k = 0; k < n; ++k) harmonic += Rational(1) / coeffs[k];
        t.check(constrained_min(diag, ones).value == Rational(1) / harmonic);

        ConstrainedMin<Rational> general = constrained_min(diag, b);
        Rational weighted(0);
        for (std::size_t k = 0; k < n; ++k) weighted += b[k] * b[k] / coeffs[k];
        bool general_ok = general.value == Rational(1) / weighted;
        for (std::size_t k = 0; k < n; ++k) {
            general_ok = general_ok &&
                         general.argmin[k] == (b[k] / coeffs[k]) / weighted;
        }
        t.check(general_ok);
    }
    return t.result;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    report.suites.push_back(suite_distance_ratio(options));
    report.suites.push_back(suite_residual_orthogonality(options));
    report.suites.push_back(suite_cramer(options));
    report.suites.push_back(suite_charpoly_subset(options));
    report.suites.push_back(suite_inverse_quadform(options));
    report.suites.push_back(suite_delta_identity(options));
    report.suites.push_back(suite_cauchy_binet(options));
    report.suites.push_back(suite_constrained_min(options));
    for (const SuiteResult& s : report.suites) {
        report.total_checks += s.checks;
        report.total_failures += s.failures;
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace gramlab
