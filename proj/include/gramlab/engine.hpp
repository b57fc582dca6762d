#ifndef GRAMLAB_ENGINE_HPP
#define GRAMLAB_ENGINE_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gramlab/determinant.hpp"
#include "gramlab/family.hpp"
#include "gramlab/matrix.hpp"
#include "gramlab/rng.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

struct EngineOptions {
    /// Full recomputation cadence for the incrementally maintained
    /// determinant/factorization.
    std::size_t anchor_interval = 64;
    Tolerance tol{};
};

/// A symmetric matrix growing by rank-1 updates, with its determinant
/// maintained by the matrix determinant lemma. The exact backend keeps the
/// inverse current via Sherman-Morrison; the float backend keeps a
/// Cholesky factor current via the classic rank-1 update. Both re-anchor
/// with a batch recomputation every `anchor_interval` steps.
template <class S>
class IncrementalGram {
public:
    IncrementalGram(SymMatrix<S> initial, const EngineOptions& opts)
        : matrix_(std::move(initial)), opts_(opts) {
        refresh();
    }

    const SymMatrix<S>& matrix() const { return matrix_; }
    const S& det() const { return det_; }

    void rank1_update(std::span<const S> c) {
        matrix_.rank1_add(c);
        if constexpr (scalar_traits<S>::is_exact) {
            if (inverse_) {
                std::vector<S> u = mat_vec(*inverse_, c);
                S growth = S(1) + inner_product(std::span<const S>(u), c);
                if (growth == S(0)) {
                    // unreachable for PSD updates of a PD matrix
                    refresh();
                    return;
                }
                det_ *= growth;
                for (std::size_t i = 0; i < inverse_->order(); ++i)
                    for (std::size_t j = 0; j <= i; ++j)
                        inverse_->set(i, j, (*inverse_)(i, j) - u[i] * u[j] / growth);
                tick();
                return;
            }
        } else {
            if (chol_) {
                std::vector<double> x(c.begin(), c.end());
                if (chol_->update(std::move(x))) {
                    det_ = chol_->det();
                    tick();
                    return;
                }
            }
        }
        refresh();
    }

    void rank1_update(const std::vector<S>& c) {
        rank1_update(std::span<const S>(c));
    }

private:
    void tick() {
        if (++steps_since_anchor_ >= opts_.anchor_interval) refresh();
    }

    /// Batch determinant plus a fresh factorization when nonsingular.
    void refresh() {
        steps_since_anchor_ = 0;
        if constexpr (scalar_traits<S>::is_exact) {
            det_ = determinant(matrix_, opts_.tol);
            inverse_.reset();
            if (det_ != S(0)) inverse_ = spd_inverse(matrix_, opts_.tol);
        } else {
            chol_ = CholeskyFactor::factor(matrix_, opts_.tol);
            det_ = chol_ ? chol_->det() : determinant(matrix_, opts_.tol);
        }
    }

    SymMatrix<S> matrix_;
    EngineOptions opts_;
    S det_{};
    std::size_t steps_since_anchor_ = 0;
    std::optional<SymMatrix<S>> inverse_;           // exact backend
    std::optional<CholeskyFactor> chol_;            // float backend
};

/// The growing projection window: the bordered Gram matrix of all rows at
/// the current n, together with the reduced Gram matrix obtained by
/// dropping row `drop_index`, both advanced one column at a time.
/// `shifted` seeds both matrices with the identity, tracking the
/// det(I + Gram) quotients instead.
template <class S>
class GramState {
public:
    GramState(std::size_t row_count, std::size_t drop_index, bool shifted = false,
              const EngineOptions& opts = {})
        : rows_(row_count),
          drop_(drop_index),
          full_(shifted ? SymMatrix<S>::identity(row_count) : SymMatrix<S>(row_count),
                opts),
          reduced_(shifted ? SymMatrix<S>::identity(row_count - 1)
                           : SymMatrix<S>(row_count - 1),
                   opts),
          opts_(opts) {
        if (row_count < 2) throw InvalidInputError("need at least two rows");
        if (drop_index >= row_count) {
            throw IndexError("drop index " + std::to_string(drop_index) +
                             " out of range for " + std::to_string(row_count) + " rows");
        }
    }

    std::size_t n() const { return n_; }
    std::size_t rows() const { return rows_; }
    std::size_t drop_index() const { return drop_; }

    /// Bordered Gram matrix of all rows (plus the identity when shifted).
    const SymMatrix<S>& bordered() const { return full_.matrix(); }
    const SymMatrix<S>& reduced() const { return reduced_.matrix(); }
    const S& det_full() const { return full_.det(); }
    const S& det_reduced() const { return reduced_.det(); }

    /// Appends column n+1 of the family to the window.
    void advance(const VectorFamily<S>& family) {
        if (family.rows() != rows_) {
            throw DimensionError("family row count", family.rows(), rows_);
        }
        std::vector<S> c = family.column(n_ + 1);
        std::vector<S> c_reduced;
        c_reduced.reserve(rows_ - 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != drop_) c_reduced.push_back(c[r]);
        }
        full_.rank1_update(c);
        reduced_.rank1_update(c_reduced);
        ++n_;
    }

    /// Coefficients projecting the dropped row onto the remaining rows at
    /// the current n (solves the reduced normal equations).
    std::vector<S> minimizer() const {
        std::vector<S> b;
        b.reserve(rows_ - 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != drop_) b.push_back(full_.matrix()(r, drop_));
        }
        return spd_solve(reduced_.matrix(), b, opts_.tol);
    }

private:
    std::size_t rows_;
    std::size_t drop_;
    IncrementalGram<S> full_;
    IncrementalGram<S> reduced_;
    EngineOptions opts_;
    std::size_t n_ = 0;
};

template <class S>
struct SeriesEntry {
    std::size_t n;
    S value;
    std::optional<S> t0_norm_sq;
    double seconds = 0;  // since the start of the run; not serialized
};

template <class S>
struct RatioSeries {
    std::vector<SeriesEntry<S>> entries;
    std::vector<std::size_t> skipped;  // n with a vanishing denominator
    std::size_t drop_index = 0;
    bool shifted = false;
    std::string family_label;
};

namespace detail {

template <class S>
RatioSeries<S> run_series(const VectorFamily<S>& family, std::size_t n_max,
                          std::size_t drop_index, bool shifted,
                          const EngineOptions& opts) {
    const std::size_t m = family.m();
    if (drop_index > m) {
        throw IndexError("drop index " + std::to_string(drop_index) +
                         " out of range for m = " + std::to_string(m));
    }
    if (n_max < m + 1) {
        throw InvalidInputError("n_max must be at least m + 1");
    }

    RatioSeries<S> series;
    series.drop_index = drop_index;
    series.shifted = shifted;
    series.family_label = family.label();

    GramState<S> state(m + 1, drop_index, shifted, opts);
    auto start = std::chrono::steady_clock::now();
    for (std::size_t n = 1; n <= n_max; ++n) {
        state.advance(family);
        if (!shifted && n < m + 1) continue;
        if (scalar_traits<S>::is_zero(state.det_reduced(), opts.tol)) {
            series.skipped.push_back(n);
            continue;
        }
        SeriesEntry<S> entry;
        entry.n = n;
        entry.value = state.det_full() / state.det_reduced();
        if (!shifted) {
            std::vector<S> t0 = state.minimizer();
            entry.t0_norm_sq = inner_product(t0, t0);
        }
        entry.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        series.entries.push_back(std::move(entry));
    }

    if (series.entries.empty()) {
        throw DegenerateFamilyError(
            "the reduced Gram determinant vanished for every n; family '" +
            family.label() + "' has dependent rows");
    }
    return series;
}

}  // namespace detail

/// The ratio series R_n = Gram(all rows)^(n) / Gram(rows without
/// drop_index)^(n) for n = m+1 .. n_max. Entries with a vanishing
/// denominator are recorded in `skipped`, not emitted. For families whose
/// nontrivial row combinations escape l2 this series diverges; it is
/// nondecreasing in n for every family.
template <class S>
RatioSeries<S> ratio_series(const VectorFamily<S>& family, std::size_t n_max,
                            std::size_t drop_index = 0,
                            const EngineOptions& opts = {}) {
    return detail::run_series(family, n_max, drop_index, false, opts);
}

/// The det(I + Gram) quotient series of the same data. The denominator is
/// always at least 1, so every n from 1 to n_max is emitted.
template <class S>
RatioSeries<S> shifted_ratio_series(const VectorFamily<S>& family, std::size_t n_max,
                                    std::size_t drop_index = 0,
                                    const EngineOptions& opts = {}) {
    return detail::run_series(family, n_max, drop_index, true, opts);
}

template <class S>
struct BoundednessRow {
    std::size_t n = 0;
    bool singular_reduced = false;
    std::vector<S> t0;           // empty when singular_reduced
    S t0_norm_sq{};
    std::vector<S> observed_cs;  // Gram(rows without s)/Gram(rows without 0), s = 1..m
    RectMatrix<S> cofactors{1, 1};
    bool cauchy_schwarz_ok = true;
    bool envelope_ok = true;
};

template <class S>
struct BoundednessReport {
    std::vector<BoundednessRow<S>> rows;
    bool all_cauchy_schwarz_ok = true;
    bool all_envelope_ok = true;
    std::string family_label;
};

/// Tracks the minimizer diagnostics of the bordered Gram matrix B at each
/// sampled n: the signed cofactor table t_{rs}, the minimizer
/// t0 = (t_{0s}/t_{00})_s, the observed domination ratios
/// C_s = t_{ss}/t_{00}, and the two inequalities they satisfy whenever B
/// is positive semidefinite:
///   t_{rs}^2 <= t_{rr} t_{ss}  and  |t0|^2 <= sum_s C_s.
template <class S>
BoundednessReport<S> boundedness_report(const VectorFamily<S>& family,
                                        std::size_t n_max, std::size_t sample_every = 1,
                                        const EngineOptions& opts = {}) {
    const std::size_t m = family.m();
    if (m < 1) throw InvalidInputError("boundedness report needs m >= 1");
    if (n_max < m + 1) throw InvalidInputError("n_max must be at least m + 1");
    if (sample_every == 0) throw InvalidInputError("sample_every must be positive");

    BoundednessReport<S> report;
    report.family_label = family.label();

    GramState<S> state(m + 1, 0, false, opts);
    for (std::size_t n = 1; n <= n_max; ++n) {
        state.advance(family);
        if (n < m + 1) continue;
        if (n % sample_every != 0 && n != n_max) continue;

        const SymMatrix<S>& b = state.bordered();
        const std::size_t q = m + 1;
        BoundednessRow<S> row;
        row.n = n;
        row.cofactors = RectMatrix<S>(q, q);
        for (std::size_t r = 0; r < q; ++r) {
            for (std::size_t s = 0; s < q; ++s) {
                S c = cofactor(b, r, s);
                row.cofactors(r, s) = (r == s) ? c : -c;
            }
        }

        for (std::size_t r = 0; r < q; ++r) {
            for (std::size_t s = r + 1; s < q; ++s) {
                const S& trs = row.cofactors(r, s);
                bool ok = scalar_traits<S>::leq(
                    trs * trs, row.cofactors(r, r) * row.cofactors(s, s), opts.tol);
                row.cauchy_schwarz_ok = row.cauchy_schwarz_ok && ok;
            }
        }

        const S& t00 = row.cofactors(0, 0);
        if (scalar_traits<S>::is_zero(t00, opts.tol)) {
            row.singular_reduced = true;
            row.envelope_ok = true;  // nothing to check; the row is flagged
        } else {
            S envelope{};
            for (std::size_t s = 1; s < q; ++s) {
                row.t0.push_back(row.cofactors(0, s) / t00);
                row.observed_cs.push_back(row.cofactors(s, s) / t00);
                envelope += row.observed_cs.back();
            }
            row.t0_norm_sq = inner_product(row.t0, row.t0);
            row.envelope_ok = scalar_traits<S>::leq(row.t0_norm_sq, envelope, opts.tol);
        }

        report.all_cauchy_schwarz_ok =
            report.all_cauchy_schwarz_ok && row.cauchy_schwarz_ok;
        report.all_envelope_ok = report.all_envelope_ok && row.envelope_ok;
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct ProbeCheckpoint {
    std::size_t n;
    double partial_sum;
};

struct ProbeSample {
    std::string label;
    std::vector<double> coeffs;
    std::vector<ProbeCheckpoint> checkpoints;
    double growth_slope = 0;
    bool bounded = false;
};

struct ProbeReport {
    std::vector<ProbeSample> samples;
    std::size_t n_probe = 0;
    bool any_bounded = false;
};

namespace detail {

/// Near-null direction of a small PSD matrix, if one exists: runs LDL^T
/// and, at the first negligible pivot j, back-substitutes L^T x = e_j.
/// Only used to seed the escape probe.
inline std::optional<std::vector<double>> near_null_direction(
    const SymMatrix<double>& g) {
    const std::size_t n = g.order();
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(g(i, i)));
    const double floor = std::max(1e-10 * scale, 1e-300);

    RectMatrix<double> lower(n, n);
    std::vector<double> diag(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = g(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k) * diag[k];
        if (std::fabs(d) <= floor) {
            std::vector<double> x(n, 0.0);
            x[j] = 1.0;
            for (std::size_t i = j; i-- > 0;) {
                double acc = 0;
                for (std::size_t k = i + 1; k <= j; ++k) acc += lower(k, i) * x[k];
                x[i] = -acc;
            }
            double nrm = 0;
            for (double v : x) nrm += v * v;
            nrm = std::sqrt(nrm);
            for (double& v : x) v /= nrm;
            return x;
        }
        diag[j] = d;
        lower(j, j) = 1.0;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = g(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k) * diag[k];
            lower(i, j) = v / d;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Heuristic evidence for the escape hypothesis: for sampled unit
/// coefficient vectors "C" the partial sums sum_{k<=n} (sum_r C_r f_rk)^2
/// are reported at geometric checkpoints with a fitted log-log growth
/// slope. A direction whose partial sums stay flat is flagged; the first
/// probe is aimed at the most dependent-looking direction of the row Gram
/// matrix, and callers may append fixed directions of their own. Evidence
/// only, never a proof.
inline ProbeReport l2_escape_probe(
    const VectorFamily<double>& family, std::size_t coeff_samples, std::size_t n_probe,
    std::uint64_t seed,
    const std::vector<std::pair<std::string, std::vector<double>>>& extra_directions =
        {}) {
    if (coeff_samples < 1) throw InvalidInputError("coeff_samples must be >= 1");
    if (n_probe < 2) throw InvalidInputError("n_probe must be >= 2");
    const std::size_t rows = family.rows();

    ProbeReport report;
    report.n_probe = n_probe;

    std::vector<std::pair<std::string, std::vector<double>>> probes;
    {
        std::size_t n0 = std::min<std::size_t>(n_probe, 256);
        std::vector<std::vector<double>> projected(rows);
        for (std::size_t r = 0; r < rows; ++r) projected[r] = family.projection(r, n0);
        SymMatrix<double> g = gram_matrix(projected);
        if (auto dir = detail::near_null_direction(g)) {
            probes.emplace_back("min-direction", *dir);
        }
    }
    Rng rng(seed);
    for (std::size_t s = 0; s < coeff_samples; ++s) {
        std::vector<double> c(rows);
        double norm = 0;
        do {
            norm = 0;
            for (double& v : c) {
                v = rng.normal();
                norm += v * v;
            }
        } while (norm == 0);
        norm = std::sqrt(norm);
        for (double& v : c) v /= norm;
        probes.emplace_back("sample-" + std::to_string(s + 1), std::move(c));
    }
    for (const auto& extra : extra_directions) {
        if (extra.second.size() != rows) {
            throw DimensionError("probe direction length", extra.second.size(), rows);
        }
        probes.push_back(extra);
    }

    for (auto& [label, coeffs] : probes) {
        ProbeSample sample;
        sample.label = label;
        sample.coeffs = coeffs;

        // Compensated running sum; checkpoints at powers of two.
        double sum = 0, carry = 0;
        std::size_t next_checkpoint = 1;
        for (std::size_t k = 1; k <= n_probe; ++k) {
            double combo = 0;
            for (std::size_t r = 0; r < rows; ++r) combo += coeffs[r] * family.entry(r, k);
            double term = combo * combo - carry;
            double t = sum + term;
            carry = (t - sum) - term;
            sum = t;
            if (k == next_checkpoint || k == n_probe) {
                sample.checkpoints.push_back({k, sum});
                while (next_checkpoint <= k) next_checkpoint *= 2;
            }
        }

        // Log-log slope over the upper half of the checkpoints.
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = sample.checkpoints.size() / 2; i < sample.checkpoints.size();
             ++i) {
            const auto& cp = sample.checkpoints[i];
            if (cp.partial_sum > 0) {
                pts.emplace_back(std::log(static_cast<double>(cp.n)),
                                 std::log(cp.partial_sum));
            }
        }
        if (pts.size() >= 2) {
            double mx = 0, my = 0;
            for (auto& [px, py] : pts) {
                mx += px;
                my += py;
            }
            mx /= pts.size();
            my /= pts.size();
            double sxy = 0, sxx = 0;
            for (auto& [px, py] : pts) {
                sxy += (px - mx) * (py - my);
                sxx += (px - mx) * (px - mx);
            }
            sample.growth_slope = sxx > 0 ? sxy / sxx : 0.0;
        }
        double final_sum = sample.checkpoints.back().partial_sum;
        sample.bounded = final_sum <= 1e-12 || sample.growth_slope < 0.05;

        report.any_bounded = report.any_bounded || sample.bounded;
        report.samples.push_back(std::move(sample));
    }
    return report;
}

}  // namespace gramlab

#endif
