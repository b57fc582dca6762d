#ifndef GRAMLAB_CHARPOLY_HPP
#define GRAMLAB_CHARPOLY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gramlab/determinant.hpp"
#include "gramlab/matrix.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

/// Hard cap on subset expansions (2^n terms).
inline constexpr std::size_t kSubsetExpansionCap = 20;

/// Per-coordinate weights lambda_k for det(diag(lambda) + C) and friends.
/// The inverse and quadratic-form operations require all weights positive.
template <class S>
struct LambdaWeights {
    std::vector<S> values;

    std::size_t size() const { return values.size(); }

    S product() const {
        S p(1);
        for (const S& v : values) p *= v;
        return p;
    }

    S product_over(const SubsetIndex& idx) const {
        S p(1);
        for (std::size_t i : idx) p *= values[i];
        return p;
    }

    void require_positive() const {
        for (const S& v : values) {
            if (!(v > S(0))) {
                throw InvalidInputError("lambda weights must all be positive");
            }
        }
    }
};

namespace detail {

inline void check_subset_cap(std::size_t order) {
    if (order > kSubsetExpansionCap) throw CapacityError(order, kSubsetExpansionCap);
}

/// Visits every subset of {0..n-1} as a bitmask, ascending.
template <class F>
void for_each_subset_mask(std::size_t n, F&& f) {
    const std::uint32_t end = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < end; ++mask) f(mask);
}

template <class S>
RectMatrix<S> add_diag(const RectMatrix<S>& c, const LambdaWeights<S>& lambda) {
    if (c.rows() != lambda.size()) {
        throw DimensionError("lambda length vs matrix order", lambda.size(), c.rows());
    }
    RectMatrix<S> m = c;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = m(i, i) + lambda.values[i];
    return m;
}

template <class S>
SymMatrix<S> add_diag(const SymMatrix<S>& c, const LambdaWeights<S>& lambda) {
    if (c.order() != lambda.size()) {
        throw DimensionError("lambda length vs matrix order", lambda.size(), c.order());
    }
    SymMatrix<S> m = c;
    for (std::size_t i = 0; i < m.order(); ++i) m.set(i, i, m(i, i) + lambda.values[i]);
    return m;
}

/// First-order cofactor matrix of a square matrix: entry (i, j) is
/// (-1)^{i+j} times the minor with row i and column j removed.
template <class S>
RectMatrix<S> cofactor_matrix(const RectMatrix<S>& m) {
    RectMatrix<S> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = cofactor(m, i, j);
    return out;
}

}  // namespace detail

/// det(diag(lambda) + C) evaluated directly.
template <class S>
S gen_charpoly_direct(const RectMatrix<S>& c, const LambdaWeights<S>& lambda) {
    if (!c.is_square()) {
        throw DimensionError("gen_charpoly needs a square matrix", c.cols(), c.rows());
    }
    return determinant(detail::add_diag(c, lambda));
}

template <class S>
S gen_charpoly_direct(const SymMatrix<S>& c, const LambdaWeights<S>& lambda) {
    return determinant(detail::add_diag(c, lambda));
}

/// det(diag(lambda) + C) as the subset expansion
/// sum over alpha of lambda_alpha * det(C restricted to the complement).
/// Agrees with gen_charpoly_direct; 2^n terms, capped.
template <class S>
S gen_charpoly_subset(const RectMatrix<S>& c, const LambdaWeights<S>& lambda) {
    if (!c.is_square()) {
        throw DimensionError("gen_charpoly needs a square matrix", c.cols(), c.rows());
    }
    const std::size_t n = c.rows();
    if (n != lambda.size()) {
        throw DimensionError("lambda length vs matrix order", lambda.size(), n);
    }
    detail::check_subset_cap(n);
    S total{};
    detail::for_each_subset_mask(n, [&](std::uint32_t mask) {
        SubsetIndex alpha = SubsetIndex::from_mask(mask, n);
        S term = lambda.product_over(alpha) *
                 principal_minor(c, alpha.complement(n));
        total += term;
    });
    return total;
}

template <class S>
S gen_charpoly_subset(const SymMatrix<S>& c, const LambdaWeights<S>& lambda) {
    return gen_charpoly_subset(c.to_rect(), lambda);
}

/// Explicit inverse of diag(lambda) + C assembled from the cofactor
/// matrices of all principal submatrices, scaled by prod(lambda)/P_C(lambda).
/// Requires positive lambda (then diag(lambda) + C is nonsingular for any
/// positive semidefinite C).
template <class S>
RectMatrix<S> inverse_lambda(const SymMatrix<S>& c, const LambdaWeights<S>& lambda) {
    const std::size_t n = c.order();
    if (n != lambda.size()) {
        throw DimensionError("lambda length vs matrix order", lambda.size(), n);
    }
    lambda.require_positive();
    detail::check_subset_cap(n);

    RectMatrix<S> acc(n, n);
    detail::for_each_subset_mask(n, [&](std::uint32_t mask) {
        if (mask == 0) return;
        SubsetIndex alpha = SubsetIndex::from_mask(mask, n);
        RectMatrix<S> sub = c.to_rect().select(alpha, alpha);
        RectMatrix<S> cof = detail::cofactor_matrix(sub);
        S weight = S(1) / lambda.product_over(alpha);
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (std::size_t j = 0; j < alpha.size(); ++j)
                acc(alpha[i], alpha[j]) = acc(alpha[i], alpha[j]) + cof(i, j) * weight;
    });

    S scale = lambda.product() / gen_charpoly_direct(c, lambda);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc(i, j) = acc(i, j) * scale;
    return acc;
}

/// ((diag(lambda) + C)^{-1} a, a) by the subset expansion, cross-checked
/// against the direct solve.
template <class S>
S quadform_lambda(const SymMatrix<S>& c, const LambdaWeights<S>& lambda,
                  const std::vector<S>& a, const Tolerance& tol = {}) {
    const std::size_t n = c.order();
    if (a.size() != n) throw DimensionError("quadform vector length", a.size(), n);
    if (n != lambda.size()) {
        throw DimensionError("lambda length vs matrix order", lambda.size(), n);
    }
    lambda.require_positive();
    detail::check_subset_cap(n);

    S acc{};
    detail::for_each_subset_mask(n, [&](std::uint32_t mask) {
        if (mask == 0) return;
        SubsetIndex alpha = SubsetIndex::from_mask(mask, n);
        RectMatrix<S> sub = c.to_rect().select(alpha, alpha);
        RectMatrix<S> cof = detail::cofactor_matrix(sub);
        S quad{};
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (std::size_t j = 0; j < alpha.size(); ++j)
                quad += cof(i, j) * a[alpha[i]] * a[alpha[j]];
        acc += quad / lambda.product_over(alpha);
    });
    S value = acc * lambda.product() / gen_charpoly_direct(c, lambda);

    std::vector<S> x = spd_solve(detail::add_diag(c, lambda), a, tol);
    S direct = inner_product(x, a);
    if (!scalar_traits<S>::equal(value, direct, tol)) {
        throw IdentityMismatchError("quadform subset expansion disagrees with direct solve");
    }
    return value;
}

/// The vectors y_1..y_m feeding the shifted Gram ratio. Either given
/// directly or built from a coefficient matrix A and positive weights as
/// y_r[k] = a_{rk} / sqrt(lambda_k). Under the exact backend the weights
/// must be perfect squares of rationals.
template <class S>
struct DeltaRatioInput {
    std::vector<std::vector<S>> y;

    static DeltaRatioInput from_vectors(std::vector<std::vector<S>> vectors) {
        if (vectors.empty()) {
            throw InvalidInputError("delta ratio needs at least one vector");
        }
        for (const auto& v : vectors) {
            if (v.size() != vectors[0].size()) {
                throw DimensionError("delta ratio vector length mismatch", v.size(),
                                     vectors[0].size());
            }
        }
        return DeltaRatioInput{std::move(vectors)};
    }

    static DeltaRatioInput from_matrix_lambda(const RectMatrix<S>& a,
                                              const LambdaWeights<S>& lambda) {
        if (a.cols() != lambda.size()) {
            throw DimensionError("lambda length vs matrix columns", lambda.size(),
                                 a.cols());
        }
        lambda.require_positive();
        std::vector<S> roots(lambda.size());
        for (std::size_t k = 0; k < lambda.size(); ++k) {
            if constexpr (scalar_traits<S>::is_exact) {
                auto r = exact_sqrt(lambda.values[k]);
                if (!r) {
                    throw InvalidInputError(
                        "exact mode requires lambda weights that are perfect squares");
                }
                roots[k] = *r;
            } else {
                roots[k] = std::sqrt(lambda.values[k]);
            }
        }
        std::vector<std::vector<S>> vectors(a.rows(), std::vector<S>(a.cols()));
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t k = 0; k < a.cols(); ++k)
                vectors[r][k] = a(r, k) / roots[k];
        return DeltaRatioInput{std::move(vectors)};
    }
};

/// Delta(y_1..y_m) = det(I_m + gram(y_1..y_m)) / det(I_{m-1} + gram(y_2..y_m)) - 1.
/// For m = 1 the denominator is the empty determinant 1. The denominator
/// never vanishes (a shifted Gram determinant is at least 1).
template <class S>
S delta_ratio(const DeltaRatioInput<S>& input) {
    const std::size_t m = input.y.size();
    SymMatrix<S> full = gram_matrix(input.y);
    for (std::size_t i = 0; i < m; ++i) full.set(i, i, full(i, i) + S(1));
    S numerator = determinant(full);

    S denominator(1);
    if (m > 1) {
        std::vector<std::vector<S>> tail(input.y.begin() + 1, input.y.end());
        SymMatrix<S> reduced = gram_matrix(tail);
        for (std::size_t i = 0; i + 1 < m; ++i) reduced.set(i, i, reduced(i, i) + S(1));
        denominator = determinant(reduced);
    }
    return numerator / denominator - S(1);
}

template <class S>
struct IdentityCheck {
    S lhs;
    S rhs;
    bool equal;
};

/// Checks ((diag(lambda) + C)^{-1} a, a) = Delta(y_1..y_m) where C is the
/// Gram matrix of the columns of rows 2..m of A, a is the first row, and
/// y_r[k] = a_{rk} / sqrt(lambda_k).
template <class S>
IdentityCheck<S> delta_identity_check(const RectMatrix<S>& a,
                                      const LambdaWeights<S>& lambda,
                                      const Tolerance& tol = {}) {
    if (a.rows() < 2) {
        throw InvalidInputError("delta identity needs at least two rows");
    }
    const std::size_t n = a.cols();
    if (n != lambda.size()) {
        throw DimensionError("lambda length vs matrix columns", lambda.size(), n);
    }

    // Columns of the rows below the first span the g_k vectors.
    std::vector<std::vector<S>> g(n, std::vector<S>(a.rows() - 1));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 1; r < a.rows(); ++r) g[k][r - 1] = a(r, k);
    SymMatrix<S> c = gram_matrix(g);

    std::vector<S> first_row(a.row(0).begin(), a.row(0).end());
    S lhs = quadform_lambda(c, lambda, first_row, tol);
    S rhs = delta_ratio(DeltaRatioInput<S>::from_matrix_lambda(a, lambda));
    return IdentityCheck<S>{lhs, rhs, scalar_traits<S>::equal(lhs, rhs, tol)};
}

/// Evaluates det(diag(lambda) + gram(columns of X)) three ways: directly,
/// as the Gram-determinant subset sum, and as the squared-minor subset
/// sum. Throws IdentityMismatchError unless all three agree; returns the
/// common value.
template <class S>
S gram_charpoly_expansion(const RectMatrix<S>& x, const LambdaWeights<S>& lambda,
                          const Tolerance& tol = {}) {
    const std::size_t n = x.cols();
    const std::size_t m = x.rows();
    if (n != lambda.size()) {
        throw DimensionError("lambda length vs matrix columns", lambda.size(), n);
    }
    lambda.require_positive();
    detail::check_subset_cap(n);
    detail::check_subset_cap(m);

    SymMatrix<S> c = gram_of_columns(x);
    S direct = gen_charpoly_direct(c, lambda);

    // Route 2: prod(lambda) * sum over column subsets of Gram(x_alpha)/lambda_alpha.
    S gram_sum{};
    detail::for_each_subset_mask(n, [&](std::uint32_t mask) {
        SubsetIndex alpha = SubsetIndex::from_mask(mask, n);
        S gamma = alpha.empty()
                      ? S(1)
                      : determinant(gram_of_columns(x.select(SubsetIndex::full(m), alpha)));
        gram_sum += gamma / lambda.product_over(alpha);
    });
    gram_sum *= lambda.product();

    // Route 3: replace each Gram determinant by its squared-minor sum.
    S minor_sum{};
    detail::for_each_subset_mask(n, [&](std::uint32_t mask) {
        SubsetIndex alpha = SubsetIndex::from_mask(mask, n);
        S total{};
        if (alpha.empty()) {
            total = S(1);
        } else if (alpha.size() <= m) {
            detail::for_each_subset_mask(m, [&](std::uint32_t row_mask) {
                SubsetIndex beta = SubsetIndex::from_mask(row_mask, m);
                if (beta.size() != alpha.size()) return;
                S minor = determinant(x.select(beta, alpha));
                total += minor * minor;
            });
        }
        minor_sum += total / lambda.product_over(alpha);
    });
    minor_sum *= lambda.product();

    if (!scalar_traits<S>::equal(direct, gram_sum, tol) ||
        !scalar_traits<S>::equal(direct, minor_sum, tol)) {
        throw IdentityMismatchError("charpoly expansions disagree");
    }
    return direct;
}

template <class S>
struct CauchyBinetResult {
    S gram_det;
    S minor_sum;
};

/// Gram determinant of the selected columns of X against the sum of
/// squared maximal minors on those columns. Subsets larger than the row
/// count yield (0, 0): the Gram matrix is rank-deficient and there are no
/// minors to sum.
template <class S>
CauchyBinetResult<S> cauchy_binet_check(const RectMatrix<S>& x, const SubsetIndex& cols) {
    cols.validate_for(x.cols());
    const std::size_t m = x.rows();
    const std::size_t r = cols.size();
    detail::check_subset_cap(m);

    S gram_det = cols.empty()
                     ? S(1)
                     : determinant(gram_of_columns(x.select(SubsetIndex::full(m), cols)));

    S minor_sum{};
    if (r == 0) {
        minor_sum = S(1);
    } else if (r <= m) {
        detail::for_each_subset_mask(m, [&](std::uint32_t row_mask) {
            SubsetIndex beta = SubsetIndex::from_mask(row_mask, m);
            if (beta.size() != r) return;
            S minor = determinant(x.select(beta, cols));
            minor_sum += minor * minor;
        });
    }
    return CauchyBinetResult<S>{gram_det, minor_sum};
}

template <class S>
struct TransposeDetResult {
    S det_gram_cols;
    S det_gram_rows;
};

/// det(X^T X) against det(X X^T) for square X. (For rectangular X the two
/// sides differ in general, so non-square input is rejected.)
template <class S>
TransposeDetResult<S> square_transpose_det_check(const RectMatrix<S>& x) {
    if (!x.is_square()) {
        throw InvalidInputError("square_transpose_det_check requires a square matrix");
    }
    return TransposeDetResult<S>{determinant(gram_of_columns(x)),
                                 determinant(gram_of_rows(x))};
}

}  // namespace gramlab

#endif
