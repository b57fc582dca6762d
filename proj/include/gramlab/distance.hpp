#ifndef GRAMLAB_DISTANCE_HPP
#define GRAMLAB_DISTANCE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gramlab/determinant.hpp"
#include "gramlab/matrix.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

/// F(t) = (A t, t) - 2 (t, b) + c, the squared distance from f0 to the
/// point sum_k t_k f_k when A, b, c come from genuine vectors
/// (A = Gram of the basis, b_k = (f_k, f0), c = (f0, f0)).
template <class S>
struct QuadraticForm {
    SymMatrix<S> a;
    std::vector<S> b;
    S c;

    static QuadraticForm from_vectors(const std::vector<S>& f0,
                                      const std::vector<std::vector<S>>& basis) {
        QuadraticForm q{gram_matrix(basis), {}, inner_product(f0, f0)};
        q.b.reserve(basis.size());
        for (const auto& f : basis) q.b.push_back(inner_product(f, f0));
        return q;
    }
};

template <class S>
S eval_form(const QuadraticForm<S>& f, std::span<const S> t) {
    if (t.size() != f.a.order()) {
        throw DimensionError("eval_form argument length", t.size(), f.a.order());
    }
    std::vector<S> at = mat_vec(f.a, t);
    return inner_product(std::span<const S>(at), t) -
           S(2) * inner_product(t, std::span<const S>(f.b)) + f.c;
}

template <class S>
S eval_form(const QuadraticForm<S>& f, const std::vector<S>& t) {
    return eval_form(f, std::span<const S>(t));
}

template <class S>
struct DistanceResult {
    S d_squared;
    std::vector<S> minimizer;
    /// Numerator and denominator of the Gram ratio, kept separately so a
    /// caller can reuse or cross-check them.
    S gram_full;
    S gram_reduced;
};

enum class CrossCheck { on, off };

namespace detail {

/// Leading principal minors of the basis Gram matrix locate the first
/// dependent prefix, so singularity errors can name a concrete subset.
template <class S>
std::vector<std::size_t> dependent_prefix(const SymMatrix<S>& a, const Tolerance& tol) {
    for (std::size_t k = 1; k <= a.order(); ++k) {
        std::vector<std::size_t> prefix(k);
        for (std::size_t i = 0; i < k; ++i) prefix[i] = i;
        S minor = principal_minor(a, SubsetIndex(prefix));
        if (scalar_traits<S>::is_zero(minor, tol)) return prefix;
    }
    return {};
}

}  // namespace detail

/// Squared distance from f0 to the span of the basis vectors, computed as
/// the ratio of two Gram determinants and (optionally cross-checked)
/// as (f0, f0) - (A^{-1} b, b). The minimizer solves A t = b.
template <class S>
DistanceResult<S> distance_squared(const std::vector<S>& f0,
                                   const std::vector<std::vector<S>>& basis,
                                   CrossCheck check = CrossCheck::on,
                                   const Tolerance& tol = {}) {
    QuadraticForm<S> q = QuadraticForm<S>::from_vectors(f0, basis);
    S gram_reduced = determinant(q.a, tol);
    if (scalar_traits<S>::is_zero(gram_reduced, tol)) {
        throw SingularityError("dependent basis in distance_squared",
                               detail::dependent_prefix(q.a, tol));
    }

    std::vector<std::vector<S>> bordered;
    bordered.reserve(basis.size() + 1);
    bordered.push_back(f0);
    for (const auto& f : basis) bordered.push_back(f);
    S gram_full = determinant(gram_matrix(bordered), tol);

    DistanceResult<S> result{gram_full / gram_reduced, spd_solve(q.a, q.b, tol),
                             gram_full, gram_reduced};

    if (check == CrossCheck::on) {
        S direct = q.c - inner_product(result.minimizer, q.b);
        if (!scalar_traits<S>::equal(result.d_squared, direct, tol)) {
            throw IdentityMismatchError(
                "Gram-ratio distance disagrees with the normal-equation value");
        }
    }
    return result;
}

/// Minimizer of ||f0 - sum t_k f_k||^2 assembled from cofactors of the
/// bordered Gram matrix: t_k = -A^0_k(B) / A^0_0(B). Agrees exactly with
/// spd_solve on the normal equations.
template <class S>
std::vector<S> minimizer_cramer(const std::vector<S>& f0,
                                const std::vector<std::vector<S>>& basis,
                                const Tolerance& tol = {}) {
    std::vector<std::vector<S>> bordered;
    bordered.reserve(basis.size() + 1);
    bordered.push_back(f0);
    for (const auto& f : basis) bordered.push_back(f);
    SymMatrix<S> b = gram_matrix(bordered);

    S a00 = cofactor(b, 0, 0);
    if (scalar_traits<S>::is_zero(a00, tol)) {
        throw SingularityError("singular basis Gram matrix in minimizer_cramer");
    }
    std::vector<S> t;
    t.reserve(basis.size());
    for (std::size_t k = 1; k <= basis.size(); ++k) {
        t.push_back(-cofactor(b, 0, k) / a00);
    }
    return t;
}

template <class S>
struct ConstrainedMin {
    S value;
    std::vector<S> argmin;
};

/// min (A x, x) subject to (x, b) = 1 for SPD A: the value is
/// (A^{-1} b, b)^{-1}, attained at A^{-1} b scaled to the constraint.
template <class S>
ConstrainedMin<S> constrained_min(const SymMatrix<S>& a, const std::vector<S>& b,
                                  const Tolerance& tol = {}) {
    bool all_zero = true;
    for (const S& v : b) all_zero = all_zero && scalar_traits<S>::is_zero(v, tol);
    if (b.empty() || all_zero) {
        throw InvalidInputError("constrained_min requires a nonzero constraint vector");
    }
    std::vector<S> y = spd_solve(a, b, tol);
    S q = inner_product(y, b);
    if (scalar_traits<S>::is_zero(q, tol)) {
        throw SingularityError("(A^{-1} b, b) vanished; A is not positive definite");
    }
    ConstrainedMin<S> out{S(1) / q, std::move(y)};
    for (S& v : out.argmin) v /= q;
    S feasibility = inner_product(out.argmin, b);
    if (!scalar_traits<S>::equal(feasibility, S(1), tol)) {
        throw IdentityMismatchError("constrained_min argmin violates (x, b) = 1");
    }
    return out;
}

}  // namespace gramlab

#endif
