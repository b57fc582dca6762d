#ifndef GRAMLAB_DETERMINANT_HPP
#define GRAMLAB_DETERMINANT_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gramlab/matrix.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

namespace detail {

/// Fraction-free Bareiss elimination with row pivoting. On integer input
/// every intermediate entry is an integer (a minor of the input), so Gram
/// determinants of integer families never leave the integers. Works over
/// any exact field.
template <class S>
S bareiss_determinant(RectMatrix<S> m) {
    const std::size_t n = m.rows();
    if (n == 0) return S(1);
    S sign(1);
    S prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == S(0)) {
            std::size_t pivot = k + 1;
            while (pivot < n && m(pivot, k) == S(0)) ++pivot;
            if (pivot == n) return S(0);
            for (std::size_t j = 0; j < n; ++j) {
                S tmp = m(k, j);
                m(k, j) = m(pivot, j);
                m(pivot, j) = tmp;
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = S(0);
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Partial-pivot LU determinant for the float backend.
inline double lu_determinant(RectMatrix<double> m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(m(i, k)) > std::fabs(m(pivot, k))) pivot = i;
        }
        if (m(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m(i, k) / m(k, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

}  // namespace detail

/// LDL^T factorization of a symmetric matrix (unit lower triangle L,
/// diagonal d). Valid whenever the leading principal minors are nonzero;
/// Gram matrices of independent vectors always qualify.
template <class S>
struct Ldlt {
    RectMatrix<S> lower;
    std::vector<S> diag;

    S det() const {
        S p(1);
        for (const S& d : diag) p *= d;
        return p;
    }

    std::vector<S> solve(std::span<const S> b) const {
        const std::size_t n = diag.size();
        if (b.size() != n) throw DimensionError("solve rhs length", b.size(), n);
        std::vector<S> x(b.begin(), b.end());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lower(i, j) * x[j];
        for (std::size_t i = 0; i < n; ++i) x[i] /= diag[i];
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lower(j, i) * x[j];
        return x;
    }
};

/// Factors A = L D L^T. Throws SingularityError on an exact zero pivot
/// (rational) or a pivot below the absolute floor (float).
template <class S>
Ldlt<S> ldlt_factor(const SymMatrix<S>& a, const Tolerance& tol = {}) {
    const std::size_t n = a.order();
    Ldlt<S> f{RectMatrix<S>(n, n), std::vector<S>(n, S{})};
    for (std::size_t j = 0; j < n; ++j) {
        S d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= f.lower(j, k) * f.lower(j, k) * f.diag[k];
        if (scalar_traits<S>::is_zero(d, tol)) {
            throw SingularityError("zero pivot in LDL^T at index " + std::to_string(j));
        }
        f.diag[j] = d;
        f.lower(j, j) = S(1);
        for (std::size_t i = j + 1; i < n; ++i) {
            S v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= f.lower(i, k) * f.lower(j, k) * f.diag[k];
            f.lower(i, j) = v / d;
        }
    }
    return f;
}

template <class S>
std::optional<Ldlt<S>> try_ldlt(const SymMatrix<S>& a, const Tolerance& tol = {}) {
    try {
        return ldlt_factor(a, tol);
    } catch (const SingularityError&) {
        return std::nullopt;
    }
}

/// Determinant of a square matrix: fraction-free Bareiss under the exact
/// backend, partial-pivot LU under the float backend. Singular input
/// yields 0, never an error.
template <class S>
S determinant(const RectMatrix<S>& m) {
    if (!m.is_square()) {
        throw DimensionError("determinant needs a square matrix", m.cols(), m.rows());
    }
    if constexpr (scalar_traits<S>::is_exact) {
        return detail::bareiss_determinant(m);
    } else {
        return detail::lu_determinant(m);
    }
}

/// Symmetric determinant. Float backend prefers LDL^T (positive pivots);
/// indefinite or near-singular input falls back to pivoted LU.
template <class S>
S determinant(const SymMatrix<S>& a, const Tolerance& tol = {}) {
    if constexpr (scalar_traits<S>::is_exact) {
        return detail::bareiss_determinant(a.to_rect());
    } else {
        if (auto f = try_ldlt(a, tol)) {
            bool positive = true;
            for (double d : f->diag) positive = positive && d > 0.0;
            if (positive) return f->det();
        }
        return detail::lu_determinant(a.to_rect());
    }
}

/// Signed cofactor (-1)^{r+s} det(M with row r and column s removed).
/// Indices are 0-based.
template <class S>
S cofactor(const RectMatrix<S>& m, std::size_t r, std::size_t s) {
    if (!m.is_square()) {
        throw DimensionError("cofactor needs a square matrix", m.cols(), m.rows());
    }
    if (r >= m.rows() || s >= m.cols()) throw IndexError("cofactor index out of range");
    S minor_det = determinant(m.deleting(r, s));
    return ((r + s) % 2 == 0) ? minor_det : -minor_det;
}

template <class S>
S cofactor(const SymMatrix<S>& m, std::size_t r, std::size_t s) {
    return cofactor(m.to_rect(), r, s);
}

/// Principal minor on the index subset. The empty subset gives 1.
template <class S>
S principal_minor(const RectMatrix<S>& m, const SubsetIndex& idx) {
    if (!m.is_square()) {
        throw DimensionError("principal minor needs a square matrix", m.cols(), m.rows());
    }
    idx.validate_for(m.rows());
    if (idx.empty()) return S(1);
    return determinant(m.select(idx, idx));
}

template <class S>
S principal_minor(const SymMatrix<S>& m, const SubsetIndex& idx) {
    idx.validate_for(m.order());
    if (idx.empty()) return S(1);
    return determinant(m.principal_submatrix(idx));
}

/// Solves A t = b for symmetric positive definite A via LDL^T. Exact under
/// the rational backend; throws SingularityError when a pivot vanishes.
template <class S>
std::vector<S> spd_solve(const SymMatrix<S>& a, std::span<const S> b,
                         const Tolerance& tol = {}) {
    if (b.size() != a.order()) {
        throw DimensionError("spd_solve rhs length", b.size(), a.order());
    }
    return ldlt_factor(a, tol).solve(b);
}

template <class S>
std::vector<S> spd_solve(const SymMatrix<S>& a, const std::vector<S>& b,
                         const Tolerance& tol = {}) {
    return spd_solve(a, std::span<const S>(b), tol);
}

template <class S>
SymMatrix<S> spd_inverse(const SymMatrix<S>& a, const Tolerance& tol = {}) {
    const std::size_t n = a.order();
    Ldlt<S> f = ldlt_factor(a, tol);
    SymMatrix<S> inv(n);
    std::vector<S> e(n, S{});
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = S(1);
        std::vector<S> col = f.solve(e);
        e[j] = S{};
        for (std::size_t i = j; i < n; ++i) inv.set(i, j, col[i]);
    }
    return inv;
}

/// Matrix determinant lemma: det(A + c c^T) = det(A) (1 + c^T A^{-1} c).
/// Requires nonsingular A; `det_a` must be its determinant.
template <class S>
S det_rank1_update(const S& det_a, const SymMatrix<S>& a, std::span<const S> c,
                   const Tolerance& tol = {}) {
    if (c.size() != a.order()) {
        throw DimensionError("det_rank1_update vector length", c.size(), a.order());
    }
    if (scalar_traits<S>::is_zero(det_a, tol)) {
        throw SingularityError("det_rank1_update requires nonsingular A");
    }
    std::vector<S> t = spd_solve(a, c, tol);
    return det_a * (S(1) + inner_product(std::span<const S>(t), c));
}

template <class S>
S det_rank1_update(const S& det_a, const SymMatrix<S>& a, const std::vector<S>& c,
                   const Tolerance& tol = {}) {
    return det_rank1_update(det_a, a, std::span<const S>(c), tol);
}

/// Plain Cholesky for the float engine path, with the classic rank-1
/// update so a growing Gram determinant can be tracked without
/// refactorizing each step.
class CholeskyFactor {
public:
    static std::optional<CholeskyFactor> factor(const SymMatrix<double>& a,
                                                const Tolerance& tol = {}) {
        const std::size_t n = a.order();
        CholeskyFactor c{RectMatrix<double>(n, n)};
        for (std::size_t j = 0; j < n; ++j) {
            double d = a(j, j);
            for (std::size_t k = 0; k < j; ++k) d -= c.lower_(j, k) * c.lower_(j, k);
            if (!(d > tol.abs)) return std::nullopt;
            double root = std::sqrt(d);
            c.lower_(j, j) = root;
            for (std::size_t i = j + 1; i < n; ++i) {
                double v = a(i, j);
                for (std::size_t k = 0; k < j; ++k) v -= c.lower_(i, k) * c.lower_(j, k);
                c.lower_(i, j) = v / root;
            }
        }
        return c;
    }

    /// L <- chol(L L^T + x x^T). Returns false on breakdown.
    bool update(std::vector<double> x) {
        const std::size_t n = lower_.rows();
        if (x.size() != n) throw DimensionError("cholesky update length", x.size(), n);
        for (std::size_t k = 0; k < n; ++k) {
            double lkk = lower_(k, k);
            double r = std::hypot(lkk, x[k]);
            if (!(r > 0.0) || !std::isfinite(r)) return false;
            double c = r / lkk;
            double s = x[k] / lkk;
            lower_(k, k) = r;
            for (std::size_t i = k + 1; i < n; ++i) {
                lower_(i, k) = (lower_(i, k) + s * x[i]) / c;
                x[i] = c * x[i] - s * lower_(i, k);
            }
        }
        return true;
    }

    double det() const {
        double p = 1.0;
        for (std::size_t i = 0; i < lower_.rows(); ++i) p *= lower_(i, i);
        return p * p;
    }

private:
    explicit CholeskyFactor(RectMatrix<double> lower) : lower_(std::move(lower)) {}
    RectMatrix<double> lower_;
};

}  // namespace gramlab

#endif
