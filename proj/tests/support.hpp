#ifndef GRAMLAB_TESTS_SUPPORT_HPP
#define GRAMLAB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <vector>

#include "gramlab/matrix.hpp"
#include "gramlab/rng.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab::testing {

using Vec = std::vector<Rational>;

inline Vec rvec(std::initializer_list<long long> xs) {
    Vec v;
    for (long long x : xs) v.emplace_back(x);
    return v;
}

inline Vec random_int_vector(Rng& rng, std::size_t len, long long lo = -9,
                             long long hi = 9) {
    Vec v(len);
    for (auto& x : v) x = Rational(rng.uniform_int(lo, hi));
    return v;
}

inline RectMatrix<Rational> random_int_matrix(Rng& rng, std::size_t rows,
                                              std::size_t cols, long long lo = -9,
                                              long long hi = 9) {
    RectMatrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = Rational(rng.uniform_int(lo, hi));
    return m;
}

/// Random integer SPD matrix (Gram of a random square matrix plus the
/// identity).
inline SymMatrix<Rational> random_spd(Rng& rng, std::size_t order, long long lo = -4,
                                      long long hi = 4) {
    RectMatrix<Rational> y = random_int_matrix(rng, order, order, lo, hi);
    SymMatrix<Rational> a = gram_of_columns(y);
    for (std::size_t i = 0; i < order; ++i) a.set(i, i, a(i, i) + Rational(1));
    return a;
}

/// Brute-force determinant by signed permutation expansion. Independent of
/// the elimination code; usable up to order ~6.
template <class S>
S permanent_style_determinant(const RectMatrix<S>& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    S total{};
    // Heap's algorithm-free: iterate permutations in lexicographic order.
    for (;;) {
        // parity of the permutation
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        S term(1);
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += (inversions % 2 == 0) ? term : -term;
        if (!std::next_permutation(perm.begin(), perm.end())) break;
    }
    return total;
}

}  // namespace gramlab::testing

#endif
