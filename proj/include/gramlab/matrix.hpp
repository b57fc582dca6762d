#ifndef GRAMLAB_MATRIX_HPP
#define GRAMLAB_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gramlab/errors.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

/// Strictly increasing list of 0-based indices selecting rows/columns of a
/// matrix. The empty subset is legal (its principal minor is 1 by
/// convention).
class SubsetIndex {
public:
    SubsetIndex() = default;

    explicit SubsetIndex(std::vector<std::size_t> indices)
        : indices_(std::move(indices)) {
        for (std::size_t i = 1; i < indices_.size(); ++i) {
            if (indices_[i - 1] >= indices_[i]) {
                throw InvalidInputError("subset indices must be strictly increasing");
            }
        }
    }

    static SubsetIndex full(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = i;
        return SubsetIndex(std::move(v));
    }

    /// Builds the subset {i : bit i of mask set}; n caps the bit scan.
    static SubsetIndex from_mask(std::uint32_t mask, std::size_t n) {
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) v.push_back(i);
        }
        return SubsetIndex(std::move(v));
    }

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::size_t operator[](std::size_t k) const { return indices_[k]; }

    const std::vector<std::size_t>& indices() const { return indices_; }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    SubsetIndex complement(std::size_t n) const {
        std::vector<std::size_t> v;
        v.reserve(n - size());
        std::size_t p = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (p < indices_.size() && indices_[p] == i) {
                ++p;
            } else {
                v.push_back(i);
            }
        }
        return SubsetIndex(std::move(v));
    }

    void validate_for(std::size_t order) const {
        if (!indices_.empty() && indices_.back() >= order) {
            throw IndexError("subset index " + std::to_string(indices_.back()) +
                             " out of range for order " + std::to_string(order));
        }
    }

private:
    std::vector<std::size_t> indices_;
};

/// Dense rectangular matrix, row-major, bounds-checked access. Dimensions
/// are fixed at construction; instances are plain values.
template <class S>
class RectMatrix {
public:
    RectMatrix(std::size_t rows, std::size_t cols, const S& init = S{})
        : rows_(rows), cols_(cols), data_(rows * cols, init) {}

    static RectMatrix from_rows(const std::vector<std::vector<S>>& rows) {
        if (rows.empty()) throw InvalidInputError("matrix needs at least one row");
        RectMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size()) {
                throw DimensionError("ragged row list", rows[i].size(), rows[0].size());
            }
            for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const S& operator()(std::size_t i, std::size_t j) const {
        check(i, j);
        return data_[i * cols_ + j];
    }
    S& operator()(std::size_t i, std::size_t j) {
        check(i, j);
        return data_[i * cols_ + j];
    }

    std::span<const S> row(std::size_t i) const {
        check(i, 0);
        return std::span<const S>(data_).subspan(i * cols_, cols_);
    }

    std::vector<S> column(std::size_t j) const {
        check(0, j);
        std::vector<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    RectMatrix transposed() const {
        RectMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy with one row and one column removed.
    RectMatrix deleting(std::size_t row, std::size_t col) const {
        if (row >= rows_ || col >= cols_) throw IndexError("deletion index out of range");
        RectMatrix m(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, di = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, dj = 0; j < cols_; ++j) {
                if (j == col) continue;
                m(di, dj) = (*this)(i, j);
                ++dj;
            }
            ++di;
        }
        return m;
    }

    RectMatrix select(const SubsetIndex& row_set, const SubsetIndex& col_set) const {
        row_set.validate_for(rows_);
        col_set.validate_for(cols_);
        RectMatrix m(row_set.size(), col_set.size());
        for (std::size_t i = 0; i < row_set.size(); ++i)
            for (std::size_t j = 0; j < col_set.size(); ++j)
                m(i, j) = (*this)(row_set[i], col_set[j]);
        return m;
    }

    bool operator==(const RectMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) {
            throw IndexError("matrix index (" + std::to_string(i) + "," +
                             std::to_string(j) + ") out of range for " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<S> data_;
};

/// Dense symmetric matrix. Full storage; set() writes both triangles so
/// symmetry holds exactly regardless of scalar backend.
template <class S>
class SymMatrix {
public:
    explicit SymMatrix(std::size_t order, const S& init = S{})
        : order_(order), data_(order * order, init) {}

    static SymMatrix identity(std::size_t order) {
        SymMatrix m(order);
        for (std::size_t i = 0; i < order; ++i) m.set(i, i, S(1));
        return m;
    }

    std::size_t order() const { return order_; }

    const S& operator()(std::size_t i, std::size_t j) const {
        check(i, j);
        return data_[i * order_ + j];
    }

    void set(std::size_t i, std::size_t j, const S& v) {
        check(i, j);
        data_[i * order_ + j] = v;
        data_[j * order_ + i] = v;
    }

    void add(std::size_t i, std::size_t j, const S& v) {
        set(i, j, (*this)(i, j) + v);
    }

    RectMatrix<S> to_rect() const {
        RectMatrix<S> m(order_, order_);
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    SymMatrix principal_submatrix(const SubsetIndex& idx) const {
        idx.validate_for(order_);
        SymMatrix m(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                m.set(i, j, (*this)(idx[i], idx[j]));
        return m;
    }

    /// Copy with row/column rc removed.
    SymMatrix deleting(std::size_t rc) const {
        if (rc >= order_) throw IndexError("deletion index out of range");
        SymMatrix m(order_ - 1);
        for (std::size_t i = 0, di = 0; i < order_; ++i) {
            if (i == rc) continue;
            for (std::size_t j = 0, dj = 0; j <= i; ++j) {
                if (j == rc) continue;
                m.set(di, dj, (*this)(i, j));
                ++dj;
            }
            ++di;
        }
        return m;
    }

    /// M += c c^T.
    void rank1_add(std::span<const S> c) {
        if (c.size() != order_) {
            throw DimensionError("rank-1 update vector length", c.size(), order_);
        }
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j <= i; ++j) add(i, j, c[i] * c[j]);
    }

    bool operator==(const SymMatrix& other) const {
        return order_ == other.order_ && data_ == other.data_;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= order_ || j >= order_) {
            throw IndexError("matrix index (" + std::to_string(i) + "," +
                             std::to_string(j) + ") out of range for order " +
                             std::to_string(order_));
        }
    }

    std::size_t order_;
    std::vector<S> data_;
};

/// Inner product. The float backend multiplies termwise into a buffer and
/// reduces pairwise so the value is independent of caller-side chunking.
template <class S>
S inner_product(std::span<const S> a, std::span<const S> b) {
    if (a.size() != b.size()) {
        throw DimensionError("inner product length mismatch", a.size(), b.size());
    }
    if constexpr (scalar_traits<S>::is_exact) {
        S acc{};
        for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
        return acc;
    } else {
        std::vector<double> terms(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) terms[k] = a[k] * b[k];
        return pairwise_sum(terms);
    }
}

template <class S>
S inner_product(const std::vector<S>& a, const std::vector<S>& b) {
    return inner_product(std::span<const S>(a), std::span<const S>(b));
}

/// Gram matrix of a nonempty list of equal-length vectors.
template <class S>
SymMatrix<S> gram_matrix(const std::vector<std::vector<S>>& vectors) {
    if (vectors.empty()) throw InvalidInputError("gram_matrix needs at least one vector");
    const std::size_t len = vectors[0].size();
    for (const auto& v : vectors) {
        if (v.size() != len) {
            throw DimensionError("gram_matrix vector length mismatch", v.size(), len);
        }
    }
    SymMatrix<S> g(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            g.set(i, j, inner_product(vectors[i], vectors[j]));
    return g;
}

/// Gram matrix of the columns of X (entries (x_i, x_j)).
template <class S>
SymMatrix<S> gram_of_columns(const RectMatrix<S>& x) {
    SymMatrix<S> g(x.cols());
    for (std::size_t i = 0; i < x.cols(); ++i) {
        std::vector<S> ci = x.column(i);
        for (std::size_t j = 0; j <= i; ++j) {
            std::vector<S> cj = x.column(j);
            g.set(i, j, inner_product(ci, cj));
        }
    }
    return g;
}

/// Gram matrix of the rows of X.
template <class S>
SymMatrix<S> gram_of_rows(const RectMatrix<S>& x) {
    SymMatrix<S> g(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            g.set(i, j, inner_product(x.row(i), x.row(j)));
    return g;
}

template <class S>
std::vector<S> mat_vec(const SymMatrix<S>& m, std::span<const S> v) {
    if (v.size() != m.order()) {
        throw DimensionError("mat_vec length mismatch", v.size(), m.order());
    }
    std::vector<S> out(m.order(), S{});
    for (std::size_t i = 0; i < m.order(); ++i) {
        S acc{};
        for (std::size_t j = 0; j < m.order(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace gramlab

#endif
