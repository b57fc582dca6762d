#ifndef GRAMLAB_FAMILY_HPP
#define GRAMLAB_FAMILY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gramlab/errors.hpp"
#include "gramlab/scalar.hpp"

namespace gramlab {

enum class FamilyKind { monomial, log_power, table, padded_table };

/// Rule continuing a finite table past its last column.
enum class PadRule { zero, monomial, cycle };

inline const char* to_string(PadRule rule) {
    switch (rule) {
        case PadRule::zero: return "zero";
        case PadRule::monomial: return "monomial";
        case PadRule::cycle: return "cycle";
    }
    return "?";
}

inline std::optional<PadRule> pad_rule_from_string(std::string_view s) {
    if (s == "zero") return PadRule::zero;
    if (s == "monomial") return PadRule::monomial;
    if (s == "cycle") return PadRule::cycle;
    return std::nullopt;
}

/// A family of m+1 row vectors f_r = (f_{rk})_{k >= 1}, the object whose
/// truncations feed the Gram-ratio engine. Rule-backed kinds have no
/// horizon; a plain table is defined only up to its width.
template <class S>
class VectorFamily {
public:
    /// f_{rk} = k^r for r = 0..m. Any nontrivial combination of the rows
    /// is a nonzero polynomial in k, so its squared entries sum to
    /// infinity: this family is the canonical divergence witness.
    static VectorFamily monomial(std::size_t m) {
        VectorFamily f;
        f.kind_ = FamilyKind::monomial;
        f.rows_ = m + 1;
        f.label_ = "monomial(m=" + std::to_string(m) + ")";
        return f;
    }

    /// f_{rk} = log(k+1)^r; float backend only (the entries are not
    /// rational).
    static VectorFamily log_power(std::size_t m) {
        if constexpr (scalar_traits<S>::is_exact) {
            throw InvalidInputError("log-power family requires float mode");
        }
        VectorFamily f;
        f.kind_ = FamilyKind::log_power;
        f.rows_ = m + 1;
        f.label_ = "logpower(m=" + std::to_string(m) + ")";
        return f;
    }

    /// Finite explicit table; row r of the table is f_r. The horizon is
    /// the table width and reading past it is an error.
    static VectorFamily table(std::vector<std::vector<S>> rows,
                              std::string label = "csv") {
        validate_table(rows);
        VectorFamily f;
        f.kind_ = FamilyKind::table;
        f.rows_ = rows.size();
        f.table_ = std::move(rows);
        f.label_ = std::move(label);
        return f;
    }

    /// Finite table continued past its width by a rule, so the engine can
    /// run to any n.
    static VectorFamily padded_table(std::vector<std::vector<S>> rows, PadRule pad,
                                     std::string label = "custom") {
        validate_table(rows);
        VectorFamily f;
        f.kind_ = FamilyKind::padded_table;
        f.rows_ = rows.size();
        f.table_ = std::move(rows);
        f.pad_ = pad;
        f.label_ = std::move(label) + "+" + to_string(pad);
        return f;
    }

    FamilyKind kind() const { return kind_; }
    std::size_t rows() const { return rows_; }
    std::size_t m() const { return rows_ - 1; }
    const std::string& label() const { return label_; }

    std::optional<std::size_t> horizon() const {
        if (kind_ == FamilyKind::table) return table_[0].size();
        return std::nullopt;
    }

    /// Entry f_{rk}; k is 1-based.
    S entry(std::size_t r, std::size_t k) const {
        if (r >= rows_) throw IndexError("family row out of range");
        if (k == 0) throw IndexError("family column index is 1-based");
        switch (kind_) {
            case FamilyKind::monomial:
                return monomial_entry(r, k);
            case FamilyKind::log_power:
                return log_power_entry(r, k);
            case FamilyKind::table:
                if (k > table_[0].size()) {
                    throw InvalidInputError(
                        "column " + std::to_string(k) + " exceeds the family horizon " +
                        std::to_string(table_[0].size()));
                }
                return table_[r][k - 1];
            case FamilyKind::padded_table: {
                const std::size_t width = table_[0].size();
                if (k <= width) return table_[r][k - 1];
                switch (pad_) {
                    case PadRule::zero: return S{};
                    case PadRule::monomial: return monomial_entry(r, k);
                    case PadRule::cycle: return table_[r][(k - 1) % width];
                }
                return S{};
            }
        }
        return S{};
    }

    /// Column (f_{0k}, ..., f_{mk}).
    std::vector<S> column(std::size_t k) const {
        std::vector<S> c(rows_);
        for (std::size_t r = 0; r < rows_; ++r) c[r] = entry(r, k);
        return c;
    }

    /// Truncation of row r to its first n coordinates.
    std::vector<S> projection(std::size_t r, std::size_t n) const {
        std::vector<S> v(n);
        for (std::size_t k = 1; k <= n; ++k) v[k - 1] = entry(r, k);
        return v;
    }

private:
    static void validate_table(const std::vector<std::vector<S>>& rows) {
        if (rows.empty() || rows[0].empty()) {
            throw InvalidInputError("family table must be nonempty");
        }
        for (const auto& row : rows) {
            if (row.size() != rows[0].size()) {
                throw DimensionError("ragged family table", row.size(), rows[0].size());
            }
        }
    }

    static S monomial_entry(std::size_t r, std::size_t k) {
        if constexpr (scalar_traits<S>::is_exact) {
            BigInt p = 1;
            for (std::size_t i = 0; i < r; ++i) p *= BigInt(k);
            return Rational(p);
        } else {
            double p = 1.0;
            for (std::size_t i = 0; i < r; ++i) p *= static_cast<double>(k);
            return p;
        }
    }

    static S log_power_entry(std::size_t r, std::size_t k) {
        if constexpr (scalar_traits<S>::is_exact) {
            throw InvalidInputError("log-power family requires float mode");
        } else {
            double base = std::log(static_cast<double>(k + 1));
            double p = 1.0;
            for (std::size_t i = 0; i < r; ++i) p *= base;
            return p;
        }
    }

    FamilyKind kind_ = FamilyKind::monomial;
    std::size_t rows_ = 1;
    std::vector<std::vector<S>> table_;
    PadRule pad_ = PadRule::zero;
    std::string label_;
};

}  // namespace gramlab

#endif
