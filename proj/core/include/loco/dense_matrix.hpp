#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "loco/field.hpp"

namespace loco {

/// Row-major dense matrix over a field policy (Rationals or PrimeField).
/// Used where matrices are dense and large-ish: module maps over
/// finite-dimensional algebras.
template <class F>
class DenseMatrix {
public:
    using Element = typename F::Element;

    DenseMatrix(F field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const Element> values) {
        if (values.size() != cols_) throw std::invalid_argument("append_row: wrong length");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    DenseMatrix transpose() const {
        DenseMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    std::vector<Element> apply(std::span<const Element> v) const {
        std::vector<Element> out(rows_, field_.zero());
        for (std::size_t r = 0; r < rows_; ++r) {
            Element acc = field_.zero();
            for (std::size_t c = 0; c < cols_; ++c)
                if (!field_.is_zero(v[c]) && !field_.is_zero((*this)(r, c)))
                    acc = field_.add(acc, field_.mul((*this)(r, c), v[c]));
            out[r] = acc;
        }
        return out;
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> data_;
};

namespace detail {

/// Reduced row echelon form in place. Returns pivot columns in row order.
/// Rows are taken in their given order; `independent_rows`, if supplied,
/// receives the original indices of rows that were independent of every
/// earlier row (a greedy row basis).
template <class F>
std::vector<std::size_t> rref_generic(DenseMatrix<F>& m, std::vector<std::size_t>* independent_rows) {
    const F& f = m.field();
    std::vector<std::size_t> pivots;     // pivot column per echelon row
    std::vector<std::size_t> pivot_row;  // storage row per echelon row
    std::vector<long> col_owner(m.cols(), -1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        // Reduce against existing pivots.
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            auto c = pivots[k];
            if (f.is_zero(row[c])) continue;
            auto factor = row[c];
            auto prow = m.row(pivot_row[k]);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!f.is_zero(prow[j])) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
        }
        std::size_t lead = m.cols();
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!f.is_zero(row[j])) {
                lead = j;
                break;
            }
        if (lead == m.cols()) continue;
        auto inv = f.inv(row[lead]);
        for (std::size_t j = lead; j < m.cols(); ++j)
            if (!f.is_zero(row[j])) row[j] = f.mul(row[j], inv);
        // Clear the new pivot column from earlier echelon rows.
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            auto prow = m.row(pivot_row[k]);
            if (f.is_zero(prow[lead])) continue;
            auto factor = prow[lead];
            for (std::size_t j = lead; j < m.cols(); ++j)
                if (!f.is_zero(row[j])) prow[j] = f.sub(prow[j], f.mul(factor, row[j]));
        }
        pivots.push_back(lead);
        pivot_row.push_back(r);
        if (independent_rows) independent_rows->push_back(r);
    }
    // Compact echelon rows to the top, zero the rest.
    DenseMatrix<F> out(f, m.rows(), m.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        auto src = m.row(pivot_row[k]);
        auto dst = out.row(k);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    m = std::move(out);
    return pivots;
}

/// Packed GF(2) variant of rref_generic; identical contract.
std::vector<std::size_t> rref_gf2(DenseMatrix<PrimeField>& m, std::vector<std::size_t>* independent_rows);

template <class F>
std::vector<std::size_t> rref_dispatch(DenseMatrix<F>& m, std::vector<std::size_t>* independent_rows) {
    if constexpr (std::is_same_v<F, PrimeField>) {
        if (m.field().p == 2) return rref_gf2(m, independent_rows);
    }
    return rref_generic(m, independent_rows);
}

}  // namespace detail

/// Reduced row echelon form of m (rows past the rank are zero). Returns the
/// pivot columns.
template <class F>
std::vector<std::size_t> rref(DenseMatrix<F>& m) {
    return detail::rref_dispatch(m, nullptr);
}

template <class F>
std::size_t rank(DenseMatrix<F> m) {
    return detail::rref_dispatch(m, nullptr).size();
}

/// Indices of rows independent of all preceding rows.
template <class F>
std::vector<std::size_t> greedy_row_basis(DenseMatrix<F> m) {
    std::vector<std::size_t> keep;
    detail::rref_dispatch(m, &keep);
    return keep;
}

/// Null space basis of m (vectors of length cols).
template <class F>
std::vector<std::vector<typename F::Element>> kernel_basis(DenseMatrix<F> m) {
    const F f = m.field();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<typename F::Element>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::Element> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves m x = b for every column b of rhs (given as a list of vectors).
/// Returns nullopt if any system is inconsistent.
template <class F>
std::optional<std::vector<std::vector<typename F::Element>>> solve_many(
    const DenseMatrix<F>& m, const std::vector<std::vector<typename F::Element>>& rhs) {
    const F f = m.field();
    DenseMatrix<F> aug(f, m.rows(), m.cols() + rhs.size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        for (std::size_t k = 0; k < rhs.size(); ++k) aug(r, m.cols() + k) = rhs[k][r];
    }
    auto pivots = rref(aug);
    std::vector<std::vector<typename F::Element>> xs(rhs.size(),
                                                     std::vector<typename F::Element>(m.cols(), f.zero()));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= m.cols()) return std::nullopt;
        for (std::size_t k = 0; k < rhs.size(); ++k) xs[k][pivots[i]] = aug(i, m.cols() + k);
    }
    return xs;
}

}  // namespace loco
