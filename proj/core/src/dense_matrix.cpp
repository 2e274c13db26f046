#include "loco/dense_matrix.hpp"

#include <bit>

namespace loco::detail {

std::vector<std::size_t> rref_gf2(DenseMatrix<PrimeField>& m, std::vector<std::size_t>* independent_rows) {
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::uint64_t> bits(m.rows() * words, 0);
    auto word_row = [&](std::size_t r) { return bits.data() + r * words; };
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c)) word_row(r)[c / 64] |= std::uint64_t{1} << (c % 64);

    auto test = [&](const std::uint64_t* w, std::size_t c) { return (w[c / 64] >> (c % 64)) & 1; };

    std::vector<std::size_t> pivots;
    std::vector<std::size_t> pivot_row;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t* row = word_row(r);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            if (!test(row, pivots[k])) continue;
            const std::uint64_t* p = word_row(pivot_row[k]);
            for (std::size_t w = 0; w < words; ++w) row[w] ^= p[w];
        }
        std::size_t lead = m.cols();
        for (std::size_t w = 0; w < words; ++w)
            if (row[w]) {
                lead = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
                break;
            }
        if (lead >= m.cols()) continue;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            std::uint64_t* p = word_row(pivot_row[k]);
            if (!test(p, lead)) continue;
            for (std::size_t w = 0; w < words; ++w) p[w] ^= row[w];
        }
        pivots.push_back(lead);
        pivot_row.push_back(r);
        if (independent_rows) independent_rows->push_back(r);
    }
    DenseMatrix<PrimeField> out(m.field(), m.rows(), m.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        const std::uint64_t* src = word_row(pivot_row[k]);
        for (std::size_t c = 0; c < m.cols(); ++c) out(k, c) = static_cast<std::uint32_t>(test(src, c));
    }
    m = std::move(out);
    return pivots;
}

}  // namespace loco::detail
