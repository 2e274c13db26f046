#include "loco/exact_matrix.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "loco/errors.hpp"

namespace loco {

ExactMatrix::ExactMatrix(FieldSpec field, std::size_t rows, std::size_t cols,
                         std::vector<Triplet> entries)
    : field_(field), rows_(rows), cols_(cols) {
    std::map<std::pair<std::size_t, std::size_t>, mpq_class> acc;
    for (auto& t : entries) {
        if (t.row >= rows || t.col >= cols)
            throw DimensionMismatch("entry (" + std::to_string(t.row) + "," +
                                    std::to_string(t.col) + ") outside " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
        acc[{t.row, t.col}] += t.value;
    }
    entries_.reserve(acc.size());
    for (auto& [rc, v] : acc) {
        mpq_class x = field_.normalize(v);
        if (sgn(x) != 0) entries_.push_back({rc.first, rc.second, std::move(x)});
    }
}

ExactMatrix ExactMatrix::identity(FieldSpec field, std::size_t n) {
    std::vector<Triplet> e;
    e.reserve(n);
    for (std::size_t i = 0; i < n; ++i) e.push_back({i, i, 1});
    return ExactMatrix(field, n, n, std::move(e));
}

ExactMatrix ExactMatrix::from_rows(FieldSpec field, std::size_t cols,
                                   const std::vector<Vector>& rows) {
    std::vector<Triplet> e;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionMismatch("ragged row in from_rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(rows[r][c]) != 0) e.push_back({r, c, rows[r][c]});
    }
    return ExactMatrix(field, rows.size(), cols, std::move(e));
}

ExactMatrix ExactMatrix::from_columns(FieldSpec field, std::size_t rows,
                                      const std::vector<Vector>& columns) {
    std::vector<Triplet> e;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw DimensionMismatch("ragged column in from_columns");
        for (std::size_t r = 0; r < rows; ++r)
            if (sgn(columns[c][r]) != 0) e.push_back({r, c, columns[c][r]});
    }
    return ExactMatrix(field, rows, columns.size(), std::move(e));
}

mpq_class ExactMatrix::at(std::size_t r, std::size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c),
                               [](const Triplet& t, const std::pair<std::size_t, std::size_t>& k) {
                                   return std::make_pair(t.row, t.col) < k;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return 0;
}

ExactMatrix ExactMatrix::transpose() const {
    std::vector<Triplet> e;
    e.reserve(entries_.size());
    for (const auto& t : entries_) e.push_back({t.col, t.row, t.value});
    return ExactMatrix(field_, cols_, rows_, std::move(e));
}

Vector ExactMatrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("apply: vector length " + std::to_string(v.size()));
    Vector out(rows_, 0);
    for (const auto& t : entries_) out[t.row] += t.value * v[t.col];
    for (auto& x : out) x = field_.normalize(x);
    return out;
}

std::vector<Vector> ExactMatrix::dense_rows() const {
    std::vector<Vector> out(rows_, Vector(cols_, 0));
    for (const auto& t : entries_) out[t.row][t.col] = t.value;
    return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (!(a.field_ == b.field_)) throw DimensionMismatch("product over different fields");
    if (a.cols_ != b.rows_)
        throw DimensionMismatch("product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                " * " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    // Row index of b for fast lookup.
    std::vector<std::vector<const Triplet*>> brow(b.rows_);
    for (const auto& t : b.entries_) brow[t.row].push_back(&t);
    std::vector<Triplet> e;
    for (const auto& t : a.entries_)
        for (const Triplet* u : brow[t.col]) e.push_back({t.row, u->col, t.value * u->value});
    return ExactMatrix(a.field_, a.rows_, b.cols_, std::move(e));
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("sum of different shapes");
    std::vector<Triplet> e = a.entries_;
    e.insert(e.end(), b.entries_.begin(), b.entries_.end());
    return ExactMatrix(a.field_, a.rows_, a.cols_, std::move(e));
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_ ||
        entries_.size() != o.entries_.size())
        return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& x = entries_[i];
        const auto& y = o.entries_[i];
        if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
    }
    return true;
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack of different heights");
    std::vector<Triplet> e = a.entries();
    for (const auto& t : b.entries()) e.push_back({t.row, t.col + a.cols(), t.value});
    return ExactMatrix(a.field(), a.rows(), a.cols() + b.cols(), std::move(e));
}

namespace {

// ---------------------------------------------------------------------------
// Forward elimination on sparse rows.
//
// Over F_p rows hold residues and every stored pivot row is monic. Over Q the
// rows hold integers (each input row is cleared of denominators) and a new row
// is reduced by r <- a*r - b*P followed by division by the row content, so no
// fractions appear until the back-substitution phase.

template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

using RowP = SparseRow<std::uint32_t>;
using RowZ = SparseRow<mpz_class>;

RowP combine(const RowP& r, const RowP& p, std::uint32_t factor, const PrimeField& f) {
    // r - factor * p
    RowP out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            std::uint32_t v = f.neg(f.mul(factor, p[j].second));
            if (v) out.emplace_back(p[j].first, v);
            ++j;
        } else {
            std::uint32_t v = f.sub(r[i].second, f.mul(factor, p[j].second));
            if (v) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

RowZ combine(const RowZ& r, const RowZ& p, const mpz_class& a, const mpz_class& b) {
    // a*r - b*p, then divide out the content.
    RowZ out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.emplace_back(r[i].first, a * r[i].second);
            ++i;
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, -b * p[j].second);
            ++j;
        } else {
            mpz_class v = a * r[i].second - b * p[j].second;
            if (sgn(v) != 0) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    mpz_class g = 0;
    for (const auto& e : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g > 1)
        for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    return out;
}

std::vector<RowP> rows_modp(const ExactMatrix& m, const PrimeField& f) {
    std::vector<RowP> rows(m.rows());
    for (const auto& t : m.entries()) rows[t.row].emplace_back(t.col, f.from(t.value));
    return rows;
}

std::vector<RowZ> rows_integral(const ExactMatrix& m) {
    std::vector<SparseRow<mpq_class>> q(m.rows());
    for (const auto& t : m.entries()) q[t.row].emplace_back(t.col, t.value);
    std::vector<RowZ> rows(m.rows());
    for (std::size_t r = 0; r < q.size(); ++r) {
        mpz_class l = 1;
        for (const auto& e : q[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
        for (const auto& e : q[r]) {
            mpq_class scaled = e.second * l;
            rows[r].emplace_back(e.first, scaled.get_num());
        }
    }
    return rows;
}

// Pivot-keyed echelon forms. Each map entry is (leading column -> row).
std::map<std::size_t, RowP> echelon_modp(std::vector<RowP> rows, const PrimeField& f) {
    std::map<std::size_t, RowP> piv;
    for (auto& row : rows) {
        RowP r = std::move(row);
        while (!r.empty()) {
            auto it = piv.find(r.front().first);
            if (it == piv.end()) {
                std::uint32_t inv = f.inv(r.front().second);
                for (auto& e : r) e.second = f.mul(e.second, inv);
                piv.emplace(r.front().first, std::move(r));
                break;
            }
            r = combine(r, it->second, r.front().second, f);
        }
    }
    return piv;
}

std::map<std::size_t, RowZ> echelon_integral(std::vector<RowZ> rows) {
    std::map<std::size_t, RowZ> piv;
    for (auto& row : rows) {
        RowZ r = std::move(row);
        while (!r.empty()) {
            auto it = piv.find(r.front().first);
            if (it == piv.end()) {
                if (sgn(r.front().second) < 0)
                    for (auto& e : r) e.second = -e.second;
                piv.emplace(r.front().first, std::move(r));
                break;
            }
            const mpz_class& a = it->second.front().second;
            mpz_class b = r.front().second;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            r = combine(r, it->second, mpz_class(a / g), mpz_class(b / g));
        }
    }
    return piv;
}

// Reduced row echelon form, returned as dense rational rows keyed by pivot.
struct Rref {
    std::vector<std::size_t> pivots;
    std::vector<Vector> rows;  // rows[i] has a 1 at pivots[i] and 0 at every other pivot
};

template <class Row, class ToQ>
Rref back_substitute(const std::map<std::size_t, Row>& piv, std::size_t cols, const FieldSpec& field,
                     ToQ to_q) {
    Rref out;
    for (const auto& [col, row] : piv) {
        Vector dense(cols, 0);
        for (const auto& e : row) dense[e.first] = to_q(e.second);
        mpq_class lead = dense[col];
        for (auto& x : dense) x = field.normalize(x / lead);
        out.pivots.push_back(col);
        out.rows.push_back(std::move(dense));
    }
    // Clear above each pivot, bottom-up.
    for (std::size_t i = out.rows.size(); i-- > 0;) {
        std::size_t pc = out.pivots[i];
        for (std::size_t k = 0; k < i; ++k) {
            mpq_class factor = out.rows[k][pc];
            if (sgn(factor) == 0) continue;
            for (std::size_t c = pc; c < cols; ++c)
                if (sgn(out.rows[i][c]) != 0)
                    out.rows[k][c] = field.normalize(out.rows[k][c] - factor * out.rows[i][c]);
        }
    }
    return out;
}

Rref rref(const ExactMatrix& m) {
    const FieldSpec& field = m.field();
    if (field.is_prime_field()) {
        PrimeField f{field.characteristic()};
        auto piv = echelon_modp(rows_modp(m, f), f);
        return back_substitute(piv, m.cols(), field, [](std::uint32_t v) { return mpq_class(v); });
    }
    auto piv = echelon_integral(rows_integral(m));
    return back_substitute(piv, m.cols(), field, [](const mpz_class& v) { return mpq_class(v); });
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
    if (m.field().is_prime_field()) {
        PrimeField f{m.field().characteristic()};
        return echelon_modp(rows_modp(m, f), f).size();
    }
    return echelon_integral(rows_integral(m)).size();
}

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            v[r.pivots[i]] = m.field().normalize(-r.rows[i][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const ExactMatrix& m, const Vector& rhs) {
    if (rhs.size() != m.rows()) throw DimensionMismatch("solve: rhs length");
    ExactMatrix aug = hstack(m, ExactMatrix::from_columns(m.field(), m.rows(), {rhs}));
    Rref r = rref(aug);
    Vector x(m.cols(), 0);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;
        x[r.pivots[i]] = r.rows[i][m.cols()];
    }
    return x;
}

std::size_t homology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw DimensionMismatch("homology_dim: d_in has " + std::to_string(d_in.rows()) +
                                " rows but d_out has " + std::to_string(d_out.cols()) + " cols");
    if (!(d_out * d_in).is_zero()) throw CompositionNotZero("d_out * d_in != 0");
    return d_out.cols() - rank(d_out) - rank(d_in);
}

std::size_t induced_map_rank(const ExactMatrix& c_out, const ExactMatrix& f,
                             const ExactMatrix& d_in) {
    if (f.cols() != c_out.cols() || f.rows() != d_in.rows())
        throw DimensionMismatch("induced_map_rank: incompatible shapes");
    std::vector<Vector> cycles = kernel_basis(c_out);
    std::vector<Vector> images;
    images.reserve(cycles.size());
    for (const auto& z : cycles) images.push_back(f.apply(z));
    ExactMatrix fz = ExactMatrix::from_columns(f.field(), f.rows(), images);
    return rank(hstack(d_in, fz)) - rank(d_in);
}

}  // namespace loco
