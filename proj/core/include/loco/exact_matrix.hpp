#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "loco/field.hpp"

namespace loco {

using Vector = std::vector<mpq_class>;

struct Triplet {
    std::size_t row;
    std::size_t col;
    mpq_class value;
};

/// Sparse matrix over a FieldSpec. Immutable once built: entries are summed
/// on construction, reduced into the field, sorted row-major and stripped of
/// zeros.
class ExactMatrix {
public:
    ExactMatrix(FieldSpec field, std::size_t rows, std::size_t cols,
                std::vector<Triplet> entries = {});

    static ExactMatrix identity(FieldSpec field, std::size_t n);
    static ExactMatrix from_rows(FieldSpec field, std::size_t cols,
                                 const std::vector<Vector>& rows);
    /// Matrix whose columns are the given vectors (each of length `rows`).
    static ExactMatrix from_columns(FieldSpec field, std::size_t rows,
                                    const std::vector<Vector>& columns);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Triplet>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    mpq_class at(std::size_t r, std::size_t c) const;
    ExactMatrix transpose() const;
    Vector apply(const Vector& v) const;
    std::vector<Vector> dense_rows() const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    bool operator==(const ExactMatrix& other) const;

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Triplet> entries_;
};

/// [a | b], both with the same row count.
ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);

std::size_t rank(const ExactMatrix& m);

/// Basis of the null space; cols - rank vectors, one per free column of the
/// reduced echelon form (free entry 1).
std::vector<Vector> kernel_basis(const ExactMatrix& m);

/// Some x with m x = rhs, or nullopt. Free variables are set to zero, so the
/// solution is determined by the lexicographically-first pivot columns.
std::optional<Vector> solve(const ExactMatrix& m, const Vector& rhs);

/// dim ker(d_out) - rank(d_in) for C' --d_in--> C --d_out--> C''.
/// Throws DimensionMismatch for incompatible shapes and CompositionNotZero
/// if d_out * d_in != 0.
std::size_t homology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out);

/// Rank of the map induced on homology at the middle spot by a chain map
/// f: C -> D, where C has differentials (c_in, c_out) and D has incoming
/// differential d_in. Equals dim(f(Z_C) + B_D) - dim B_D.
std::size_t induced_map_rank(const ExactMatrix& c_out, const ExactMatrix& f,
                             const ExactMatrix& d_in);

}  // namespace loco
