#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "loco/exact_matrix.hpp"
#include "loco/monomial.hpp"
#include "loco/monomial_ideal.hpp"

namespace loco {

/// One direct summand (M)[1/u](-shift) of a module over M = k[x]/J.
///
/// In multidegree a its piece is the piece of M[1/u] in degree a - shift, so
/// the summand is spanned there by the class of x^(a - shift) when that class
/// survives. `inverted` = 1 gives a plain shifted copy of M.
struct Summand {
    Monomial inverted;
    Multidegree shift;
};

/// Finite direct sum of summands over the coefficient ring `ring`
/// (whose relations are J).
class ModuleDescriptor {
public:
    ModuleDescriptor(RingSpec ring, std::vector<Summand> summands);

    /// Free module with the given shifts: sum of M(-shift_j).
    static ModuleDescriptor free(const RingSpec& ring, const std::vector<Multidegree>& shifts);
    /// M[1/inverted], unshifted.
    static ModuleDescriptor localized(const RingSpec& ring, const Monomial& inverted);
    static ModuleDescriptor zero(const RingSpec& ring) { return ModuleDescriptor(ring, {}); }

    const RingSpec& ring() const { return ring_; }
    const std::vector<Summand>& summands() const { return summands_; }
    std::size_t summand_count() const { return summands_.size(); }

private:
    RingSpec ring_;
    std::vector<Summand> summands_;
};

/// Basis vector of a module piece: summand index and the exponent vector of
/// the monomial spanning that summand's piece.
struct BasisLabel {
    std::size_t summand;
    Monomial exponent;

    bool operator==(const BasisLabel&) const = default;
};

/// Observation window: all multidegrees a with lo <= a <= hi componentwise.
class DegreeBox {
public:
    DegreeBox(Multidegree lo, Multidegree hi);
    /// The cube [lo, hi]^n.
    static DegreeBox cube(std::size_t n, int lo, int hi);

    const Multidegree& lo() const { return lo_; }
    const Multidegree& hi() const { return hi_; }
    std::size_t dimension() const { return lo_.size(); }
    bool contains(const Multidegree& a) const;
    /// Every point, lexicographic order.
    std::vector<Multidegree> points() const;
    std::size_t size() const;

    bool operator==(const DegreeBox&) const = default;

private:
    Multidegree lo_;
    Multidegree hi_;
};

/// Whether the class of x^b is nonzero in (k[x]/J)[1/u]: b must be
/// nonnegative outside supp(u), and x^(b + t*u) must avoid J for all large t.
/// The test evaluates t = t0 + extra_steps, where t0 is the first t at which
/// the coordinates in supp(u) exceed every exponent of J.
bool localized_class_survives(const MonomialIdeal& relations, const Monomial& inverted, const Monomial& b,
                              int extra_steps = 0);

/// Basis of the degree-a piece, in summand order.
std::vector<BasisLabel> basis_of_degree(const ModuleDescriptor& m, const Multidegree& a);
std::size_t piece_dimension(const ModuleDescriptor& m, const Multidegree& a);

/// Dimension of the piece of total degree d, summing over the whole fiber of
/// the total-degree map. Throws InfinitePiece when a localized summand makes
/// the fiber infinite-dimensional, or when the quotient has infinitely many
/// standard monomials of that degree (impossible for polynomial rings).
std::size_t coarse_piece_dimension(const ModuleDescriptor& m, int total_degree);

/// Graded map between finite sums of summands: entries scalar * x^e, each
/// sending summand `col` of the source to summand `row` of the target.
struct PolyEntry {
    std::size_t row;
    std::size_t col;
    mpq_class coefficient;
    Monomial multiplier;
};

struct PolyMatrix {
    std::size_t rows;  // target summand count
    std::size_t cols;  // source summand count
    std::vector<PolyEntry> entries;
};

/// Matrix of `map` from the degree-a piece of `source` to the degree-a piece
/// of `target` (rows/cols indexed by basis_of_degree order). Every entry's
/// multiplier must equal shift(source col) - shift(target row); otherwise
/// InhomogeneousEntry.
ExactMatrix map_matrix(const ModuleDescriptor& source, const ModuleDescriptor& target, const PolyMatrix& map,
                       const Multidegree& a);

/// Alternating sum of dimensions, lowest index first with sign +. A nullopt
/// dimension stands for an infinite piece and raises InfinitePiece.
long euler_characteristic(const std::vector<std::optional<std::size_t>>& dims, int lowest_index = 0);

}  // namespace loco
