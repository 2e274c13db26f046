#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "loco/exact_matrix.hpp"
#include "loco/field.hpp"
#include "loco/monomial_ideal.hpp"

namespace loco {

/// Finite-dimensional graded augmented algebra given by structure
/// constants: e_i e_j = sum_l c(i,j,l) e_l.
class FinDimAlgebra {
public:
    struct Product {
        std::size_t left;
        std::size_t right;
        std::size_t result;
        mpq_class coefficient;
    };

    /// Validates associativity and the unit law on all basis triples/pairs,
    /// homogeneity of the structure constants, and that the augmentation is
    /// an algebra map. Throws InvalidAlgebra with the first failure.
    FinDimAlgebra(FieldSpec field, std::vector<std::string> labels, std::vector<int> degrees,
                  const std::vector<Product>& products, Vector unit, Vector augmentation,
                  std::optional<Vector> functional = std::nullopt);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& degrees() const { return degrees_; }
    const Vector& unit() const { return unit_; }
    const Vector& augmentation() const { return augmentation_; }
    /// Frobenius functional, when known (coefficient of the identity for
    /// group algebras).
    const std::optional<Vector>& functional() const { return functional_; }
    bool is_commutative() const;
    /// Degree-0 part is one-dimensional.
    bool is_connected() const;

    /// e_i e_j as a coordinate vector.
    const Vector& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    Vector multiply(const Vector& a, const Vector& b) const;
    /// Basis of the augmentation ideal (kernel of the augmentation).
    std::vector<Vector> augmentation_ideal() const;
    /// Augmentation ideal nilpotent, i.e. A is local with residue field k.
    bool is_local() const;
    /// dim A_d for d = 0..top degree (degrees must be >= 0).
    std::vector<std::size_t> hilbert_function() const;

    std::vector<Product> products() const;
    /// Same algebra with basis element perm[k] moved to position k.
    FinDimAlgebra permuted(const std::vector<std::size_t>& perm) const;

private:
    FieldSpec field_;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    std::vector<Vector> table_;
    Vector unit_;
    Vector augmentation_;
    std::optional<Vector> functional_;
};

/// kG from a multiplication table of element indices; table[a][b] = index of
/// ab. Throws NotAGroup unless the table is closed and associative with an
/// identity and inverses.
FinDimAlgebra group_algebra(const std::vector<std::vector<int>>& table, FieldSpec field,
                            std::vector<std::string> labels = {});
/// Exterior algebra on generators of the given degrees (Koszul signs).
FinDimAlgebra exterior_algebra(FieldSpec field, const std::vector<int>& generator_degrees);
FinDimAlgebra exterior_algebra(FieldSpec field, int generator_degree = 1);
/// k[x_1..x_n]/J for an Artinian monomial ideal J (some power of every
/// variable lies in J); standard-monomial basis graded by total degree.
FinDimAlgebra monomial_quotient_algebra(FieldSpec field, const MonomialIdeal& relations);
/// The field k itself.
FinDimAlgebra ground_field_algebra(FieldSpec field);

/// Functional picking the coefficient of the last basis element of top
/// degree.
Vector top_degree_functional(const FinDimAlgebra& a);

/// JSON: {"field": "GF(2)", "basis": [{"label": "1", "degree": 0}, ...],
/// "products": [[i, j, l, "c"], ...], "unit": [...], "augmentation": [...],
/// "functional": [...]}; scalars are numbers or rational strings.
FinDimAlgebra algebra_from_json(const std::string& text);
std::string algebra_to_json(const FinDimAlgebra& a);

/// Free resolution F_N -> ... -> F_0 = A -> k of left A-modules.
/// differentials[s-1] describes d_s: F_s -> F_(s-1) by the images of the
/// generators: entry [t][u] is the algebra element a with d(e_t) having
/// component a e_u.
struct ResolutionSlice {
    std::vector<std::size_t> betti;
    std::vector<std::vector<std::vector<Vector>>> differentials;
    /// Generators chosen modulo the radical (graded Nakayama); true exactly
    /// when A is local, and then the resolution is minimal.
    bool minimal = false;
};

/// Resolution through homological degree N (N <= 20).
ResolutionSlice minimal_resolution(const FinDimAlgebra& a, int n);

/// d^2 = 0 on every consecutive pair and exactness checked by dimension.
bool resolution_is_complex(const FinDimAlgebra& a, const ResolutionSlice& r);
/// Every differential entry lies in the augmentation ideal.
bool resolution_entries_in_radical(const FinDimAlgebra& a, const ResolutionSlice& r);

/// dim Ext^i_A(k, A) for i = 0..N.
std::vector<std::size_t> ext_k_A(const FinDimAlgebra& a, int n);

enum class SocleSide { Left, Right, TwoSided };
/// Annihilator of the augmentation ideal.
std::size_t socle_dim(const FinDimAlgebra& a, SocleSide side = SocleSide::Left);
/// Socle dimension per degree (index = degree).
std::vector<std::size_t> graded_socle(const FinDimAlgebra& a, SocleSide side = SocleSide::Left);

struct FrobeniusReport {
    bool nondegenerate = false;
    std::size_t form_rank = 0;
    Vector witness;  // radical vector when degenerate
};
/// Nondegeneracy of (a, b) -> lambda(ab), lambda = supplied functional or
/// the algebra's own. Throws NoFunctionalSupplied if neither exists.
FrobeniusReport frobenius_check(const FinDimAlgebra& a, const std::optional<Vector>& functional = std::nullopt);

/// Ext^*(k, k) through degree N with Yoneda products on a chosen basis of
/// each degree (cocycle representatives, lexicographic on generators).
struct ExtAlgebra {
    struct ProductEntry {
        int left_degree;
        std::size_t left_index;
        int right_degree;
        std::size_t right_index;
        Vector coordinates;  // in the basis of degree left + right
    };
    std::vector<std::size_t> dims;
    std::vector<ProductEntry> products;

    /// Coordinates of basis[i][a] * basis[j][b].
    const Vector& product(int i, std::size_t a, int j, std::size_t b) const;
};
/// Yoneda product x*y = x o Y_m, where Y lifts the cocycle y to a chain map
/// and m is the degree of x. N <= 12.
ExtAlgebra ext_algebra(const FinDimAlgebra& a, int n);

struct PolynomialCertificate {
    bool passed = true;
    std::string witness;
};
/// Ext is one-dimensional in every degree 0..N, and for all i + j <= N the
/// product of the basis classes in degrees i and j is nonzero and equals the
/// product in the other order.
PolynomialCertificate polynomial_certificate(const ExtAlgebra& e);

struct HilbertSymmetryReport {
    std::vector<std::size_t> hilbert;
    std::size_t socle_dim = 0;
    bool applicable = false;  // socle one-dimensional
    int socle_degree = -1;    // top socle degree (the Gorenstein shift)
    bool symmetric = false;
    bool passed = true;
};
HilbertSymmetryReport hilbert_symmetry_check(const FinDimAlgebra& a);

/// Multiplication tables: C_n, products of cyclic groups, the dihedral
/// group of order 8 and the quaternion group.
std::vector<std::vector<int>> cyclic_group_table(int n);
std::vector<std::vector<int>> product_group_table(const std::vector<std::vector<int>>& g,
                                                  const std::vector<std::vector<int>>& h);
std::vector<std::vector<int>> dihedral_group_table(int n);  // order 2n
std::vector<std::vector<int>> quaternion_group_table();

}  // namespace loco
