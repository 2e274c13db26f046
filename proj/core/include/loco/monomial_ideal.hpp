#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "loco/field.hpp"
#include "loco/monomial.hpp"

namespace loco {

/// Monomial ideal in k[x_1..x_n], stored by its minimal generators in
/// lexicographic order. No generators = zero ideal; the generator 1 = unit
/// ideal.
class MonomialIdeal {
public:
    /// Zero ideal in n variables.
    explicit MonomialIdeal(std::size_t n) : n_(n) {}
    /// Minimizes gens. Throws NegativeExponent on a negative exponent and
    /// std::invalid_argument if a generator has the wrong length.
    MonomialIdeal(std::size_t n, const std::vector<Monomial>& gens);

    std::size_t variable_count() const { return n_; }
    const std::vector<Monomial>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const;

    bool contains(const Monomial& m) const;
    bool contains(const MonomialIdeal& other) const;
    /// Largest exponent appearing in any generator (0 for the zero ideal).
    int max_exponent() const;

    bool operator==(const MonomialIdeal& other) const = default;

    std::string to_string() const;

private:
    std::size_t n_;
    std::vector<Monomial> gens_;
};

/// Minimal subset of gens generating the same ideal (sorted lexicographically).
MonomialIdeal minimal_generators(std::size_t n, const std::vector<Monomial>& gens);

/// True iff some generator of I divides m.
bool membership(const Monomial& m, const MonomialIdeal& ideal);

/// Minimal generators of I^k, k >= 1.
MonomialIdeal ideal_power(const MonomialIdeal& ideal, int k);

/// (g_1^r, ..., g_m^r): the generator-power system, cofinal with I^r.
MonomialIdeal generator_power(const MonomialIdeal& ideal, int r);

MonomialIdeal radical(const MonomialIdeal& ideal);
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b);

/// Coefficient field, variables and monomial quotient relations of
/// R = k[x_1..x_n]/J. Variable degrees default to the standard basis
/// vectors (fine Z^n grading).
struct RingSpec {
    FieldSpec field;
    std::size_t variable_count;
    std::vector<Multidegree> variable_degrees;
    MonomialIdeal relations;

    RingSpec(FieldSpec f, std::size_t n);
    RingSpec(FieldSpec f, std::size_t n, MonomialIdeal quotient);

    /// The ambient polynomial ring k[x_1..x_n] (relations dropped).
    RingSpec polynomial_ring() const { return RingSpec(field, variable_count); }
    std::string to_string() const;
};

/// Krull dimension of k[x]/J: the largest set S of variables such that no
/// generator of J is supported inside S. Returns -1 for the zero ring
/// (J = unit ideal).
int krull_dim(const RingSpec& ring);

}  // namespace loco
