#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace loco {

/// A point of Z^n: the fine (exponent-vector) grading.
using Multidegree = std::vector<int>;

/// Laurent monomial x^a over Z^n. Negative exponents only make sense inside
/// localizations; ideal generators are always nonnegative.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {}
    Monomial(std::initializer_list<int> exponents) : exps_(exponents) {}

    static Monomial one(std::size_t n) { return Monomial(std::vector<int>(n, 0)); }
    static Monomial variable(std::size_t n, std::size_t i, int power = 1);

    std::size_t size() const { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<int>& exponents() const { return exps_; }

    bool is_one() const;
    bool is_nonnegative() const;
    int total_degree() const;
    int max_exponent() const;
    /// Variables with a nonzero exponent.
    std::vector<std::size_t> support() const;
    /// Exponents clipped to {0, 1}.
    Monomial support_monomial() const;

    /// Componentwise <=; both must be nonnegative for this to mean divisibility.
    bool divides(const Monomial& other) const;

    Monomial pow(int k) const;
    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// a / b, exponents may go negative.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend Monomial lcm(const Monomial& a, const Monomial& b);
    friend Monomial gcd(const Monomial& a, const Monomial& b);

    auto operator<=>(const Monomial&) const = default;

    /// "x^2*z", "1", "x^-1*y".
    std::string to_string() const;

private:
    std::vector<int> exps_;
};

std::string variable_name(std::size_t n, std::size_t i);
std::string degree_string(const Multidegree& a);

}  // namespace loco
