#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace loco {

/// Coefficient field: the rationals or a prime field F_p.
///
/// Scalars are carried as mpq_class on every public surface; over F_p the
/// canonical representative is an integer in [0, p).
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
    /// Throws std::invalid_argument unless p is prime.
    static FieldSpec prime(std::uint32_t p);

    Kind kind() const { return kind_; }
    std::uint32_t characteristic() const { return characteristic_; }
    bool is_prime_field() const { return kind_ == Kind::PrimeField; }

    /// Canonical representative of q in this field. Over F_p the
    /// denominator must be prime to p.
    mpq_class normalize(const mpq_class& q) const;

    /// "QQ" or "GF(p)".
    std::string name() const;

    bool operator==(const FieldSpec&) const = default;

private:
    FieldSpec(Kind k, std::uint32_t c) : kind_(k), characteristic_(c) {}

    Kind kind_;
    std::uint32_t characteristic_;
};

bool is_prime(std::uint64_t n);

/// Parses "QQ", "Q", "GF(p)", "F_p" or a bare characteristic ("0", "2").
FieldSpec parse_field(const std::string& text);

// Element policies used by the templated dense kernels. Both expose the
// same static-like interface through an instance so PrimeField can carry p.

struct Rationals {
    using Element = mpq_class;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from(const mpq_class& q) const { return q; }
    mpq_class to_rational(const Element& e) const { return e; }
    bool is_zero(const Element& e) const { return sgn(e) == 0; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const { return 1 / a; }
};

struct PrimeField {
    using Element = std::uint32_t;

    std::uint32_t p;

    Element zero() const { return 0; }
    Element one() const { return 1 % p; }
    Element from(const mpq_class& q) const;
    mpq_class to_rational(Element e) const { return mpq_class(e); }
    bool is_zero(Element e) const { return e == 0; }
    Element add(Element a, Element b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p - b; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p);
    }
    Element neg(Element a) const { return a == 0 ? 0 : p - a; }
    Element inv(Element a) const;
};

using AnyField = std::variant<Rationals, PrimeField>;

AnyField to_policy(const FieldSpec& f);

}  // namespace loco
