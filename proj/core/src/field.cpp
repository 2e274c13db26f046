#include "loco/field.hpp"

#include <cctype>
#include <stdexcept>

namespace loco {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    return FieldSpec(Kind::PrimeField, p);
}

namespace {

// a mod p for an arbitrary-precision integer, in [0, p).
std::uint32_t reduce(const mpz_class& a, std::uint32_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

mpq_class FieldSpec::normalize(const mpq_class& q) const {
    if (kind_ == Kind::Rationals) return q;
    return mpq_class(PrimeField{characteristic_}.from(q));
}

std::string FieldSpec::name() const {
    if (kind_ == Kind::Rationals) return "QQ";
    return "GF(" + std::to_string(characteristic_) + ")";
}

FieldSpec parse_field(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::toupper(c));
    if (t == "QQ" || t == "Q" || t == "0" || t == "RATIONALS") return FieldSpec::rationals();
    std::string digits;
    if (t.rfind("GF(", 0) == 0 && t.back() == ')')
        digits = t.substr(3, t.size() - 4);
    else if (t.rfind("F_", 0) == 0 || t.rfind("FF", 0) == 0)
        digits = t.substr(2);
    else
        digits = t;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("unrecognised field '" + text + "'");
    unsigned long p = std::stoul(digits);
    if (p == 0) return FieldSpec::rationals();
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
}

PrimeField::Element PrimeField::from(const mpq_class& q) const {
    std::uint32_t num = reduce(q.get_num(), p);
    std::uint32_t den = reduce(q.get_den(), p);
    if (den == 0)
        throw std::domain_error("denominator divisible by the characteristic");
    return mul(num, inv(den));
}

PrimeField::Element PrimeField::inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p) + ")");
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Element>(result);
}

AnyField to_policy(const FieldSpec& f) {
    if (f.is_prime_field()) return PrimeField{f.characteristic()};
    return Rationals{};
}

}  // namespace loco
