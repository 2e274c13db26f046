#include "loco/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace loco {

namespace {

void require_same_size(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("monomials in different variable counts (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

}  // namespace

Monomial Monomial::variable(std::size_t n, std::size_t i, int power) {
    std::vector<int> e(n, 0);
    e.at(i) = power;
    return Monomial(std::move(e));
}

bool Monomial::is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

bool Monomial::is_nonnegative() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e >= 0; });
}

int Monomial::total_degree() const {
    int s = 0;
    for (int e : exps_) s += e;
    return s;
}

int Monomial::max_exponent() const {
    int m = 0;
    for (int e : exps_) m = std::max(m, e);
    return m;
}

std::vector<std::size_t> Monomial::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != 0) s.push_back(i);
    return s;
}

Monomial Monomial::support_monomial() const {
    std::vector<int> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) e[i] = exps_[i] != 0 ? 1 : 0;
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
    require_same_size(*this, other);
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::pow(int k) const {
    std::vector<int> e(exps_);
    for (int& x : e) x *= k;
    return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    require_same_size(a, b);
    std::vector<int> e(a.exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exps_[i];
    return Monomial(std::move(e));
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    require_same_size(a, b);
    std::vector<int> e(a.exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.exps_[i];
    return Monomial(std::move(e));
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    require_same_size(a, b);
    std::vector<int> e(a.exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i], b.exps_[i]);
    return Monomial(std::move(e));
}

Monomial gcd(const Monomial& a, const Monomial& b) {
    require_same_size(a, b);
    std::vector<int> e(a.exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], b.exps_[i]);
    return Monomial(std::move(e));
}

std::string variable_name(std::size_t n, std::size_t i) {
    if (n <= 3) return std::string(1, "xyz"[i]);
    return "x" + std::to_string(i + 1);
}

std::string Monomial::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += variable_name(exps_.size(), i);
        if (exps_[i] != 1) out += "^" + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
}

std::string degree_string(const Multidegree& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a[i]);
    }
    return out + "]";
}

}  // namespace loco
