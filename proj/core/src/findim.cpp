#include "loco/findim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <variant>

#include <nlohmann/json.hpp>

#include "loco/dense_matrix.hpp"
#include "loco/errors.hpp"

namespace loco {

namespace {

Vector normalized(const FieldSpec& f, Vector v) {
    for (auto& x : v) x = f.normalize(x);
    return v;
}

bool is_zero_vector(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return sgn(x) == 0; });
}

}  // namespace

FinDimAlgebra::FinDimAlgebra(FieldSpec field, std::vector<std::string> labels, std::vector<int> degrees,
                             const std::vector<Product>& products, Vector unit, Vector augmentation,
                             std::optional<Vector> functional)
    : field_(field), labels_(std::move(labels)), degrees_(std::move(degrees)) {
    const std::size_t d = labels_.size();
    if (d == 0) throw InvalidAlgebra("empty basis");
    if (degrees_.size() != d) throw InvalidAlgebra("one degree per basis element required");
    if (unit.size() != d || augmentation.size() != d) throw InvalidAlgebra("unit/augmentation have the wrong length");
    if (functional && functional->size() != d) throw InvalidAlgebra("functional has the wrong length");
    unit_ = normalized(field_, std::move(unit));
    augmentation_ = normalized(field_, std::move(augmentation));
    if (functional) functional_ = normalized(field_, std::move(*functional));
    table_.assign(d * d, Vector(d, 0));
    for (const auto& p : products) {
        if (p.left >= d || p.right >= d || p.result >= d) throw InvalidAlgebra("structure constant index out of range");
        auto& slot = table_[p.left * d + p.right][p.result];
        slot = field_.normalize(slot + p.coefficient);
    }

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t l = 0; l < d; ++l)
                if (sgn(product(i, j)[l]) != 0 && degrees_[l] != degrees_[i] + degrees_[j])
                    throw InvalidAlgebra("e_" + labels_[i] + " * e_" + labels_[j] + " has a component in the wrong degree");
    for (std::size_t i = 0; i < d; ++i) {
        if (sgn(unit_[i]) != 0 && degrees_[i] != 0) throw InvalidAlgebra("unit is not in degree 0");
        if (sgn(augmentation_[i]) != 0 && degrees_[i] != 0) throw InvalidAlgebra("augmentation is not homogeneous");
    }
    for (std::size_t i = 0; i < d; ++i) {
        Vector e(d, 0);
        e[i] = 1;
        if (multiply(unit_, e) != e || multiply(e, unit_) != e)
            throw InvalidAlgebra("unit law fails on " + labels_[i]);
    }
    auto eps = [&](const Vector& v) {
        mpq_class s = 0;
        for (std::size_t k = 0; k < d; ++k) s += v[k] * augmentation_[k];
        return field_.normalize(s);
    };
    if (eps(unit_) != 1) throw InvalidAlgebra("augmentation does not send 1 to 1");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (eps(product(i, j)) != field_.normalize(augmentation_[i] * augmentation_[j]))
                throw InvalidAlgebra("augmentation is not multiplicative on " + labels_[i] + ", " + labels_[j]);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Vector& ij = product(i, j);
            for (std::size_t k = 0; k < d; ++k) {
                Vector lhs(d, 0), rhs(d, 0);
                for (std::size_t l = 0; l < d; ++l) {
                    if (sgn(ij[l]) != 0) {
                        const Vector& lk = product(l, k);
                        for (std::size_t m = 0; m < d; ++m)
                            if (sgn(lk[m]) != 0) lhs[m] += ij[l] * lk[m];
                    }
                    const mpq_class& jk = product(j, k)[l];
                    if (sgn(jk) != 0) {
                        const Vector& il = product(i, l);
                        for (std::size_t m = 0; m < d; ++m)
                            if (sgn(il[m]) != 0) rhs[m] += jk * il[m];
                    }
                }
                for (std::size_t m = 0; m < d; ++m)
                    if (field_.normalize(lhs[m] - rhs[m]) != 0)
                        throw InvalidAlgebra("associativity fails on (" + labels_[i] + ", " + labels_[j] + ", " +
                                             labels_[k] + ")");
            }
        }
}

Vector FinDimAlgebra::multiply(const Vector& a, const Vector& b) const {
    const std::size_t d = dim();
    Vector out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (sgn(b[j]) == 0) continue;
            mpq_class c = a[i] * b[j];
            const Vector& p = product(i, j);
            for (std::size_t l = 0; l < d; ++l)
                if (sgn(p[l]) != 0) out[l] += c * p[l];
        }
    }
    return normalized(field_, std::move(out));
}

bool FinDimAlgebra::is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (product(i, j) != product(j, i)) return false;
    return true;
}

bool FinDimAlgebra::is_connected() const {
    return std::count(degrees_.begin(), degrees_.end(), 0) == 1;
}

std::vector<Vector> FinDimAlgebra::augmentation_ideal() const {
    return kernel_basis(ExactMatrix::from_rows(field_, dim(), {augmentation_}));
}

bool FinDimAlgebra::is_local() const {
    std::vector<Vector> ideal = augmentation_ideal();
    std::vector<Vector> power = ideal;
    std::size_t previous = dim() + 1;
    while (!power.empty()) {
        std::size_t r = power.size();
        if (r >= previous) return false;
        previous = r;
        std::vector<Vector> next;
        for (const auto& a : power)
            for (const auto& b : ideal) next.push_back(multiply(a, b));
        // Row space basis of the products.
        std::vector<Vector> acc;
        for (auto& v : next) {
            acc.push_back(std::move(v));
            if (rank(ExactMatrix::from_rows(field_, dim(), acc)) < acc.size()) acc.pop_back();
        }
        power = std::move(acc);
    }
    return true;
}

std::vector<std::size_t> FinDimAlgebra::hilbert_function() const {
    int top = *std::max_element(degrees_.begin(), degrees_.end());
    if (*std::min_element(degrees_.begin(), degrees_.end()) < 0) throw InvalidAlgebra("negative degrees");
    std::vector<std::size_t> h(static_cast<std::size_t>(top + 1), 0);
    for (int g : degrees_) ++h[static_cast<std::size_t>(g)];
    return h;
}

std::vector<FinDimAlgebra::Product> FinDimAlgebra::products() const {
    std::vector<Product> out;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t l = 0; l < dim(); ++l)
                if (sgn(product(i, j)[l]) != 0) out.push_back({i, j, l, product(i, j)[l]});
    return out;
}

FinDimAlgebra FinDimAlgebra::permuted(const std::vector<std::size_t>& perm) const {
    const std::size_t d = dim();
    if (perm.size() != d) throw std::invalid_argument("permutation has the wrong length");
    std::vector<std::size_t> where(d);
    for (std::size_t k = 0; k < d; ++k) where[perm[k]] = k;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (auto k : perm) {
        labels.push_back(labels_[k]);
        degrees.push_back(degrees_[k]);
    }
    std::vector<Product> prods;
    for (const auto& p : products()) prods.push_back({where[p.left], where[p.right], where[p.result], p.coefficient});
    auto move = [&](const Vector& v) {
        Vector out(d);
        for (std::size_t k = 0; k < d; ++k) out[where[k]] = v[k];
        return out;
    };
    std::optional<Vector> fn;
    if (functional_) fn = move(*functional_);
    return FinDimAlgebra(field_, labels, degrees, prods, move(unit_), move(augmentation_), fn);
}

FinDimAlgebra group_algebra(const std::vector<std::vector<int>>& table, FieldSpec field,
                            std::vector<std::string> labels) {
    const std::size_t n = table.size();
    if (n == 0) throw NotAGroup("empty table");
    for (const auto& row : table) {
        if (row.size() != n) throw NotAGroup("table is not square");
        for (int v : row)
            if (v < 0 || static_cast<std::size_t>(v) >= n) throw NotAGroup("entry " + std::to_string(v) + " out of range");
    }
    auto mul = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(table[a][b]); };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw NotAGroup("not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ")");
    std::optional<std::size_t> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) identity = e;
    }
    if (!identity) throw NotAGroup("no identity element");
    for (std::size_t a = 0; a < n; ++a) {
        bool has = false;
        for (std::size_t b = 0; b < n && !has; ++b) has = mul(a, b) == *identity && mul(b, a) == *identity;
        if (!has) throw NotAGroup("element " + std::to_string(a) + " has no inverse");
    }
    if (labels.empty())
        for (std::size_t a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a));
    if (labels.size() != n) throw NotAGroup("one label per element required");
    std::vector<FinDimAlgebra::Product> prods;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) prods.push_back({a, b, mul(a, b), 1});
    Vector unit(n, 0), functional(n, 0);
    unit[*identity] = 1;
    functional[*identity] = 1;
    return FinDimAlgebra(field, std::move(labels), std::vector<int>(n, 0), prods, unit, Vector(n, 1), functional);
}

FinDimAlgebra exterior_algebra(FieldSpec field, const std::vector<int>& generator_degrees) {
    const std::size_t g = generator_degrees.size();
    if (g > 12) throw InvalidAlgebra("too many exterior generators");
    const std::size_t d = std::size_t{1} << g;
    std::vector<unsigned> order(d);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::size_t> index(d);
    for (std::size_t k = 0; k < d; ++k) index[order[k]] = k;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (unsigned s : order) {
        std::string label;
        int deg = 0;
        for (std::size_t i = 0; i < g; ++i)
            if (s & (1u << i)) {
                label += (label.empty() ? "" : "*") + (g == 1 ? std::string("t") : "t" + std::to_string(i + 1));
                deg += generator_degrees[i];
            }
        labels.push_back(label.empty() ? "1" : label);
        degrees.push_back(deg);
    }
    std::vector<FinDimAlgebra::Product> prods;
    for (unsigned s = 0; s < d; ++s)
        for (unsigned t = 0; t < d; ++t) {
            if (s & t) continue;
            int inversions = 0;
            for (std::size_t i = 0; i < g; ++i)
                if (s & (1u << i)) inversions += std::popcount(t & ((1u << i) - 1));
            prods.push_back({index[s], index[t], index[s | t], inversions % 2 ? -1 : 1});
        }
    Vector unit(d, 0), aug(d, 0), top(d, 0);
    unit[0] = 1;
    aug[0] = 1;
    top[d - 1] = 1;
    return FinDimAlgebra(field, labels, degrees, prods, unit, aug, top);
}

FinDimAlgebra exterior_algebra(FieldSpec field, int generator_degree) {
    return exterior_algebra(field, std::vector<int>{generator_degree});
}

FinDimAlgebra monomial_quotient_algebra(FieldSpec field, const MonomialIdeal& relations) {
    const std::size_t n = relations.variable_count();
    for (std::size_t i = 0; i < n; ++i) {
        bool pure = std::any_of(relations.generators().begin(), relations.generators().end(), [&](const Monomial& m) {
            auto s = m.support();
            return s.size() == 1 && s[0] == i;
        });
        if (!pure && !relations.is_unit()) throw InvalidAlgebra("quotient is not Artinian: no power of " + variable_name(n, i));
    }
    if (relations.is_unit()) throw InvalidAlgebra("quotient by the unit ideal is zero");
    std::set<Monomial> seen{Monomial::one(n)};
    std::vector<Monomial> frontier{Monomial::one(n)};
    while (!frontier.empty()) {
        std::vector<Monomial> next;
        for (const auto& m : frontier)
            for (std::size_t i = 0; i < n; ++i) {
                Monomial x = m * Monomial::variable(n, i);
                if (!relations.contains(x) && seen.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    std::vector<Monomial> basis(seen.begin(), seen.end());
    std::stable_sort(basis.begin(), basis.end(), [](const Monomial& a, const Monomial& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a > b;  // x before y within a degree
    });
    std::map<Monomial, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (const auto& m : basis) {
        labels.push_back(m.to_string());
        degrees.push_back(m.total_degree());
    }
    std::vector<FinDimAlgebra::Product> prods;
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            auto it = index.find(basis[a] * basis[b]);
            if (it != index.end()) prods.push_back({a, b, it->second, 1});
        }
    const std::size_t d = basis.size();
    Vector unit(d, 0), aug(d, 0);
    unit[0] = 1;
    aug[0] = 1;
    return FinDimAlgebra(field, labels, degrees, prods, unit, aug);
}

FinDimAlgebra ground_field_algebra(FieldSpec field) {
    return FinDimAlgebra(field, {"1"}, {0}, {{0, 0, 0, 1}}, {1}, {1}, Vector{1});
}

Vector top_degree_functional(const FinDimAlgebra& a) {
    int top = *std::max_element(a.degrees().begin(), a.degrees().end());
    Vector v(a.dim(), 0);
    for (std::size_t k = a.dim(); k-- > 0;)
        if (a.degrees()[k] == top) {
            v[k] = 1;
            break;
        }
    return v;
}

namespace {

mpq_class scalar_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
        mpq_class q(j.get<std::string>());
        q.canonicalize();
        return q;
    }
    throw InvalidAlgebra("scalars must be integers or rational strings");
}

Vector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InvalidAlgebra("expected an array of scalars");
    Vector v;
    for (const auto& x : j) v.push_back(scalar_from_json(x));
    return v;
}

nlohmann::ordered_json scalar_to_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

}  // namespace

FinDimAlgebra algebra_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidAlgebra(std::string("malformed JSON: ") + e.what());
    }
    try {
        FieldSpec field = parse_field(j.at("field").get<std::string>());
        std::vector<std::string> labels;
        std::vector<int> degrees;
        for (const auto& b : j.at("basis")) {
            labels.push_back(b.at("label").get<std::string>());
            degrees.push_back(b.value("degree", 0));
        }
        std::vector<FinDimAlgebra::Product> prods;
        for (const auto& p : j.at("products")) {
            if (!p.is_array() || p.size() != 4) throw InvalidAlgebra("products are [i, j, l, c] quadruples");
            prods.push_back({p[0].get<std::size_t>(), p[1].get<std::size_t>(), p[2].get<std::size_t>(),
                             scalar_from_json(p[3])});
        }
        std::optional<Vector> fn;
        if (j.contains("functional")) fn = vector_from_json(j["functional"]);
        return FinDimAlgebra(field, labels, degrees, prods, vector_from_json(j.at("unit")),
                             vector_from_json(j.at("augmentation")), fn);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidAlgebra(std::string("bad algebra description: ") + e.what());
    }
}

std::string algebra_to_json(const FinDimAlgebra& a) {
    nlohmann::ordered_json j;
    j["field"] = a.field().name();
    j["basis"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) j["basis"].push_back({{"label", a.labels()[k]}, {"degree", a.degrees()[k]}});
    j["products"] = nlohmann::ordered_json::array();
    for (const auto& p : a.products()) j["products"].push_back({p.left, p.right, p.result, scalar_to_json(p.coefficient)});
    auto vec = [](const Vector& v) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& x : v) out.push_back(scalar_to_json(x));
        return out;
    };
    j["unit"] = vec(a.unit());
    j["augmentation"] = vec(a.augmentation());
    if (a.functional()) j["functional"] = vec(*a.functional());
    return j.dump();
}

// ---------------------------------------------------------------------------
// Homological algebra over a field policy.

namespace {

template <class F>
struct Engine {
    using E = typename F::Element;
    using Vec = std::vector<E>;

    F f;
    std::size_t d;
    std::vector<Vec> left;  // left[i]: matrix (row-major d x d) of x -> e_i x, entry [l*d + j]
    Vec aug;
    Vec unit;

    Engine(const FinDimAlgebra& a, F field) : f(field), d(a.dim()) {
        left.assign(d, Vec(d * d, f.zero()));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t l = 0; l < d; ++l) left[i][l * d + j] = f.from(a.product(i, j)[l]);
        for (const auto& x : a.augmentation()) aug.push_back(f.from(x));
        for (const auto& x : a.unit()) unit.push_back(f.from(x));
    }

    Vec from(const Vector& v) const {
        Vec out;
        for (const auto& x : v) out.push_back(f.from(x));
        return out;
    }
    Vector to(const Vec& v) const {
        Vector out;
        for (const auto& x : v) out.push_back(f.to_rational(x));
        return out;
    }

    E epsilon(const E* a) const {
        E s = f.zero();
        for (std::size_t k = 0; k < d; ++k)
            if (!f.is_zero(a[k]) && !f.is_zero(aug[k])) s = f.add(s, f.mul(a[k], aug[k]));
        return s;
    }

    // out += a * x for algebra elements a, x (length d).
    void mul_acc(const E* a, const E* x, E* out) const {
        for (std::size_t i = 0; i < d; ++i) {
            if (f.is_zero(a[i])) continue;
            const Vec& L = left[i];
            for (std::size_t l = 0; l < d; ++l) {
                E s = f.zero();
                for (std::size_t j = 0; j < d; ++j)
                    if (!f.is_zero(x[j]) && !f.is_zero(L[l * d + j])) s = f.add(s, f.mul(L[l * d + j], x[j]));
                if (!f.is_zero(s)) out[l] = f.add(out[l], f.mul(a[i], s));
            }
        }
    }

    // Slotwise a * v for v in a free module of rank `slots`.
    Vec scale(const E* a, const Vec& v) const {
        Vec out(v.size(), f.zero());
        for (std::size_t u = 0; u * d < v.size(); ++u) mul_acc(a, v.data() + u * d, out.data() + u * d);
        return out;
    }

    Vec basis_vector(std::size_t i) const {
        Vec e(d, f.zero());
        e[i] = f.one();
        return e;
    }
};

/// Resolution data: gens[s] (s >= 1) lists d_s(e_t) in F_(s-1), flattened
/// as b_(s-1) slots of length d.
template <class F>
struct Resolution {
    std::vector<std::size_t> betti;
    std::vector<std::vector<typename Engine<F>::Vec>> gens;
    bool minimal = false;
};

// Matrix of d_s as a k-linear map, rows indexed by the basis (t, i) of F_s
// (element e_i e_t) and columns by the basis of F_(s-1).
template <class F>
DenseMatrix<F> differential_matrix(const Engine<F>& eng, const std::vector<typename Engine<F>::Vec>& gens,
                                   std::size_t target_rank) {
    const std::size_t d = eng.d;
    DenseMatrix<F> m(eng.f, gens.size() * d, target_rank * d);
    for (std::size_t t = 0; t < gens.size(); ++t)
        for (std::size_t i = 0; i < d; ++i) {
            auto e = eng.basis_vector(i);
            auto v = eng.scale(e.data(), gens[t]);
            auto row = m.row(t * d + i);
            std::copy(v.begin(), v.end(), row.begin());
        }
    return m;
}

template <class F>
std::vector<typename Engine<F>::Vec> ideal_generators_mod_square(const Engine<F>& eng,
                                                                 const std::vector<typename Engine<F>::Vec>& ideal) {
    DenseMatrix<F> m(eng.f, 0, eng.d);
    for (const auto& a : ideal)
        for (const auto& b : ideal) {
            typename Engine<F>::Vec p(eng.d, eng.f.zero());
            eng.mul_acc(a.data(), b.data(), p.data());
            m.append_row(p);
        }
    const std::size_t squares = m.rows();
    for (const auto& a : ideal) m.append_row(a);
    std::vector<typename Engine<F>::Vec> out;
    for (auto k : greedy_row_basis(m))
        if (k >= squares) out.push_back(ideal[k - squares]);
    return out;
}

// Generators of the left submodule spanned by `kernel` inside a free module.
template <class F>
std::vector<typename Engine<F>::Vec> choose_generators(const Engine<F>& eng, bool local,
                                                       const std::vector<typename Engine<F>::Vec>& radical_gens,
                                                       const std::vector<typename Engine<F>::Vec>& kernel) {
    using Vec = typename Engine<F>::Vec;
    if (kernel.empty()) return {};
    const std::size_t len = kernel.front().size();
    std::vector<Vec> out;
    if (local) {
        DenseMatrix<F> m(eng.f, 0, len);
        for (const auto& x : radical_gens)
            for (const auto& v : kernel) m.append_row(eng.scale(x.data(), v));
        const std::size_t skip = m.rows();
        for (const auto& v : kernel) m.append_row(v);
        for (auto k : greedy_row_basis(m))
            if (k >= skip) out.push_back(kernel[k - skip]);
        return out;
    }
    DenseMatrix<F> span(eng.f, 0, len);
    std::size_t r = 0;
    for (const auto& v : kernel) {
        DenseMatrix<F> trial = span;
        trial.append_row(v);
        if (rank(trial) == r) continue;
        out.push_back(v);
        for (std::size_t i = 0; i < eng.d; ++i) {
            auto e = eng.basis_vector(i);
            span.append_row(eng.scale(e.data(), v));
        }
        r = rank(span);
    }
    return out;
}

template <class F>
Resolution<F> resolve(const Engine<F>& eng, const FinDimAlgebra& a, int n) {
    using Vec = typename Engine<F>::Vec;
    if (n < 0 || n > 20) throw std::invalid_argument("resolution length must be in 0..20");
    Resolution<F> res;
    res.minimal = a.is_local();
    res.betti.push_back(1);
    res.gens.emplace_back();  // no d_0
    std::vector<Vec> ideal;
    for (const auto& v : a.augmentation_ideal()) ideal.push_back(eng.from(v));
    std::vector<Vec> radical_gens;
    if (res.minimal) radical_gens = ideal_generators_mod_square(eng, ideal);
    std::vector<Vec> kernel = ideal;  // ker(F_0 -> k)
    for (int s = 1; s <= n; ++s) {
        auto gens = choose_generators(eng, res.minimal, radical_gens, kernel);
        res.betti.push_back(gens.size());
        DenseMatrix<F> m = differential_matrix(eng, gens, res.betti[static_cast<std::size_t>(s - 1)]);
        res.gens.push_back(std::move(gens));
        if (s < n) kernel = kernel_basis(m.transpose());
    }
    return res;
}

template <class R>
R visit_field(const FinDimAlgebra& a, auto&& fn) {
    return std::visit([&](auto field) -> R { return fn(Engine<decltype(field)>(a, field)); }, to_policy(a.field()));
}

// Coboundary of Hom(F, A) = A^b: (delta psi)_t = sum_u a_tu psi_u.
template <class F>
DenseMatrix<F> hom_into_algebra_matrix(const Engine<F>& eng, const std::vector<typename Engine<F>::Vec>& gens,
                                       std::size_t source_rank) {
    const std::size_t d = eng.d;
    DenseMatrix<F> m(eng.f, gens.size() * d, source_rank * d);
    for (std::size_t t = 0; t < gens.size(); ++t)
        for (std::size_t u = 0; u < source_rank; ++u)
            for (std::size_t i = 0; i < d; ++i) {
                typename Engine<F>::Vec out(d, eng.f.zero());
                auto e = eng.basis_vector(i);
                eng.mul_acc(gens[t].data() + u * d, e.data(), out.data());
                for (std::size_t l = 0; l < d; ++l) m(t * d + l, u * d + i) = out[l];
            }
    return m;
}

// Coboundary of Hom(F, k) = k^b.
template <class F>
DenseMatrix<F> hom_into_field_matrix(const Engine<F>& eng, const std::vector<typename Engine<F>::Vec>& gens,
                                     std::size_t source_rank) {
    DenseMatrix<F> m(eng.f, gens.size(), source_rank);
    for (std::size_t t = 0; t < gens.size(); ++t)
        for (std::size_t u = 0; u < source_rank; ++u) m(t, u) = eng.epsilon(gens[t].data() + u * eng.d);
    return m;
}

template <class F>
ResolutionSlice export_resolution(const Engine<F>& eng, const Resolution<F>& res) {
    ResolutionSlice out;
    out.betti = res.betti;
    out.minimal = res.minimal;
    for (std::size_t s = 1; s < res.gens.size(); ++s) {
        std::vector<std::vector<Vector>> ds;
        for (const auto& g : res.gens[s]) {
            std::vector<Vector> row;
            for (std::size_t u = 0; u < res.betti[s - 1]; ++u)
                row.push_back(eng.to(typename Engine<F>::Vec(g.begin() + static_cast<long>(u * eng.d),
                                                              g.begin() + static_cast<long>((u + 1) * eng.d))));
            ds.push_back(std::move(row));
        }
        out.differentials.push_back(std::move(ds));
    }
    return out;
}

}  // namespace

ResolutionSlice minimal_resolution(const FinDimAlgebra& a, int n) {
    return visit_field<ResolutionSlice>(a, [&](const auto& eng) { return export_resolution(eng, resolve(eng, a, n)); });
}

bool resolution_is_complex(const FinDimAlgebra& a, const ResolutionSlice& r) {
    const std::size_t d = a.dim();
    auto apply = [&](const std::vector<std::vector<Vector>>& ds, const std::vector<Vector>& x) {
        // x in F_s (b_s slots) -> F_(s-1).
        std::size_t target = ds.empty() ? 0 : ds.front().size();
        std::vector<Vector> out(target, Vector(d, 0));
        for (std::size_t t = 0; t < ds.size(); ++t)
            for (std::size_t u = 0; u < target; ++u) {
                Vector p = a.multiply(x[t], ds[t][u]);
                for (std::size_t l = 0; l < d; ++l) out[u][l] = a.field().normalize(out[u][l] + p[l]);
            }
        return out;
    };
    // epsilon o d_1 = 0.
    if (!r.differentials.empty())
        for (const auto& row : r.differentials[0]) {
            mpq_class s = 0;
            for (std::size_t l = 0; l < d; ++l) s += row[0][l] * a.augmentation()[l];
            if (a.field().normalize(s) != 0) return false;
        }
    for (std::size_t s = 1; s < r.differentials.size(); ++s)
        for (std::size_t t = 0; t < r.differentials[s].size(); ++t) {
            auto img = apply(r.differentials[s - 1], r.differentials[s][t]);
            for (const auto& v : img)
                if (!is_zero_vector(v)) return false;
        }
    return true;
}

bool resolution_entries_in_radical(const FinDimAlgebra& a, const ResolutionSlice& r) {
    for (const auto& ds : r.differentials)
        for (const auto& row : ds)
            for (const auto& entry : row) {
                mpq_class s = 0;
                for (std::size_t l = 0; l < a.dim(); ++l) s += entry[l] * a.augmentation()[l];
                if (a.field().normalize(s) != 0) return false;
            }
    return true;
}

std::vector<std::size_t> ext_k_A(const FinDimAlgebra& a, int n) {
    return visit_field<std::vector<std::size_t>>(a, [&](const auto& eng) {
        auto res = resolve(eng, a, n + 1);
        const std::size_t d = eng.d;
        std::vector<std::size_t> ranks(static_cast<std::size_t>(n) + 2, 0);  // ranks[s] = rank delta_s
        for (int s = 1; s <= n + 1; ++s) {
            auto su = static_cast<std::size_t>(s);
            ranks[su] = rank(hom_into_algebra_matrix(eng, res.gens[su], res.betti[su - 1]));
        }
        std::vector<std::size_t> dims;
        for (int s = 0; s <= n; ++s) {
            auto su = static_cast<std::size_t>(s);
            dims.push_back(res.betti[su] * d - ranks[su + 1] - ranks[su]);
        }
        return dims;
    });
}

namespace {

ExactMatrix annihilator_system(const FinDimAlgebra& a, SocleSide side, const std::vector<std::size_t>& columns) {
    auto ideal = a.augmentation_ideal();
    std::vector<Triplet> entries;
    std::size_t row = 0;
    auto add_block = [&](bool on_left) {
        for (const auto& x : ideal) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
                Vector e(a.dim(), 0);
                e[columns[c]] = 1;
                Vector p = on_left ? a.multiply(x, e) : a.multiply(e, x);
                for (std::size_t l = 0; l < a.dim(); ++l)
                    if (sgn(p[l]) != 0) entries.push_back({row + l, c, p[l]});
            }
            row += a.dim();
        }
    };
    if (side != SocleSide::Right) add_block(true);
    if (side != SocleSide::Left) add_block(false);
    return ExactMatrix(a.field(), row, columns.size(), std::move(entries));
}

}  // namespace

std::size_t socle_dim(const FinDimAlgebra& a, SocleSide side) {
    std::vector<std::size_t> all(a.dim());
    std::iota(all.begin(), all.end(), 0);
    return a.dim() - rank(annihilator_system(a, side, all));
}

std::vector<std::size_t> graded_socle(const FinDimAlgebra& a, SocleSide side) {
    auto h = a.hilbert_function();
    std::vector<std::size_t> out(h.size(), 0);
    for (std::size_t g = 0; g < h.size(); ++g) {
        std::vector<std::size_t> cols;
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (a.degrees()[k] == static_cast<int>(g)) cols.push_back(k);
        if (!cols.empty()) out[g] = cols.size() - rank(annihilator_system(a, side, cols));
    }
    return out;
}

FrobeniusReport frobenius_check(const FinDimAlgebra& a, const std::optional<Vector>& functional) {
    const Vector* lambda = functional ? &*functional : (a.functional() ? &*a.functional() : nullptr);
    if (!lambda) throw NoFunctionalSupplied("algebra has no Frobenius functional; supply one");
    if (lambda->size() != a.dim()) throw std::invalid_argument("functional has the wrong length");
    std::vector<Triplet> gram;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            mpq_class s = 0;
            const Vector& p = a.product(i, j);
            for (std::size_t l = 0; l < a.dim(); ++l) s += p[l] * (*lambda)[l];
            gram.push_back({i, j, s});
        }
    ExactMatrix g(a.field(), a.dim(), a.dim(), std::move(gram));
    FrobeniusReport r;
    r.form_rank = rank(g);
    r.nondegenerate = r.form_rank == a.dim();
    if (!r.nondegenerate) r.witness = kernel_basis(g).front();
    return r;
}

const Vector& ExtAlgebra::product(int i, std::size_t a, int j, std::size_t b) const {
    for (const auto& p : products)
        if (p.left_degree == i && p.left_index == a && p.right_degree == j && p.right_index == b) return p.coordinates;
    throw std::out_of_range("no such product in the table");
}

ExtAlgebra ext_algebra(const FinDimAlgebra& a, int n) {
    if (n < 0 || n > 12) throw std::invalid_argument("ext_algebra degree must be in 0..12");
    return visit_field<ExtAlgebra>(a, [&](const auto& eng) {
        using Eng = std::decay_t<decltype(eng)>;
        using Vec = typename Eng::Vec;
        using Fld = decltype(eng.f);
        const auto& f = eng.f;
        const std::size_t d = eng.d;
        auto res = resolve(eng, a, n + 1);
        const auto N = static_cast<std::size_t>(n);

        // Cohomology of Hom(F, k): cocycles Z^s, coboundaries B^s, class reps.
        std::vector<DenseMatrix<Fld>> delta;  // delta[s]: k^(b_(s-1)) -> k^(b_s), s >= 1
        delta.emplace_back(f, 0, 0);
        for (std::size_t s = 1; s <= N + 1; ++s) delta.push_back(hom_into_field_matrix(eng, res.gens[s], res.betti[s - 1]));
        std::vector<std::vector<Vec>> reps(N + 1), boundaries(N + 1);
        ExtAlgebra out;
        for (std::size_t s = 0; s <= N; ++s) {
            auto cocycles = kernel_basis(delta[s + 1]);
            if (s >= 1) {
                DenseMatrix<Fld> bt = delta[s].transpose();  // rows span the image
                DenseMatrix<Fld> echelon = bt;
                auto piv = rref(echelon);
                for (std::size_t k = 0; k < piv.size(); ++k) {
                    auto row = echelon.row(k);
                    boundaries[s].emplace_back(row.begin(), row.end());
                }
            }
            DenseMatrix<Fld> m(f, 0, res.betti[s]);
            for (const auto& b : boundaries[s]) m.append_row(b);
            for (const auto& z : cocycles) m.append_row(z);
            for (auto k : greedy_row_basis(m))
                if (k >= boundaries[s].size()) reps[s].push_back(cocycles[k - boundaries[s].size()]);
            out.dims.push_back(reps[s].size());
        }

        // k-linear matrices of d_j (transposed, so d_j x = y is a column solve).
        std::vector<DenseMatrix<Fld>> dt;
        dt.emplace_back(f, 0, 0);
        for (std::size_t j = 1; j <= N; ++j) dt.push_back(differential_matrix(eng, res.gens[j], res.betti[j - 1]).transpose());

        auto coordinates = [&](std::size_t s, const Vec& v) {
            DenseMatrix<Fld> m(f, res.betti[s], reps[s].size() + boundaries[s].size());
            std::size_t c = 0;
            for (const auto& r : reps[s]) {
                for (std::size_t k = 0; k < r.size(); ++k) m(k, c) = r[k];
                ++c;
            }
            for (const auto& b : boundaries[s]) {
                for (std::size_t k = 0; k < b.size(); ++k) m(k, c) = b[k];
                ++c;
            }
            auto x = solve_many(m, std::vector<Vec>{v});
            if (!x) throw LiftFailed("Yoneda product is not a cocycle");
            return Vec(x->front().begin(), x->front().begin() + static_cast<long>(reps[s].size()));
        };

        for (std::size_t ndeg = 0; ndeg <= N; ++ndeg)
            for (std::size_t yi = 0; yi < reps[ndeg].size(); ++yi) {
                const Vec& y = reps[ndeg][yi];
                // phi[j][s] = Y_j(e_s) in F_j for generators s of F_(ndeg + j).
                std::vector<std::vector<Vec>> phi(N - ndeg + 1);
                for (std::size_t s = 0; s < res.betti[ndeg]; ++s) {
                    Vec v(d, f.zero());
                    for (std::size_t k = 0; k < d; ++k) v[k] = f.mul(y[s], eng.unit[k]);
                    phi[0].push_back(std::move(v));
                }
                for (std::size_t j = 1; ndeg + j <= N; ++j) {
                    std::vector<Vec> rhs;
                    for (const auto& g : res.gens[ndeg + j]) {
                        Vec acc(res.betti[j - 1] * d, f.zero());
                        for (std::size_t u = 0; u < res.betti[ndeg + j - 1]; ++u) {
                            Vec part = eng.scale(g.data() + u * d, phi[j - 1][u]);
                            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = f.add(acc[k], part[k]);
                        }
                        rhs.push_back(std::move(acc));
                    }
                    auto x = solve_many(dt[j], rhs);
                    if (!x) throw LiftFailed("cocycle does not lift at stage " + std::to_string(j));
                    phi[j] = std::move(*x);
                }
                for (std::size_t mdeg = 0; mdeg + ndeg <= N; ++mdeg)
                    for (std::size_t xi = 0; xi < reps[mdeg].size(); ++xi) {
                        const Vec& xv = reps[mdeg][xi];
                        Vec composite(res.betti[mdeg + ndeg], f.zero());
                        for (std::size_t s = 0; s < composite.size(); ++s)
                            for (std::size_t u = 0; u < res.betti[mdeg]; ++u)
                                if (!f.is_zero(xv[u]))
                                    composite[s] = f.add(composite[s], f.mul(xv[u], eng.epsilon(phi[mdeg][s].data() + u * d)));
                        out.products.push_back({static_cast<int>(mdeg), xi, static_cast<int>(ndeg), yi,
                                                eng.to(coordinates(mdeg + ndeg, composite))});
                    }
            }
        return out;
    });
}

PolynomialCertificate polynomial_certificate(const ExtAlgebra& e) {
    PolynomialCertificate c;
    for (std::size_t i = 0; i < e.dims.size(); ++i)
        if (e.dims[i] != 1) {
            c.passed = false;
            c.witness = "Ext^" + std::to_string(i) + " has dimension " + std::to_string(e.dims[i]);
            return c;
        }
    const int n = static_cast<int>(e.dims.size()) - 1;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const Vector& ij = e.product(i, 0, j, 0);
            const Vector& ji = e.product(j, 0, i, 0);
            if (is_zero_vector(ij)) {
                c.passed = false;
                c.witness = "x_" + std::to_string(i) + " * x_" + std::to_string(j) + " = 0";
                return c;
            }
            if (ij != ji) {
                c.passed = false;
                c.witness = "x_" + std::to_string(i) + " and x_" + std::to_string(j) + " do not commute";
                return c;
            }
        }
    return c;
}

HilbertSymmetryReport hilbert_symmetry_check(const FinDimAlgebra& a) {
    HilbertSymmetryReport r;
    r.hilbert = a.hilbert_function();
    auto soc = graded_socle(a);
    r.socle_dim = socle_dim(a);
    for (std::size_t g = 0; g < soc.size(); ++g)
        if (soc[g]) r.socle_degree = static_cast<int>(g);
    r.applicable = r.socle_dim == 1;
    if (!r.applicable) return r;
    const auto s = static_cast<std::size_t>(r.socle_degree);
    r.symmetric = s + 1 == r.hilbert.size();
    for (std::size_t i = 0; r.symmetric && i <= s; ++i) r.symmetric = r.hilbert[i] == r.hilbert[s - i];
    r.passed = r.symmetric;
    return r;
}

std::vector<std::vector<int>> cyclic_group_table(int n) {
    if (n < 1) throw NotAGroup("cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return t;
}

std::vector<std::vector<int>> product_group_table(const std::vector<std::vector<int>>& g,
                                                  const std::vector<std::vector<int>>& h) {
    const std::size_t m = g.size(), n = h.size();
    std::vector<std::vector<int>> t(m * n, std::vector<int>(m * n));
    for (std::size_t a = 0; a < m * n; ++a)
        for (std::size_t b = 0; b < m * n; ++b)
            t[a][b] = g[a / n][b / n] * static_cast<int>(n) + h[a % n][b % n];
    return t;
}

std::vector<std::vector<int>> dihedral_group_table(int n) {
    // r^k s^e has index k + n e; s r = r^-1 s.
    const int order = 2 * n;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            int a = x % n, e = x / n, b = y % n, f = y / n;
            int k = ((a + (e ? -b : b)) % n + n) % n;
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = k + n * ((e + f) % 2);
        }
    return t;
}

std::vector<std::vector<int>> quaternion_group_table() {
    // Index = unit + 4 * negative, units 1, i, j, k.
    static const int unit_product[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int u = x % 4, v = y % 4;
            int neg = (x / 4 + y / 4 + sign[u][v]) % 2;
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = unit_product[u][v] + 4 * neg;
        }
    return t;
}

}  // namespace loco
