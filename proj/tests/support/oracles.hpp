#pragma once

// Reference computations used as test oracles. Everything here is written
// from scratch against plain vectors so it shares no code path with the
// library beyond the value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "loco/findim.hpp"
#include "loco/monomial_ideal.hpp"
#include "loco/plocal.hpp"

namespace oracle {

using Row = std::vector<mpq_class>;

/// Plain Gaussian elimination. Over F_p (p > 0) entries are reduced to
/// integers mod p and pivots inverted by Fermat.
inline std::size_t rank(std::vector<Row> m, unsigned p = 0) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    auto reduce = [p](mpq_class x) {
        if (p == 0) return x;
        mpz_class num = x.get_num() % p, den = x.get_den() % p;
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
        mpz_class r = (num * inv) % p;
        if (r < 0) r += p;
        return mpq_class(r);
    };
    for (auto& row : m)
        for (auto& x : row) x = reduce(x);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        mpq_class inv = p ? reduce(mpq_class(1) / m[r][c]) : mpq_class(1) / m[r][c];
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            mpq_class f = m[i][c] * inv;
            for (std::size_t k = c; k < cols; ++k) m[i][k] = reduce(m[i][k] - f * m[r][k]);
        }
        ++r;
    }
    return r;
}

inline unsigned characteristic(const loco::FieldSpec& f) { return f.is_prime_field() ? f.characteristic() : 0; }

// ---------------------------------------------------------------------------
// Local cohomology of M = k[x]/J supported at a monomial ideal (a_1..a_m),
// from the ordinary Koszul complex on a_1^s..a_m^s for one large s. In a fixed
// degree the direct system is eventually constant, so two large exponents
// agreeing is the stability evidence; callers compare s and 2s.

inline bool in_ideal(const std::vector<int>& b, const std::vector<std::vector<int>>& gens) {
    for (const auto& g : gens) {
        bool div = true;
        for (std::size_t i = 0; i < b.size() && div; ++i) div = g[i] <= b[i];
        if (div) return true;
    }
    return false;
}

/// dim H^i(K(a^s) tensor M)_deg for i = 0..m.
inline std::vector<std::size_t> koszul_dims(const std::vector<std::vector<int>>& ideal_gens,
                                            const std::vector<std::vector<int>>& module_relations, int s,
                                            const std::vector<int>& degree, unsigned p) {
    const std::size_t m = ideal_gens.size(), n = degree.size();
    const unsigned subsets = 1u << m;
    // Piece of the summand for S in this degree: x^(degree + s * sum_{i in S} a_i).
    auto exponent = [&](unsigned S) {
        std::vector<int> e = degree;
        for (std::size_t i = 0; i < m; ++i)
            if (S & (1u << i))
                for (std::size_t v = 0; v < n; ++v) e[v] += s * ideal_gens[i][v];
        return e;
    };
    auto alive = [&](unsigned S) {
        auto e = exponent(S);
        for (int x : e)
            if (x < 0) return false;
        return !in_ideal(e, module_relations);
    };
    std::vector<std::vector<unsigned>> by_size(m + 1);
    for (unsigned S = 0; S < subsets; ++S)
        if (alive(S)) by_size[static_cast<std::size_t>(__builtin_popcount(S))].push_back(S);
    // d^i: by_size[i] -> by_size[i+1]; rows = target.
    std::vector<std::size_t> ranks(m + 2, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (by_size[i].empty() || by_size[i + 1].empty()) continue;
        std::vector<Row> mat(by_size[i + 1].size(), Row(by_size[i].size(), 0));
        for (std::size_t c = 0; c < by_size[i].size(); ++c)
            for (std::size_t r = 0; r < by_size[i + 1].size(); ++r) {
                unsigned S = by_size[i][c], T = by_size[i + 1][r];
                if ((S & T) != S) continue;
                unsigned j = __builtin_ctz(T & ~S);
                int sign = __builtin_popcount(S & ((1u << j) - 1)) % 2 ? -1 : 1;
                mat[r][c] = sign;
            }
        ranks[i + 1] = rank(mat, p);  // rank of d^i stored at i+1
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= m; ++i) out.push_back(by_size[i].size() - ranks[i + 1] - ranks[i]);
    return out;
}

/// The whole box as {index -> {degree -> dim}} with zeros dropped; nullopt
/// when exponents s and 2s disagree somewhere (not yet stable).
inline std::optional<std::map<int, std::map<std::vector<int>, std::size_t>>> local_cohomology(
    const std::vector<std::vector<int>>& ideal_gens, const std::vector<std::vector<int>>& module_relations,
    const std::vector<int>& lo, const std::vector<int>& hi, unsigned p, int s = 16) {
    std::map<int, std::map<std::vector<int>, std::size_t>> out;
    std::vector<int> a = lo;
    while (true) {
        auto d1 = koszul_dims(ideal_gens, module_relations, s, a, p);
        auto d2 = koszul_dims(ideal_gens, module_relations, 2 * s, a, p);
        if (d1 != d2) return std::nullopt;
        for (std::size_t i = 0; i < d1.size(); ++i)
            if (d1[i]) out[static_cast<int>(i)][a] = d1[i];
        std::size_t k = 0;
        while (k < a.size() && a[k] == hi[k]) a[k++] = lo[k];
        if (k == a.size()) break;
        ++a[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Z/p^N truncation. For an atom G, v(G/p^N) and v(G[p^N]) (p-exponents of the
// orders) are elementary.

struct Exponents {
    long quotient;  // v(G / p^N)
    long torsion;   // v(G[p^N])
};

inline Exponents atom_exponents(const loco::Atom& a, long n) {
    using K = loco::AtomKind;
    switch (a.kind) {
        case K::Z:
        case K::Zp: return {n, 0};
        case K::ZModPk: return {std::min<long>(a.k, n), std::min<long>(a.k, n)};
        case K::Zpinf:
        case K::QpModZp: return {0, n};
        default: return {0, 0};  // Z[1/p], Q, Qp: p is invertible
    }
}

inline Exponents object_exponents(const loco::PLocalObject& g, long n) {
    Exponents e{0, 0};
    for (const auto& a : g.atoms()) {
        auto x = atom_exponents(a, n);
        e.quotient += x.quotient;
        e.torsion += x.torsion;
    }
    return e;
}

/// Tower X_0 <- X_1 <- ... of cyclic p-groups Z/p^(order[k]); the map
/// X_(k+1) -> X_k is multiplication by p^(shift[k]). Returns v(|lim|).
inline long tower_limit(const std::vector<long>& order, const std::vector<long>& shift) {
    // Only the first half is read so that every term sees a long tail of maps.
    long best = 0;
    for (std::size_t k = 0; k < order.size() / 2; ++k) {
        // Stable image in X_k: image of multiplication by p^(sum of shifts).
        long total = 0, image = order[k];
        for (std::size_t j = k; j + 1 < order.size(); ++j) {
            total += shift[j];
            image = std::max<long>(0, order[k] - total);
        }
        best = std::max(best, image);
    }
    return best;
}

/// v(|Hom(A, Z/p^m)|) and v(|Ext(A, Z/p^m)|), A = colim of a cyclic tower.
inline std::pair<long, long> hom_ext_into_cyclic(const loco::Atom& a, long m) {
    using K = loco::AtomKind;
    const int depth = 64;
    switch (a.kind) {
        case K::Z: return {m, 0};
        case K::ZModPk: return {std::min<long>(a.k, m), std::min<long>(a.k, m)};
        case K::Zpinf:
        case K::QpModZp: {
            // A_k = Z/p^k with 1 -> p. Hom(A_k, G) = G[p^k], restriction is
            // multiplication by p; Ext(A_k, G) = G/p^k, restriction is the
            // projection.
            std::vector<long> ho, hs, eo, es;
            for (int k = 1; k <= depth; ++k) {
                ho.push_back(std::min<long>(k, m));
                hs.push_back(1);
                eo.push_back(std::min<long>(k, m));
                es.push_back(0);
            }
            return {tower_limit(ho, hs), tower_limit(eo, es)};
        }
        case K::ZInvP: {
            // A_k = Z with multiplication by p: Hom = G with maps p, Ext = 0.
            std::vector<long> ho(depth, m), hs(depth, 1);
            return {tower_limit(ho, hs), 0};
        }
        default: throw std::invalid_argument("no cyclic tower for " + a.to_string());
    }
}

/// (e_-1, e_0, e_1) for RHom(A, B) tensor^L Z/p^N from the tower side.
inline std::array<long, 3> truncated_rhom_tower(const loco::Atom& a, const loco::Atom& b, long n) {
    auto eb = atom_exponents(b, n);
    auto [h_tor, e_tor] = hom_ext_into_cyclic(a, eb.torsion);   // RHom(A, B[p^N]) shifted by 1
    auto [h_quo, e_quo] = hom_ext_into_cyclic(a, eb.quotient);  // RHom(A, B/p^N)
    return {h_tor, e_tor + h_quo, e_quo};
}

/// The same triple from a Hom/Ext pair.
inline std::array<long, 3> truncated_rhom_table(const loco::HomExt& he, long n) {
    auto h = object_exponents(he.hom, n), e = object_exponents(he.ext, n);
    return {h.torsion, h.quotient + e.torsion, e.quotient};
}

// ---------------------------------------------------------------------------
// Tor^A_s(k, k) from the normalized bar complex on the augmentation ideal.

inline std::vector<std::size_t> bar_tor_dims(const loco::FinDimAlgebra& a, int max_s) {
    const unsigned p = characteristic(a.field());
    auto ideal = a.augmentation_ideal();
    const std::size_t r = ideal.size();
    // Coordinates of products of ideal basis vectors in the ideal basis.
    std::vector<Row> basis_cols;
    std::vector<std::vector<Row>> mult(r, std::vector<Row>(r));
    {
        // Solve for coordinates by elimination on [ideal^T | v].
        auto coords = [&](const Row& v) {
            const std::size_t d = a.dim();
            std::vector<Row> aug(d, Row(r + 1, 0));
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t c = 0; c < r; ++c) aug[i][c] = ideal[c][i];
                aug[i][r] = v[i];
            }
            auto red = [p](mpq_class x) {
                if (p == 0) return x;
                mpz_class num = x.get_num() % p, den = x.get_den() % p, inv;
                mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
                mpz_class q = (num * inv) % p;
                if (q < 0) q += p;
                return mpq_class(q);
            };
            std::vector<std::size_t> pivcol;
            std::size_t row = 0;
            for (auto& rr : aug)
                for (auto& x : rr) x = red(x);
            for (std::size_t c = 0; c < r && row < d; ++c) {
                std::size_t piv = row;
                while (piv < d && sgn(aug[piv][c]) == 0) ++piv;
                if (piv == d) continue;
                std::swap(aug[piv], aug[row]);
                mpq_class inv = red(mpq_class(1) / aug[row][c]);
                for (auto& x : aug[row]) x = red(x * inv);
                for (std::size_t i = 0; i < d; ++i)
                    if (i != row && sgn(aug[i][c]) != 0) {
                        mpq_class f = aug[i][c];
                        for (std::size_t k = 0; k <= r; ++k) aug[i][k] = red(aug[i][k] - f * aug[row][k]);
                    }
                pivcol.push_back(c);
                ++row;
            }
            Row x(r, 0);
            for (std::size_t k = 0; k < pivcol.size(); ++k) x[pivcol[k]] = aug[k][r];
            return x;
        };
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) mult[i][j] = coords(a.multiply(ideal[i], ideal[j]));
    }
    auto pow = [&](int s) {
        std::size_t v = 1;
        for (int k = 0; k < s; ++k) v *= r;
        return v;
    };
    // d_s: B_s -> B_(s-1), sum_i (-1)^i merge positions i, i+1.
    std::vector<std::size_t> ranks(static_cast<std::size_t>(max_s) + 2, 0);
    for (int s = 2; s <= max_s + 1; ++s) {
        std::size_t src = pow(s), tgt = pow(s - 1);
        std::vector<Row> mat(tgt, Row(src, 0));
        std::vector<std::size_t> digits(static_cast<std::size_t>(s));
        for (std::size_t c = 0; c < src; ++c) {
            std::size_t x = c;
            for (int k = s - 1; k >= 0; --k) {
                digits[static_cast<std::size_t>(k)] = x % r;
                x /= r;
            }
            for (int i = 0; i + 1 < s; ++i) {
                const Row& prod = mult[digits[static_cast<std::size_t>(i)]][digits[static_cast<std::size_t>(i + 1)]];
                for (std::size_t l = 0; l < r; ++l) {
                    if (sgn(prod[l]) == 0) continue;
                    std::size_t idx = 0;
                    for (int k = 0; k < s; ++k) {
                        if (k == i + 1) continue;
                        std::size_t dgt = k == i ? l : digits[static_cast<std::size_t>(k)];
                        idx = idx * r + dgt;
                    }
                    mat[idx][c] += (i % 2 ? -1 : 1) * prod[l];
                }
            }
        }
        ranks[static_cast<std::size_t>(s)] = rank(mat, p);
    }
    std::vector<std::size_t> out;
    for (int s = 0; s <= max_s; ++s)
        out.push_back(pow(s) - ranks[static_cast<std::size_t>(s)] - ranks[static_cast<std::size_t>(s) + 1]);
    return out;
}

// ---------------------------------------------------------------------------
// Hand-rolled generators.

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    bool coin() { return uniform(0, 1) == 1; }

    loco::Monomial monomial(std::size_t n, int max_exp, bool nonconstant = true) {
        while (true) {
            std::vector<int> e(n);
            for (auto& x : e) x = uniform(0, max_exp);
            loco::Monomial m(e);
            if (!nonconstant || !m.is_one()) return m;
        }
    }
    std::vector<loco::Monomial> monomials(std::size_t n, int count, int max_exp) {
        std::vector<loco::Monomial> out;
        for (int k = 0; k < count; ++k) out.push_back(monomial(n, max_exp));
        return out;
    }
    loco::PLocalObject plocal(int p, int max_atoms = 4, int max_k = 3) {
        auto atoms = loco::all_atoms(max_k);
        std::vector<loco::Atom> pick;
        for (int k = uniform(0, max_atoms); k > 0; --k) pick.push_back(atoms[static_cast<std::size_t>(uniform(0, static_cast<int>(atoms.size()) - 1))]);
        return loco::PLocalObject(p, pick);
    }
};

inline std::vector<std::vector<int>> exps(const std::vector<loco::Monomial>& ms) {
    std::vector<std::vector<int>> out;
    for (const auto& m : ms) out.push_back(m.exponents());
    return out;
}

}  // namespace oracle
