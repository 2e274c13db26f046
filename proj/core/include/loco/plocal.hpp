#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loco/errors.hpp"

namespace loco {

/// Isomorphism types of the closed class of abelian groups used for the
/// ideal (p) of Z. QpModZp is isomorphic to Zpinf; it is kept as a spelling
/// and identified with Zpinf by canonical().
enum class AtomKind { Z, ZModPk, Zpinf, ZInvP, Zp, Q, Qp, QpModZp };

struct Atom {
    AtomKind kind = AtomKind::Z;
    int k = 0;  // exponent of Z/p^k, zero for every other kind

    static Atom z() { return {AtomKind::Z, 0}; }
    static Atom cyclic(int k);
    static Atom zpinf() { return {AtomKind::Zpinf, 0}; }
    static Atom z_inv_p() { return {AtomKind::ZInvP, 0}; }
    static Atom p_adic_integers() { return {AtomKind::Zp, 0}; }
    static Atom q() { return {AtomKind::Q, 0}; }
    static Atom p_adic_numbers() { return {AtomKind::Qp, 0}; }
    static Atom qp_mod_zp() { return {AtomKind::QpModZp, 0}; }

    /// "Z", "Z/p^3" (also "Z/p"), "Zpinf" (also "Zp8"), "Z[1/p]", "Zp", "Q",
    /// "Qp", "Qp/Zp". Throws OutsideClass for anything else.
    static Atom parse(const std::string& text);
    std::string to_string() const;
    Atom canonical() const;

    auto operator<=>(const Atom&) const = default;
};

/// The eight atoms, with Z/p^k represented by Z/p^1 .. Z/p^max_k.
std::vector<Atom> all_atoms(int max_k = 1);

/// Finite direct sum of atoms for a fixed prime p.
class PLocalObject {
public:
    explicit PLocalObject(int p = 2);
    PLocalObject(int p, std::vector<Atom> atoms);
    static PLocalObject zero(int p) { return PLocalObject(p); }
    static PLocalObject of(int p, Atom a) { return PLocalObject(p, {a}); }
    /// Parses a list of atom strings; "0" or an empty list is the zero group.
    static PLocalObject parse(int p, const std::vector<std::string>& atoms);

    int prime() const { return p_; }
    /// Atoms in sorted order, as given (not canonicalized).
    const std::vector<Atom>& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }
    PLocalObject canonical() const;

    PLocalObject& operator+=(const PLocalObject& other);
    friend PLocalObject operator+(PLocalObject a, const PLocalObject& b) { return a += b; }
    /// Equality of isomorphism classes (canonical multisets).
    bool operator==(const PLocalObject& other) const;

    /// "0", or atoms joined by " + ", e.g. "Z + Z/p^2".
    std::string to_string() const;
    std::vector<std::string> to_strings() const;

private:
    int p_;
    std::vector<Atom> atoms_;
};

/// Degree-0 and degree-1 parts of a derived functor. For gamma_p these are
/// H^0, H^1; for lambda_p they are L_0, L_1.
struct DerivedPair {
    PLocalObject degree0;
    PLocalObject degree1;
    bool operator==(const DerivedPair&) const = default;
};

struct HomExt {
    PLocalObject hom;
    PLocalObject ext;
};

/// Hom(A, B) and Ext(A, B), additive in B. A must be Z, Z/p^k, Zpinf (or
/// Qp/Zp) or Z[1/p]; any other A, and Ext(Z[1/p], Z) = Zp/Z, raises
/// OutsideClass.
HomExt hom_ext(const Atom& a, const PLocalObject& b);

/// H^*_(p)(M): p-power torsion and M[1/p] modulo the image of M.
DerivedPair gamma_p(const PLocalObject& m);
/// L_0 = Ext(Zpinf, M), L_1 = Hom(Zpinf, M).
DerivedPair lambda_p(const PLocalObject& m);
/// M[1/p].
PLocalObject localize_p(const PLocalObject& m);

/// Cech data for (p): cohomology CH^0 = M[1/p] and, when it stays in the
/// class, homology CH_0 = Hom(Z[1/p], M), CH_-1 = Ext(Z[1/p], M).
struct CechData {
    PLocalObject cohomology0;
    std::optional<PLocalObject> homology0;
    std::optional<PLocalObject> homology_minus1;
    std::string outside_reason;  // set when homology is absent
};
CechData cech_p(const PLocalObject& m);

/// Cohomologically graded object: degree -> group. Degrees with the zero
/// group are not stored.
class GradedObject {
public:
    explicit GradedObject(int p) : p_(p) {}
    static GradedObject concentrated(const PLocalObject& m, int degree = 0);

    int prime() const { return p_; }
    const std::map<int, PLocalObject>& parts() const { return parts_; }
    PLocalObject at(int degree) const;
    void add(int degree, const PLocalObject& m);
    bool operator==(const GradedObject& other) const;
    std::string to_string() const;

private:
    int p_;
    std::map<int, PLocalObject> parts_;
};

/// Derived functors applied to a graded object over Z (every complex over Z
/// splits): gamma puts H^i(X^j) in degree i + j, lambda puts L_s(X^j) in
/// degree j - s.
GradedObject apply_gamma(const GradedObject& x);
GradedObject apply_lambda(const GradedObject& x);

/// Additive invariants of an abelian group in the class: chi_N = log_p of
/// |M / p^N| / |M[p^N]| (the Euler characteristic of M tensor^L Z/p^N) and
/// chi_l = the same for a prime l != p at N = 1.
long chi_p(const Atom& a, int n);
long chi_away(const Atom& a);

struct CertificateReport {
    bool passed = true;
    std::string witness;
};

/// Necessary condition for 0 -> terms[0] -> ... -> terms.back() -> 0 to be
/// exact: the alternating sums of chi_N (N = 8, 12) and chi_l vanish. The
/// first and last terms must also embed / be hit, which for the patterns
/// used here is the same condition.
CertificateReport exact_sequence_certificate(const std::vector<PLocalObject>& terms);

/// Four-term cohomology sequence 0 -> H^0 -> M -> CH^0 -> H^1 -> 0, and when
/// the Cech homology is in class the six-term sequence
/// 0 -> L_1 -> CH_0 -> M -> L_0 -> CH_-1 -> 0.
CertificateReport uct_certificate(const PLocalObject& m);

/// Gamma Gamma = Gamma, Lambda Lambda = Lambda, Lambda Gamma = Lambda and
/// Gamma Lambda = Gamma on each sample, as graded isomorphism classes.
struct FunctorLawsReport {
    bool passed = true;
    std::size_t samples = 0;
    std::vector<std::string> failures;
};
FunctorLawsReport functor_laws_check(const std::vector<PLocalObject>& samples);

}  // namespace loco
