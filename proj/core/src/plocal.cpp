#include "loco/plocal.hpp"

#include <algorithm>
#include <regex>

#include "loco/field.hpp"

namespace loco {

Atom Atom::cyclic(int k) {
    if (k < 1) throw OutsideClass("Z/p^k needs k >= 1, got " + std::to_string(k));
    return {AtomKind::ZModPk, k};
}

Atom Atom::parse(const std::string& text) {
    static const std::regex cyclic_re(R"(Z/p(\^([0-9]+))?)");
    std::smatch m;
    if (std::regex_match(text, m, cyclic_re)) return cyclic(m[2].matched ? std::stoi(m[2].str()) : 1);
    if (text == "Z") return z();
    if (text == "Zpinf" || text == "Zp8") return zpinf();
    if (text == "Z[1/p]") return z_inv_p();
    if (text == "Zp") return p_adic_integers();
    if (text == "Q") return q();
    if (text == "Qp") return p_adic_numbers();
    if (text == "Qp/Zp") return qp_mod_zp();
    throw OutsideClass("unknown atom '" + text + "'");
}

std::string Atom::to_string() const {
    switch (kind) {
        case AtomKind::Z: return "Z";
        case AtomKind::ZModPk: return "Z/p^" + std::to_string(k);
        case AtomKind::Zpinf: return "Zpinf";
        case AtomKind::ZInvP: return "Z[1/p]";
        case AtomKind::Zp: return "Zp";
        case AtomKind::Q: return "Q";
        case AtomKind::Qp: return "Qp";
        case AtomKind::QpModZp: return "Qp/Zp";
    }
    return "?";
}

Atom Atom::canonical() const { return kind == AtomKind::QpModZp ? zpinf() : *this; }

std::vector<Atom> all_atoms(int max_k) {
    std::vector<Atom> out{Atom::z()};
    for (int k = 1; k <= max_k; ++k) out.push_back(Atom::cyclic(k));
    for (auto a : {Atom::zpinf(), Atom::z_inv_p(), Atom::p_adic_integers(), Atom::q(), Atom::p_adic_numbers(),
                   Atom::qp_mod_zp()})
        out.push_back(a);
    return out;
}

PLocalObject::PLocalObject(int p) : p_(p) {
    if (!is_prime(static_cast<unsigned long>(p < 0 ? 0 : p))) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

PLocalObject::PLocalObject(int p, std::vector<Atom> atoms) : PLocalObject(p) {
    atoms_ = std::move(atoms);
    std::sort(atoms_.begin(), atoms_.end());
}

PLocalObject PLocalObject::parse(int p, const std::vector<std::string>& atoms) {
    std::vector<Atom> out;
    for (const auto& s : atoms)
        if (s != "0") out.push_back(Atom::parse(s));
    return PLocalObject(p, std::move(out));
}

PLocalObject PLocalObject::canonical() const {
    std::vector<Atom> c;
    for (const auto& a : atoms_) c.push_back(a.canonical());
    return PLocalObject(p_, std::move(c));
}

PLocalObject& PLocalObject::operator+=(const PLocalObject& other) {
    if (other.p_ != p_) throw std::invalid_argument("adding groups for different primes");
    atoms_.insert(atoms_.end(), other.atoms_.begin(), other.atoms_.end());
    std::sort(atoms_.begin(), atoms_.end());
    return *this;
}

bool PLocalObject::operator==(const PLocalObject& other) const {
    return p_ == other.p_ && canonical().atoms_ == other.canonical().atoms_;
}

std::string PLocalObject::to_string() const {
    if (atoms_.empty()) return "0";
    std::string out;
    for (const auto& a : atoms_) out += (out.empty() ? "" : " + ") + a.to_string();
    return out;
}

std::vector<std::string> PLocalObject::to_strings() const {
    std::vector<std::string> out;
    for (const auto& a : atoms_) out.push_back(a.to_string());
    return out;
}

namespace {

using K = AtomKind;

// Hom and Ext of one atom pair; nullopt components are outside the class.
struct Entry {
    std::vector<Atom> hom;
    std::optional<std::vector<Atom>> ext;
};

Entry table_entry(const Atom& a, const Atom& b_in) {
    const Atom b = b_in.canonical();
    switch (a.canonical().kind) {
        case K::Z:
            return {{b_in}, std::vector<Atom>{}};
        case K::ZModPk: {
            const int k = a.k;
            switch (b.kind) {
                case K::Z: return {{}, std::vector<Atom>{Atom::cyclic(k)}};
                case K::ZModPk: {
                    Atom c = Atom::cyclic(std::min(k, b.k));
                    return {{c}, std::vector<Atom>{c}};
                }
                case K::Zpinf: return {{Atom::cyclic(k)}, std::vector<Atom>{}};
                case K::Zp: return {{}, std::vector<Atom>{Atom::cyclic(k)}};
                default: return {{}, std::vector<Atom>{}};  // Z[1/p], Q, Qp
            }
        }
        case K::Zpinf:
            switch (b.kind) {
                case K::Z: return {{}, std::vector<Atom>{Atom::p_adic_integers()}};
                case K::ZModPk: return {{}, std::vector<Atom>{b}};
                case K::Zpinf: return {{Atom::p_adic_integers()}, std::vector<Atom>{}};
                case K::Zp: return {{}, std::vector<Atom>{Atom::p_adic_integers()}};
                default: return {{}, std::vector<Atom>{}};
            }
        case K::ZInvP:
            switch (b.kind) {
                case K::Z: return {{}, std::nullopt};  // Ext = Zp/Z
                case K::Zpinf: return {{Atom::p_adic_numbers()}, std::vector<Atom>{}};
                case K::ZInvP: return {{Atom::z_inv_p()}, std::vector<Atom>{}};
                case K::Q: return {{Atom::q()}, std::vector<Atom>{}};
                case K::Qp: return {{Atom::p_adic_numbers()}, std::vector<Atom>{}};
                default: return {{}, std::vector<Atom>{}};  // Z/p^k, Zp
            }
        default:
            throw OutsideClass("Hom/Ext out of " + a.to_string() + " is not tabulated");
    }
}

}  // namespace

HomExt hom_ext(const Atom& a, const PLocalObject& b) {
    const int p = b.prime();
    HomExt out{PLocalObject(p), PLocalObject(p)};
    for (const auto& atom : b.atoms()) {
        Entry e = table_entry(a, atom);
        if (!e.ext)
            throw OutsideClass("Ext(" + a.to_string() + ", " + atom.to_string() + ") = Zp/Z is not in the class");
        out.hom += PLocalObject(p, e.hom);
        out.ext += PLocalObject(p, *e.ext);
    }
    return out;
}

DerivedPair gamma_p(const PLocalObject& m) {
    const int p = m.prime();
    DerivedPair out{PLocalObject(p), PLocalObject(p)};
    for (const auto& a : m.atoms()) {
        switch (a.kind) {
            case K::Z: out.degree1 += PLocalObject::of(p, Atom::zpinf()); break;
            case K::ZModPk:
            case K::Zpinf:
            case K::QpModZp: out.degree0 += PLocalObject::of(p, a); break;
            case K::Zp: out.degree1 += PLocalObject::of(p, Atom::qp_mod_zp()); break;
            case K::ZInvP:
            case K::Q:
            case K::Qp: break;
        }
    }
    return out;
}

DerivedPair lambda_p(const PLocalObject& m) {
    HomExt he = hom_ext(Atom::zpinf(), m);
    return {he.ext, he.hom};
}

PLocalObject localize_p(const PLocalObject& m) {
    const int p = m.prime();
    PLocalObject out(p);
    for (const auto& a : m.atoms()) {
        switch (a.kind) {
            case K::Z:
            case K::ZInvP: out += PLocalObject::of(p, Atom::z_inv_p()); break;
            case K::Zp:
            case K::Qp: out += PLocalObject::of(p, Atom::p_adic_numbers()); break;
            case K::Q: out += PLocalObject::of(p, Atom::q()); break;
            default: break;  // p-power torsion dies
        }
    }
    return out;
}

CechData cech_p(const PLocalObject& m) {
    CechData out{localize_p(m), std::nullopt, std::nullopt, {}};
    try {
        HomExt he = hom_ext(Atom::z_inv_p(), m);
        out.homology0 = he.hom;
        out.homology_minus1 = he.ext;
    } catch (const OutsideClass& e) {
        out.outside_reason = e.what();
    }
    return out;
}

GradedObject GradedObject::concentrated(const PLocalObject& m, int degree) {
    GradedObject g(m.prime());
    g.add(degree, m);
    return g;
}

PLocalObject GradedObject::at(int degree) const {
    auto it = parts_.find(degree);
    return it == parts_.end() ? PLocalObject(p_) : it->second;
}

void GradedObject::add(int degree, const PLocalObject& m) {
    if (m.is_zero()) return;
    auto [it, inserted] = parts_.emplace(degree, m);
    if (!inserted) it->second += m;
}

bool GradedObject::operator==(const GradedObject& other) const {
    if (p_ != other.p_) return false;
    for (const auto& [d, m] : parts_)
        if (!(other.at(d) == m)) return false;
    for (const auto& [d, m] : other.parts_)
        if (!(at(d) == m)) return false;
    return true;
}

std::string GradedObject::to_string() const {
    if (parts_.empty()) return "0";
    std::string out;
    for (const auto& [d, m] : parts_) out += (out.empty() ? "" : ", ") + ("[" + std::to_string(d) + "] " + m.to_string());
    return out;
}

GradedObject apply_gamma(const GradedObject& x) {
    GradedObject out(x.prime());
    for (const auto& [j, m] : x.parts()) {
        DerivedPair h = gamma_p(m);
        out.add(j, h.degree0);
        out.add(j + 1, h.degree1);
    }
    return out;
}

GradedObject apply_lambda(const GradedObject& x) {
    GradedObject out(x.prime());
    for (const auto& [j, m] : x.parts()) {
        DerivedPair l = lambda_p(m);
        out.add(j, l.degree0);
        out.add(j - 1, l.degree1);
    }
    return out;
}

long chi_p(const Atom& a, int n) {
    switch (a.kind) {
        case K::Z:
        case K::Zp: return n;
        case K::Zpinf:
        case K::QpModZp: return -n;
        default: return 0;  // Z/p^k contributes min(k,n) - min(k,n)
    }
}

long chi_away(const Atom& a) { return (a.kind == K::Z || a.kind == K::ZInvP) ? 1 : 0; }

CertificateReport exact_sequence_certificate(const std::vector<PLocalObject>& terms) {
    CertificateReport r;
    auto alternating = [&](auto invariant) {
        long total = 0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            long t = 0;
            for (const auto& a : terms[i].atoms()) t += invariant(a);
            total += (i % 2 == 0) ? t : -t;
        }
        return total;
    };
    for (int n : {8, 12}) {
        long s = alternating([n](const Atom& a) { return chi_p(a, n); });
        if (s != 0) {
            r.passed = false;
            r.witness = "alternating chi_" + std::to_string(n) + " = " + std::to_string(s);
            return r;
        }
    }
    if (long s = alternating(chi_away); s != 0) {
        r.passed = false;
        r.witness = "alternating rank away from p = " + std::to_string(s);
    }
    return r;
}

CertificateReport uct_certificate(const PLocalObject& m) {
    DerivedPair g = gamma_p(m);
    CechData c = cech_p(m);
    CertificateReport r = exact_sequence_certificate({g.degree0, m, c.cohomology0, g.degree1});
    if (!r.passed) {
        r.witness = "cohomology sequence for " + m.to_string() + ": " + r.witness;
        return r;
    }
    if (c.homology0) {
        DerivedPair l = lambda_p(m);
        r = exact_sequence_certificate({l.degree1, *c.homology0, m, l.degree0, *c.homology_minus1});
        if (!r.passed) r.witness = "homology sequence for " + m.to_string() + ": " + r.witness;
    }
    return r;
}

FunctorLawsReport functor_laws_check(const std::vector<PLocalObject>& samples) {
    FunctorLawsReport r;
    for (const auto& m : samples) {
        ++r.samples;
        GradedObject x = GradedObject::concentrated(m);
        GradedObject g = apply_gamma(x), l = apply_lambda(x);
        auto expect = [&](const GradedObject& got, const GradedObject& want, const char* law) {
            if (!(got == want)) {
                r.passed = false;
                r.failures.push_back(std::string(law) + " fails on " + m.to_string() + ": " + got.to_string() +
                                     " vs " + want.to_string());
            }
        };
        expect(apply_gamma(g), g, "Gamma Gamma = Gamma");
        expect(apply_lambda(l), l, "Lambda Lambda = Lambda");
        expect(apply_lambda(g), l, "Lambda Gamma = Lambda");
        expect(apply_gamma(l), g, "Gamma Lambda = Gamma");
    }
    return r;
}

}  // namespace loco
