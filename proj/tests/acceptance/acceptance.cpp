// Acceptance run: one PASS/FAIL line per criterion with its time limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loco/cli/job.hpp"
#include "loco/errors.hpp"
#include "loco/ext_oracle.hpp"
#include "loco/findim.hpp"
#include "loco/koszul_cech.hpp"
#include "loco/plocal.hpp"
#include "oracles.hpp"

using namespace loco;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

struct Instance {
    std::string name;
    RingSpec ring;
    std::vector<Monomial> gens;
    MonomialIdeal module_relations;
    DegreeBox box;
};

std::string degree_string(const Multidegree& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "]";
}

std::string table_difference(const DegreeTable& x, const DegreeTable& y) {
    auto d = x.first_difference(y);
    if (!d) return "";
    return "H^" + std::to_string(d->index) + " at " + degree_string(d->degree);
}

// Cohomology instances of the corpus: jobs with an ideal and an oracle-compare task.
std::vector<Instance> corpus_instances() {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(LOCO_CORPUS_DIR))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Instance> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        json j = json::parse(in);
        if (!j.contains("ideal") || !j.contains("tasks")) continue;
        bool compare = false;
        for (const auto& t : j["tasks"]) compare = compare || t == "oracle-compare";
        if (!compare) continue;
        std::size_t n = j["ring"].get<std::size_t>();
        FieldSpec field = parse_field(j["field"].get<std::string>());
        std::vector<Monomial> gens;
        for (const auto& g : j["ideal"]) gens.push_back(cli::parse_monomial(g, n));
        std::vector<Monomial> rels;
        if (j["module"].is_object())
            for (const auto& r : j["module"]["relations"]) rels.push_back(cli::parse_monomial(r, n));
        auto cube = j["box"]["cube"];
        out.push_back({j["name"].get<std::string>(), RingSpec(field, n), gens, MonomialIdeal(n, rels),
                       DegreeBox::cube(n, cube[0].get<int>(), cube[1].get<int>())});
    }
    return out;
}

std::vector<std::string> corpus_groups() {
    std::set<std::string> names;
    for (const auto& e : fs::directory_iterator(LOCO_CORPUS_DIR)) {
        if (e.path().extension() != ".json") continue;
        std::ifstream in(e.path());
        json j = json::parse(in);
        if (j.contains("algebra") && j["algebra"].contains("group")) names.insert(j["algebra"]["group"].get<std::string>());
    }
    return {names.begin(), names.end()};
}

// ---------------------------------------------------------------------------

Outcome ac1() {
    Outcome o;
    for (int p : {2, 3, 5}) {
        auto gz = gamma_p(PLocalObject::of(p, Atom::z()));
        if (!(gz.degree0.is_zero() && gz.degree1 == PLocalObject::of(p, Atom::zpinf())))
            o.fail("gamma_p(Z) = (" + gz.degree0.to_string() + ", " + gz.degree1.to_string() + ")");
        for (const auto& a : all_atoms(3)) {
            PLocalObject m = PLocalObject::of(p, a);
            auto l = lambda_p(m);
            auto he = hom_ext(Atom::zpinf(), m);
            if (!(l.degree0 == he.ext && l.degree1 == he.hom))
                o.fail("lambda_p(" + a.to_string() + ") = (" + l.degree0.to_string() + ", " + l.degree1.to_string() + ")");
        }
    }
    return o;
}

Outcome ac2(const std::vector<Instance>& corpus) {
    Outcome o;
    std::set<std::size_t> ns;
    std::set<std::string> fields;
    for (const auto& c : corpus) {
        ns.insert(c.ring.variable_count);
        fields.insert(std::to_string(oracle::characteristic(c.ring.field)));
        if (c.gens.size() > 4) o.fail(c.name + ": more than 4 generators");
        auto lc = local_cohomology(c.ring, c.gens, c.module_relations, c.box);
        KoszulColimitOptions ko;
        ko.s_max = 6;
        auto kc = koszul_colimit_cohomology(c.ring, c.gens, c.module_relations, c.box, ko).table;
        StableExtOptions eo;
        eo.r_max = 6;
        auto se = stable_ext(c.ring, MonomialIdeal(c.ring.variable_count, c.gens), c.module_relations, c.box, eo).table;
        if (!(lc == kc)) o.fail(c.name + ": koszul colimit differs at " + table_difference(lc, kc));
        if (!(lc == se)) o.fail(c.name + ": stable Ext differs at " + table_difference(lc, se));
    }
    if (corpus.size() < 12) o.fail("only " + std::to_string(corpus.size()) + " instances");
    if (ns != std::set<std::size_t>{1, 2, 3}) o.fail("rings k[x], k[x,y], k[x,y,z] not all covered");
    if (fields.size() < 2) o.fail("both fields not covered");
    if (o.passed) o.detail = std::to_string(corpus.size()) + " instances";
    return o;
}

Outcome ac3() {
    Outcome o;
    RingSpec r(FieldSpec::rationals(), 2);
    DegreeBox box = DegreeBox::cube(2, -4, 4);
    auto t = local_cohomology(r, {Monomial{1, 0}, Monomial{0, 1}}, MonomialIdeal(2), box);
    for (const auto& a : box.points()) {
        std::size_t want2 = a[0] <= -1 && a[1] <= -1 ? 1 : 0;
        if (t.at(0, a) != 0 || t.at(1, a) != 0) o.fail("H^0/H^1 nonzero at " + degree_string(a));
        if (t.at(2, a) != want2) o.fail("H^2 at " + degree_string(a) + " is " + std::to_string(t.at(2, a)));
    }
    return o;
}

// Same radical: powers of the generators plus products of pairs of them.
std::vector<Monomial> same_radical(oracle::Gen& g, const std::vector<Monomial>& gens) {
    std::vector<Monomial> out;
    for (const auto& m : gens) {
        int e = g.uniform(1, 3);
        std::vector<int> x = m.exponents();
        for (auto& v : x) v *= e;
        out.emplace_back(x);
    }
    if (gens.size() >= 2 && g.coin()) {
        std::vector<int> x = gens[0].exponents();
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += gens[1][i];
        out.emplace_back(x);
    }
    if (out.size() > 4) out.resize(4);
    return out;
}

Outcome ac4() {
    Outcome o;
    oracle::Gen g(2024);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = static_cast<std::size_t>(g.uniform(1, 3));
        FieldSpec f = trial % 2 ? FieldSpec::rationals() : FieldSpec::prime(2);
        auto gens1 = g.monomials(n, g.uniform(1, 3), 2);
        auto gens2 = same_radical(g, gens1);
        if (!(radical(MonomialIdeal(n, gens1)) == radical(MonomialIdeal(n, gens2)))) {
            o.fail("generator sets with different radicals");
            continue;
        }
        MonomialIdeal rel = g.coin() ? MonomialIdeal(n) : MonomialIdeal(n, g.monomials(n, 1, 3));
        DegreeBox box = DegreeBox::cube(n, n == 3 ? -3 : -4, 3);
        auto rep = radical_invariance_check(RingSpec(f, n), gens1, gens2, rel, box);
        if (!rep.passed) o.fail("trial " + std::to_string(trial) + ": " + rep.witness);
    }
    return o;
}

Outcome ac5() {
    Outcome o;
    oracle::Gen g(2025);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = static_cast<std::size_t>(g.uniform(1, 3));
        FieldSpec f = trial % 2 ? FieldSpec::rationals() : FieldSpec::prime(2);
        auto gens = g.monomials(n, g.uniform(1, 4), 2);
        MonomialIdeal rel = g.coin() ? MonomialIdeal(n) : MonomialIdeal(n, g.monomials(n, g.uniform(1, 2), 2));
        DegreeBox box = DegreeBox::cube(n, n == 3 ? -3 : -4, 3);
        auto rep = vanishing_report(RingSpec(f, n), gens, rel, box);
        if (!rep.passed) o.fail("trial " + std::to_string(trial) + ": " + rep.witness);
    }
    return o;
}

Outcome ac6(const std::vector<Instance>& corpus) {
    Outcome o;
    for (const auto& c : corpus) {
        auto les = les_check(c.ring, c.gens, c.module_relations, c.box);
        if (!les.passed) o.fail(c.name + ": " + les.witness);
        auto coeff = coefficient_ring(c.ring, c.module_relations);
        auto ek = euler_check(build_stable_koszul(coeff, c.gens), c.box);
        if (!ek.passed) o.fail(c.name + " (Koszul Euler): " + ek.witness);
        auto ec = euler_check(build_cech(coeff, c.gens), c.box);
        if (!ec.passed) o.fail(c.name + " (Cech Euler): " + ec.witness);
    }
    return o;
}

Outcome ac7() {
    Outcome o;
    auto groups = corpus_groups();
    std::size_t count = 0;
    for (const auto& name : groups) {
        auto table = cli::group_table_by_name(name);
        if (table.size() > 16) continue;
        for (unsigned p : {2u, 3u}) {
            auto a = group_algebra(table, FieldSpec::prime(p));
            if (!frobenius_check(a).nondegenerate) o.fail(name + " over F" + std::to_string(p) + " not Frobenius");
            std::vector<std::size_t> want(7, 0);
            want[0] = 1;
            if (ext_k_A(a, 6) != want) o.fail(name + " over F" + std::to_string(p) + ": ext_k_A differs");
            ++count;
        }
    }
    MonomialIdeal x2y2(2, {Monomial{2, 0}, Monomial{0, 2}});
    MonomialIdeal max2(2, {Monomial{2, 0}, Monomial{1, 1}, Monomial{0, 2}});
    for (unsigned p : {2u, 3u}) {
        FieldSpec f = FieldSpec::prime(p);
        if (socle_dim(monomial_quotient_algebra(f, x2y2)) != 1) o.fail("socle of k[x,y]/(x^2,y^2) is not 1");
        if (socle_dim(monomial_quotient_algebra(f, max2)) != 2) o.fail("socle of k[x,y]/(x,y)^2 is not 2");
    }
    if (count == 0) o.fail("no group algebras in the corpus");
    if (o.passed) o.detail = std::to_string(count) + " group algebras";
    return o;
}

Outcome ac8() {
    Outcome o;
    auto e = ext_algebra(exterior_algebra(FieldSpec::rationals(), 1), 10);
    if (e.dims != std::vector<std::size_t>(11, 1)) o.fail("dims are not all 1");
    auto cert = polynomial_certificate(e);
    if (!cert.passed) o.fail(cert.witness);
    // Powers of the degree-1 class: tau^(k+1) = tau^k * tau.
    for (int k = 1; k < 10; ++k) {
        const auto& v = e.product(k, 0, 1, 0);
        if (std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return sgn(x) == 0; }))
            o.fail("degree " + std::to_string(k) + " times the generator vanishes");
    }
    return o;
}

Outcome ac9() {
    Outcome o;
    oracle::Gen g(2026);
    for (int p : {2, 3, 5}) {
        std::vector<PLocalObject> samples;
        for (const auto& a : all_atoms(3)) samples.push_back(PLocalObject::of(p, a));
        for (int k = 0; k < 50; ++k) samples.push_back(g.plocal(p, 5, 3));
        auto laws = functor_laws_check(samples);
        if (!laws.passed) o.fail("p=" + std::to_string(p) + ": " + laws.failures.front());
        for (const auto& m : samples) {
            auto uct = uct_certificate(m);
            if (!uct.passed) o.fail("UCT for " + m.to_string() + ": " + uct.witness);
        }
        for (long n : {8L, 12L})
            for (const auto& a : all_atoms(4))
                for (const auto& b : all_atoms(4)) {
                    HomExt he;
                    try {
                        he = hom_ext(a, PLocalObject::of(p, b));
                    } catch (const OutsideClass&) {
                        continue;
                    }
                    if (oracle::truncated_rhom_table(he, n) != oracle::truncated_rhom_tower(a, b, n))
                        o.fail("Hom/Ext(" + a.to_string() + ", " + b.to_string() + ") at N=" + std::to_string(n));
                }
    }
    return o;
}

}  // namespace

int main() {
    auto corpus = corpus_instances();
    struct Criterion {
        const char* id;
        const char* what;
        double limit;  // seconds, 0 = untimed
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria = {
        {"AC1", "gamma/lambda over Z at p in {2,3,5}", 1, ac1},
        {"AC2", "three-oracle agreement on the corpus", 60, [&] { return ac2(corpus); }},
        {"AC3", "closed form for k[x,y], (x,y)", 10, ac3},
        {"AC4", "radical invariance, 25 random pairs", 60, ac4},
        {"AC5", "vanishing bounds, 50 random instances", 120, ac5},
        {"AC6", "exact sequences and Euler characteristics", 0, [&] { return ac6(corpus); }},
        {"AC7", "group algebras: Frobenius, ext_k_A, socles", 60, ac7},
        {"AC8", "Ext of the exterior algebra through 10", 10, ac8},
        {"AC9", "functor laws, UCT, truncation at N=8,12", 0, ac9},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream time;
        time.precision(3);
        time << std::fixed << secs << "s";
        if (c.limit > 0) {
            time << " (limit " << static_cast<int>(c.limit) << "s)";
            if (secs >= c.limit) o.fail("over the time limit");
        }
        if (!o.passed) ++failed;
        std::printf("%s %s: %s [%s]%s%s\n", o.passed ? "PASS" : "FAIL", c.id, c.what, time.str().c_str(),
                    o.detail.empty() ? "" : " ", o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
