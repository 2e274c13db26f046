#include "loco/cli/job.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "loco/degree_table.hpp"
#include "loco/ext_oracle.hpp"
#include "loco/koszul_cech.hpp"
#include "loco/plocal.hpp"

namespace loco::cli {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kTasks = {"local-cohomology", "cech",       "koszul-colimit", "ext-oracle",
                                         "oracle-compare",   "les-check",  "radical-check",  "vanishing",
                                         "zp-gamma",         "zp-lambda",  "zp-laws",        "gorenstein",
                                         "frobenius",        "ext-algebra", "hilbert-symmetry"};

bool needs_ring(const std::string& t) {
    static const std::set<std::string> s = {"local-cohomology", "cech",          "koszul-colimit", "ext-oracle",
                                            "oracle-compare",   "les-check",     "radical-check",  "vanishing"};
    return s.count(t) > 0;
}
bool needs_algebra(const std::string& t) {
    return t == "gorenstein" || t == "frobenius" || t == "ext-algebra" || t == "hilbert-symmetry";
}
bool needs_zp(const std::string& t) { return t.rfind("zp-", 0) == 0; }
bool is_table_task(const std::string& t) {
    return t == "local-cohomology" || t == "cech" || t == "koszul-colimit" || t == "ext-oracle";
}

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

int get_int(const nlohmann::ordered_json& j, const char* key, int fallback, int lo, int hi) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) schema(std::string("'") + key + "' must be an integer");
    int v = j[key].get<int>();
    if (v < lo || v > hi) schema(std::string("'") + key + "' must be in " + std::to_string(lo) + ".." + std::to_string(hi));
    return v;
}

std::vector<Monomial> monomial_list(const nlohmann::ordered_json& j, std::size_t n, const char* what) {
    if (!j.is_array()) schema(std::string(what) + " must be an array of monomials");
    std::vector<Monomial> out;
    for (const auto& m : j) out.push_back(parse_monomial(m, n));
    return out;
}

struct Job {
    nlohmann::ordered_json raw;
    std::string name;
    std::vector<std::string> tasks;
    std::optional<FieldSpec> field;
    std::optional<RingSpec> ring;
    MonomialIdeal module_relations{0};
    std::vector<Monomial> gens, gens2;
    std::optional<DegreeBox> box;
    int s_max = 6, r_max = 6, n = 8;
    int p = 0;
    std::optional<PLocalObject> zp_module;
    int zp_max_k = 3, zp_random_sums = 50;
    std::optional<FinDimAlgebra> algebra;
    std::optional<Vector> functional;
    // Shared between tasks of one job.
    std::optional<DegreeTable> local, koszul, ext;
};

Job parse_job(const std::string& text) {
    Job job;
    try {
        job.raw = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        schema(std::string("malformed JSON: ") + e.what());
    }
    const auto& j = job.raw;
    if (!j.is_object()) schema("job must be a JSON object");
    if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
        schema("unsupported schema_version " + j["schema_version"].dump());
    job.name = j.value("name", std::string("job"));
    if (!j.contains("tasks") || !j["tasks"].is_array() || j["tasks"].empty()) schema("'tasks' must be a nonempty array");
    for (const auto& t : j["tasks"]) {
        if (!t.is_string() || std::find(kTasks.begin(), kTasks.end(), t.get<std::string>()) == kTasks.end())
            schema("unknown task " + t.dump());
        job.tasks.push_back(t.get<std::string>());
    }
    auto wants = [&](auto pred) { return std::any_of(job.tasks.begin(), job.tasks.end(), pred); };

    const nlohmann::ordered_json params = j.value("parameters", nlohmann::ordered_json::object());
    if (!params.is_object()) schema("'parameters' must be an object");
    job.s_max = get_int(params, "s_max", 6, 3, 24);
    job.r_max = get_int(params, "r_max", 6, 3, 24);
    job.n = get_int(params, "N", 8, 0, 20);

    try {
        if (j.contains("field")) {
            if (!j["field"].is_string()) schema("'field' must be a string");
            job.field = parse_field(j["field"].get<std::string>());
        }
    } catch (const std::invalid_argument& e) {
        schema(std::string("bad field: ") + e.what());
    }

    if (wants(needs_ring)) {
        if (!job.field) schema("cohomology tasks need 'field'");
        if (!j.contains("ring")) schema("cohomology tasks need 'ring'");
        const auto& r = j["ring"];
        std::size_t n = 0;
        std::vector<Monomial> rel;
        if (r.is_number_integer()) {
            n = r.get<std::size_t>();
        } else if (r.is_object() && r.contains("variables") && r["variables"].is_number_integer()) {
            n = r["variables"].get<std::size_t>();
            if (r.contains("relations")) rel = monomial_list(r["relations"], n, "ring relations");
        } else {
            schema("'ring' must be a variable count or {\"variables\": n, \"relations\": [...]}");
        }
        if (n < 1 || n > 6) schema("ring must have 1..6 variables");
        job.ring = RingSpec(*job.field, n, MonomialIdeal(n, rel));
        job.module_relations = MonomialIdeal(n);
        if (j.contains("module")) {
            const auto& m = j["module"];
            if (m.is_string()) {
                if (m != "R") schema("'module' must be \"R\" or {\"relations\": [...]}");
            } else if (m.is_object() && m.contains("relations")) {
                job.module_relations = MonomialIdeal(n, monomial_list(m["relations"], n, "module relations"));
            } else {
                schema("'module' must be \"R\" or {\"relations\": [...]}");
            }
        }
        if (!j.contains("ideal")) schema("cohomology tasks need 'ideal'");
        job.gens = monomial_list(j["ideal"], n, "'ideal'");
        if (job.gens.empty()) schema("'ideal' must have at least one generator");
        if (wants([](const std::string& t) { return t == "radical-check"; })) {
            if (!j.contains("ideal2")) schema("radical-check needs 'ideal2'");
            job.gens2 = monomial_list(j["ideal2"], n, "'ideal2'");
            if (job.gens2.empty()) schema("'ideal2' must have at least one generator");
        }
        if (j.contains("box")) {
            const auto& b = j["box"];
            if (b.is_object() && b.contains("cube")) {
                auto c = b["cube"];
                if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
                    schema("box cube must be [lo, hi]");
                if (c[0].get<int>() > c[1].get<int>()) schema("box cube has lo > hi");
                job.box = DegreeBox::cube(n, c[0].get<int>(), c[1].get<int>());
            } else if (b.is_object() && b.contains("lo") && b.contains("hi")) {
                std::vector<int> lo, hi;
                try {
                    lo = b["lo"].get<std::vector<int>>();
                    hi = b["hi"].get<std::vector<int>>();
                } catch (const nlohmann::json::exception&) {
                    schema("box lo/hi must be integer arrays");
                }
                if (lo.size() != n || hi.size() != n) schema("box dimension does not match the ring");
                for (std::size_t k = 0; k < n; ++k)
                    if (lo[k] > hi[k]) schema("box has lo > hi in coordinate " + std::to_string(k));
                job.box = DegreeBox(lo, hi);
            } else {
                schema("'box' must be {\"cube\": [lo, hi]} or {\"lo\": [...], \"hi\": [...]}");
            }
        } else {
            job.box = DegreeBox::cube(n, -4, 4);
        }
    }

    if (wants(needs_zp)) {
        if (!j.contains("zp") || !j["zp"].is_object()) schema("zp tasks need a 'zp' object");
        const auto& z = j["zp"];
        if (!z.contains("p") || !z["p"].is_number_integer() || !is_prime(z["p"].get<std::uint64_t>()))
            schema("'zp.p' must be a prime");
        job.p = z["p"].get<int>();
        std::vector<std::string> atoms;
        if (z.contains("module")) {
            if (z["module"].is_string()) atoms.push_back(z["module"].get<std::string>());
            else if (z["module"].is_array()) {
                for (const auto& a : z["module"]) {
                    if (!a.is_string()) schema("'zp.module' atoms must be strings");
                    atoms.push_back(a.get<std::string>());
                }
            } else {
                schema("'zp.module' must be an atom string or a list of atoms");
            }
        } else {
            atoms.push_back("Z");
        }
        try {
            job.zp_module = PLocalObject::parse(job.p, atoms);
        } catch (const OutsideClass& e) {
            schema(e.what());
        }
        job.zp_max_k = get_int(z, "max_k", 3, 1, 12);
        job.zp_random_sums = get_int(z, "random_sums", 50, 0, 10000);
    }

    if (wants(needs_algebra)) {
        if (!j.contains("algebra")) schema("algebra tasks need 'algebra'");
        if (!job.field) schema("algebra tasks need 'field'");
        try {
            job.algebra = algebra_from_spec(j["algebra"], *job.field);
            if (j.contains("functional")) {
                const auto& f = j["functional"];
                if (f == "top-degree") job.functional = top_degree_functional(*job.algebra);
                else if (f.is_array()) {
                    Vector v;
                    for (const auto& x : f) {
                        if (x.is_number_integer()) v.push_back(mpq_class(x.get<long>()));
                        else if (x.is_string()) v.push_back(mpq_class(x.get<std::string>()));
                        else schema("functional entries must be integers or rational strings");
                    }
                    if (v.size() != job.algebra->dim()) schema("functional has the wrong length");
                    job.functional = v;
                } else {
                    schema("'functional' must be \"top-degree\" or a coordinate array");
                }
            }
        } catch (const InvalidAlgebra& e) {
            schema(e.what());
        } catch (const NotAGroup& e) {
            schema(e.what());
        } catch (const std::invalid_argument& e) {
            schema(e.what());
        }
    }

    if (j.contains("expect")) {
        if (!j["expect"].is_array()) schema("'expect' must be an array");
        for (const auto& e : j["expect"]) {
            if (!e.is_object() || !e.contains("task") || !e["task"].is_string()) schema("each expectation needs 'task'");
            auto t = e["task"].get<std::string>();
            if (std::find(job.tasks.begin(), job.tasks.end(), t) == job.tasks.end())
                schema("expectation refers to task '" + t + "' which is not run");
            bool table_form = e.contains("index") && e.contains("degree") && e.contains("dim");
            bool path_form = e.contains("path") && e.contains("equals");
            if (!table_form && !path_form) schema("expectation needs index/degree/dim or path/equals");
            if (table_form && !is_table_task(t)) schema("index/degree/dim expectations apply to table tasks only");
            if (table_form && (!e["degree"].is_array() || e["degree"].size() != job.ring->variable_count))
                schema("expectation degree has the wrong length");
        }
    }
    return job;
}

json table_json(const DegreeTable& t) { return json::parse(t.to_json()); }

json cells_json(const std::vector<NotStabilized::Cell>& cells) {
    json out = json::array();
    for (const auto& c : cells) out.push_back({{"index", c.index}, {"degree", c.degree}});
    return out;
}

std::string first_difference_text(const DegreeTable& a, const DegreeTable& b, const char* an, const char* bn) {
    auto d = a.first_difference(b);
    if (!d) return "";
    return std::string("H^") + std::to_string(d->index) + " at " + degree_string(d->degree) + ": " + an + " = " +
           std::to_string(a.at(d->index, d->degree)) + ", " + bn + " = " + std::to_string(b.at(d->index, d->degree));
}

struct TaskResult {
    json result = json::object();
    std::optional<bool> certificate;  // set for certificate tasks
    std::string witness;
};

class Runner {
public:
    Runner(Job& job, const RunOptions& options) : job_(job), options_(options) {}

    TaskResult run(const std::string& task) {
        if (task == "local-cohomology") return table_task(local());
        if (task == "cech") return table_task(cech_cohomology(*job_.ring, job_.gens, job_.module_relations, *job_.box, topts()));
        if (task == "koszul-colimit") return koszul_task();
        if (task == "ext-oracle") return ext_task();
        if (task == "oracle-compare") return compare_task();
        if (task == "les-check") return les_task();
        if (task == "radical-check") return radical_task();
        if (task == "vanishing") return vanishing_task();
        if (task == "zp-gamma") return zp_pair(gamma_p(*job_.zp_module), "H0", "H1");
        if (task == "zp-lambda") return zp_pair(lambda_p(*job_.zp_module), "L0", "L1");
        if (task == "zp-laws") return zp_laws_task();
        if (task == "gorenstein") return gorenstein_task();
        if (task == "frobenius") return frobenius_task();
        if (task == "ext-algebra") return ext_algebra_task();
        return hilbert_task();
    }

private:
    TableOptions topts() const { return TableOptions{options_.threads}; }
    MonomialIdeal ideal() const { return MonomialIdeal(job_.ring->variable_count, job_.gens); }

    const DegreeTable& local() {
        if (!job_.local) job_.local = local_cohomology(*job_.ring, job_.gens, job_.module_relations, *job_.box, topts());
        return *job_.local;
    }

    KoszulColimitResult koszul_result() {
        KoszulColimitOptions o;
        o.s_max = job_.s_max;
        o.threads = options_.threads;
        return koszul_colimit_cohomology(*job_.ring, job_.gens, job_.module_relations, *job_.box, o);
    }
    StableExtResult ext_result() {
        StableExtOptions o;
        o.r_max = job_.r_max;
        o.threads = options_.threads;
        return stable_ext(*job_.ring, ideal(), job_.module_relations, *job_.box, o);
    }

    TaskResult table_task(const DegreeTable& t) {
        TaskResult r;
        r.result["table"] = table_json(t);
        return r;
    }

    TaskResult koszul_task() {
        auto k = koszul_result();
        job_.koszul = k.table;
        TaskResult r;
        r.result["exponents"] = k.exponents;
        r.result["table"] = table_json(k.table);
        return r;
    }

    TaskResult ext_task() {
        auto e = ext_result();
        job_.ext = e.table;
        TaskResult r;
        r.result["exponents"] = e.exponents;
        r.result["monotonicity_violations"] = cells_json(e.monotonicity_violations);
        r.result["table"] = table_json(e.table);
        return r;
    }

    TaskResult compare_task() {
        if (!job_.koszul) job_.koszul = koszul_result().table;
        if (!job_.ext) job_.ext = ext_result().table;
        TaskResult r;
        std::string w = first_difference_text(local(), *job_.koszul, "local_cohomology", "koszul_colimit");
        if (w.empty()) w = first_difference_text(local(), *job_.ext, "local_cohomology", "stable_ext");
        r.certificate = w.empty();
        r.witness = w;
        r.result["agree"] = w.empty();
        r.result["nonzero_cells"] = local().nonzero_cells().size();
        return r;
    }

    TaskResult les_task() {
        TaskResult r;
        auto les = les_check(*job_.ring, job_.gens, job_.module_relations, *job_.box, topts());
        auto coeff = coefficient_ring(*job_.ring, job_.module_relations);
        auto euler_koszul = euler_check(build_stable_koszul(coeff, job_.gens), *job_.box);
        auto euler_cech = euler_check(build_cech(coeff, job_.gens), *job_.box);
        r.result["les"] = les.passed;
        r.result["euler_stable_koszul"] = euler_koszul.passed;
        r.result["euler_cech"] = euler_cech.passed;
        r.certificate = les.passed && euler_koszul.passed && euler_cech.passed;
        r.witness = !les.passed ? les.witness : (!euler_koszul.passed ? euler_koszul.witness : euler_cech.witness);
        return r;
    }

    TaskResult radical_task() {
        TaskResult r;
        auto c = radical_invariance_check(*job_.ring, job_.gens, job_.gens2, job_.module_relations, *job_.box, topts());
        r.result["radical"] = radical(ideal()).to_string();
        r.result["equal_tables"] = c.passed;
        r.certificate = c.passed;
        r.witness = c.witness;
        return r;
    }

    TaskResult vanishing_task() {
        TaskResult r;
        auto v = vanishing_report(local(), *job_.ring, job_.gens, job_.module_relations);
        r.result["computed_depth"] = v.computed_depth ? json(*v.computed_depth) : json(nullptr);
        r.result["krull_dim"] = v.krull_dim;
        r.result["im_equals_m"] = v.im_equals_m;
        r.certificate = v.passed;
        r.witness = v.witness;
        return r;
    }

    TaskResult zp_pair(const DerivedPair& d, const char* k0, const char* k1) {
        TaskResult r;
        r.result["p"] = job_.p;
        r.result["module"] = job_.zp_module->to_string();
        r.result[k0] = d.degree0.canonical().to_string();
        r.result[k1] = d.degree1.canonical().to_string();
        return r;
    }

    TaskResult zp_laws_task() {
        std::vector<PLocalObject> samples;
        auto atoms = all_atoms(job_.zp_max_k);
        for (const auto& a : atoms) samples.push_back(PLocalObject::of(job_.p, a));
        std::mt19937_64 rng(options_.seed);
        std::uniform_int_distribution<std::size_t> count(1, 4), pick(0, atoms.size() - 1);
        for (int s = 0; s < job_.zp_random_sums; ++s) {
            std::vector<Atom> sum;
            for (std::size_t c = count(rng); c > 0; --c) sum.push_back(atoms[pick(rng)]);
            samples.emplace_back(job_.p, sum);
        }
        samples.push_back(*job_.zp_module);
        auto laws = functor_laws_check(samples);
        TaskResult r;
        r.result["samples"] = laws.samples;
        r.result["laws"] = laws.passed;
        std::size_t uct_in_class = 0;
        bool uct_ok = true;
        std::string uct_witness;
        for (const auto& s : samples) {
            auto c = uct_certificate(s);
            if (cech_p(s).homology0) ++uct_in_class;
            if (!c.passed && uct_ok) {
                uct_ok = false;
                uct_witness = s.to_string() + ": " + c.witness;
            }
        }
        r.result["uct"] = uct_ok;
        r.result["uct_six_term_samples"] = uct_in_class;
        r.certificate = laws.passed && uct_ok;
        r.witness = !laws.passed ? laws.failures.front() : uct_witness;
        return r;
    }

    TaskResult gorenstein_task() {
        const auto& a = *job_.algebra;
        TaskResult r;
        auto dims = ext_k_A(a, job_.n);
        std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
        std::size_t soc = socle_dim(a, a.is_commutative() ? SocleSide::Left : SocleSide::TwoSided);
        r.result["N"] = job_.n;
        r.result["ext_k_A"] = dims;
        r.result["socle_dim"] = soc;
        bool commutative_artinian = a.is_commutative() && a.is_local();
        if (commutative_artinian) {
            // Exact verdict from the socle; the truncated Ext count must agree.
            r.result["gorenstein"] = soc == 1;
            r.result["verdict_basis"] = "socle";
            r.certificate = (total == 1) == (soc == 1);
            if (!*r.certificate)
                r.witness = "socle_dim = " + std::to_string(soc) + " but total Ext dim through N = " + std::to_string(total);
        } else {
            r.result["gorenstein"] = total == 1;
            r.result["verdict_basis"] = "ext through N";
        }
        if (a.is_local() && a.is_connected()) r.result["shift"] = hilbert_symmetry_check(a).socle_degree;
        return r;
    }

    TaskResult frobenius_task() {
        TaskResult r;
        auto f = frobenius_check(*job_.algebra, job_.functional);
        r.result["frobenius"] = f.nondegenerate;
        r.result["form_rank"] = f.form_rank;
        r.result["dim"] = job_.algebra->dim();
        if (!f.nondegenerate) {
            json w = json::array();
            for (const auto& x : f.witness) w.push_back(x.get_str());
            r.result["witness"] = w;
        }
        return r;
    }

    TaskResult ext_algebra_task() {
        int n = std::min(job_.n, 12);
        auto e = ext_algebra(*job_.algebra, n);
        auto cert = polynomial_certificate(e);
        TaskResult r;
        r.result["N"] = n;
        r.result["dims"] = e.dims;
        r.result["polynomial"] = cert.passed;
        if (!cert.passed) r.result["polynomial_witness"] = cert.witness;
        json products = json::array();
        for (const auto& p : e.products) {
            json c = json::array();
            for (const auto& x : p.coordinates) c.push_back(x.get_str());
            products.push_back({{"left", {p.left_degree, p.left_index}}, {"right", {p.right_degree, p.right_index}},
                                {"coordinates", c}});
        }
        r.result["products"] = products;
        return r;
    }

    TaskResult hilbert_task() {
        auto h = hilbert_symmetry_check(*job_.algebra);
        TaskResult r;
        r.result["hilbert"] = h.hilbert;
        r.result["socle_dim"] = h.socle_dim;
        r.result["applicable"] = h.applicable;
        r.result["socle_degree"] = h.socle_degree;
        if (h.applicable) r.result["symmetric"] = h.symmetric;
        r.certificate = h.passed;
        if (!h.passed) r.witness = "Hilbert function is not symmetric about the socle degree";
        return r;
    }

    Job& job_;
    RunOptions options_;
};

bool same_zp_value(int p, const nlohmann::ordered_json& expected, const json& actual) {
    if (!actual.is_string()) return false;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream in(s);
        while (std::getline(in, cur, '+')) {
            cur.erase(0, cur.find_first_not_of(' '));
            cur.erase(cur.find_last_not_of(' ') + 1);
            out.push_back(cur);
        }
        return out;
    };
    std::vector<std::string> want;
    if (expected.is_string()) want = split(expected.get<std::string>());
    else if (expected.is_array())
        for (const auto& x : expected) want.push_back(x.get<std::string>());
    else
        return false;
    try {
        return PLocalObject::parse(p, want) == PLocalObject::parse(p, split(actual.get<std::string>()));
    } catch (const OutsideClass&) {
        return false;
    }
}

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace

Monomial parse_monomial(const nlohmann::ordered_json& j, std::size_t n) {
    std::vector<int> e(n, 0);
    if (j.is_array()) {
        if (j.size() != n) schema("exponent vector " + j.dump() + " has the wrong length");
        for (std::size_t k = 0; k < n; ++k) {
            if (!j[k].is_number_integer() || j[k].get<int>() < 0) schema("bad exponent in " + j.dump());
            e[k] = j[k].get<int>();
        }
        return Monomial(e);
    }
    if (!j.is_string()) schema("monomial must be a string or exponent array: " + j.dump());
    std::string s = j.get<std::string>();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s == "1") return Monomial(e);
    static const std::regex factor(R"(([a-z][0-9]*)(\^([0-9]+))?)");
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, '*')) {
        std::smatch m;
        if (!std::regex_match(part, m, factor)) schema("cannot parse monomial '" + s + "'");
        std::size_t var = n;
        for (std::size_t k = 0; k < n; ++k)
            if (variable_name(n, k) == m[1].str()) var = k;
        if (var == n) schema("unknown variable '" + m[1].str() + "' in '" + s + "'");
        e[var] += m[3].matched ? std::stoi(m[3].str()) : 1;
    }
    return Monomial(e);
}

std::vector<std::vector<int>> group_table_by_name(const std::string& name) {
    std::vector<std::vector<int>> table = cyclic_group_table(1);
    static const std::regex factor(R"((C|D)([0-9]+)(\^([0-9]+))?|V4|Q8)");
    std::stringstream in(name);
    std::string part;
    bool any = false;
    while (std::getline(in, part, 'x')) {
        std::smatch m;
        if (!std::regex_match(part, m, factor)) schema("unknown group '" + name + "'");
        std::vector<std::vector<int>> g;
        int power = 1;
        if (part == "V4") g = product_group_table(cyclic_group_table(2), cyclic_group_table(2));
        else if (part == "Q8") g = quaternion_group_table();
        else {
            int k = std::stoi(m[2].str());
            if (k < 1 || k > 64) schema("group order out of range in '" + name + "'");
            if (m[1] == "D" && k < 2) schema("dihedral groups need n >= 2");
            g = m[1] == "C" ? cyclic_group_table(k) : dihedral_group_table(k);
            if (m[4].matched) power = std::stoi(m[4].str());
        }
        for (int r = 0; r < power; ++r) table = product_group_table(table, g);
        any = true;
        if (table.size() > 64) schema("group '" + name + "' is too large");
    }
    if (!any) schema("empty group name");
    return table;
}

FinDimAlgebra algebra_from_spec(const nlohmann::ordered_json& spec, const FieldSpec& field) {
    if (!spec.is_object()) schema("'algebra' must be an object");
    if (spec.contains("group")) {
        if (!spec["group"].is_string()) schema("'algebra.group' must be a name");
        return group_algebra(group_table_by_name(spec["group"].get<std::string>()), field);
    }
    if (spec.contains("table")) {
        std::vector<std::vector<int>> t;
        try {
            t = spec["table"].get<std::vector<std::vector<int>>>();
        } catch (const nlohmann::json::exception&) {
            schema("'algebra.table' must be a square integer array");
        }
        return group_algebra(t, field);
    }
    if (spec.contains("exterior")) {
        const auto& e = spec["exterior"];
        if (e.is_number_integer()) return exterior_algebra(field, e.get<int>());
        try {
            return exterior_algebra(field, e.get<std::vector<int>>());
        } catch (const nlohmann::json::exception&) {
            schema("'algebra.exterior' must be a degree or a list of degrees");
        }
    }
    if (spec.contains("monomial_quotient")) {
        const auto& q = spec["monomial_quotient"];
        if (!q.is_object() || !q.contains("variables") || !q["variables"].is_number_integer() || !q.contains("relations"))
            schema("'monomial_quotient' needs variables and relations");
        auto n = q["variables"].get<std::size_t>();
        if (n < 1 || n > 6) schema("monomial_quotient must have 1..6 variables");
        return monomial_quotient_algebra(field, MonomialIdeal(n, monomial_list(q["relations"], n, "relations")));
    }
    if (spec.contains("structure")) {
        auto s = spec["structure"];
        if (!s.contains("field")) s["field"] = field.name();
        return algebra_from_json(s.dump());
    }
    if (spec.contains("ground_field")) return ground_field_algebra(field);
    schema("'algebra' needs one of group, table, exterior, monomial_quotient, structure, ground_field");
}

JobOutcome run_job_text(const std::string& text, const std::string& source, const RunOptions& options) {
    JobOutcome out;
    json& rep = out.report;
    rep["schema_version"] = kSchemaVersion;
    rep["source"] = source;
    std::optional<Job> parsed;
    try {
        parsed = parse_job(text);
    } catch (const Error& e) {
        // SchemaError and errors raised while building the inputs.
        out.exit_code = kSchemaError;
        out.failures.push_back(e.what());
        rep["verdict"] = "schema-error";
        rep["exit_code"] = out.exit_code;
        rep["errors"] = out.failures;
        rep["timestamp"] = {{"generated_at", iso_now()}};
        return out;
    }
    Job& job = *parsed;
    if (options.threads) set_default_threads(options.threads);
    rep["job"] = job.name;
    rep["inputs"] = json::parse(job.raw.dump());
    json params;
    if (job.box) params["box"] = {{"lo", job.box->lo()}, {"hi", job.box->hi()}};
    params["s_max"] = job.s_max;
    params["r_max"] = job.r_max;
    params["N"] = job.n;
    params["seed"] = options.seed;
    rep["parameters"] = params;

    Runner runner(job, options);
    json tasks = json::array();
    json timings = json::object();
    std::map<std::string, json> results;
    bool computation_error = false, certificate_failed = false;
    auto start_all = std::chrono::steady_clock::now();
    for (const auto& t : job.tasks) {
        json entry;
        entry["task"] = t;
        auto start = std::chrono::steady_clock::now();
        try {
            TaskResult r = runner.run(t);
            entry["status"] = r.certificate && !*r.certificate ? "certificate-failed" : "ok";
            if (r.certificate) entry["certificate"] = *r.certificate;
            if (!r.witness.empty()) entry["witness"] = r.witness;
            entry["result"] = r.result;
            results[t] = r.result;
            if (r.certificate && !*r.certificate) {
                certificate_failed = true;
                out.failures.push_back(t + ": certificate failed: " + r.witness);
            }
        } catch (const NotStabilized& e) {
            computation_error = true;
            entry["status"] = "error";
            entry["error"] = e.what();
            entry["unstable_cells"] = cells_json(e.cells());
            out.failures.push_back(t + ": " + e.what());
        } catch (const std::exception& e) {
            computation_error = true;
            entry["status"] = "error";
            entry["error"] = e.what();
            out.failures.push_back(t + ": " + e.what());
        }
        timings[t] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        tasks.push_back(entry);
    }
    rep["tasks"] = tasks;

    json expectations = json::array();
    if (job.raw.contains("expect"))
        for (const auto& e : job.raw["expect"]) {
            json entry = json::parse(e.dump());
            auto t = e["task"].get<std::string>();
            auto it = results.find(t);
            bool passed = false;
            json actual;
            if (it == results.end()) {
                actual = "task failed";
            } else if (e.contains("index")) {
                auto degree = e["degree"].get<std::vector<int>>();
                const json& table = it->second["table"]["table"];
                auto key = std::to_string(e["index"].get<int>());
                actual = 0;
                if (table.contains(key) && table[key].contains(degree_string(degree))) actual = table[key][degree_string(degree)];
                passed = actual == e["dim"];
            } else {
                try {
                    actual = it->second.at(json::json_pointer(e["path"].get<std::string>()));
                    passed = needs_zp(t) && (actual.is_string()) ? same_zp_value(job.p, e["equals"], actual)
                                                                 : actual == json::parse(e["equals"].dump());
                } catch (const json::exception&) {
                    actual = "missing";
                }
            }
            entry["actual"] = actual;
            entry["passed"] = passed;
            if (!passed) {
                certificate_failed = true;
                std::string what = e.contains("index")
                                       ? t + " H^" + e["index"].dump() + " at " + e["degree"].dump() + ": expected " +
                                             e["dim"].dump()
                                       : t + " " + e["path"].get<std::string>() + ": expected " + e["equals"].dump();
                out.failures.push_back("expectation failed: " + what + ", got " + actual.dump());
            }
            expectations.push_back(entry);
        }
    rep["expectations"] = expectations;

    out.exit_code = computation_error ? kComputationError : (certificate_failed ? kCertificateFailed : kPass);
    rep["verdict"] = out.exit_code == kPass ? "pass" : (computation_error ? "computation-error" : "certificate-failed");
    rep["exit_code"] = out.exit_code;
    rep["failures"] = out.failures;
    rep["timestamp"] = {{"generated_at", iso_now()},
                        {"threads", options.threads},
                        {"task_seconds", timings},
                        {"total_seconds",
                         std::chrono::duration<double>(std::chrono::steady_clock::now() - start_all).count()}};
    return out;
}

JobOutcome run_job(const std::string& path, const RunOptions& options) {
    std::ifstream in(path);
    if (!in) {
        JobOutcome out;
        out.exit_code = kSchemaError;
        out.failures.push_back("SchemaError: cannot read " + path);
        out.report = {{"schema_version", kSchemaVersion}, {"source", path}, {"verdict", "schema-error"},
                      {"exit_code", kSchemaError}, {"errors", out.failures}, {"timestamp", {{"generated_at", iso_now()}}}};
        return out;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return run_job_text(buf.str(), std::filesystem::path(path).filename().string(), options);
}

std::string report_to_csv(const json& report) {
    std::ostringstream out;
    out << "task,key,value\n";
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    if (!report.contains("tasks")) return out.str();
    for (const auto& t : report["tasks"]) {
        const std::string name = t["task"].get<std::string>();
        out << name << ",status," << t["status"].get<std::string>() << "\n";
        if (!t.contains("result")) continue;
        for (const auto& [key, value] : t["result"].items()) {
            if (key == "table") {
                for (const auto& [i, cells] : value["table"].items())
                    for (const auto& [deg, dim] : cells.items())
                        out << name << "," << quote("H" + i + deg) << "," << dim.dump() << "\n";
            } else if (key != "products") {
                out << name << "," << key << "," << quote(value.is_string() ? value.get<std::string>() : value.dump())
                    << "\n";
            }
        }
    }
    return out.str();
}

json stable_part(const json& report) {
    json copy = report;
    copy.erase("timestamp");
    return copy;
}

SuiteOutcome run_suite(const std::string& directory, const RunOptions& options) {
    SuiteOutcome out;
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    if (!std::filesystem::is_directory(directory, ec)) {
        out.exit_code = kSchemaError;
        out.warnings.push_back("not a directory: " + directory);
    } else {
        for (const auto& e : std::filesystem::directory_iterator(directory))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) out.warnings.push_back("no job files in " + directory);
    }
    json rows = json::array();
    for (const auto& f : files) {
        auto r = run_job(f.string(), options);
        out.rows.push_back({f.filename().string(), r.exit_code, r.failures});
        out.exit_code = std::max(out.exit_code, r.exit_code);
        rows.push_back({{"file", f.filename().string()}, {"exit_code", r.exit_code}, {"verdict", r.report["verdict"]},
                        {"failures", r.failures}});
    }
    out.summary = {{"schema_version", kSchemaVersion},
                   {"jobs", files.size()},
                   {"passed", std::count_if(out.rows.begin(), out.rows.end(), [](const SuiteRow& r) { return r.exit_code == 0; })},
                   {"exit_code", out.exit_code},
                   {"warnings", out.warnings},
                   {"results", rows},
                   {"timestamp", {{"generated_at", iso_now()}}}};
    return out;
}

}  // namespace loco::cli
