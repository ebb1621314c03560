#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubic/checks.hpp"
#include "cubic/errors.hpp"
#include "cubic/family.hpp"
#include "cubic/gauss.hpp"
#include "cubic/lfunction.hpp"
#include "cubic/moments.hpp"
#include "cubic/mollifier.hpp"
#include "cubic/parallel.hpp"
#include "cubic/primes.hpp"

using namespace cubic;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream s;
    for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return s.str();
}

EisensteinInt parse_element(const std::string& text) {
    auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stoll(text), 0};
        return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw DomainError("cannot parse element '" + text + "', expected a,b");
    }
}

json cjson(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string cache_dir() {
    const char* d = std::getenv("CUBIC_LMOMENT_CACHE_DIR");
    return d ? d : "";
}

struct Run {
    std::string command;
    json parameters = json::object();
    std::vector<std::string> cache_files;
    std::string out_path;
    std::string output;  // primary output bytes
    std::vector<std::pair<std::string, std::string>> extra;  // path, bytes

    PrimeTable table(i64 limit) {
        const std::string dir = cache_dir();
        if (!dir.empty())
            cache_files.push_back((std::filesystem::path(dir) / ("primes-" + std::to_string(limit) + ".jsonl")).string());
        return PrimeTable::cached(limit, dir);
    }

    void load_gauss() {
        const std::string dir = cache_dir();
        if (dir.empty()) return;
        auto path = std::filesystem::path(dir) / "gauss.jsonl";
        if (std::filesystem::exists(path)) {
            try {
                default_gauss_cache().load(path.string());
                cache_files.push_back(path.string());
            } catch (const CacheFormatError&) {
            }
        }
    }

    void save_gauss(i64 limit) {
        const std::string dir = cache_dir();
        if (dir.empty()) return;
        std::filesystem::create_directories(dir);
        default_gauss_cache().save((std::filesystem::path(dir) / "gauss.jsonl").string(), limit);
    }

    void emit(double seconds) {
        std::string all = output;
        for (const auto& [p, bytes] : extra) all += bytes;
        json manifest{{"command", command},
                      {"parameters", parameters},
                      {"cache_files", cache_files},
                      {"wall_time", seconds},
                      {"version", kVersion},
                      {"content_hash", sha256_hex(all)}};
        for (const auto& [p, bytes] : extra) std::ofstream(p) << bytes;
        if (out_path.empty()) {
            std::cout << output;
            std::cerr << manifest.dump() << '\n';
        } else {
            std::ofstream(out_path) << output;
            std::ofstream(out_path + ".manifest.json") << manifest.dump(2) << '\n';
            std::cout << manifest.dump(2) << '\n';
        }
    }
};

MollifierConfig load_config(const std::string& path, i64 X) {
    if (path.empty()) return MollifierConfig::desk(X);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = json::parse(ss.str(), nullptr, false);
    if (j.is_discarded()) throw ConfigError(path + " is not JSON");
    if (X > 0) j["X"] = X;
    return MollifierConfig::from_json(j.dump());
}

FamilyElement parse_member(const std::string& c1, const std::string& c2, const PrimeTable& table) {
    auto primes_of = [&](const std::string& s) {
        std::vector<EisensteinInt> ps;
        EisensteinInt v = parse_element(s);
        if (v == EisensteinInt{1, 0}) return ps;
        auto f = table.factor(v);
        if (!f.squarefree()) throw DomainError(s + " is not squarefree");
        for (const auto& [p, e] : f.factors) ps.push_back(p.value());
        return ps;
    };
    return make_family_element(primes_of(c1), primes_of(c2));
}

std::string rows_csv(const std::vector<CharacterRow>& rows) {
    std::ostringstream s;
    s << "c1_a,c1_b,c2_a,c2_b,conductor_norm,L_re,L_im,M_re,M_im,err_bound\n";
    s << std::setprecision(17);
    for (const auto& r : rows) {
        s << r.c.c1.value.a << ',' << r.c.c1.value.b << ',' << r.c.c2.value.a << ',' << r.c.c2.value.b << ','
          << r.c.conductor_norm << ',' << r.L.real() << ',' << r.L.imag() << ',' << r.M.real() << ',' << r.M.imag()
          << ',' << r.err_bound << '\n';
    }
    return s.str();
}

json euler_json(const EulerConstants& e) {
    return {{"c0", e.c0},         {"c1", e.c1},
            {"CX", e.CX},         {"c1_printed", e.c1_printed},
            {"CX_printed", e.CX_printed},
            {"c0_tail", e.c0_tail},
            {"c1_tail", e.c1_tail},
            {"series_tail", e.series_tail},
            {"truncation", e.truncation},
            {"sandwich", e.sandwich()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cubic Dirichlet L-functions over Q(omega): sieves, Gauss sums, central values and mollified moments"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned jobs = 1;
    std::string out, config, c1 = "1", c2 = "1", csv;
    i64 X = 10000, limit = 1000000;
    double Y = 1.0, tol = 1e-8;
    std::string r_text = "1", n_text;
    bool fast = false;
    app.add_option("--jobs", jobs, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
    app.add_option("--out", out, "write the primary output here and a manifest next to it");

    auto* sieve = app.add_subcommand("sieve", "sieve primary primes up to a norm bound");
    sieve->add_option("--limit", limit, "norm bound")->check(CLI::PositiveNumber);

    auto* family = app.add_subcommand("family", "enumerate the family up to conductor norm X");
    family->add_option("--X", X, "conductor bound")->check(CLI::PositiveNumber);

    auto* gauss = app.add_subcommand("gauss", "shifted cubic Gauss sum g(r, n)");
    gauss->add_option("--r", r_text, "shift a,b");
    gauss->add_option("--n", n_text, "primary modulus a,b")->required();

    auto* lvalue = app.add_subcommand("lvalue", "L(1/2, chi_c) for one member, or a CSV table over the family");
    lvalue->add_option("--c1", c1, "squarefree primary c1 as a,b");
    lvalue->add_option("--c2", c2, "squarefree primary c2 as a,b");
    lvalue->add_option("--X", X, "tabulate the whole family up to X instead")->check(CLI::PositiveNumber);
    lvalue->add_option("--Y", Y, "balance parameter")->check(CLI::PositiveNumber);
    lvalue->add_option("--tol", tol, "truncation tolerance")->check(CLI::PositiveNumber);
    lvalue->add_option("--config", config, "mollifier config JSON (desk preset by default)");

    auto* mollify = app.add_subcommand("mollify", "derived mollifier parameters, validation, and M(c)");
    mollify->add_option("--config", config, "mollifier config JSON");
    mollify->add_option("--X", X, "X")->check(CLI::PositiveNumber);
    mollify->add_option("--c1", c1, "squarefree primary c1 as a,b");
    mollify->add_option("--c2", c2, "squarefree primary c2 as a,b");

    auto* moment = app.add_subcommand("moment", "first mollified moment over the family");
    moment->add_option("--X", X, "conductor bound")->check(CLI::PositiveNumber);
    moment->add_option("--config", config, "mollifier config JSON");
    moment->add_option("--tol", tol, "L-value tolerance")->check(CLI::PositiveNumber);
    moment->add_option("--Y", Y, "balance parameter")->check(CLI::PositiveNumber);
    moment->add_option("--csv", csv, "per-character table");

    auto* constants = app.add_subcommand("constants", "printed constants and Euler products");
    constants->add_option("--X", X, "X for C_X (desk preset)")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("check", "invariant suite");
    check->add_flag("--fast", fast, "reduced sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    Run run;
    run.out_path = out;
    try {
        if (*sieve) {
            run.command = "sieve";
            run.parameters = {{"limit", limit}};
            auto t = run.table(limit);
            run.output = json{{"limit", limit},
                              {"primes", t.primes().size()},
                              {"pi_K", t.pi_K(static_cast<double>(limit))},
                              {"li", li(static_cast<double>(limit))}}
                             .dump(2) + "\n";
        } else if (*family) {
            run.command = "family";
            run.parameters = {{"X", X}};
            auto t = run.table(std::max<i64>(X, 1000000));
            auto fam = enumerate_family(X, t);
            auto k = family_size_constants({EisensteinInt{1, 0}, 0}, 1e-5, t, zeta_K_square_derivative());
            const double Xd = static_cast<double>(X);
            json members = json::array();
            for (const auto& f : fam)
                members.push_back({{"c1", {f.c1.value.a, f.c1.value.b}},
                                   {"c2", {f.c2.value.a, f.c2.value.b}},
                                   {"conductor_norm", f.conductor_norm}});
            run.output = json{{"X", X},
                              {"size", fam.size()},
                              {"C1", k.C1},
                              {"C2", k.C2},
                              {"ratio_C1", X > 1 ? fam.size() / (k.C1 * Xd * std::log(Xd)) : 0.0},
                              {"ratio_C1_C2", X > 1 ? fam.size() / (k.C1 * Xd * std::log(Xd) + k.C2 * Xd) : 0.0},
                              {"members", members}}
                             .dump(2) + "\n";
        } else if (*gauss) {
            run.command = "gauss";
            run.parameters = {{"r", r_text}, {"n", n_text}};
            EisensteinInt n = parse_element(n_text);
            if (!is_primary(n)) throw NotPrimaryizable(n_text + " is not primary");
            auto t = run.table(1000000);
            auto fastv = gauss_fast(parse_element(r_text), {n, 0}, t);
            json j{{"r", r_text}, {"n", n_text}, {"recurrence", cjson(fastv.value)}};
            if (norm(n) <= kDirectSumCap) j["direct"] = cjson(gauss_direct(parse_element(r_text), {n, 0}).value);
            run.output = j.dump(2) + "\n";
        } else if (*lvalue) {
            run.command = "lvalue";
            run.parameters = {{"Y", Y}, {"tol", tol}};
            run.load_gauss();
            if (lvalue->count("--X")) {
                run.parameters["X"] = X;
                const auto cfg = load_config(config, X);
                auto t = run.table(std::max({X, mollifier_prime_limit(cfg), i64{1000000}}));
                auto m = first_mollified_moment(X, cfg, tol, t, jobs, Y);
                run.output = rows_csv(m.rows);
            } else {
                run.parameters["c1"] = c1;
                run.parameters["c2"] = c2;
                auto t = run.table(1000000);
                auto f = parse_member(c1, c2, t);
                auto rec = central_value(f, Y, tol, t);
                run.output = json{{"c1", c1},
                                  {"c2", c2},
                                  {"conductor_norm", f.conductor_norm},
                                  {"L", cjson(rec.value)},
                                  {"Y", rec.Y},
                                  {"Yprime", rec.Yprime},
                                  {"root_number", cjson(rec.root_number)},
                                  {"truncation_error_bound", rec.truncation_error_bound},
                                  {"principal_terms", rec.principal_terms},
                                  {"dual_terms", rec.dual_terms}}
                                 .dump(2) + "\n";
            }
            run.save_gauss(1000000);
        } else if (*mollify) {
            run.command = "mollify";
            run.parameters = {{"X", X}, {"config", config}};
            const auto cfg = load_config(config, X);
            const auto v = validate(cfg);
            json conds = json::object();
            for (const auto& [name, ok] : v.conditions) conds[name] = ok;
            json j{{"config", json::parse(cfg.to_json())},
                   {"conditions", conds},
                   {"Xcond_loglog", v.Xcond_loglog},
                   {"Xcond_logloglog", v.Xcond_logloglog},
                   {"R1", v.R1},
                   {"R2", v.R2}};
            if (mollify->count("--c1") || mollify->count("--c2")) {
                auto t = run.table(std::max(mollifier_prime_limit(cfg), i64{1000000}));
                auto f = parse_member(c1, c2, t);
                auto pv = prime_character_values(f, mollifier_prime_limit(cfg), t);
                j["M"] = cjson(mollifier_M(pv, cfg));
                json F = json::array();
                for (int r = 0; r <= cfg.J; ++r) F.push_back(cjson(F_r(pv, r, cfg.J, cfg)));
                j["F"] = F;
            }
            run.output = j.dump(2) + "\n";
        } else if (*moment) {
            run.command = "moment";
            run.parameters = {{"X", X}, {"config", config}, {"tol", tol}, {"Y", Y}};
            run.load_gauss();
            const auto cfg = load_config(config, X);
            auto t = run.table(std::max({X, mollifier_prime_limit(cfg), i64{1000000}}));
            auto m = first_mollified_moment(X, cfg, tol, t, jobs, Y);
            auto nv = nonvanishing_report(m, tol);
            json j = json::parse(m.to_json());
            j["config"] = json::parse(cfg.to_json());
            j["nonvanishing"] = {{"count_nonzero", nv.count_nonzero},
                                 {"count_below_threshold", nv.count_below_threshold},
                                 {"empirical_proportion", nv.empirical_proportion},
                                 {"bound_prefactor", nv.bound_prefactor},
                                 {"bound_loglog_reciprocal", nv.bound_loglog_reciprocal},
                                 {"exceeds_bound", nv.exceeds_bound}};
            j["paper_constants"] = json::parse(reproduce_paper_constants().to_json());
            run.output = j.dump(2) + "\n";
            if (!csv.empty()) run.extra.emplace_back(csv, rows_csv(m.rows));
            run.save_gauss(1000000);
        } else if (*constants) {
            run.command = "constants";
            run.parameters = {{"X", X}};
            auto t = run.table(1000000);
            json j = json::parse(reproduce_paper_constants().to_json());
            j["euler_desk"] = euler_json(euler_constants(MollifierConfig::desk(X), 1e-5, t));
            j["euler_paper"] = euler_json(euler_constants(MollifierConfig::paper(X), 1e-5, t));
            run.output = j.dump(2) + "\n";
        } else if (*check) {
            CheckOptions opt;
            opt.fast = fast;
            opt.jobs = jobs;
            bool ok = true;
            for (const auto& r : run_checks(opt)) {
                const bool inv = r.invariants_pass();
                std::cout << (r.pass() ? "PASS " : (inv ? "NOTE " : "FAIL ")) << r.id << ' ' << r.title << '\n';
                for (const auto& it : r.items)
                    if (!it.pass) std::cout << "    " << it.name << ": " << it.detail << '\n';
                ok &= inv;
            }
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cout << json{{"error", e.name()}, {"message", e.what()}}.dump() << '\n';
        return e.capacity() ? 3 : 2;
    }
    run.emit(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return 0;
}
