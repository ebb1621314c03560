#include "cubic/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "cubic/eisenstein.hpp"
#include "cubic/errors.hpp"
#include "cubic/family.hpp"
#include "cubic/gauss.hpp"
#include "cubic/lfunction.hpp"
#include "cubic/moments.hpp"
#include "cubic/mollifier.hpp"
#include "cubic/parallel.hpp"
#include "cubic/primes.hpp"

namespace cubic {

namespace {

constexpr double kPi = std::numbers::pi;

const PrimeTable& shared_table() {
    static std::once_flag once;
    static std::unique_ptr<PrimeTable> t;
    std::call_once(once, [] { t = std::make_unique<PrimeTable>(1'000'000); });
    return *t;
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// value rounded to the significant digits of `printed` reproduces it exactly
bool matches_printed(double value, const std::string& printed) {
    const auto e = printed.find_first_of("eE");
    std::string mant = printed.substr(0, e);
    int digits = 0;
    bool leading = true;
    for (char ch : mant) {
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++digits;
    }
    const double p = std::stod(printed);
    const double scale = std::pow(10.0, std::floor(std::log10(std::abs(p))) - digits + 1);
    return std::llround(value / scale) == std::llround(p / scale);
}

CheckItem item(std::string name, bool pass, std::string detail, bool invariant = true) {
    return {std::move(name), pass, std::move(detail), invariant};
}

template <class Fn>
CheckResult timed(int id, std::string title, double budget, Fn fn) {
    CheckResult r;
    r.id = id;
    r.title = std::move(title);
    r.budget = budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
        fn(r.items);
    } catch (const std::exception& e) {
        r.items.push_back(item("exception", false, e.what()));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.items.push_back(item("runtime", r.seconds < budget, fmt("%.2f s of %.0f s", r.seconds, budget)));
    return r;
}

EisensteinInt random_primary(std::mt19937_64& rng, i64 range) {
    std::uniform_int_distribution<i64> d(-range, range);
    return {3 * d(rng) + 1, 3 * d(rng)};
}

// e^x - E_ell(x) as the tail series when |x| < 1, where the direct difference cancels
double exp_minus_truncated(double x, int ell) {
    if (std::abs(x) >= 1) return std::exp(x) - truncated_exp(x, ell);
    double term = 1, sum = 0;
    for (int n = 1; n <= ell; ++n) term *= x / n;
    for (int n = ell + 1; n < ell + 60; ++n) {
        term *= x / n;
        sum += term;
    }
    return sum;
}

}  // namespace

bool CheckResult::pass() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.pass; });
}

bool CheckResult::invariants_pass() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.pass || !i.invariant; });
}

CheckResult check_constants(const CheckOptions&) {
    return timed(1, "paper constants", 1, [](std::vector<CheckItem>& out) {
        const auto c = reproduce_paper_constants();
        out.push_back(item("R1", matches_printed(c.R1, "-4.7107876828e40"),
                           fmt("%.10e vs printed -4.7107876828e+40; printed value inside Theta rounding interval "
                               "[%.10e, %.10e]: %s",
                               c.R1, c.R1_at_theta_lo, c.R1_at_theta_hi, c.R1_printed_in_theta_interval ? "yes" : "no"),
                           false));
        out.push_back(item("R2", matches_printed(c.R2, "2.8043085602e42"), fmt("%.10e", c.R2), false));
        out.push_back(item("S_2", matches_printed(c.S_k, "5.3316663123e11"), fmt("%.10e", c.S_k), false));
        out.push_back(item("loglog chain", std::abs(c.loglog_bound - 101.248586291) <= 1e-6,
                           fmt("%.9f", c.loglog_bound)));
        const double r3 = std::sqrt(3.0);
        out.push_back(item("proportion", std::abs(c.proportion_prefactor - 3 / ((r3 - 1) * (r3 - 1))) < 1e-15 &&
                                             c.proportion_loglog_reciprocal == 101.3,
                           fmt("prefactor %.15f, loglog %.1f", c.proportion_prefactor, c.proportion_loglog_reciprocal)));
    });
}

CheckResult check_gauss(const CheckOptions& opt) {
    return timed(2, "Gauss sums", 120, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        const i64 bound = opt.fast ? 400 : 2000;
        const auto ns = primary_elements_upto(bound);
        std::vector<double> worst(ns.size(), 0);
        parallel_for(ns.size(), opt.jobs, [&](size_t i) {
            std::mt19937_64 rng(1000 + i);
            std::uniform_int_distribution<i64> d(-60, 60);
            GaussCache cache;
            const PrimaryElement n{ns[i], 0};
            for (int k = 0; k < 20; ++k) {
                EisensteinInt r{d(rng), d(rng)};
                auto a = gauss_direct(r, n).value, b = gauss_fast(r, n, table, &cache).value;
                worst[i] = std::max(worst[i], std::abs(a - b));
            }
        });
        const double w = *std::max_element(worst.begin(), worst.end());
        out.push_back(item("fast = direct", w < 1e-9, fmt("%zu moduli N <= %lld, 20 shifts, max diff %.2e", ns.size(),
                                                          static_cast<long long>(bound), w)));
        const i64 pb = opt.fast ? 2000 : 10000;
        auto primes = table.range(0, pb);
        std::vector<double> dev(primes.size(), 0);
        parallel_for(primes.size(), opt.jobs, [&](size_t i) {
            const auto& p = primes[i];
            const double N = static_cast<double>(p.norm);
            dev[i] = std::max(std::abs(std::norm(gauss_direct({1, 0}, p.element).value) - N),
                              std::abs(std::norm(gauss_prime(p.value())) - N));
        });
        const double dmax = dev.empty() ? 0 : *std::max_element(dev.begin(), dev.end());
        out.push_back(item("|g(1,pi)|^2 = N", dmax < 1e-9,
                           fmt("%zu primes N <= %lld, max deviation %.2e", primes.size(), static_cast<long long>(pb), dmax)));
    });
}

CheckResult check_reciprocity(const CheckOptions& opt) {
    return timed(3, "cubic reciprocity", 60, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        std::mt19937_64 rng(7);
        int pairs = 0, bad = 0;
        while (pairs < 500) {
            EisensteinInt m = random_primary(rng, 300), n = random_primary(rng, 300);
            if (norm(gcd(m, n)) != 1 || m == EisensteinInt{1, 0} || n == EisensteinInt{1, 0}) continue;
            ++pairs;
            bad += !(cubic_symbol(m, {n, 0}, table) == cubic_symbol(n, {m, 0}, table));
        }
        out.push_back(item("(m/n) = (n/m)", bad == 0, fmt("%d pairs, %d mismatches", pairs, bad)));
        const i64 bound = opt.fast ? 2000 : 10000;
        const auto ns = primary_elements_upto(bound);
        std::vector<int> mism(ns.size(), 0);
        parallel_for(ns.size(), opt.jobs, [&](size_t i) {
            std::mt19937_64 r(50 + i);
            std::uniform_int_distribution<i64> d(-200, 200);
            for (int k = 0; k < 12; ++k) {
                EisensteinInt alpha = k < 3 ? kUnits[k + 1] : (k == 3 ? EisensteinInt{1, -1} : EisensteinInt{d(r), d(r)});
                mism[i] += !(cubic_symbol_reciprocity(alpha, ns[i]) == cubic_symbol(alpha, {ns[i], 0}, table));
            }
        });
        int total = 0;
        for (int x : mism) total += x;
        out.push_back(item("reciprocity = Euler", total == 0,
                           fmt("%zu moduli N <= %lld, 12 residues each, %d mismatches", ns.size(),
                               static_cast<long long>(bound), total)));
    });
}

CheckResult check_afe(const CheckOptions& opt) {
    return timed(4, "AFE consistency", 300, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        auto fam = enumerate_family(10000, table);
        const size_t count = opt.fast ? 10 : 50;
        std::vector<FamilyElement> sample;
        for (size_t i = 0; i < count; ++i) sample.push_back(fam[i * fam.size() / count]);
        std::vector<double> shift(count), conj_dev(count);
        parallel_for(count, opt.jobs, [&](size_t i) {
            const auto& c = sample[i];
            auto L1 = central_value(c, 1.0, 1e-12, table).value;
            for (double Y : {0.5, 2.0})
                shift[i] = std::max(shift[i], std::abs(central_value(c, Y, 1e-12, table).value - L1) / std::abs(L1));
            conj_dev[i] = std::abs(central_value(c.conjugate(), 1.0, 1e-12, table).value - std::conj(L1));
        });
        const double s = *std::max_element(shift.begin(), shift.end());
        const double cd = *std::max_element(conj_dev.begin(), conj_dev.end());
        out.push_back(item("Y invariance", s < 1e-6, fmt("%zu members, max relative shift %.2e", count, s)));
        out.push_back(item("conjugate symmetry", cd < 1e-6, fmt("max |L(conj c) - conj L(c)| %.2e", cd)));
    });
}

CheckResult check_family(const CheckOptions& opt) {
    return timed(5, "family", 180, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        const i64 top = opt.fast ? 500 : 2000;
        auto brute = enumerate_family_bruteforce(top, table);
        std::sort(brute.begin(), brute.end(), family_less);
        int bad = 0;
        for (i64 X = 1; X <= top; ++X) {
            auto fam = X >= 2 ? enumerate_family(X, table) : std::vector<FamilyElement>{};
            std::vector<std::string> a, b;
            for (const auto& f : fam) a.push_back(f.key());
            for (const auto& f : brute)
                if (f.conductor_norm <= X) b.push_back(f.key());
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            bad += a != b;
        }
        out.push_back(item("enumeration = brute force", bad == 0,
                           fmt("all X <= %lld, %zu members at the top, %d mismatches", static_cast<long long>(top),
                               brute.size(), bad)));
        const i64 X = opt.fast ? 100000 : 1000000;
        const double Xd = static_cast<double>(X);
        const auto size = static_cast<double>(enumerate_family(X, table).size());
        const auto k = family_size_constants({EisensteinInt{1, 0}, 0}, 1e-5, table, zeta_K_square_derivative());
        const double ratio = size / (k.C1 * Xd * std::log(Xd));
        const double ratio2 = size / (k.C1 * Xd * std::log(Xd) + k.C2 * Xd);
        out.push_back(item("size ratio in [0.8, 1.2]", ratio >= 0.8 && ratio <= 1.2,
                           fmt("|F(%g)| = %.0f, ratio to C1 X log X = %.5f; with the C2 X term %.5f", Xd, size, ratio,
                               ratio2),
                           false));
    });
}

CheckResult check_analytic(const CheckOptions&) {
    return timed(6, "analytic sanity", 120, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        const double x = 1e6;
        const double pk = static_cast<double>(table.pi_K(x)), l = li(x);
        out.push_back(item("pi_K vs li", std::abs(pk / l - 1) < 0.002, fmt("%.0f vs %.1f, rel %.2e", pk, l, pk / l - 1)));
        const double ic = static_cast<double>(ideal_count(x)) / x;
        out.push_back(item("ideal count", std::abs(ic / zeta_K_residue() - 1) < 0.01,
                           fmt("%.6f vs %.6f", ic, zeta_K_residue())));
        std::vector<EstimateCheck> est;
        est.push_back(prime_sum_item1(3, table));
        est.push_back(prime_sum_item1(16, table));
        const auto j1 = MollifierConfig::make(2, 1, 1.2, 0.75, 0.9, 1000000);
        for (int r = 0; r <= j1.J; ++r)
            for (double s : {1.1, 1.5, 2.0}) est.push_back(prime_sum_item2(j1, r, s, table));
        for (i64 X : {10000, 100000, 1000000}) est.push_back(prime_sum_item3(MollifierConfig::desk(X), table));
        est.push_back(prime_sum_item3(j1, table));
        est.push_back(prime_sum_item4(j1, 0, 4, table));
        for (int j = 0; j <= j1.J; ++j) est.push_back(prime_sum_item5(j1, j, table));
        est.push_back(prime_sum_item5(MollifierConfig::desk(10000), 0, table));
        int fails = 0;
        std::string worst;
        for (const auto& e : est) {
            if (!e.pass) {
                ++fails;
                worst += " " + e.name;
            }
        }
        out.push_back(item("prime-sum estimates", fails == 0, fmt("%zu instances, %d failing%s", est.size(), fails,
                                                                   worst.c_str())));
        auto d8 = d_constant_values(8, table), d16 = d_constant_values(16, table);
        bool below = true;
        for (double v : d8) below &= v < 1;
        for (double v : d16) below &= v < 1;
        out.push_back(item("D-constant < 1", below, fmt("%zu + %zu intervals", d8.size(), d16.size())));
        const bool n1 = matches_printed(d8[0], "0.416533") || matches_printed(d16[0], "0.416533");
        const bool n2 = matches_printed(d8[1], "0.353") || matches_printed(d16[1], "0.353");
        out.push_back(item("D-constant n=1", n1, fmt("x=8*5^(n-1): %.6f, k0=16: %.6f", d8[0], d16[0]), false));
        out.push_back(item("D-constant n=2", n2, fmt("x=8*5^(n-1): %.4f, k0=16: %.4f, printed 0.353", d8[1], d16[1]),
                           false));
    });
}

CheckResult check_mollifier(const CheckOptions&) {
    return timed(7, "mollifier algebra", 60, [&](std::vector<CheckItem>& out) {
        bool ok1 = true, ok2 = true, pos = true;
        for (int l = 1; l <= 6; ++l) {
            for (int i = -1000; i < 0; ++i) {
                const double x = i * 0.01;
                ok1 &= exp_minus_truncated(x, 2 * l) < 0;
                pos &= truncated_exp(x, 2 * l) > 0;
            }
            const double top = 2 * l / (std::numbers::e * std::numbers::e);
            for (double x = -10; x <= top; x += 0.01)
                ok2 &= std::exp(-2.0 * l) * truncated_exp(x, 2 * l) - exp_minus_truncated(x, 2 * l) > 0;
        }
        out.push_back(item("E_l bounds", ok1 && ok2 && pos, "x in [-10, 0) and [-10, 2l/e^2], l = 1..6"));
        double nu_dev = 0;
        bool trunc_ok = true;
        for (int n = 1; n <= 4; ++n) {
            for (int m = 0; m <= 8; ++m) {
                nu_dev = std::max(nu_dev, std::abs(nu_n({m}, n) - std::pow(n, m) / std::tgamma(m + 1.0)) /
                                              (std::pow(n, m) / std::tgamma(m + 1.0)));
                for (int l = 0; l <= 8; ++l) {
                    const double t = nu_n_truncated({m}, n, l), f = nu_n({m}, n);
                    trunc_ok &= m <= l ? std::abs(t - f) <= 1e-12 * f : t <= f * (1 + 1e-12);
                }
            }
        }
        out.push_back(item("nu_n(p^m) = n^m/m!", nu_dev < 1e-12 && trunc_ok, fmt("m <= 8, n <= 4, max rel %.1e", nu_dev)));
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0, 1);
        double dev = 0;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::complex<double>> z;
            for (int p = 0; p < 2; ++p) {
                const double N = 20 + 2000 * u(rng);
                z.push_back(std::polar(u(rng) / std::sqrt(N), 2 * kPi * std::floor(3 * u(rng)) / 3));
            }
            for (int l : {2, 4, 6, 8})
                dev = std::max(dev, std::abs(mollifier_factor_product(z, l, 1 + trial % 2) -
                                             mollifier_factor_expansion(z, l, 1 + trial % 2)));
        }
        out.push_back(item("M_j product = expansion", dev < 1e-10, fmt("200 two-prime intervals, max diff %.1e", dev)));
        const auto v = validate(MollifierConfig::paper(10000));
        std::string failed;
        for (const auto& [name, okc] : v.conditions)
            if (!okc) failed += " " + name;
        out.push_back(item("paper parameters validate", v.all_pass(),
                           fmt("%zu conditions%s", v.conditions.size(), failed.empty() ? "" : (" failing:" + failed).c_str())));
    });
}

CheckResult check_grh(const CheckOptions& opt) {
    return timed(8, "GRH-consistency", 600, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        auto fam = enumerate_family(opt.fast ? 2000 : 10000, table);
        std::vector<double> L(fam.size());
        parallel_for(fam.size(), opt.jobs, [&](size_t i) { L[i] = std::abs(central_value(fam[i], 1.0, 1e-10, table).value); });
        int viol = 0;
        double margin = INFINITY;
        for (size_t i = 0; i < fam.size(); ++i) {
            for (double x : {100.0, 1000.0}) {
                const double gap = grh_log_bound(fam[i], x, 1, table) - std::log(L[i]);
                margin = std::min(margin, gap);
                viol += gap < 0;
            }
        }
        out.push_back(item("log|L| <= GRH bound", viol == 0,
                           fmt("%zu characters, x in {1e2, 1e3}, %d violations, min margin %.3f", fam.size(), viol, margin)));
        int in_t0 = 0, fails = 0;
        double worst = 0;
        for (i64 X : {10000, 100000}) {
            const auto cfg = MollifierConfig::desk(X);
            const i64 lim = std::max(mollifier_prime_limit(cfg),
                                     static_cast<i64>(std::exp(cfg.theta_at(cfg.J) * cfg.logX)) + 1);
            auto fx = X == 10000 ? fam : enumerate_family(X, table);
            const size_t step = std::max<size_t>(1, fx.size() / (opt.fast ? 40 : 300));
            for (size_t i = 0; i < fx.size(); i += step) {
                const double absL = X == 10000 && i < L.size() ? L[i]
                                                               : std::abs(central_value(fx[i], 1.0, 1e-10, table).value);
                auto t = check_InT0orNot(prime_character_values(fx[i], lim, table), absL, cfg, table);
                if (!t.in_T0) continue;
                ++in_t0;
                fails += !t.holds;
                worst = std::max(worst, t.lhs / t.rhs);
            }
        }
        out.push_back(item("InT0orNot bound", in_t0 > 0 && fails == 0,
                           fmt("%d sampled members of T_0 (desk X = 1e4, 1e5), %d failures, max lhs/rhs %.3e", in_t0,
                               fails, worst)));
    });
}

CheckResult check_moments(const CheckOptions& opt) {
    return timed(9, "moments", 900, [&](std::vector<CheckItem>& out) {
        const auto& table = shared_table();
        for (i64 X : {10000, 100000}) {
            auto e = euler_constants(MollifierConfig::desk(X), 1e-5, table);
            out.push_back(item(fmt("c0 < C_X < c1 at X=%lld", static_cast<long long>(X)), e.sandwich(),
                               fmt("%.8f < %.8f < %.8f", e.c0, e.CX, e.c1)));
        }
        auto m = first_mollified_moment(opt.fast ? 3000 : 10000, MollifierConfig::desk(10000), 1e-8, table, opt.jobs);
        const double rel = std::abs(m.moment_value.imag()) / (1 + std::abs(m.moment_value.real()));
        out.push_back(item("first moment", rel < 1e-6 && m.moment_value.real() > 0,
                           fmt("X=%lld: %.6f %+.2ei over %lld members, ratio to C_X X log X %.4f",
                               static_cast<long long>(m.X), m.moment_value.real(), m.moment_value.imag(),
                               static_cast<long long>(m.family_size), m.ratio)));
        auto s = afe_term_split(opt.fast ? 3000 : 10000, {EisensteinInt{1, 0}, 0}, 1e-8, table, opt.jobs);
        out.push_back(item("S1 dominates", s.S1 > std::abs(s.S2) && s.S1 > std::abs(s.S3),
                           fmt("S1 %.4f, |S2| %.4f, |S3| %.4f", s.S1, std::abs(s.S2), std::abs(s.S3))));
    });
}

std::vector<CheckResult> run_checks(const CheckOptions& opt) {
    return {check_constants(opt), check_gauss(opt),   check_reciprocity(opt),
            check_afe(opt),       check_family(opt),  check_analytic(opt),
            check_mollifier(opt), check_grh(opt),     check_moments(opt)};
}

}  // namespace cubic
