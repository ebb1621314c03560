#include "cubic/moments.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "cubic/errors.hpp"
#include "cubic/gauss.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

constexpr double kPi = std::numbers::pi;

// sum over r >= 0 with 3^r N <= B of V(3^r N / Yp) / sqrt(3^r N)
double ramified_weight(double N, double Yp, double B) {
    double acc = 0;
    for (double Na = N; Na <= B; Na *= 3) acc += weight_V(Na / Yp) / std::sqrt(Na);
    return acc;
}

i64 c0_truncation(double tol) {
    // sum_{N > P} 3/N^2 <= 6/P when #{N p <= t} <= t
    double P = 6.0 / std::log1p(tol);
    P = P / (1 - 3 / (P * P)) + 1;
    return static_cast<i64>(std::ceil(P));
}

nlohmann::json cjson(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

bool is_cube(const EisensteinInt& z, const PrimeTable& table) {
    if (z == EisensteinInt{1, 0}) return true;
    for (const auto& [p, e] : table.factor(z).factors)
        if (e % 3 != 0) return false;
    return true;
}

}  // namespace

double c0_prefactor() {
    const double r3 = std::sqrt(3.0);
    return 4 * kPi * kPi * r3 / (2187 * (r3 - 1));
}

double euler_constant_c0(double tol, const PrimeTable& table) {
    if (!(tol > 0)) throw DomainError("tol must be positive");
    const i64 P = c0_truncation(tol);
    if (P > table.limit()) throw SieveCapacity("c0 tail bound needs primes up to " + std::to_string(P));
    double lg = 0;
    for (const auto& p : table.range(0, P)) {
        const double N = static_cast<double>(p.norm);
        lg += std::log1p(-3 / (N * N) + 2 / (N * N * N));
    }
    return c0_prefactor() * std::exp(lg);
}

std::vector<double> b_series(double f, double N, double tol) {
    std::vector<double> b;
    double fm = 1;  // f^m / m!
    for (int m = 0; m < 400; ++m) {
        if (m > 0) fm *= f / m;
        const int e = std::max(1, (m + 2) / 3);
        b.push_back(fm * std::pow(N, -1.5 * e));
        if (b.back() < tol) break;
    }
    return b;
}

EulerConstants euler_constants(const MollifierConfig& cfg, double tol, const PrimeTable& table) {
    if (!(tol > 0)) throw DomainError("tol must be positive");
    EulerConstants out;
    const i64 EJ = cfg.J >= 0 ? cfg.E(cfg.J) : 0;
    const i64 P = std::max(c0_truncation(tol), EJ);
    if (P > table.limit()) throw SieveCapacity("Euler products need primes up to " + std::to_string(P));
    out.truncation = P;
    const double xJ = cfg.J >= 0 ? std::exp(cfg.theta_at(cfg.J) * cfg.logX) : 0.0;
    double l0 = 0, l1 = 0, lX = 0, l1p = 0, lXp = 0;
    for (const auto& p : table.range(0, P)) {
        const double N = static_cast<double>(p.norm);
        l0 += std::log1p(-3 / (N * N) + 2 / (N * N * N));
        const double g = N / ((N + 2) * (std::pow(N, 1.5) - 1));
        l1 += std::log1p(g);
        const bool mid = cfg.J >= 0 && p.norm > cfg.k0 && p.norm <= EJ;
        double alt = 0;
        if (mid || (cfg.J >= 0 && p.norm > cfg.k0 && N < xJ)) {
            auto b = b_series(f_weight(N, cfg.J, cfg), N, tol);
            for (size_t m = 0; m + 1 < b.size(); ++m) alt += (m % 2 ? -1.0 : 1.0) * b[m];
            out.series_tail = std::max(out.series_tail, b.back());
        }
        if (cfg.J >= 0 && p.norm > cfg.k0 && N < xJ) {
            lXp += std::log1p(g * alt);
        } else if (N >= xJ) {
            lXp += std::log1p(g);
            l1p += std::log1p(g);
        }
        if (mid) lX += std::log1p(N / (N + 2) * alt / (1 - std::pow(N, -1.5)));
        else lX += std::log1p(g);
    }
    const double Pd = static_cast<double>(P);
    out.c0 = c0_prefactor() * std::exp(l0);
    out.c1 = out.c0 * std::exp(l1);
    out.CX = out.c0 * std::exp(lX);
    out.c1_printed = out.c0 * std::exp(l1p);
    out.CX_printed = out.c0 * std::exp(lXp);
    out.c0_tail = std::expm1(6 / (Pd * (1 - 3 / (Pd * Pd))));
    out.c1_tail = std::expm1(3 / std::sqrt(Pd) / (1 - std::pow(Pd, -1.5)));
    return out;
}

double euler_constant_c1(const MollifierConfig& cfg, double tol, const PrimeTable& table) {
    return euler_constants(cfg, tol, table).c1;
}

double euler_constant_CX(const MollifierConfig& cfg, double tol, const PrimeTable& table) {
    return euler_constants(cfg, tol, table).CX;
}

std::string MomentReport::to_json() const {
    nlohmann::json j{{"X", X},
                     {"family_size", family_size},
                     {"moment_value", cjson(moment_value)},
                     {"second_moment", second_moment},
                     {"main_term_prediction", main_term_prediction},
                     {"ratio", ratio},
                     {"c0", c0},
                     {"c1", c1},
                     {"CX", CX},
                     {"nonvanishing_count", nonvanishing_count},
                     {"threshold", threshold},
                     {"Y", Y},
                     {"tol", tol}};
    return j.dump(2);
}

MomentReport first_mollified_moment(i64 X, const MollifierConfig& cfg, double tol, const PrimeTable& table,
                                    unsigned jobs, double Y) {
    MomentReport r;
    r.X = X;
    r.Y = Y;
    r.tol = tol;
    auto fam = X >= 2 ? enumerate_family(X, table) : std::vector<FamilyElement>{};
    r.family_size = static_cast<i64>(fam.size());
    const i64 plim = mollifier_prime_limit(cfg);
    if (plim > table.limit()) throw SieveCapacity("mollifier needs primes up to " + std::to_string(plim));
    r.rows.resize(fam.size());
    parallel_for(fam.size(), jobs, [&](size_t i) {
        auto rec = central_value(fam[i], Y, tol, table);
        CharacterRow& row = r.rows[i];
        row.c = fam[i];
        row.L = rec.value;
        row.err_bound = rec.truncation_error_bound;
        row.M = cfg.J < 0 ? std::complex<double>(1) : mollifier_M(prime_character_values(fam[i], plim, table), cfg);
    });
    double maxerr = 0;
    for (const auto& row : r.rows) {
        r.moment_value += row.L * row.M;
        r.second_moment += std::norm(row.L * row.M);
        maxerr = std::max(maxerr, row.err_bound);
    }
    auto ec = euler_constants(cfg, 1e-5, table);
    r.c0 = ec.c0;
    r.c1 = ec.c1;
    r.CX = ec.CX;
    const double Xd = static_cast<double>(X);
    r.main_term_prediction = X >= 2 ? r.CX * Xd * std::log(Xd) : 0;
    r.ratio = r.main_term_prediction > 0 ? r.moment_value.real() / r.main_term_prediction : 0;
    r.threshold = std::max(10 * tol, 10 * maxerr);
    for (const auto& row : r.rows) r.nonvanishing_count += std::abs(row.L) > r.threshold;
    return r;
}

AfeSplit afe_term_split(i64 X, const PrimaryElement& a, double tol, const PrimeTable& table, unsigned jobs) {
    if (X > 100'000) throw DirectSumTooLarge("afe_term_split is a brute-force check for X <= 1e5");
    AfeSplit s;
    auto fam = X >= 2 ? enumerate_family(X, table) : std::vector<FamilyElement>{};
    s.family_size = static_cast<i64>(fam.size());
    s.Yprime = std::sqrt(3.0 * static_cast<double>(X));
    const double Bp = afe_truncation(s.Yprime, tol / 2);
    double Bmax = Bp;
    for (const auto& c : fam) Bmax = std::max(Bmax, afe_truncation(3.0 * c.conductor_norm / s.Yprime, tol / 2));
    const auto elems = primary_elements_upto(static_cast<i64>(Bmax) + 1);
    const EisensteinInt one{1, 0};
    const bool untwisted = a.value == one;

    std::vector<EisensteinInt> ab(elems.size());
    std::vector<char> cube(elems.size(), 0), coprime_a(elems.size(), 1);
    std::vector<double> wp(elems.size(), 0);
    for (size_t i = 0; i < elems.size(); ++i) {
        const double N = static_cast<double>(norm(elems[i]));
        if (N > Bp) break;
        ab[i] = a.value * elems[i];
        cube[i] = is_cube(ab[i], table);
        wp[i] = ramified_weight(N, s.Yprime, Bp);
    }
    if (!untwisted)
        for (size_t i = 0; i < elems.size(); ++i) coprime_a[i] = norm(gcd(a.value, elems[i])) == 1;

    std::vector<double> s1(fam.size(), 0);
    std::vector<std::complex<double>> s2(fam.size()), s3(fam.size()), direct(fam.size());
    parallel_for(fam.size(), jobs, [&](size_t k) {
        const FamilyElement& c = fam[k];
        FamilyCharacter chi_c(c);
        for (size_t i = 0; i < elems.size() && static_cast<double>(norm(elems[i])) <= Bp; ++i) {
            auto v = chi_c(ab[i]);
            if (v.is_zero()) continue;
            if (cube[i]) s1[k] += wp[i];
            else s2[k] += wp[i] * v.value();
        }
        const double Yd = 3.0 * c.conductor_norm / s.Yprime;
        const double Bd = afe_truncation(Yd, tol / 2);
        const auto chia = chi_c(a.value);
        std::complex<double> acc = 0;
        for (size_t i = 0; i < elems.size(); ++i) {
            const double N = static_cast<double>(norm(elems[i]));
            if (N > Bd) break;
            if (!coprime_a[i]) continue;
            auto v = chi_c(elems[i]);
            if (v.is_zero()) continue;
            acc += (chia * v.conj()).value() * ramified_weight(N, Yd, Bd);
        }
        s3[k] = normalized_root_number(c, table) * acc;
        if (untwisted) direct[k] = central_value_absolute(c, s.Yprime, tol, table).value;
    });
    for (size_t k = 0; k < fam.size(); ++k) {
        s.S1 += s1[k];
        s.S2 += s2[k];
        s.S3 += s3[k];
        s.direct += direct[k];
    }
    if (untwisted) {
        // cubes b = beta^3 directly, coprimality to c by gcd
        for (const auto& beta : primary_elements_upto(static_cast<i64>(std::cbrt(Bp)) + 1)) {
            const EisensteinInt b = beta * beta * beta;
            const double N = static_cast<double>(norm(b));
            if (N > Bp) continue;
            i64 count = 0;
            for (const auto& c : fam) count += norm(gcd(c.c.value, b)) == 1;
            s.S1_oracle += ramified_weight(N, s.Yprime, Bp) * static_cast<double>(count);
        }
    }
    return s;
}

NonvanishingReport nonvanishing_report(const MomentReport& m, double tol) {
    NonvanishingReport r;
    double maxerr = 0;
    for (const auto& row : m.rows) maxerr = std::max(maxerr, row.err_bound);
    r.threshold = std::max(10 * tol, 10 * maxerr);
    std::complex<double> first = 0;
    double second = 0;
    for (const auto& row : m.rows) {
        (std::abs(row.L) > r.threshold ? r.count_nonzero : r.count_below_threshold)++;
        first += row.L * row.M;
        second += std::norm(row.L * row.M);
    }
    const double r3 = std::sqrt(3.0);
    r.bound_prefactor = 3 / ((r3 - 1) * (r3 - 1));
    r.bound_loglog_reciprocal = 101.3;
    if (!m.rows.empty() && second > 0) {
        r.empirical_proportion = std::norm(first) / (static_cast<double>(m.rows.size()) * second);
        r.exceeds_bound = r.empirical_proportion > 0 &&
                          std::log(r.empirical_proportion) > std::log(r.bound_prefactor) -
                                                                 std::exp(r.bound_loglog_reciprocal);
    }
    return r;
}

NonvanishingReport nonvanishing_report(i64 X, double tol, const PrimeTable& table, unsigned jobs) {
    return nonvanishing_report(first_mollified_moment(X, MollifierConfig::paper(std::max<i64>(X, 3)), tol, table, jobs),
                               tol);
}

double S_k(double k, int D) {
    const double n = 2 * k * D;
    return 4 * std::pow(5.0, n) * std::tgamma(n + 1) * std::exp(4 * k * (1 + D));
}

std::string PaperConstants::to_json() const {
    nlohmann::json j{{"R1", R1},
                     {"R2", R2},
                     {"S_k", S_k},
                     {"D", D},
                     {"loglog_bound", loglog_bound},
                     {"combined_constant", combined_constant},
                     {"proportion_prefactor", proportion_prefactor},
                     {"proportion_loglog_reciprocal", proportion_loglog_reciprocal},
                     {"c0_prefactor", c0_prefactor},
                     {"R1_theta_interval", {R1_at_theta_lo, R1_at_theta_hi}},
                     {"R1_printed_in_theta_interval", R1_printed_in_theta_interval}};
    return j.dump(2);
}

PaperConstants reproduce_paper_constants() {
    const MollifierConfig p = MollifierConfig::paper(10000);
    PaperConstants c;
    std::tie(c.R1, c.R2) = R1R2(p.k, p.kappa, p.a, p.beta, p.Theta);
    c.D = 1;
    c.S_k = cubic::S_k(p.k, c.D);
    c.loglog_bound = std::log(std::log(kPaperD2) + 2 * std::numbers::e / p.Theta);
    c.combined_constant = kPaperD2 * 2 * std::exp(2 * std::exp(0.25) + 2 * std::exp(0.125));
    const double r3 = std::sqrt(3.0);
    c.proportion_prefactor = 3 / ((r3 - 1) * (r3 - 1));
    c.proportion_loglog_reciprocal = 101.3;
    c.c0_prefactor = cubic::c0_prefactor();
    // Theta is printed to 11 digits; scan its rounding interval
    const double half = 0.5e-10 * 1e-43;
    c.R1_at_theta_lo = R1R2(p.k, p.kappa, p.a, p.beta, p.Theta - half).first;
    c.R1_at_theta_hi = R1R2(p.k, p.kappa, p.a, p.beta, p.Theta + half).first;
    const double printed = -4.7107876828e40;
    c.R1_printed_in_theta_interval = std::min(c.R1_at_theta_lo, c.R1_at_theta_hi) <= printed &&
                                     printed <= std::max(c.R1_at_theta_lo, c.R1_at_theta_hi);
    return c;
}

}  // namespace cubic
