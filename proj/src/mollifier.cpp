#include "cubic/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "json.hpp"

#include "cubic/errors.hpp"

namespace cubic {

namespace {

constexpr double kE = std::numbers::e;

double factorial(int n) { return std::tgamma(n + 1.0); }

// Prime ideals (including 1 - omega) with lo < N <= hi.
template <class Fn>
void for_prime_ideals(const PrimeTable& table, i64 lo, i64 hi, Fn fn) {
    if (lo < 3 && hi >= 3) fn(3.0);
    for (const auto& p : table.range(lo, hi)) fn(static_cast<double>(p.norm));
}

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

}  // namespace

void MollifierConfig::derive() {
    if (!(k > 0) || !(kappa > 0) || X < 3) throw ConfigError("k, kappa must be positive and X >= 3");
    k0 = std::max<i64>(3, static_cast<i64>(std::floor(4 * k * k)));
    logX = std::log(static_cast<double>(X));
    const double L2 = std::log(logX);
    const double arg = Theta * std::pow(L2, alpha);
    J = arg > 0 ? static_cast<int>(std::floor(std::log(arg))) : -1;
    if (J < -1) J = -1;
    theta.clear();
    ell.clear();
    endpoint.clear();
    theta.push_back(std::log(static_cast<double>(k0)) / logX);
    endpoint.push_back(k0);
    for (int j = 0; j <= J; ++j) {
        double t = std::exp(static_cast<double>(j)) / std::pow(L2, alpha);
        theta.push_back(t);
        ell.push_back(2 * static_cast<int>(std::floor(std::pow(t, -beta))));
        endpoint.push_back(static_cast<i64>(std::floor(std::exp(t * logX) * (1 + 1e-15))));
        if (endpoint.back() <= endpoint[endpoint.size() - 2])
            throw ConfigError("interval endpoints not increasing at j = " + std::to_string(j));
    }
}

int MollifierConfig::s(int j) const { return 2 * static_cast<int>(std::floor(1.0 / (4 * a * theta_at(j)))); }

MollifierConfig MollifierConfig::make(double k, double kappa, double alpha, double beta, double Theta, i64 X,
                                      double a) {
    MollifierConfig c;
    c.k = k;
    c.kappa = kappa;
    c.alpha = alpha;
    c.beta = beta;
    c.Theta = Theta;
    c.X = X;
    c.a = a;
    c.derive();
    return c;
}

MollifierConfig MollifierConfig::desk(i64 X) { return make(2, 1, 1.2, 0.75, 0.5, X); }

MollifierConfig MollifierConfig::paper(i64 X) { return make(2, 1, 7, 0.916, 5.8025935515e-44, X); }

std::string MollifierConfig::to_json() const {
    nlohmann::json j{{"k", k},     {"kappa", kappa}, {"alpha", alpha}, {"beta", beta}, {"Theta", Theta},
                     {"a", a},     {"epsilon", epsilon}, {"D", D},     {"X", X},       {"k0", k0},
                     {"J", J},     {"theta", theta}, {"ell", ell},     {"endpoints", endpoint}};
    return j.dump(2);
}

MollifierConfig MollifierConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("config is not a JSON object");
    MollifierConfig c;
    if (j.contains("preset")) {
        std::string p = j["preset"].get<std::string>();
        if (p == "desk") c = desk(j.value("X", c.X));
        else if (p == "paper") c = paper(j.value("X", c.X));
        else throw ConfigError("unknown preset " + p);
    }
    try {
        c.k = j.value("k", c.k);
        c.kappa = j.value("kappa", c.kappa);
        c.alpha = j.value("alpha", c.alpha);
        c.beta = j.value("beta", c.beta);
        c.Theta = j.value("Theta", c.Theta);
        c.a = j.value("a", c.a);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.D = j.value("D", c.D);
        c.X = j.value("X", c.X);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    c.derive();
    return c;
}

bool ValidationReport::all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.second; });
}

std::pair<double, double> R1R2(double k, double kappa, double a, double beta, double Theta) {
    const double q = beta - 2.0 / 3 - 2 * a * (8 * k * kappa + 1) * std::pow(Theta, 1 - beta) / 3;
    const double inner = k * kE + std::log(std::cbrt(5 / (3 * a * a)) * kE * kE * k / 2) / (4 * a) +
                         std::log(Theta) / (4 * a) * q;
    return {kE / Theta * inner, kE * q / (4 * a * Theta)};
}

ValidationReport validate(const MollifierConfig& c) {
    ValidationReport r;
    const double kk = c.k * c.kappa, b = c.beta, T = c.Theta, eps = c.epsilon, a = c.a;
    const double eb = std::exp(1 - b), inv = 1 / (1 - b);
    const double ratio = (1 - 2 * eps) / (1 + 2 * eps);
    auto add = [&](const char* name, bool ok) { r.conditions.emplace_back(name, ok); };
    add("alphabetacond", c.alpha * b > (2 * kk + 3) / 2);
    add("eta0bound", T <= std::pow(ratio / (8 * kk + 12 + 4 * kk * eb / (eb - 1)), inv));
    add("etaJcond", T <= std::pow((eb - 1) * (1 - 2 * eps) / (2 * eb * (2 * kk + 1) * (1 + 2 * eps)), inv));
    add("thetacond1", T <= std::pow(1 / (8 * a * (kk + 1)), inv));
    const double etaj = (eb - 1) / (2 * (2 * kk + 1) * eb) * (ratio - 1 / a);
    add("etajcond", etaj > 0 && T <= std::pow(etaj, inv));
    const double q = b - 2.0 / 3 - 2 * a * (8 * kk + 1) * std::pow(T, 1 - b) / 3;
    add("betacond", q > 0);
    add("ThetaBetacond", b > 2.0 / 3 && T < std::pow((3 * b - 2) / (2 * a * (8 * kk + 3)), inv));
    add("thetacond4", T < std::pow(2 / (kE * kE * c.k) * std::cbrt(3 * a * a / 5), 1 / (b - 2.0 / 3)));
    add("thetacond5", T < 1 / (8 * c.k * c.D + 4 * std::log(16 * std::sqrt(5.0))));
    const double m = std::min((2 - 132 * eps) / (264 * eps + 97), (3 - 156 * eps) / (312 * eps + 149));
    add("ThetaCond1stmoment", T <= std::pow((eb - 1) / (2 * eb) * m, inv));
    std::tie(r.R1, r.R2) = R1R2(c.k, c.kappa, a, b, T);
    add("R1<0", r.R1 < 0);
    add("R2>0", r.R2 > 0);
    const double L2 = std::log(std::log(static_cast<double>(c.X)));
    r.Xcond_loglog = std::pow(L2, c.alpha * b) > 2;
    r.Xcond_logloglog = L2 > 0 && c.alpha * std::log(L2) >= 1 - std::log(T);
    return r;
}

double truncated_exp(double x, int ell) {
    double r = 1;
    for (int n = ell; n >= 1; --n) r = 1 + x * r / n;
    return r;
}

std::complex<double> truncated_exp(std::complex<double> z, int ell) {
    std::complex<double> r = 1;
    for (int n = ell; n >= 1; --n) r = 1.0 + z * r / static_cast<double>(n);
    return r;
}

double f_weight(double p_norm, int j, const MollifierConfig& cfg) {
    const double u = std::log(p_norm) / (cfg.theta_at(j) * cfg.logX);
    return std::exp(-u) * (1 - u);
}

i64 mollifier_prime_limit(const MollifierConfig& cfg) {
    if (cfg.J < 0) return cfg.k0;
    return std::max(cfg.E(cfg.J), cfg.k0);
}

PrimeCharacterValues prime_character_values(const FamilyElement& c, i64 limit, const PrimeTable& table) {
    PrimeCharacterValues v;
    v.limit = limit;
    FamilyCharacter chi_c(c);
    for (const auto& p : table.range(0, limit)) {
        v.primes.push_back(p);
        v.chi.push_back(chi_c(p.value()));
    }
    return v;
}

std::complex<double> F_r(const PrimeCharacterValues& v, int r, int j, const MollifierConfig& cfg) {
    if (r < 0 || r > cfg.J) return 0.0;
    const i64 lo = cfg.E(r - 1), hi = cfg.E(r);
    if (hi > v.limit) throw SieveCapacity("character values do not reach the interval end");
    std::complex<double> s = 0;
    for (size_t i = 0; i < v.primes.size(); ++i) {
        const i64 N = v.primes[i].norm;
        if (N <= lo) continue;
        if (N > hi) break;
        if (v.chi[i].is_zero()) continue;
        const double Nd = static_cast<double>(N);
        s += v.chi[i].value() * (f_weight(Nd, j, cfg) / std::sqrt(Nd));
    }
    return s;
}

std::complex<double> mollifier_M(const PrimeCharacterValues& v, const MollifierConfig& cfg) {
    std::complex<double> m = 1;
    for (int j = 0; j <= cfg.J; ++j) m *= truncated_exp(-F_r(v, j, cfg.J, cfg) / cfg.kappa, cfg.ell[j]);
    return m;
}

std::complex<double> mollifier_M(const FamilyElement& c, const MollifierConfig& cfg, const PrimeTable& table) {
    return mollifier_M(prime_character_values(c, mollifier_prime_limit(cfg), table), cfg);
}

std::complex<double> mollifier_factor_product(const std::vector<std::complex<double>>& z, int ell, double kappa) {
    std::complex<double> s = 0;
    for (const auto& x : z) s += x;
    return truncated_exp(-s / kappa, ell);
}

std::complex<double> mollifier_factor_expansion(const std::vector<std::complex<double>>& z, int ell, double kappa) {
    if (binom(static_cast<int>(z.size()) + ell, ell) > 2e7) throw DomainError("coefficient expansion too large");
    std::function<std::complex<double>(size_t, int)> rec = [&](size_t i, int budget) -> std::complex<double> {
        if (i == z.size()) return 1.0;
        std::complex<double> total = 0, term = 1;
        const std::complex<double> w = -z[i] / kappa;
        for (int e = 0; e <= budget; ++e) {
            total += term * rec(i + 1, budget - e);
            term *= w / static_cast<double>(e + 1);
        }
        return total;
    };
    return rec(0, ell);
}

std::complex<double> mollifier_Mj_expansion(const PrimeCharacterValues& v, int j, const MollifierConfig& cfg) {
    if (j < 0 || j > cfg.J) return 1.0;
    std::vector<std::complex<double>> z;
    for (size_t i = 0; i < v.primes.size(); ++i) {
        const i64 N = v.primes[i].norm;
        if (N <= cfg.E(j - 1) || N > cfg.E(j)) continue;
        const double Nd = static_cast<double>(N);
        z.push_back(v.chi[i].value() * (f_weight(Nd, cfg.J, cfg) / std::sqrt(Nd)));
    }
    return mollifier_factor_expansion(z, cfg.ell[j], cfg.kappa);
}

double nu(const std::vector<int>& exponents) {
    double r = 1;
    for (int e : exponents) r /= factorial(e);
    return r;
}

double nu_n_truncated(const std::vector<int>& exponents, int n, int ell) {
    if (n <= 0) {
        return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; }) ? 1.0 : 0.0;
    }
    // distribute each prime's exponent among n factors, tracking Omega of every factor
    std::vector<int> omega(static_cast<size_t>(n), 0);
    std::function<double(size_t, int, int)> rec = [&](size_t prime, int slot, int left) -> double {
        if (prime == exponents.size()) return 1.0;
        if (slot == n - 1) {
            if (omega[slot] + left > ell) return 0.0;
            omega[slot] += left;
            double r = rec(prime + 1, 0, prime + 1 < exponents.size() ? exponents[prime + 1] : 0) / factorial(left);
            omega[slot] -= left;
            return r;
        }
        double total = 0;
        for (int e = 0; e <= left && omega[slot] + e <= ell; ++e) {
            omega[slot] += e;
            total += rec(prime, slot + 1, left - e) / factorial(e);
            omega[slot] -= e;
        }
        return total;
    };
    if (exponents.empty()) return 1.0;
    return rec(0, 0, exponents[0]);
}

double nu_n(const std::vector<int>& exponents, int n) {
    int total = 0;
    for (int e : exponents) total += e;
    return nu_n_truncated(exponents, n, total);
}

DSDiagnostics diagnostics_DS(const PrimeCharacterValues& v, int j, const MollifierConfig& cfg) {
    if (j < 0 || j > cfg.J) throw DomainError("diagnostics_DS needs 0 <= j <= J");
    DSDiagnostics d;
    d.D = 1;
    for (int r = 0; r <= j; ++r)
        d.D *= (1 + std::exp(-cfg.ell[r])) * truncated_exp(cfg.k * F_r(v, r, j, cfg).real(), cfg.ell[r]);
    const double tl = cfg.theta_at(j) * cfg.logX;
    const i64 hi = static_cast<i64>(std::floor(std::exp(tl / 2) * (1 + 1e-15)));
    double s = 0;
    for (size_t i = 0; i < v.primes.size(); ++i) {
        const i64 N = v.primes[i].norm;
        if (N <= cfg.k0) continue;
        if (N > hi) break;
        if (v.chi[i].is_zero()) continue;
        const double Nd = static_cast<double>(N);
        s += v.chi[i].pow(2).value().real() / (2 * std::pow(Nd, 1 + 2 / tl)) * (1 - 2 * std::log(Nd) / tl);
    }
    d.S = std::exp(cfg.k * s);
    for (int r = 0; r <= cfg.J; ++r) {
        double mx = -INFINITY;
        for (int jj = r; jj <= cfg.J; ++jj) mx = std::max(mx, F_r(v, r, jj, cfg).real());
        d.in_T.push_back(mx <= cfg.ell[r] / (cfg.k * kE * kE));
    }
    return d;
}

double explicit_remainder(double x, const MollifierConfig& cfg, const PrimeTable& table) {
    if (x < 3) throw DomainError("explicit_remainder needs x >= 3");
    const double lx = std::log(x), sigma = 0.5 + 1 / lx;
    double s = 0;
    for_prime_ideals(table, 0, static_cast<i64>(std::floor(x)), [&](double N) {
        double Nm = N;
        for (int m = 1; Nm <= x; ++m, Nm *= N)
            if (m >= 3 || N <= static_cast<double>(cfg.k0)) s += std::pow(Nm, -sigma) / m * std::log(x / Nm) / lx;
    });
    const double pi2 = std::numbers::pi * std::numbers::pi;
    s += std::log(3 * sigma * sigma / (4 * pi2)) / lx;
    s += 2 * std::exp(-1.0) / (std::sqrt(x) * lx * lx * sigma * sigma);
    return s;
}

T0Check check_InT0orNot(const PrimeCharacterValues& v, double absL, const MollifierConfig& cfg,
                        const PrimeTable& table) {
    T0Check t;
    t.lhs = std::pow(absL, cfg.k);
    if (cfg.J < 0) return t;
    const int J = cfg.J;
    double mx = -INFINITY;
    for (int j = 0; j <= J; ++j) mx = std::max(mx, F_r(v, 0, j, cfg).real());
    t.in_T0 = mx <= cfg.ell[0] / (cfg.k * kE * kE);
    if (!t.in_T0) return t;
    auto block = [&](int j) {
        DSDiagnostics d = diagnostics_DS(v, j, cfg);
        const double x = std::exp(cfg.theta_at(j) * cfg.logX);
        return std::exp(cfg.k / cfg.theta_at(j) + cfg.k * explicit_remainder(x, cfg, table)) * d.D * d.S;
    };
    double rhs = 0;
    for (int j = 0; j < J; ++j) {
        const double b = block(j);
        for (int u = j + 1; u <= J; ++u) {
            double base = kE * kE * cfg.k * F_r(v, j + 1, u, cfg).real() / cfg.ell[j + 1];
            rhs += b * std::pow(base, cfg.s(j + 1));
        }
    }
    rhs += block(J);
    t.rhs = rhs;
    t.holds = t.lhs <= t.rhs;
    return t;
}

EstimateCheck prime_sum_item1(i64 k0, const PrimeTable& table) {
    EstimateCheck e{"item1 k0=" + std::to_string(k0)};
    for_prime_ideals(table, k0, table.limit(), [&](double N) { e.lhs += std::pow(N, -1.5); });
    e.lhs += 4 / std::sqrt(static_cast<double>(table.limit()));
    e.rhs = 1;
    e.pass = e.lhs < e.rhs;
    return e;
}

EstimateCheck prime_sum_item2(const MollifierConfig& cfg, int r, double sigma, const PrimeTable& table) {
    EstimateCheck e{"item2 r=" + std::to_string(r) + " sigma=" + std::to_string(sigma)};
    for_prime_ideals(table, cfg.E(r - 1), cfg.E(r), [&](double N) { e.lhs += std::pow(N, -sigma); });
    e.rhs = 2 / ((sigma - 1) * std::pow(static_cast<double>(cfg.E(r - 1)), sigma - 1));
    e.pass = e.lhs < e.rhs;
    return e;
}

EstimateCheck prime_sum_item3(const MollifierConfig& cfg, const PrimeTable& table) {
    EstimateCheck e{"item3"};
    for_prime_ideals(table, cfg.E(-1), cfg.E(0), [&](double N) { e.lhs += 1 / N; });
    e.rhs = 2 * std::log(cfg.theta_at(0) * cfg.logX);
    e.pass = e.lhs < e.rhs;
    return e;
}

EstimateCheck prime_sum_item4(const MollifierConfig& cfg, int j, double C, const PrimeTable& table) {
    EstimateCheck e{"item4 j=" + std::to_string(j)};
    double s = 0;
    for_prime_ideals(table, cfg.E(j), cfg.E(cfg.J), [&](double N) { s += 1 / N; });
    e.lhs = std::abs(s - (cfg.J - j)) * cfg.theta_at(j) * cfg.logX;
    e.rhs = C;
    e.pass = e.lhs <= e.rhs;
    return e;
}

EstimateCheck prime_sum_item5(const MollifierConfig& cfg, int j, const PrimeTable& table) {
    EstimateCheck e{"item5 j=" + std::to_string(j)};
    for_prime_ideals(table, cfg.k0, cfg.E(j), [&](double N) { e.lhs += std::log(N) * std::log(N) / N; });
    const double l = cfg.theta_at(j) * cfg.logX;
    e.rhs = 2 * l * l;
    e.pass = e.lhs < e.rhs;
    return e;
}

std::vector<double> d_constant_values(i64 base, const PrimeTable& table) {
    std::vector<double> out;
    const auto& ps = table.rational_primes();
    i64 lo = base;
    for (int n = 1; lo * 5 <= table.limit(); ++n, lo *= 5) {
        double s = 0;
        auto first = std::upper_bound(ps.begin(), ps.end(), static_cast<std::uint32_t>(lo));
        for (auto it = first; it != ps.end() && *it <= lo * 5; ++it) s += 1.0 / *it;
        out.push_back(n * s);
    }
    return out;
}

}  // namespace cubic
