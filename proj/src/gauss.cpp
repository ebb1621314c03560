#include "cubic/gauss.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <vector>

#include "json.hpp"

#include "cubic/errors.hpp"
#include "cubic/family.hpp"

namespace cubic {

namespace {

// e(k/m) for 0 <= k < m
std::vector<std::complex<double>> phase_table(i64 m) {
    std::vector<std::complex<double>> t(static_cast<size_t>(m));
    for (i64 k = 0; k < m; ++k) t[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / m);
    return t;
}

// Coefficients (A, B) with tr(w (x + y omega)) = A x + B y.
std::pair<i64, i64> trace_form(const EisensteinInt& w, i64 m) {
    i64 A = static_cast<i64>(mod_floor(2 * i128{w.a} - w.b, m));
    i64 B = static_cast<i64>(mod_floor(-i128{w.a} - w.b, m));
    return {A, B};
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

struct Fp2 {
    u64 x, y;  // x + y omega over F_p
};

Fp2 fp2_mul(Fp2 u, Fp2 v, u64 p) {
    u64 xx = mulmod(u.x, v.x, p), yy = mulmod(u.y, v.y, p);
    u64 xy = (mulmod(u.x, v.y, p) + mulmod(u.y, v.x, p)) % p;
    return {(xx + p - yy) % p, (xy + p - yy) % p};
}

Fp2 fp2_pow(Fp2 u, u64 e, u64 p) {
    Fp2 r{1, 0};
    while (e) {
        if (e & 1) r = fp2_mul(r, u, p);
        u = fp2_mul(u, u, p);
        e >>= 1;
    }
    return r;
}

std::complex<double> gauss_prime_split(const EisensteinInt& pi) {
    PrimeCharacter chi(pi);
    const u64 p = chi.p();
    auto qs = prime_factors(p - 1);
    u64 g = 2;
    while (true) {
        bool ok = true;
        for (u64 q : qs) ok = ok && powmod(g, (p - 1) / q, p) != 1;
        if (ok) break;
        ++g;
    }
    const int eg = chi.of_residue(g).e;
    // alpha = x mod pi, so tr(alpha / pi) = x tr(pi) / p
    const u64 T = static_cast<u64>(mod_floor(2 * i128{pi.a} - pi.b, static_cast<i64>(p)));
    auto ph = phase_table(static_cast<i64>(p));
    std::complex<double> acc[3] = {};
    u64 x = 1;
    for (u64 i = 0; i + 1 < p; ++i) {
        acc[(i * eg) % 3] += ph[mulmod(x, T, p)];
        x = mulmod(x, g, p);
    }
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2);
    return acc[0] + w * acc[1] + std::conj(w) * acc[2];
}

std::complex<double> gauss_prime_inert(const EisensteinInt& pi) {
    PrimeCharacter chi(pi);
    const u64 p = chi.p();
    const u64 order = p * p - 1;
    auto qs = prime_factors(order);
    Fp2 g{0, 1};
    for (u64 x = 0;; ++x) {
        g = {x % p, 1};
        bool ok = true;
        for (u64 q : qs) {
            Fp2 h = fp2_pow(g, order / q, p);
            ok = ok && !(h.x == 1 && h.y == 0);
        }
        if (ok) break;
    }
    const int eg = chi(EisensteinInt{static_cast<i64>(g.x), static_cast<i64>(g.y)}).e;
    // pi = -p: tr(alpha / pi) = -(2x - y) / p
    auto ph = phase_table(static_cast<i64>(p));
    std::complex<double> acc[3] = {};
    Fp2 a{1, 0};
    for (u64 i = 0; i < order; ++i) {
        u64 k = (2 * a.x + p - a.y) % p;
        acc[(i * eg) % 3] += ph[(p - k) % p];
        a = fp2_mul(a, g, p);
    }
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2);
    return acc[0] + w * acc[1] + std::conj(w) * acc[2];
}

// g(r, pi^k) by the prime-power case analysis; g(1, pi) from the cache.
std::complex<double> gauss_prime_power(EisensteinInt r, const EisensteinPrime& pi, int k, GaussCache& cache) {
    const EisensteinInt P = pow(pi.value(), static_cast<unsigned>(k));
    r = rem_round(r, P);
    int j = 0;
    if (r.is_zero()) {
        j = k;  // plays the role of j = infinity below
    } else {
        while (divides(pi.value(), r)) {
            r = exact_div(r, pi.value());
            ++j;
        }
    }
    const double N = static_cast<double>(pi.norm);
    if (!r.is_zero() && k == j + 1) {
        const double scale = std::pow(N, j);
        if (k % 3 == 0) return -scale;
        std::complex<double> g = PrimeCharacter(pi.value())(r).conj().value() * cache.prime_sum(pi.value());
        return scale * (k % 3 == 1 ? g : std::conj(g));
    }
    if (k % 3 == 0 && (r.is_zero() || k <= j)) return std::pow(N, k) - std::pow(N, k - 1);
    return 0.0;
}

}  // namespace

GaussSumValue gauss_direct(const EisensteinInt& r, const PrimaryElement& n, i64 cap) {
    const i64 N = norm(n.value);
    if (N > cap) throw DirectSumTooLarge("N(n) = " + std::to_string(N) + " exceeds the direct-sum cap");
    if (!is_primary(n.value)) throw DomainError("modulus " + n.value.str() + " is not primary");
    if (N == 1) return {1.0, 1, GaussMethod::direct};
    ResidueSystem rs(n.value, cap);
    // r alpha / n = r alpha conj(n) / N
    auto [A, B] = trace_form(rem_round(r, n.value) * conj(n.value), N);
    auto ph = phase_table(N);
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2);
    std::complex<double> acc[3] = {};
    for (i64 i = 0; i < rs.size(); ++i) {
        EisensteinInt alpha = rs.at(i);
        auto s = cubic_symbol_reciprocity(alpha, n.value);
        if (s.is_zero()) continue;
        i64 k = static_cast<i64>((i128{A} * alpha.a + i128{B} * alpha.b) % N);
        acc[s.e] += ph[k];
    }
    return {acc[0] + w * acc[1] + std::conj(w) * acc[2], N, GaussMethod::direct};
}

std::complex<double> gauss_prime(const EisensteinInt& pi) {
    if (!is_primary(pi)) throw DomainError("prime " + pi.str() + " is not primary");
    PrimeCharacter chi(pi);
    return chi.split() ? gauss_prime_split(pi) : gauss_prime_inert(pi);
}

std::complex<double> GaussCache::prime_sum(const EisensteinInt& pi) {
    {
        std::shared_lock lock(mu_);
        auto it = prime_.find(pi);
        if (it != prime_.end()) return it->second;
    }
    std::complex<double> v = gauss_prime(pi);
    std::unique_lock lock(mu_);
    prime_[pi] = v;
    return v;
}

bool GaussCache::lookup(const EisensteinInt& r, const EisensteinInt& n, std::complex<double>& out) const {
    std::shared_lock lock(mu_);
    auto it = full_.find({r, n});
    if (it == full_.end()) return false;
    out = it->second;
    return true;
}

void GaussCache::store(const EisensteinInt& r, const EisensteinInt& n, std::complex<double> v) {
    std::unique_lock lock(mu_);
    full_[{r, n}] = v;
}

size_t GaussCache::size() const {
    std::shared_lock lock(mu_);
    return prime_.size() + full_.size();
}

void GaussCache::save(const std::string& path, i64 limit) const {
    std::shared_lock lock(mu_);
    std::ofstream out(path);
    if (!out) throw CacheFormatError("cannot write " + path);
    out << nlohmann::json{{"format", "cubic-gauss"}, {"version", 1}, {"limit", limit}}.dump() << '\n';
    for (const auto& [pi, v] : prime_)
        out << nlohmann::json{{"a", pi.a}, {"b", pi.b}, {"re", v.real()}, {"im", v.imag()}}.dump() << '\n';
}

void GaussCache::load(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    if (!in || !std::getline(in, line)) throw CacheFormatError("cannot read " + path);
    auto header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("format", "") != "cubic-gauss" || header.value("version", 0) != 1)
        throw CacheFormatError(path + ": bad header");
    std::unique_lock lock(mu_);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        prime_[{j.at("a").get<i64>(), j.at("b").get<i64>()}] = {j.at("re").get<double>(), j.at("im").get<double>()};
    }
}

GaussCache& default_gauss_cache() {
    static GaussCache cache;
    return cache;
}

GaussSumValue gauss_fast(const EisensteinInt& r, const PrimaryElement& n, const PrimeTable& table,
                         GaussCache* cache) {
    if (!is_primary(n.value)) throw DomainError("modulus " + n.value.str() + " is not primary");
    const i64 N = norm(n.value);
    GaussCache local;
    GaussCache& c = cache ? *cache : local;
    const EisensteinInt r0 = rem_round(r, n.value);
    std::complex<double> out;
    if (c.lookup(r0, n.value, out)) return {out, N, GaussMethod::recurrence};
    // g(r, P m) = g(r, P) g(r P, m)
    std::complex<double> acc = 1.0;
    EisensteinInt rest = n.value, shift = r0;
    for (const auto& [pi, k] : table.factor(n.value).factors) {
        EisensteinInt P = pow(pi.value(), static_cast<unsigned>(k));
        acc *= gauss_prime_power(shift, pi, k, c);
        if (acc == 0.0) break;
        rest = exact_div(rest, P);
        shift = rem_round(rem_round(shift, rest) * rem_round(P, rest), rest);
    }
    c.store(r0, n.value, acc);
    return {acc, N, GaussMethod::recurrence};
}

std::complex<double> root_number(const FamilyElement& c, const PrimeTable& table, GaussCache* cache) {
    auto g1 = gauss_fast(EisensteinInt{1, 0}, c.c1, table, cache).value;
    auto g2 = gauss_fast(EisensteinInt{1, 0}, c.c2, table, cache).value;
    return std::conj(g1) * g2;
}

std::complex<double> normalized_root_number(const FamilyElement& c, const PrimeTable& table, GaussCache* cache) {
    return root_number(c, table, cache) / std::sqrt(static_cast<double>(c.conductor_norm));
}

std::complex<double> root_number_direct(const FamilyElement& c, i64 cap) {
    const i64 N = c.conductor_norm;
    if (N > cap) throw DirectSumTooLarge("conductor norm " + std::to_string(N) + " exceeds the direct-sum cap");
    ResidueSystem rs(c.q.value, cap);
    // x / (q sqrt(-3)) = x conj(q) conj(sqrt(-3)) / (3 N), sqrt(-3) = 1 + 2 omega
    const i64 M = 3 * N;
    auto [A, B] = trace_form(conj(c.q.value) * EisensteinInt{-1, -2}, M);
    auto ph = phase_table(M);
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2);
    std::complex<double> acc[3] = {};
    for (i64 i = 0; i < rs.size(); ++i) {
        EisensteinInt x = rs.at(i);
        auto s = chi(c, x);
        if (s.is_zero()) continue;
        i64 k = static_cast<i64>((i128{A} * x.a + i128{B} * x.b) % M);
        acc[s.e] += ph[k];
    }
    return acc[0] + w * acc[1] + std::conj(w) * acc[2];
}

}  // namespace cubic
