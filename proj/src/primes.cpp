#include "cubic/primes.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "json.hpp"

#include "cubic/errors.hpp"

namespace cubic {

namespace {

constexpr i64 kSpfLimit = 20'000'000;

bool prime_less(const EisensteinPrime& x, const EisensteinPrime& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return x.value() < y.value();
}

}  // namespace

int Factorization::Omega() const {
    int s = 0;
    for (const auto& [p, e] : factors) s += e;
    return s;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.second == 1; });
}

EisensteinInt Factorization::product() const {
    EisensteinInt r = kUnits[unit];
    for (const auto& [p, e] : factors) r = r * pow(p.value(), static_cast<unsigned>(e));
    return r;
}

std::pair<EisensteinPrime, EisensteinPrime> split_primes_above(u64 p) {
    if (p % 3 != 1 || !is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not a split prime");
    u64 s = sqrt_mod(p - 3, p);
    u64 t = mulmod((s + p - 1) % p, (p + 1) / 2, p);  // root of t^2 + t + 1
    EisensteinInt g = gcd(EisensteinInt{static_cast<i64>(p), 0}, EisensteinInt{static_cast<i64>(t), -1});
    if (norm(g) != static_cast<i64>(p)) throw DomainError("split prime construction failed at " + std::to_string(p));
    EisensteinPrime a{primary_associate(g), static_cast<i64>(p), PrimeKind::split, static_cast<i64>(p)};
    EisensteinPrime b{primary_associate(conj(g)), static_cast<i64>(p), PrimeKind::split, static_cast<i64>(p)};
    if (b.value() < a.value()) std::swap(a, b);
    return {a, b};
}

void PrimeTable::build_rational(i64 upto) {
    const i64 n = std::max<i64>(upto, 2);
    const i64 spf_n = std::min(n, kSpfLimit);
    spf_.assign(static_cast<size_t>(spf_n) + 1, 0);
    std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
    rational_.clear();
    for (i64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        rational_.push_back(static_cast<std::uint32_t>(i));
        if (i <= spf_n) spf_[i] = static_cast<std::uint32_t>(i);
        for (i64 j = i * i; j <= n; j += i) {
            if (!composite[j]) {
                composite[j] = true;
                if (j <= spf_n) spf_[j] = static_cast<std::uint32_t>(i);
            }
        }
    }
}

PrimeTable::PrimeTable(i64 norm_limit) : limit_(norm_limit) {
    if (norm_limit < 2) throw DomainError("norm_limit must be at least 2");
    if (norm_limit > kMaxLimit) throw SieveCapacity("norm limit " + std::to_string(norm_limit) + " above capacity");
    build_rational(norm_limit);
    for (std::uint32_t p : rational_) {
        if (p % 3 == 1) {
            auto [a, b] = split_primes_above(p);
            primes_.push_back(a);
            primes_.push_back(b);
        } else if (p % 3 == 2 && static_cast<i64>(p) * p <= norm_limit) {
            primes_.push_back({primary_associate(EisensteinInt{static_cast<i64>(p), 0}), static_cast<i64>(p) * p,
                               PrimeKind::inert, static_cast<i64>(p)});
        }
    }
    std::sort(primes_.begin(), primes_.end(), prime_less);
}

std::span<const EisensteinPrime> PrimeTable::range(i64 lo, i64 hi) const {
    if (hi > limit_) throw SieveCapacity("prime range up to " + std::to_string(hi) + " exceeds sieve limit " +
                                         std::to_string(limit_));
    auto first = std::upper_bound(primes_.begin(), primes_.end(), lo,
                                  [](i64 v, const EisensteinPrime& p) { return v < p.norm; });
    auto last = std::upper_bound(primes_.begin(), primes_.end(), hi,
                                 [](i64 v, const EisensteinPrime& p) { return v < p.norm; });
    if (last < first) last = first;
    return {first, last};
}

std::vector<std::pair<u64, int>> PrimeTable::factor_rational(u64 n) const {
    std::vector<std::pair<u64, int>> out;
    auto push = [&](u64 p) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.emplace_back(p, 1);
    };
    if (n < spf_.size()) {
        while (n > 1) {
            u64 p = spf_[n];
            push(p);
            n /= p;
        }
        return out;
    }
    for (std::uint32_t p : rational_) {
        if (static_cast<u64>(p) * p > n) break;
        while (n % p == 0) {
            push(p);
            n /= p;
        }
    }
    if (n > 1) push(n);
    return out;
}

std::pair<EisensteinPrime, EisensteinPrime> PrimeTable::split_pair(u64 p) const {
    if (static_cast<i64>(p) <= limit_) {
        auto r = range(static_cast<i64>(p) - 1, static_cast<i64>(p));
        if (r.size() == 2) return {r[0], r[1]};
    }
    return split_primes_above(p);
}

Factorization PrimeTable::factor(const EisensteinInt& n) const {
    if (n.is_zero()) throw DomainError("cannot factor 0");
    i128 nn = norm128(n);
    if (nn % 3 == 0) throw DomainError(n.str() + " is divisible by 1 - omega; only primary elements factor");
    if (nn > i128{limit_} * limit_)
        throw FactorizationUnavailable("N(" + n.str() + ") exceeds the square of the sieve limit");
    Factorization f;
    EisensteinInt rest = n;
    for (auto [p, e] : factor_rational(static_cast<u64>(nn))) {
        if (p % 3 == 2) {
            EisensteinPrime q{primary_associate(EisensteinInt{static_cast<i64>(p), 0}), static_cast<i64>(p * p),
                              PrimeKind::inert, static_cast<i64>(p)};
            for (int i = 0; i < e / 2; ++i) rest = exact_div(rest, q.value());
            f.factors.emplace_back(q, e / 2);
            continue;
        }
        auto [x, y] = split_pair(p);
        int kx = 0;
        while (kx < e && divides(x.value(), rest)) {
            rest = exact_div(rest, x.value());
            ++kx;
        }
        for (int i = kx; i < e; ++i) rest = exact_div(rest, y.value());
        if (kx > 0) f.factors.emplace_back(x, kx);
        if (kx < e) f.factors.emplace_back(y, e - kx);
    }
    f.unit = unit_index(rest);
    if (f.unit < 0) throw DomainError("factorization of " + n.str() + " left a non-unit cofactor");
    std::sort(f.factors.begin(), f.factors.end(),
              [](const auto& u, const auto& v) { return prime_less(u.first, v.first); });
    return f;
}

i64 PrimeTable::pi_K(double x) const {
    if (x > static_cast<double>(limit_)) throw SieveCapacity("pi_K beyond the sieve limit");
    if (x < 2) return 0;
    i64 hi = static_cast<i64>(std::floor(x));
    return static_cast<i64>(range(0, hi).size()) + (hi >= 3 ? 1 : 0);
}

void PrimeTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw CacheFormatError("cannot write " + path);
    out << nlohmann::json{{"format", "eisenstein-primes"}, {"version", 1}, {"limit", limit_}}.dump() << '\n';
    for (const auto& p : primes_) {
        out << nlohmann::json{{"a", p.value().a}, {"b", p.value().b}, {"norm", p.norm},
                              {"kind", p.kind == PrimeKind::split ? "split" : "inert"}}
                   .dump()
            << '\n';
    }
}

PrimeTable PrimeTable::load(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    if (!in || !std::getline(in, line)) throw CacheFormatError("cannot read " + path);
    auto header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("format", "") != "eisenstein-primes" || header.value("version", 0) != 1)
        throw CacheFormatError(path + ": bad header");
    PrimeTable t;
    t.limit_ = header.at("limit").get<i64>();
    t.build_rational(t.limit_);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        EisensteinInt v{j.at("a").get<i64>(), j.at("b").get<i64>()};
        bool split = j.at("kind").get<std::string>() == "split";
        i64 nrm = j.at("norm").get<i64>();
        if (norm(v) != nrm || !is_primary(v)) throw CacheFormatError(path + ": corrupt record " + line);
        t.primes_.push_back({PrimaryElement{v, 0}, nrm, split ? PrimeKind::split : PrimeKind::inert,
                             split ? nrm : static_cast<i64>(isqrt(static_cast<u64>(nrm)))});
    }
    return t;
}

PrimeTable PrimeTable::cached(i64 norm_limit, const std::string& cache_dir) {
    if (cache_dir.empty()) return PrimeTable(norm_limit);
    namespace fs = std::filesystem;
    fs::path path = fs::path(cache_dir) / ("primes-" + std::to_string(norm_limit) + ".jsonl");
    if (fs::exists(path)) {
        try {
            return load(path.string());
        } catch (const CacheFormatError&) {
            // fall through and rebuild
        }
    }
    PrimeTable t(norm_limit);
    fs::create_directories(cache_dir);
    t.save(path.string());
    return t;
}

CubicSymbolValue cubic_symbol(const EisensteinInt& alpha, const PrimaryElement& n, const PrimeTable& table) {
    if (n.value.is_zero()) throw DomainError("cubic symbol modulo 0");
    CubicSymbolValue r{0};
    for (const auto& [p, e] : table.factor(n.value).factors) r = r * PrimeCharacter(p.value())(alpha).pow(e);
    return r;
}

i64 ideal_count(double x) {
    if (x < 1) return 0;
    // count (a, b) != 0 with a^2 - ab + b^2 <= X, i.e. (2a - b)^2 + 3 b^2 <= 4X
    const i64 X = static_cast<i64>(std::floor(x));
    i64 total = 0;
    const i64 bmax = static_cast<i64>(isqrt(static_cast<u64>(4 * X / 3)));
    for (i64 b = -bmax; b <= bmax; ++b) {
        i64 rem = 4 * X - 3 * b * b;
        if (rem < 0) continue;
        i64 s = static_cast<i64>(isqrt(static_cast<u64>(rem)));
        // b - s <= 2a <= b + s
        i64 lo = static_cast<i64>(floor_div(b - s + 1, 2));
        i64 hi = static_cast<i64>(floor_div(b + s, 2));
        total += hi - lo + 1;
    }
    return (total - 1) / 6;
}

std::vector<std::uint32_t> ideal_norm_counts(i64 x) {
    std::vector<std::uint32_t> a(static_cast<size_t>(std::max<i64>(x, 0)) + 1, 0);
    // a = 1 * chi_{-3}
    std::vector<int> acc(a.size(), 0);
    for (i64 d = 1; d <= x; ++d) {
        int c = d % 3 == 0 ? 0 : (d % 3 == 1 ? 1 : -1);
        if (c == 0) continue;
        for (i64 m = d; m <= x; m += d) acc[m] += c;
    }
    for (size_t i = 1; i < a.size(); ++i) a[i] = static_cast<std::uint32_t>(acc[i]);
    return a;
}

double li(double x) {
    if (x <= 2) return 0.0;
    auto f = [](double t) { return 1.0 / std::log(t); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 2.0, x, 15, 1e-12);
}

double zeta_K_residue() { return std::numbers::pi / (3.0 * std::sqrt(3.0)); }

}  // namespace cubic
