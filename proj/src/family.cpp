#include "cubic/family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"

#include "cubic/errors.hpp"

namespace cubic {

namespace {

struct Mod9 {
    int a, b;
};

Mod9 mod9(const EisensteinInt& z) {
    return {static_cast<int>(mod_floor(z.a, 9)), static_cast<int>(mod_floor(z.b, 9))};
}

Mod9 mul9(Mod9 x, Mod9 y) {
    int bd = x.b * y.b;
    return {((x.a * y.a - bd) % 9 + 9) % 9, ((x.a * y.b + x.b * y.a - bd) % 9 + 9) % 9};
}

EisensteinInt product(const std::vector<EisensteinInt>& v) {
    EisensteinInt r{1, 0};
    for (const auto& z : v) r = r * z;
    return r;
}

bool is_one_mod9(const EisensteinInt& c) { return mod_floor(c.a, 9) == 1 && mod_floor(c.b, 9) == 0; }

}  // namespace

FamilyElement FamilyElement::conjugate() const {
    return make_family_element(primes2, primes1);
}

std::string FamilyElement::key() const { return c1.value.str() + "|" + c2.value.str(); }

bool family_less(const FamilyElement& x, const FamilyElement& y) {
    if (x.conductor_norm != y.conductor_norm) return x.conductor_norm < y.conductor_norm;
    return x.c.value < y.c.value;
}

FamilyElement make_family_element(std::vector<EisensteinInt> primes1, std::vector<EisensteinInt> primes2) {
    FamilyElement f;
    std::sort(primes1.begin(), primes1.end());
    std::sort(primes2.begin(), primes2.end());
    EisensteinInt c1 = product(primes1), c2 = product(primes2);
    if (!is_primary(c1) || !is_primary(c2)) throw DomainError("family factors must be primary");
    f.c1 = {c1, 0};
    f.c2 = {c2, 0};
    f.q = {c1 * c2, 0};
    f.c = {c2 * c1 * c1, 0};
    if (!is_one_mod9(f.c.value)) throw DomainError(f.c.value.str() + " is not 1 mod 9");
    if (f.c.value == EisensteinInt{1, 0}) throw DomainError("c = 1 is excluded from the family");
    f.conductor_norm = norm(f.q.value);
    f.primes1 = std::move(primes1);
    f.primes2 = std::move(primes2);
    return f;
}

bool is_family_member(const EisensteinInt& c, const PrimeTable& table, FamilyElement* out) {
    if (c == EisensteinInt{1, 0} || !is_one_mod9(c)) return false;
    Factorization f = table.factor(c);
    std::vector<EisensteinInt> p1, p2;
    for (const auto& [p, e] : f.factors) {
        if (e > 2) return false;
        (e == 2 ? p1 : p2).push_back(p.value());
    }
    if (out) *out = make_family_element(p1, p2);
    return true;
}

std::vector<FamilyElement> enumerate_family(i64 X, const PrimeTable& table) {
    std::vector<FamilyElement> out;
    if (X < 2) return out;
    auto primes = table.range(0, X);
    std::vector<Mod9> r1(primes.size()), r2(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) {
        r1[i] = mod9(primes[i].value());
        r2[i] = mul9(r1[i], r1[i]);
    }
    std::vector<size_t> stack;
    auto emit = [&]() {
        const size_t m = stack.size();
        for (u64 mask = 0; mask < (u64{1} << m); ++mask) {
            Mod9 acc{1, 0};
            for (size_t i = 0; i < m; ++i) acc = mul9(acc, (mask >> i & 1) ? r2[stack[i]] : r1[stack[i]]);
            if (acc.a != 1 || acc.b != 0) continue;
            std::vector<EisensteinInt> p1, p2;
            for (size_t i = 0; i < m; ++i) ((mask >> i & 1) ? p1 : p2).push_back(primes[stack[i]].value());
            out.push_back(make_family_element(std::move(p1), std::move(p2)));
        }
    };
    auto dfs = [&](auto&& self, size_t start, i64 nq) -> void {
        for (size_t i = start; i < primes.size(); ++i) {
            i64 n = primes[i].norm;
            if (nq > X / n) break;
            stack.push_back(i);
            emit();
            self(self, i + 1, nq * n);
            stack.pop_back();
        }
    };
    dfs(dfs, 0, 1);
    std::sort(out.begin(), out.end(), family_less);
    return out;
}

std::vector<FamilyElement> enumerate_family_bruteforce(i64 X, const PrimeTable& table) {
    std::vector<FamilyElement> out;
    if (X < 2) return out;
    const i64 M = X * X;
    // a^2 - ab + b^2 <= M  <=>  (2a - b)^2 + 3 b^2 <= 4M
    const i64 bmax = static_cast<i64>(isqrt(static_cast<u64>(4 * M / 3)));
    for (i64 b = -(bmax / 9) * 9; b <= bmax; b += 9) {
        i64 s = static_cast<i64>(isqrt(static_cast<u64>(4 * M - 3 * b * b)));
        i64 lo = static_cast<i64>(floor_div(b - s + 1, 2)), hi = static_cast<i64>(floor_div(b + s, 2));
        for (i64 a = lo + static_cast<i64>(mod_floor(1 - lo, 9)); a <= hi; a += 9) {
            FamilyElement f;
            if (is_family_member(EisensteinInt{a, b}, table, &f) && f.conductor_norm <= X) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), family_less);
    return out;
}

void save_family(const std::vector<FamilyElement>& fam, i64 X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CacheFormatError("cannot write " + path);
    out << nlohmann::json{{"format", "cubic-family"}, {"version", 1}, {"X", X}}.dump() << '\n';
    auto list = [](const std::vector<EisensteinInt>& v) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& z : v) j.push_back({z.a, z.b});
        return j;
    };
    for (const auto& f : fam) {
        out << nlohmann::json{{"c1", {f.c1.value.a, f.c1.value.b}},
                              {"c2", {f.c2.value.a, f.c2.value.b}},
                              {"conductor_norm", f.conductor_norm},
                              {"p1", list(f.primes1)},
                              {"p2", list(f.primes2)}}
                   .dump()
            << '\n';
    }
}

std::vector<FamilyElement> load_family(const std::string& path, i64* X) {
    std::ifstream in(path);
    std::string line;
    if (!in || !std::getline(in, line)) throw CacheFormatError("cannot read " + path);
    auto header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("format", "") != "cubic-family" || header.value("version", 0) != 1)
        throw CacheFormatError(path + ": bad header");
    if (X) *X = header.at("X").get<i64>();
    std::vector<FamilyElement> out;
    auto list = [](const nlohmann::json& j) {
        std::vector<EisensteinInt> v;
        for (const auto& z : j) v.push_back({z.at(0).get<i64>(), z.at(1).get<i64>()});
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        FamilyElement f = make_family_element(list(j.at("p1")), list(j.at("p2")));
        if (f.conductor_norm != j.at("conductor_norm").get<i64>()) throw CacheFormatError(path + ": corrupt record");
        out.push_back(std::move(f));
    }
    return out;
}

CubicSymbolValue chi(const FamilyElement& c, const EisensteinInt& alpha) {
    return cubic_symbol_reciprocity(alpha, c.c.value);
}

FamilyCharacter::FamilyCharacter(const FamilyElement& c) {
    for (const auto& p : c.primes2) {
        chars_.emplace_back(p);
        power_.push_back(1);
    }
    for (const auto& p : c.primes1) {
        chars_.emplace_back(p);
        power_.push_back(2);
    }
}

CubicSymbolValue FamilyCharacter::operator()(const EisensteinInt& alpha) const {
    CubicSymbolValue r{0};
    for (size_t i = 0; i < chars_.size(); ++i) {
        r = r * chars_[i](alpha).pow(power_[i]);
        if (r.is_zero()) break;
    }
    return r;
}

FamilySizeConstants family_size_constants(const PrimaryElement& n, double tol, const PrimeTable& table,
                                          double zeta_constant) {
    if (!(tol > 0)) throw DomainError("tol must be positive");
    // tail: sum over N > P of 3/N^2 is at most 6/P because there are at most t prime ideals of norm <= t
    double P = 6.0 / std::log1p(tol);
    P = P / (1 - 3 / (P * P)) + 1;
    if (P > static_cast<double>(table.limit()))
        throw SieveCapacity("tail bound " + std::to_string(tol) + " needs primes up to " + std::to_string(P));
    FamilySizeConstants out;
    out.truncation = static_cast<i64>(std::ceil(P));
    std::vector<EisensteinInt> ndiv;
    if (!(n.value == EisensteinInt{1, 0}) && !n.value.is_zero()) {
        for (const auto& [p, e] : table.factor(n.value).factors) ndiv.push_back(p.value());
    }
    double logF = 0, dlog = 0;
    for (const auto& p : table.range(0, out.truncation)) {
        const double N = static_cast<double>(p.norm), L = std::log(N);
        if (std::find(ndiv.begin(), ndiv.end(), p.value()) != ndiv.end()) {
            logF += 2 * std::log1p(-1 / N);
            dlog += 2 * L / (N - 1);
        } else {
            double loc = 1 - 3 / (N * N) + 2 / (N * N * N);
            logF += std::log(loc);
            dlog += 6 * L * (1 - 1 / N) / (N * N * loc);
        }
    }
    const double pi2 = std::numbers::pi * std::numbers::pi;
    out.F = std::exp(logF);
    out.F_log_derivative = dlog;
    out.tail_bound = std::expm1(6 / (P * (1 - 3 / (P * P))));
    out.C1 = 4 * pi2 * out.F / 2187;
    out.C2_partial = 4 * out.F / 81 * pi2 * std::log(3 / std::numbers::e) / 27 + 4 * pi2 / 2187 * out.F * dlog;
    out.C2 = out.C2_partial + 4 * out.F / 81 * zeta_constant;
    return out;
}

double zeta_K_square_derivative(i64 x) {
    auto a = ideal_norm_counts(x);
    double s = 0, A = 0;
    for (i64 n = 1; n <= x; ++n) {
        s += a[n] / static_cast<double>(n);
        A += a[n];
    }
    const double res = zeta_K_residue();
    const double X = static_cast<double>(x);
    // the (A(x) - res x)/x term removes most of the lattice-point fluctuation
    double gamma = s - res * std::log(X) - (A - res * X) / X;
    return 2 * res * gamma;
}

CharSumResult character_sum_over_family(const PrimaryElement& m, const std::vector<FamilyElement>& family, i64 X,
                                        const PrimeTable& table) {
    if (m.value.is_zero()) throw DomainError("m must be nonzero");
    if (!is_primary(m.value)) throw DomainError("m must be primary");
    CharSumResult r;
    r.principal = true;
    if (!(m.value == EisensteinInt{1, 0}))
        for (const auto& [p, e] : table.factor(m.value).factors) r.principal = r.principal && e % 3 == 0;
    for (const auto& c : family) {
        if (c.conductor_norm > X) break;
        auto s = cubic_symbol_reciprocity(c.c.value, m.value);
        if (s.is_zero()) continue;
        ++r.coprime_count;
        r.sum += s.value();
    }
    r.normalized = std::abs(r.sum) / std::sqrt(static_cast<double>(std::max<i64>(X, 1)));
    return r;
}

}  // namespace cubic
