#include "cubic/eisenstein.hpp"

#include <cstdlib>
#include <limits>

#include "cubic/errors.hpp"

namespace cubic {

namespace {

constexpr i64 kCoordLimit = i64{1} << 62;

void check_coords(const EisensteinInt& z) {
    if (z.a > kCoordLimit || z.a < -kCoordLimit || z.b > kCoordLimit || z.b < -kCoordLimit)
        throw Overflow("coordinates of " + z.str() + " exceed 2^62");
}

}  // namespace

const std::array<EisensteinInt, 6> kUnits = {
    EisensteinInt{1, 0}, EisensteinInt{0, 1}, EisensteinInt{-1, -1},
    EisensteinInt{-1, 0}, EisensteinInt{0, -1}, EisensteinInt{1, 1}};

std::string EisensteinInt::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw Overflow("integer result exceeds 64 bits");
    return static_cast<i64>(v);
}

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
    return {narrow(i128{x.a} + y.a), narrow(i128{x.b} + y.b)};
}

EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
    return {narrow(i128{x.a} - y.a), narrow(i128{x.b} - y.b)};
}

EisensteinInt operator-(const EisensteinInt& x) { return {narrow(-i128{x.a}), narrow(-i128{x.b})}; }

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    check_coords(x);
    check_coords(y);
    i128 ac = i128{x.a} * y.a, bd = i128{x.b} * y.b;
    i128 ad = i128{x.a} * y.b, bc = i128{x.b} * y.a;
    return {narrow(ac - bd), narrow(ad + bc - bd)};
}

EisensteinInt conj(const EisensteinInt& z) { return {narrow(i128{z.a} - z.b), narrow(-i128{z.b})}; }

i128 norm128(const EisensteinInt& z) {
    check_coords(z);
    return i128{z.a} * z.a - i128{z.a} * z.b + i128{z.b} * z.b;
}

i64 norm(const EisensteinInt& z) { return narrow(norm128(z)); }

int unit_index(const EisensteinInt& u) {
    for (int i = 0; i < 6; ++i)
        if (kUnits[i] == u) return i;
    return -1;
}

namespace {

// z * conj(d) as 128-bit coordinates.
std::pair<i128, i128> mul_conj(const EisensteinInt& z, const EisensteinInt& d) {
    check_coords(z);
    check_coords(d);
    i128 ca = i128{d.a} - d.b, cb = -i128{d.b};
    i128 ac = z.a * ca, bd = z.b * cb, ad = z.a * cb, bc = z.b * ca;
    return {ac - bd, ad + bc - bd};
}

}  // namespace

bool divides(const EisensteinInt& d, const EisensteinInt& z) {
    if (d.is_zero()) return z.is_zero();
    auto [x, y] = mul_conj(z, d);
    i128 n = norm128(d);
    return x % n == 0 && y % n == 0;
}

EisensteinInt exact_div(const EisensteinInt& z, const EisensteinInt& d) {
    if (d.is_zero()) throw DomainError("division by zero in Z[omega]");
    auto [x, y] = mul_conj(z, d);
    i128 n = norm128(d);
    if (x % n != 0 || y % n != 0) throw DomainError(d.str() + " does not divide " + z.str());
    return {narrow(x / n), narrow(y / n)};
}

EisensteinInt div_round(const EisensteinInt& z, const EisensteinInt& d) {
    if (d.is_zero()) throw DomainError("division by zero in Z[omega]");
    auto [x, y] = mul_conj(z, d);
    i128 n = norm128(d);
    return {narrow(round_div(x, n)), narrow(round_div(y, n))};
}

EisensteinInt rem_round(const EisensteinInt& z, const EisensteinInt& d) {
    return z - div_round(z, d) * d;
}

EisensteinInt pow(EisensteinInt z, unsigned e) {
    EisensteinInt r{1, 0};
    while (e) {
        if (e & 1) r = r * z;
        e >>= 1;
        if (e) z = z * z;
    }
    return r;
}

bool is_primary(const EisensteinInt& z) { return mod_floor(z.a, 3) == 1 && mod_floor(z.b, 3) == 0; }

PrimaryElement primary_associate(const EisensteinInt& z) {
    if (z.is_zero() || norm128(z) % 3 == 0)
        throw NotPrimaryizable(z.str() + " has no primary associate");
    for (int i = 0; i < 6; ++i) {
        EisensteinInt v = kUnits[i] * z;
        if (is_primary(v)) return {v, i};
    }
    throw NotPrimaryizable(z.str());  // unreachable for valid input
}

EisensteinInt canonical_associate(const EisensteinInt& z) {
    if (z.is_zero()) return z;
    if (norm128(z) % 3 != 0) return primary_associate(z).value;
    EisensteinInt best = z;
    for (const auto& u : kUnits) best = std::min(best, u * z);
    return best;
}

EisensteinInt gcd(EisensteinInt x, EisensteinInt y) {
    if (x.is_zero() && y.is_zero()) throw UndefinedGcd("gcd(0, 0) is undefined");
    while (!y.is_zero()) {
        EisensteinInt r = rem_round(x, y);
        x = y;
        y = r;
    }
    return canonical_associate(x);
}

ResidueSystem::ResidueSystem(const EisensteinInt& n, i64 cap) : n_(n) {
    if (n.is_zero()) throw DomainError("residue system modulo 0");
    i128 nn = norm128(n);
    if (nn > cap) throw ResidueSystemTooLarge("N(n) = " + std::to_string(static_cast<long long>(nn)) +
                                              " exceeds the enumeration cap");
    // second coordinates of n and n*omega = (-b, a-b)
    ExtGcd e = ext_gcd(n.b, n.a - n.b);
    d2_ = e.g;
    d1_ = static_cast<i64>(nn / d2_);
    i128 w1 = i128{e.x} * n.a - i128{e.y} * n.b;
    w1_ = static_cast<i64>(mod_floor(w1, d1_));
}

EisensteinInt ResidueSystem::reduce(const EisensteinInt& z) const {
    i128 k = floor_div(z.b, d2_);
    i128 x = i128{z.a} - k * w1_;
    i128 y = i128{z.b} - k * d2_;
    return {static_cast<i64>(mod_floor(x, d1_)), static_cast<i64>(y)};
}

i64 ResidueSystem::index(const EisensteinInt& z) const {
    EisensteinInt r = reduce(z);
    return r.a + d1_ * r.b;
}

std::vector<EisensteinInt> ResidueSystem::list() const {
    std::vector<EisensteinInt> out;
    out.reserve(static_cast<size_t>(size()));
    for (i64 i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
}

std::vector<EisensteinInt> residues_mod(const PrimaryElement& n, i64 cap) {
    return ResidueSystem(n.value, cap).list();
}

std::complex<double> CubicSymbolValue::value() const {
    switch (e) {
        case 0: return {1.0, 0.0};
        case 1: return {-0.5, 0.8660254037844386};
        case 2: return {-0.5, -0.8660254037844386};
        default: return {0.0, 0.0};
    }
}

CubicSymbolValue CubicSymbolValue::pow(int k) const {
    if (is_zero()) return k == 0 ? CubicSymbolValue{0} : *this;
    return {static_cast<int>(mod_floor(i128{e} * k, 3))};
}

CubicSymbolValue operator*(CubicSymbolValue x, CubicSymbolValue y) {
    if (x.is_zero() || y.is_zero()) return CubicSymbolValue::zero();
    return {(x.e + y.e) % 3};
}

PrimeCharacter::PrimeCharacter(const EisensteinInt& pi) {
    i128 nn = norm128(pi);
    if (nn < 2 || nn > std::numeric_limits<i64>::max()) throw NotPrime(pi.str() + " is not prime");
    u64 n = static_cast<u64>(nn);
    if (is_prime_u64(n)) {
        if (n == 3) throw NotPrime(pi.str() + " is the ramified prime; no cubic symbol");
        if (n % 3 != 1) throw NotPrime(pi.str());
        p_ = n;
        i64 b = static_cast<i64>(mod_floor(pi.b, static_cast<i64>(p_)));
        i64 a = static_cast<i64>(mod_floor(pi.a, static_cast<i64>(p_)));
        // pi = a + b omega vanishes at omega = t
        t_ = static_cast<u64>(mod_floor(-i128{a} * inv_mod(b, static_cast<i64>(p_)), p_));
        t2_ = mulmod(t_, t_, p_);
        return;
    }
    u64 r = isqrt(n);
    if (r * r != n || r % 3 != 2 || !is_prime_u64(r) || pi.a % static_cast<i64>(r) != 0 ||
        pi.b % static_cast<i64>(r) != 0)
        throw NotPrime(pi.str() + " is not prime");
    split_ = false;
    p_ = r;
}

CubicSymbolValue PrimeCharacter::of_residue(u64 v) const {
    if (v == 0) return CubicSymbolValue::zero();
    u64 w = powmod(v, (p_ - 1) / 3, p_);
    if (w == 1) return {0};
    if (w == t_) return {1};
    if (w == t2_) return {2};
    throw DomainError("Euler criterion produced a non-cube-root of unity");
}

CubicSymbolValue PrimeCharacter::operator()(const EisensteinInt& alpha) const {
    const i64 p = static_cast<i64>(p_);
    u64 x = static_cast<u64>(mod_floor(alpha.a, p));
    u64 y = static_cast<u64>(mod_floor(alpha.b, p));
    if (split_) return of_residue((x + mulmod(y, t_, p_)) % p_);
    if (x == 0 && y == 0) return CubicSymbolValue::zero();
    // exponentiate x + y omega in F_p[omega]
    u64 e = (p_ * p_ - 1) / 3;
    u64 rx = 1, ry = 0;
    auto mul = [&](u64& ax, u64& ay, u64 bx, u64 by) {
        u64 xx = mulmod(ax, bx, p_), yy = mulmod(ay, by, p_);
        u64 xy = (mulmod(ax, by, p_) + mulmod(ay, bx, p_)) % p_;
        ax = (xx + p_ - yy) % p_;
        ay = (xy + p_ - yy) % p_;
    };
    while (e) {
        if (e & 1) mul(rx, ry, x, y);
        mul(x, y, x, y);
        e >>= 1;
    }
    if (rx == 1 && ry == 0) return {0};
    if (rx == 0 && ry == 1) return {1};
    if (rx == p_ - 1 && ry == p_ - 1) return {2};
    throw DomainError("Euler criterion produced a non-cube-root of unity");
}

CubicSymbolValue cubic_symbol_prime(const EisensteinInt& alpha, const PrimaryElement& pi) {
    return PrimeCharacter(pi.value)(alpha);
}

int supplement_omega(const EisensteinInt& n) {
    return static_cast<int>(((norm128(n) - 1) / 3) % 3);
}

int supplement_one_minus_omega(const EisensteinInt& n) {
    // -n = (3m - 1) + 3k omega is primary in the 2 mod 3 sense; the symbol is omega^{2m}
    i128 m = (1 - i128{n.a}) / 3;
    return static_cast<int>(mod_floor(2 * m, 3));
}

CubicSymbolValue cubic_symbol_reciprocity(EisensteinInt alpha, EisensteinInt n) {
    if (!is_primary(n)) throw DomainError("modulus " + n.str() + " is not primary");
    const EisensteinInt one_minus_omega{1, -1};
    int e = 0;
    while (true) {
        if (n == EisensteinInt{1, 0}) return {e % 3};
        alpha = rem_round(alpha, n);
        if (alpha.is_zero()) return CubicSymbolValue::zero();
        while (norm128(alpha) % 3 == 0) {
            alpha = exact_div(alpha, one_minus_omega);
            e += supplement_one_minus_omega(n);
        }
        PrimaryElement beta = primary_associate(alpha);
        // alpha = u^{-1} beta, and chi_n(-1) = 1
        e += (unit_inverse(beta.unit) % 3) * supplement_omega(n);
        e %= 3;
        alpha = n;
        n = beta.value;
    }
}

}  // namespace cubic
