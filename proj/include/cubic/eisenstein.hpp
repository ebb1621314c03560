#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cubic/modarith.hpp"

namespace cubic {

// a + b*omega with omega^2 = -1 - omega.
struct EisensteinInt {
    i64 a = 0;
    i64 b = 0;

    constexpr EisensteinInt() = default;
    constexpr EisensteinInt(i64 a_, i64 b_ = 0) : a(a_), b(b_) {}

    auto operator<=>(const EisensteinInt&) const = default;
    bool is_zero() const { return a == 0 && b == 0; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(a) - 0.5 * static_cast<double>(b),
                0.8660254037844386 * static_cast<double>(b)};
    }
    std::string str() const;
};

constexpr EisensteinInt kOmega{0, 1};

// Narrow a 128-bit intermediate, throwing Overflow instead of wrapping.
i64 narrow(i128 v);

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x);
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt conj(const EisensteinInt& z);
i128 norm128(const EisensteinInt& z);
i64 norm(const EisensteinInt& z);

// The six units, indexed so that kUnits[i] = (-1)^(i/3) * omega^(i%3).
extern const std::array<EisensteinInt, 6> kUnits;
int unit_index(const EisensteinInt& u);  // -1 if not a unit
inline int unit_inverse(int i) { return (i / 3) * 3 + (3 - i % 3) % 3; }

bool divides(const EisensteinInt& d, const EisensteinInt& z);
// Exact quotient z/d; throws DomainError when d does not divide z.
EisensteinInt exact_div(const EisensteinInt& z, const EisensteinInt& d);
// Euclidean division with nearest-integer rounding: z = q d + r, N(r) <= 3/4 N(d).
EisensteinInt div_round(const EisensteinInt& z, const EisensteinInt& d);
EisensteinInt rem_round(const EisensteinInt& z, const EisensteinInt& d);
EisensteinInt pow(EisensteinInt z, unsigned e);

struct PrimaryElement {
    EisensteinInt value;
    int unit = 0;  // index into kUnits; value = kUnits[unit] * input
};

bool is_primary(const EisensteinInt& z);
PrimaryElement primary_associate(const EisensteinInt& z);
// Primary associate when 3 does not divide the norm, else the lexicographically smallest associate.
EisensteinInt canonical_associate(const EisensteinInt& z);
EisensteinInt gcd(EisensteinInt x, EisensteinInt y);

// Representatives {x + y omega : 0 <= x < d1, 0 <= y < d2} of Z[omega]/(n).
class ResidueSystem {
public:
    static constexpr i64 kDefaultCap = 50'000'000;
    explicit ResidueSystem(const EisensteinInt& n, i64 cap = kDefaultCap);

    i64 size() const { return d1_ * d2_; }
    i64 d1() const { return d1_; }
    i64 d2() const { return d2_; }
    EisensteinInt reduce(const EisensteinInt& z) const;
    i64 index(const EisensteinInt& z) const;
    EisensteinInt at(i64 i) const { return {i % d1_, i / d1_}; }
    std::vector<EisensteinInt> list() const;

private:
    EisensteinInt n_;
    i64 d1_ = 1, d2_ = 1, w1_ = 0;
};

std::vector<EisensteinInt> residues_mod(const PrimaryElement& n, i64 cap = ResidueSystem::kDefaultCap);

// Value of a cubic residue symbol: omega^e, or 0 when e < 0.
struct CubicSymbolValue {
    int e = 0;

    static CubicSymbolValue zero() { return {-1}; }
    bool is_zero() const { return e < 0; }
    std::complex<double> value() const;
    CubicSymbolValue conj() const { return is_zero() ? *this : CubicSymbolValue{(3 - e) % 3}; }
    CubicSymbolValue pow(int k) const;
    bool operator==(const CubicSymbolValue&) const = default;
};
CubicSymbolValue operator*(CubicSymbolValue x, CubicSymbolValue y);

// Euler's criterion at one prime, cached as a map Z[omega] -> F_p or F_{p^2}.
class PrimeCharacter {
public:
    // Throws NotPrime when pi is not a prime of Z[omega] coprime to 3.
    explicit PrimeCharacter(const EisensteinInt& pi);

    CubicSymbolValue operator()(const EisensteinInt& alpha) const;
    bool split() const { return split_; }
    u64 p() const { return p_; }
    // Image of omega in F_p (split primes only).
    u64 t() const { return t_; }
    CubicSymbolValue of_residue(u64 v) const;  // split primes: symbol of v in F_p

private:
    bool split_ = true;
    u64 p_ = 0;
    u64 t_ = 0;
    u64 t2_ = 0;
};

CubicSymbolValue cubic_symbol_prime(const EisensteinInt& alpha, const PrimaryElement& pi);

// (alpha/n)_3 via cubic reciprocity and its supplements; needs no factorization.
CubicSymbolValue cubic_symbol_reciprocity(EisensteinInt alpha, EisensteinInt n);

// Exponent e with chi_n(1 - omega) = omega^e for primary n.
int supplement_one_minus_omega(const EisensteinInt& n);
// Exponent e with chi_n(omega) = omega^e for primary n.
int supplement_omega(const EisensteinInt& n);

}  // namespace cubic
