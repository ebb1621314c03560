#pragma once

#include <cstdint>
#include <utility>

namespace cubic {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Floor division and non-negative remainder for signed operands.
inline i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline i128 mod_floor(i128 a, i128 m) {
    i128 r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

// Nearest integer to a/b, ties toward +infinity.
inline i128 round_div(i128 a, i128 b) {
    if (b < 0) { a = -a; b = -b; }
    return floor_div(2 * a + b, 2 * b);
}

u64 isqrt(u64 n);
bool is_prime_u64(u64 n);
// Square root of a modulo an odd prime p; requires a to be a quadratic residue.
u64 sqrt_mod(u64 a, u64 p);
// Returns (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
struct ExtGcd { i64 g, x, y; };
ExtGcd ext_gcd(i64 a, i64 b);
i64 inv_mod(i64 a, i64 m);

}  // namespace cubic
