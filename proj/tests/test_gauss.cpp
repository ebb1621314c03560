#include "doctest.h"

#include <cmath>

#include "cubic/errors.hpp"
#include "cubic/family.hpp"
#include "cubic/gauss.hpp"
#include "cubic/primes.hpp"

using namespace cubic;

namespace {
const PrimeTable& table() {
    static PrimeTable t(100000);
    return t;
}
}  // namespace

TEST_CASE("fast Gauss sums agree with direct sums") {
    GaussCache cache;
    for (const EisensteinInt& n : {EisensteinInt{-2, 0}, EisensteinInt{1, 3}, EisensteinInt{4, 0}, EisensteinInt{-5, -6},
                                   EisensteinInt{7, 0}, EisensteinInt{-8, 3}, EisensteinInt{16, 0}, EisensteinInt{-11, 0}}) {
        for (const EisensteinInt& r : {EisensteinInt{1, 0}, EisensteinInt{2, 1}, EisensteinInt{0, 5}, EisensteinInt{4, 0},
                                       EisensteinInt{-7, 3}, EisensteinInt{0, 0}}) {
            auto d = gauss_direct(r, {n, 0}).value;
            auto f = gauss_fast(r, {n, 0}, table(), &cache).value;
            CHECK(std::abs(d - f) < 1e-9);
        }
    }
}

TEST_CASE("prime Gauss sums have modulus sqrt N") {
    for (const auto& p : table().range(0, 3000)) {
        CHECK(std::abs(std::norm(gauss_prime(p.value())) - p.norm) < 1e-8);
    }
}

TEST_CASE("shift rule g(rs, n) = conj chi_n(s) g(r, n)") {
    const PrimaryElement n{EisensteinInt{-5, -6}, 0};  // norm 31
    for (const EisensteinInt& s : {EisensteinInt{2, 0}, EisensteinInt{1, 1}, EisensteinInt{3, -1}}) {
        auto lhs = gauss_direct(s, n).value;
        auto rhs = cubic_symbol_reciprocity(s, n.value).conj().value() * gauss_direct({1, 0}, n).value;
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("root numbers") {
    auto fam = enumerate_family(3000, table());
    REQUIRE(fam.size() > 20);
    for (size_t i = 0; i < fam.size(); i += fam.size() / 20) {
        const auto& c = fam[i];
        auto W = root_number(c, table());
        CHECK(std::abs(W - root_number_direct(c)) < 1e-8);
        CHECK(std::abs(std::norm(W) - c.conductor_norm) < 1e-7);
        CHECK(std::abs(std::abs(normalized_root_number(c, table())) - 1) < 1e-12);
    }
}

TEST_CASE("direct sum cap") {
    CHECK_THROWS_AS(gauss_direct({1, 0}, {EisensteinInt{1000, 3}, 0}, 1000), CapacityError);
}
