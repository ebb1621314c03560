#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "cubic/family.hpp"
#include "cubic/primes.hpp"

using namespace cubic;

namespace {
const PrimeTable& table() {
    static PrimeTable t(1000000);
    return t;
}
}  // namespace

TEST_CASE("family matches the brute-force filter") {
    auto fam = enumerate_family(2000, table());
    auto brute = enumerate_family_bruteforce(2000, table());
    CHECK(fam.size() == 264);
    std::set<std::string> a, b;
    for (const auto& f : fam) a.insert(f.key());
    for (const auto& f : brute) b.insert(f.key());
    CHECK(a == b);
}

TEST_CASE("family structure") {
    auto fam = enumerate_family(10000, table());
    CHECK(fam.size() == 1586);
    std::set<std::string> keys;
    for (const auto& f : fam) keys.insert(f.key());
    for (const auto& f : fam) {
        CHECK((f.c.value.a - 1) % 9 == 0);
        CHECK(f.c.value.b % 9 == 0);
        CHECK(keys.count(f.conjugate().key()) == 1);
        CHECK(f.conductor_norm == norm(f.q.value));
        CHECK(is_family_member(f.c.value, table()));
    }
    CHECK(fam.size() % 2 == 0);
    CHECK_FALSE(is_family_member({1, 0}, table()));
    CHECK(is_family_member({10, 0}, table()));
    CHECK_FALSE(is_family_member({-8, 0}, table()));  // (-2)^3
}

TEST_CASE("family size constants") {
    auto k = family_size_constants({EisensteinInt{1, 0}, 0}, 1e-5, table(), zeta_K_square_derivative());
    CHECK(k.F == doctest::Approx(0.6953866872).epsilon(1e-8));
    CHECK(k.C1 == doctest::Approx(0.01255270509).epsilon(1e-8));
    CHECK(k.C2 == doctest::Approx(0.0424455).epsilon(1e-5));
    CHECK(k.tail_bound <= 1e-5);
}

TEST_CASE("family cache round trip") {
    auto fam = enumerate_family(500, table());
    auto path = std::filesystem::temp_directory_path() / "cubic-family-test.jsonl";
    save_family(fam, 500, path.string());
    i64 X = 0;
    auto back = load_family(path.string(), &X);
    CHECK(X == 500);
    REQUIRE(back.size() == fam.size());
    for (size_t i = 0; i < fam.size(); ++i) CHECK(back[i].key() == fam[i].key());
    std::filesystem::remove(path);
}

TEST_CASE("character sums over the family") {
    auto fam = enumerate_family(10000, table());
    auto one = character_sum_over_family({EisensteinInt{1, 0}, 0}, fam, 10000, table());
    CHECK(one.principal);
    CHECK(one.sum.real() == doctest::Approx(1586));
    // cube of the prime of norm 7
    const EisensteinInt p{1, 3};
    auto cube = character_sum_over_family({p * p * p, 0}, fam, 10000, table());
    CHECK(cube.principal);
    CHECK(cube.sum.real() == doctest::Approx(static_cast<double>(cube.coprime_count)));
    auto big = enumerate_family(100000, table());
    auto s7 = character_sum_over_family({p, 0}, big, 100000, table());
    CHECK_FALSE(s7.principal);
    CHECK(std::abs(s7.sum) <= 10 * std::sqrt(1e5));
}
