#include "doctest.h"

#include <cmath>

#include "cubic/errors.hpp"
#include "cubic/family.hpp"
#include "cubic/lfunction.hpp"
#include "cubic/primes.hpp"

using namespace cubic;

namespace {
const PrimeTable& table() {
    static PrimeTable t(100000);
    return t;
}
}  // namespace

TEST_CASE("weight V") {
    CHECK(weight_V(1e-12) == doctest::Approx(1).epsilon(1e-5));
    CHECK(weight_V(10) < 1e-10);
    for (double y : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) CHECK(std::abs(weight_V(y) - weight_V_contour(y)) < 1e-12);
    double prev = 1;
    for (double y = 0.01; y < 5; y += 0.01) {
        CHECK(weight_V(y) < prev);
        prev = weight_V(y);
    }
    CHECK_THROWS_AS(weight_V(0), DomainError);
}

TEST_CASE("lambda0") { CHECK(lambda0() == doctest::Approx(0.491225).epsilon(1e-6)); }

TEST_CASE("tail bound and truncation") {
    for (double Yp : {1.0, 10.0, 300.0}) {
        const double B = afe_truncation(Yp, 1e-10);
        CHECK(afe_tail_bound(B, Yp) <= 1e-10);
    }
}

TEST_CASE("central values: Y invariance and conjugation") {
    auto fam = enumerate_family(3000, table());
    for (size_t i = 0; i < fam.size(); i += 37) {
        const auto& c = fam[i];
        auto L = central_value(c, 1.0, 1e-12, table());
        CHECK(L.truncation_error_bound <= 1e-12);
        for (double Y : {0.5, 2.0, 3.0}) CHECK(std::abs(central_value(c, Y, 1e-12, table()).value - L.value) < 1e-9);
        CHECK(std::abs(central_value(c.conjugate(), 1.0, 1e-12, table()).value - std::conj(L.value)) < 1e-12);
        CHECK(std::log(std::abs(L.value)) <= grh_log_bound(c, 100, 1, table()));
    }
}

TEST_CASE("smallest conductor") {
    // c = 1 + 9 omega, conductor norm 73; frozen from the two-sum evaluation
    FamilyElement c;
    REQUIRE(is_family_member({1, 9}, table(), &c));
    CHECK(c.conductor_norm == 73);
    auto L = central_value(c, 1.0, 1e-12, table()).value;
    CHECK(L.real() == doctest::Approx(0.7817132373412702).epsilon(1e-10));
    CHECK(std::abs(L.imag()) == doctest::Approx(0.1515190969414946).epsilon(1e-10));
}

TEST_CASE("primary elements") {
    auto e = primary_elements_upto(100);
    CHECK(e.front() == EisensteinInt{1, 0});
    for (size_t i = 0; i < e.size(); ++i) {
        CHECK(is_primary(e[i]));
        if (i) CHECK(norm(e[i - 1]) <= norm(e[i]));
    }
}
