#include <algorithm>
#include <random>

#include "arlimit/error.hpp"
#include "arlimit/model.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace arlimit;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an arlimit::Error");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("ARCoefficients validation") {
    CHECK(ARCoefficients({0.5}).order() == 1);
    CHECK(code_of([] { ARCoefficients({}); }) == ErrorCode::EmptyInput);
    CHECK(code_of([] { ARCoefficients({0.5, 0.0}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { ARCoefficients({std::nan(""), 0.1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("validate_roots") {
    SUBCASE("real root inside the disk") {
        const auto r = validate_roots(RootMultiset({0.5}));
        CHECK(r.stationary());
        CHECK(r.conjugate_closed());
    }
    SUBCASE("unit modulus is rejected") {
        CHECK(code_of([] { validate_roots(RootMultiset({1.0})); }) == ErrorCode::NonStationary);
        CHECK(code_of([] { validate_roots(RootMultiset({Complex(0.0, -1.0)})); }) ==
              ErrorCode::NonStationary);
    }
    SUBCASE("conjugate pair") {
        const auto r = validate_roots(RootMultiset({{0.5, 0.5}, {0.5, -0.5}}));
        CHECK(r.max_modulus() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
        CHECK(r.conjugate_closed());
    }
    SUBCASE("margin") {
        CHECK_NOTHROW(validate_roots(RootMultiset({0.89}), 0.1));
        CHECK(code_of([] { validate_roots(RootMultiset({0.9}), 0.1); }) == ErrorCode::NonStationary);
    }
    SUBCASE("empty input") {
        CHECK(code_of([] { RootMultiset(std::vector<Complex>{}); }) == ErrorCode::EmptyInput);
    }
    SUBCASE("idempotent") {
        const RootMultiset r({{0.2, 0.3}, {0.2, -0.3}, {-0.6, 0.0}});
        const auto once = validate_roots(r);
        const auto twice = validate_roots(once);
        CHECK(std::equal(once.roots().begin(), once.roots().end(), twice.roots().begin()));
        CHECK(once.conjugate_closed() == twice.conjugate_closed());
        CHECK(once.stationary() == twice.stationary());
    }
}

TEST_CASE("conjugate closure") {
    CHECK_FALSE(RootMultiset({Complex(0.5, 0.5)}).conjugate_closed());
    CHECK_FALSE(RootMultiset({{0.5, 0.5}, {0.5, 0.5}}).conjugate_closed());
    // Multiplicity must match: two copies of one root, one of its conjugate.
    CHECK_FALSE(RootMultiset({{0.1, 0.2}, {0.1, 0.2}, {0.1, -0.2}}).conjugate_closed());
    CHECK(RootMultiset({{0.1, 0.2}, {0.1, 0.2}, {0.1, -0.2}, {0.1, -0.2}}).conjugate_closed());
    // Within the pairing tolerance.
    CHECK(RootMultiset({{0.3, 0.4}, {0.3 + 5e-13, -0.4}}).conjugate_closed());
    CHECK_FALSE(RootMultiset({{0.3, 0.4}, {0.3 + 5e-12, -0.4}}).conjugate_closed());
    // Nearly-real root pairs with itself.
    CHECK(RootMultiset({Complex(0.3, 1e-13)}).conjugate_closed());
}

TEST_CASE("conjugate closure is permutation invariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto base = testing::random_roots(rng, 1 + trial % 6, 0.9, true, 0.0);
        std::vector<Complex> z(base.roots().begin(), base.roots().end());
        if (trial % 3 == 0) z.back() += Complex(0.0, 1e-6);  // break closure sometimes
        const bool expected = is_conjugate_closed(z);
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            std::shuffle(z.begin(), z.end(), rng);
            CHECK(is_conjugate_closed(z) == expected);
        }
    }
}

TEST_CASE("ShiftVector derives S") {
    CHECK(ShiftVector({1, 0}).S() == 1);
    CHECK(ShiftVector({-1, 2}).S() == 1);
    CHECK(ShiftVector({-3, -4, 2}).S() == 5);
    CHECK(ShiftVector::canonical(3, 4).S() == 4);
    CHECK(ShiftVector::canonical(3, 4).size() == 3);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> pick(-20, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<long long> s(1 + trial % 5);
        for (auto& x : s) x = pick(rng);
        const unsigned S = ShiftVector(s).S();
        std::shuffle(s.begin(), s.end(), rng);
        CHECK(ShiftVector(s).S() == S);
        for (auto& x : s) x = -x;
        CHECK(ShiftVector(s).S() == S);
    }
}

TEST_CASE("realness certification") {
    EvalResult r;
    r.value = Complex(2.0, 1e-12);
    certify_realness(r, true);
    REQUIRE(r.real_value.has_value());
    CHECK(*r.real_value == 2.0);
    CHECK(r.max_imag == doctest::Approx(1e-12));

    r.value = Complex(2.0, 1e-6);
    CHECK(code_of([&] { certify_realness(r, true); }) == ErrorCode::RealnessViolation);

    r.value = Complex(2.0, 0.5);
    certify_realness(r, false);
    CHECK_FALSE(r.real_value.has_value());
    CHECK(r.max_imag == 0.5);
}

TEST_CASE("error code names are stable") {
    CHECK(error_code_name(ErrorCode::NonStationary) == "NON_STATIONARY");
    CHECK(error_code_name(ErrorCode::ClusteredRoots) == "CLUSTERED_ROOTS");
    CHECK(error_code_name(ErrorCode::BudgetExceeded) == "BUDGET_EXCEEDED");
    CHECK(error_code_name(ErrorCode::NoConvergence) == "NO_CONVERGENCE");
}
