#include "uniteq/engine.hpp"

#include "uniteq/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

using namespace uniteq;
using engine::EquationTriple;
using engine::Solution;

namespace {

mpz_class pw(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Direct scan over (z, x, y) with exact big-integer arithmetic.
std::vector<Solution> solutions_by_scan(const EquationTriple& t, unsigned long z_max) {
    std::vector<Solution> out;
    for (unsigned long z = 1; z <= z_max; ++z) {
        const mpz_class cz = pw(t.c, z);
        mpz_class ax = t.a;
        for (unsigned long x = 1; ax < cz; ++x, ax *= t.a) {
            const mpz_class rest = cz - ax;
            mpz_class by = t.b;
            for (unsigned long y = 1; by <= rest; ++y, by *= t.b) {
                if (by == rest) {
                    out.push_back({x, y, z});
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Solution& l, const Solution& r) {
        return std::pair(l.z, l.x) < std::pair(r.z, r.x);
    });
    return out;
}

bool coprime(long u, long v) { return std::gcd(u, v) == 1; }

} // namespace

TEST_CASE("triple validation") {
    CHECK_THROWS_AS(engine::validate_triple({2, 4, 5}), std::invalid_argument);
    CHECK_THROWS_AS(engine::validate_triple({1, 3, 5}), std::invalid_argument);
    CHECK_THROWS_AS(engine::validate_triple({3, 5, 25}), std::invalid_argument);
    CHECK_NOTHROW(engine::validate_triple({3, 10, 13}));
    // Pillai mode only constrains the two bases.
    CHECK_NOTHROW(engine::validate_triple({3, 10, 30}, true));
    CHECK_THROWS_AS(engine::validate_triple({6, 10, 30}, true), std::invalid_argument);
}

TEST_CASE("solution enumeration fixtures") {
    CHECK(engine::enumerate_solutions({3, 10, 13}, 5) ==
          std::vector<Solution>{{1, 1, 1}, {7, 1, 3}});
    CHECK(engine::enumerate_solutions({3, 5, 2}, 10) ==
          std::vector<Solution>{{1, 1, 3}, {3, 1, 5}, {1, 3, 7}});
    CHECK(engine::enumerate_solutions({2, 7, 3}, 5) ==
          std::vector<Solution>{{1, 1, 2}, {5, 2, 4}});
    CHECK(engine::enumerate_solutions({2, 5, 3}, 20) ==
          std::vector<Solution>{{2, 1, 2}, {1, 2, 3}});
    CHECK(engine::count_solutions({2, 5, 3}, 20) == 2);
    CHECK(engine::count_solutions({3, 10, 13}, 20) == 2);
}

TEST_CASE("solution enumeration matches the direct scan") {
    for (long a = 2; a <= 25; ++a)
        for (long b = 2; b <= 25; ++b)
            for (long c = 2; c <= 25; ++c) {
                if (a == b || a == c || b == c)
                    continue;
                if (!coprime(a, b) || !coprime(a, c) || !coprime(b, c))
                    continue;
                const EquationTriple t{a, b, c};
                CHECK(engine::enumerate_solutions(t, 6) == solutions_by_scan(t, 6));
            }
}

TEST_CASE("pillai enumeration fixtures") {
    using P = std::vector<std::pair<unsigned long, unsigned long>>;
    CHECK(engine::enumerate_pillai(13, 3, 10, 5) == P{{1, 1}, {3, 7}});
    CHECK(engine::enumerate_pillai(2, 3, 5, 10) == P{{3, 1}, {5, 3}});
    CHECK(engine::enumerate_pillai(3, 2, 1, 5) == P{{1, 1}, {2, 3}});
    // Shared factors between the bases are allowed here.
    CHECK(engine::enumerate_pillai(6, 2, 4, 5) == P{{1, 1}, {2, 5}});
    CHECK(engine::enumerate_pillai(4930, 30, 4900, 2) == P{{1, 1}, {2, 5}});
    CHECK_THROWS_AS(engine::enumerate_pillai(1, 2, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(engine::enumerate_pillai(2, 2, 0, 5), std::invalid_argument);
}

TEST_CASE("base reduction fixtures") {
    const auto r1 = engine::weak_form_reduce({3, 10, 13}, 13);
    CHECK(r1.A == 3);
    CHECK(r1.B == 10);
    CHECK(r1.g == 3);
    CHECK(r1.exponent_scale_a == 1);
    CHECK(r1.exponent_scale_b == 1);

    const auto r2 = engine::weak_form_reduce({2, 3, 13}, 13);
    CHECK(r2.A == 4);
    CHECK(r2.B == 3);
    CHECK(r2.g == 3);
    CHECK(r2.exponent_scale_a == 2);
    CHECK(r2.exponent_scale_b == 1);

    CHECK_THROWS_AS(engine::weak_form_reduce({3, 10, 13}, 2), std::invalid_argument);
    CHECK_THROWS_AS(engine::weak_form_reduce({3, 10, 13}, 5), std::invalid_argument);
}

TEST_CASE("base reduction preserves the solution set") {
    // Solutions of the reduced equation pull back along x = scale_a * X,
    // y = scale_b * Y, and every original solution has divisible exponents.
    const EquationTriple orig{2, 3, 13};
    const auto red = engine::weak_form_reduce(orig, 13);
    const EquationTriple reduced{red.A, red.B, orig.c};
    const auto sols_orig = engine::enumerate_solutions(orig, 6);
    const auto sols_red = engine::enumerate_solutions(reduced, 6);
    CHECK(sols_orig.size() == sols_red.size());
    for (const auto& s : sols_red) {
        const Solution pulled{s.x * red.exponent_scale_a, s.y * red.exponent_scale_b, s.z};
        CHECK(std::find(sols_orig.begin(), sols_orig.end(), pulled) != sols_orig.end());
    }
    for (const auto& s : sols_orig) {
        CHECK(s.x % red.exponent_scale_a == 0);
        CHECK(s.y % red.exponent_scale_b == 0);
    }
}

TEST_CASE("pair analysis on the (3,10,13) solutions") {
    const auto r = engine::pair_analysis({3, 10, 13}, {1, 1, 1}, {7, 1, 3}, 13);
    CHECK(r.delta == 6);
    CHECK(r.e == 3);
    CHECK(r.delta_prime == 1);
    REQUIRE(r.n_prime.has_value());
    CHECK(*r.n_prime == 0);
    CHECK(r.d_modulus == 13);
    CHECK(r.sign_a == 1);
    CHECK(r.sign_b == -1);
}

TEST_CASE("pair analysis on the (2,7,3) solutions") {
    const auto r = engine::pair_analysis({2, 7, 3}, {1, 1, 2}, {5, 2, 4}, 3);
    CHECK(r.delta == 3);
    CHECK(r.e == 1);
    CHECK(r.delta_prime == 3);
    REQUIRE(r.n_prime.has_value());
    CHECK(*r.n_prime == 1);
    CHECK(r.d_modulus == 3);
    CHECK(r.sign_a == -1);
    CHECK(r.sign_b == 1);
}

TEST_CASE("pair analysis rejects bad inputs") {
    // The divisor must exceed 2, so c = 2 never qualifies.
    CHECK_THROWS_AS(engine::pair_analysis({3, 5, 2}, {1, 1, 3}, {3, 1, 5}, 2),
                    std::invalid_argument);
    // Non-solutions are rejected before any claim is tested.
    CHECK_THROWS_AS(engine::pair_analysis({3, 10, 13}, {1, 1, 1}, {2, 1, 3}, 13),
                    std::invalid_argument);
    CHECK_THROWS_AS(engine::pair_analysis({3, 10, 13}, {1, 1, 1}, {1, 1, 1}, 13),
                    std::invalid_argument);
    CHECK_THROWS_AS(engine::pair_analysis({3, 10, 13}, {7, 1, 3}, {1, 1, 1}, 13),
                    std::invalid_argument);
}

TEST_CASE("parity classification") {
    using engine::ParityClass;
    CHECK(engine::parity_class(13, {1, 1, 1}, {7, 1, 3}) == ParityClass::exception);
    CHECK(engine::parity_class(3, {1, 1, 2}, {5, 2, 4}) == ParityClass::mixed_parity);
    CHECK(engine::parity_class(3, {2, 1, 2}, {1, 2, 3}) == ParityClass::mixed_parity);
    CHECK(engine::parity_class(2, {1, 1, 3}, {3, 1, 5}) == ParityClass::not_applicable);
    CHECK(engine::parity_class(9, {1, 1, 1}, {2, 2, 2}) == ParityClass::not_applicable);
    CHECK(engine::parity_class(5, {2, 2, 2}, {1, 1, 1}) == ParityClass::double_even_first);
    CHECK(engine::parity_class(5, {1, 1, 1}, {2, 2, 2}) == ParityClass::double_even_second);
}

TEST_CASE("solution JSON line") {
    CHECK(engine::solution_json_line({3, 10, 13}, {7, 1, 3}) ==
          "{\"a\":3,\"b\":10,\"c\":13,\"x\":7,\"y\":1,\"z\":3}");
    CHECK(engine::solution_json_line({2, 89, 91}, {13, 1, 2}) ==
          "{\"a\":2,\"b\":89,\"c\":91,\"x\":13,\"y\":1,\"z\":2}");
}
