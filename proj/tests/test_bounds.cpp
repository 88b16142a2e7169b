#include "uniteq/bounds.hpp"

#include "uniteq/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace uniteq;
using doctest::Approx;

TEST_CASE("non-Archimedean bound example values") {
    bounds::MadicParams p;
    p.modulus = 13;
    p.g = 6;
    p.h1 = std::log(13.0);
    p.h2 = std::log(13.0);
    p.b1 = 2;
    p.b2 = 1;
    const auto r = bounds::bugeaud_madic_bound(p);
    CHECK(r.value == Approx(5145.6).epsilon(1e-9));
    CHECK(r.dominated_branch == "4 log M");

    p.g = 1;
    p.b1 = 1;
    const auto r2 = bounds::bugeaud_madic_bound(p);
    CHECK(r2.value == Approx(857.6).epsilon(1e-9));
    CHECK(r2.dominated_branch == "4 log M");
}

TEST_CASE("prime-field bound example values") {
    bounds::PadicFieldParams p;
    p.p = 13;
    p.d = 2;
    p.f_pi = 1;
    p.g = 12;
    p.h1 = std::log(13.0);
    p.h2 = std::log(13.0);
    p.b1 = 1;
    p.b2 = 1;
    const auto r = bounds::bugeaud_laurent_bound(p);
    CHECK(r.value == Approx(22713.6).epsilon(1e-9));
    CHECK(r.dominated_branch == "(8 f/D) log p");
}

TEST_CASE("bounds are monotone in every growth parameter") {
    bounds::MadicParams base;
    base.modulus = 13;
    base.g = 2;
    base.h1 = 3.0;
    base.h2 = 3.5;
    base.b1 = 4;
    base.b2 = 7;
    const double v0 = bounds::bugeaud_madic_bound(base).value;
    for (int which = 0; which < 5; ++which) {
        for (double scale : {1.25, 2.0, 8.0}) {
            bounds::MadicParams p = base;
            switch (which) {
            case 0: p.g *= scale; break;
            case 1: p.h1 *= scale; break;
            case 2: p.h2 *= scale; break;
            case 3: p.b1 *= scale; break;
            case 4: p.b2 *= scale; break;
            }
            CHECK(bounds::bugeaud_madic_bound(p).value >= v0);
        }
    }
}

TEST_CASE("height floors are enforced with a small tolerance") {
    bounds::MadicParams p;
    p.modulus = 13;
    p.g = 1;
    p.h1 = std::log(13.0);
    p.h2 = std::log(13.0);
    p.b1 = 1;
    p.b2 = 1;
    CHECK_NOTHROW(bounds::bugeaud_madic_bound(p));
    p.h1 = std::log(13.0) * (1.0 - 1e-12);
    CHECK_NOTHROW(bounds::bugeaud_madic_bound(p));
    p.h1 = 2.0;
    CHECK_THROWS_AS(bounds::bugeaud_madic_bound(p), std::invalid_argument);
}

TEST_CASE("fixed point solver semantics") {
    // Constant right-hand side: the first point beyond it.
    CHECK(bounds::fixed_point_bound([](double) { return 100.0; }, 1) == 101);
    // A floor above the crossing is honored.
    CHECK(bounds::fixed_point_bound([](double) { return 100.0; }, 500) == 500);
    // Dip-safe: 50 log^2 T dips below T early, crosses back, and the sound
    // answer sits past the second crossing.
    const long dip = bounds::fixed_point_bound(
        [](double t) { return 50.0 * std::log(t) * std::log(t); }, 1);
    CHECK(dip == 3276);
    // A right-hand side that never falls behind T is rejected.
    CHECK_THROWS_AS(bounds::fixed_point_bound([](double t) { return t + 1.0; }, 1),
                    std::invalid_argument);
}

TEST_CASE("effective constants reproduce their frozen values") {
    CHECK(bounds::k1(true) == 2367);
    CHECK(bounds::k1(false) == 843);
    CHECK(bounds::k2() == 10459);
    CHECK(bounds::k3(bounds::K3Case::m_lt_c_z_le_8) == 77862);
    CHECK(bounds::k3(bounds::K3Case::m_gt_c_z_le_8) == 44368);
    CHECK(bounds::k3(bounds::K3Case::z_ge_9) == 68809);
    CHECK(bounds::n_prime_max() == 3);
    CHECK(bounds::case_vi_z_bound(0) == 23661);
    CHECK(bounds::case_vi_z_bound(1) == 23662);
    CHECK(bounds::case_vi_z_bound(2) == 47324);
    CHECK(bounds::case_vi_z_bound(3) == 70986);
    CHECK_THROWS_AS(bounds::case_vi_z_bound(4), std::invalid_argument);
    CHECK_THROWS_AS(bounds::case_vi_z_bound(-1), std::invalid_argument);
}

TEST_CASE("exponent and delta caps against independent evaluations") {
    CHECK(bounds::exponent_cap(2367, 10) == 13979);
    CHECK(bounds::exponent_cap(2367, 2) == 4208);
    CHECK(bounds::exponent_cap(843, 88) == 9681);
    CHECK(bounds::exponent_cap(20, 10) == 118);
    CHECK(bounds::exponent_cap(20, 3) == 56);
    CHECK(bounds::delta_cap(2367, 5) == 77862);
    CHECK(bounds::delta_cap(2367, 8) == 124579);
    CHECK(bounds::delta_cap(843, 8) == 44368);
    CHECK(bounds::delta_cap(10459, 1) == 68809);
    CHECK(bounds::delta_cap(20, 1) == 131);
    CHECK_THROWS_AS(bounds::exponent_cap(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(bounds::exponent_cap(10, 1), std::invalid_argument);
}

TEST_CASE("reference table flags exactly the three stale caps") {
    const auto rows = bounds::reference_constant_checks();
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].name == "K1 (min base < 13)");
    CHECK(rows[1].name == "K1 (min base > 13)");
    CHECK(rows[2].name == "K2");
    CHECK(rows[3].name == "K3 (min base < 13, z <= 8)");
    CHECK(rows[4].name == "K3 (min base > 13, z <= 8)");
    CHECK(rows[5].name == "K3 (z >= 9)");
    for (int i = 0; i < 6; ++i) {
        CHECK(rows[i].pass());
        CHECK(rows[i].computed == rows[i].reference);
    }
    const long expected_computed[4] = {23661, 23662, 47324, 70986};
    const long expected_reference[4] = {23650, 23651, 47322, 70986};
    for (int i = 0; i < 4; ++i) {
        const auto& row = rows[6 + i];
        CHECK(row.name == "square-exponent z cap (n' = " + std::to_string(i) + ")");
        CHECK(row.computed == expected_computed[i]);
        CHECK(row.reference == expected_reference[i]);
        CHECK(row.pass() == (i == 3));
    }
}
