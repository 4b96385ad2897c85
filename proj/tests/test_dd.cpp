#include <doctest.h>

#include <cmath>

#include "aqn/dd.hpp"

using aqn::DD;

TEST_CASE("dd addition keeps bits a double loses") {
    DD big(1e16);
    DD sum = big + DD(1.0);
    DD back = sum - big;
    CHECK(aqn::to_double(back) == 1.0);
    DD huge(1e17);
    DD s2 = huge + DD(1.0) - huge;
    CHECK(aqn::to_double(s2) == 1.0);
}

TEST_CASE("dd product of inexact doubles carries the error term") {
    DD x(0.1);
    DD y = x * DD(10.0) - DD(1.0);
    // 0.1*10 - 1 in dd equals the representation error of 0.1, times 10
    CHECK(std::fabs(aqn::to_double(y)) < 1e-16);
    CHECK(aqn::to_double(y) != 0.0);
}

TEST_CASE("dd division and sqrt round-trip") {
    DD a(3.7), b(1.3e-7);
    DD q = a / b;
    DD r = q * b - a;
    CHECK(std::fabs(aqn::to_double(r)) <= 1e-30 * 3.7);

    DD s = aqn::sqrt(DD(2.0));
    DD t = s * s - DD(2.0);
    CHECK(std::fabs(aqn::to_double(t)) <= 1e-30);
}

TEST_CASE("dd comparison and abs") {
    CHECK(DD(1.0, 1e-20) > DD(1.0));
    CHECK(DD(-2.0) < DD(1.0));
    CHECK(aqn::to_double(aqn::abs(DD(-3.5))) == 3.5);
    CHECK(DD(1.0) == DD(1.0));
}

TEST_CASE("dd resolves increments below double quantization") {
    DD p1 = DD(3.0) + DD(5e-20);
    DD p2(3.0);
    CHECK(aqn::to_double(p1 - p2) == doctest::Approx(5e-20).epsilon(1e-10));
}
