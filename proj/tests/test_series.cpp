#include "doctest.h"
#include "wheelcalc/enumerative.hpp"
#include "wheelcalc/series.hpp"

using namespace wc;

TEST_CASE("tanh and log cosh coefficients") {
    auto t = series_tanh(9);
    CHECK(t[1] == 1);
    CHECK(t[3] == mpq_class(-1, 3));
    mpq_class p3(phi_number(3), 6);
    p3.canonicalize();
    CHECK(t[3] == p3);
    CHECK(t[5] == mpq_class(2, 15));
    CHECK(series_logcosh(8)[2] == mpq_class(1, 2));
    CHECK(series_logcosh(8)[4] == mpq_class(-1, 12));
}

TEST_CASE("tanh' = 1 - tanh^2") {
    auto t = series_tanh(12);
    auto lhs = derivative(t);
    auto rhs = ExactSeries::constant(11, 1) - truncate(t * t, 11);
    CHECK(lhs == rhs);
}

TEST_CASE("exp and log are inverse") {
    ExactSeries x(8);
    x.c[1] = mpq_class(1, 3);
    x.c[2] = -2;
    x.c[5] = mpq_class(7, 4);
    CHECK(log(exp(x)) == x);
    auto y = exp(x);
    CHECK(truncate(y * inverse(y), 8) == ExactSeries::constant(8, 1));
}

TEST_CASE("exp rejects a constant term") {
    CHECK_THROWS(exp(ExactSeries::constant(4, 1)));
    CHECK_THROWS(shift_down(ExactSeries::constant(4, 1), 1));
}

TEST_CASE("Y is even and Z is odd") {
    CHECK(series_Y(10).even());
    CHECK(series_Z(10).odd());
    CHECK(series_Y(4)[0] == -1);
    // Z(a) = -1/2 (tanh x - x)/x^2 at x = a/2
    CHECK(series_Z(4)[1] == mpq_class(1, 12));
}

TEST_CASE("wheel coefficients are log(sinh x / x) at x = a/2") {
    auto w = series_wheels(6);
    CHECK(w[2] == mpq_class(1, 24));
    CHECK(w[4] == mpq_class(-1, 2880));
    CHECK(w.odd() == false);
}

TEST_CASE("series identities and their negative control") {
    auto r = series_identity_checks(8);
    CHECK(r.log_identity);
    CHECK(r.tanh_identity);
    auto z = series_Z(10);
    z.c[5] += 1;
    auto bad = series_identity_checks(8, &z);
    CHECK_FALSE(bad.log_identity);
    CHECK_FALSE(bad.tanh_identity);
}
