#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wc {

// Truncated power series with exact rational coefficients c[0..order].
struct ExactSeries {
    std::vector<mpq_class> c;

    ExactSeries() = default;
    explicit ExactSeries(int order) : c(static_cast<std::size_t>(order) + 1) {}
    int order() const { return static_cast<int>(c.size()) - 1; }
    mpq_class operator[](int n) const { return n >= 0 && n <= order() ? c[n] : mpq_class(0); }
    bool operator==(const ExactSeries& o) const = default;

    static ExactSeries monomial(int order, int n, const mpq_class& v = 1);
    static ExactSeries constant(int order, const mpq_class& v);
    bool even() const;
    bool odd() const;
};

ExactSeries operator+(const ExactSeries& x, const ExactSeries& y);
ExactSeries operator-(const ExactSeries& x, const ExactSeries& y);
ExactSeries operator-(const ExactSeries& x);
ExactSeries operator*(const ExactSeries& x, const ExactSeries& y);
ExactSeries operator*(const mpq_class& s, const ExactSeries& x);

ExactSeries inverse(const ExactSeries& x);
ExactSeries exp(const ExactSeries& x);
ExactSeries log(const ExactSeries& x);
ExactSeries derivative(const ExactSeries& x);
ExactSeries integral(const ExactSeries& x);
// x(s t) for a rational s.
ExactSeries rescale(const ExactSeries& x, const mpq_class& s);
// Divide by t^k; the k lowest coefficients must vanish.  Order drops by k.
ExactSeries shift_down(const ExactSeries& x, int k);
ExactSeries shift_up(const ExactSeries& x, int k);
ExactSeries truncate(const ExactSeries& x, int order);

// Solutions of y' = 1 - y^2, y(0) = 0 and its integral.
ExactSeries series_tanh(int order);
ExactSeries series_logcosh(int order);
ExactSeries series_sinh_over_x(int order);
// Sum psi(n)/n! x^n from the brute-force descent sums.
ExactSeries series_psi(int order);

// Edge labels of the final formulas, as series in a (x = a/2).
// Y(a) = -tanh(a/2)/(a/2),  Z(a) = -1/2 (tanh(a/2) - a/2)/(a/2)^2.
ExactSeries series_Y(int order);
ExactSeries series_Z(int order);
// ln(sinh(a/2)/(a/2)).
ExactSeries series_wheels(int order);

std::string to_string(const ExactSeries& x);

}  // namespace wc
