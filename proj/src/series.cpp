#include "wheelcalc/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wheelcalc/enumerative.hpp"

namespace wc {

namespace {

int common_order(const ExactSeries& x, const ExactSeries& y) { return std::min(x.order(), y.order()); }

mpq_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return mpq_class(f);
}

}  // namespace

ExactSeries ExactSeries::monomial(int order, int n, const mpq_class& v) {
    ExactSeries s(order);
    if (n >= 0 && n <= order) s.c[n] = v;
    return s;
}

ExactSeries ExactSeries::constant(int order, const mpq_class& v) { return monomial(order, 0, v); }

bool ExactSeries::even() const {
    for (int n = 1; n <= order(); n += 2)
        if (c[n] != 0) return false;
    return true;
}

bool ExactSeries::odd() const {
    for (int n = 0; n <= order(); n += 2)
        if (c[n] != 0) return false;
    return true;
}

ExactSeries operator+(const ExactSeries& x, const ExactSeries& y) {
    ExactSeries r(common_order(x, y));
    for (int n = 0; n <= r.order(); ++n) r.c[n] = x.c[n] + y.c[n];
    return r;
}

ExactSeries operator-(const ExactSeries& x, const ExactSeries& y) { return x + (-y); }

ExactSeries operator-(const ExactSeries& x) { return mpq_class(-1) * x; }

ExactSeries operator*(const ExactSeries& x, const ExactSeries& y) {
    ExactSeries r(common_order(x, y));
    for (int i = 0; i <= r.order(); ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; i + j <= r.order(); ++j) r.c[i + j] += x.c[i] * y.c[j];
    }
    return r;
}

ExactSeries operator*(const mpq_class& s, const ExactSeries& x) {
    ExactSeries r = x;
    for (auto& v : r.c) v *= s;
    return r;
}

ExactSeries inverse(const ExactSeries& x) {
    if (x.order() < 0 || x.c[0] == 0) throw std::domain_error("inverse: zero constant term");
    ExactSeries r(x.order());
    r.c[0] = 1 / x.c[0];
    for (int n = 1; n <= x.order(); ++n) {
        mpq_class s = 0;
        for (int k = 1; k <= n; ++k) s += x.c[k] * r.c[n - k];
        r.c[n] = -s / x.c[0];
    }
    return r;
}

ExactSeries derivative(const ExactSeries& x) {
    ExactSeries r(std::max(x.order() - 1, 0));
    for (int n = 1; n <= x.order(); ++n) r.c[n - 1] = n * x.c[n];
    return r;
}

ExactSeries integral(const ExactSeries& x) {
    ExactSeries r(x.order() + 1);
    for (int n = 0; n <= x.order(); ++n) r.c[n + 1] = x.c[n] / (n + 1);
    return r;
}

ExactSeries exp(const ExactSeries& x) {
    if (x.order() >= 0 && x.c[0] != 0) throw std::domain_error("exp: nonzero constant term");
    // y' = x' y
    ExactSeries r(x.order());
    r.c[0] = 1;
    for (int n = 1; n <= x.order(); ++n) {
        mpq_class s = 0;
        for (int k = 1; k <= n; ++k) s += k * x.c[k] * r.c[n - k];
        r.c[n] = s / n;
    }
    return r;
}

ExactSeries log(const ExactSeries& x) {
    if (x.order() < 0 || x.c[0] != 1) throw std::domain_error("log: constant term must be 1");
    return truncate(integral(derivative(x) * inverse(truncate(x, x.order() - 1))), x.order());
}

ExactSeries rescale(const ExactSeries& x, const mpq_class& s) {
    ExactSeries r = x;
    mpq_class p = 1;
    for (auto& v : r.c) {
        v *= p;
        p *= s;
    }
    return r;
}

ExactSeries shift_down(const ExactSeries& x, int k) {
    for (int n = 0; n < k && n <= x.order(); ++n)
        if (x.c[n] != 0) throw std::domain_error("shift_down: nonzero low coefficient");
    ExactSeries r(x.order() - k);
    for (int n = 0; n <= r.order(); ++n) r.c[n] = x.c[n + k];
    return r;
}

ExactSeries shift_up(const ExactSeries& x, int k) {
    ExactSeries r(x.order() + k);
    for (int n = 0; n <= x.order(); ++n) r.c[n + k] = x.c[n];
    return r;
}

ExactSeries truncate(const ExactSeries& x, int order) {
    ExactSeries r(order);
    for (int n = 0; n <= order; ++n) r.c[n] = x[n];
    return r;
}

ExactSeries series_tanh(int order) {
    ExactSeries y(order);
    for (int n = 0; n < order; ++n) {
        mpq_class s = n == 0 ? 1 : 0;
        for (int i = 0; i <= n; ++i) s -= y.c[i] * y.c[n - i];
        y.c[n + 1] = s / (n + 1);
    }
    return y;
}

ExactSeries series_logcosh(int order) { return integral(series_tanh(order - 1)); }

ExactSeries series_sinh_over_x(int order) {
    ExactSeries r(order);
    for (int n = 0; n <= order; n += 2) r.c[n] = 1 / factorial(n + 1);
    return r;
}

ExactSeries series_psi(int order) {
    ExactSeries r(order);
    for (int n = 1; n <= order; ++n) r.c[n] = mpq_class(psi_number(n)) / factorial(n);
    return r;
}

ExactSeries series_Y(int order) {
    // -tanh(x)/x at x = a/2
    ExactSeries t = shift_down(series_tanh(order + 1), 1);
    return rescale(-t, mpq_class(1, 2));
}

ExactSeries series_Z(int order) {
    ExactSeries t = series_tanh(order + 2);
    t.c[1] -= 1;
    return rescale(mpq_class(-1, 2) * shift_down(t, 2), mpq_class(1, 2));
}

ExactSeries series_wheels(int order) { return rescale(log(series_sinh_over_x(order)), mpq_class(1, 2)); }

std::string to_string(const ExactSeries& x) {
    std::ostringstream os;
    bool first = true;
    for (int n = 0; n <= x.order(); ++n) {
        if (x.c[n] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << x.c[n].get_str();
        if (n > 0) os << "*t^" << n;
    }
    if (first) os << "0";
    os << " + O(t^" << x.order() + 1 << ")";
    return os.str();
}

}  // namespace wc
