#include "epkit/scattering.hpp"

#include <stdexcept>

namespace epkit {

complex_t s_matrix(const resonance_pair& res, double e) {
    complex_t f1 = complex_t(e - res.e1, 0.5 * res.g1) /
                   complex_t(e - res.e1, -0.5 * res.g1);
    complex_t f2 = complex_t(e - res.e2, 0.5 * res.g2) /
                   complex_t(e - res.e2, -0.5 * res.g2);
    return f1 * f2;
}

complex_t s_matrix_double_pole(double e_d, double g_d, double e) {
    require_finite(e_d, "s_matrix_double_pole.e_d");
    require_finite(g_d, "s_matrix_double_pole.g_d");
    require_finite(e, "s_matrix_double_pole.e");
    if (g_d < 0.0) {
        throw std::invalid_argument("s_matrix_double_pole: width must be >= 0");
    }
    complex_t x(e - e_d, -0.5 * g_d);
    complex_t t = complex_t(0.0, g_d) / x;  // i Gamma_d / x
    return 1.0 + 2.0 * t + t * t;           // = 1 + 2i G/x - G^2/x^2
}

namespace {

template <typename F>
line_shape sample_impl(F&& s_of, double e_min, double e_max, int n) {
    if (!(e_max > e_min)) {
        throw std::invalid_argument("line shape: need e_max > e_min");
    }
    if (n < 2) {
        throw std::invalid_argument("line shape: need at least 2 samples");
    }
    line_shape out;
    out.samples.reserve(static_cast<size_t>(n));
    double step = (e_max - e_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        double e = e_min + i * step;
        complex_t s = s_of(e);
        out.samples.push_back({e, s, cross_section(s)});
    }
    return out;
}

} // namespace

line_shape sample_line_shape(const resonance_pair& res, double e_min,
                             double e_max, int n) {
    return sample_impl([&](double e) { return s_matrix(res, e); }, e_min, e_max,
                       n);
}

line_shape sample_line_shape_double_pole(double e_d, double g_d, double e_min,
                                         double e_max, int n) {
    return sample_impl([&](double e) { return s_matrix_double_pole(e_d, g_d, e); },
                       e_min, e_max, n);
}

} // namespace epkit
