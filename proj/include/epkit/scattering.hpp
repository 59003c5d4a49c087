#ifndef EPKIT_SCATTERING_HPP
#define EPKIT_SCATTERING_HPP

#include <vector>

#include "epkit/types.hpp"

namespace epkit {

// Two resonances coupled to one channel. Poles sit at E_k - (i/2) Gamma_k
// with Gamma_k >= 0; callers converting from eigenvalues pass |Gamma|.
struct resonance_pair {
    double e1 = 0.0;
    double g1 = 0.0; // full width Gamma_1
    double e2 = 0.0;
    double g2 = 0.0;

    resonance_pair(double energy1, double width1, double energy2, double width2)
        : e1(energy1), g1(width1), e2(energy2), g2(width2) {
        require_finite(e1, "resonance_pair.e1");
        require_finite(g1, "resonance_pair.g1");
        require_finite(e2, "resonance_pair.e2");
        require_finite(g2, "resonance_pair.g2");
        if (g1 < 0.0 || g2 < 0.0) {
            throw std::invalid_argument("resonance_pair: widths must be >= 0");
        }
    }
};

struct line_shape_sample {
    double e = 0.0;
    complex_t s{1.0, 0.0};
    double sigma = 0.0; // |1 - S|^2
};

struct line_shape {
    std::vector<line_shape_sample> samples; // strictly increasing in e
};

// S(E) = prod_k (E - E_k + i Gamma_k/2) / (E - E_k - i Gamma_k/2);
// unimodular for real E and nonnegative widths.
complex_t s_matrix(const resonance_pair& res, double e);

// Coalesced form: S = 1 + 2 i Gamma_d / x - Gamma_d^2 / x^2 with
// x = E - E_d - i Gamma_d/2. Equal to the product form with both resonances
// at (E_d, Gamma_d). S(E_d) = 1 exactly, so the cross section has a zero at
// the line-shape center, flanked by two maxima at E_d +- Gamma_d/2.
complex_t s_matrix_double_pole(double e_d, double g_d, double e);

line_shape sample_line_shape(const resonance_pair& res, double e_min,
                             double e_max, int n);
line_shape sample_line_shape_double_pole(double e_d, double g_d, double e_min,
                                         double e_max, int n);

inline double cross_section(complex_t s) { return std::norm(1.0 - s); }

} // namespace epkit

#endif
