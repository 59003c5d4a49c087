#ifndef EPKIT_ORACLE_HPP
#define EPKIT_ORACLE_HPP

#include <array>

#include "epkit/spectral.hpp"
#include "epkit/types.hpp"

namespace epkit {
namespace oracle {

// Compensated double-double arithmetic: an unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2, giving roughly 32 significant decimal digits. Enough for
// 2x2 spectral checks without any external dependency. This path shares no
// eigen-solver code with the main decomposition: eigenvalues come from the
// compensated quadratic formula, eigenvectors from adjugate columns plus one
// inverse-iteration step.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

dd dd_add(dd a, dd b);
dd dd_sub(dd a, dd b);
dd dd_mul(dd a, dd b);
dd dd_div(dd a, dd b);
dd dd_sqrt(dd a);
dd dd_neg(dd a);
dd dd_abs(dd a);
int dd_cmp(dd a, dd b);

struct cdd {
    dd re, im;

    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(complex_t z) : re(z.real()), im(z.imag()) {}

    complex_t to_complex() const { return {re.to_double(), im.to_double()}; }
};

cdd cdd_add(cdd a, cdd b);
cdd cdd_sub(cdd a, cdd b);
cdd cdd_mul(cdd a, cdd b);
cdd cdd_div(cdd a, cdd b);
cdd cdd_sqrt(cdd a);   // principal branch, canonicalized like branch_sqrt
cdd cdd_scale(cdd a, double s);
dd cdd_abs2(cdd a);

struct oracle_report {
    std::array<cdd, 2> eigenvalue;            // "+" branch first
    std::array<std::array<cdd, 2>, 2> vec;    // unit Euclidean norm
    std::array<double, 2> residual{0.0, 0.0}; // |m v - lambda v|_inf, extended
    bool degenerate = false;                  // single eigendirection reported
};

oracle_report reference_eigensystem(const matrix2& m);

// |m v - lambda v|_inf evaluated in extended precision.
double residual_check(const matrix2& m, complex_t lambda,
                      const std::array<complex_t, 2>& v);

// Largest relative eigenvalue disagreement between the reference
// decomposition and a main-path result (branches matched by proximity).
double eigenvalue_agreement(const oracle_report& ref, const eigen_system& sys);

} // namespace oracle
} // namespace epkit

#endif
