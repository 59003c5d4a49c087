#include <doctest.h>

#include <cmath>
#include <random>

#include "epkit/model.hpp"
#include "epkit/oracle.hpp"
#include "epkit/spectral.hpp"

using namespace epkit;
using namespace epkit::oracle;

namespace {

std::array<complex_t, 2> unit_euclidean(const std::array<complex_t, 2>& v) {
    double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return {v[0] / n, v[1] / n};
}

double matrix_scale(const matrix2& m) {
    return std::max(1.0, m.max_abs());
}

} // namespace

TEST_CASE("compensated arithmetic keeps sub-ulp information") {
    // a sum that plain doubles cannot represent
    dd s = dd_add(dd(1e16), dd(1.0));
    dd back = dd_sub(s, dd(1e16));
    CHECK(back.to_double() == 1.0);

    // division and multiplication invert each other to ~32 digits
    dd third = dd_div(dd(1.0), dd(3.0));
    dd one = dd_mul(third, dd(3.0));
    CHECK(std::abs(dd_sub(one, dd(1.0)).to_double()) < 1e-31);

    dd root = dd_sqrt(dd(2.0));
    dd two = dd_mul(root, root);
    CHECK(std::abs(dd_sub(two, dd(2.0)).to_double()) < 1e-31);

    CHECK(dd_cmp(dd(1.0), dd(1.0, 1e-20)) < 0);
    CHECK(dd_abs(dd(-3.5)).to_double() == 3.5);

    // complex extended ops: (3+4i)/(3+4i) = 1, sqrt(-4) = 2i
    cdd q = cdd_div(cdd(complex_t(3.0, 4.0)), cdd(complex_t(3.0, 4.0)));
    CHECK(std::abs(q.to_complex() - complex_t(1.0, 0.0)) < 1e-30);
    cdd r = cdd_sqrt(cdd(complex_t(-4.0, 0.0)));
    CHECK(std::abs(r.to_complex() - complex_t(0.0, 2.0)) < 1e-30);
    // canonical branch matches the working-precision convention
    complex_t b = branch_sqrt(complex_t(-4.0, 0.0));
    CHECK(r.to_complex() == b);
}

TEST_CASE("diagonal matrix: exact eigenvalues, plus branch first") {
    matrix2 m(complex_t(1.0, 0.0), complex_t(0.0, 0.0), complex_t(0.0, 0.0),
              complex_t(2.0, 0.0));
    oracle_report rep = reference_eigensystem(m);
    CHECK(rep.eigenvalue[0].to_complex() == complex_t(2.0, 0.0));
    CHECK(rep.eigenvalue[1].to_complex() == complex_t(1.0, 0.0));
    CHECK(rep.eigenvalue[0].re.lo == 0.0);
    CHECK(rep.residual[0] == 0.0);
    CHECK(rep.residual[1] == 0.0);
    CHECK_FALSE(rep.degenerate);
}

TEST_CASE("random symmetric draws keep trace and determinant to 1e-30") {
    std::mt19937_64 rng(0x0ddba11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int it = 0; it < 300; ++it) {
        complex_t d1(unit(rng), unit(rng));
        complex_t d2(unit(rng), unit(rng));
        complex_t od(unit(rng), unit(rng));
        matrix2 m(d1, od, od, d2);
        oracle_report rep = reference_eigensystem(m);

        cdd tr = cdd_add(rep.eigenvalue[0], rep.eigenvalue[1]);
        cdd tr_in = cdd_add(cdd(m.h11), cdd(m.h22));
        cdd dt = cdd_mul(rep.eigenvalue[0], rep.eigenvalue[1]);
        cdd dt_in = cdd_sub(cdd_mul(cdd(m.h11), cdd(m.h22)),
                            cdd_mul(cdd(m.h12), cdd(m.h21)));

        CHECK(std::abs(cdd_sub(tr, tr_in).to_complex()) < 1e-30);
        CHECK(std::abs(cdd_sub(dt, dt_in).to_complex()) < 1e-29);
    }
}

TEST_CASE("exact coalescence input: zero gap, single direction") {
    // dyadic parameters make the discriminant vanish identically
    open_params p;
    p.e1 = 0.125;
    p.e2 = 0.0;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    p.omega = complex_t(0.0, 0.0625);
    matrix2 m = build_matrix(p);
    oracle_report rep = reference_eigensystem(m);
    CHECK(rep.degenerate);
    complex_t gap = rep.eigenvalue[0].to_complex() - rep.eigenvalue[1].to_complex();
    CHECK(std::abs(gap) < 1e-15);
    CHECK(rep.vec[0][0].to_complex() == rep.vec[1][0].to_complex());
    CHECK(rep.vec[0][1].to_complex() == rep.vec[1][1].to_complex());
    CHECK(rep.residual[0] < 1e-30);

    // same cancellation for the documented crossing parameters
    open_params q;
    q.e1 = 0.1;
    q.e2 = 0.0;
    q.gamma1 = 1.0;
    q.gamma2 = 1.0;
    q.omega = complex_t(0.0, 0.05);
    oracle_report rep2 = reference_eigensystem(build_matrix(q));
    CHECK(rep2.degenerate);
    CHECK(std::abs(rep2.eigenvalue[0].to_complex() -
                   rep2.eigenvalue[1].to_complex()) < 1e-15);
}

TEST_CASE("grid-coincident coalescence point: gap below the scan tolerance") {
    open_params p;
    p.e1 = 1.0 - 0.5 * 0.6;
    p.e2 = 0.6;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    p.omega = complex_t(0.0, 0.05);
    oracle_report rep = reference_eigensystem(build_matrix(p));
    complex_t gap = rep.eigenvalue[0].to_complex() - rep.eigenvalue[1].to_complex();
    CHECK(std::abs(gap) < 1e-8);
}

TEST_CASE("residual scales: exact pair is zero, perturbation shows through") {
    matrix2 m(complex_t(1.0, 0.0), complex_t(0.0, 0.0), complex_t(0.0, 0.0),
              complex_t(2.0, 0.0));
    CHECK(residual_check(m, complex_t(1.0, 0.0),
                         {complex_t(1.0, 0.0), complex_t(0.0, 0.0)}) == 0.0);
    CHECK(residual_check(m, complex_t(2.0, 0.0),
                         {complex_t(0.0, 0.0), complex_t(1.0, 0.0)}) == 0.0);

    double res = residual_check(m, complex_t(1.0, 0.0),
                                {complex_t(1.0, 0.0), complex_t(1e-6, 0.0)});
    CHECK(res > 1e-7);
    CHECK(res < 1e-5);
}

TEST_CASE("property: main-path decomposition verified in extended precision") {
    std::mt19937_64 rng(0x5eed5eed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> half(-0.5, 0.5);

    double worst_agreement = 0.0;
    double worst_residual = 0.0;
    int tested = 0;
    for (int it = 0; it < 2500; ++it) {
        open_params p;
        p.e1 = unit(rng);
        p.e2 = unit(rng);
        p.gamma1 = unit(rng);
        p.gamma2 = unit(rng);
        p.omega = complex_t(half(rng), half(rng));
        matrix2 m = build_matrix(p);
        double scale = matrix_scale(m);

        eigen_system sys = eigensystem(m);
        if (sys.defective ||
            std::abs(sys.eigenvalue[0] - sys.eigenvalue[1]) <= 1e-6 * scale) {
            continue;
        }
        ++tested;

        oracle_report rep = reference_eigensystem(m);
        worst_agreement = std::max(worst_agreement,
                                   eigenvalue_agreement(rep, sys));
        CHECK(rep.residual[0] < 1e-20 * scale);
        CHECK(rep.residual[1] < 1e-20 * scale);

        for (int k = 0; k < 2; ++k) {
            double res = residual_check(
                m, sys.eigenvalue[static_cast<size_t>(k)],
                unit_euclidean(sys.right[static_cast<size_t>(k)]));
            worst_residual = std::max(worst_residual, res / scale);
        }
    }
    CHECK(tested > 2000);
    CHECK(worst_agreement < 1e-10);
    CHECK(worst_residual < 1e-12);
}
