#include <doctest.h>

#include <cmath>
#include <limits>

#include "epkit/model.hpp"
#include "epkit/types.hpp"

using namespace epkit;

TEST_CASE("linear law evaluates intercept plus slope times a") {
    linear_law law{1.0, -0.5};
    CHECK(law(0.0) == 1.0);
    CHECK(law(1.0) == 0.5);
    CHECK(law(0.61) == 1.0 + (-0.5) * 0.61);
}

TEST_CASE("matrix2 rejects non-finite entries") {
    double nan = std::numeric_limits<double>::quiet_NaN();
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(matrix2(complex_t(nan, 0), 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(matrix2(0, complex_t(0, inf), 0, 0), std::invalid_argument);
    CHECK_NOTHROW(matrix2(1.0, 2.0, 3.0, 4.0));
}

TEST_CASE("matrix2 structure predicates") {
    matrix2 sym(1.0, complex_t(0, 0.05), complex_t(0, 0.05), 2.0);
    CHECK(sym.is_symmetric());
    CHECK_FALSE(sym.is_pt_form());

    matrix2 pt(1.0, complex_t(0.03, 0.04), complex_t(0.03, -0.04), 2.0);
    CHECK_FALSE(pt.is_symmetric());
    CHECK(pt.is_pt_form());

    matrix2 real_sym(1.0, 0.05, 0.05, 2.0);
    CHECK(real_sym.is_symmetric());
    CHECK(real_sym.is_pt_form());

    CHECK(pt.max_abs() == std::abs(complex_t(2.0, 0.0)));
}

TEST_CASE("branch_sqrt picks the non-negative real part sheet") {
    CHECK(branch_sqrt(complex_t(4.0, 0.0)) == complex_t(2.0, 0.0));
    CHECK(branch_sqrt(complex_t(-4.0, 0.0)) == complex_t(0.0, 2.0));
    // the tie rule maps both signed-zero variants of the negative real axis
    // to the positive imaginary sheet
    complex_t below = branch_sqrt(complex_t(-4.0, -0.0));
    CHECK(below.real() == 0.0);
    CHECK(below.imag() == 2.0);

    complex_t s = branch_sqrt(complex_t(0.0, -9.0));
    CHECK(s.real() > 0.0);
    CHECK(s.imag() < 0.0);
    CHECK(std::abs(s * s - complex_t(0.0, -9.0)) < 1e-14);
}

TEST_CASE("open matrix carries energies and half widths literally") {
    open_params p;
    p.e1 = 0.695;
    p.e2 = 0.61;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    p.omega = complex_t(0.0, 0.05);
    matrix2 m = build_matrix(p);
    CHECK(m.h11 == complex_t(0.695, 0.5));
    CHECK(m.h22 == complex_t(0.61, 0.5));
    CHECK(m.h12 == complex_t(0.0, 0.05));
    CHECK(m.h21 == m.h12);
}

TEST_CASE("pt matrices place gain and loss on the diagonal") {
    pt_params p;
    p.e = 0.5;
    p.gamma = 0.1;
    p.w = complex_t(0.03, 0.04);

    p.variant = pt_variant::balanced_gain_loss;
    matrix2 mb = build_matrix(p);
    CHECK(mb.h11 == complex_t(0.5, -0.05));
    CHECK(mb.h22 == complex_t(0.5, 0.05));
    CHECK(mb.h12 == complex_t(0.03, 0.04));
    CHECK(mb.h21 == complex_t(0.03, -0.04));
    CHECK(mb.is_pt_form());

    p.variant = pt_variant::lossy_only;
    matrix2 ml = build_matrix(p);
    CHECK(ml.h11 == complex_t(0.5, -0.05));
    CHECK(ml.h22 == complex_t(0.5, 0.0));
}

TEST_CASE("trajectory evaluation, open kind") {
    param_trajectory traj;
    traj.kind = family_kind::open;
    traj.e1_law = {1.0, -0.5};
    traj.e2_law = {0.0, 1.0};
    traj.gamma1_law = {1.0, 0.0};
    traj.gamma2_law = {1.0, 0.0};
    traj.base_coupling = complex_t(0.0, 0.05);

    family_params p = params_at(traj, 1.0);
    const auto& o = std::get<open_params>(p);
    CHECK(o.e1 == 0.5);
    CHECK(o.e2 == 1.0);
    CHECK(o.gamma1 == 1.0);
    CHECK(o.omega == complex_t(0.0, 0.05));

    CHECK_THROWS_AS(params_at(traj, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("gaussian falloff scales the coupling by exp(-(e1-e2)^2)") {
    param_trajectory traj;
    traj.kind = family_kind::open;
    traj.e1_law = {0.5, 0.0};
    traj.e2_law = {0.0, 0.0};
    traj.coupling = coupling_model::gaussian_falloff;
    traj.base_coupling = complex_t(0.05, 0.0);

    family_params p = params_at(traj, 0.0);
    const auto& o = std::get<open_params>(p);
    CHECK(std::abs(o.omega.real() - 0.038940039153570246) < 1e-15);
    CHECK(o.omega.imag() == 0.0);

    // degenerate energies leave the coupling untouched
    traj.e1_law = {0.25, 0.0};
    traj.e2_law = {0.25, 0.0};
    family_params p2 = params_at(traj, 0.0);
    const auto& o2 = std::get<open_params>(p2);
    CHECK(o2.omega == complex_t(0.05, 0.0));
}

TEST_CASE("trajectory evaluation, pt kinds use the single-law slots") {
    param_trajectory traj;
    traj.kind = family_kind::pt_balanced;
    traj.e1_law = {0.5, 0.0};
    traj.gamma1_law = {0.0, 0.05};
    traj.base_coupling = complex_t(0.05, 0.0);

    family_params fp = params_at(traj, 2.0);
    const auto& p = std::get<pt_params>(fp);
    CHECK(p.e == 0.5);
    CHECK(p.gamma == 0.1);
    CHECK(p.variant == pt_variant::balanced_gain_loss);

    traj.kind = family_kind::pt_lossy;
    family_params fq = params_at(traj, 2.0);
    const auto& q = std::get<pt_params>(fq);
    CHECK(q.variant == pt_variant::lossy_only);
}
