#include "epkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace epkit {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

complex_t bilinear_dot(const std::array<complex_t, 2>& x,
                       const std::array<complex_t, 2>& y) {
    return x[0] * y[0] + x[1] * y[1];
}

complex_t conj_dot(const std::array<complex_t, 2>& x,
                   const std::array<complex_t, 2>& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
}

double norm2(const std::array<complex_t, 2>& x) {
    return std::norm(x[0]) + std::norm(x[1]);
}

// +-1 gauge: the larger-magnitude component's phase is put in (-pi/2, pi/2]
// (component 0 wins magnitude ties). Keeps per-point phases reproducible.
void gauge_fix(std::array<complex_t, 2>& v) {
    int i = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
    const complex_t& c = v[i];
    bool keep = c.real() > 0.0 || (c.real() == 0.0 && c.imag() >= 0.0);
    if (!keep) {
        v[0] = -v[0];
        v[1] = -v[1];
    }
}

// null direction of (m - lambda I) via the larger adjugate column; falls back
// to basis vectors for scalar matrices
std::array<complex_t, 2> null_direction(const matrix2& m, complex_t lambda,
                                        int which) {
    std::array<complex_t, 2> c1{m.h22 - lambda, -m.h21};
    std::array<complex_t, 2> c2{-m.h12, m.h11 - lambda};
    double n1 = norm2(c1);
    double n2 = norm2(c2);
    if (n1 == 0.0 && n2 == 0.0) {
        return which == 0 ? std::array<complex_t, 2>{1.0, 0.0}
                          : std::array<complex_t, 2>{0.0, 1.0};
    }
    std::array<complex_t, 2> v = n1 >= n2 ? c1 : c2;
    double s = std::sqrt(norm2(v));
    v[0] /= s;
    v[1] /= s;
    return v;
}

// sine of the angle between unit vectors (projection residual); exact zero
// for identical directions
double direction_sine(const std::array<complex_t, 2>& u,
                      const std::array<complex_t, 2>& v) {
    complex_t c = conj_dot(u, v);
    std::array<complex_t, 2> res{v[0] - c * u[0], v[1] - c * u[1]};
    return std::sqrt(norm2(res));
}

} // namespace

complex_t discriminant_z(const open_params& p) {
    complex_t eps1(p.e1, 0.5 * p.gamma1);
    complex_t eps2(p.e2, 0.5 * p.gamma2);
    complex_t d = eps1 - eps2;
    return 0.5 * branch_sqrt(d * d + 4.0 * (p.omega * p.omega));
}

std::pair<complex_t, complex_t> eigenvalues_closed_form(const open_params& p) {
    complex_t eps1(p.e1, 0.5 * p.gamma1);
    complex_t eps2(p.e2, 0.5 * p.gamma2);
    complex_t mean = 0.5 * (eps1 + eps2);
    complex_t z = discriminant_z(p);
    return {mean + z, mean - z};
}

std::pair<complex_t, complex_t> eigenvalues_closed_form(const pt_params& p) {
    double w2 = std::norm(p.w);
    if (p.variant == pt_variant::balanced_gain_loss) {
        complex_t z = 0.5 * branch_sqrt(complex_t(4.0 * w2 - p.gamma * p.gamma, 0.0));
        complex_t center(p.e, 0.0);
        return {center + z, center - z};
    }
    complex_t z =
        0.5 * branch_sqrt(complex_t(4.0 * w2 - 0.25 * (p.gamma * p.gamma), 0.0));
    complex_t center(p.e, -0.25 * p.gamma);
    return {center + z, center - z};
}

std::pair<complex_t, complex_t> eigenvalues_closed_form(const family_params& p) {
    if (std::holds_alternative<open_params>(p)) {
        return eigenvalues_closed_form(std::get<open_params>(p));
    }
    return eigenvalues_closed_form(std::get<pt_params>(p));
}

eigen_system eigensystem(const matrix2& m) {
    eigen_system sys{};
    sys.symmetric_input = m.is_symmetric();

    complex_t mean = 0.5 * (m.h11 + m.h22);
    complex_t hd = m.h11 - m.h22;
    complex_t disc = 0.25 * (hd * hd) + m.h12 * m.h21;
    complex_t z = branch_sqrt(disc);
    sys.eigenvalue[0] = mean + z;
    sys.eigenvalue[1] = mean - z;
    sys.condition = std::abs(sys.eigenvalue[0] - sys.eigenvalue[1]);

    std::array<std::array<complex_t, 2>, 2> dir;
    dir[0] = null_direction(m, sys.eigenvalue[0], 0);
    dir[1] = null_direction(m, sys.eigenvalue[1], 1);

    double scale = std::max(1.0, m.max_abs());
    sys.defective = sys.condition < defect_gap_tol * scale &&
                    direction_sine(dir[0], dir[1]) < defect_angle_tol;

    if (sys.defective) {
        // single eigendirection, unit Euclidean norm; the bilinear product
        // vanishes in this limit so the usual normalization does not exist
        gauge_fix(dir[0]);
        for (int k = 0; k < 2; ++k) {
            sys.right[k] = dir[0];
            sys.left[k] = dir[0];
            sys.norm_a[k] = inf;
            sys.rigidity[k] = 0.0;
        }
        sys.overlap_b12 = complex_t(inf, 0.0);
        sys.overlap_b21 = complex_t(inf, 0.0);
        return sys;
    }

    for (int k = 0; k < 2; ++k) {
        std::array<complex_t, 2> v = dir[k];
        complex_t q = branch_sqrt(bilinear_dot(v, v));
        if (q == complex_t(0.0, 0.0)) {
            // exactly self-orthogonal under the bilinear product (chiral
            // direction); keep the unit-Euclidean vector and use sentinels
            sys.self_orthogonal[k] = true;
            gauge_fix(v);
            sys.right[k] = v;
            sys.left[k] = v;
            sys.norm_a[k] = inf;
            sys.rigidity[k] = 0.0;
            continue;
        }
        v[0] /= q;
        v[1] /= q;
        gauge_fix(v);
        sys.right[k] = v;
        sys.norm_a[k] = norm2(v);
        sys.rigidity[k] = std::min(1.0, 1.0 / sys.norm_a[k]);
    }

    if (sys.symmetric_input) {
        // unconjugated-transpose shortcut: left vectors equal right vectors
        sys.left = sys.right;
    } else {
        // right eigenvectors of the transpose, matched to the same
        // eigenvalue indices, scaled so that L_k . R_k = 1
        matrix2 mt(m.h11, m.h21, m.h12, m.h22);
        for (int k = 0; k < 2; ++k) {
            if (sys.self_orthogonal[k]) {
                continue;
            }
            std::array<complex_t, 2> l = null_direction(mt, sys.eigenvalue[k], k);
            complex_t pairing = bilinear_dot(l, sys.right[k]);
            if (pairing == complex_t(0.0, 0.0)) {
                // left-right pairing degenerate without eigenvalue
                // coalescence; report the raw direction
                sys.left[k] = l;
                continue;
            }
            sys.left[k] = {l[0] / pairing, l[1] / pairing};
        }
    }

    bool sentinel = sys.self_orthogonal[0] || sys.self_orthogonal[1];
    if (sentinel) {
        sys.overlap_b12 = complex_t(inf, 0.0);
        sys.overlap_b21 = complex_t(inf, 0.0);
    } else {
        sys.overlap_b12 = conj_dot(sys.right[0], sys.right[1]);
        sys.overlap_b21 = conj_dot(sys.right[1], sys.right[0]);
    }
    return sys;
}

double phase_rigidity(const eigen_system& sys, int k) {
    if (sys.defective) {
        return 0.0;
    }
    return sys.rigidity[static_cast<size_t>(k)];
}

mixing_coefficients mixing_of(const eigen_system& sys) {
    mixing_coefficients mix;
    bool sentinel = sys.defective || sys.self_orthogonal[0] || sys.self_orthogonal[1];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            complex_t b = sys.right[static_cast<size_t>(i)][static_cast<size_t>(j)];
            mix.b[static_cast<size_t>(i)][static_cast<size_t>(j)] = b;
            mix.magnitude[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                sentinel ? inf : std::abs(b);
            double th = std::atan2(b.imag(), b.real());
            if (th == -std::numbers::pi) {
                th = std::numbers::pi; // phases live in (-pi, pi]
            }
            mix.theta[static_cast<size_t>(i)][static_cast<size_t>(j)] = th;
        }
    }
    return mix;
}

std::array<double, 2> nonlinear_source_strength(const eigen_system& sys,
                                                complex_t coupling) {
    if (sys.defective) {
        return {inf, inf};
    }
    std::array<double, 2> out{};
    for (int k = 0; k < 2; ++k) {
        if (sys.self_orthogonal[static_cast<size_t>(k)]) {
            out[static_cast<size_t>(k)] = inf;
            continue;
        }
        const auto& r = sys.right[static_cast<size_t>(k)];
        // W has `coupling` on both off-diagonals: R . (W R)
        complex_t wr0 = coupling * r[1];
        complex_t wr1 = coupling * r[0];
        complex_t s = r[0] * wr0 + r[1] * wr1;
        out[static_cast<size_t>(k)] =
            std::abs(s) * sys.norm_a[static_cast<size_t>(k)];
    }
    return out;
}

complex_t coalescence_ratio(const eigen_system& sys) {
    if (sys.defective || sys.self_orthogonal[0] || sys.self_orthogonal[1]) {
        return {inf, inf};
    }
    complex_t num = bilinear_dot(sys.right[0], sys.right[1]);
    complex_t den = branch_sqrt(bilinear_dot(sys.right[0], sys.right[0])) *
                    branch_sqrt(bilinear_dot(sys.right[1], sys.right[1]));
    return num / den;
}

} // namespace epkit
