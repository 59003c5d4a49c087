#include "epkit/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace epkit {
namespace oracle {

namespace {

// error-free transforms
inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    // requires |a| >= |b| or a == 0
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd renorm(double hi, double lo) { return quick_two_sum(hi, lo); }

} // namespace

dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return renorm(s.hi, lo);
}

dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return renorm(p.hi, lo);
}

dd dd_div(dd a, dd b) {
    // Bailey-style: one double quotient, then a compensated correction pass
    double q1 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul(dd(q1), b));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(dd(q2), b));
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return dd_add(q, dd(q3));
}

dd dd_sqrt(dd a) {
    if (a.hi == 0.0 && a.lo == 0.0) {
        return dd(0.0);
    }
    // double start, one Newton step in dd: x' = (x + a/x) / 2
    double x0 = std::sqrt(a.hi);
    dd x(x0);
    dd corr = dd_div(a, x);
    dd sum = dd_add(x, corr);
    return {0.5 * sum.hi, 0.5 * sum.lo};
}

dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

dd dd_abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? dd_neg(a) : a; }

int dd_cmp(dd a, dd b) {
    if (a.hi < b.hi) return -1;
    if (a.hi > b.hi) return 1;
    if (a.lo < b.lo) return -1;
    if (a.lo > b.lo) return 1;
    return 0;
}

cdd cdd_add(cdd a, cdd b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

cdd cdd_sub(cdd a, cdd b) { return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)}; }

cdd cdd_mul(cdd a, cdd b) {
    dd re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
    dd im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return {re, im};
}

cdd cdd_div(cdd a, cdd b) {
    dd den = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
    cdd num = cdd_mul(a, {b.re, dd_neg(b.im)});
    return {dd_div(num.re, den), dd_div(num.im, den)};
}

cdd cdd_scale(cdd a, double s) {
    return {dd_mul(a.re, dd(s)), dd_mul(a.im, dd(s))};
}

dd cdd_abs2(cdd a) {
    return dd_add(dd_mul(a.re, a.re), dd_mul(a.im, a.im));
}

cdd cdd_sqrt(cdd a) {
    bool re_zero = a.re.hi == 0.0 && a.re.lo == 0.0;
    bool im_zero = a.im.hi == 0.0 && a.im.lo == 0.0;
    if (re_zero && im_zero) {
        return {dd(0.0), dd(0.0)};
    }
    // w = sqrt((|z| + |re z|) / 2); the other component is |im| / (2w).
    // The larger component is computed first so cancellation never enters.
    dd mod = dd_sqrt(cdd_abs2(a));
    dd are = dd_abs(a.re);
    dd sum = dd_add(mod, are);
    dd w = dd_sqrt({0.5 * sum.hi, 0.5 * sum.lo});
    dd half_im = {0.5 * a.im.hi, 0.5 * a.im.lo};
    cdd s;
    if (a.re.hi > 0.0 || (a.re.hi == 0.0 && a.re.lo > 0.0)) {
        s = {w, dd_div(half_im, w)};
    } else {
        dd v = dd_div(half_im, w);
        dd vabs = dd_abs(v);
        bool im_neg = a.im.hi < 0.0 || (a.im.hi == 0.0 && a.im.lo < 0.0);
        s = {vabs, im_neg ? dd_neg(w) : w};
    }
    // same canonical branch as the double-precision path: non-negative real
    // part, non-negative imaginary part on ties
    bool flip = s.re.hi < 0.0 || (s.re.hi == 0.0 && s.re.lo < 0.0);
    if (!flip && s.re.hi == 0.0 && s.re.lo == 0.0) {
        flip = s.im.hi < 0.0 || (s.im.hi == 0.0 && s.im.lo < 0.0);
    }
    if (flip) {
        s = {dd_neg(s.re), dd_neg(s.im)};
    }
    return s;
}

namespace {

cdd cdd_neg(cdd a) { return {dd_neg(a.re), dd_neg(a.im)}; }

cdd to_cdd(complex_t z) { return cdd(z); }

// one Cramer solve of (m - lambda I) x = v, skipped when the shifted matrix
// is exactly singular
bool inverse_iteration_step(const std::array<std::array<cdd, 2>, 2>& msh,
                            std::array<cdd, 2>& v) {
    cdd det = cdd_sub(cdd_mul(msh[0][0], msh[1][1]), cdd_mul(msh[0][1], msh[1][0]));
    dd det2 = cdd_abs2(det);
    if (det2.hi == 0.0 && det2.lo == 0.0) {
        return false;
    }
    cdd x0 = cdd_div(cdd_sub(cdd_mul(v[0], msh[1][1]), cdd_mul(msh[0][1], v[1])), det);
    cdd x1 = cdd_div(cdd_sub(cdd_mul(msh[0][0], v[1]), cdd_mul(v[0], msh[1][0])), det);
    v = {x0, x1};
    return true;
}

void normalize_euclidean(std::array<cdd, 2>& v) {
    dd n = dd_sqrt(dd_add(cdd_abs2(v[0]), cdd_abs2(v[1])));
    cdd dn(n, dd(0.0));
    v[0] = cdd_div(v[0], dn);
    v[1] = cdd_div(v[1], dn);
}

} // namespace

oracle_report reference_eigensystem(const matrix2& m) {
    oracle_report rep;

    cdd h11 = to_cdd(m.h11), h12 = to_cdd(m.h12);
    cdd h21 = to_cdd(m.h21), h22 = to_cdd(m.h22);

    // compensated quadratic: lambda^2 - tr lambda + det = 0
    cdd tr = cdd_add(h11, h22);
    cdd det = cdd_sub(cdd_mul(h11, h22), cdd_mul(h12, h21));
    cdd half_tr = cdd_scale(tr, 0.5);
    cdd disc = cdd_sub(cdd_mul(half_tr, half_tr), det);
    cdd s = cdd_sqrt(disc);

    // sum in the non-cancelling order: the root with the larger modulus is
    // half_tr +- s picked by sign agreement, the other comes from Viete
    cdd cand_plus = cdd_add(half_tr, s);
    cdd cand_minus = cdd_sub(half_tr, s);
    dd mod_plus = cdd_abs2(cand_plus);
    dd mod_minus = cdd_abs2(cand_minus);
    cdd big = dd_cmp(mod_plus, mod_minus) >= 0 ? cand_plus : cand_minus;
    dd big2 = cdd_abs2(big);
    cdd other;
    bool big_is_plus = dd_cmp(mod_plus, mod_minus) >= 0;
    if (big2.hi == 0.0 && big2.lo == 0.0) {
        other = big; // both roots vanish
    } else {
        other = cdd_div(det, big);
    }
    rep.eigenvalue[0] = big_is_plus ? big : other;   // "+" branch first
    rep.eigenvalue[1] = big_is_plus ? other : big;

    dd gap2 = cdd_abs2(cdd_sub(rep.eigenvalue[0], rep.eigenvalue[1]));
    double scale = std::max(1.0, m.max_abs());
    rep.degenerate = std::sqrt(gap2.to_double()) < 1e-13 * scale;

    for (int k = 0; k < 2; ++k) {
        cdd lam = rep.eigenvalue[static_cast<size_t>(k)];
        // adjugate columns of (m - lambda I)
        std::array<cdd, 2> c1{cdd_sub(h22, lam), cdd_neg(h21)};
        std::array<cdd, 2> c2{cdd_neg(h12), cdd_sub(h11, lam)};
        dd n1 = dd_add(cdd_abs2(c1[0]), cdd_abs2(c1[1]));
        dd n2 = dd_add(cdd_abs2(c2[0]), cdd_abs2(c2[1]));
        std::array<cdd, 2> v;
        if (n1.hi == 0.0 && n1.lo == 0.0 && n2.hi == 0.0 && n2.lo == 0.0) {
            v = {cdd(complex_t(k == 0 ? 1.0 : 0.0, 0.0)),
                 cdd(complex_t(k == 0 ? 0.0 : 1.0, 0.0))};
        } else {
            v = dd_cmp(n1, n2) >= 0 ? c1 : c2;
            normalize_euclidean(v);
            if (!rep.degenerate) {
                std::array<std::array<cdd, 2>, 2> msh{
                    {{cdd_sub(h11, lam), h12}, {h21, cdd_sub(h22, lam)}}};
                std::array<cdd, 2> w = v;
                if (inverse_iteration_step(msh, w)) {
                    dd wn = dd_add(cdd_abs2(w[0]), cdd_abs2(w[1]));
                    if (wn.hi > 0.0 && std::isfinite(wn.hi)) {
                        v = w;
                        normalize_euclidean(v);
                    }
                }
            }
        }
        rep.vec[static_cast<size_t>(k)] = v;

        // residual (m v - lambda v) in extended precision, inf norm
        cdd r0 = cdd_sub(cdd_add(cdd_mul(h11, v[0]), cdd_mul(h12, v[1])),
                         cdd_mul(lam, v[0]));
        cdd r1 = cdd_sub(cdd_add(cdd_mul(h21, v[0]), cdd_mul(h22, v[1])),
                         cdd_mul(lam, v[1]));
        rep.residual[static_cast<size_t>(k)] =
            std::max(std::sqrt(cdd_abs2(r0).to_double()),
                     std::sqrt(cdd_abs2(r1).to_double()));
    }
    return rep;
}

double residual_check(const matrix2& m, complex_t lambda,
                      const std::array<complex_t, 2>& v) {
    cdd h11 = to_cdd(m.h11), h12 = to_cdd(m.h12);
    cdd h21 = to_cdd(m.h21), h22 = to_cdd(m.h22);
    cdd lam = to_cdd(lambda);
    cdd v0 = to_cdd(v[0]), v1 = to_cdd(v[1]);
    cdd r0 = cdd_sub(cdd_add(cdd_mul(h11, v0), cdd_mul(h12, v1)),
                     cdd_mul(lam, v0));
    cdd r1 = cdd_sub(cdd_add(cdd_mul(h21, v0), cdd_mul(h22, v1)),
                     cdd_mul(lam, v1));
    return std::max(std::sqrt(cdd_abs2(r0).to_double()),
                    std::sqrt(cdd_abs2(r1).to_double()));
}

double eigenvalue_agreement(const oracle_report& ref, const eigen_system& sys) {
    complex_t r0 = ref.eigenvalue[0].to_complex();
    complex_t r1 = ref.eigenvalue[1].to_complex();

    double keep = std::abs(sys.eigenvalue[0] - r0) + std::abs(sys.eigenvalue[1] - r1);
    double swap = std::abs(sys.eigenvalue[0] - r1) + std::abs(sys.eigenvalue[1] - r0);
    // relative to the spectrum scale so near-zero eigenvalues do not make the
    // measure explode on a harmless absolute error
    double scale = std::max({std::abs(r0), std::abs(r1), 1e-300});
    return std::min(keep, swap) / scale;
}

} // namespace oracle
} // namespace epkit
