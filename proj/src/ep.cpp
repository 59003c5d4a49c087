#include "epkit/ep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "epkit/spectral.hpp"

namespace epkit {

namespace {

complex_t discriminant_of(const family_params& p) {
    auto [l1, l2] = eigenvalues_closed_form(p);
    return 0.5 * (l1 - l2);
}

double objective(const param_trajectory& traj, double a) {
    complex_t z = discriminant_of(params_at(traj, a));
    return std::norm(z); // |Z|^2, smooth through the root
}

struct refine_result {
    double a = 0.0;
    double value = 0.0; // |Z|^2 at a
};

// Golden-section search on [lo, hi]. The nominal stopping width is
// 1e-12*range, but the objective is V-shaped at a root (|Z|^2 ~ |a - a*|),
// so the best evaluated point keeps improving well below that width; the
// loop therefore continues until the bracket stops shrinking in doubles and
// the best point seen anywhere is returned.
refine_result golden_refine(const param_trajectory& traj, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(traj, x1);
    double f2 = objective(traj, x2);

    refine_result best;
    best.a = f1 <= f2 ? x1 : x2;
    best.value = std::min(f1, f2);

    for (int it = 0; it < 400; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            if (x1 <= lo || x1 >= x2) {
                break; // bracket exhausted at double resolution
            }
            f1 = objective(traj, x1);
            if (f1 < best.value) {
                best = {x1, f1};
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            if (x2 >= hi || x2 <= x1) {
                break;
            }
            f2 = objective(traj, x2);
            if (f2 < best.value) {
                best = {x2, f2};
            }
        }
    }
    return best;
}

} // namespace

regime_tag classify_regime(const family_params& p, double tol) {
    complex_t z = discriminant_of(p);
    if (std::abs(z) < tol) {
        return regime_tag::at_ep;
    }
    if (std::abs(z.imag()) < tol) {
        return regime_tag::level_repulsion;
    }
    if (std::abs(z.real()) < tol) {
        return regime_tag::width_bifurcation;
    }
    return regime_tag::mixed_complex;
}

std::vector<threshold_relation> analytic_ep_thresholds(const family_params& p) {
    if (std::holds_alternative<pt_params>(p)) {
        const auto& q = std::get<pt_params>(p);
        double mag = std::abs(q.w);
        double c = q.variant == pt_variant::balanced_gain_loss ? 2.0 : 4.0;
        return {{-c * mag}, {c * mag}};
    }
    const auto& q = std::get<open_params>(p);
    // closed form exists when the detuning term and the coupling term are
    // each real after squaring: equal widths plus purely imaginary coupling
    if (q.gamma1 != q.gamma2 || q.omega.real() != 0.0) {
        throw unsupported_family(
            "analytic thresholds need equal widths and purely imaginary "
            "coupling; use the numeric locator instead");
    }
    double mag = std::abs(q.omega);
    return {{-2.0 * mag}, {2.0 * mag}};
}

std::vector<ep_record> locate_eps_1d(const param_trajectory& traj, double a_min,
                                     double a_max, int grid_n, double tol) {
    if (!(a_max > a_min)) {
        throw std::invalid_argument("locate_eps_1d: need a_max > a_min");
    }
    if (grid_n < 16) {
        throw std::invalid_argument(
            "locate_eps_1d: need at least 16 scan points for reliable "
            "bracketing");
    }
    require_finite(a_min, "locate_eps_1d.a_min");
    require_finite(a_max, "locate_eps_1d.a_max");

    double range = a_max - a_min;
    double step = range / (grid_n - 1);
    std::vector<double> f(static_cast<size_t>(grid_n));
    for (int i = 0; i < grid_n; ++i) {
        f[static_cast<size_t>(i)] = objective(traj, a_min + i * step);
    }

    std::vector<refine_result> candidates;
    for (int i = 1; i + 1 < grid_n; ++i) {
        if (f[static_cast<size_t>(i)] <= f[static_cast<size_t>(i - 1)] &&
            f[static_cast<size_t>(i)] <= f[static_cast<size_t>(i + 1)]) {
            candidates.push_back(
                golden_refine(traj, a_min + (i - 1) * step, a_min + (i + 1) * step));
        }
    }
    // endpoints can hide a root when the grid is coarse enough that no
    // interior point becomes a local minimum next to the boundary
    if (f[0] < f[1]) {
        candidates.push_back(golden_refine(traj, a_min, a_min + step));
    }
    if (f[static_cast<size_t>(grid_n - 1)] < f[static_cast<size_t>(grid_n - 2)]) {
        candidates.push_back(golden_refine(traj, a_max - step, a_max));
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const refine_result& x, const refine_result& y) {
                  return x.a < y.a;
              });

    std::vector<ep_record> out;
    double dedupe = 1e-9 * range;
    for (const auto& c : candidates) {
        double z_abs = std::sqrt(c.value);
        if (!(z_abs < tol)) {
            continue;
        }
        if (!out.empty() && std::abs(c.a - out.back().a_star) < dedupe) {
            if (z_abs < out.back().residual) {
                out.pop_back();
            } else {
                continue;
            }
        }
        ep_record rec;
        rec.a_star = c.a;
        auto [l1, l2] = eigenvalues_closed_form(params_at(traj, c.a));
        rec.eigenvalue = 0.5 * (l1 + l2);
        rec.residual = std::abs(discriminant_of(params_at(traj, c.a)));
        rec.method = ep_method::numeric_scan_refine;
        rec.family = traj.kind;
        out.push_back(rec);
    }
    return out;
}

std::vector<ep_record_2d> locate_eps_2d(complex_t omega, const box2d& box,
                                        double tol, int seed_grid,
                                        std::ostream* log) {
    require_finite(omega, "locate_eps_2d.omega");
    if (!(box.p_max > box.p_min) || !(box.q_max > box.q_min)) {
        throw std::invalid_argument("locate_eps_2d: degenerate box");
    }
    if (seed_grid < 2) {
        throw std::invalid_argument("locate_eps_2d: seed_grid must be >= 2");
    }

    complex_t c = 4.0 * (omega * omega);
    auto d_of = [&](double p, double q) {
        complex_t z(p, 0.5 * q);
        return z * z + c;
    };

    std::vector<ep_record_2d> out;
    double dp = (box.p_max - box.p_min) / (seed_grid - 1);
    double dq = (box.q_max - box.q_min) / (seed_grid - 1);

    for (int i = 0; i < seed_grid; ++i) {
        for (int j = 0; j < seed_grid; ++j) {
            double p = box.p_min + i * dp;
            double q = box.q_min + j * dq;
            bool converged = false;

            for (int it = 0; it < 80; ++it) {
                complex_t d = d_of(p, q);
                // |Z| = (1/2) sqrt(|D|) is the eigenvalue half-gap
                if (0.5 * std::sqrt(std::abs(d)) < tol) {
                    converged = true;
                    break;
                }
                // Newton on (Re D, Im D) with the analytic Jacobian of
                // D(p, q) = (p + i q/2)^2 + 4 omega^2:
                //   dD/dp = 2 z,  dD/dq = i z,  z = p + i q/2
                complex_t z(p, 0.5 * q);
                double j11 = 2.0 * z.real();
                double j12 = -z.imag();
                double j21 = 2.0 * z.imag();
                double j22 = z.real();
                double det = j11 * j22 - j12 * j21;
                if (det == 0.0 || !std::isfinite(det)) {
                    break; // singular at z = 0; this seed cannot proceed
                }
                double rhs1 = -d.real();
                double rhs2 = -d.imag();
                double sp = (rhs1 * j22 - j12 * rhs2) / det;
                double sq = (j11 * rhs2 - rhs1 * j21) / det;
                // damp long steps so seeds near the singular center do not
                // overshoot the box
                double lim = 0.5 * std::max(box.p_max - box.p_min,
                                            box.q_max - box.q_min);
                double len = std::hypot(sp, sq);
                if (len > lim) {
                    sp *= lim / len;
                    sq *= lim / len;
                }
                p += sp;
                q += sq;
                if (!std::isfinite(p) || !std::isfinite(q)) {
                    break;
                }
            }

            if (!converged) {
                if (log) {
                    *log << "seed (" << box.p_min + i * dp << ", "
                         << box.q_min + j * dq << ") dropped: no convergence\n";
                }
                continue;
            }
            if (p < box.p_min || p > box.p_max || q < box.q_min ||
                q > box.q_max) {
                if (log) {
                    *log << "root (" << p << ", " << q
                         << ") dropped: outside the search box\n";
                }
                continue;
            }

            bool duplicate = false;
            for (const auto& r : out) {
                if (std::hypot(r.p - p, r.q - q) < 1e-8) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) {
                continue;
            }

            ep_record_2d rec;
            rec.p = p;
            rec.q = q;
            rec.residual = 0.5 * std::sqrt(std::abs(d_of(p, q)));
            rec.family = family_kind::open;
            out.push_back(rec);
        }
    }

    std::sort(out.begin(), out.end(),
              [](const ep_record_2d& x, const ep_record_2d& y) {
                  return x.p != y.p ? x.p < y.p : x.q < y.q;
              });
    return out;
}

} // namespace epkit
