#ifndef EPKIT_EP_HPP
#define EPKIT_EP_HPP

#include <iosfwd>
#include <vector>

#include "epkit/model.hpp"
#include "epkit/types.hpp"

namespace epkit {

enum class ep_method { analytic, numeric_scan_refine };

// A located coalescence point along a one-parameter trajectory.
struct ep_record {
    double a_star = 0.0;
    complex_t eigenvalue{0.0, 0.0}; // coalesced value
    double residual = 0.0;          // |Z| at a_star
    ep_method method = ep_method::numeric_scan_refine;
    family_kind family = family_kind::open;
};

// A located coalescence point in a two-parameter difference plane
// (p = e1 - e2, q = gamma1 - gamma2, with the diagonal mean removed; the
// coalesced eigenvalue is therefore the mean itself and is reported as 0).
struct ep_record_2d {
    double p = 0.0;
    double q = 0.0;
    double residual = 0.0; // |Z| at (p, q)
    family_kind family = family_kind::open;
};

enum class regime_tag {
    level_repulsion,   // Z real: energies repel, widths locked
    width_bifurcation, // Z imaginary: energies locked, widths split
    mixed_complex,
    at_ep
};

// Tags from the computed discriminant with a tolerance band, checked in the
// order: |Z| < tol, |Im Z| < tol, |Re Z| < tol, otherwise mixed.
regime_tag classify_regime(const family_params& p, double tol = 1e-8);

struct threshold_relation {
    // value of the free quantity at which the discriminant vanishes
    double value = 0.0;
};

struct unsupported_family : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact coalescence thresholds for the three special forms:
//   open with purely imaginary omega and equal widths: e1 - e2 = +-2|omega|
//   pt balanced: gamma = +-2|w|
//   pt lossy:    gamma = +-4|w|
// Throws unsupported_family otherwise (general complex coupling).
std::vector<threshold_relation> analytic_ep_thresholds(const family_params& p);

// Scans |Z(a)|^2 on a uniform grid, brackets interior minima, refines each
// bracket by golden-section search (to at least width 1e-12*(a_max-a_min);
// refinement continues to ulp scale and keeps the best evaluated point, since
// the objective is V-shaped at a root and the minimum value keeps improving
// below the nominal width). A minimum is accepted iff |Z| < tol there.
// Results are deduplicated and sorted ascending in a_star.
std::vector<ep_record> locate_eps_1d(const param_trajectory& traj, double a_min,
                                     double a_max, int grid_n,
                                     double tol = 1e-8);

// Solves Re D = Im D = 0 for D = (p + i q/2)^2 + 4 omega^2 over a rectangular
// box by coarse-grid seeding plus damped Newton; deduplicates roots closer
// than 1e-8. Non-converged seeds are dropped (a note goes to the provided
// stream when non-null). Supported for the open family's difference plane.
struct box2d {
    double p_min = -1.0, p_max = 1.0;
    double q_min = -1.0, q_max = 1.0;
};

std::vector<ep_record_2d> locate_eps_2d(complex_t omega, const box2d& box,
                                        double tol = 1e-8, int seed_grid = 33,
                                        std::ostream* log = nullptr);

} // namespace epkit

#endif
