#ifndef EPKIT_SWEEP_HPP
#define EPKIT_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "epkit/ep.hpp"
#include "epkit/model.hpp"
#include "epkit/spectral.hpp"

namespace epkit {

// One grid point of a trajectory sweep after branch stitching. Magnitudes can
// be the documented +inf sentinel on coalescence-coincident rows; no NaN is
// ever emitted.
struct sweep_row {
    double a = 0.0;
    double e1 = 0.0, g1_half = 0.0; // Re/Im of stitched eigenvalue 1
    double e2 = 0.0, g2_half = 0.0;
    double b_mag[2][2] = {{0, 0}, {0, 0}};   // |b_ij|
    double theta[2][2] = {{0, 0}, {0, 0}};   // arg b_ij in (-pi, pi]
    double r1 = 0.0, r2 = 0.0;
    double a1 = 0.0, a2 = 0.0; // conjugate norms A_k
    regime_tag regime = regime_tag::mixed_complex;
    bool near_ep = false;
    bool defective = false;
};

struct grid_spec {
    double a_min = 0.0;
    double a_max = 1.0;
    int n = 2;
    double at(int i) const {
        return a_min + static_cast<double>(i) * ((a_max - a_min) / (n - 1));
    }
};

struct sweep_table {
    std::string descriptor;
    grid_spec grid;
    std::vector<sweep_row> rows;
    std::vector<ep_record> eps;
    // half-window in a for the near_ep flag, resolved from the located points
    double near_window = 0.0;
};

// permutation (identity or swap) plus per-state sign flips chosen to continue
// the previous row's branches and gauge
struct branch_pairing {
    bool swapped = false;
    bool flip_sign[2] = {false, false};
};

// Chooses the pairing minimizing |E_1' - E_1| + |E_2' - E_2| (ties keep the
// previous order) and the sign that keeps Re <R_prev|R_cur> >= 0 per state.
branch_pairing pair_branches(const std::array<complex_t, 2>& prev_eigenvalues,
                             const std::array<std::array<complex_t, 2>, 2>& prev_right,
                             const eigen_system& current);

// Evaluates the trajectory over a uniform grid, maintains eigenvalue-branch
// and gauge continuity, tags regimes, flags the neighborhood of each located
// coalescence point (half-window 0.05 * distance between the outermost
// located points; if fewer than two are found, 0.05 * (a_max - a_min)).
sweep_table run_sweep(const param_trajectory& traj, double a_min, double a_max,
                      int grid_n, double ep_tol = 1e-8);

// The two shipped presets:
//   left:  balanced gain/loss, e = 0.5, gamma(a) = 0.05 a, w = 0.05, a in [0,4]
//   right: open, e1 = 1 - 0.5a, e2 = a, gamma1/2 = gamma2/2 = 0.5,
//          omega = 0.05i, a in [0, 1.2]
std::pair<param_trajectory, param_trajectory> fig1_presets();

enum class export_format { csv, json };

// CSV columns:
//   a,E1,G1_half,E2,G2_half,b11,b12,b21,b22,th11,th12,th21,th22,
//   r1,r2,A1,A2,regime,near_ep
// Floats are shortest round-trip decimals (<= 17 significant digits), LF line
// endings, UTF-8, +inf rendered as the literal `inf`, regime one of
// LR|WB|MX|EP, near_ep 0|1. Byte-identical across runs for identical input.
// JSON mirrors the same field names; non-finite magnitudes are encoded as the
// string "inf" since JSON numbers cannot carry infinities.
void export_table(const sweep_table& table, export_format format,
                  std::ostream& out);
std::string export_table(const sweep_table& table, export_format format);

// Deterministic sidecar description (no timestamps): grid, trajectory,
// located points and diagnostic notes, as JSON.
std::string table_metadata(const sweep_table& table);

std::string to_string(regime_tag tag);

} // namespace epkit

#endif
