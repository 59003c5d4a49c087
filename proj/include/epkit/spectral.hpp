#ifndef EPKIT_SPECTRAL_HPP
#define EPKIT_SPECTRAL_HPP

#include <array>
#include <utility>

#include "epkit/model.hpp"
#include "epkit/types.hpp"

namespace epkit {

// Eigen-decomposition of a 2x2 non-Hermitian matrix with the bilinear
// (unconjugated) normalization convention:
//
//   right vectors satisfy R_k . R_k = 1 when that product is nonzero,
//   left vectors are scaled so that L_k . R_k = 1,
//   A_k = <R_k|R_k> (conjugated norm of the bilinear-normalized vector),
//   r_k = 1/A_k in [0, 1],
//   B_i^j = <R_i|R_j> for i != j.
//
// Index 0 carries the "+Z" branch of the eigenvalue pair, index 1 the "-Z"
// branch; sweep-level code re-pairs for continuity along trajectories.
//
// Coalescent (defective) inputs never throw: the flag is set, a single
// eigendirection is reported in both slots (unit Euclidean norm, since the
// bilinear product vanishes there), and norms/overlaps carry +inf sentinels
// with r_k = 0. The same sentinel treatment applies per-state when an
// eigenvector is exactly self-orthogonal under the bilinear product (possible
// away from degeneracy for non-symmetric inputs).
struct eigen_system {
    std::array<complex_t, 2> eigenvalue;     // E_k = Re, Gamma_k/2 = Im
    std::array<std::array<complex_t, 2>, 2> right;
    std::array<std::array<complex_t, 2>, 2> left;
    std::array<double, 2> norm_a;            // A_k >= 1, +inf sentinel
    std::array<double, 2> rigidity;          // r_k = 1/A_k, 0 sentinel
    complex_t overlap_b12;                   // B_1^2, (+inf,0) sentinel
    complex_t overlap_b21;                   // B_2^1
    bool defective = false;
    std::array<bool, 2> self_orthogonal{false, false};
    double condition = 0.0;                  // |E_1 - E_2|
    bool symmetric_input = false;
};

// Components of the normalized eigenvectors on the standard basis (the
// eigenbasis of the model's diagonal part), with magnitudes and phases.
// Phases are quadrant-correct in (-pi, pi]. For defective (or per-state
// self-orthogonal) systems the magnitudes are +inf sentinels while the phase
// is taken from the reported limiting eigendirection.
struct mixing_coefficients {
    std::array<std::array<complex_t, 2>, 2> b; // b[i][j]: state i on basis j
    std::array<std::array<double, 2>, 2> magnitude;
    std::array<std::array<double, 2>, 2> theta;
};

// Z = (1/2) sqrt((eps1 - eps2)^2 + 4 omega^2) with eps_k = e_k + (i/2) gamma_k.
// Branch: non-negative real part; non-negative imaginary part on ties.
complex_t discriminant_z(const open_params& p);

// Eigenvalue pair without forming the matrix.
//   open:        (eps1+eps2)/2 +- Z
//   pt balanced: e +- (1/2) sqrt(4|w|^2 - gamma^2)
//   pt lossy:    e - i*gamma/4 +- (1/2) sqrt(4|w|^2 - gamma^2/4)
// First element is the "+" branch.
std::pair<complex_t, complex_t> eigenvalues_closed_form(const open_params& p);
std::pair<complex_t, complex_t> eigenvalues_closed_form(const pt_params& p);
std::pair<complex_t, complex_t> eigenvalues_closed_form(const family_params& p);

eigen_system eigensystem(const matrix2& m);

// r_k for state k; 0 for defective systems (limit value).
double phase_rigidity(const eigen_system& sys, int k);

mixing_coefficients mixing_of(const eigen_system& sys);

// |R_n . W R_n| * A_n per state, where W has `coupling` on both
// off-diagonals and zero diagonal. +inf sentinel for defective systems.
std::array<double, 2> nonlinear_source_strength(const eigen_system& sys,
                                                complex_t coupling);

// Normalized bilinear cross product rho = (R_1 . R_2) /
// sqrt((R_1 . R_1)(R_2 . R_2)); identically zero for symmetric inputs away
// from coalescence, (+inf,+inf) sentinel at defectivity where the limit is the
// chiral direction (the coalesced vector maps to +-i times itself under the
// degenerate rotation, so the component ratio of either eigenvector tends to
// +-i on approach).
complex_t coalescence_ratio(const eigen_system& sys);

// thresholds used by the defectivity test
inline constexpr double defect_gap_tol = 1e-9;    // on |E1-E2| / scale
inline constexpr double defect_angle_tol = 1e-6;  // on the eigenvector angle

} // namespace epkit

#endif
