#include "epkit/model.hpp"

#include <cmath>

namespace epkit {

family_params params_at(const param_trajectory& traj, double a) {
    require_finite(a, "params_at: a");
    if (traj.kind == family_kind::open) {
        open_params p;
        p.e1 = traj.e1_law(a);
        p.e2 = traj.e2_law(a);
        p.gamma1 = traj.gamma1_law(a);
        p.gamma2 = traj.gamma2_law(a);
        p.omega = traj.base_coupling;
        if (traj.coupling == coupling_model::gaussian_falloff) {
            double d = p.e1 - p.e2;
            p.omega *= std::exp(-(d * d));
        }
        return p;
    }
    pt_params p;
    p.e = traj.e1_law(a);
    p.gamma = traj.gamma1_law(a);
    // the PT forms carry a single energy law, so the falloff factor is
    // exp(0) = 1 and the base coupling applies unchanged
    p.w = traj.base_coupling;
    p.variant = traj.kind == family_kind::pt_balanced
                    ? pt_variant::balanced_gain_loss
                    : pt_variant::lossy_only;
    return p;
}

matrix2 build_matrix(const open_params& p) {
    const complex_t half_i(0.0, 0.5);
    complex_t d1 = complex_t(p.e1, 0.0) + half_i * p.gamma1;
    complex_t d2 = complex_t(p.e2, 0.0) + half_i * p.gamma2;
    return matrix2(d1, p.omega, p.omega, d2);
}

matrix2 build_matrix(const pt_params& p) {
    const complex_t half_i(0.0, 0.5);
    complex_t d1 = complex_t(p.e, 0.0) - half_i * p.gamma;
    complex_t d2 = p.variant == pt_variant::balanced_gain_loss
                       ? complex_t(p.e, 0.0) + half_i * p.gamma
                       : complex_t(p.e, 0.0);
    return matrix2(d1, p.w, std::conj(p.w), d2);
}

matrix2 build_matrix(const family_params& p) {
    if (std::holds_alternative<open_params>(p)) {
        return build_matrix(std::get<open_params>(p));
    }
    return build_matrix(std::get<pt_params>(p));
}

} // namespace epkit
