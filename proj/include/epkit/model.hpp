#ifndef EPKIT_MODEL_HPP
#define EPKIT_MODEL_HPP

#include <variant>

#include "epkit/types.hpp"

namespace epkit {

// Open two-level system: diagonal entries e_k + (i/2) gamma_k, symmetric
// coupling omega on both off-diagonals. No sign constraint is imposed on the
// widths; the diagonal carries the caller's sign literally.
struct open_params {
    double e1 = 0.0;
    double e2 = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    complex_t omega{0.0, 0.0};
};

enum class pt_variant {
    balanced_gain_loss, // diag(e - i*gamma/2, e + i*gamma/2)
    lossy_only          // diag(e - i*gamma/2, e)
};

// Gain/loss two-level system with off-diagonals (w, conj(w)).
struct pt_params {
    double e = 0.0;
    double gamma = 0.0;
    complex_t w{0.0, 0.0};
    pt_variant variant = pt_variant::balanced_gain_loss;
};

using family_params = std::variant<open_params, pt_params>;

enum class family_kind { open, pt_balanced, pt_lossy };

enum class coupling_model {
    constant,
    // base coupling scaled by exp(-(e1(a) - e2(a))^2)
    gaussian_falloff
};

struct linear_law {
    double intercept = 0.0;
    double slope = 0.0;
    double operator()(double a) const { return intercept + slope * a; }
};

// One-parameter family a -> Hamiltonian. For the open kind all four laws are
// used; for the PT kinds e1_law is the (single) energy law and gamma1_law the
// gain/loss law, the other two are ignored.
struct param_trajectory {
    family_kind kind = family_kind::open;
    linear_law e1_law;
    linear_law e2_law;
    linear_law gamma1_law;
    linear_law gamma2_law;
    coupling_model coupling = coupling_model::constant;
    complex_t base_coupling{0.0, 0.0};
    // preferred sweep window; callers may override
    double default_a_min = 0.0;
    double default_a_max = 1.0;
};

// Evaluates the trajectory laws at a. Total on finite a; throws
// std::invalid_argument on non-finite input.
family_params params_at(const param_trajectory& traj, double a);

matrix2 build_matrix(const open_params& p);
matrix2 build_matrix(const pt_params& p);
matrix2 build_matrix(const family_params& p);

} // namespace epkit

#endif
