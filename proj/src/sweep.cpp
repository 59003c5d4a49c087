#include "epkit/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace epkit {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

complex_t conj_dot(const std::array<complex_t, 2>& x,
                   const std::array<complex_t, 2>& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
}

// shortest decimal that round-trips; -0 normalized to 0, infinities spelled
// out so no NaN/locale surprises reach the files
std::string format_double(double x) {
    if (std::isinf(x)) {
        return x > 0.0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

nlohmann::ordered_json json_number(double x) {
    if (std::isinf(x)) {
        return x > 0.0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        x = 0.0;
    }
    return x;
}

std::string family_name(family_kind k) {
    switch (k) {
    case family_kind::open:
        return "open";
    case family_kind::pt_balanced:
        return "pt-balanced";
    case family_kind::pt_lossy:
        return "pt-lossy";
    }
    return "open";
}

std::string law_text(const linear_law& law) {
    std::string s = format_double(law.intercept);
    if (law.slope != 0.0) {
        s += law.slope > 0.0 ? " + " : " - ";
        s += format_double(std::abs(law.slope)) + "*a";
    }
    return s;
}

std::string complex_text(complex_t z) {
    std::string s = format_double(z.real());
    s += z.imag() >= 0.0 ? " + " : " - ";
    s += format_double(std::abs(z.imag())) + "i";
    return s;
}

std::string describe(const param_trajectory& traj) {
    std::string s = family_name(traj.kind);
    if (traj.kind == family_kind::open) {
        s += " e1(a)=" + law_text(traj.e1_law);
        s += " e2(a)=" + law_text(traj.e2_law);
        s += " gamma1(a)=" + law_text(traj.gamma1_law);
        s += " gamma2(a)=" + law_text(traj.gamma2_law);
        s += " omega=" + complex_text(traj.base_coupling);
    } else {
        s += " e(a)=" + law_text(traj.e1_law);
        s += " gamma(a)=" + law_text(traj.gamma1_law);
        s += " w=" + complex_text(traj.base_coupling);
    }
    if (traj.coupling == coupling_model::gaussian_falloff) {
        s += " coupling*=exp(-(e1-e2)^2)";
    }
    return s;
}

} // namespace

std::string to_string(regime_tag tag) {
    switch (tag) {
    case regime_tag::level_repulsion:
        return "LR";
    case regime_tag::width_bifurcation:
        return "WB";
    case regime_tag::mixed_complex:
        return "MX";
    case regime_tag::at_ep:
        return "EP";
    }
    return "MX";
}

branch_pairing pair_branches(const std::array<complex_t, 2>& prev_eigenvalues,
                             const std::array<std::array<complex_t, 2>, 2>& prev_right,
                             const eigen_system& current) {
    branch_pairing out;
    double keep = std::abs(current.eigenvalue[0] - prev_eigenvalues[0]) +
                  std::abs(current.eigenvalue[1] - prev_eigenvalues[1]);
    double swap = std::abs(current.eigenvalue[1] - prev_eigenvalues[0]) +
                  std::abs(current.eigenvalue[0] - prev_eigenvalues[1]);
    out.swapped = swap < keep;
    for (int k = 0; k < 2; ++k) {
        size_t src = static_cast<size_t>(out.swapped ? 1 - k : k);
        complex_t ov = conj_dot(prev_right[static_cast<size_t>(k)],
                                current.right[src]);
        out.flip_sign[k] = ov.real() < 0.0;
    }
    return out;
}

sweep_table run_sweep(const param_trajectory& traj, double a_min, double a_max,
                      int grid_n, double ep_tol) {
    if (!(a_max > a_min)) {
        throw std::invalid_argument("run_sweep: need a_max > a_min");
    }
    if (grid_n < 2) {
        throw std::invalid_argument("run_sweep: need at least 2 grid points");
    }
    require_finite(a_min, "run_sweep.a_min");
    require_finite(a_max, "run_sweep.a_max");

    sweep_table table;
    table.descriptor = describe(traj);
    table.grid = {a_min, a_max, grid_n};
    // the row grid may be arbitrarily coarse; keep the coalescence scan dense
    // enough that bracketing stays reliable
    table.eps = locate_eps_1d(traj, a_min, a_max, std::max(grid_n, 201), ep_tol);
    table.near_window =
        table.eps.size() >= 2
            ? 0.05 * (table.eps.back().a_star - table.eps.front().a_star)
            : 0.05 * (a_max - a_min);
    table.rows.reserve(static_cast<size_t>(grid_n));

    std::array<complex_t, 2> prev_e{};
    std::array<std::array<complex_t, 2>, 2> prev_r{};
    bool have_prev = false;

    for (int i = 0; i < grid_n; ++i) {
        double a = table.grid.at(i);
        family_params params = params_at(traj, a);
        eigen_system sys = eigensystem(build_matrix(params));

        branch_pairing pairing;
        if (have_prev) {
            pairing = pair_branches(prev_e, prev_r, sys);
        }
        size_t idx[2] = {static_cast<size_t>(pairing.swapped ? 1 : 0),
                         static_cast<size_t>(pairing.swapped ? 0 : 1)};

        sweep_row row;
        row.a = a;
        row.defective = sys.defective;
        row.regime = classify_regime(params, ep_tol);
        for (const auto& ep : table.eps) {
            if (std::abs(a - ep.a_star) < table.near_window) {
                row.near_ep = true;
                break;
            }
        }

        std::array<complex_t, 2> ev{sys.eigenvalue[idx[0]], sys.eigenvalue[idx[1]]};
        row.e1 = ev[0].real();
        row.g1_half = ev[0].imag();
        row.e2 = ev[1].real();
        row.g2_half = ev[1].imag();

        std::array<std::array<complex_t, 2>, 2> vec{sys.right[idx[0]],
                                                    sys.right[idx[1]]};
        for (int k = 0; k < 2; ++k) {
            if (pairing.flip_sign[k]) {
                vec[static_cast<size_t>(k)][0] = -vec[static_cast<size_t>(k)][0];
                vec[static_cast<size_t>(k)][1] = -vec[static_cast<size_t>(k)][1];
            }
            bool sentinel =
                sys.defective || sys.self_orthogonal[idx[k]];
            for (int j = 0; j < 2; ++j) {
                complex_t b = vec[static_cast<size_t>(k)][static_cast<size_t>(j)];
                row.b_mag[k][j] = sentinel ? inf : std::abs(b);
                double th = std::atan2(b.imag(), b.real());
                if (th == -std::numbers::pi) {
                    th = std::numbers::pi;
                }
                row.theta[k][j] = th;
            }
        }

        row.r1 = sys.rigidity[idx[0]];
        row.r2 = sys.rigidity[idx[1]];
        row.a1 = sys.norm_a[idx[0]];
        row.a2 = sys.norm_a[idx[1]];
        table.rows.push_back(row);

        if (!sys.defective) {
            prev_e = ev;
            prev_r = vec;
            have_prev = true;
        }
    }
    return table;
}

std::pair<param_trajectory, param_trajectory> fig1_presets() {
    param_trajectory left;
    left.kind = family_kind::pt_balanced;
    left.e1_law = {0.5, 0.0};
    left.gamma1_law = {0.0, 0.05};
    left.base_coupling = complex_t(0.05, 0.0);
    left.default_a_min = 0.0;
    left.default_a_max = 4.0;

    param_trajectory right;
    right.kind = family_kind::open;
    right.e1_law = {1.0, -0.5};
    right.e2_law = {0.0, 1.0};
    right.gamma1_law = {1.0, 0.0};
    right.gamma2_law = {1.0, 0.0};
    right.base_coupling = complex_t(0.0, 0.05);
    right.default_a_min = 0.0;
    right.default_a_max = 1.2;

    return {left, right};
}

namespace {

nlohmann::ordered_json ep_to_json(const ep_record& ep) {
    nlohmann::ordered_json j;
    j["a_star"] = json_number(ep.a_star);
    j["E"] = json_number(ep.eigenvalue.real());
    j["G_half"] = json_number(ep.eigenvalue.imag());
    j["residual"] = json_number(ep.residual);
    j["method"] = ep.method == ep_method::analytic ? "analytic"
                                                   : "numeric-scan-refine";
    j["family"] = family_name(ep.family);
    return j;
}

nlohmann::ordered_json row_to_json(const sweep_row& r) {
    nlohmann::ordered_json j;
    j["a"] = json_number(r.a);
    j["E1"] = json_number(r.e1);
    j["G1_half"] = json_number(r.g1_half);
    j["E2"] = json_number(r.e2);
    j["G2_half"] = json_number(r.g2_half);
    j["b11"] = json_number(r.b_mag[0][0]);
    j["b12"] = json_number(r.b_mag[0][1]);
    j["b21"] = json_number(r.b_mag[1][0]);
    j["b22"] = json_number(r.b_mag[1][1]);
    j["th11"] = json_number(r.theta[0][0]);
    j["th12"] = json_number(r.theta[0][1]);
    j["th21"] = json_number(r.theta[1][0]);
    j["th22"] = json_number(r.theta[1][1]);
    j["r1"] = json_number(r.r1);
    j["r2"] = json_number(r.r2);
    j["A1"] = json_number(r.a1);
    j["A2"] = json_number(r.a2);
    j["regime"] = to_string(r.regime);
    j["near_ep"] = r.near_ep ? 1 : 0;
    return j;
}

} // namespace

void export_table(const sweep_table& table, export_format format,
                  std::ostream& out) {
    if (format == export_format::csv) {
        out << "a,E1,G1_half,E2,G2_half,b11,b12,b21,b22,"
               "th11,th12,th21,th22,r1,r2,A1,A2,regime,near_ep\n";
        for (const auto& r : table.rows) {
            out << format_double(r.a) << ',' << format_double(r.e1) << ','
                << format_double(r.g1_half) << ',' << format_double(r.e2) << ','
                << format_double(r.g2_half) << ','
                << format_double(r.b_mag[0][0]) << ','
                << format_double(r.b_mag[0][1]) << ','
                << format_double(r.b_mag[1][0]) << ','
                << format_double(r.b_mag[1][1]) << ','
                << format_double(r.theta[0][0]) << ','
                << format_double(r.theta[0][1]) << ','
                << format_double(r.theta[1][0]) << ','
                << format_double(r.theta[1][1]) << ','
                << format_double(r.r1) << ',' << format_double(r.r2) << ','
                << format_double(r.a1) << ',' << format_double(r.a2) << ','
                << to_string(r.regime) << ',' << (r.near_ep ? 1 : 0) << '\n';
        }
        return;
    }

    nlohmann::ordered_json j;
    j["descriptor"] = table.descriptor;
    j["grid"] = {{"a_min", json_number(table.grid.a_min)},
                 {"a_max", json_number(table.grid.a_max)},
                 {"n", table.grid.n}};
    j["near_window"] = json_number(table.near_window);
    j["eps"] = nlohmann::ordered_json::array();
    for (const auto& ep : table.eps) {
        j["eps"].push_back(ep_to_json(ep));
    }
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        j["rows"].push_back(row_to_json(r));
    }
    out << j.dump(1) << '\n';
}

std::string export_table(const sweep_table& table, export_format format) {
    std::ostringstream oss;
    export_table(table, format, oss);
    return oss.str();
}

std::string table_metadata(const sweep_table& table) {
    nlohmann::ordered_json j;
    j["descriptor"] = table.descriptor;
    j["grid"] = {{"a_min", json_number(table.grid.a_min)},
                 {"a_max", json_number(table.grid.a_max)},
                 {"n", table.grid.n}};
    j["near_window"] = json_number(table.near_window);
    j["row_count"] = table.rows.size();
    j["columns"] = {"a",    "E1",   "G1_half", "E2",   "G2_half", "b11",
                    "b12",  "b21",  "b22",     "th11", "th12",    "th21",
                    "th22", "r1",   "r2",      "A1",   "A2",      "regime",
                    "near_ep"};
    j["regime_codes"] = {{"LR", "levels repel, widths locked"},
                         {"WB", "levels locked, widths bifurcate"},
                         {"MX", "fully complex splitting"},
                         {"EP", "within tolerance of a coalescence point"}};
    j["value_notes"] =
        "shortest round-trip decimals; coalescent rows carry inf sentinels "
        "for the bilinear norms and mixing magnitudes";
    j["eps"] = nlohmann::ordered_json::array();
    for (const auto& ep : table.eps) {
        j["eps"].push_back(ep_to_json(ep));
    }
    return j.dump(2) + "\n";
}

} // namespace epkit
