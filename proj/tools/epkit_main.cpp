#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "epkit/config.hpp"
#include "epkit/ep.hpp"
#include "epkit/model.hpp"
#include "epkit/scattering.hpp"
#include "epkit/spectral.hpp"
#include "epkit/sweep.hpp"

namespace {

using namespace epkit;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct cli_options {
    std::string config_path;
    std::string out;
    std::string format = "csv";
    int grid = 0; // 0: resolved per subcommand
    double range_a = 0.0, range_b = 0.0;
    bool range_set = false;
    double tol = 1e-8;
    bool tol_set = false;
    bool plane = false;
};

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

// trajectory-law keys shared by sweep/ep-find/regimes configs
const std::set<std::string> trajectory_keys = {
    "family",           "e1.intercept",     "e1.slope",
    "e2.intercept",     "e2.slope",         "gamma1.intercept",
    "gamma1.slope",     "gamma2.intercept", "gamma2.slope",
    "e.intercept",      "e.slope",          "gamma.intercept",
    "gamma.slope",      "coupling",         "coupling.model",
    "range.min",        "range.max"};

const std::set<std::string> output_keys = {"grid", "tol", "out", "format"};

std::set<std::string> merge_keys(std::initializer_list<std::set<std::string>> sets) {
    std::set<std::string> all;
    for (const auto& s : sets) {
        all.insert(s.begin(), s.end());
    }
    return all;
}

key_value_config load_config(const cli_options& opt,
                             const std::set<std::string>& allowed) {
    if (opt.config_path.empty()) {
        return key_value_config::parse("");
    }
    key_value_config cfg = key_value_config::parse_file(opt.config_path);
    cfg.restrict_keys(allowed);
    return cfg;
}

param_trajectory resolve_trajectory(const key_value_config& cfg) {
    // configs without any trajectory key fall back to the shipped open-system
    // preset (crossing energy laws, equal widths, imaginary coupling)
    bool any = false;
    for (const auto& [key, entry] : cfg.entries()) {
        if (trajectory_keys.count(key) != 0) {
            any = true;
            break;
        }
    }
    if (!any) {
        return fig1_presets().second;
    }
    return trajectory_from_config(cfg);
}

void resolve_common(const key_value_config& cfg, const param_trajectory& traj,
                    cli_options& opt, int default_grid) {
    if (!opt.range_set) {
        opt.range_a = cfg.get_real_or("range.min", traj.default_a_min);
        opt.range_b = cfg.get_real_or("range.max", traj.default_a_max);
    }
    if (opt.grid == 0) {
        opt.grid = static_cast<int>(cfg.get_int_or("grid", default_grid));
    }
    if (!opt.tol_set) {
        opt.tol = cfg.get_real_or("tol", 1e-8);
    }
    if (opt.out.empty()) {
        opt.out = cfg.get_string_or("out", "");
    }
    if (opt.format == "csv" && cfg.has("format")) {
        opt.format = cfg.get_string("format");
    }
    if (opt.format != "csv" && opt.format != "json") {
        throw config_error("format must be csv or json, got '" + opt.format + "'");
    }
    if (opt.grid < 2) {
        throw config_error("grid must be an integer >= 2, got " +
                           std::to_string(opt.grid));
    }
    if (!(opt.range_b > opt.range_a)) {
        throw config_error("range must satisfy max > min");
    }
    if (!(opt.tol > 0.0)) {
        throw config_error("tol must be > 0");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

void emit(const std::string& out_path, const std::string& text,
          const std::string& sidecar_text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    write_text(out_path, text);
    if (!sidecar_text.empty()) {
        write_text(out_path + ".meta.json", sidecar_text);
    }
}

int run_fig1(cli_options opt) {
    key_value_config cfg = load_config(opt, merge_keys({output_keys}));
    auto [left, right] = fig1_presets();

    if (opt.grid == 0) {
        opt.grid = static_cast<int>(cfg.get_int_or("grid", 1201));
    }
    if (!opt.tol_set) {
        opt.tol = cfg.get_real_or("tol", 1e-8);
    }
    if (opt.out.empty()) {
        opt.out = cfg.get_string_or("out", ".");
    }
    if (opt.format == "csv" && cfg.has("format")) {
        opt.format = cfg.get_string("format");
    }
    if (opt.format != "csv" && opt.format != "json") {
        throw config_error("format must be csv or json, got '" + opt.format + "'");
    }
    if (opt.grid < 2) {
        throw config_error("grid must be an integer >= 2, got " +
                           std::to_string(opt.grid));
    }

    std::filesystem::create_directories(opt.out);
    export_format fmt =
        opt.format == "json" ? export_format::json : export_format::csv;
    std::string ext = opt.format == "json" ? ".json" : ".csv";

    sweep_table lt = run_sweep(left, left.default_a_min, left.default_a_max,
                               opt.grid, opt.tol);
    sweep_table rt = run_sweep(right, right.default_a_min, right.default_a_max,
                               opt.grid, opt.tol);

    auto left_path = std::filesystem::path(opt.out) / ("fig1_left" + ext);
    auto right_path = std::filesystem::path(opt.out) / ("fig1_right" + ext);
    write_text(left_path.string(), export_table(lt, fmt));
    write_text(left_path.string() + ".meta.json", table_metadata(lt));
    write_text(right_path.string(), export_table(rt, fmt));
    write_text(right_path.string() + ".meta.json", table_metadata(rt));

    std::cout << "wrote " << left_path.string() << " (" << lt.rows.size()
              << " rows, " << lt.eps.size() << " coalescence points)\n";
    std::cout << "wrote " << right_path.string() << " (" << rt.rows.size()
              << " rows, " << rt.eps.size() << " coalescence points)\n";
    return exit_ok;
}

int run_sweep_cmd(cli_options opt) {
    key_value_config cfg =
        load_config(opt, merge_keys({trajectory_keys, output_keys}));
    param_trajectory traj = resolve_trajectory(cfg);
    resolve_common(cfg, traj, opt, 1201);

    sweep_table table =
        run_sweep(traj, opt.range_a, opt.range_b, opt.grid, opt.tol);
    export_format fmt =
        opt.format == "json" ? export_format::json : export_format::csv;
    emit(opt.out, export_table(table, fmt), table_metadata(table));
    return exit_ok;
}

int run_ep_find(cli_options opt) {
    std::set<std::string> plane_keys = {"plane.p_min", "plane.p_max",
                                        "plane.q_min", "plane.q_max",
                                        "plane.seed_grid"};
    key_value_config cfg = load_config(
        opt, merge_keys({trajectory_keys, output_keys, plane_keys}));
    param_trajectory traj = resolve_trajectory(cfg);
    resolve_common(cfg, traj, opt, 1201);

    if (opt.plane) {
        if (traj.kind != family_kind::open) {
            throw config_error(
                "the difference-plane search applies to the open family only");
        }
        box2d box;
        box.p_min = cfg.get_real_or("plane.p_min", -1.0);
        box.p_max = cfg.get_real_or("plane.p_max", 1.0);
        box.q_min = cfg.get_real_or("plane.q_min", -1.0);
        box.q_max = cfg.get_real_or("plane.q_max", 1.0);
        int seeds = static_cast<int>(cfg.get_int_or("plane.seed_grid", 33));
        auto roots = locate_eps_2d(traj.base_coupling, box, opt.tol, seeds);
        std::ostringstream body;
        if (opt.format == "json") {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& r : roots) {
                j.push_back({{"p", json_number(r.p)},
                             {"q", json_number(r.q)},
                             {"residual", json_number(r.residual)}});
            }
            body << j.dump(2) << '\n';
        } else {
            body << "p,q,residual\n";
            for (const auto& r : roots) {
                body << format_double(r.p) << ',' << format_double(r.q) << ','
                     << format_double(r.residual) << '\n';
            }
        }
        if (roots.empty()) {
            std::cout << "no exceptional points in range\n";
        }
        emit(opt.out, body.str(), "");
        return exit_ok;
    }

    auto eps = locate_eps_1d(traj, opt.range_a, opt.range_b, opt.grid, opt.tol);
    std::ostringstream body;
    if (opt.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& ep : eps) {
            j.push_back({{"a_star", json_number(ep.a_star)},
                         {"E", json_number(ep.eigenvalue.real())},
                         {"G_half", json_number(ep.eigenvalue.imag())},
                         {"residual", json_number(ep.residual)}});
        }
        body << j.dump(2) << '\n';
    } else {
        body << "a_star,E,G_half,residual\n";
        for (const auto& ep : eps) {
            body << format_double(ep.a_star) << ','
                 << format_double(ep.eigenvalue.real()) << ','
                 << format_double(ep.eigenvalue.imag()) << ','
                 << format_double(ep.residual) << '\n';
        }
    }
    if (eps.empty()) {
        std::cout << "no exceptional points in range\n";
    }
    emit(opt.out, body.str(), "");
    return exit_ok;
}

int run_lineshape(cli_options opt) {
    std::set<std::string> shape_keys = {"mode", "e1", "g1", "e2",
                                        "g2",   "ed", "gd"};
    key_value_config cfg =
        load_config(opt, merge_keys({output_keys, shape_keys,
                                     {"range.min", "range.max"}}));

    std::string mode = cfg.get_string_or("mode", "double-pole");
    if (mode != "double-pole" && mode != "pair") {
        throw config_error("mode must be double-pole or pair, got '" + mode +
                           "'");
    }
    if (!opt.range_set) {
        opt.range_a = cfg.get_real_or("range.min", -6.0);
        opt.range_b = cfg.get_real_or("range.max", 6.0);
    }
    if (opt.grid == 0) {
        opt.grid = static_cast<int>(cfg.get_int_or("grid", 1001));
    }
    if (opt.out.empty()) {
        opt.out = cfg.get_string_or("out", "");
    }
    if (opt.format == "csv" && cfg.has("format")) {
        opt.format = cfg.get_string("format");
    }
    if (opt.format != "csv" && opt.format != "json") {
        throw config_error("format must be csv or json, got '" + opt.format + "'");
    }
    if (opt.grid < 2) {
        throw config_error("grid must be an integer >= 2, got " +
                           std::to_string(opt.grid));
    }
    if (!(opt.range_b > opt.range_a)) {
        throw config_error("range must satisfy max > min");
    }

    line_shape shape;
    std::string descriptor;
    if (mode == "pair") {
        resonance_pair res(cfg.get_real_or("e1", -0.5), cfg.get_real_or("g1", 1.0),
                           cfg.get_real_or("e2", 0.5), cfg.get_real_or("g2", 1.0));
        shape = sample_line_shape(res, opt.range_a, opt.range_b, opt.grid);
        descriptor = "pair e1=" + format_double(res.e1) +
                     " g1=" + format_double(res.g1) +
                     " e2=" + format_double(res.e2) +
                     " g2=" + format_double(res.g2);
    } else {
        double ed = cfg.get_real_or("ed", 0.0);
        double gd = cfg.get_real_or("gd", 1.0);
        shape = sample_line_shape_double_pole(ed, gd, opt.range_a, opt.range_b,
                                              opt.grid);
        descriptor = "double-pole ed=" + format_double(ed) +
                     " gd=" + format_double(gd);
    }

    std::ostringstream body;
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["descriptor"] = descriptor;
        j["samples"] = nlohmann::ordered_json::array();
        for (const auto& s : shape.samples) {
            j["samples"].push_back({{"E", json_number(s.e)},
                                    {"Re_S", json_number(s.s.real())},
                                    {"Im_S", json_number(s.s.imag())},
                                    {"sigma", json_number(s.sigma)}});
        }
        body << j.dump(2) << '\n';
    } else {
        body << "E,Re_S,Im_S,sigma\n";
        for (const auto& s : shape.samples) {
            body << format_double(s.e) << ',' << format_double(s.s.real())
                 << ',' << format_double(s.s.imag()) << ','
                 << format_double(s.sigma) << '\n';
        }
    }
    emit(opt.out, body.str(), "");
    return exit_ok;
}

int run_regimes(cli_options opt) {
    key_value_config cfg =
        load_config(opt, merge_keys({trajectory_keys, output_keys}));
    param_trajectory traj = resolve_trajectory(cfg);
    resolve_common(cfg, traj, opt, 1201);

    grid_spec grid{opt.range_a, opt.range_b, opt.grid};
    std::ostringstream body;
    if (opt.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (int i = 0; i < grid.n; ++i) {
            double a = grid.at(i);
            j.push_back({{"a", json_number(a)},
                         {"regime",
                          to_string(classify_regime(params_at(traj, a), opt.tol))}});
        }
        body << j.dump(2) << '\n';
    } else {
        body << "a,regime\n";
        for (int i = 0; i < grid.n; ++i) {
            double a = grid.at(i);
            body << format_double(a) << ','
                 << to_string(classify_regime(params_at(traj, a), opt.tol))
                 << '\n';
        }
    }
    emit(opt.out, body.str(), "");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-level non-Hermitian spectra: coalescence points, "
                 "eigenvector mixing, phase rigidity and line shapes"};
    app.require_subcommand(1);

    cli_options opt;
    auto add_common = [&](CLI::App* cmd, bool with_range) {
        cmd->add_option("--config", opt.config_path,
                        "key = value settings file");
        cmd->add_option("--out", opt.out, "output path (default: stdout)");
        cmd->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--grid", opt.grid, "number of grid points");
        cmd->add_option("--tol", opt.tol, "coalescence tolerance on |Z|")
            ->each([&](const std::string&) { opt.tol_set = true; });
        if (with_range) {
            cmd->add_option_function<std::vector<double>>(
                   "--range",
                   [&](const std::vector<double>& v) {
                       opt.range_a = v[0];
                       opt.range_b = v[1];
                       opt.range_set = true;
                   },
                   "sweep window: min max")
                ->expected(2);
        }
    };

    CLI::App* fig1 = app.add_subcommand(
        "fig1", "write the two shipped preset sweeps (left/right) to a directory");
    add_common(fig1, false);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "sweep a one-parameter trajectory and export the table");
    add_common(sweep, true);

    CLI::App* ep_find = app.add_subcommand(
        "ep-find", "locate coalescence points along a trajectory");
    add_common(ep_find, true);
    ep_find->add_flag("--plane", opt.plane,
                      "search the (e1-e2, gamma1-gamma2) plane instead");

    CLI::App* lineshape = app.add_subcommand(
        "lineshape", "sample the one-channel S matrix and |1-S|^2");
    add_common(lineshape, true);

    CLI::App* regimes = app.add_subcommand(
        "regimes", "classify the splitting regime along a trajectory");
    add_common(regimes, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (fig1->parsed()) {
            return run_fig1(opt);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(opt);
        }
        if (ep_find->parsed()) {
            return run_ep_find(opt);
        }
        if (lineshape->parsed()) {
            return run_lineshape(opt);
        }
        if (regimes->parsed()) {
            return run_regimes(opt);
        }
    } catch (const config_error& e) {
        std::cerr << "config error";
        if (e.line > 0) {
            std::cerr << " (line " << e.line << ")";
        }
        std::cerr << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}
