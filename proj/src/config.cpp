#include "epkit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace epkit {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
    if (k.empty() || k.front() == '.' || k.back() == '.') {
        return false;
    }
    bool prev_dot = false;
    for (char c : k) {
        if (c == '.') {
            if (prev_dot) {
                return false;
            }
            prev_dot = true;
            continue;
        }
        prev_dot = false;
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

double parse_real_text(const std::string& text, const std::string& key, int line) {
    std::string t = trim(text);
    if (t.empty()) {
        throw config_error("empty value for key '" + key + "'", line);
    }
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') {
        ++first;  // from_chars does not accept an explicit plus sign
    }
    double out = 0.0;
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc() || res.ptr != last) {
        throw config_error("key '" + key + "': '" + t + "' is not a real number",
                           line);
    }
    if (!std::isfinite(out)) {
        throw config_error("key '" + key + "': value must be finite", line);
    }
    return out;
}

} // namespace

key_value_config key_value_config::parse(const std::string& text) {
    key_value_config cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("expected 'key = value', got '" + trim(raw) + "'",
                               line_no);
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) {
            throw config_error("malformed key '" + key + "'", line_no);
        }
        if (value.empty()) {
            throw config_error("empty value for key '" + key + "'", line_no);
        }
        auto [it, inserted] = cfg.entries_.emplace(key, config_entry{value, line_no});
        if (!inserted) {
            throw config_error("duplicate key '" + key + "' (first set on line " +
                                   std::to_string(it->second.line) + ")",
                               line_no);
        }
    }
    return cfg;
}

key_value_config key_value_config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool key_value_config::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

std::string key_value_config::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw config_error("missing required key '" + key + "'");
    }
    return it->second.value;
}

double key_value_config::get_real(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw config_error("missing required key '" + key + "'");
    }
    return parse_real_text(it->second.value, key, it->second.line);
}

long key_value_config::get_int(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw config_error("missing required key '" + key + "'");
    }
    const std::string t = trim(it->second.value);
    long out = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw config_error("key '" + key + "': '" + t + "' is not an integer",
                           it->second.line);
    }
    return out;
}

complex_t key_value_config::get_complex(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw config_error("missing required key '" + key + "'");
    }
    try {
        return parse_complex_literal(it->second.value);
    } catch (const config_error& e) {
        throw config_error("key '" + key + "': " + e.what(), it->second.line);
    }
}

std::string key_value_config::get_string_or(const std::string& key,
                                            const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double key_value_config::get_real_or(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}

long key_value_config::get_int_or(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

void key_value_config::restrict_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, entry] : entries_) {
        if (allowed.count(key) == 0) {
            throw config_error("unknown key '" + key + "'", entry.line);
        }
    }
}

complex_t parse_complex_literal(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) {
        throw config_error("empty complex literal");
    }

    // pure imaginary shorthand: i, -i, +i
    if (t == "i" || t == "+i") {
        return {0.0, 1.0};
    }
    if (t == "-i") {
        return {0.0, -1.0};
    }

    auto parse_part = [&](const std::string& part) {
        const char* first = part.data();
        const char* last = part.data() + part.size();
        if (first != last && *first == '+') {
            ++first;  // from_chars does not accept an explicit plus sign
        }
        double out = 0.0;
        auto res = std::from_chars(first, last, out);
        if (res.ec != std::errc() || res.ptr != last || !std::isfinite(out)) {
            throw config_error("malformed complex literal '" + t + "'");
        }
        return out;
    };

    if (t.back() == 'i' || t.back() == 'I') {
        std::string body = t.substr(0, t.size() - 1);
        // split at the last +/- that is not an exponent sign and not leading
        size_t split = std::string::npos;
        for (size_t p = body.size(); p-- > 1;) {
            char c = body[p];
            if ((c == '+' || c == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
                split = p;
                break;
            }
        }
        if (split == std::string::npos) {
            // purely imaginary: `0.05i`, `-2e-3i`, `+i` handled above
            if (body.empty() || body == "+" || body == "-") {
                return {0.0, body == "-" ? -1.0 : 1.0};
            }
            return {0.0, parse_part(body)};
        }
        std::string re_part = body.substr(0, split);
        std::string im_part = body.substr(split);
        if (im_part == "+" || im_part == "-") {
            return {parse_part(re_part), im_part == "-" ? -1.0 : 1.0};
        }
        return {parse_part(re_part), parse_part(im_part)};
    }

    return {parse_part(t), 0.0};
}

param_trajectory trajectory_from_config(const key_value_config& cfg) {
    param_trajectory traj;
    std::string family = cfg.get_string("family");
    if (family == "open") {
        traj.kind = family_kind::open;
    } else if (family == "pt-balanced") {
        traj.kind = family_kind::pt_balanced;
    } else if (family == "pt-lossy") {
        traj.kind = family_kind::pt_lossy;
    } else {
        throw config_error(
            "family must be one of open|pt-balanced|pt-lossy, got '" + family +
            "'");
    }

    auto law = [&](const std::string& prefix, linear_law fallback) {
        linear_law l = fallback;
        l.intercept = cfg.get_real_or(prefix + ".intercept", fallback.intercept);
        l.slope = cfg.get_real_or(prefix + ".slope", fallback.slope);
        return l;
    };

    if (traj.kind == family_kind::open) {
        traj.e1_law = law("e1", {0.0, 0.0});
        traj.e2_law = law("e2", {0.0, 0.0});
        traj.gamma1_law = law("gamma1", {0.0, 0.0});
        traj.gamma2_law = law("gamma2", {0.0, 0.0});
    } else {
        // single energy and gain/loss law for the balanced and lossy forms
        traj.e1_law = law("e", {0.0, 0.0});
        traj.gamma1_law = law("gamma", {0.0, 0.0});
    }

    if (cfg.has("coupling")) {
        traj.base_coupling = cfg.get_complex("coupling");
    }
    std::string model = cfg.get_string_or("coupling.model", "constant");
    if (model == "constant") {
        traj.coupling = coupling_model::constant;
    } else if (model == "gaussian-falloff") {
        traj.coupling = coupling_model::gaussian_falloff;
    } else {
        throw config_error(
            "coupling.model must be constant|gaussian-falloff, got '" + model +
            "'");
    }

    traj.default_a_min = cfg.get_real_or("range.min", 0.0);
    traj.default_a_max = cfg.get_real_or("range.max", 1.0);
    if (!(traj.default_a_max > traj.default_a_min)) {
        throw config_error("range.max must exceed range.min");
    }
    return traj;
}

} // namespace epkit
