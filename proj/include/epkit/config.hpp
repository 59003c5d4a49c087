#ifndef EPKIT_CONFIG_HPP
#define EPKIT_CONFIG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>

#include "epkit/model.hpp"
#include "epkit/types.hpp"

namespace epkit {

// Flat `key = value` text: UTF-8, `#` starts a comment, keys may be dotted
// (e1.slope = -0.5), complex values are `re+imi` literals (0+0.05i, 1.5,
// -2e-3i). Unknown and duplicate keys are rejected with the offending line
// number. Validation happens before any computation.
struct config_error : std::runtime_error {
    int line; // 1-based; 0 when not tied to a line
    explicit config_error(const std::string& msg, int line_no = 0)
        : std::runtime_error(msg), line(line_no) {}
};

struct config_entry {
    std::string value;
    int line = 0;
};

class key_value_config {
  public:
    static key_value_config parse(const std::string& text);
    static key_value_config parse_file(const std::string& path);

    bool has(const std::string& key) const;
    // typed getters throw config_error naming the key and line on bad syntax
    std::string get_string(const std::string& key) const;
    double get_real(const std::string& key) const;
    long get_int(const std::string& key) const;
    complex_t get_complex(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_real_or(const std::string& key, double fallback) const;
    long get_int_or(const std::string& key, long fallback) const;

    // rejects keys outside `allowed`, reporting the first offender's line
    void restrict_keys(const std::set<std::string>& allowed) const;

    const std::map<std::string, config_entry>& entries() const { return entries_; }

  private:
    std::map<std::string, config_entry> entries_;
};

// `re`, `re+imi`, `re-imi`, `imi`, `i`, `-i` forms; throws config_error
// (line 0) when malformed.
complex_t parse_complex_literal(const std::string& text);

// Builds a trajectory from config keys (family, e1.*, e2.*, gamma1.*,
// gamma2.*, e.*, gamma.*, coupling, coupling.model, range.min/max).
param_trajectory trajectory_from_config(const key_value_config& cfg);

} // namespace epkit

#endif
