#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tmoyal/geometry.hpp"
#include "tmoyal/star.hpp"

namespace tmoyal {

// Caller-side overrides; anything unset falls back to the per-check
// defaults baked into the registry.
struct CheckRequest {
    std::optional<TwistConfig> config;
    std::optional<int> theta_order;
    std::optional<int> omega_order;
    std::optional<StarMethod> method;
    std::optional<int> trials;
    std::uint64_t seed = 0;
};

struct CheckReport {
    std::string check;
    TwistConfig config; // effective configuration the check ran under
    int trials = 0;
    std::uint64_t seed = 0;
    bool residual_zero = true;
    std::string residual = "0"; // first failing residual, rendered
    std::vector<std::string> findings;
    std::int64_t elapsed_ms = 0;
};

// Canonical check names in canonical order.
const std::vector<std::string>& check_names();

// Runs one named check; throws CheckNameError for unknown names and
// ConfigError / FlavorError for inadmissible override combinations.
CheckReport run_check(const std::string& name, const CheckRequest& rq);

// Runs every check concurrently and returns reports in canonical order.
std::vector<CheckReport> run_all_checks(const CheckRequest& rq);

// JSON round trip for configurations and reports.  Key order is fixed:
// config objects carry {flavor, theta_order, omega_order, kappa,
// omega_nonzero, constraint_eps_omega}; report objects carry {check,
// config, orders:{theta, omega}, trials, seed, residual_zero, residual,
// findings, elapsed_ms}.
TwistConfig config_from_json_text(const std::string& text);
std::string config_json_text(const TwistConfig& cfg);
std::string report_json_text(const CheckReport& r);
std::string reports_json_text(const std::vector<CheckReport>& rs);

// One human-readable PASS/FAIL line.
std::string report_line(const CheckReport& r);

// Deterministic stream for trial `index` of a run seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

// Dense random polynomial in x1, x2 with integer coefficients drawn
// uniformly from [-bound, bound], total degree at most max_deg.
Poly random_poly(Orders ord, std::mt19937_64& rng, int max_deg, int bound);

// Same shape with independently drawn real and imaginary parts.
Poly random_complex_poly(Orders ord, std::mt19937_64& rng, int max_deg, int bound);

} // namespace tmoyal
