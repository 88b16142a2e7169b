#pragma once

#include "uniteq/sieve13.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

// Campaign orchestration: each runner executes one verification mode and
// returns a serializable report; artifacts are JSON-lines files.
namespace uniteq::campaign {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string expected;
    std::string actual;
    std::string detail;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct CampaignReport {
    std::string mode;
    std::map<std::string, std::string> inputs;
    std::map<std::string, long> counts;
    std::vector<CheckResult> checks;
    std::vector<std::string> falsifications; // empty exactly when all checks pass
    double elapsed_seconds = 0.0;

    bool passed() const { return falsifications.empty(); }

    friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

// Serialization; json round-trips losslessly, csv has one row per check
// plus a header, text carries exactly one overall PASS/FAIL line.
std::string emit_report(const CampaignReport& report, const std::string& format);
CampaignReport parse_report_json(const std::string& text);

// Every identity of the two exceptional lists (including the parametric
// family for r = 2..64) plus the solution-count regressions.
CampaignReport verify_exceptional_lists();

// Constant table: computed values vs published references, with the
// reference re-check. Failures are falsification events.
CampaignReport bounds_report();

// Exhaustive unit-equation / Pillai searches (informational listings).
CampaignReport run_search(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          unsigned long z_max, const std::string& output_dir = {});
CampaignReport run_pillai(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          unsigned long x_max, const std::string& output_dir = {});

struct ClosureConfig {
    unsigned long z_max_vii = 90;
    unsigned long besi_s_max = 100000;
    unsigned besi_k_max = 10;
    unsigned besi_n_max = 20;
    unsigned sqrt13_k_max = 60;
};
CampaignReport run_closures(const ClosureConfig& config = {});

struct SieveRunConfig {
    sieve13::CaseTag case_tag = sieve13::CaseTag::v;
    std::optional<unsigned long> z_max;   // clamp below the case ceiling
    std::optional<int> n_prime_only;
    unsigned workers = 1;
    unsigned long chunk = 500;            // z-values per work unit
    std::string checkpoint_path;          // empty: no checkpointing
    bool resume = false;
    std::string output_dir;               // empty: no artifacts
    bool strong_mod13_filter = true;
};
CampaignReport run_sieve(const SieveRunConfig& config);

struct CampaignConfig {
    std::string mode; // exceptional-lists | sieve-v | sieve-vi | bounds | search | pillai | closures
    std::map<std::string, std::string> parameters;
    unsigned workers = 1;
    std::string output_path;
};
CampaignReport run_campaign(const CampaignConfig& config);

} // namespace uniteq::campaign
