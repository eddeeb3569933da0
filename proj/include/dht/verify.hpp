#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dht/fixtures.hpp"
#include "dht/search.hpp"

namespace dht {

enum class CheckStatus {
    pass,
    bounded_pass,     ///< holds up to the recorded bounds
    bound_exhausted,  ///< the bounds ran out before the check could decide
    fail,
};
const char* to_string(CheckStatus s);

struct CheckResult {
    std::string id;
    std::string anchor;  ///< source location of the claim
    CheckStatus status = CheckStatus::pass;
    std::string detail;
    /// Replayable certificate files as (file name, contents).
    std::vector<std::pair<std::string, std::string>> certificates;
    double seconds = 0;
};

struct VerifyConfig {
    SearchOptions search;
    std::size_t max_prefix = 14;      ///< EC prefix bound for class decisions
    std::size_t max_len = 13;         ///< longest extension length for the section 3 loop claims
    std::size_t tab_null_len = 20;    ///< extension length allowed for the TAB nullhomotopy
    std::size_t group_loop_len = 10;  ///< loops in Y sampled for the group checks
    std::size_t property_samples = 200;
    std::size_t threads = 1;
    std::uint64_t seed = 1;
    FixtureOptions fixtures;
    std::vector<std::string> only;  ///< when non-empty, run just these check ids

    /// Every bound set to zero.
    static VerifyConfig zero_bounds();
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool ok() const;
    std::size_t count(CheckStatus s) const;
};

/// Identifiers of every check, in report order.
std::vector<std::string> verify_check_ids();

VerificationReport verify_paper(const VerifyConfig& config = {});

/// One line per check, then a summary line.
void write_text(std::ostream& out, const VerificationReport& report);
/// `check.<id>.<field>=<value>` lines.
void write_kv(std::ostream& out, const VerificationReport& report);

}  // namespace dht
