// Acceptance run: one line per criterion, each backed by checks of verify_paper.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "dht/verify.hpp"

using namespace dht;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::vector<std::string> checks;
    double limit_seconds;
};

const std::vector<Criterion> criteria = {
    {1, "homotopy equivalence of X and Y", {"prop-3.2"}, 1},
    {2, "pointed neighbors of the identity", {"prop-3.3", "cor-3.4"}, 5},
    {3, "no pointed homotopy equivalence", {"prop-3.5"}, 10},
    {4, "one-step loop equivalence", {"sec3-loop-equivalence"}, 5},
    {5, "forbidden-stage unreachability", {"sec3-forbidden-stage", "sec3-forbidden-stage-start"}, 60},
    {6, "TAB inequivalence and TAB nullhomotopy", {"sec3-tab-inequivalence", "sec3-tab-nullhomotopy"}, 60},
    {7, "truncated family is not an EC homotopy", {"ex-4.2"}, 1},
    {8, "stagewise star and padding", {"ex-4.12"}, 1},
    {9, "EC calculus property suite", {"ec-calculus"}, 60},
    {10, "group structure and oracle equivalence", {"thm-4.8", "group-Y"}, 300},
    {11, "unpointed isomorphism pipeline", {"thm-5.1", "thm-5.3"}, 30},
    {12, "winding oracle consistency", {"winding-Y"}, 60},
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::vector<int> expect_fail;
    std::vector<int> only;
    std::size_t threads = 1;
    app.add_option("--expect-fail", expect_fail,
                   "Criteria known to fail; exit status is 0 when exactly these fail");
    app.add_option("--only", only, "Run only these criteria");
    app.add_option("--threads", threads, "Worker threads inside a criterion")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    std::set<int> failed;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end())
            continue;
        VerifyConfig config;
        config.only = c.checks;
        config.threads = threads;
        const auto t0 = std::chrono::steady_clock::now();
        const VerificationReport report = verify_paper(config);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        bool ok = seconds <= c.limit_seconds;
        std::ostringstream detail;
        for (const auto& r : report.checks) {
            if (r.id == "fixtures" && r.status == CheckStatus::pass)
                continue;
            if (r.status != CheckStatus::pass && r.status != CheckStatus::bounded_pass)
                ok = false;
            detail << "\n    " << to_string(r.status) << "  " << r.id << "  [" << r.anchor << "]  " << r.detail;
        }
        if (!ok)
            failed.insert(c.number);
        std::cout.precision(2);
        std::cout << std::fixed << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL") << "  " << c.name
                  << "  (" << seconds << " s, limit " << c.limit_seconds << " s)" << detail.str() << std::endl;
    }

    const std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::cout << "failed criteria:";
    for (int n : failed)
        std::cout << ' ' << n;
    std::cout << (failed.empty() ? " none" : "") << '\n';
    if (!expected.empty()) {
        std::cout << "expected failures:";
        for (int n : expected)
            std::cout << ' ' << n;
        std::cout << (failed == expected ? "  (match)" : "  (MISMATCH)") << '\n';
        return failed == expected ? 0 : 1;
    }
    return failed.empty() ? 0 : 1;
}
