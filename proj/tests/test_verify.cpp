#include <doctest.h>

#include <sstream>

#include "dht/verify.hpp"

using namespace dht;

namespace {

const CheckResult& find(const VerificationReport& r, const std::string& id)
{
    for (const auto& c : r.checks)
        if (c.id == id)
            return c;
    FAIL("missing check " << id);
    throw;
}

}  // namespace

TEST_CASE("every check id is reported once")
{
    VerifyConfig c = VerifyConfig::zero_bounds();
    const auto r = verify_paper(c);
    const auto ids = verify_check_ids();
    REQUIRE(r.checks.size() == ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        CHECK(r.checks[i].id == ids[i]);
}

TEST_CASE("zero bounds never pass a bounded check")
{
    const auto r = verify_paper(VerifyConfig::zero_bounds());
    for (const auto& id : {"sec3-forbidden-stage", "sec3-tab-inequivalence", "thm-4.8", "group-Y", "winding-Y"}) {
        const auto& c = find(r, id);
        CAPTURE(id);
        CHECK(c.status == CheckStatus::bound_exhausted);
    }
    // exact checks do not depend on the bounds
    CHECK(find(r, "prop-3.2").status == CheckStatus::pass);
    CHECK(find(r, "ex-4.2").status == CheckStatus::pass);
}

TEST_CASE("a corrupted fixture fails the run")
{
    VerifyConfig c;
    c.fixtures.corrupt_point = 3;
    const auto r = verify_paper(c);
    CHECK_FALSE(r.ok());
    CHECK(find(r, "fixtures").status == CheckStatus::fail);
}

TEST_CASE("exact checks pass on defaults")
{
    VerifyConfig c;
    c.only = {"prop-3.2", "prop-3.3", "cor-3.4", "prop-3.5", "sec3-loop-equivalence", "ex-4.2", "ex-4.12",
              "thm-5.1", "thm-5.3"};
    const auto r = verify_paper(c);
    for (const auto& check : r.checks) {
        CAPTURE(check.id);
        CAPTURE(check.detail);
        CHECK(check.status == CheckStatus::pass);
    }
}

TEST_CASE("the start-pair claim is the known refutation")
{
    VerifyConfig c;
    c.only = {"sec3-forbidden-stage-start"};
    c.max_len = 11;
    const auto r = verify_paper(c);
    const auto& check = find(r, "sec3-forbidden-stage-start");
    CHECK(check.status == CheckStatus::fail);
    CHECK_FALSE(check.certificates.empty());
}

TEST_CASE("report formats")
{
    VerifyConfig c;
    c.only = {"prop-3.2"};
    const auto r = verify_paper(c);
    std::ostringstream text, kv;
    write_text(text, r);
    write_kv(kv, r);
    CHECK(text.str().find("pass  prop-3.2") != std::string::npos);
    CHECK(kv.str().find("check.prop-3.2.status=pass") != std::string::npos);
    CHECK(kv.str().find("summary.fail=0") != std::string::npos);
}
