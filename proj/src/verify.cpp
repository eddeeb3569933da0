#include "dht/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "dht/ec.hpp"
#include "dht/fundamental.hpp"
#include "dht/io.hpp"
#include "dht/random.hpp"

namespace dht {

const char* to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::bounded_pass:
        return "bounded-pass";
    case CheckStatus::bound_exhausted:
        return "bound-exhausted";
    case CheckStatus::fail:
        return "fail";
    }
    return "?";
}

VerifyConfig VerifyConfig::zero_bounds()
{
    VerifyConfig c;
    c.max_prefix = 0;
    c.max_len = 0;
    c.tab_null_len = 0;
    c.group_loop_len = 0;
    c.property_samples = 0;
    return c;
}

bool VerificationReport::ok() const { return count(CheckStatus::fail) == 0; }

std::size_t VerificationReport::count(CheckStatus s) const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.status == s; }));
}

namespace {

struct Context {
    const PaperFixtures& fx;
    const VerifyConfig& cfg;
};

using CheckFn = std::function<void(const Context&, CheckResult&)>;

struct CheckDef {
    const char* id;
    const char* anchor;
    CheckFn run;
};

/// Accumulates sub-check failures into one detail string.
class Tally {
public:
    void expect(bool ok, const std::string& what)
    {
        ++total_;
        if (!ok && failures_.size() < 5)
            failures_.push_back(what);
        if (!ok)
            ++failed_;
    }
    bool ok() const { return failed_ == 0; }
    std::size_t total() const { return total_; }
    std::string summary() const
    {
        std::ostringstream os;
        os << (total_ - failed_) << "/" << total_ << " sub-checks hold";
        for (const auto& f : failures_)
            os << "; " << f;
        return os.str();
    }

private:
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

std::string image_text(const DigitalImage& image)
{
    std::ostringstream os;
    write_image(os, image);
    return os.str();
}

std::string path_homotopy_text(const std::string& image_file, const PathHomotopy& h)
{
    std::ostringstream os;
    write_path_homotopy(os, image_file, h);
    return os.str();
}

std::string ec_homotopy_text(const std::string& image_file, const EcHomotopy& h)
{
    std::ostringstream os;
    write_ec_homotopy(os, image_file, h);
    return os.str();
}

std::string homotopy_text(const std::string& src, const std::string& tgt, const Homotopy& h)
{
    std::ostringstream os;
    write_homotopy(os, src, tgt, h);
    return os.str();
}

/// Names points of X by their x_i labels.
std::string x_labels(const PaperFixtures& fx, const std::vector<PointIndex>& values)
{
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto it = std::find(fx.x.begin(), fx.x.end(), values[i]);
        out += (i ? "," : "") + std::string("x") + std::to_string(it - fx.x.begin());
    }
    return out + ")";
}

// maps and pointed equivalence -----------------------------------------------------

void check_prop_3_2(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    t.expect(is_continuous(fx.f) && is_continuous(fx.g), "f and g continuous");
    t.expect(is_homotopy(fx.H) && fx.H.steps() == 1 && fx.H.from() == compose(fx.g, fx.f) &&
                 fx.H.to() == DigitalMap::identity(fx.X),
             "H is a one-step homotopy from g o f to 1_X");
    t.expect(is_homotopy(fx.K) && fx.K.steps() == 1 && fx.K.from() == compose(fx.f, fx.g) &&
                 fx.K.to() == DigitalMap::identity(fx.Y),
             "K is a one-step homotopy from f o g to 1_Y");
    const auto cert = verify_homotopy_equivalence(fx.f, fx.g, c.cfg.search);
    t.expect(cert.equivalent, "verify_homotopy_equivalence(f, g)");
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary();
    r.certificates = {{"X.img", image_text(*fx.X)},
                      {"Y.img", image_text(*fx.Y)},
                      {"prop-3.2-H.hom", homotopy_text("X.img", "X.img", fx.H)},
                      {"prop-3.2-K.hom", homotopy_text("Y.img", "Y.img", fx.K)}};
    if (cert.gf_to_identity)
        r.certificates.emplace_back("prop-3.2-gf.hom", homotopy_text("X.img", "X.img", *cert.gf_to_identity));
    if (cert.fg_to_identity)
        r.certificates.emplace_back("prop-3.2-fg.hom", homotopy_text("Y.img", "Y.img", *cert.fg_to_identity));
}

void check_prop_3_3(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    const DigitalMap id = DigitalMap::identity(fx.Y);
    for (PointIndex y = 0; y < fx.Y->size(); ++y) {
        const auto n = pointed_neighbors_of_identity(fx.Y, y);
        t.expect(n.size() == 1 && n.front() == id, "fixing " + fx.Y->point(y).to_string() + " leaves " +
                                                      std::to_string(n.size()) + " maps");
    }
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = "every point of Y as fixed point: " + t.summary();
}

void check_cor_3_4(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    const auto n = pointed_neighbors_of_identity(fx.X, fx.x[0]);
    const bool ok = n.size() == 1 && n.front() == DigitalMap::identity(fx.X);
    r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    r.detail = "maps fixing x_0 one step from 1_X: " + std::to_string(n.size());
}

void check_prop_3_5(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    const auto xy = analyze_pointed_equivalence(fx.X, fx.Y, c.cfg.search);
    t.expect(xy.no_pointed_equivalence, "X and Y");
    const auto fig = analyze_pointed_equivalence(fx.fig2, fx.fig2_cycle, c.cfg.search);
    t.expect(fig.no_pointed_equivalence, "Figure 2 image and its cycle");
    t.expect(!no_pointed_equivalence(fx.X, fx.X, c.cfg.search), "control: X is pointed equivalent to itself");
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary() + "; X/Y by " + xy.method + "; Figure 2 by " + fig.method;
}

// fixed-length loops ------------------------------------------------------------

void check_loop_equivalence(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    t.expect(is_path_homotopy(fx.ext_one_step) && holds_endpoints_fixed(fx.ext_one_step) &&
                 fx.ext_one_step.steps() == 1,
             "f' to g' in one step");
    const std::size_t bound = std::min<std::size_t>(12, c.cfg.max_prefix);
    const auto res = class_equal(infty(fx.loop_f), infty(fx.loop_g), bound, c.cfg.search);
    if (res.verdict == Verdict::yes && res.witness) {
        t.expect(is_ec_homotopy(*res.witness, true) && res.witness->from() == infty(fx.loop_f) &&
                     res.witness->to() == infty(fx.loop_g),
                 "class_equal witness validates");
        r.certificates = {{"X.img", image_text(*fx.X)},
                          {"sec3-ext-one-step.phom", path_homotopy_text("X.img", fx.ext_one_step)},
                          {"sec3-class-equal.echom", ec_homotopy_text("X.img", *res.witness)}};
    } else {
        t.expect(false, std::string("class_equal(f_inf, g_inf) = ") + to_string(res.verdict));
    }
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary() + "; class_equal at prefix bound " + std::to_string(res.bound) + " by " + res.method;
}

/// For each extension length k, partitions the loops at x_1 of length k that
/// avoid the forbidden pair and asks whether some trivial extension of f
/// shares a component with some trivial extension of g.
void check_forbidden_stage(const Context& c, CheckResult& r, bool at_end)
{
    const auto& fx = c.fx;
    const PointIndex x1 = fx.x[1];
    const std::size_t first = 11;
    if (c.cfg.max_len < first) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "max_len " + std::to_string(c.cfg.max_len) + " is below the first extension length 11";
        return;
    }
    std::ostringstream detail;
    std::size_t done = 0;
    for (std::size_t k = first; k <= c.cfg.max_len; ++k) {
        LoopConstraints lc;
        lc.forbidden_pairs = {{at_end ? k - 1 : 0, x1, x1}};
        const LoopSpace space(fx.X, k, lc, x1, x1);
        LoopPartition part;
        try {
            part = partition_loop_space(space, c.cfg.search.max_frontier);
        } catch (const BudgetExceeded&) {
            detail << "k=" << k << ": loop space exceeds the node budget; ";
            break;
        }
        std::map<std::uint32_t, State> f_comp;
        std::vector<State> f_states, g_states;
        for (const auto& e : enumerate_trivial_extensions(fx.loop_f, k))
            if (space.admits(e.values())) {
                f_states.push_back(pack(e.values()));
                f_comp.emplace(*part.component_of(f_states.back()), f_states.back());
            }
        std::optional<State> shared_g;
        for (const auto& e : enumerate_trivial_extensions(fx.loop_g, k))
            if (space.admits(e.values())) {
                g_states.push_back(pack(e.values()));
                if (!shared_g && f_comp.count(*part.component_of(g_states.back())))
                    shared_g = g_states.back();
            }
        detail << "k=" << k << ": " << part.states.size() << " loops, " << part.component_count << " components, "
               << f_states.size() << "+" << g_states.size() << " extensions";
        if (shared_g) {
            const State from = f_comp.at(*part.component_of(*shared_g));
            auto w = shortest_path(
                from, g_states, [&](const State& s, auto&& visit) { space.neighbors(s, visit); },
                c.cfg.search.max_frontier);
            detail << ", an extension of f reaches an extension of g without the forbidden stage";
            if (w.status == SearchStatus::found) {
                PathHomotopy h;
                for (const auto& s : w.path)
                    h.stages.emplace_back(fx.X, unpack(s));
                detail << " in " << h.steps() << " step(s): ";
                for (std::size_t i = 0; i < h.stages.size(); ++i)
                    detail << (i ? " -> " : "") << x_labels(fx, h.stages[i].values());
                r.certificates = {{"X.img", image_text(*fx.X)},
                                  {std::string("sec3-forbidden-") + (at_end ? "end" : "start") + "-k" +
                                       std::to_string(k) + ".phom",
                                   path_homotopy_text("X.img", h)}};
            }
            r.status = CheckStatus::fail;
            r.detail = detail.str();
            return;
        }
        detail << ", none shared; ";
        ++done;
    }
    r.status = done == 0 ? CheckStatus::bound_exhausted : CheckStatus::bounded_pass;
    r.detail = detail.str() + "decided exactly for k=11.." + std::to_string(first + done - 1);
}

void check_tab_inequivalence(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    const auto res = tab_equivalent(fx.loop_f, fx.loop_g, fx.x[1], c.cfg.max_len, c.cfg.search);
    switch (res.verdict) {
    case Verdict::yes:
        r.status = CheckStatus::fail;
        if (res.witness)
            r.certificates = {{"X.img", image_text(*fx.X)},
                              {"sec3-tab-fg.phom", path_homotopy_text("X.img", *res.witness)}};
        break;
    case Verdict::exact_no:
        r.status = CheckStatus::pass;
        break;
    case Verdict::no_within_bound:
        r.status = CheckStatus::bounded_pass;
        break;
    case Verdict::bound_exhausted:
        r.status = CheckStatus::bound_exhausted;
        break;
    }
    std::ostringstream os;
    os << "tab_equivalent(f, g, x_1, " << c.cfg.max_len << ") = " << to_string(res.verdict);
    for (const auto& n : res.notes)
        os << "; " << n;
    r.detail = os.str();
}

void check_tab_nullhomotopy(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    const PointIndex x1 = fx.x[1];
    const std::size_t len = fx.fg_inverse.length();
    if (c.cfg.tab_null_len < len) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "tab_null_len " + std::to_string(c.cfg.tab_null_len) + " is below the loop length " +
                   std::to_string(len);
        return;
    }
    Tally t;
    t.expect(fx.fg_inverse == product(fx.loop_f, reverse(fx.loop_g)), "display equals f * g^{-1}");
    t.expect(is_tab(fx.fg_inverse, x1), "f * g^{-1} is TAB");
    const PathHomotopy first{{fx.fg_inverse, fx.tab_first_step}};
    t.expect(is_path_homotopy(first) && holds_endpoints_fixed(first) && is_tab_every_stage(first, x1),
             "displayed first step is a TAB one-step move");
    const FinitePath constant = FinitePath::constant(fx.X, x1, 0);
    const auto rest = tab_equivalent(fx.tab_first_step, constant, x1, c.cfg.tab_null_len, c.cfg.search);
    std::ostringstream os;
    if (rest.verdict == Verdict::yes && rest.witness) {
        PathHomotopy full = first;
        full.stages.insert(full.stages.end(), rest.witness->stages.begin() + 1, rest.witness->stages.end());
        PathHomotopy body = full;
        body.stages.pop_back();
        const auto& last = full.stages.back();
        const bool last_constant =
            std::all_of(last.values().begin(), last.values().end(), [&](PointIndex v) { return v == x1; });
        t.expect(is_path_homotopy(full) && holds_endpoints_fixed(full) && is_tab_every_stage(body, x1) &&
                     last_constant,
                 "certificate from the displayed step validates");
        r.certificates = {{"X.img", image_text(*fx.X)}, {"sec3-tab-null.phom", path_homotopy_text("X.img", full)}};
        os << "certificate through the displayed step: " << full.steps() << " steps";
    } else {
        t.expect(false, std::string("search from the displayed step: ") + to_string(rest.verdict));
    }
    const auto direct = tab_equivalent(fx.fg_inverse, constant, x1, c.cfg.tab_null_len, c.cfg.search);
    t.expect(direct.verdict == Verdict::yes, std::string("direct search: ") + to_string(direct.verdict));
    if (direct.witness)
        os << "; direct search: " << direct.witness->steps() << " steps";
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary() + "; " + os.str();
}

// EC calculus --------------------------------------------------------------------

void check_example_4_2(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    const std::size_t window = 8;
    const ImagePtr domain = DigitalInterval(0, static_cast<Coord>(window)).image();
    Homotopy trunc;
    for (const auto& s : fx.ex42_family) {
        std::vector<PointIndex> table(window + 1);
        for (std::size_t n = 0; n <= window; ++n)
            table[domain->index_of(LatticePoint({static_cast<Coord>(n)}))] = s(n);
        trunc.stages.emplace_back(domain, fx.unit, std::move(table));
    }
    t.expect(is_homotopy(trunc), "truncation to [0,8] is a homotopy");
    const EcCheck ec = check_ec_family(fx.ex42_family, false);
    t.expect(!ec.ok, "family is rejected as an EC homotopy");
    t.expect(ec.stage && *ec.stage == 1, "failing stage is H_1");
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary() + "; " + (ec.ok ? std::string("accepted") : ec.reason);
}

void check_example_4_12(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    const auto raw = stagewise_star(fx.ex412_H, fx.ex412_f);
    auto shows = [](const EcPath& p, const std::vector<PointIndex>& display) {
        return p.values_through(display.size() - 1) == display && p(display.size()) == display.back();
    };
    t.expect(shows(raw.at(0), fx.ex412_K_display), "H_0 * g matches the displayed sequence");
    t.expect(shows(raw.at(1), fx.ex412_L_display), "H_1 * g matches the displayed sequence");
    std::vector<EventuallyPeriodicMap> fam;
    for (const auto& s : raw)
        fam.push_back(EventuallyPeriodicMap::from(s));
    const EcCheck bad = check_ec_family(fam, true);
    t.expect(!bad.ok && bad.n && *bad.n == 6, "stagewise star is discontinuous at n=6");
    const EcHomotopy padded = ec_star_with_padding(fx.ex412_H, fx.ex412_f);
    const EcCheck good = check_ec_homotopy(padded, true);
    t.expect(good.ok, "padded star is an EC homotopy: " + good.reason);
    const std::vector<PointIndex> k0 = {0, 1, 2, 1, 0, 0, 0, 1, 2, 1, 0};
    t.expect(!padded.stages.empty() && padded.stages[0].values_through(k0.size() - 1) == k0,
             "K_0 = (0,1,2,1,0,0,0,1,2,1,0,...)");
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary() + "; raw star: " + (bad.ok ? std::string("accepted") : bad.reason);
    std::ostringstream img;
    write_image(img, *fx.ex412_image);
    r.certificates = {{"interval-0-2.img", img.str()},
                      {"ex-4.12-padded.echom", ec_homotopy_text("interval-0-2.img", padded)}};
}

void check_ec_calculus(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    std::mt19937_64 rng(c.cfg.seed);
    Tally t;
    for (std::size_t i = 0; i < c.cfg.property_samples; ++i) {
        ImagePtr image;
        switch (i % 4) {
        case 0:
            image = fx.X;
            break;
        case 1:
            image = fx.Y;
            break;
        case 2:
            image = fx.fig2;
            break;
        default:
            image = random_connected_image(8, rng);
        }
        const PointIndex x0 = static_cast<PointIndex>(rng() % image->size());
        const FinitePath f = random_loop(image, x0, rng() % 9, rng);
        const FinitePath g = random_loop(image, x0, rng() % 9, rng);
        const EcPath F = infty(f);
        const EcPath G = infty(g);
        const std::string tag = "sample " + std::to_string(i) + " " + f.to_string();

        // round trips
        t.expect(infty(minus(F)) == F, tag + ": (f_-)_inf = f");
        t.expect(is_trivial_extension(f, minus(F)), tag + ": f extends (f_inf)_-");
        // star morphism
        t.expect(product(minus(F), minus(G)) == minus(ec_star(F, G)), tag + ": f_- * g_- = (f * g)_-");
        t.expect(ec_star(ec_star(F, G), F) == ec_star(F, ec_star(G, F)), tag + ": star is associative");
        // absorption
        const FinitePath fbar = random_trivial_extension(f, 1 + rng() % 3, rng);
        const EcHomotopy ab = absorb(f, fbar);
        t.expect(is_ec_homotopy(ab, true) && ab.from() == F && ab.to() == infty(fbar), tag + ": absorption");
        // Lemmas 4.5 and 4.6
        const PathHomotopy ph = random_path_homotopy(f, 1 + rng() % 4, LoopConstraints::endpoints_fixed(), rng);
        const EcHomotopy lifted = lift(ph);
        t.expect(is_ec_homotopy(lifted, true), tag + ": lift is an EC homotopy");
        const PathHomotopy back = restrict(lifted);
        t.expect(is_path_homotopy(back) && holds_endpoints_fixed(back), tag + ": restriction is a path homotopy");
        bool agree = back.stages.size() == lifted.stages.size();
        for (std::size_t s = 0; agree && s < back.stages.size(); ++s)
            for (std::size_t n = 0; n <= back.stages[s].length() + 2; ++n)
                agree &= lifted.stages[s](n) == back.stages[s][std::min(n, back.stages[s].length())];
        t.expect(agree, tag + ": restriction agrees with the lift");
    }
    if (c.cfg.property_samples == 0) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "no samples requested";
        return;
    }
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = std::to_string(c.cfg.property_samples) + " random loops, seed " + std::to_string(c.cfg.seed) + ": " +
               t.summary();
}

/// Loops at the basepoint up to max_len, as EC loops and finite loops.
struct LoopSample {
    std::vector<FinitePath> finite;
    std::vector<EcPath> ec;
};

LoopSample loop_sample(const ImagePtr& image, PointIndex x0, std::size_t max_len)
{
    LoopSample s;
    s.finite = enumerate_loops(image, x0, max_len);
    for (const auto& f : s.finite)
        s.ec.push_back(infty(f));
    return s;
}

void check_thm_4_8(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    const std::size_t len = std::min<std::size_t>(10, c.cfg.group_loop_len);
    const std::size_t bound = std::min<std::size_t>(len + 1, c.cfg.max_prefix);
    if (c.cfg.group_loop_len == 0 || bound < len) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "loop or prefix bound is zero";
        return;
    }
    const LoopSample s = loop_sample(fx.X, fx.x[1], len);
    const SamplePartition ec = partition_by_ec(s.ec, bound, c.cfg.search);
    const SamplePartition te = partition_by_trivial_extensions(s.finite, bound, c.cfg.search);
    const bool agree = same_partition(ec, te);
    r.status = !agree ? CheckStatus::fail : ec.complete ? CheckStatus::bounded_pass : CheckStatus::bound_exhausted;
    r.detail = std::to_string(s.finite.size()) + " loops at x_1 in X of length <= " + std::to_string(len) +
               ", bound " + std::to_string(bound) + ": EC " + std::to_string(ec.classes) +
               " classes, trivial extensions " + std::to_string(te.classes) + " classes, " +
               (agree ? "partitions agree" : "partitions differ");
}

void check_group_y(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    const std::size_t len = c.cfg.group_loop_len;
    const std::size_t bound = std::max(len, c.cfg.max_prefix);
    if (len == 0 || c.cfg.max_prefix == 0) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "loop or prefix bound is zero";
        return;
    }
    const PointIndex y1 = fx.y[1];
    const LoopSample s = loop_sample(fx.Y, y1, len);
    ClassCache cache;
    Tally t;
    const EcPath e = EcPath::constant(fx.Y, y1);
    bool complete = true;
    auto equal = [&](const EcPath& a, const EcPath& b) {
        const Verdict v = class_equal_cached(cache, a, b, std::max({bound, a.tail_index(), b.tail_index()}),
                                             c.cfg.search);
        if (v == Verdict::bound_exhausted)
            complete = false;
        return v == Verdict::yes;
    };
    for (const auto& f : s.ec) {
        t.expect(ec_star(f, e) == f && ec_star(e, f) == f, f.to_string() + ": identity");
        t.expect(equal(ec_star(f, ec_inverse(f)), e) && equal(ec_star(ec_inverse(f), f), e),
                 f.to_string() + ": inverse");
    }
    const SamplePartition ec = partition_by_ec(s.ec, bound, c.cfg.search, &cache);
    const SamplePartition te = partition_by_trivial_extensions(s.finite, len + 2, c.cfg.search);
    t.expect(same_partition(ec, te), "EC and trivial-extension partitions agree");
    complete &= ec.complete;

    std::mt19937_64 rng(c.cfg.seed);
    std::map<std::uint32_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < s.ec.size(); ++i)
        members[ec.label[i]].push_back(i);
    auto pick = [&](std::size_t i) {
        const auto& m = members[ec.label[i]];
        return m[rng() % m.size()];
    };
    std::size_t certified = 0;
    for (std::size_t k = 0; k < c.cfg.property_samples; ++k) {
        const std::size_t a = rng() % s.ec.size(), b = rng() % s.ec.size(), d = rng() % s.ec.size();
        const EcPath &f1 = s.ec[a], &g1 = s.ec[b];
        const EcPath &f2 = s.ec[pick(a)], &g2 = s.ec[pick(b)];
        t.expect(ec_star(ec_star(f1, g1), s.ec[d]) == ec_star(f1, ec_star(g1, s.ec[d])), "associativity");
        t.expect(equal(ec_star(f1, g1), ec_star(f2, g2)), "congruence for " + f1.to_string() + ", " + g1.to_string());
        const auto hf = class_equal(f1, f2, bound, c.cfg.search);
        const auto hg = class_equal(g1, g2, bound, c.cfg.search);
        if (hf.witness && hg.witness) {
            const EcHomotopy cong = two_sided_congruence(*hf.witness, *hg.witness);
            t.expect(is_ec_homotopy(cong, true) && cong.from() == ec_star(f1, g1) && cong.to() == ec_star(f2, g2),
                     "congruence homotopy for " + f1.to_string() + ", " + g1.to_string());
            ++certified;
        }
    }
    r.status = !t.ok() ? CheckStatus::fail : complete ? CheckStatus::bounded_pass : CheckStatus::bound_exhausted;
    r.detail = std::to_string(s.ec.size()) + " loops at x_1 in Y of length <= " + std::to_string(len) + ", " +
               std::to_string(ec.classes) + " classes, prefix bound " + std::to_string(bound) + ", " +
               std::to_string(certified) + " congruence homotopies built: " + t.summary();
}

// unpointed isomorphism --------------------------------------------------------------------

void check_thm_5_1(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    const std::size_t bound = c.cfg.max_prefix;
    if (bound == 0) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "prefix bound is zero";
        return;
    }
    bool complete = true;
    auto equal = [&](const EcPath& a, const EcPath& b) {
        const auto res = class_equal(a, b, std::max({bound, a.tail_index(), b.tail_index()}), c.cfg.search);
        if (res.verdict == Verdict::bound_exhausted)
            complete = false;
        return res.verdict == Verdict::yes;
    };
    // X: q from x_1 to x_3.
    const FinitePath q(fx.X, {fx.x[1], fx.x[2], fx.x[3]});
    const EcPath F = infty(fx.loop_f), G = infty(fx.loop_g);
    const std::vector<EcPath> xs = {EcPath::constant(fx.X, fx.x[1]), F, G, ec_star(F, G)};
    for (const auto& f : xs) {
        const EcPath moved = conjugate(q, f);
        t.expect(moved.is_loop() && moved.start() == fx.x[3], "q_# lands at x_3");
        t.expect(equal(conjugate(reverse(q), moved), f), "(q^{-1})_# q_# = id on " + f.to_string());
    }
    t.expect(equal(conjugate(q, ec_star(F, G)), ec_star(conjugate(q, F), conjugate(q, G))), "q_# is a homomorphism");
    // Y: winding numbers survive a change of basepoint.
    const FinitePath qy(fx.Y, {fx.y[1], fx.y[2], fx.y[3], fx.y[4]});
    std::mt19937_64 rng(c.cfg.seed);
    for (std::size_t i = 0; i < 20; ++i) {
        const EcPath f = infty(random_loop(fx.Y, fx.y[1], rng() % 16, rng));
        t.expect(winding_number(conjugate(qy, f)) == winding_number(f), "winding preserved for " + f.to_string());
    }
    r.status = !t.ok() ? CheckStatus::fail : complete ? CheckStatus::pass : CheckStatus::bound_exhausted;
    r.detail = t.summary();
}

void check_thm_5_3(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    Tally t;
    // X: H runs from g o f to 1_X, so its reverse runs from 1_X to G o F.
    const Homotopy hx{{fx.H.to(), fx.H.from()}};
    const EcPath F = infty(fx.loop_f), G = infty(fx.loop_g);
    const PointIndex x1 = fx.x[1];
    const auto px = unpointed_iso_pipeline(fx.f, fx.g, hx, x1,
                                           {EcPath::constant(fx.X, x1), F, G, ec_star(F, F)});
    t.expect(px.ok, "Example 3.1: " + px.failure);
    // same pipeline on the cycle with a parallel point
    std::vector<PointIndex> cyc(fx.fig2_y.begin(), fx.fig2_y.end());
    cyc.push_back(fx.fig2_y.front());
    const EcPath C = infty(FinitePath(fx.fig2, cyc));
    const PointIndex p = fx.fig2_y.front();
    const auto pf = unpointed_iso_pipeline(fx.fig2_F, fx.fig2_G, fx.fig2_H, p,
                                           {EcPath::constant(fx.fig2, p), C, ec_inverse(C), ec_star(C, C)});
    t.expect(pf.ok, "Figure 2: " + pf.failure);
    r.certificates.emplace_back("X.img", image_text(*fx.X));
    r.certificates.emplace_back("fig2.img", image_text(*fx.fig2));
    for (std::size_t i = 0; i < px.samples.size(); ++i)
        r.certificates.emplace_back("thm-5.3-X-sample" + std::to_string(i) + ".echom",
                                    ec_homotopy_text("X.img", px.samples[i].chain));
    for (std::size_t i = 0; i < pf.samples.size(); ++i)
        r.certificates.emplace_back("thm-5.3-fig2-sample" + std::to_string(i) + ".echom",
                                    ec_homotopy_text("fig2.img", pf.samples[i].chain));
    r.status = t.ok() ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.summary() + "; " + std::to_string(px.samples.size() + pf.samples.size()) +
               " samples, K endpoint-fixed at every sample";
}

void check_winding_y(const Context& c, CheckResult& r)
{
    const auto& fx = c.fx;
    const std::size_t len = c.cfg.group_loop_len;
    if (len == 0 || c.cfg.max_prefix == 0) {
        r.status = CheckStatus::bound_exhausted;
        r.detail = "loop or prefix bound is zero";
        return;
    }
    const LoopSample s = loop_sample(fx.Y, fx.y[1], len);
    const SamplePartition ec = partition_by_ec(s.ec, c.cfg.max_prefix, c.cfg.search);
    Tally t;
    std::map<std::uint32_t, long> winding_of;
    std::set<long> seen;
    for (std::size_t i = 0; i < s.ec.size(); ++i) {
        const long w = winding_number(s.ec[i]);
        seen.insert(w);
        auto [it, inserted] = winding_of.emplace(ec.label[i], w);
        t.expect(it->second == w, "class of " + s.ec[i].to_string() + " mixes winding numbers");
    }
    // Longer random loops reach winding numbers beyond +-1.
    std::mt19937_64 rng(c.cfg.seed);
    std::map<long, std::vector<EcPath>> by_winding;
    for (const auto& f : s.ec)
        by_winding[winding_number(f)].push_back(f);
    const std::size_t longest = std::max(len, c.cfg.max_prefix);
    for (std::size_t i = 0; i < c.cfg.property_samples; ++i) {
        const EcPath f = infty(random_loop(fx.Y, fx.y[1], rng() % (longest + 1), rng));
        if (f.tail_index() > longest)
            continue;
        by_winding[winding_number(f)].push_back(f);
        seen.insert(winding_number(f));
    }
    std::vector<long> windings;
    for (const auto& [w, fs] : by_winding)
        windings.push_back(w);
    std::size_t tested = 0;
    for (std::size_t k = 0; windings.size() > 1 && k < c.cfg.property_samples; ++k) {
        const long wa = windings[rng() % windings.size()];
        long wb = windings[rng() % windings.size()];
        if (wa == wb)
            wb = windings[(std::find(windings.begin(), windings.end(), wa) - windings.begin() + 1) % windings.size()];
        const auto& a = by_winding[wa][rng() % by_winding[wa].size()];
        const auto& b = by_winding[wb][rng() % by_winding[wb].size()];
        ++tested;
        for (std::size_t bound : {std::max(a.tail_index(), b.tail_index()), c.cfg.max_prefix}) {
            const auto res = class_equal(a, b, std::max({bound, a.tail_index(), b.tail_index()}), c.cfg.search);
            t.expect(res.verdict != Verdict::yes, "distinct windings declared equal: " + a.to_string());
        }
    }
    r.status = t.ok() ? CheckStatus::bounded_pass : CheckStatus::fail;
    r.detail = std::to_string(s.ec.size()) + " loops, " + std::to_string(ec.classes) + " classes, winding numbers " +
               std::to_string(*seen.begin()) + ".." + std::to_string(*seen.rbegin()) + " with random loops, " +
               std::to_string(tested) + " cross-winding pairs: " + t.summary();
}

const std::vector<CheckDef>& checks()
{
    static const std::vector<CheckDef> defs = {
        {"prop-3.2", "Prop 3.2", check_prop_3_2},
        {"prop-3.3", "Prop 3.3", check_prop_3_3},
        {"cor-3.4", "Cor 3.4", check_cor_3_4},
        {"prop-3.5", "Prop 3.5; Figure 2", check_prop_3_5},
        {"sec3-loop-equivalence", "Section 3, f' and g' homotopic in one step", check_loop_equivalence},
        {"sec3-forbidden-stage", "Section 3, unnumbered Proposition, h(k-1)=h(k)=x_1",
         [](const Context& c, CheckResult& r) { check_forbidden_stage(c, r, true); }},
        {"sec3-forbidden-stage-start", "Section 3, unnumbered Proposition, l(0)=l(1)=x_1",
         [](const Context& c, CheckResult& r) { check_forbidden_stage(c, r, false); }},
        {"sec3-tab-inequivalence", "Section 3, f and g not TAB equivalent", check_tab_inequivalence},
        {"sec3-tab-nullhomotopy", "Section 3, TAB nullhomotopy of f*g^{-1}", check_tab_nullhomotopy},
        {"ex-4.2", "Example 4.2", check_example_4_2},
        {"ex-4.12", "Example 4.12", check_example_4_12},
        {"ec-calculus", "Prop 4.4; Lemmas 4.5-4.7", check_ec_calculus},
        {"thm-4.8", "Thm 4.8; Thm 4.15", check_thm_4_8},
        {"group-Y", "Thm 2.10; Prop 4.14; Thm 4.15", check_group_y},
        {"thm-5.1", "Thm 5.1", check_thm_5_1},
        {"thm-5.3", "Thm 5.3; Figure 2", check_thm_5_3},
        {"winding-Y", "Thm 4.15, winding oracle on Y", check_winding_y},
    };
    return defs;
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

}  // namespace

std::vector<std::string> verify_check_ids()
{
    std::vector<std::string> ids = {"fixtures"};
    for (const auto& d : checks())
        ids.push_back(d.id);
    return ids;
}

VerificationReport verify_paper(const VerifyConfig& config)
{
    const auto start = Clock::now();
    VerificationReport report;
    auto selected = [&](const std::string& id) {
        return config.only.empty() || std::find(config.only.begin(), config.only.end(), id) != config.only.end();
    };

    CheckResult fixtures{"fixtures", "Example 3.1; Figure 2; Examples 4.2, 4.12", CheckStatus::pass, "", {}, 0};
    std::optional<PaperFixtures> fx;
    try {
        fx = load_fixtures(config.fixtures);
        fixtures.detail = std::to_string(fx->catalog.size()) + " fixtures validated";
    } catch (const Error& e) {
        fixtures.status = CheckStatus::fail;
        fixtures.detail = e.what();
    }
    fixtures.seconds = since(start);
    report.checks.push_back(fixtures);
    if (!fx) {
        report.seconds = since(start);
        return report;
    }

    std::vector<const CheckDef*> todo;
    for (const auto& d : checks())
        if (selected(d.id))
            todo.push_back(&d);
    std::vector<CheckResult> results(todo.size());
    const Context ctx{*fx, config};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < todo.size(); i = next++) {
            CheckResult& r = results[i];
            r.id = todo[i]->id;
            r.anchor = todo[i]->anchor;
            const auto t0 = Clock::now();
            try {
                todo[i]->run(ctx, r);
            } catch (const BudgetExceeded& e) {
                r.status = CheckStatus::bound_exhausted;
                r.detail = e.what();
            } catch (const std::exception& e) {
                r.status = CheckStatus::fail;
                r.detail = std::string("error: ") + e.what();
            }
            r.seconds = since(t0);
        }
    };
    const std::size_t n = std::max<std::size_t>(1, std::min(config.threads, todo.size()));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < n; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (auto& r : results)
        report.checks.push_back(std::move(r));
    report.seconds = since(start);
    return report;
}

void write_text(std::ostream& out, const VerificationReport& report)
{
    for (const auto& c : report.checks) {
        out << to_string(c.status) << "  " << c.id << "  [" << c.anchor << "]  ";
        out.precision(3);
        out << std::fixed << c.seconds << "s  " << c.detail << '\n';
    }
    out << "summary: " << report.count(CheckStatus::pass) << " pass, " << report.count(CheckStatus::bounded_pass)
        << " bounded-pass, " << report.count(CheckStatus::bound_exhausted) << " bound-exhausted, "
        << report.count(CheckStatus::fail) << " fail, " << report.seconds << "s\n";
}

void write_kv(std::ostream& out, const VerificationReport& report)
{
    out.precision(6);
    out << std::fixed;
    for (const auto& c : report.checks) {
        const std::string k = "check." + c.id + ".";
        out << k << "anchor=" << c.anchor << '\n';
        out << k << "status=" << to_string(c.status) << '\n';
        out << k << "seconds=" << c.seconds << '\n';
        out << k << "detail=" << c.detail << '\n';
        for (const auto& cert : c.certificates)
            out << k << "certificate=" << cert.first << '\n';
    }
    out << "summary.fail=" << report.count(CheckStatus::fail) << '\n';
    out << "summary.seconds=" << report.seconds << '\n';
}

}  // namespace dht
