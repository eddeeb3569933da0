#include <doctest.h>

#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "dht/fixtures.hpp"
#include "dht/paths.hpp"
#include "dht/random.hpp"

using namespace dht;

namespace {

// f o s over every nondecreasing surjection s: [0, len] -> [0, m]
std::set<std::vector<PointIndex>> brute_extensions(const FinitePath& f, std::size_t len)
{
    std::set<std::vector<PointIndex>> out;
    const std::size_t m = f.length();
    std::vector<PointIndex> cur;
    auto rec = [&](auto&& self, std::size_t t, std::size_t j) -> void {
        if (t == len + 1) {
            if (j == m)
                out.insert(cur);
            return;
        }
        for (std::size_t next : {j, j + 1}) {
            if (t == 0 && next != 0)
                continue;
            if (next > m)
                continue;
            cur.push_back(f[next]);
            self(self, t + 1, next);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// component labels by BFS over the full one-step neighbors
std::map<State, int> brute_components(const LoopSpace& space)
{
    std::map<State, int> label;
    int next = 0;
    space.enumerate([&](const State& s) {
        if (label.count(s))
            return true;
        label[s] = next;
        std::queue<State> q;
        q.push(s);
        while (!q.empty()) {
            State a = q.front();
            q.pop();
            space.neighbors(a, [&](const State& b) {
                if (!label.count(b)) {
                    label[b] = next;
                    q.push(b);
                }
                return true;
            });
        }
        ++next;
        return true;
    });
    return label;
}

void check_partition(const LoopSpace& space)
{
    const auto brute = brute_components(space);
    const auto part = partition_loop_space(space, 1'000'000);
    REQUIRE(part.states.size() == brute.size());
    std::map<int, std::uint32_t> to_part;
    std::set<std::uint32_t> used;
    for (std::size_t i = 0; i < part.states.size(); ++i) {
        const int b = brute.at(part.states[i]);
        auto [it, fresh] = to_part.emplace(b, part.component[i]);
        if (fresh)
            CHECK(used.insert(part.component[i]).second);
        CHECK(it->second == part.component[i]);
    }
    CHECK(part.component_count == to_part.size());
}

}  // namespace

TEST_CASE("trivial extensions match brute enumeration")
{
    std::mt19937_64 rng(17);
    const auto fx = load_fixtures();
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_loop(fx.X, fx.x[1], 2 + trial % 4, rng);
        for (std::size_t len = f.length(); len <= f.length() + 3; ++len) {
            const auto brute = brute_extensions(f, len);
            const auto got = enumerate_trivial_extensions(f, len);
            std::set<std::vector<PointIndex>> got_set;
            for (const auto& e : got) {
                got_set.insert(e.values());
                CHECK(is_trivial_extension(e, f));
            }
            CHECK(got.size() == got_set.size());
            CHECK(got_set == brute);
        }
    }
}

TEST_CASE("is_trivial_extension rejects non-extensions")
{
    const auto fx = load_fixtures();
    CHECK(is_trivial_extension(fx.loop_f_ext, fx.loop_f));
    CHECK(is_trivial_extension(fx.loop_g_ext, fx.loop_g));
    CHECK_FALSE(is_trivial_extension(fx.loop_g_ext, fx.loop_f));
    CHECK_FALSE(is_trivial_extension(fx.loop_f, fx.loop_f_ext));
}

TEST_CASE("run moves give the same components as one-step moves")
{
    const auto fx = load_fixtures();
    SUBCASE("loops in Y")
    {
        for (std::size_t len = 2; len <= 7; ++len)
            check_partition(LoopSpace(fx.Y, len, LoopConstraints::endpoints_fixed(), fx.y[1], fx.y[1]));
    }
    SUBCASE("paths in X between two points")
    {
        for (std::size_t len = 3; len <= 6; ++len)
            check_partition(LoopSpace(fx.X, len, LoopConstraints::endpoints_fixed(), fx.x[1], fx.x[4]));
    }
    SUBCASE("free ends")
    {
        LoopConstraints c;
        c.ends = LoopConstraints::Ends::free;
        check_partition(LoopSpace(fx.Y, 3, c));
    }
    SUBCASE("forbidden pairs")
    {
        for (std::size_t len = 4; len <= 7; ++len) {
            LoopConstraints c;
            c.forbidden_pairs.push_back({len - 1, fx.x[1], fx.x[1]});
            c.forbidden_pairs.push_back({0, fx.x[1], fx.x[1]});
            check_partition(LoopSpace(fx.X, len, c, fx.x[1], fx.x[1]));
        }
    }
    SUBCASE("TAB stages")
    {
        LoopConstraints c;
        c.tab_basepoint = fx.x[1];
        for (std::size_t len = 4; len <= 7; ++len)
            check_partition(LoopSpace(fx.X, len, c, fx.x[1], fx.x[1]));
    }
    SUBCASE("random images")
    {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            auto im = random_connected_image(6, rng);
            check_partition(LoopSpace(im, 4, LoopConstraints::endpoints_fixed(), 0, 0));
        }
    }
}

TEST_CASE("run_search agrees with full-neighbor shortest_path on reachability")
{
    const auto fx = load_fixtures();
    LoopConstraints c;
    c.forbidden_pairs.push_back({7, fx.x[1], fx.x[1]});
    const LoopSpace space(fx.X, 8, c, fx.x[1], fx.x[1]);
    std::vector<State> all;
    space.enumerate([&](const State& s) {
        all.push_back(s);
        return true;
    });
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
        const State a = all[pick(rng)], b = all[pick(rng)];
        const auto fast = space.run_search(a, {b}, 1'000'000);
        const auto slow = shortest_path(a, {b}, space.neighbor_fn(), 1'000'000);
        CHECK((fast.status == SearchStatus::found) == (slow.status == SearchStatus::found));
        if (fast.status == SearchStatus::found) {
            REQUIRE(fast.path.front() == a);
            REQUIRE(fast.path.back() == b);
            std::vector<FinitePath> stages;
            for (const auto& s : fast.path)
                stages.emplace_back(fx.X, unpack(s));
            CHECK(is_path_homotopy(PathHomotopy{stages}));
        }
    }
}

TEST_CASE("f' and g' are one step apart")
{
    const auto fx = load_fixtures();
    CHECK(is_path_homotopy(fx.ext_one_step));
    CHECK(holds_endpoints_fixed(fx.ext_one_step));
    CHECK(fx.ext_one_step.steps() == 1);
    CHECK(fx.ext_one_step.from() == fx.loop_f_ext);
    CHECK(fx.ext_one_step.to() == fx.loop_g_ext);
}

TEST_CASE("loops_reachable preconditions and targets")
{
    const auto fx = load_fixtures();
    const std::size_t k = fx.loop_f_ext.length();
    LoopConstraints end_pair;
    end_pair.forbidden_pairs.push_back({k - 1, fx.x[1], fx.x[1]});
    // f' ends with x1, x1, so it is itself excluded
    CHECK_THROWS_AS(loops_reachable(fx.loop_f_ext, end_pair, fx.loop_g_ext), Error);

    const auto q = loops_reachable(fx.loop_f_ext, LoopConstraints::endpoints_fixed(), fx.loop_g_ext);
    CHECK(q.status == SearchStatus::found);
    REQUIRE(q.witness);
    CHECK(q.witness->steps() == 1);

    const auto fg = loops_reachable(fx.loop_f, LoopConstraints::endpoints_fixed(), fx.loop_g);
    CHECK(fg.status == SearchStatus::exhausted);
}

TEST_CASE("reachable set without a target is closed and contains the start")
{
    const auto fx = load_fixtures();
    const auto f = FinitePath(fx.Y, {fx.y[1], fx.y[2], fx.y[2], fx.y[1], fx.y[1]});
    const auto q = loops_reachable(f, LoopConstraints::endpoints_fixed());
    CHECK(std::find(q.reachable.begin(), q.reachable.end(), f) != q.reachable.end());
    CHECK(std::find(q.reachable.begin(), q.reachable.end(), FinitePath::constant(fx.Y, fx.y[1], 4)) !=
          q.reachable.end());
}

TEST_CASE("f and g trivial extensions split on the end pair")
{
    const auto fx = load_fixtures();
    for (std::size_t k = 11; k <= 12; ++k) {
        LoopConstraints c;
        c.forbidden_pairs.push_back({k - 1, fx.x[1], fx.x[1]});
        const LoopSpace space(fx.X, k, c, fx.x[1], fx.x[1]);
        const auto part = partition_loop_space(space, 10'000'000);
        std::set<std::uint32_t> from_f, from_g;
        for (const auto& e : enumerate_trivial_extensions(fx.loop_f, k))
            if (auto comp = part.component_of(pack(e.values())))
                from_f.insert(*comp);
        for (const auto& e : enumerate_trivial_extensions(fx.loop_g, k))
            if (auto comp = part.component_of(pack(e.values())))
                from_g.insert(*comp);
        CHECK_FALSE(from_f.empty());
        CHECK_FALSE(from_g.empty());
        for (auto c1 : from_f)
            CHECK(from_g.count(c1) == 0);
    }
}

TEST_CASE("the start-pair variant has a one-step counterexample")
{
    // a trivial extension of f and one of g, neither starting x1, x1,
    // joined by one endpoint-fixed step
    const auto fx = load_fixtures();
    auto at = [&](std::vector<int> labels) {
        std::vector<PointIndex> v;
        for (int l : labels)
            v.push_back(fx.x[l]);
        return FinitePath(fx.X, v);
    };
    const auto a = at({1, 2, 3, 4, 5, 6, 6, 7, 8, 9, 10, 1});
    const auto b = at({1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 1});
    CHECK(is_trivial_extension(a, fx.loop_f));
    CHECK(is_trivial_extension(b, fx.loop_g));
    CHECK_FALSE((a[0] == fx.x[1] && a[1] == fx.x[1]));
    CHECK_FALSE((b[0] == fx.x[1] && b[1] == fx.x[1]));
    const PathHomotopy h{{a, b}};
    CHECK(is_path_homotopy(h));
    CHECK(holds_endpoints_fixed(h));
}

TEST_CASE("TAB predicates")
{
    const auto fx = load_fixtures();
    CHECK(is_tab(fx.loop_f, fx.x[1]));
    CHECK(is_tab(fx.loop_g, fx.x[1]));
    CHECK_FALSE(is_tab(fx.loop_f_ext, fx.x[1]));
    CHECK_FALSE(is_tab(FinitePath::constant(fx.X, fx.x[1], 2), fx.x[1]));
    CHECK(is_tab(FinitePath::constant(fx.X, fx.x[1], 0), fx.x[1]));
}

TEST_CASE("f and g are not TAB equivalent within length 12")
{
    const auto fx = load_fixtures();
    const auto r = tab_equivalent(fx.loop_f, fx.loop_g, fx.x[1], 12);
    CHECK(r.verdict == Verdict::no_within_bound);
    CHECK_FALSE(r.witness);
}

TEST_CASE("random path homotopies validate")
{
    std::mt19937_64 rng(31);
    const auto fx = load_fixtures();
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_trivial_extension(random_loop(fx.Y, fx.y[1], 6, rng), 2, rng);
        const auto h = random_path_homotopy(f, 10, LoopConstraints::endpoints_fixed(), rng);
        CHECK(is_path_homotopy(h));
        CHECK(holds_endpoints_fixed(h));
        const auto q = loops_reachable(f, LoopConstraints::endpoints_fixed(), h.to());
        CHECK(q.status == SearchStatus::found);
        CHECK(q.witness->steps() <= h.steps());
    }
}

TEST_CASE("path file parsing")
{
    std::istringstream in("path X.img\n9\n7\n9\n");
    const auto p = parse_path_file(in);
    CHECK(p.image_file == "X.img");
    CHECK(p.values == std::vector<PointIndex>{9, 7, 9});
}
