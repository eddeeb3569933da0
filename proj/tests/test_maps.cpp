#include <doctest.h>

#include <map>
#include <queue>
#include <set>
#include <random>

#include "dht/fixtures.hpp"
#include "dht/maps.hpp"
#include "dht/random.hpp"

using namespace dht;

namespace {

bool brute_continuous(const DigitalImage& s, const DigitalImage& t, const std::vector<PointIndex>& table)
{
    for (PointIndex a = 0; a < s.size(); ++a)
        for (PointIndex b = 0; b < s.size(); ++b)
            if (s.adjacent(a, b) && !(table[a] == table[b] || t.adjacent(table[a], table[b])))
                return false;
    return true;
}

// every table, continuous or not
std::vector<std::vector<PointIndex>> all_tables(std::size_t n, std::size_t m)
{
    std::vector<std::vector<PointIndex>> out;
    std::vector<PointIndex> t(n, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = 0;
        while (i < n && ++t[i] == m)
            t[i++] = 0;
        if (i == n)
            break;
    }
    return out;
}

// maps reachable from f by one-step moves, found by plain BFS over continuous tables
std::set<std::vector<PointIndex>> brute_homotopy_class(const ImagePtr& s, const ImagePtr& t, const std::vector<PointIndex>& f)
{
    std::vector<std::vector<PointIndex>> cont;
    for (auto& table : all_tables(s->size(), t->size()))
        if (brute_continuous(*s, *t, table))
            cont.push_back(table);
    auto close = [&](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i] || t->adjacent(a[i], b[i])))
                return false;
        return true;
    };
    std::set<std::vector<PointIndex>> seen{f};
    std::queue<std::vector<PointIndex>> q;
    q.push(f);
    while (!q.empty()) {
        auto a = q.front();
        q.pop();
        for (const auto& b : cont)
            if (!seen.count(b) && close(a, b)) {
                seen.insert(b);
                q.push(b);
            }
    }
    return seen;
}

}  // namespace

TEST_CASE("continuity matches the definition")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = random_connected_image(5, rng);
        auto t = random_connected_image(5, rng);
        for (auto& table : all_tables(s->size(), t->size()))
            CHECK(is_continuous(DigitalMap(s, t, table)) == brute_continuous(*s, *t, table));
    }
}

TEST_CASE("homotopic agrees with brute reachability on small images")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        auto s = random_connected_image(4, rng);
        auto t = random_connected_image(5, rng);
        std::vector<std::vector<PointIndex>> cont;
        for (auto& table : all_tables(s->size(), t->size()))
            if (brute_continuous(*s, *t, table))
                cont.push_back(table);
        std::uniform_int_distribution<std::size_t> pick(0, cont.size() - 1);
        const auto f = cont[pick(rng)];
        const auto cls = brute_homotopy_class(s, t, f);
        for (int k = 0; k < 5; ++k) {
            const auto g = cont[pick(rng)];
            const auto w = homotopic(DigitalMap(s, t, f), DigitalMap(s, t, g));
            CHECK(w.has_value() == (cls.count(g) != 0));
            if (w)
                CHECK(is_homotopy(*w));
        }
    }
}

TEST_CASE("Prop 3.2 fixtures")
{
    const auto fx = load_fixtures();
    CHECK(is_continuous(fx.f));
    CHECK(is_continuous(fx.g));
    CHECK(is_homotopy(fx.H));
    CHECK(is_homotopy(fx.K));
    CHECK(fx.H.steps() == 1);
    CHECK(fx.K.steps() == 1);
    CHECK(verify_homotopy_equivalence(fx.f, fx.g).equivalent);
}

TEST_CASE("pointed neighbors of the identity in Y are trivial")
{
    const auto fx = load_fixtures();
    for (PointIndex y = 0; y < fx.Y->size(); ++y) {
        const auto nb = pointed_neighbors_of_identity(fx.Y, y);
        REQUIRE(nb.size() == 1);
        CHECK(nb[0] == DigitalMap::identity(fx.Y));
    }
    const auto nx = pointed_neighbors_of_identity(fx.X, fx.x[0]);
    REQUIRE(nx.size() == 1);
    CHECK(nx[0] == DigitalMap::identity(fx.X));
}

TEST_CASE("a free neighbor of the identity in X exists")
{
    const auto fx = load_fixtures();
    // f moves every point, yet g o f is one step from the identity
    CHECK(one_step(compose(fx.g, fx.f), DigitalMap::identity(fx.X)));
}

TEST_CASE("no pointed equivalence")
{
    const auto fx = load_fixtures();
    CHECK(no_pointed_equivalence(fx.X, fx.Y));
    CHECK(no_pointed_equivalence(fx.fig2, fx.fig2_cycle));
}

TEST_CASE("isomorphism search")
{
    auto a = make_image({1}, std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 1}});
    auto b = make_image({1}, std::vector<LatticePoint>{{5, 5}, {6, 5}, {6, 6}});
    auto c = make_image({2}, std::vector<LatticePoint>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(find_isomorphism(a, b).has_value());
    CHECK(find_isomorphism(a, c).has_value());
    auto d = make_image({2}, std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 1}});
    CHECK_FALSE(find_isomorphism(a, d).has_value());
}
