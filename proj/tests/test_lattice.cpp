#include <doctest.h>

#include <random>
#include <sstream>

#include "dht/fixtures.hpp"
#include "dht/lattice.hpp"
#include "dht/random.hpp"

using namespace dht;

namespace {

// adjacency straight from the definition
bool brute_adjacent(const LatticePoint& p, const LatticePoint& q, int u)
{
    int differ = 0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        const auto d = p[i] - q[i];
        if (d < -1 || d > 1)
            return false;
        differ += d != 0;
    }
    return differ >= 1 && differ <= u;
}

// flood fill over the brute adjacency
std::size_t brute_component_count(const DigitalImage& im)
{
    const auto& pts = im.points();
    std::vector<int> seen(pts.size(), 0);
    std::size_t count = 0;
    for (std::size_t s = 0; s < pts.size(); ++s) {
        if (seen[s])
            continue;
        ++count;
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < pts.size(); ++b)
                if (!seen[b] && brute_adjacent(pts[a], pts[b], im.adjacency().u)) {
                    seen[b] = 1;
                    stack.push_back(b);
                }
        }
    }
    return count;
}

}  // namespace

TEST_CASE("c_u adjacency matches the definition on a 3d block")
{
    std::vector<LatticePoint> pts;
    for (Coord a = 0; a < 3; ++a)
        for (Coord b = 0; b < 3; ++b)
            for (Coord c = 0; c < 3; ++c)
                pts.push_back({a, b, c});
    for (int u = 1; u <= 3; ++u)
        for (const auto& p : pts)
            for (const auto& q : pts)
                CHECK(cu_adjacent(p, q, {u}) == brute_adjacent(p, q, u));
}

TEST_CASE("adjacency rejects bad parameters")
{
    CHECK_THROWS_AS(cu_adjacent({0, 0}, {0, 0, 0}, {1}), Error);
    CHECK_THROWS_AS(cu_adjacent({0, 0}, {1, 1}, {3}), Error);
    CHECK_THROWS_AS(make_image({1}, std::vector<LatticePoint>{{0, 0}, {0, 0}}), Error);
}

TEST_CASE("points are indexed in lexicographic order")
{
    auto im = make_image({2}, std::vector<LatticePoint>{{1, 0}, {0, 1}, {0, 0}});
    CHECK(im->point(0) == LatticePoint{0, 0});
    CHECK(im->point(1) == LatticePoint{0, 1});
    CHECK(im->point(2) == LatticePoint{1, 0});
    CHECK(im->index_of({1, 0}) == 2);
    CHECK_THROWS_AS(im->index_of({5, 5}), Error);
}

TEST_CASE("index layout of X")
{
    const auto fx = load_fixtures();
    const std::vector<PointIndex> expected = {10, 9, 7, 4, 2, 1, 0, 3, 5, 8, 6};
    CHECK(fx.x == expected);
    CHECK(fx.X->size() == 11);
    CHECK(fx.Y->size() == 10);
}

TEST_CASE("components agree with a brute flood fill on random images")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> coord(0, 4);
        std::vector<LatticePoint> pts;
        for (int i = 0; i < 8; ++i) {
            LatticePoint p{coord(rng), coord(rng)};
            if (std::find(pts.begin(), pts.end(), p) == pts.end())
                pts.push_back(p);
        }
        const int u = 1 + trial % 2;
        auto im = make_image({u}, pts);
        CHECK(components(*im).size() == brute_component_count(*im));
        for (PointIndex a = 0; a < im->size(); ++a)
            for (PointIndex b = 0; b < im->size(); ++b)
                CHECK(im->adjacent(a, b) == brute_adjacent(im->point(a), im->point(b), u));
    }
}

TEST_CASE("random connected images are connected")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        auto im = random_connected_image(8, rng);
        CHECK(im->size() <= 8);
        CHECK(brute_component_count(*im) == 1);
    }
}

TEST_CASE("image text round trip")
{
    const auto fx = load_fixtures();
    std::stringstream ss;
    write_image(ss, *fx.X);
    CHECK(parse_image(ss) == *fx.X);
}

TEST_CASE("distance in the 10-cycle")
{
    const auto fx = load_fixtures();
    CHECK(fx.Y->distance(fx.y[1], fx.y[6]) == 5u);
    CHECK(fx.Y->distance(fx.y[1], fx.y[9]) == 2u);
}
