#include <doctest.h>

#include <random>

#include "dht/ec.hpp"
#include "dht/fixtures.hpp"
#include "dht/random.hpp"

using namespace dht;

namespace {

std::vector<ImagePtr> sample_images(std::mt19937_64& rng)
{
    const auto fx = load_fixtures();
    std::vector<ImagePtr> out = {fx.X, fx.Y, fx.fig2};
    for (int i = 0; i < 3; ++i)
        out.push_back(random_connected_image(8, rng));
    return out;
}

}  // namespace

TEST_CASE("canonical form drops trailing repeats")
{
    const auto fx = load_fixtures();
    const EcPath e(fx.Y, {fx.y[1], fx.y[2], fx.y[2]}, fx.y[2]);
    CHECK(e.tail_index() == 1);
    CHECK(e.prefix() == std::vector<PointIndex>{fx.y[1]});
    CHECK(e(0) == fx.y[1]);
    CHECK(e(100) == fx.y[2]);
    CHECK_THROWS_AS(EcPath(fx.Y, {fx.y[1], fx.y[5]}, fx.y[5]), Error);
}

TEST_CASE("minus and infty round trip")
{
    std::mt19937_64 rng(41);
    for (const auto& im : sample_images(rng)) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto f = random_loop(im, 0, 5, rng);
            const EcPath e = infty(f);
            CHECK(infty(minus(e)) == e);
            CHECK(is_trivial_extension(f, minus(e)));
            for (std::size_t n = 0; n <= f.length() + 3; ++n)
                CHECK(e(n) == f[std::min(n, f.length())]);
        }
    }
}

TEST_CASE("star is concatenation of the finite parts")
{
    std::mt19937_64 rng(43);
    for (const auto& im : sample_images(rng)) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto f = random_loop(im, 0, 4, rng);
            const auto g = random_loop(im, 0, 4, rng);
            const EcPath s = ec_star(infty(f), infty(g));
            CHECK(s == infty(product(minus(infty(f)), minus(infty(g)))));
            // pointwise against the definition
            const EcPath a = infty(f), b = infty(g);
            for (std::size_t n = 0; n < a.tail_index() + b.tail_index() + 3; ++n) {
                const PointIndex want = n <= a.tail_index() ? a(n) : b(n - a.tail_index());
                CHECK(s(n) == want);
            }
        }
    }
}

TEST_CASE("inverse reverses the prefix")
{
    std::mt19937_64 rng(47);
    const auto fx = load_fixtures();
    for (int trial = 0; trial < 50; ++trial) {
        const EcPath e = infty(random_loop(fx.X, fx.x[1], 6, rng));
        const EcPath r = ec_inverse(e);
        const std::size_t N = e.tail_index();
        for (std::size_t n = 0; n <= N; ++n)
            CHECK(r(n) == e(N - n));
        // leading repeats of e become trailing repeats of r and are dropped
        CHECK(is_trivial_extension(minus(e), minus(ec_inverse(r))));
    }
}

TEST_CASE("absorb, lift and restrict produce valid homotopies")
{
    std::mt19937_64 rng(53);
    for (const auto& im : sample_images(rng)) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_loop(im, 0, 5, rng);
            const auto fbar = random_trivial_extension(f, 3, rng);
            const auto a = absorb(f, fbar);
            CHECK(is_ec_homotopy(a, true));
            CHECK(a.from() == infty(f));
            CHECK(a.to() == infty(fbar));

            const auto h = random_path_homotopy(fbar, 6, LoopConstraints::endpoints_fixed(), rng);
            const auto l = lift(h);
            CHECK(is_ec_homotopy(l, true));
            const auto r = restrict(l);
            CHECK(is_path_homotopy(r));
            CHECK(holds_endpoints_fixed(r));
            CHECK(is_ec_homotopy(reversed(l), true));
            CHECK(is_ec_homotopy(concat(a, l), true));
        }
    }
}

TEST_CASE("reduction chains are valid and idempotent")
{
    std::mt19937_64 rng(59);
    for (const auto& im : sample_images(rng)) {
        for (int trial = 0; trial < 20; ++trial) {
            const EcPath e = infty(random_loop(im, 0, 8, rng));
            const auto r = ec_reduce(e);
            CHECK(r.chain.from() == e);
            CHECK(r.chain.to() == r.normal);
            CHECK(is_ec_homotopy(r.chain, true));
            CHECK(ec_reduce(r.normal).normal == r.normal);
            CHECK(r.normal.tail_index() <= e.tail_index());
        }
    }
}

TEST_CASE("truncated family of the two-point example fails at stage 1")
{
    const auto fx = load_fixtures();
    const auto c = check_ec_family(fx.ex42_family, false);
    CHECK_FALSE(c.ok);
    REQUIRE(c.stage);
    CHECK(*c.stage == 1);
}

TEST_CASE("stagewise star on [0,2] matches the displayed sequences")
{
    const auto fx = load_fixtures();
    const auto raw = stagewise_star(fx.ex412_H, fx.ex412_f);
    REQUIRE(raw.size() == fx.ex412_H.size());
    for (std::size_t n = 0; n < fx.ex412_K_display.size(); ++n)
        CHECK(raw[0](n) == fx.ex412_K_display[n]);
    for (std::size_t n = 0; n < fx.ex412_L_display.size(); ++n)
        CHECK(raw[1](n) == fx.ex412_L_display[n]);
    const auto p0 = fx.ex412_image->point(raw[0](6)), p1 = fx.ex412_image->point(raw[1](6));
    CHECK(p0 == LatticePoint{2});
    CHECK(p1 == LatticePoint{0});
    CHECK_FALSE(is_ec_homotopy(EcHomotopy{raw}, true));
    CHECK(is_ec_homotopy(ec_star_with_padding(fx.ex412_H, fx.ex412_f), true));
}

TEST_CASE("ec_homotopic finds the one-step pair and rejects distinct endpoints")
{
    const auto fx = load_fixtures();
    const auto r = ec_homotopic(infty(fx.loop_f), infty(fx.loop_g), true, 12);
    CHECK(r.verdict == Verdict::yes);
    REQUIRE(r.witness);
    CHECK(is_ec_homotopy(*r.witness, true));

    const EcPath a(fx.X, {fx.x[1]}, fx.x[2]);
    const EcPath b = EcPath::constant(fx.X, fx.x[1]);
    CHECK(ec_homotopic(a, b, true, 4).verdict == Verdict::exact_no);
    CHECK_THROWS_AS(ec_homotopic(infty(fx.loop_f), b, true, 3), Error);
}
