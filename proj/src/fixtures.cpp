#include "dht/fixtures.hpp"

#include <algorithm>

#include "dht/fundamental.hpp"

namespace dht {

namespace {

[[noreturn]] void invalid(const std::string& name, const std::string& where, const std::string& why)
{
    throw Error("fixture " + name + " (" + where + "): " + why);
}

void require(bool ok, const std::string& name, const std::string& where, const std::string& why)
{
    if (!ok)
        invalid(name, where, why);
}

FinitePath path_of(const ImagePtr& image, const std::vector<PointIndex>& labels, const std::vector<PointIndex>& index)
{
    std::vector<PointIndex> v;
    for (PointIndex l : labels)
        v.push_back(index.at(l));
    return FinitePath(image, std::move(v));
}

}  // namespace

bool is_cycle_with_parallel_point(const DigitalImage& image, std::size_t cycle_length, std::string* why)
{
    auto fail = [&](std::string w) {
        if (why)
            *why = std::move(w);
        return false;
    };
    if (image.size() != cycle_length + 1)
        return fail("expected " + std::to_string(cycle_length + 1) + " points, found " + std::to_string(image.size()));
    if (!is_connected(image))
        return fail("image is not connected");
    std::vector<PointIndex> deg3;
    for (PointIndex i = 0; i < image.size(); ++i) {
        const std::size_t d = image.neighbors(i).size();
        if (d == 3)
            deg3.push_back(i);
        else if (d != 2)
            return fail("point " + image.point(i).to_string() + " has degree " + std::to_string(d));
    }
    if (deg3.size() != 2)
        return fail("expected two points of degree 3, found " + std::to_string(deg3.size()));
    if (image.adjacent(deg3[0], deg3[1]))
        return fail("the two degree-3 points are adjacent");
    std::vector<PointIndex> parallel;
    for (PointIndex i = 0; i < image.size(); ++i)
        if (image.neighbors(i).size() == 2 && image.adjacent(i, deg3[0]) && image.adjacent(i, deg3[1]))
            parallel.push_back(i);
    if (parallel.size() != 2)
        return fail("expected two degree-2 points adjacent to both degree-3 points, found " +
                    std::to_string(parallel.size()));
    for (PointIndex c : parallel) {
        const DigitalImage rest = image.without({image.point(c)});
        if (!is_simple_closed_curve(rest))
            return fail("removing " + image.point(c).to_string() + " does not leave a simple closed curve");
    }
    return true;
}

PaperFixtures load_fixtures(const FixtureOptions& options)
{
    PaperFixtures fx;
    const std::string ex31 = "Example 3.1";
    fx.catalog = {
        {"X", ex31, "11 points x_0..x_10 in Z^2, c_2"},
        {"Y", ex31, "X without x_0, a 10-cycle"},
        {"f", "Prop 3.2", "x_i -> x_{i+1} for i <= 9, x_10 -> x_1"},
        {"g", "Prop 3.2", "inclusion Y -> X"},
        {"H", "Prop 3.2", "one step from g o f to 1_X"},
        {"K", "Prop 3.2", "one step from f o g to 1_Y"},
        {"loop_f", "Section 3", "(x_1,...,x_10,x_1)"},
        {"loop_g", "Section 3", "(x_1,...,x_9,x_0,x_1)"},
        {"loop_f_ext", "Section 3", "f' = (x_1,...,x_10,x_1,x_1)"},
        {"loop_g_ext", "Section 3", "g' = (x_1,x_1,x_2,...,x_9,x_0,x_1)"},
        {"fg_inverse", "Section 3", "f * g^{-1} as displayed"},
        {"tab_first_step", "Section 3", "first stage of the TAB nullhomotopy"},
        {"fig2", "Figure 2", "12-cycle plus one point, c_1"},
        {"fig2_cycle", "Figure 2", "the 12-cycle"},
        {"ex42", "Example 4.2", "f = g = (0,1,1,...) on [0,1]_Z and the alternating stage"},
        {"ex412", "Example 4.12", "f = g = (0,1,2,1,0,0,...) and H_1 differing at n = 5"},
    };

    // X and Y
    std::vector<LatticePoint> xs = {{2, 0},  {1, 1},   {0, 2},  {-1, 2}, {-2, 1}, {-2, 0},
                                    {-2, -1}, {-1, -2}, {0, -2}, {1, -1}, {0, 0}};
    if (options.corrupt_point) {
        if (*options.corrupt_point >= xs.size())
            throw Error("corrupt_point must name one of x_0..x_10");
        auto c = xs[*options.corrupt_point].coords();
        c[0] += 1;
        xs[*options.corrupt_point] = LatticePoint(c);
    }
    try {
        fx.X = make_image(2, AdjacencySpec{2}, xs);
        fx.Y = std::make_shared<const DigitalImage>(fx.X->without({xs[0]}));
    } catch (const Error& e) {
        invalid("X", ex31, e.what());
    }
    for (const auto& p : xs)
        fx.x.push_back(fx.X->index_of(p));
    fx.y.push_back(0);
    for (std::size_t i = 1; i < xs.size(); ++i)
        fx.y.push_back(fx.Y->index_of(xs[i]));
    require(fx.X->size() == 11 && is_connected(*fx.X), "X", ex31, "X must have 11 points and be connected");
    require(is_simple_closed_curve(*fx.Y) && fx.Y->size() == 10, "Y", ex31, "Y must be a 10-cycle");
    {
        std::string why;
        require(is_cycle_with_parallel_point(*fx.X, 10, &why), "X", ex31, why);
    }

    // equivalence maps and homotopies
    {
        std::vector<PointIndex> ft(11);
        for (std::size_t i = 0; i <= 9; ++i)
            ft[fx.x[i]] = fx.y[i + 1];
        ft[fx.x[10]] = fx.y[1];
        fx.f = DigitalMap(fx.X, fx.Y, ft);
        fx.g = DigitalMap::inclusion(fx.Y, fx.X);
        require(is_continuous(fx.f), "f", "Prop 3.2", "f is not continuous");
        require(is_continuous(fx.g), "g", "Prop 3.2", "g is not continuous");
        fx.H = Homotopy{{compose(fx.g, fx.f), DigitalMap::identity(fx.X)}};
        fx.K = Homotopy{{compose(fx.f, fx.g), DigitalMap::identity(fx.Y)}};
        require(is_homotopy(fx.H) && fx.H.steps() == 1, "H", "Prop 3.2", "H is not a one-step homotopy");
        require(is_homotopy(fx.K) && fx.K.steps() == 1, "K", "Prop 3.2", "K is not a one-step homotopy");
    }

    // loops at x_1
    try {
        fx.loop_f = path_of(fx.X, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 1}, fx.x);
        fx.loop_g = path_of(fx.X, {1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1}, fx.x);
        fx.loop_f_ext = path_of(fx.X, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 1, 1}, fx.x);
        fx.loop_g_ext = path_of(fx.X, {1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1}, fx.x);
        fx.fg_inverse =
            path_of(fx.X, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 1, 0, 9, 8, 7, 6, 5, 4, 3, 2, 1}, fx.x);
        fx.tab_first_step =
            path_of(fx.X, {1, 2, 3, 4, 5, 6, 7, 8, 9, 9, 0, 0, 9, 8, 7, 6, 5, 4, 3, 2, 1}, fx.x);
    } catch (const Error& e) {
        invalid("loops", "Section 3", e.what());
    }
    require(is_trivial_extension(fx.loop_f_ext, fx.loop_f), "loop_f_ext", "Section 3", "f' does not extend f");
    require(is_trivial_extension(fx.loop_g_ext, fx.loop_g), "loop_g_ext", "Section 3", "g' does not extend g");
    fx.ext_one_step = PathHomotopy{{fx.loop_f_ext, fx.loop_g_ext}};
    require(is_path_homotopy(fx.ext_one_step) && holds_endpoints_fixed(fx.ext_one_step), "loop_f_ext", "Section 3",
            "f' and g' are not homotopic in one step");
    require(fx.fg_inverse == product(fx.loop_f, reverse(fx.loop_g)), "fg_inverse", "Section 3",
            "display differs from f * g^{-1}");
    {
        PathHomotopy step{{fx.fg_inverse, fx.tab_first_step}};
        require(is_path_homotopy(step) && holds_endpoints_fixed(step) && is_tab_every_stage(step, fx.x[1]),
                "tab_first_step", "Section 3", "displayed first step is not a TAB one-step move");
    }

    // cycle with a parallel point
    {
        const std::vector<LatticePoint> cyc = {{3, 4}, {2, 4}, {1, 4}, {1, 3}, {1, 2}, {1, 1},
                                               {2, 1}, {3, 1}, {4, 1}, {4, 2}, {4, 3}, {4, 4}};
        const LatticePoint extra{3, 3};
        std::vector<LatticePoint> pts = cyc;
        pts.push_back(extra);
        fx.fig2 = make_image(2, AdjacencySpec{1}, pts);
        fx.fig2_cycle = make_image(2, AdjacencySpec{1}, cyc);
        std::string why;
        require(is_cycle_with_parallel_point(*fx.fig2, 12, &why), "fig2", "Figure 2", why);
        require(is_simple_closed_curve(*fx.fig2_cycle), "fig2_cycle", "Figure 2", "not a 12-cycle");
        for (const auto& p : cyc)
            fx.fig2_y.push_back(fx.fig2->index_of(p));
        fx.fig2_extra = fx.fig2->index_of(extra);
        require(fx.fig2->adjacent(fx.fig2_extra, fx.fig2_y[0]) && fx.fig2->adjacent(fx.fig2_extra, fx.fig2_y[10]),
                "fig2", "Figure 2", "extra point is not parallel to the last cycle point");
        std::vector<PointIndex> ft(13);
        for (std::size_t i = 0; i < 12; ++i)
            ft[fx.fig2_y[i]] = fx.fig2_cycle->index_of(cyc[(i + 1) % 12]);
        ft[fx.fig2_extra] = fx.fig2_cycle->index_of(cyc[0]);
        fx.fig2_F = DigitalMap(fx.fig2, fx.fig2_cycle, ft);
        fx.fig2_G = DigitalMap::inclusion(fx.fig2_cycle, fx.fig2);
        require(is_continuous(fx.fig2_F) && is_continuous(fx.fig2_G), "fig2", "Figure 2",
                "analog maps are not continuous");
        fx.fig2_H = Homotopy{{DigitalMap::identity(fx.fig2), compose(fx.fig2_G, fx.fig2_F)}};
        require(is_homotopy(fx.fig2_H), "fig2", "Figure 2", "analog homotopy is invalid");
    }

    // two-point interval
    {
        fx.unit = DigitalInterval(0, 1).image();
        fx.ex42_f = EcPath(fx.unit, {0}, 1);
        const auto fmap = EventuallyPeriodicMap::from(fx.ex42_f);
        fx.ex42_family = {fmap, EventuallyPeriodicMap(fx.unit, {}, {0, 1}), fmap};
    }

    // the values reach 2, so the codomain is [0,2]_Z
    {
        fx.ex412_image = DigitalInterval(0, 2).image();
        fx.ex412_f = EcPath(fx.ex412_image, {0, 1, 2, 1}, 0);
        const EcPath h1(fx.ex412_image, {0, 1, 2, 1, 0, 1}, 0);
        fx.ex412_H = {fx.ex412_f, h1, fx.ex412_f};
        fx.ex412_K_display = {0, 1, 2, 1, 0, 1, 2, 1, 0, 0};
        fx.ex412_L_display = {0, 1, 2, 1, 0, 1, 0, 1, 2, 1, 0, 0};
        require(is_ec_homotopy(EcHomotopy{fx.ex412_H}, true), "ex412", "Example 4.12",
                "H is not an EC homotopy holding the endpoints fixed");
    }
    return fx;
}

}  // namespace dht
