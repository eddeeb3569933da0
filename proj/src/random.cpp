#include "dht/random.hpp"

#include <set>

namespace dht {

FinitePath random_loop(const ImagePtr& image, PointIndex x0, std::size_t steps, std::mt19937_64& rng)
{
    std::vector<PointIndex> v{x0};
    for (std::size_t s = 0; s < steps; ++s) {
        const auto nb = image->closed_neighbors(v.back());
        v.push_back(nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)]);
    }
    while (v.back() != x0) {
        const auto d = image->distance(v.back(), x0);
        if (!d)
            throw Error("random_loop: image is not connected");
        for (PointIndex n : image->neighbors(v.back()))
            if (image->distance(n, x0) == *d - 1) {
                v.push_back(n);
                break;
            }
    }
    return FinitePath(image, std::move(v));
}

FinitePath random_trivial_extension(const FinitePath& f, std::size_t extra, std::mt19937_64& rng)
{
    std::vector<PointIndex> v = f.values();
    for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t at = std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(at), v[at]);
    }
    return FinitePath(f.image(), std::move(v));
}

ImagePtr random_connected_image(std::size_t max_points, std::mt19937_64& rng)
{
    const int u = std::uniform_int_distribution<int>(1, 2)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_points))(rng);
    std::set<LatticePoint> pts{LatticePoint{0, 0}};
    std::vector<LatticePoint> order{LatticePoint{0, 0}};
    while (pts.size() < n) {
        const LatticePoint& base = order[std::uniform_int_distribution<std::size_t>(0, order.size() - 1)(rng)];
        const Coord dx = std::uniform_int_distribution<int>(-1, 1)(rng);
        const Coord dy = std::uniform_int_distribution<int>(-1, 1)(rng);
        LatticePoint q{base[0] + dx, base[1] + dy};
        if (!cu_adjacent(base, q, AdjacencySpec{u}) || !pts.insert(q).second)
            continue;
        order.push_back(q);
    }
    return make_image(2, AdjacencySpec{u}, std::vector<LatticePoint>(pts.begin(), pts.end()));
}

PathHomotopy random_path_homotopy(const FinitePath& f, std::size_t steps, const LoopConstraints& constraints,
                                  std::mt19937_64& rng)
{
    const LoopSpace space(f.image(), f.length(), constraints, f.front(), f.back());
    PathHomotopy h{{f}};
    State cur = pack(f.values());
    for (std::size_t s = 0; s < steps; ++s) {
        // Reservoir sampling over the neighbor stream.
        State pick = cur;
        std::size_t seen = 0;
        space.neighbors(cur, [&](const State& n) {
            ++seen;
            if (std::uniform_int_distribution<std::size_t>(1, seen)(rng) == 1)
                pick = n;
            return true;
        });
        cur = pick;
        h.stages.emplace_back(f.image(), unpack(cur));
    }
    return h;
}

}  // namespace dht
