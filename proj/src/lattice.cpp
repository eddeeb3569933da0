#include "dht/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

namespace dht {

namespace {

constexpr std::size_t kDenseLimit = 4096;
constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

}  // namespace

LatticePoint::LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords))
{
    if (coords_.empty())
        throw Error("lattice point must have dimension >= 1");
}

LatticePoint::LatticePoint(std::initializer_list<Coord> coords) : LatticePoint(std::vector<Coord>(coords)) {}

std::string LatticePoint::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticePoint& p)
{
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i)
            os << ',';
        os << p[i];
    }
    return os << ')';
}

bool cu_adjacent(const LatticePoint& p, const LatticePoint& q, AdjacencySpec adj)
{
    if (p.dim() != q.dim())
        throw Error("cu_adjacent: dimension mismatch");
    if (adj.u < 1 || static_cast<std::size_t>(adj.u) > p.dim())
        throw Error("cu_adjacent: u out of range [1, n]");
    int differing = 0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        const Coord a = p[i];
        const Coord b = q[i];
        if (a == b)
            continue;
        // |a - b| == 1 without forming a - b, which may overflow.
        const bool unit = (a < b) ? (a != std::numeric_limits<Coord>::max() && a + 1 == b)
                                  : (b != std::numeric_limits<Coord>::max() && b + 1 == a);
        if (!unit)
            return false;
        ++differing;
    }
    return differing >= 1 && differing <= adj.u;
}

DigitalImage::DigitalImage(std::size_t dim, AdjacencySpec adj, std::vector<LatticePoint> points)
    : dim_(dim), adj_(adj), points_(std::move(points))
{
    if (dim_ == 0)
        throw Error("digital image must have dimension >= 1");
    if (adj_.u < 1 || static_cast<std::size_t>(adj_.u) > dim_)
        throw Error("adjacency parameter u=" + std::to_string(adj_.u) + " out of range for dimension " +
                    std::to_string(dim_));
    for (const auto& p : points_)
        if (p.dim() != dim_)
            throw Error("point " + p.to_string() + " has dimension " + std::to_string(p.dim()) + ", expected " +
                        std::to_string(dim_));
    std::sort(points_.begin(), points_.end());
    auto dup = std::adjacent_find(points_.begin(), points_.end());
    if (dup != points_.end())
        throw Error("duplicate point " + dup->to_string());
    if (points_.size() >= std::numeric_limits<PointIndex>::max())
        throw Error("image too large");
    build();
}

namespace {

std::size_t inferred_dim(const std::vector<LatticePoint>& points)
{
    if (points.empty())
        throw Error("cannot infer dimension of an empty point list");
    return points.front().dim();
}

}  // namespace

DigitalImage::DigitalImage(AdjacencySpec adj, std::vector<LatticePoint> points)
    : DigitalImage(inferred_dim(points), adj, points)
{
}

void DigitalImage::build()
{
    const std::size_t n = points_.size();
    neighbors_.assign(n, {});
    if (n <= kDenseLimit) {
        adjacency_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (cu_adjacent(points_[i], points_[j], adj_)) {
                    adjacency_[i * n + j] = adjacency_[j * n + i] = 1;
                    neighbors_[i].push_back(static_cast<PointIndex>(j));
                    neighbors_[j].push_back(static_cast<PointIndex>(i));
                }
        for (auto& nb : neighbors_)
            std::sort(nb.begin(), nb.end());
    } else {
        throw Error("images larger than " + std::to_string(kDenseLimit) + " points are not supported");
    }

    closed_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        auto& c = closed_[i];
        c = neighbors_[i];
        c.insert(std::lower_bound(c.begin(), c.end(), static_cast<PointIndex>(i)), static_cast<PointIndex>(i));
    }

    distances_.assign(n * n, kUnreachable);
    std::vector<PointIndex> queue;
    for (std::size_t s = 0; s < n; ++s) {
        std::uint32_t* row = &distances_[s * n];
        row[s] = 0;
        queue.assign(1, static_cast<PointIndex>(s));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const PointIndex v = queue[head];
            for (PointIndex w : neighbors_[v])
                if (row[w] == kUnreachable) {
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
        }
    }
}

std::optional<PointIndex> DigitalImage::find(const LatticePoint& p) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p)
        return std::nullopt;
    return static_cast<PointIndex>(it - points_.begin());
}

PointIndex DigitalImage::index_of(const LatticePoint& p) const
{
    auto idx = find(p);
    if (!idx)
        throw Error("point " + p.to_string() + " is not in the image");
    return *idx;
}

std::vector<LatticePoint> DigitalImage::neighbors(const LatticePoint& p) const
{
    std::vector<LatticePoint> out;
    for (PointIndex j : neighbors(index_of(p)))
        out.push_back(points_[j]);
    return out;
}

std::optional<std::size_t> DigitalImage::distance(PointIndex a, PointIndex b) const
{
    const std::uint32_t d = distances_.at(static_cast<std::size_t>(a) * points_.size() + b);
    if (d == kUnreachable)
        return std::nullopt;
    return d;
}

DigitalImage DigitalImage::without(const std::vector<LatticePoint>& removed) const
{
    std::vector<LatticePoint> kept;
    for (const auto& p : points_)
        if (std::find(removed.begin(), removed.end(), p) == removed.end())
            kept.push_back(p);
    return DigitalImage(dim_, adj_, std::move(kept));
}

ImagePtr make_image(AdjacencySpec adj, std::vector<LatticePoint> points)
{
    return std::make_shared<const DigitalImage>(adj, std::move(points));
}

ImagePtr make_image(std::size_t dim, AdjacencySpec adj, std::vector<LatticePoint> points)
{
    return std::make_shared<const DigitalImage>(dim, adj, std::move(points));
}

bool same_image(const ImagePtr& a, const ImagePtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

DigitalInterval::DigitalInterval(Coord lo, Coord hi) : a(lo), b(hi)
{
    if (lo > hi)
        throw Error("digital interval requires a <= b");
}

ImagePtr DigitalInterval::image() const
{
    std::vector<LatticePoint> pts;
    for (Coord z = a;; ++z) {
        pts.push_back(LatticePoint{z});
        if (z == b)
            break;
    }
    return make_image(1, AdjacencySpec{1}, std::move(pts));
}

std::vector<std::vector<PointIndex>> components(const DigitalImage& image)
{
    const std::size_t n = image.size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<PointIndex>> out;
    for (PointIndex s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<PointIndex> comp{s};
        seen[s] = true;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (PointIndex w : image.neighbors(comp[head]))
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const DigitalImage& image)
{
    return components(image).size() <= 1;
}

DigitalImage parse_image(std::istream& in)
{
    std::string line;
    std::size_t dim = 0;
    int u = 0;
    bool have_header = false;
    std::vector<LatticePoint> points;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag))
                continue;
            if (tag != "dim" || !(ls >> dim >> u))
                throw Error("image file: expected header `dim n u` on line " + std::to_string(lineno));
            have_header = true;
            continue;
        }
        std::vector<Coord> coords;
        Coord c;
        while (ls >> c)
            coords.push_back(c);
        if (!ls.eof())
            throw Error("image file: bad coordinate on line " + std::to_string(lineno));
        if (coords.empty())
            continue;
        if (coords.size() != dim)
            throw Error("image file: line " + std::to_string(lineno) + " has " + std::to_string(coords.size()) +
                        " coordinates, expected " + std::to_string(dim));
        points.emplace_back(std::move(coords));
    }
    if (!have_header)
        throw Error("image file: missing `dim n u` header");
    return DigitalImage(dim, AdjacencySpec{u}, std::move(points));
}

DigitalImage load_image(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open image file " + path);
    return parse_image(in);
}

void write_image(std::ostream& out, const DigitalImage& image)
{
    out << "dim " << image.dim() << ' ' << image.adjacency().u << '\n';
    for (const auto& p : image.points()) {
        for (std::size_t i = 0; i < p.dim(); ++i)
            out << (i ? " " : "") << p[i];
        out << '\n';
    }
}

}  // namespace dht
