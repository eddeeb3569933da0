#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dht {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Coord = std::int64_t;
using PointIndex = std::uint32_t;

/// A point of Z^n, n >= 1.
class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(std::vector<Coord> coords);
    LatticePoint(std::initializer_list<Coord> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    Coord operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Coord>& coords() const noexcept { return coords_; }

    std::string to_string() const;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b)
    {
        return a.coords_ <=> b.coords_;
    }

private:
    std::vector<Coord> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticePoint& p);

/// The c_u adjacency parameter.
struct AdjacencySpec {
    int u = 1;
    friend bool operator==(const AdjacencySpec&, const AdjacencySpec&) = default;
};

/// c_u adjacency: p != q, every coordinate differs by at most 1, and at most u
/// coordinates differ. Throws on dimension mismatch or u outside [1, n].
bool cu_adjacent(const LatticePoint& p, const LatticePoint& q, AdjacencySpec adj);

/// A finite subset of Z^n with a c_u adjacency. Points are kept in
/// lexicographic order; a point's index is its rank in that order.
class DigitalImage {
public:
    /// Rejects duplicates, mixed dimensions and u outside [1, dim].
    DigitalImage(std::size_t dim, AdjacencySpec adj, std::vector<LatticePoint> points);
    /// Dimension taken from the points; the list must be non-empty.
    DigitalImage(AdjacencySpec adj, std::vector<LatticePoint> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::size_t dim() const noexcept { return dim_; }
    AdjacencySpec adjacency() const noexcept { return adj_; }

    const LatticePoint& point(PointIndex i) const { return points_.at(i); }
    const std::vector<LatticePoint>& points() const noexcept { return points_; }

    std::optional<PointIndex> find(const LatticePoint& p) const;
    /// Throws if p is not a point of the image.
    PointIndex index_of(const LatticePoint& p) const;
    bool contains(const LatticePoint& p) const { return find(p).has_value(); }

    bool adjacent(PointIndex a, PointIndex b) const
    {
        return adjacency_[static_cast<std::size_t>(a) * points_.size() + b] != 0;
    }
    bool adjacent_or_equal(PointIndex a, PointIndex b) const { return a == b || adjacent(a, b); }

    /// Neighbors of point i in ascending index order (excludes i).
    std::span<const PointIndex> neighbors(PointIndex i) const { return neighbors_.at(i); }
    /// i together with its neighbors, ascending.
    std::span<const PointIndex> closed_neighbors(PointIndex i) const { return closed_.at(i); }

    /// Neighbors of p in canonical order. Throws if p is not in the image.
    std::vector<LatticePoint> neighbors(const LatticePoint& p) const;

    /// Graph distance in the adjacency graph; nullopt when in different components.
    std::optional<std::size_t> distance(PointIndex a, PointIndex b) const;

    /// The subimage on the given points (same adjacency).
    DigitalImage without(const std::vector<LatticePoint>& removed) const;

    friend bool operator==(const DigitalImage& a, const DigitalImage& b)
    {
        return a.dim_ == b.dim_ && a.adj_ == b.adj_ && a.points_ == b.points_;
    }

private:
    void build();

    std::size_t dim_ = 0;
    AdjacencySpec adj_;
    std::vector<LatticePoint> points_;
    std::vector<std::uint8_t> adjacency_;
    std::vector<std::vector<PointIndex>> neighbors_;
    std::vector<std::vector<PointIndex>> closed_;
    std::vector<std::uint32_t> distances_;
};

using ImagePtr = std::shared_ptr<const DigitalImage>;

ImagePtr make_image(AdjacencySpec adj, std::vector<LatticePoint> points);
ImagePtr make_image(std::size_t dim, AdjacencySpec adj, std::vector<LatticePoint> points);

/// Same point set and adjacency (pointer identity not required).
bool same_image(const ImagePtr& a, const ImagePtr& b);

/// [a, b]_Z with c_1 adjacency.
struct DigitalInterval {
    Coord a = 0;
    Coord b = 0;

    DigitalInterval(Coord lo, Coord hi);
    std::size_t size() const noexcept { return static_cast<std::size_t>(b - a) + 1; }
    ImagePtr image() const;
};

/// Connected components, each sorted ascending, numbered by least point.
std::vector<std::vector<PointIndex>> components(const DigitalImage& image);
bool is_connected(const DigitalImage& image);

/// Image text format: `dim n u` then one point per line.
DigitalImage parse_image(std::istream& in);
DigitalImage load_image(const std::string& path);
void write_image(std::ostream& out, const DigitalImage& image);

}  // namespace dht
