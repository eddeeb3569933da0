#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dht/lattice.hpp"
#include "dht/search.hpp"

namespace dht {

/// A continuous map [0, m]_Z -> X, stored as its m + 1 values.
class FinitePath {
public:
    FinitePath() = default;
    /// Throws unless consecutive values are equal or adjacent and non-empty.
    FinitePath(ImagePtr image, std::vector<PointIndex> values);
    static FinitePath from_points(ImagePtr image, const std::vector<LatticePoint>& points);
    static FinitePath constant(ImagePtr image, PointIndex p, std::size_t length = 0);

    const ImagePtr& image() const noexcept { return image_; }
    const std::vector<PointIndex>& values() const noexcept { return values_; }
    /// m, the right end of the domain [0, m]_Z.
    std::size_t length() const noexcept { return values_.size() - 1; }
    PointIndex operator[](std::size_t t) const { return values_.at(t); }
    PointIndex front() const { return values_.front(); }
    PointIndex back() const { return values_.back(); }
    bool is_loop() const { return front() == back(); }

    std::string to_string() const;

    friend bool operator==(const FinitePath& a, const FinitePath& b)
    {
        return a.values_ == b.values_ && same_image(a.image_, b.image_);
    }
    friend bool operator<(const FinitePath& a, const FinitePath& b) { return a.values_ < b.values_; }

private:
    ImagePtr image_;
    std::vector<PointIndex> values_;
};

FinitePath reverse(const FinitePath& f);
/// f then g; requires f(m1) == g(0).
FinitePath product(const FinitePath& f, const FinitePath& g);

/// fp is obtained from f by repeating entries (inserting constant runs).
bool is_trivial_extension(const FinitePath& fp, const FinitePath& f);
/// All distinct trivial extensions of f of length target_len, ascending.
std::vector<FinitePath> enumerate_trivial_extensions(const FinitePath& f, std::size_t target_len);

/// Tight at the basepoint: no t with f(t) = f(t+1) = x0. Requires f to be a loop at x0.
bool is_tab(const FinitePath& f, PointIndex x0);

/// Stages of common length over a common image.
struct PathHomotopy {
    std::vector<FinitePath> stages;

    const FinitePath& from() const { return stages.front(); }
    const FinitePath& to() const { return stages.back(); }
    std::size_t steps() const { return stages.empty() ? 0 : stages.size() - 1; }
};

/// Stages continuous, equal length, and pointwise equal-or-adjacent in t.
bool is_path_homotopy(const PathHomotopy& h);
bool holds_endpoints_fixed(const PathHomotopy& h);
bool is_loop_preserving(const PathHomotopy& h);
bool is_tab_every_stage(const PathHomotopy& h, PointIndex x0);

/// Stage restrictions for searches over fixed-length paths.
struct LoopConstraints {
    enum class Ends { free, fixed, loop_preserving };
    Ends ends = Ends::fixed;
    /// When set, every stage must be TAB at this point.
    std::optional<PointIndex> tab_basepoint;
    /// Stages for which this returns true are excluded.
    std::function<bool(std::span<const PointIndex>)> forbidden;
    /// Excludes stages with v[pos] == first and v[pos + 1] == second.
    struct Pair {
        std::size_t pos;
        PointIndex first;
        PointIndex second;
    };
    std::vector<Pair> forbidden_pairs;

    static LoopConstraints endpoints_fixed() { return {}; }
};

/// The graph of all paths of a fixed length satisfying the constraints, with
/// edges between stages that are pointwise equal or adjacent.
class LoopSpace {
public:
    /// For Ends::fixed the endpoints are `start` and `end`.
    LoopSpace(ImagePtr image, std::size_t length, LoopConstraints constraints, PointIndex start = 0,
              PointIndex end = 0);

    const ImagePtr& image() const noexcept { return image_; }
    std::size_t length() const noexcept { return length_; }
    const LoopConstraints& constraints() const noexcept { return constraints_; }

    bool admits(std::span<const PointIndex> values) const;

    /// All admitted neighbors of s (including s itself), lexicographic order.
    void neighbors(const State& s, const std::function<bool(const State&)>& visit) const;
    /// Neighbors differing from s only inside a window of at most `width` consecutive positions.
    void window_neighbors(const State& s, std::size_t width, const std::function<bool(const State&)>& visit) const;
    /// Neighbors that differ from s at every position of one non-empty run of
    /// consecutive positions and nowhere else. Every one-step move factors into
    /// such moves through admitted stages, so they generate the same components.
    /// Falls back to neighbors() when a generic forbidden predicate or
    /// loop-preserving ends are in force.
    void run_neighbors(const State& s, const std::function<bool(const State&)>& visit) const;
    bool runs_generate() const;
    /// Bidirectional breadth-first search over run moves from `from` to a
    /// target. on_visit(side, path) sees every discovered path; side 0 grows
    /// from `from`, side 1 from the targets. On exhaustion,
    /// result.exhausted_side names the side whose component was explored.
    PathSearchResult run_search(const State& from, const std::vector<State>& targets, std::size_t max_nodes,
                                const std::function<void(int, std::span<const PointIndex>)>& on_visit = {}) const;
    /// Every admitted path, lexicographic order.
    void enumerate(const std::function<bool(const State&)>& visit) const;

    auto neighbor_fn() const
    {
        return [this](const State& s, auto&& visit) { neighbors(s, std::function<bool(const State&)>(visit)); };
    }
    auto run_neighbor_fn() const
    {
        return [this](const State& s, auto&& visit) { run_neighbors(s, std::function<bool(const State&)>(visit)); };
    }

private:
    friend struct LoopPartition partition_loop_space(const LoopSpace& space, std::size_t max_states);
    bool admits_value(std::size_t pos, PointIndex prev, PointIndex value) const;

    /// Calls f(code) for every run neighbor of `base`, whose code is `code`
    /// under place values `weight`. With `ascending`, only neighbors whose
    /// first changed entry increases.
    template <class F>
    void for_each_run_code(const std::vector<PointIndex>& base, std::uint64_t code,
                           const std::vector<std::uint64_t>& weight, bool ascending, F&& f) const
    {
        const std::size_t n = base.size();
        auto rec = [&](auto&& self, std::size_t pos, PointIndex prev, std::uint64_t cur, bool first) -> void {
            for (PointIndex c : image_->closed_neighbors(base[pos])) {
                if (first && ascending ? c <= base[pos] : c == base[pos])
                    continue;
                if (!admits_value(pos, prev, c))
                    continue;
                const std::uint64_t next = cur - weight[pos] * base[pos] + weight[pos] * c;
                if (pos + 1 == n || admits_value(pos + 1, c, base[pos + 1]))
                    f(next);
                if (pos + 1 < n)
                    self(self, pos + 1, c, next, false);
            }
        };
        for (std::size_t start = 0; start < n; ++start)
            rec(rec, start, start ? base[start - 1] : 0, code, true);
    }

    ImagePtr image_;
    std::size_t length_;
    LoopConstraints constraints_;
    PointIndex start_;
    PointIndex end_;
};

/// Connected components of a LoopSpace.
struct LoopPartition {
    std::vector<State> states;                              ///< lexicographic
    std::vector<std::uint32_t> component;                   ///< parallel to states
    std::size_t component_count = 0;

    std::optional<std::uint32_t> component_of(const State& s) const;
};

/// Throws BudgetExceeded when the space holds more than max_states paths.
LoopPartition partition_loop_space(const LoopSpace& space, std::size_t max_states);

struct ReachQuery {
    SearchStatus status = SearchStatus::exhausted;
    std::vector<FinitePath> reachable;      ///< filled when no target was given
    std::optional<PathHomotopy> witness;    ///< filled when the target was reached
};

/// Paths of f's length reachable from f through stages satisfying the
/// constraints. When `target` is given, searches for it and returns a
/// shortest witness instead of the reachable set.
ReachQuery loops_reachable(const FinitePath& f, const LoopConstraints& constraints,
                           const std::optional<FinitePath>& target = std::nullopt,
                           const SearchOptions& options = {});

struct TabResult {
    Verdict verdict = Verdict::bound_exhausted;
    std::optional<PathHomotopy> witness;
    std::vector<std::string> notes;  ///< one line per examined extension length
};

/// Searches TAB trivial extensions of f and g up to max_len for a homotopy
/// holding the endpoints fixed that is TAB at every stage. A constant loop is
/// accepted as the final stage (its padded form is not itself TAB).
TabResult tab_equivalent(const FinitePath& f, const FinitePath& g, PointIndex x0, std::size_t max_len,
                         const SearchOptions& options = {});

/// Path text format: `path <image-file>` then one point index per line.
struct PathFile {
    std::string image_file;
    std::vector<PointIndex> values;
};
PathFile parse_path_file(std::istream& in);

}  // namespace dht
