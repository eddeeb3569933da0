#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dht/lattice.hpp"
#include "dht/search.hpp"

namespace dht {

/// A total function between images, stored as a table of target indices
/// indexed by source index.
class DigitalMap {
public:
    DigitalMap() = default;
    DigitalMap(ImagePtr source, ImagePtr target, std::vector<PointIndex> table);

    static DigitalMap identity(const ImagePtr& image);
    static DigitalMap constant(const ImagePtr& source, const ImagePtr& target, PointIndex value);
    /// Inclusion of `sub` into `super`; every point of sub must lie in super.
    static DigitalMap inclusion(const ImagePtr& sub, const ImagePtr& super);
    /// Builds a map from point-to-point pairs; every source point must appear once.
    static DigitalMap from_pairs(const ImagePtr& source, const ImagePtr& target,
                                 const std::vector<std::pair<LatticePoint, LatticePoint>>& pairs);

    const ImagePtr& source() const noexcept { return source_; }
    const ImagePtr& target() const noexcept { return target_; }
    const std::vector<PointIndex>& table() const noexcept { return table_; }

    PointIndex operator()(PointIndex x) const { return table_.at(x); }
    const LatticePoint& operator()(const LatticePoint& p) const;

    std::string to_string() const;

    friend bool operator==(const DigitalMap& a, const DigitalMap& b)
    {
        return a.table_ == b.table_ && same_image(a.source_, b.source_) && same_image(a.target_, b.target_);
    }

private:
    ImagePtr source_;
    ImagePtr target_;
    std::vector<PointIndex> table_;
};

/// Adjacent source points map to equal or adjacent target points.
bool is_continuous(const DigitalMap& f);

/// g after f. Throws unless target(f) equals source(g).
DigitalMap compose(const DigitalMap& g, const DigitalMap& f);

/// Restriction on every stage of a homotopy, relative to its first stage.
struct StageConstraint {
    enum class Kind { none, pointed, fixes_set };
    Kind kind = Kind::none;
    std::vector<PointIndex> points;  ///< basepoint (pointed) or fixed set

    static StageConstraint none() { return {}; }
    static StageConstraint pointed(PointIndex x0) { return {Kind::pointed, {x0}}; }
    static StageConstraint fixes(std::vector<PointIndex> set) { return {Kind::fixes_set, std::move(set)}; }

    /// Whether `stage` agrees with `reference` on the constrained points.
    bool admits(const DigitalMap& stage, const DigitalMap& reference) const;
};

/// A finite family of stages; stage 0 is the start, the last stage the end.
struct Homotopy {
    std::vector<DigitalMap> stages;

    const DigitalMap& from() const { return stages.front(); }
    const DigitalMap& to() const { return stages.back(); }
    std::size_t steps() const { return stages.empty() ? 0 : stages.size() - 1; }
};

/// Every stage continuous, every track continuous, and the constraint holds
/// at every stage.
bool is_homotopy(const Homotopy& h, const StageConstraint& constraint = StageConstraint::none());

/// Homotopic in one step: both continuous and pointwise equal or adjacent.
bool one_step(const DigitalMap& f, const DigitalMap& g);

/// Shortest homotopy from f to g whose stages satisfy `constraint`, or
/// nullopt when none exists. Throws BudgetExceeded when the search cannot
/// finish within options.max_frontier states.
std::optional<Homotopy> homotopic(const DigitalMap& f, const DigitalMap& g,
                                  const StageConstraint& constraint = StageConstraint::none(),
                                  const SearchOptions& options = {});

/// All continuous h: X -> X with h(x) = x that are one step from the identity.
std::vector<DigitalMap> pointed_neighbors_of_identity(const ImagePtr& image, PointIndex x);
std::vector<DigitalMap> pointed_neighbors_of_identity(const ImagePtr& image, const LatticePoint& x);

/// Calls visit(table) for every continuous map source -> target with
/// table[i] in allowed[i] (all target points when allowed[i] is empty), in
/// lexicographic table order. Stops when visit returns false.
void for_each_continuous_map(const DigitalImage& source, const DigitalImage& target,
                             const std::vector<std::vector<PointIndex>>& allowed,
                             const std::function<bool(const std::vector<PointIndex>&)>& visit);

struct HomotopyEquivalenceCertificate {
    bool equivalent = false;
    std::optional<Homotopy> gf_to_identity;  ///< g o f ~ 1_X
    std::optional<Homotopy> fg_to_identity;  ///< f o g ~ 1_Y
};

/// f: X -> Y and g: Y -> X realize a homotopy equivalence.
HomotopyEquivalenceCertificate verify_homotopy_equivalence(const DigitalMap& f, const DigitalMap& g,
                                                           const SearchOptions& options = {});

struct PointedEquivalenceAnalysis {
    bool no_pointed_equivalence = false;
    bool source_identity_rigid = false;  ///< every pointed one-step neighborhood of 1_X is {1_X}
    bool target_identity_rigid = false;
    std::string method;
};

/// Decides that no choice of basepoints makes (X,x) and (Y,y) pointed homotopy
/// equivalent. Both images must be connected and non-empty.
PointedEquivalenceAnalysis analyze_pointed_equivalence(const ImagePtr& x_image, const ImagePtr& y_image,
                                                       const SearchOptions& options = {});
bool no_pointed_equivalence(const ImagePtr& x_image, const ImagePtr& y_image, const SearchOptions& options = {});

/// A bijection preserving adjacency in both directions, if one exists.
std::optional<DigitalMap> find_isomorphism(const ImagePtr& a, const ImagePtr& b);

}  // namespace dht
