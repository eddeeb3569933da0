#include "dht/maps.hpp"

#include <algorithm>
#include <sstream>

namespace dht {

namespace {

/// For each source point, its neighbors of smaller index. Assignment in index
/// order only needs to check these for continuity.
std::vector<std::vector<PointIndex>> earlier_neighbors(const DigitalImage& image)
{
    std::vector<std::vector<PointIndex>> out(image.size());
    for (PointIndex i = 0; i < image.size(); ++i)
        for (PointIndex j : image.neighbors(i))
            if (j < i)
                out[i].push_back(j);
    return out;
}

/// Backtracking over source points in index order. candidates(i, chosen)
/// yields the ordered candidate list for point i.
template <class Candidates, class Visit>
bool backtrack_maps(const DigitalImage& target, const std::vector<std::vector<PointIndex>>& earlier,
                    std::vector<PointIndex>& chosen, std::size_t i, Candidates&& candidates, Visit&& visit)
{
    if (i == chosen.size())
        return visit(static_cast<const std::vector<PointIndex>&>(chosen));
    for (PointIndex c : candidates(i)) {
        bool ok = true;
        for (PointIndex j : earlier[i])
            if (!target.adjacent_or_equal(chosen[j], c)) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        chosen[i] = c;
        if (!backtrack_maps(target, earlier, chosen, i + 1, candidates, visit))
            return false;
    }
    return true;
}

/// One-step neighbors of a continuous map under a stage constraint.
class MapSpace {
public:
    MapSpace(const DigitalMap& reference, const StageConstraint& constraint)
        : source_(*reference.source()),
          target_(*reference.target()),
          earlier_(earlier_neighbors(source_)),
          fixed_(source_.size())
    {
        for (PointIndex p : constraint.points)
            fixed_.at(p) = reference(p);
    }

    template <class Visit>
    void operator()(const State& s, Visit&& visit) const
    {
        const auto current = unpack(s);
        std::vector<PointIndex> chosen(current.size());
        std::vector<PointIndex> single(1);
        backtrack_maps(
            target_, earlier_, chosen, 0,
            [&](std::size_t i) -> std::span<const PointIndex> {
                if (fixed_[i]) {
                    single[0] = *fixed_[i];
                    return single;
                }
                return target_.closed_neighbors(current[i]);
            },
            [&](const std::vector<PointIndex>& table) { return visit(pack(table)); });
    }

private:
    const DigitalImage& source_;
    const DigitalImage& target_;
    std::vector<std::vector<PointIndex>> earlier_;
    std::vector<std::optional<PointIndex>> fixed_;
};

void require_same_shape(const DigitalMap& f, const DigitalMap& g, const char* what)
{
    if (!same_image(f.source(), g.source()) || !same_image(f.target(), g.target()))
        throw Error(std::string(what) + ": maps have different source or target");
}

}  // namespace

DigitalMap::DigitalMap(ImagePtr source, ImagePtr target, std::vector<PointIndex> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table))
{
    if (!source_ || !target_)
        throw Error("digital map requires source and target images");
    if (table_.size() != source_->size())
        throw Error("digital map table has " + std::to_string(table_.size()) + " entries, source has " +
                    std::to_string(source_->size()) + " points");
    for (PointIndex v : table_)
        if (v >= target_->size())
            throw Error("digital map value " + std::to_string(v) + " outside target");
}

DigitalMap DigitalMap::identity(const ImagePtr& image)
{
    std::vector<PointIndex> t(image->size());
    for (PointIndex i = 0; i < t.size(); ++i)
        t[i] = i;
    return DigitalMap(image, image, std::move(t));
}

DigitalMap DigitalMap::constant(const ImagePtr& source, const ImagePtr& target, PointIndex value)
{
    return DigitalMap(source, target, std::vector<PointIndex>(source->size(), value));
}

DigitalMap DigitalMap::inclusion(const ImagePtr& sub, const ImagePtr& super)
{
    std::vector<PointIndex> t;
    for (const auto& p : sub->points())
        t.push_back(super->index_of(p));
    return DigitalMap(sub, super, std::move(t));
}

DigitalMap DigitalMap::from_pairs(const ImagePtr& source, const ImagePtr& target,
                                  const std::vector<std::pair<LatticePoint, LatticePoint>>& pairs)
{
    std::vector<std::optional<PointIndex>> t(source->size());
    for (const auto& [p, q] : pairs) {
        auto& slot = t.at(source->index_of(p));
        if (slot)
            throw Error("map assigns " + p.to_string() + " twice");
        slot = target->index_of(q);
    }
    std::vector<PointIndex> table;
    for (PointIndex i = 0; i < t.size(); ++i) {
        if (!t[i])
            throw Error("map is not total: " + source->point(i).to_string() + " unassigned");
        table.push_back(*t[i]);
    }
    return DigitalMap(source, target, std::move(table));
}

const LatticePoint& DigitalMap::operator()(const LatticePoint& p) const
{
    return target_->point(table_.at(source_->index_of(p)));
}

std::string DigitalMap::to_string() const
{
    std::ostringstream os;
    os << '{';
    for (PointIndex i = 0; i < table_.size(); ++i)
        os << (i ? ", " : "") << source_->point(i) << "->" << target_->point(table_[i]);
    os << '}';
    return os.str();
}

bool is_continuous(const DigitalMap& f)
{
    const auto& src = *f.source();
    const auto& tgt = *f.target();
    for (PointIndex i = 0; i < src.size(); ++i)
        for (PointIndex j : src.neighbors(i))
            if (j > i && !tgt.adjacent_or_equal(f(i), f(j)))
                return false;
    return true;
}

DigitalMap compose(const DigitalMap& g, const DigitalMap& f)
{
    if (!same_image(f.target(), g.source()))
        throw Error("compose: target of f is not the source of g");
    std::vector<PointIndex> t(f.table().size());
    for (PointIndex i = 0; i < t.size(); ++i)
        t[i] = g(f(i));
    return DigitalMap(f.source(), g.target(), std::move(t));
}

bool StageConstraint::admits(const DigitalMap& stage, const DigitalMap& reference) const
{
    for (PointIndex p : points)
        if (p >= stage.table().size() || stage(p) != reference(p))
            return false;
    return true;
}

bool one_step(const DigitalMap& f, const DigitalMap& g)
{
    require_same_shape(f, g, "one_step");
    if (!is_continuous(f) || !is_continuous(g))
        return false;
    for (PointIndex i = 0; i < f.table().size(); ++i)
        if (!f.target()->adjacent_or_equal(f(i), g(i)))
            return false;
    return true;
}

bool is_homotopy(const Homotopy& h, const StageConstraint& constraint)
{
    if (h.stages.empty())
        return false;
    const auto& first = h.stages.front();
    for (std::size_t t = 0; t < h.stages.size(); ++t) {
        const auto& s = h.stages[t];
        if (!same_image(s.source(), first.source()) || !same_image(s.target(), first.target()))
            return false;
        if (!is_continuous(s) || !constraint.admits(s, first))
            return false;
        if (t > 0) {
            const auto& prev = h.stages[t - 1];
            for (PointIndex i = 0; i < s.table().size(); ++i)
                if (!s.target()->adjacent_or_equal(prev(i), s(i)))
                    return false;
        }
    }
    return true;
}

std::optional<Homotopy> homotopic(const DigitalMap& f, const DigitalMap& g, const StageConstraint& constraint,
                                  const SearchOptions& options)
{
    require_same_shape(f, g, "homotopic");
    if (!is_continuous(f) || !is_continuous(g))
        throw Error("homotopic: both maps must be continuous");
    if (!constraint.admits(f, f) || !constraint.admits(g, f))
        throw Error("homotopic: the stage constraint is violated by the end maps");
    if (f.table() == g.table())
        return Homotopy{{f}};

    MapSpace space(f, constraint);
    auto result = shortest_path(pack(f.table()), {pack(g.table())}, space, options.max_frontier);
    if (result.status == SearchStatus::budget_exceeded)
        throw BudgetExceeded("homotopic: search exceeded " + std::to_string(options.max_frontier) + " maps");
    if (result.status == SearchStatus::exhausted)
        return std::nullopt;
    Homotopy h;
    for (const auto& s : result.path)
        h.stages.emplace_back(f.source(), f.target(), unpack(s));
    return h;
}

std::vector<DigitalMap> pointed_neighbors_of_identity(const ImagePtr& image, PointIndex x)
{
    if (x >= image->size())
        throw Error("pointed_neighbors_of_identity: basepoint not in image");
    const auto earlier = earlier_neighbors(*image);
    // Candidate order: the point itself, then its neighbors.
    std::vector<std::vector<PointIndex>> cands(image->size());
    for (PointIndex p = 0; p < image->size(); ++p) {
        cands[p].push_back(p);
        if (p != x)
            for (PointIndex q : image->neighbors(p))
                cands[p].push_back(q);
    }
    std::vector<DigitalMap> out;
    std::vector<PointIndex> chosen(image->size());
    backtrack_maps(
        *image, earlier, chosen, 0, [&](std::size_t i) -> const std::vector<PointIndex>& { return cands[i]; },
        [&](const std::vector<PointIndex>& table) {
            out.emplace_back(image, image, table);
            return true;
        });
    return out;
}

std::vector<DigitalMap> pointed_neighbors_of_identity(const ImagePtr& image, const LatticePoint& x)
{
    return pointed_neighbors_of_identity(image, image->index_of(x));
}

void for_each_continuous_map(const DigitalImage& source, const DigitalImage& target,
                             const std::vector<std::vector<PointIndex>>& allowed,
                             const std::function<bool(const std::vector<PointIndex>&)>& visit)
{
    std::vector<PointIndex> all(target.size());
    for (PointIndex i = 0; i < all.size(); ++i)
        all[i] = i;
    const auto earlier = earlier_neighbors(source);
    std::vector<PointIndex> chosen(source.size());
    backtrack_maps(
        target, earlier, chosen, 0,
        [&](std::size_t i) -> const std::vector<PointIndex>& {
            return (i < allowed.size() && !allowed[i].empty()) ? allowed[i] : all;
        },
        visit);
}

HomotopyEquivalenceCertificate verify_homotopy_equivalence(const DigitalMap& f, const DigitalMap& g,
                                                           const SearchOptions& options)
{
    if (!same_image(f.target(), g.source()) || !same_image(g.target(), f.source()))
        throw Error("verify_homotopy_equivalence: expected f: X -> Y and g: Y -> X");
    HomotopyEquivalenceCertificate cert;
    if (!is_continuous(f) || !is_continuous(g))
        return cert;
    cert.gf_to_identity = homotopic(compose(g, f), DigitalMap::identity(f.source()), StageConstraint::none(), options);
    if (cert.gf_to_identity)
        cert.fg_to_identity =
            homotopic(compose(f, g), DigitalMap::identity(g.source()), StageConstraint::none(), options);
    cert.equivalent = cert.gf_to_identity.has_value() && cert.fg_to_identity.has_value();
    return cert;
}

std::optional<DigitalMap> find_isomorphism(const ImagePtr& a, const ImagePtr& b)
{
    if (a->size() != b->size())
        return std::nullopt;
    const std::size_t n = a->size();
    std::vector<PointIndex> table(n);
    std::vector<bool> used(n, false);
    const auto earlier = earlier_neighbors(*a);
    std::optional<DigitalMap> found;
    auto rec = [&](auto&& self, PointIndex i) -> bool {
        if (i == n) {
            found.emplace(a, b, table);
            return true;
        }
        for (PointIndex c = 0; c < n; ++c) {
            if (used[c] || a->neighbors(i).size() != b->neighbors(c).size())
                continue;
            bool ok = true;
            for (PointIndex j = 0; j < i && ok; ++j)
                ok = a->adjacent(i, j) == b->adjacent(c, table[j]);
            if (!ok)
                continue;
            used[c] = true;
            table[i] = c;
            if (self(self, i + 1))
                return true;
            used[c] = false;
        }
        return false;
    };
    rec(rec, 0);
    (void)earlier;
    return found;
}

PointedEquivalenceAnalysis analyze_pointed_equivalence(const ImagePtr& x_image, const ImagePtr& y_image,
                                                       const SearchOptions& options)
{
    if (x_image->empty() || y_image->empty())
        throw Error("pointed equivalence needs non-empty images");
    if (!is_connected(*x_image) || !is_connected(*y_image))
        throw Error("pointed equivalence analysis requires connected images");

    PointedEquivalenceAnalysis out;
    auto rigid = [](const ImagePtr& img) {
        for (PointIndex p = 0; p < img->size(); ++p)
            if (pointed_neighbors_of_identity(img, p).size() != 1)
                return false;
        return true;
    };
    out.source_identity_rigid = rigid(x_image);
    out.target_identity_rigid = rigid(y_image);

    if (out.source_identity_rigid && out.target_identity_rigid) {
        // A pointed homotopy to the identity ends with a pointed one-step move
        // onto it, so rigidity forces g o f = 1_X and f o g = 1_Y.
        if (x_image->size() != y_image->size()) {
            out.no_pointed_equivalence = true;
            out.method = "rigid identities; cardinalities differ";
        } else {
            out.no_pointed_equivalence = !find_isomorphism(x_image, y_image).has_value();
            out.method = "rigid identities; isomorphism search";
        }
        return out;
    }

    out.method = "exhaustive pointed map search";
    std::size_t work = 0;
    for (PointIndex x = 0; x < x_image->size(); ++x)
        for (PointIndex y = 0; y < y_image->size(); ++y) {
            std::vector<std::vector<PointIndex>> fx(x_image->size()), gy(y_image->size());
            fx[x] = {y};
            gy[y] = {x};
            std::vector<DigitalMap> fs, gs;
            for_each_continuous_map(*x_image, *y_image, fx, [&](const std::vector<PointIndex>& t) {
                fs.emplace_back(x_image, y_image, t);
                return ++work <= options.max_frontier;
            });
            for_each_continuous_map(*y_image, *x_image, gy, [&](const std::vector<PointIndex>& t) {
                gs.emplace_back(y_image, x_image, t);
                return ++work <= options.max_frontier;
            });
            if (work > options.max_frontier)
                throw BudgetExceeded("pointed equivalence search exceeded the map budget");
            for (const auto& f : fs)
                for (const auto& g : gs) {
                    if (++work > options.max_frontier)
                        throw BudgetExceeded("pointed equivalence search exceeded the map budget");
                    if (homotopic(compose(g, f), DigitalMap::identity(x_image), StageConstraint::pointed(x), options) &&
                        homotopic(compose(f, g), DigitalMap::identity(y_image), StageConstraint::pointed(y), options)) {
                        out.no_pointed_equivalence = false;
                        return out;
                    }
                }
        }
    out.no_pointed_equivalence = true;
    return out;
}

bool no_pointed_equivalence(const ImagePtr& x_image, const ImagePtr& y_image, const SearchOptions& options)
{
    return analyze_pointed_equivalence(x_image, y_image, options).no_pointed_equivalence;
}

}  // namespace dht
