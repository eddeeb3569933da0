#include "dht/paths.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace dht {

namespace {

void require_same_image(const FinitePath& a, const FinitePath& b, const char* what)
{
    if (!same_image(a.image(), b.image()))
        throw Error(std::string(what) + ": paths live in different images");
}

/// Runs of equal consecutive values: (value, multiplicity).
std::vector<std::pair<PointIndex, std::size_t>> runs(const std::vector<PointIndex>& v)
{
    std::vector<std::pair<PointIndex, std::size_t>> out;
    for (PointIndex x : v) {
        if (!out.empty() && out.back().first == x)
            ++out.back().second;
        else
            out.emplace_back(x, 1);
    }
    return out;
}

std::size_t moves(const State& s)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        n += s[i] != s[i + 1];
    return n;
}

}  // namespace

FinitePath::FinitePath(ImagePtr image, std::vector<PointIndex> values) : image_(std::move(image)), values_(std::move(values))
{
    if (!image_)
        throw Error("path requires an image");
    if (values_.empty())
        throw Error("path must have at least one value");
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (values_[t] >= image_->size())
            throw Error("path value outside image");
        if (t > 0 && !image_->adjacent_or_equal(values_[t - 1], values_[t]))
            throw Error("path is not continuous between t=" + std::to_string(t - 1) + " and t=" + std::to_string(t));
    }
}

FinitePath FinitePath::from_points(ImagePtr image, const std::vector<LatticePoint>& points)
{
    std::vector<PointIndex> v;
    for (const auto& p : points)
        v.push_back(image->index_of(p));
    return FinitePath(std::move(image), std::move(v));
}

FinitePath FinitePath::constant(ImagePtr image, PointIndex p, std::size_t length)
{
    return FinitePath(std::move(image), std::vector<PointIndex>(length + 1, p));
}

std::string FinitePath::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t t = 0; t < values_.size(); ++t)
        os << (t ? "," : "") << image_->point(values_[t]);
    os << ')';
    return os.str();
}

FinitePath reverse(const FinitePath& f)
{
    std::vector<PointIndex> v(f.values().rbegin(), f.values().rend());
    return FinitePath(f.image(), std::move(v));
}

FinitePath product(const FinitePath& f, const FinitePath& g)
{
    require_same_image(f, g, "product");
    if (f.back() != g.front())
        throw Error("product: f does not end where g starts");
    std::vector<PointIndex> v = f.values();
    v.insert(v.end(), g.values().begin() + 1, g.values().end());
    return FinitePath(f.image(), std::move(v));
}

bool is_trivial_extension(const FinitePath& fp, const FinitePath& f)
{
    if (!same_image(fp.image(), f.image()))
        return false;
    const auto& a = fp.values();
    const auto& b = f.values();
    if (a.size() < b.size() || a.front() != b.front())
        return false;
    // Match each entry of fp either to the next entry of f or, as a
    // repetition, to the current one.
    std::size_t j = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (j + 1 < b.size() && a[i] == b[j + 1])
            ++j;
        else if (a[i] != b[j])
            return false;
    }
    return j + 1 == b.size();
}

std::vector<FinitePath> enumerate_trivial_extensions(const FinitePath& f, std::size_t target_len)
{
    if (target_len < f.length())
        return {};
    const auto r = runs(f.values());
    const std::size_t extra = target_len - f.length();
    std::vector<std::size_t> add(r.size(), 0);
    std::vector<FinitePath> out;
    auto rec = [&](auto&& self, std::size_t k, std::size_t left) -> void {
        if (k + 1 == r.size()) {
            add[k] = left;
            std::vector<PointIndex> v;
            v.reserve(target_len + 1);
            for (std::size_t i = 0; i < r.size(); ++i)
                v.insert(v.end(), r[i].second + add[i], r[i].first);
            out.emplace_back(f.image(), std::move(v));
            return;
        }
        for (std::size_t a = 0; a <= left; ++a) {
            add[k] = a;
            self(self, k + 1, left - a);
        }
    };
    rec(rec, 0, extra);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_tab(const FinitePath& f, PointIndex x0)
{
    if (f.front() != x0 || f.back() != x0)
        throw Error("is_tab: path is not a loop at the given basepoint");
    for (std::size_t t = 0; t + 1 < f.values().size(); ++t)
        if (f[t] == x0 && f[t + 1] == x0)
            return false;
    return true;
}

bool is_path_homotopy(const PathHomotopy& h)
{
    if (h.stages.empty())
        return false;
    const auto& first = h.stages.front();
    for (std::size_t t = 0; t < h.stages.size(); ++t) {
        const auto& s = h.stages[t];
        if (!same_image(s.image(), first.image()) || s.length() != first.length())
            return false;
        if (t > 0)
            for (std::size_t i = 0; i < s.values().size(); ++i)
                if (!s.image()->adjacent_or_equal(h.stages[t - 1][i], s[i]))
                    return false;
    }
    return true;
}

bool holds_endpoints_fixed(const PathHomotopy& h)
{
    if (h.stages.empty())
        return false;
    for (const auto& s : h.stages)
        if (s.front() != h.from().front() || s.back() != h.from().back())
            return false;
    return true;
}

bool is_loop_preserving(const PathHomotopy& h)
{
    return std::all_of(h.stages.begin(), h.stages.end(), [](const FinitePath& s) { return s.is_loop(); });
}

bool is_tab_every_stage(const PathHomotopy& h, PointIndex x0)
{
    for (const auto& s : h.stages)
        if (s.front() != x0 || s.back() != x0 || !is_tab(s, x0))
            return false;
    return true;
}

// LoopSpace ------------------------------------------------------------------

LoopSpace::LoopSpace(ImagePtr image, std::size_t length, LoopConstraints constraints, PointIndex start, PointIndex end)
    : image_(std::move(image)), length_(length), constraints_(std::move(constraints)), start_(start), end_(end)
{
    if (image_->size() > 256)
        throw Error("loop space search supports images of at most 256 points");
    if (constraints_.ends == LoopConstraints::Ends::fixed && (start_ >= image_->size() || end_ >= image_->size()))
        throw Error("loop space endpoints outside image");
}

bool LoopSpace::admits_value(std::size_t pos, PointIndex prev, PointIndex value) const
{
    if (constraints_.ends == LoopConstraints::Ends::fixed) {
        if (pos == 0 && value != start_)
            return false;
        if (pos == length_ && value != end_)
            return false;
    }
    if (pos > 0) {
        if (!image_->adjacent_or_equal(prev, value))
            return false;
        if (constraints_.tab_basepoint && prev == *constraints_.tab_basepoint && value == prev)
            return false;
        for (const auto& fp : constraints_.forbidden_pairs)
            if (fp.pos + 1 == pos && fp.first == prev && fp.second == value)
                return false;
    }
    return true;
}

bool LoopSpace::runs_generate() const
{
    return !constraints_.forbidden && constraints_.ends != LoopConstraints::Ends::loop_preserving;
}

void LoopSpace::run_neighbors(const State& s, const std::function<bool(const State&)>& visit) const
{
    if (!runs_generate()) {
        neighbors(s, visit);
        return;
    }
    const std::size_t n = length_ + 1;
    const auto base = unpack(s);
    std::vector<PointIndex> chosen = base;
    State out = s;
    bool stop = false;
    for (std::size_t first = 0; first < n && !stop; ++first) {
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            for (PointIndex c : image_->closed_neighbors(base[pos])) {
                if (c == base[pos] || !admits_value(pos, pos ? chosen[pos - 1] : 0, c))
                    continue;
                chosen[pos] = c;
                out[pos] = static_cast<char>(c);
                if (pos + 1 == n || admits_value(pos + 1, c, base[pos + 1])) {
                    stop = !visit(out);
                    if (stop)
                        break;
                }
                if (pos + 1 < n) {
                    self(self, pos + 1);
                    if (stop)
                        break;
                }
            }
            chosen[pos] = base[pos];
            out[pos] = s[pos];
        };
        rec(rec, first);
    }
}

bool LoopSpace::admits(std::span<const PointIndex> v) const
{
    if (v.size() != length_ + 1)
        return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= image_->size() || !admits_value(i, i ? v[i - 1] : 0, v[i]))
            return false;
    }
    if (constraints_.ends == LoopConstraints::Ends::loop_preserving && v.front() != v.back())
        return false;
    if (constraints_.forbidden && constraints_.forbidden(v))
        return false;
    return true;
}

void LoopSpace::neighbors(const State& s, const std::function<bool(const State&)>& visit) const
{
    const std::size_t n = length_ + 1;
    State out(n, '\0');
    std::vector<PointIndex> chosen(n);
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            if (constraints_.ends == LoopConstraints::Ends::loop_preserving && chosen.front() != chosen.back())
                return;
            if (constraints_.forbidden && constraints_.forbidden(chosen))
                return;
            stop = !visit(out);
            return;
        }
        const PointIndex cur = static_cast<unsigned char>(s[pos]);
        for (PointIndex c : image_->closed_neighbors(cur)) {
            if (!admits_value(pos, pos ? chosen[pos - 1] : 0, c))
                continue;
            chosen[pos] = c;
            out[pos] = static_cast<char>(c);
            self(self, pos + 1);
            if (stop)
                return;
        }
    };
    rec(rec, 0);
}

void LoopSpace::window_neighbors(const State& s, std::size_t width,
                                 const std::function<bool(const State&)>& visit) const
{
    const std::size_t n = length_ + 1;
    const auto base = unpack(s);
    std::vector<PointIndex> chosen = base;
    State out = s;
    bool stop = false;
    for (std::size_t start = 0; start < n && !stop; ++start) {
        const std::size_t stop_pos = std::min(n, start + width);
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == stop_pos) {
                if (stop_pos < n && !admits_value(stop_pos, chosen[stop_pos - 1], chosen[stop_pos]))
                    return;
                if (out == s)
                    return;
                if (constraints_.ends == LoopConstraints::Ends::loop_preserving && chosen.front() != chosen.back())
                    return;
                if (constraints_.forbidden && constraints_.forbidden(chosen))
                    return;
                stop = !visit(out);
                return;
            }
            for (PointIndex c : image_->closed_neighbors(base[pos])) {
                if (!admits_value(pos, pos ? chosen[pos - 1] : 0, c))
                    continue;
                chosen[pos] = c;
                out[pos] = static_cast<char>(c);
                self(self, pos + 1);
                if (stop)
                    break;
            }
            chosen[pos] = base[pos];
            out[pos] = s[pos];
        };
        rec(rec, start);
    }
}

void LoopSpace::enumerate(const std::function<bool(const State&)>& visit) const
{
    const std::size_t n = length_ + 1;
    State out(n, '\0');
    std::vector<PointIndex> chosen(n);
    bool stop = false;
    auto remaining_ok = [&](std::size_t pos, PointIndex c) {
        const std::size_t left = length_ - pos;
        if (constraints_.ends == LoopConstraints::Ends::fixed) {
            auto d = image_->distance(c, end_);
            return d && *d <= left;
        }
        if (constraints_.ends == LoopConstraints::Ends::loop_preserving) {
            auto d = image_->distance(c, chosen[0]);
            return d && *d <= left;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            if (constraints_.ends == LoopConstraints::Ends::loop_preserving && chosen.front() != chosen.back())
                return;
            if (constraints_.forbidden && constraints_.forbidden(chosen))
                return;
            stop = !visit(out);
            return;
        }
        auto try_value = [&](PointIndex c) {
            if (!admits_value(pos, pos ? chosen[pos - 1] : 0, c))
                return;
            chosen[pos] = c;
            if (!remaining_ok(pos, c))
                return;
            out[pos] = static_cast<char>(c);
            self(self, pos + 1);
        };
        if (pos == 0) {
            for (PointIndex c = 0; c < image_->size() && !stop; ++c)
                try_value(c);
        } else {
            for (PointIndex c : image_->closed_neighbors(chosen[pos - 1])) {
                try_value(c);
                if (stop)
                    return;
            }
        }
    };
    rec(rec, 0);
}

std::optional<std::uint32_t> LoopPartition::component_of(const State& s) const
{
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s)
        return std::nullopt;
    return component[static_cast<std::size_t>(it - states.begin())];
}

namespace {

/// Open addressing map from state codes to positions; grows as needed.
class CodeTable {
public:
    explicit CodeTable(std::size_t n = 0) { reset(n); }
    void insert(std::uint64_t key, std::uint32_t value)
    {
        if (2 * (size_ + 1) > keys_.size())
            grow();
        place(key, value);
        ++size_;
    }
    std::optional<std::uint32_t> find(std::uint64_t key) const
    {
        for (std::size_t h = slot(key);; h = (h + 1) & mask_) {
            if (keys_[h] == key)
                return values_[h];
            if (keys_[h] == kEmpty)
                return std::nullopt;
        }
    }

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    std::size_t slot(std::uint64_t key) const { return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 20) & mask_; }
    void reset(std::size_t n)
    {
        std::size_t cap = 16;
        while (cap < 2 * n)
            cap *= 2;
        keys_.assign(cap, kEmpty);
        values_.assign(cap, 0);
        mask_ = cap - 1;
    }
    void place(std::uint64_t key, std::uint32_t value)
    {
        std::size_t h = slot(key);
        while (keys_[h] != kEmpty)
            h = (h + 1) & mask_;
        keys_[h] = key;
        values_[h] = value;
    }
    void grow()
    {
        auto keys = std::move(keys_);
        auto values = std::move(values_);
        reset(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] != kEmpty)
                place(keys[i], values[i]);
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> values_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

/// Place values of a base-`radix` code with n digits, most significant first;
/// empty when the codes would not fit in 63 bits.
std::vector<std::uint64_t> code_weights(std::size_t radix, std::size_t n)
{
    std::vector<std::uint64_t> w(n);
    std::uint64_t acc = 1;
    const std::uint64_t limit = std::uint64_t{1} << 63;
    for (std::size_t i = n; i-- > 0;) {
        w[i] = acc;
        if (i > 0 && acc > limit / radix)
            return {};
        acc *= radix;
    }
    return w;
}

}  // namespace

PathSearchResult LoopSpace::run_search(const State& from, const std::vector<State>& targets, std::size_t max_nodes,
                                       const std::function<void(int, std::span<const PointIndex>)>& on_visit) const
{
    const std::size_t n = length_ + 1;
    const auto weight = code_weights(std::max<std::size_t>(image_->size(), 2), n);
    if (!runs_generate() || weight.empty() || targets.empty()) {
        return shortest_path(
            from, targets, [&](const State& s, auto&& visit) { run_neighbors(s, visit); }, max_nodes,
            [&](const State& s) {
                if (on_visit)
                    on_visit(1, unpack(s));
            });
    }
    auto encode = [&](const State& s) {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < n; ++i)
            c += weight[i] * static_cast<unsigned char>(s[i]);
        return c;
    };
    std::vector<PointIndex> digits(n);
    auto decode = [&](std::uint64_t c) {
        for (std::size_t i = 0; i < n; ++i) {
            digits[i] = static_cast<PointIndex>(c / weight[i]);
            c %= weight[i];
        }
    };

    // Side 0 grows from `from`, side 1 from the targets; the smaller side
    // expands next. Either side running dry decides the search.
    struct Side {
        std::vector<std::uint64_t> codes;
        std::vector<std::uint32_t> parent;
        CodeTable seen;
        std::size_t head = 0;
    };
    Side side[2];
    auto add = [&](int k, std::uint64_t code, std::uint32_t par) {
        side[k].seen.insert(code, static_cast<std::uint32_t>(side[k].codes.size()));
        side[k].codes.push_back(code);
        side[k].parent.push_back(par);
        if (on_visit) {
            decode(code);
            on_visit(k, digits);
        }
    };
    add(0, encode(from), 0);
    for (const auto& t : targets) {
        const std::uint64_t c = encode(t);
        if (!side[1].seen.find(c))
            add(1, c, static_cast<std::uint32_t>(side[1].codes.size()));
    }
    PathSearchResult r;
    std::optional<std::pair<std::size_t, std::size_t>> meet;  // positions in side 0 and side 1
    if (auto j = side[1].seen.find(side[0].codes[0]))
        meet = std::make_pair(std::size_t{0}, std::size_t{*j});
    bool over = false;
    int dry = -1;
    while (!meet && !over) {
        int k = side[0].codes.size() <= side[1].codes.size() ? 0 : 1;
        if (side[k].head == side[k].codes.size()) {
            dry = k;
            break;
        }
        // Expand one whole layer of side k.
        const std::size_t layer_end = side[k].codes.size();
        for (; side[k].head < layer_end && !meet && !over; ++side[k].head) {
            const std::size_t at = side[k].head;
            decode(side[k].codes[at]);
            const std::vector<PointIndex> base = digits;
            for_each_run_code(base, side[k].codes[at], weight, false, [&](std::uint64_t next) {
                if (meet || over || side[k].seen.find(next))
                    return;
                add(k, next, static_cast<std::uint32_t>(at));
                if (auto j = side[1 - k].seen.find(next)) {
                    const std::size_t mine = side[k].codes.size() - 1;
                    meet = k == 0 ? std::make_pair(mine, std::size_t{*j}) : std::make_pair(std::size_t{*j}, mine);
                } else if (side[0].codes.size() + side[1].codes.size() > max_nodes) {
                    over = true;
                }
            });
        }
    }
    r.visited = side[0].codes.size() + side[1].codes.size();
    if (!meet) {
        r.status = over ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
        r.exhausted_side = dry;
        return r;
    }
    for (std::size_t i = meet->first;; i = side[0].parent[i]) {
        decode(side[0].codes[i]);
        r.path.push_back(pack(digits));
        if (i == 0)
            break;
    }
    std::reverse(r.path.begin(), r.path.end());
    for (std::size_t i = meet->second; side[1].parent[i] != i;) {
        i = side[1].parent[i];
        decode(side[1].codes[i]);
        r.path.push_back(pack(digits));
    }
    r.status = SearchStatus::found;
    return r;
}

LoopPartition partition_loop_space(const LoopSpace& space, std::size_t max_states)
{
    LoopPartition p;
    bool over = false;
    space.enumerate([&](const State& s) {
        p.states.push_back(s);
        over = p.states.size() > max_states;
        return !over;
    });
    if (over)
        throw BudgetExceeded("loop space has more than " + std::to_string(max_states) + " paths");
    std::sort(p.states.begin(), p.states.end());
    const std::size_t count = p.states.size();
    const std::size_t n = space.length_ + 1;
    UnionFind uf(count);
    const auto weight = code_weights(std::max<std::size_t>(space.image_->size(), 2), n);

    if (space.runs_generate() && !weight.empty()) {
        auto encode = [&](const State& s) {
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < n; ++i)
                c += weight[i] * static_cast<unsigned char>(s[i]);
            return c;
        };
        CodeTable table(count);
        for (std::size_t i = 0; i < count; ++i)
            table.insert(encode(p.states[i]), static_cast<std::uint32_t>(i));
        std::vector<PointIndex> base(n);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t k = 0; k < n; ++k)
                base[k] = static_cast<unsigned char>(p.states[i][k]);
            // Each edge is found once, from the end whose first changed entry is smaller.
            space.for_each_run_code(base, encode(p.states[i]), weight, true, [&](std::uint64_t next) {
                if (auto j = table.find(next))
                    uf.unite(i, *j);
            });
        }
    } else {
        std::unordered_map<State, std::uint32_t> index;
        for (std::size_t i = 0; i < count; ++i)
            index.emplace(p.states[i], static_cast<std::uint32_t>(i));
        for (std::size_t i = 0; i < count; ++i)
            space.run_neighbors(p.states[i], [&](const State& t) {
                auto it = index.find(t);
                if (it != index.end() && it->second > i)
                    uf.unite(i, it->second);
                return true;
            });
    }

    p.component.resize(count);
    std::unordered_map<std::size_t, std::uint32_t> label;
    for (std::size_t i = 0; i < count; ++i) {
        auto [it, inserted] = label.emplace(uf.find(i), static_cast<std::uint32_t>(label.size()));
        p.component[i] = it->second;
    }
    p.component_count = label.size();
    return p;
}

namespace {

LoopSpace space_for(const FinitePath& f, const LoopConstraints& constraints)
{
    return LoopSpace(f.image(), f.length(), constraints, f.front(), f.back());
}

PathHomotopy to_homotopy(const ImagePtr& image, const std::vector<State>& states)
{
    PathHomotopy h;
    for (const auto& s : states)
        h.stages.emplace_back(image, unpack(s));
    return h;
}

}  // namespace

ReachQuery loops_reachable(const FinitePath& f, const LoopConstraints& constraints,
                           const std::optional<FinitePath>& target, const SearchOptions& options)
{
    const LoopSpace space = space_for(f, constraints);
    if (!space.admits(f.values()))
        throw Error("loops_reachable: the start path violates the constraints");
    ReachQuery q;
    auto nb = [&](const State& s, auto&& visit) { space.neighbors(s, visit); };
    if (target) {
        if (target->length() != f.length() || !same_image(target->image(), f.image()))
            throw Error("loops_reachable: target must have the same image and length");
        if (!space.admits(target->values())) {
            q.status = SearchStatus::exhausted;
            return q;
        }
        auto r = shortest_path(pack(f.values()), {pack(target->values())}, nb, options.max_frontier);
        q.status = r.status;
        if (r.status == SearchStatus::found)
            q.witness = to_homotopy(f.image(), r.path);
        return q;
    }
    auto r = reachable_set(
        pack(f.values()), [&](const State& s, auto&& visit) { space.run_neighbors(s, visit); }, options.max_frontier);
    q.status = r.status;
    for (const auto& s : r.states)
        q.reachable.emplace_back(f.image(), unpack(s));
    std::sort(q.reachable.begin(), q.reachable.end());
    return q;
}

// TAB equivalence ------------------------------------------------------------

namespace {

bool is_constant(const FinitePath& f)
{
    return std::all_of(f.values().begin(), f.values().end(), [&](PointIndex v) { return v == f.front(); });
}

/// TAB trivial extensions of length len. A constant loop contributes its padded
/// form, which is admitted only as an end stage.
std::vector<State> tab_extensions(const FinitePath& f, PointIndex x0, std::size_t len)
{
    std::vector<State> out;
    if (is_constant(f)) {
        if (len >= f.length())
            out.push_back(State(len + 1, static_cast<char>(x0)));
        return out;
    }
    for (const auto& e : enumerate_trivial_extensions(f, len))
        if (is_tab(e, x0))
            out.push_back(pack(e.values()));
    return out;
}

/// Sum of graph distances to the nearest target plus a penalty on the
/// difference in number of moves.
std::uint64_t tab_heuristic(const DigitalImage& image, const State& s, const std::vector<State>& targets)
{
    std::uint64_t best = UINT64_MAX;
    const std::size_t ms = moves(s);
    for (const auto& t : targets) {
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            h += image.distance(static_cast<unsigned char>(s[i]), static_cast<unsigned char>(t[i])).value_or(1000);
        const std::size_t mt = moves(t);
        h += (ms > mt ? ms - mt : mt - ms) * s.size();
        best = std::min(best, h);
    }
    return best;
}

}  // namespace

TabResult tab_equivalent(const FinitePath& f, const FinitePath& g, PointIndex x0, std::size_t max_len,
                         const SearchOptions& options)
{
    require_same_image(f, g, "tab_equivalent");
    const ImagePtr& image = f.image();
    for (const FinitePath* p : {&f, &g}) {
        if (p->front() != x0 || p->back() != x0)
            throw Error("tab_equivalent: inputs must be loops at the basepoint");
        if (!is_tab(*p, x0))
            throw Error("tab_equivalent: input " + p->to_string() + " is not TAB");
    }

    TabResult result;
    if (f == g) {
        result.verdict = Verdict::yes;
        result.witness = PathHomotopy{{f}};
        return result;
    }
    const std::size_t min_len = std::max(f.length(), g.length());
    bool complete = max_len >= min_len;
    LoopConstraints c;
    c.tab_basepoint = x0;
    const std::size_t guided_budget = std::min<std::size_t>(options.max_frontier, 200'000);

    for (std::size_t len = min_len; len <= max_len; ++len) {
        const auto fe = tab_extensions(f, x0, len);
        const auto ge = tab_extensions(g, x0, len);
        std::ostringstream note;
        note << "length " << len << ": " << fe.size() << " x " << ge.size() << " TAB extensions";
        if (fe.empty() || ge.empty()) {
            result.notes.push_back(note.str() + ", nothing to compare");
            continue;
        }
        const LoopSpace space(image, len, c, x0, x0);
        auto is_end = [&](const State& s) { return std::find(ge.begin(), ge.end(), s) != ge.end(); };
        auto one_step_to = [&](const State& s, const State& t) {
            for (std::size_t i = 0; i < s.size(); ++i)
                if (!image->adjacent_or_equal(static_cast<unsigned char>(s[i]), static_cast<unsigned char>(t[i])))
                    return false;
            return true;
        };

        // Guided search over local moves first; cheap when a witness exists.
        for (const auto& start : fe) {
            if (!space.admits(unpack(start)))
                continue;
            auto r = guided_search(
                start, [&](const State& s, auto&& visit) { space.window_neighbors(s, 3, visit); },
                [&](const State& s) { return tab_heuristic(*image, s, ge); },
                [&](const State& s, State& target) {
                    for (const auto& t : ge)
                        if (one_step_to(s, t)) {
                            target = t;
                            return true;
                        }
                    return false;
                },
                guided_budget);
            if (r.status == SearchStatus::found) {
                result.verdict = Verdict::yes;
                result.witness = to_homotopy(image, r.path);
                result.notes.push_back(note.str() + ", witness by local-move search (" +
                                       std::to_string(r.path.size() - 1) + " steps)");
                return result;
            }
        }

        // Exhaustive: the union of components containing g's extensions.
        std::unordered_set<State> seen;
        std::vector<State> queue;
        for (const auto& t : ge)
            if (seen.insert(t).second)
                queue.push_back(t);
        bool over = false;
        for (std::size_t head = 0; head < queue.size() && !over; ++head) {
            const State s = queue[head];
            space.run_neighbors(s, [&](const State& n) {
                if (seen.insert(n).second) {
                    queue.push_back(n);
                    over = seen.size() > options.max_frontier;
                }
                return !over;
            });
        }
        if (over) {
            complete = false;
            result.notes.push_back(note.str() + ", exhaustive search exceeded the node budget");
            continue;
        }
        for (const auto& start : fe)
            if (seen.count(start)) {
                auto r = shortest_path(start, ge, [&](const State& s, auto&& visit) { space.run_neighbors(s, visit); },
                                       options.max_frontier);
                if (r.status == SearchStatus::found) {
                    result.verdict = Verdict::yes;
                    result.witness = to_homotopy(image, r.path);
                    result.notes.push_back(note.str() + ", witness by exhaustive search");
                    return result;
                }
            }
        (void)is_end;
        result.notes.push_back(note.str() + ", exhausted " + std::to_string(seen.size()) + " stages, no homotopy");
    }
    result.verdict = complete ? Verdict::no_within_bound : Verdict::bound_exhausted;
    return result;
}

PathFile parse_path_file(std::istream& in)
{
    PathFile out;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue;
        if (!have_header) {
            if (tok != "path" || !(ls >> out.image_file))
                throw Error("path file: expected header `path <image-file>`");
            have_header = true;
            continue;
        }
        out.values.push_back(static_cast<PointIndex>(std::stoul(tok)));
    }
    if (!have_header)
        throw Error("path file: missing header");
    return out;
}

}  // namespace dht
