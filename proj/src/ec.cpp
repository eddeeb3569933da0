#include "dht/ec.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dht {

EcPath::EcPath(ImagePtr image, std::vector<PointIndex> prefix, PointIndex tail)
    : image_(std::move(image)), prefix_(std::move(prefix)), tail_(tail)
{
    if (!image_)
        throw Error("EC path requires an image");
    if (tail_ >= image_->size())
        throw Error("EC path tail outside image");
    for (std::size_t n = 0; n < prefix_.size(); ++n) {
        if (prefix_[n] >= image_->size())
            throw Error("EC path value outside image");
        const PointIndex next = n + 1 < prefix_.size() ? prefix_[n + 1] : tail_;
        if (!image_->adjacent_or_equal(prefix_[n], next))
            throw Error("EC path is not continuous at n=" + std::to_string(n));
    }
    while (!prefix_.empty() && prefix_.back() == tail_)
        prefix_.pop_back();
}

EcPath EcPath::constant(ImagePtr image, PointIndex p) { return EcPath(std::move(image), {}, p); }

std::vector<PointIndex> EcPath::values_through(std::size_t n) const
{
    std::vector<PointIndex> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        v[i] = (*this)(i);
    return v;
}

std::string EcPath::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (PointIndex p : prefix_)
        os << image_->point(p) << ',';
    os << image_->point(tail_) << ",...)";
    return os.str();
}

FinitePath minus(const EcPath& f) { return FinitePath(f.image(), f.values_through(f.tail_index())); }

EcPath infty(const FinitePath& f)
{
    std::vector<PointIndex> prefix(f.values().begin(), f.values().end() - 1);
    return EcPath(f.image(), std::move(prefix), f.back());
}

EcPath ec_concat(const EcPath& a, const EcPath& b)
{
    if (!same_image(a.image(), b.image()))
        throw Error("EC product: paths live in different images");
    if (a.tail() != b.start())
        throw Error("EC product: first path does not end where the second starts");
    std::vector<PointIndex> prefix = a.prefix();
    prefix.insert(prefix.end(), b.prefix().begin(), b.prefix().end());
    return EcPath(a.image(), std::move(prefix), b.tail());
}

EcPath ec_star(const EcPath& f0, const EcPath& f1)
{
    if (!f0.is_loop() || !f1.is_loop())
        throw Error("EC star: both factors must be EC loops");
    if (f0.start() != f1.start())
        throw Error("EC star: basepoints differ");
    return ec_concat(f0, f1);
}

EcPath ec_inverse(const EcPath& f)
{
    if (!f.is_loop())
        throw Error("EC inverse: not an EC loop");
    return infty(reverse(minus(f)));
}

EcPath compose(const DigitalMap& F, const EcPath& f)
{
    if (!same_image(F.source(), f.image()))
        throw Error("compose: map source differs from the path's image");
    std::vector<PointIndex> prefix;
    prefix.reserve(f.prefix().size());
    for (PointIndex p : f.prefix())
        prefix.push_back(F(p));
    return EcPath(F.target(), std::move(prefix), F(f.tail()));
}

// Eventually periodic maps ---------------------------------------------------

EventuallyPeriodicMap::EventuallyPeriodicMap(ImagePtr image, std::vector<PointIndex> prefix,
                                             std::vector<PointIndex> cycle)
    : image_(std::move(image)), prefix_(std::move(prefix)), cycle_(std::move(cycle))
{
    if (cycle_.empty())
        throw Error("eventually periodic map needs a non-empty cycle");
    for (PointIndex p : prefix_)
        if (p >= image_->size())
            throw Error("map value outside image");
    for (PointIndex p : cycle_)
        if (p >= image_->size())
            throw Error("map value outside image");
}

EventuallyPeriodicMap EventuallyPeriodicMap::from(const EcPath& f)
{
    return EventuallyPeriodicMap(f.image(), f.prefix(), {f.tail()});
}

PointIndex EventuallyPeriodicMap::operator()(std::size_t n) const
{
    return n < prefix_.size() ? prefix_[n] : cycle_[(n - prefix_.size()) % cycle_.size()];
}

bool EventuallyPeriodicMap::is_eventually_constant() const
{
    return std::all_of(cycle_.begin(), cycle_.end(), [&](PointIndex p) { return p == cycle_.front(); });
}

std::optional<EcPath> EventuallyPeriodicMap::as_ec() const
{
    if (!is_eventually_constant())
        return std::nullopt;
    return EcPath(image_, prefix_, cycle_.front());
}

EcCheck check_ec_family(const std::vector<EventuallyPeriodicMap>& stages, bool endpoints_fixed)
{
    EcCheck c;
    auto fail = [&](std::size_t t, std::optional<std::size_t> n, std::string why) {
        c.ok = false;
        c.stage = t;
        c.n = n;
        c.reason = std::move(why);
        return c;
    };
    if (stages.empty())
        return fail(0, std::nullopt, "no stages");
    std::size_t period = 1;
    std::size_t pre = 0;
    for (const auto& s : stages) {
        period = std::lcm(period, s.cycle().size());
        pre = std::max(pre, s.prefix().size());
    }
    // Past pre + period every pair of stages repeats, so this window decides
    // all n.
    const std::size_t horizon = pre + period + 1;
    const ImagePtr& image = stages.front().image();
    for (std::size_t t = 0; t < stages.size(); ++t) {
        const auto& s = stages[t];
        if (!same_image(s.image(), image))
            return fail(t, std::nullopt, "stage " + std::to_string(t) + " lives in a different image");
        if (!s.is_eventually_constant())
            return fail(t, std::nullopt, "stage " + std::to_string(t) + " is not eventually constant");
        for (std::size_t n = 0; n + 1 < horizon; ++n)
            if (!image->adjacent_or_equal(s(n), s(n + 1)))
                return fail(t, n, "stage " + std::to_string(t) + " is not continuous at n=" + std::to_string(n));
        if (t > 0)
            for (std::size_t n = 0; n < horizon; ++n)
                if (!image->adjacent_or_equal(stages[t - 1](n), s(n)))
                    return fail(t, n,
                                "stages " + std::to_string(t - 1) + " and " + std::to_string(t) +
                                    " are not continuous in t at n=" + std::to_string(n));
        if (endpoints_fixed && (s(0) != stages.front()(0) || s(horizon) != stages.front()(horizon)))
            return fail(t, std::nullopt, "stage " + std::to_string(t) + " moves an endpoint");
    }
    return c;
}

EcCheck check_ec_homotopy(const EcHomotopy& h, bool endpoints_fixed)
{
    std::vector<EventuallyPeriodicMap> stages;
    stages.reserve(h.stages.size());
    for (const auto& s : h.stages)
        stages.push_back(EventuallyPeriodicMap::from(s));
    return check_ec_family(stages, endpoints_fixed);
}

bool is_ec_homotopy(const EcHomotopy& h, bool endpoints_fixed) { return check_ec_homotopy(h, endpoints_fixed).ok; }

EcHomotopy concat(const EcHomotopy& a, const EcHomotopy& b)
{
    if (a.stages.empty())
        return b;
    if (b.stages.empty())
        return a;
    if (!(a.to() == b.from()))
        throw Error("concat: homotopies do not meet");
    EcHomotopy out = a;
    out.stages.insert(out.stages.end(), b.stages.begin() + 1, b.stages.end());
    return out;
}

EcHomotopy reversed(const EcHomotopy& h)
{
    return EcHomotopy{std::vector<EcPath>(h.stages.rbegin(), h.stages.rend())};
}

EcHomotopy lift(const PathHomotopy& h)
{
    EcHomotopy out;
    for (const auto& s : h.stages)
        out.stages.push_back(infty(s));
    return out;
}

PathHomotopy restrict(const EcHomotopy& h)
{
    std::size_t m = 0;
    for (const auto& s : h.stages)
        m = std::max(m, s.tail_index());
    PathHomotopy out;
    for (const auto& s : h.stages)
        out.stages.emplace_back(s.image(), s.values_through(m));
    return out;
}

EcHomotopy absorb(const FinitePath& f, const FinitePath& fbar)
{
    if (!is_trivial_extension(fbar, f))
        throw Error("absorb: not a trivial extension");
    const auto& a = fbar.values();
    const auto& b = f.values();
    EcHomotopy h{{infty(f)}};
    std::size_t j = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (j + 1 < b.size() && a[i] == b[j + 1]) {
            ++j;
            continue;
        }
        // a[i] repeats b[j]: one more inserted entry.
        std::vector<PointIndex> cur(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        cur.insert(cur.end(), b.begin() + static_cast<std::ptrdiff_t>(j) + 1, b.end());
        EcPath stage = infty(FinitePath(f.image(), std::move(cur)));
        if (!(stage == h.to()))
            h.stages.push_back(std::move(stage));
    }
    return h;
}

EcHomotopy left_congruence(const EcPath& f, const EcHomotopy& h)
{
    EcHomotopy out;
    for (const auto& s : h.stages)
        out.stages.push_back(ec_star(f, s));
    return out;
}

std::vector<EcPath> stagewise_star(const std::vector<EcPath>& h_stages, const EcPath& g)
{
    std::vector<EcPath> out;
    for (const auto& s : h_stages)
        out.push_back(ec_star(s, g));
    return out;
}

EcHomotopy ec_star_with_padding(const std::vector<EcPath>& h_stages, const EcPath& g)
{
    if (h_stages.empty())
        throw Error("padding: no stages");
    std::size_t m = 0;
    for (const auto& s : h_stages) {
        if (!s.is_loop() || s.start() != g.start())
            throw Error("padding: stages and g must be loops at a common basepoint");
        m = std::max(m, s.tail_index());
    }
    const PointIndex x0 = g.start();
    EcHomotopy out;
    for (const auto& s : h_stages) {
        const FinitePath pad = FinitePath::constant(g.image(), x0, m - s.tail_index());
        out.stages.push_back(infty(product(product(minus(s), pad), minus(g))));
    }
    return out;
}

EcHomotopy two_sided_congruence(const EcHomotopy& h, const EcHomotopy& k)
{
    const EcPath& f = h.from();
    const EcPath& fp = h.to();
    const EcPath& gp = k.to();
    EcHomotopy first = left_congruence(f, k);
    EcHomotopy padded = ec_star_with_padding(h.stages, gp);
    // The padded family starts and ends at trivial extensions of f*g' and
    // f'*g'; absorb closes both gaps.
    EcHomotopy to_start = absorb(minus(ec_star(f, gp)), minus(padded.from()));
    EcHomotopy from_end = reversed(absorb(minus(ec_star(fp, gp)), minus(padded.to())));
    return concat(concat(concat(first, to_start), padded), from_end);
}

// Reduction -------------------------------------------------------------------

Reduction ec_reduce(const EcPath& f)
{
    const ImagePtr& image = f.image();
    std::vector<PointIndex> seq = f.values_through(f.tail_index());
    EcHomotopy chain{{f}};
    auto push = [&] {
        std::vector<PointIndex> prefix(seq.begin(), seq.end() - 1);
        chain.stages.emplace_back(image, std::move(prefix), seq.back());
    };
    for (;;) {
        bool moved = false;
        for (std::size_t i = 1; i < seq.size() && !moved; ++i)
            if (seq[i] == seq[i - 1]) {
                seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(i));
                moved = true;
            }
        for (std::size_t i = 1; i + 1 < seq.size() && !moved; ++i)
            if (image->adjacent_or_equal(seq[i - 1], seq[i + 1])) {
                seq[i] = seq[i - 1];
                moved = true;
            }
        for (std::size_t i = 0; i + 3 < seq.size() && !moved; ++i)
            if (image->adjacent_or_equal(seq[i], seq[i + 3])) {
                seq[i + 1] = seq[i];
                seq[i + 2] = seq[i + 3];
                moved = true;
            }
        if (!moved)
            break;
        push();
    }
    return Reduction{chain.to(), std::move(chain)};
}

// Search ----------------------------------------------------------------------

namespace {

State padded(const EcPath& f, std::size_t bound) { return pack(f.values_through(bound)); }

}  // namespace

EcResult ec_homotopic(const EcPath& f, const EcPath& g, bool endpoints_fixed, std::size_t max_prefix,
                      const SearchOptions& options)
{
    if (!same_image(f.image(), g.image()))
        throw Error("ec_homotopic: paths live in different images");
    const std::size_t need = std::max(f.tail_index(), g.tail_index());
    if (max_prefix < need)
        throw Error("ec_homotopic: prefix bound " + std::to_string(max_prefix) + " is below max(N_f, N_g) = " +
                    std::to_string(need));
    EcResult r;
    r.bound = need;
    if (f == g) {
        r.verdict = Verdict::yes;
        r.witness = EcHomotopy{{f}};
        r.method = "identical";
        return r;
    }
    if (endpoints_fixed) {
        if (f.start() != g.start() || f.tail() != g.tail()) {
            r.verdict = Verdict::exact_no;
            r.method = "endpoints differ";
            return r;
        }
        Reduction rf = ec_reduce(f);
        Reduction rg = ec_reduce(g);
        if (rf.normal == rg.normal) {
            r.verdict = Verdict::yes;
            r.witness = concat(rf.chain, reversed(rg.chain));
            r.method = "reduction";
            return r;
        }
    }
    LoopConstraints c;
    c.ends = endpoints_fixed ? LoopConstraints::Ends::fixed : LoopConstraints::Ends::free;
    // A stage admitted at a smaller bound is admitted at max_prefix too, so
    // one search at max_prefix decides.
    const std::size_t bound = max_prefix;
    const LoopSpace space(f.image(), bound, c, f.start(), f.tail());
    std::size_t max_n[2] = {0, 0};
    auto res = space.run_search(padded(f, bound), {padded(g, bound)}, options.max_frontier,
                                [&](int side, std::span<const PointIndex> v) {
                                    std::size_t k = v.size() - 1;
                                    while (k > 0 && v[k - 1] == v.back())
                                        --k;
                                    max_n[side] = std::max(max_n[side], k);
                                });
    r.bound = bound;
    r.states = res.visited;
    if (res.status == SearchStatus::found) {
        EcHomotopy h;
        for (const auto& s : res.path) {
            auto v = unpack(s);
            PointIndex tail = v.back();
            v.pop_back();
            h.stages.emplace_back(f.image(), std::move(v), tail);
        }
        r.verdict = Verdict::yes;
        r.witness = std::move(h);
        r.method = "search at prefix bound " + std::to_string(bound);
        return r;
    }
    if (res.status == SearchStatus::budget_exceeded) {
        r.verdict = Verdict::bound_exhausted;
        r.method = "node budget exceeded at prefix bound " + std::to_string(bound);
        return r;
    }
    // Saturation with headroom: no reachable stage comes within two of the bound.
    const bool headroom = max_n[res.exhausted_side] + 2 <= bound;
    r.verdict = headroom ? Verdict::exact_no : Verdict::no_within_bound;
    r.method = headroom ? "saturated below the prefix bound" : "exhausted at prefix bound";
    return r;
}

EcPathFile parse_ecpath_file(std::istream& in)
{
    EcPathFile out;
    std::string line;
    bool have_header = false;
    bool have_tail = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue;
        if (!have_header) {
            if (tok != "ecpath" || !(ls >> out.image_file))
                throw Error("ecpath file: expected header `ecpath <image-file>`");
            have_header = true;
        } else if (have_tail) {
            throw Error("ecpath file: content after the tail line");
        } else if (tok == "tail") {
            unsigned long t = 0;
            if (!(ls >> t))
                throw Error("ecpath file: tail line needs an index");
            out.tail = static_cast<PointIndex>(t);
            have_tail = true;
        } else {
            out.prefix.push_back(static_cast<PointIndex>(std::stoul(tok)));
        }
    }
    if (!have_header || !have_tail)
        throw Error("ecpath file: missing header or tail line");
    return out;
}

void write_ecpath(std::ostream& out, const std::string& image_file, const EcPath& f)
{
    out << "ecpath " << image_file << '\n';
    for (PointIndex p : f.prefix())
        out << p << '\n';
    out << "tail " << f.tail() << '\n';
}

}  // namespace dht
