#include "dht/fundamental.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace dht {

LoopClass make_class(const EcPath& f, std::size_t bound)
{
    if (!f.is_loop())
        throw Error("loop class: representative is not an EC loop");
    return LoopClass{f, bound};
}

std::string ClassCache::key(const EcPath& f, const EcPath& g, std::size_t bound)
{
    const EcPath& a = f < g ? f : g;
    const EcPath& b = f < g ? g : f;
    std::vector<PointIndex> va = a.prefix();
    va.push_back(a.tail());
    std::vector<PointIndex> vb = b.prefix();
    vb.push_back(b.tail());
    return pack(va) + '\xff' + pack(vb) + '\xff' + std::to_string(bound);
}

std::optional<Verdict> ClassCache::find(const EcPath& f, const EcPath& g, std::size_t bound) const
{
    std::shared_lock lock(mutex_);
    auto it = verdicts_.find(key(f, g, bound));
    if (it == verdicts_.end())
        return std::nullopt;
    return it->second;
}

void ClassCache::store(const EcPath& f, const EcPath& g, std::size_t bound, Verdict v)
{
    std::unique_lock lock(mutex_);
    verdicts_[key(f, g, bound)] = v;
}

std::size_t ClassCache::size() const
{
    std::shared_lock lock(mutex_);
    return verdicts_.size();
}

EcResult class_equal(const EcPath& f, const EcPath& g, std::size_t bound, const SearchOptions& options)
{
    if (!f.is_loop() || !g.is_loop())
        throw Error("class_equal: both representatives must be EC loops");
    if (f.start() != g.start() || !same_image(f.image(), g.image()))
        throw Error("class_equal: basepoints differ");
    const std::size_t b = std::max({bound, f.tail_index(), g.tail_index()});
    return ec_homotopic(f, g, true, b, options);
}

EcResult class_equal(const LoopClass& a, const LoopClass& b, const SearchOptions& options)
{
    return class_equal(a.representative, b.representative, std::max(a.bound, b.bound), options);
}

Verdict class_equal_cached(ClassCache& cache, const EcPath& f, const EcPath& g, std::size_t bound,
                           const SearchOptions& options)
{
    if (auto v = cache.find(f, g, bound))
        return *v;
    const Verdict v = class_equal(f, g, bound, options).verdict;
    cache.store(f, g, bound, v);
    return v;
}

LoopClass identity_class(const ImagePtr& image, PointIndex x0, std::size_t bound)
{
    return LoopClass{EcPath::constant(image, x0), bound};
}

LoopClass class_product(const LoopClass& a, const LoopClass& b)
{
    return LoopClass{ec_star(a.representative, b.representative), std::max(a.bound, b.bound)};
}

LoopClass class_inverse(const LoopClass& a) { return LoopClass{ec_inverse(a.representative), a.bound}; }

LoopClass induced_hom(const DigitalMap& F, const LoopClass& a)
{
    if (!is_continuous(F))
        throw Error("induced_hom: map is not continuous");
    return LoopClass{compose(F, a.representative), a.bound};
}

EcPath conjugate(const FinitePath& q, const EcPath& f)
{
    if (!same_image(q.image(), f.image()))
        throw Error("basepoint change: path and loop live in different images");
    if (!f.is_loop() || q.front() != f.start())
        throw Error("basepoint change: the path does not start at the loop's basepoint");
    return infty(product(product(reverse(q), minus(f)), q));
}

LoopClass basepoint_change(const FinitePath& q, const LoopClass& a)
{
    return LoopClass{conjugate(q, a.representative), a.bound};
}

bool is_simple_closed_curve(const DigitalImage& image)
{
    if (image.size() < 3 || !is_connected(image))
        return false;
    for (PointIndex i = 0; i < image.size(); ++i)
        if (image.neighbors(i).size() != 2)
            return false;
    return true;
}

long winding_number(const EcPath& f)
{
    const DigitalImage& c = *f.image();
    if (!is_simple_closed_curve(c))
        throw Error("winding_number: image is not a simple closed curve");
    if (!f.is_loop())
        throw Error("winding_number: not a loop");
    const std::size_t n = c.size();
    std::vector<std::size_t> pos(n);
    PointIndex prev = 0;
    PointIndex cur = c.neighbors(0)[0];
    pos[0] = 0;
    for (std::size_t k = 1; k < n; ++k) {
        pos[cur] = k;
        const auto nb = c.neighbors(cur);
        const PointIndex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    long sum = 0;
    const auto v = f.values_through(f.tail_index());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] == v[i + 1])
            continue;
        const std::size_t d = (pos[v[i + 1]] + n - pos[v[i]]) % n;
        sum += d == 1 ? 1 : -1;
    }
    return sum / static_cast<long>(n);
}

std::vector<FinitePath> enumerate_loops(const ImagePtr& image, PointIndex x0, std::size_t max_len)
{
    std::vector<FinitePath> out;
    for (std::size_t len = 0; len <= max_len; ++len) {
        const LoopSpace space(image, len, LoopConstraints::endpoints_fixed(), x0, x0);
        space.enumerate([&](const State& s) {
            out.emplace_back(image, unpack(s));
            return true;
        });
    }
    return out;
}

namespace {

std::string ec_key(const EcPath& f)
{
    std::vector<PointIndex> v = f.prefix();
    v.push_back(f.tail());
    return pack(v);
}

SamplePartition compact(const std::vector<std::size_t>& raw)
{
    SamplePartition p;
    std::unordered_map<std::size_t, std::uint32_t> ids;
    for (std::size_t r : raw) {
        auto [it, inserted] = ids.emplace(r, static_cast<std::uint32_t>(ids.size()));
        p.label.push_back(it->second);
    }
    p.classes = ids.size();
    return p;
}

}  // namespace

SamplePartition partition_by_ec(const std::vector<EcPath>& loops, std::size_t bound, const SearchOptions& options,
                                ClassCache* cache)
{
    std::unordered_map<std::string, std::size_t> group_of;
    std::vector<EcPath> reps;
    std::vector<std::size_t> group(loops.size());
    for (std::size_t i = 0; i < loops.size(); ++i) {
        EcPath nf = ec_reduce(loops[i]).normal;
        auto [it, inserted] = group_of.emplace(ec_key(nf), reps.size());
        if (inserted)
            reps.push_back(nf);
        group[i] = it->second;
    }
    UnionFind uf(reps.size());
    bool complete = true;
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            if (uf.find(a) == uf.find(b))
                continue;
            const Verdict v = cache ? class_equal_cached(*cache, reps[a], reps[b], bound, options)
                                    : class_equal(reps[a], reps[b], bound, options).verdict;
            if (v == Verdict::yes)
                uf.unite(a, b);
            else if (v == Verdict::bound_exhausted)
                complete = false;
        }
    std::vector<std::size_t> raw(loops.size());
    for (std::size_t i = 0; i < loops.size(); ++i)
        raw[i] = uf.find(group[i]);
    SamplePartition p = compact(raw);
    p.complete = complete;
    return p;
}

SamplePartition partition_by_trivial_extensions(const std::vector<FinitePath>& loops, std::size_t bound,
                                                const SearchOptions& options)
{
    if (loops.empty())
        return {};
    const PointIndex x0 = loops.front().front();
    const LoopSpace space(loops.front().image(), bound, LoopConstraints::endpoints_fixed(), x0, x0);
    const LoopPartition part = partition_loop_space(space, options.max_frontier);
    std::vector<std::size_t> raw;
    raw.reserve(loops.size());
    for (const auto& f : loops) {
        if (f.front() != x0 || f.back() != x0)
            throw Error("partition: loops must share the basepoint");
        std::set<std::uint32_t> comps;
        for (const auto& e : enumerate_trivial_extensions(f, bound)) {
            auto c = part.component_of(pack(e.values()));
            if (!c)
                throw Error("partition: trivial extension missing from the loop space");
            comps.insert(*c);
        }
        if (comps.size() != 1)
            throw Error("partition: trivial extensions of " + f.to_string() + " lie in " +
                        std::to_string(comps.size()) + " components");
        raw.push_back(*comps.begin());
    }
    return compact(raw);
}

bool same_partition(const SamplePartition& a, const SamplePartition& b)
{
    if (a.label.size() != b.label.size())
        return false;
    std::unordered_map<std::uint32_t, std::uint32_t> ab;
    std::unordered_map<std::uint32_t, std::uint32_t> ba;
    for (std::size_t i = 0; i < a.label.size(); ++i) {
        auto [x, new_x] = ab.emplace(a.label[i], b.label[i]);
        auto [y, new_y] = ba.emplace(b.label[i], a.label[i]);
        if (x->second != b.label[i] || y->second != a.label[i])
            return false;
    }
    return true;
}

GroupWitness build_group_witness(const std::vector<LoopClass>& elements, const SearchOptions& options)
{
    GroupWitness w;
    w.elements = elements;
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            GroupWitness::Entry e;
            e.left = i;
            e.right = j;
            const LoopClass prod = class_product(elements[i], elements[j]);
            for (std::size_t k = 0; k < elements.size(); ++k) {
                EcResult r = class_equal(prod, elements[k], options);
                if (r.verdict == Verdict::yes) {
                    e.result = k;
                    e.certificate = std::move(r);
                    break;
                }
                e.certificate = std::move(r);
            }
            w.table.push_back(std::move(e));
        }
    return w;
}

PipelineReport unpointed_iso_pipeline(const DigitalMap& F, const DigitalMap& G, const Homotopy& H, PointIndex p,
                                      const std::vector<EcPath>& samples)
{
    PipelineReport r;
    const ImagePtr& X = F.source();
    auto fail = [&](std::string why) {
        r.ok = false;
        r.failure = std::move(why);
        return r;
    };
    if (!same_image(G.source(), F.target()) || !same_image(G.target(), X))
        return fail("F and G are not maps X -> Y -> X");
    if (!is_continuous(F) || !is_continuous(G))
        return fail("F or G is not continuous");
    if (H.stages.empty() || !is_homotopy(H))
        return fail("H is not a homotopy");
    const DigitalMap GF = compose(G, F);
    if (!(H.from() == DigitalMap::identity(X)) || !(H.to() == GF))
        return fail("H does not run from 1_X to G o F");
    if (p >= X->size())
        return fail("basepoint outside X");

    const std::size_t m = H.steps();
    std::vector<PointIndex> qv(m + 1);
    for (std::size_t t = 0; t <= m; ++t)
        qv[t] = H.stages[t](p);
    const FinitePath q(X, qv);
    r.q = q;

    r.ok = true;
    for (const auto& f : samples) {
        if (!same_image(f.image(), X) || !f.is_loop() || f.start() != p)
            return fail("sample " + f.to_string() + " is not a loop at the basepoint");
        const FinitePath fm = minus(f);
        EcHomotopy k;
        for (std::size_t t = 0; t <= m; ++t) {
            std::vector<PointIndex> qt(m + 1);
            for (std::size_t i = 0; i <= m; ++i)
                qt[i] = qv[std::min(t, i)];
            std::vector<PointIndex> hf;
            for (PointIndex x : fm.values())
                hf.push_back(H.stages[t](x));
            const FinitePath qtp(X, qt);
            k.stages.push_back(infty(product(product(qtp, FinitePath(X, hf)), reverse(qtp))));
        }
        PipelineSample s{f, conjugate(reverse(q), compose(G, compose(F, f))), k, {}, {}, {}, false};
        s.k_check = check_ec_homotopy(k, true);
        try {
            // K_0 and K_m are trivial extensions of the loop and of its image;
            // absorb joins them.
            EcHomotopy head = absorb(fm, minus(k.from()));
            EcHomotopy tail = reversed(absorb(minus(s.image_loop), minus(k.to())));
            s.chain = concat(concat(head, k), tail);
            s.chain_check = check_ec_homotopy(s.chain, true);
        } catch (const Error& e) {
            s.chain_check.ok = false;
            s.chain_check.reason = e.what();
        }
        s.identity_holds = s.k_check.ok && s.chain_check.ok && !s.chain.stages.empty() && s.chain.from() == f &&
                           s.chain.to() == s.image_loop;
        if (!s.identity_holds) {
            r.ok = false;
            if (r.failure.empty())
                r.failure = "identity check failed for " + f.to_string() + ": " +
                            (s.k_check.ok ? s.chain_check.reason : s.k_check.reason);
        }
        r.samples.push_back(std::move(s));
    }
    return r;
}

}  // namespace dht
