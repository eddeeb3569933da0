#pragma once

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "dht/ec.hpp"
#include "dht/maps.hpp"
#include "dht/paths.hpp"

namespace dht {

/// An element of G(X, x0), named by a canonical EC loop. `bound` is the
/// prefix bound under which equalities involving it are decided.
struct LoopClass {
    EcPath representative;
    std::size_t bound = 14;

    PointIndex basepoint() const { return representative.start(); }
    const ImagePtr& image() const { return representative.image(); }
};

/// Throws unless f is an EC loop.
LoopClass make_class(const EcPath& f, std::size_t bound);

/// Memoized class_equal verdicts keyed by representatives and bound.
class ClassCache {
public:
    std::optional<Verdict> find(const EcPath& f, const EcPath& g, std::size_t bound) const;
    void store(const EcPath& f, const EcPath& g, std::size_t bound, Verdict v);
    std::size_t size() const;

private:
    static std::string key(const EcPath& f, const EcPath& g, std::size_t bound);
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, Verdict> verdicts_;
};

/// Loop-class equality: EC homotopy holding the endpoints fixed, searched with
/// prefix bound max(bound, N_f, N_g).
EcResult class_equal(const EcPath& f, const EcPath& g, std::size_t bound, const SearchOptions& options = {});
EcResult class_equal(const LoopClass& a, const LoopClass& b, const SearchOptions& options = {});
/// Verdict only, through the cache; the witness is dropped.
Verdict class_equal_cached(ClassCache& cache, const EcPath& f, const EcPath& g, std::size_t bound,
                           const SearchOptions& options = {});

LoopClass identity_class(const ImagePtr& image, PointIndex x0, std::size_t bound);
LoopClass class_product(const LoopClass& a, const LoopClass& b);
LoopClass class_inverse(const LoopClass& a);
/// [F o f]; F must be continuous.
LoopClass induced_hom(const DigitalMap& F, const LoopClass& a);

/// (q^{-1} * f_- * q)_inf: carries a loop at q's start to a loop at its end.
EcPath conjugate(const FinitePath& q, const EcPath& f);
LoopClass basepoint_change(const FinitePath& q, const LoopClass& a);

/// Net number of traversals of the simple closed curve `curve`, oriented from
/// point 0 toward its lower-index neighbor. Throws unless every point of the
/// curve has exactly two neighbors and the curve is connected.
long winding_number(const EcPath& f);
bool is_simple_closed_curve(const DigitalImage& image);

/// All loops at x0 of length 0..max_len, by length then lexicographically.
std::vector<FinitePath> enumerate_loops(const ImagePtr& image, PointIndex x0, std::size_t max_len);

/// Class labels for a list of loops; equal labels mean equal classes.
struct SamplePartition {
    std::vector<std::uint32_t> label;
    std::size_t classes = 0;
    bool complete = true;  ///< false when some comparison was not decided
};

/// Groups loops by reduced form, then joins groups whose representatives
/// class_equal reports equal at the bound.
SamplePartition partition_by_ec(const std::vector<EcPath>& loops, std::size_t bound,
                                const SearchOptions& options = {}, ClassCache* cache = nullptr);
/// Labels each loop by the component of its trivial extensions of length
/// `bound` in the endpoint-fixed loop space. Throws when extensions of one
/// loop fall into different components.
SamplePartition partition_by_trivial_extensions(const std::vector<FinitePath>& loops, std::size_t bound,
                                                const SearchOptions& options = {});
/// True when both partitions induce the same equivalence relation.
bool same_partition(const SamplePartition& a, const SamplePartition& b);

/// Product table over a list of classes; each entry names the element equal
/// to the product, with the certificate that decided it.
struct GroupWitness {
    struct Entry {
        std::size_t left = 0;
        std::size_t right = 0;
        std::optional<std::size_t> result;
        EcResult certificate;
    };
    std::vector<LoopClass> elements;
    std::vector<Entry> table;
};
GroupWitness build_group_witness(const std::vector<LoopClass>& elements, const SearchOptions& options = {});

struct PipelineSample {
    EcPath loop;
    EcPath image_loop;   ///< the conjugate of G o F o loop back at p
    EcHomotopy k;        ///< K_t of the construction
    EcHomotopy chain;    ///< loop ~ image_loop holding endpoints fixed
    EcCheck k_check;
    EcCheck chain_check;
    bool identity_holds = false;
};

struct PipelineReport {
    bool ok = false;
    std::optional<FinitePath> q;  ///< q(t) = H(p, t)
    std::vector<PipelineSample> samples;
    std::string failure;
};

/// Builds K(n,t) = (q_t * (H_t o f_-) * q_t^{-1})_inf for each sample loop at
/// p and checks it against q_inf * (G o F o f) * (q_inf)^{-1}. H runs from 1_X
/// to G o F.
PipelineReport unpointed_iso_pipeline(const DigitalMap& F, const DigitalMap& G, const Homotopy& H, PointIndex p,
                                      const std::vector<EcPath>& samples);

}  // namespace dht
