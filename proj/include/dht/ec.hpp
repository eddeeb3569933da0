#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dht/lattice.hpp"
#include "dht/maps.hpp"
#include "dht/paths.hpp"
#include "dht/search.hpp"

namespace dht {

/// An eventually constant map N* -> X: a finite prefix followed by the tail
/// value repeated forever. Stored canonically, so the prefix never ends with
/// the tail and its length is the least constancy index N.
class EcPath {
public:
    EcPath() = default;
    /// Canonicalizes; throws unless consecutive values are equal or adjacent.
    EcPath(ImagePtr image, std::vector<PointIndex> prefix, PointIndex tail);
    static EcPath constant(ImagePtr image, PointIndex p);

    const ImagePtr& image() const noexcept { return image_; }
    const std::vector<PointIndex>& prefix() const noexcept { return prefix_; }
    PointIndex tail() const noexcept { return tail_; }
    /// N: least m with the map constant from m on.
    std::size_t tail_index() const noexcept { return prefix_.size(); }
    PointIndex operator()(std::size_t n) const { return n < prefix_.size() ? prefix_[n] : tail_; }
    PointIndex start() const { return (*this)(0); }
    bool is_loop() const { return start() == tail_; }
    bool is_constant() const { return prefix_.empty(); }

    /// Values 0..n.
    std::vector<PointIndex> values_through(std::size_t n) const;
    std::string to_string() const;

    friend bool operator==(const EcPath& a, const EcPath& b)
    {
        return a.tail_ == b.tail_ && a.prefix_ == b.prefix_ && same_image(a.image_, b.image_);
    }
    friend bool operator<(const EcPath& a, const EcPath& b)
    {
        return a.prefix_ != b.prefix_ ? a.prefix_ < b.prefix_ : a.tail_ < b.tail_;
    }

private:
    ImagePtr image_;
    std::vector<PointIndex> prefix_;
    PointIndex tail_ = 0;
};

inline std::size_t tail_index(const EcPath& f) { return f.tail_index(); }
/// Restriction to [0, N].
FinitePath minus(const EcPath& f);
/// Constant extension by the last value.
EcPath infty(const FinitePath& f);

/// a followed by b, offset by N_a; requires a's tail to equal b(0).
EcPath ec_concat(const EcPath& a, const EcPath& b);
/// The star of two EC loops at a common basepoint.
EcPath ec_star(const EcPath& f0, const EcPath& f1);
/// Reverse of the prefix about N, ending at the basepoint.
EcPath ec_inverse(const EcPath& f);
/// F o f; F must be continuous with source f's image.
EcPath compose(const DigitalMap& F, const EcPath& f);

/// A map N* -> X given by a finite prefix and a repeating non-empty cycle.
/// Holds the non-EC stages that EcPath cannot represent.
class EventuallyPeriodicMap {
public:
    EventuallyPeriodicMap(ImagePtr image, std::vector<PointIndex> prefix, std::vector<PointIndex> cycle);
    static EventuallyPeriodicMap from(const EcPath& f);

    const ImagePtr& image() const noexcept { return image_; }
    PointIndex operator()(std::size_t n) const;
    const std::vector<PointIndex>& prefix() const noexcept { return prefix_; }
    const std::vector<PointIndex>& cycle() const noexcept { return cycle_; }
    bool is_eventually_constant() const;
    std::optional<EcPath> as_ec() const;

private:
    ImagePtr image_;
    std::vector<PointIndex> prefix_;
    std::vector<PointIndex> cycle_;
};

struct EcHomotopy {
    std::vector<EcPath> stages;

    const EcPath& from() const { return stages.front(); }
    const EcPath& to() const { return stages.back(); }
    std::size_t steps() const { return stages.empty() ? 0 : stages.size() - 1; }
};

/// Outcome of validating a stage family; on failure names the first bad stage
/// and, for continuity failures, the index n.
struct EcCheck {
    bool ok = true;
    std::optional<std::size_t> stage;
    std::optional<std::size_t> n;
    std::string reason;
};

/// Checks that every stage is EC and continuous, that consecutive stages are
/// pointwise equal or adjacent at every n, and (optionally) that the endpoints
/// are held fixed.
EcCheck check_ec_family(const std::vector<EventuallyPeriodicMap>& stages, bool endpoints_fixed);
EcCheck check_ec_homotopy(const EcHomotopy& h, bool endpoints_fixed);
bool is_ec_homotopy(const EcHomotopy& h, bool endpoints_fixed);

EcHomotopy concat(const EcHomotopy& a, const EcHomotopy& b);
EcHomotopy reversed(const EcHomotopy& h);

/// Pads every stage of a finite homotopy with its last value.
EcHomotopy lift(const PathHomotopy& h);
/// Restriction of every stage to [0, M], M the largest N among the stages.
PathHomotopy restrict(const EcHomotopy& h);
/// EC homotopy from f_inf to fbar_inf inserting one repeated entry per step;
/// fbar must be a trivial extension of f.
EcHomotopy absorb(const FinitePath& f, const FinitePath& fbar);
/// L_t = f * H_t.
EcHomotopy left_congruence(const EcPath& f, const EcHomotopy& h);
/// The unpadded family H_t * g.
std::vector<EcPath> stagewise_star(const std::vector<EcPath>& h_stages, const EcPath& g);
/// K_t = (H_t)_- * c_t * g_-, with c_t constant of length M - N_{H_t}.
EcHomotopy ec_star_with_padding(const std::vector<EcPath>& h_stages, const EcPath& g);
/// f * g to f' * g' given h: f ~ f' and k: g ~ g', all holding endpoints fixed.
EcHomotopy two_sided_congruence(const EcHomotopy& h, const EcHomotopy& k);

/// Reduction of f by local moves that fix the endpoints: dropping a repeated
/// entry, pulling a middle entry back onto its predecessor when its two
/// neighbors are equal or adjacent, and collapsing a window of four entries
/// whose ends are equal or adjacent.
struct Reduction {
    EcPath normal;
    EcHomotopy chain;  ///< from f to normal
};
Reduction ec_reduce(const EcPath& f);

struct EcResult {
    Verdict verdict = Verdict::bound_exhausted;
    std::optional<EcHomotopy> witness;
    std::size_t bound = 0;   ///< last prefix bound examined
    std::size_t states = 0;  ///< states visited in the last search
    std::string method;
};

/// Bounded search for an EC homotopy from f to g whose stages all have
/// N <= max_prefix. Throws when max_prefix < max(N_f, N_g).
EcResult ec_homotopic(const EcPath& f, const EcPath& g, bool endpoints_fixed, std::size_t max_prefix,
                      const SearchOptions& options = {});

/// EC path text format: `ecpath <image-file>`, prefix indices, `tail <index>`.
struct EcPathFile {
    std::string image_file;
    std::vector<PointIndex> prefix;
    PointIndex tail = 0;
};
EcPathFile parse_ecpath_file(std::istream& in);
void write_ecpath(std::ostream& out, const std::string& image_file, const EcPath& f);

}  // namespace dht
