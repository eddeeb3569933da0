#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dht/ec.hpp"
#include "dht/lattice.hpp"
#include "dht/maps.hpp"
#include "dht/paths.hpp"

namespace dht {

struct Fixture {
    std::string name;
    std::string provenance;
    std::string description;
};

/// Every worked-example object, built from literals and validated.
struct PaperFixtures {
    // X and Y
    ImagePtr X;
    ImagePtr Y;
    std::vector<PointIndex> x;   ///< x[i] is the index of x_i in X
    std::vector<PointIndex> y;   ///< y[i] is the index of x_i in Y (y[0] unused)

    // equivalence maps and homotopies
    DigitalMap f;   ///< X -> Y
    DigitalMap g;   ///< Y -> X, inclusion
    Homotopy H;     ///< g o f to 1_X
    Homotopy K;     ///< f o g to 1_Y

    // loops at x_1
    FinitePath loop_f;
    FinitePath loop_g;
    FinitePath loop_f_ext;       ///< f'
    FinitePath loop_g_ext;       ///< g'
    PathHomotopy ext_one_step;   ///< f' to g'
    FinitePath fg_inverse;       ///< the displayed f * g^{-1}
    FinitePath tab_first_step;   ///< the displayed first stage of its nullhomotopy

    // cycle with a parallel point, and the analogs of f, g and H
    ImagePtr fig2;
    ImagePtr fig2_cycle;
    std::vector<PointIndex> fig2_y;  ///< cycle order y_1..y_12 in fig2, y_12 the corner parallel to the extra point
    PointIndex fig2_extra = 0;
    DigitalMap fig2_F;   ///< fig2 -> fig2_cycle
    DigitalMap fig2_G;   ///< inclusion
    Homotopy fig2_H;     ///< 1 to G o F

    // on [0,1]_Z
    ImagePtr unit;
    EcPath ex42_f;
    std::vector<EventuallyPeriodicMap> ex42_family;

    // on [0,2]_Z
    ImagePtr ex412_image;
    EcPath ex412_f;
    std::vector<EcPath> ex412_H;
    std::vector<PointIndex> ex412_K_display;   ///< H_0 * g as displayed
    std::vector<PointIndex> ex412_L_display;   ///< H_1 * g as displayed

    std::vector<Fixture> catalog;
};

struct FixtureOptions {
    /// Shifts the first coordinate of x_i by one before building anything.
    std::optional<std::size_t> corrupt_point;
};

/// Builds and validates every fixture. Throws Error naming the failing
/// fixture and where it comes from.
PaperFixtures load_fixtures(const FixtureOptions& options = {});

/// A cycle plus one point adjacent to exactly two cycle points that are not
/// adjacent to each other and share a common cycle neighbor. Fills `why` on failure.
bool is_cycle_with_parallel_point(const DigitalImage& image, std::size_t cycle_length, std::string* why = nullptr);

}  // namespace dht
