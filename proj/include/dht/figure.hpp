#pragma once

#include <string>
#include <vector>

#include "dht/lattice.hpp"
#include "dht/paths.hpp"

namespace dht {

struct FigureOptions {
    int unit = 40;                        ///< pixels per lattice step
    std::vector<std::string> labels;      ///< per point index; empty for none
};

/// SVG drawing of a 2-dimensional image: one diamond per point and one
/// polyline per overlay path. Throws unless the image has dimension 2.
std::string emit_figure(const DigitalImage& image, const std::vector<FinitePath>& overlays = {},
                        const FigureOptions& options = {});

}  // namespace dht
