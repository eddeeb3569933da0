#pragma once

#include <random>

#include "dht/lattice.hpp"
#include "dht/paths.hpp"

namespace dht {

/// A random walk of `steps` moves (stays allowed) from x0, closed by a
/// shortest path back to x0. The image must be connected.
FinitePath random_loop(const ImagePtr& image, PointIndex x0, std::size_t steps, std::mt19937_64& rng);

/// f with `extra` repeated entries inserted at random positions.
FinitePath random_trivial_extension(const FinitePath& f, std::size_t extra, std::mt19937_64& rng);

/// A connected image in Z^2 with 1..max_points points and random u.
ImagePtr random_connected_image(std::size_t max_points, std::mt19937_64& rng);

/// A walk of `steps` one-step moves from f in the loop space of the given
/// constraints, each move chosen uniformly among the admitted neighbors.
PathHomotopy random_path_homotopy(const FinitePath& f, std::size_t steps, const LoopConstraints& constraints,
                                  std::mt19937_64& rng);

}  // namespace dht
