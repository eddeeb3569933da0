#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dht/ec.hpp"
#include "dht/maps.hpp"
#include "dht/paths.hpp"

namespace dht {

// File references inside map, homotopy and path files are resolved relative
// to the directory of the referring file.

/// `map <source-file> <target-file>` then one `i j` pair per source point.
DigitalMap load_map(const std::string& file);
void write_map(std::ostream& out, const std::string& source_file, const std::string& target_file,
               const DigitalMap& f);

/// `homotopy <source-file> <target-file> <steps>` then, per stage, one line of
/// target indices in source order.
Homotopy load_homotopy(const std::string& file);
void write_homotopy(std::ostream& out, const std::string& source_file, const std::string& target_file,
                    const Homotopy& h);

FinitePath load_path(const std::string& file);
void write_path(std::ostream& out, const std::string& image_file, const FinitePath& f);

EcPath load_ecpath(const std::string& file);

/// Certificates: `pathhomotopy <image-file> <steps>` / `echomotopy <image-file>
/// <steps>`, one stage per line. EC stages are written as the prefix, `|`,
/// then the tail.
void write_path_homotopy(std::ostream& out, const std::string& image_file, const PathHomotopy& h);
void write_ec_homotopy(std::ostream& out, const std::string& image_file, const EcHomotopy& h);
PathHomotopy load_path_homotopy(const std::string& file);
EcHomotopy load_ec_homotopy(const std::string& file);

std::string resolve_relative(const std::string& referrer, const std::string& target);
ImagePtr load_image_ptr(const std::string& file);

}  // namespace dht
