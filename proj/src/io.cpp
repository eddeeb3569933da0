#include "dht/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace dht {

namespace {

std::ifstream open(const std::string& file)
{
    std::ifstream in(file);
    if (!in)
        throw Error("cannot open " + file);
    return in;
}

/// Non-empty lines with comments removed, split into tokens.
std::vector<std::vector<std::string>> token_lines(std::istream& in)
{
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            toks.push_back(t);
        if (!toks.empty())
            out.push_back(std::move(toks));
    }
    return out;
}

PointIndex to_index(const std::string& s, const std::string& file)
{
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(s, &used);
        if (used != s.size())
            throw Error("");
        return static_cast<PointIndex>(v);
    } catch (...) {
        throw Error(file + ": expected a point index, found `" + s + "`");
    }
}

std::size_t to_size(const std::string& s, const std::string& file) { return to_index(s, file); }

EcPath parse_ec_stage(const ImagePtr& image, const std::vector<std::string>& toks, const std::string& file)
{
    std::vector<PointIndex> prefix;
    std::size_t i = 0;
    for (; i < toks.size() && toks[i] != "|"; ++i)
        prefix.push_back(to_index(toks[i], file));
    if (i + 2 != toks.size())
        throw Error(file + ": EC stage must end with `| <tail>`");
    return EcPath(image, std::move(prefix), to_index(toks[i + 1], file));
}

}  // namespace

std::string resolve_relative(const std::string& referrer, const std::string& target)
{
    namespace fs = std::filesystem;
    fs::path t(target);
    if (t.is_absolute())
        return t.string();
    return (fs::path(referrer).parent_path() / t).lexically_normal().string();
}

ImagePtr load_image_ptr(const std::string& file) { return std::make_shared<const DigitalImage>(load_image(file)); }

DigitalMap load_map(const std::string& file)
{
    auto in = open(file);
    auto lines = token_lines(in);
    if (lines.empty() || lines[0].size() != 3 || lines[0][0] != "map")
        throw Error(file + ": expected header `map <source-file> <target-file>`");
    ImagePtr src = load_image_ptr(resolve_relative(file, lines[0][1]));
    ImagePtr tgt = load_image_ptr(resolve_relative(file, lines[0][2]));
    std::vector<PointIndex> table(src->size());
    std::vector<bool> seen(src->size(), false);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].size() != 2)
            throw Error(file + ": expected `i j` pairs");
        const PointIndex i = to_index(lines[l][0], file);
        const PointIndex j = to_index(lines[l][1], file);
        if (i >= src->size() || j >= tgt->size())
            throw Error(file + ": index out of range");
        if (seen[i])
            throw Error(file + ": source point " + std::to_string(i) + " assigned twice");
        seen[i] = true;
        table[i] = j;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw Error(file + ": source point " + std::to_string(i) + " has no image");
    return DigitalMap(src, tgt, std::move(table));
}

void write_map(std::ostream& out, const std::string& source_file, const std::string& target_file,
               const DigitalMap& f)
{
    out << "map " << source_file << ' ' << target_file << '\n';
    for (std::size_t i = 0; i < f.table().size(); ++i)
        out << i << ' ' << f.table()[i] << '\n';
}

Homotopy load_homotopy(const std::string& file)
{
    auto in = open(file);
    auto lines = token_lines(in);
    if (lines.empty() || lines[0].size() != 4 || lines[0][0] != "homotopy")
        throw Error(file + ": expected header `homotopy <source-file> <target-file> <steps>`");
    ImagePtr src = load_image_ptr(resolve_relative(file, lines[0][1]));
    ImagePtr tgt = load_image_ptr(resolve_relative(file, lines[0][2]));
    const std::size_t steps = to_size(lines[0][3], file);
    if (lines.size() != steps + 2)
        throw Error(file + ": expected " + std::to_string(steps + 1) + " stage lines");
    Homotopy h;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].size() != src->size())
            throw Error(file + ": stage " + std::to_string(l - 1) + " has the wrong number of entries");
        std::vector<PointIndex> table;
        for (const auto& t : lines[l])
            table.push_back(to_index(t, file));
        h.stages.emplace_back(src, tgt, std::move(table));
    }
    return h;
}

void write_homotopy(std::ostream& out, const std::string& source_file, const std::string& target_file,
                    const Homotopy& h)
{
    out << "homotopy " << source_file << ' ' << target_file << ' ' << h.steps() << '\n';
    for (const auto& s : h.stages) {
        for (std::size_t i = 0; i < s.table().size(); ++i)
            out << (i ? " " : "") << s.table()[i];
        out << '\n';
    }
}

FinitePath load_path(const std::string& file)
{
    auto in = open(file);
    PathFile pf = parse_path_file(in);
    return FinitePath(load_image_ptr(resolve_relative(file, pf.image_file)), std::move(pf.values));
}

void write_path(std::ostream& out, const std::string& image_file, const FinitePath& f)
{
    out << "path " << image_file << '\n';
    for (PointIndex v : f.values())
        out << v << '\n';
}

EcPath load_ecpath(const std::string& file)
{
    auto in = open(file);
    EcPathFile ef = parse_ecpath_file(in);
    return EcPath(load_image_ptr(resolve_relative(file, ef.image_file)), std::move(ef.prefix), ef.tail);
}

void write_path_homotopy(std::ostream& out, const std::string& image_file, const PathHomotopy& h)
{
    out << "pathhomotopy " << image_file << ' ' << h.steps() << '\n';
    for (const auto& s : h.stages) {
        for (std::size_t i = 0; i < s.values().size(); ++i)
            out << (i ? " " : "") << s.values()[i];
        out << '\n';
    }
}

void write_ec_homotopy(std::ostream& out, const std::string& image_file, const EcHomotopy& h)
{
    out << "echomotopy " << image_file << ' ' << h.steps() << '\n';
    for (const auto& s : h.stages) {
        for (PointIndex p : s.prefix())
            out << p << ' ';
        out << "| " << s.tail() << '\n';
    }
}

PathHomotopy load_path_homotopy(const std::string& file)
{
    auto in = open(file);
    auto lines = token_lines(in);
    if (lines.empty() || lines[0].size() != 3 || lines[0][0] != "pathhomotopy")
        throw Error(file + ": expected header `pathhomotopy <image-file> <steps>`");
    ImagePtr image = load_image_ptr(resolve_relative(file, lines[0][1]));
    if (lines.size() != to_size(lines[0][2], file) + 2)
        throw Error(file + ": stage count does not match the header");
    PathHomotopy h;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        std::vector<PointIndex> v;
        for (const auto& t : lines[l])
            v.push_back(to_index(t, file));
        h.stages.emplace_back(image, std::move(v));
    }
    return h;
}

EcHomotopy load_ec_homotopy(const std::string& file)
{
    auto in = open(file);
    auto lines = token_lines(in);
    if (lines.empty() || lines[0].size() != 3 || lines[0][0] != "echomotopy")
        throw Error(file + ": expected header `echomotopy <image-file> <steps>`");
    ImagePtr image = load_image_ptr(resolve_relative(file, lines[0][1]));
    if (lines.size() != to_size(lines[0][2], file) + 2)
        throw Error(file + ": stage count does not match the header");
    EcHomotopy h;
    for (std::size_t l = 1; l < lines.size(); ++l)
        h.stages.push_back(parse_ec_stage(image, lines[l], file));
    return h;
}

}  // namespace dht
