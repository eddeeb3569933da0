#include "dht/figure.hpp"

#include <algorithm>
#include <sstream>

namespace dht {

std::string emit_figure(const DigitalImage& image, const std::vector<FinitePath>& overlays,
                        const FigureOptions& options)
{
    if (image.dim() != 2)
        throw Error("emit_figure: image must have dimension 2");
    static const char* const palette[] = {"#c0392b", "#2471a3", "#229954", "#b9770e", "#7d3c98"};
    const int u = options.unit;
    const int r = u * 3 / 5;
    Coord minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
        const auto& p = image.point(static_cast<PointIndex>(i));
        minx = i ? std::min(minx, p[0]) : p[0];
        maxx = i ? std::max(maxx, p[0]) : p[0];
        miny = i ? std::min(miny, p[1]) : p[1];
        maxy = i ? std::max(maxy, p[1]) : p[1];
    }
    auto cx = [&](const LatticePoint& p) { return (p[0] - minx) * u + u; };
    auto cy = [&](const LatticePoint& p) { return (maxy - p[1]) * u + u; };
    const Coord width = (maxx - minx) * u + 2 * u;
    const Coord height = (maxy - miny) * u + 2 * u;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    for (std::size_t i = 0; i < image.size(); ++i) {
        const auto& p = image.point(static_cast<PointIndex>(i));
        const Coord x = cx(p), y = cy(p);
        os << "  <polygon points=\"" << x - r << ',' << y << ' ' << x << ',' << y - r << ' ' << x + r << ',' << y
           << ' ' << x << ',' << y + r << "\" fill=\"white\" stroke=\"black\"/>\n";
        if (i < options.labels.size() && !options.labels[i].empty())
            os << "  <text x=\"" << x << "\" y=\"" << y + u / 8 << "\" font-size=\"" << u / 3
               << "\" text-anchor=\"middle\">" << options.labels[i] << "</text>\n";
    }
    for (std::size_t k = 0; k < overlays.size(); ++k) {
        const auto& f = overlays[k];
        if (!same_image(f.image(), std::make_shared<const DigitalImage>(image)))
            throw Error("emit_figure: overlay path lives in a different image");
        os << "  <polyline fill=\"none\" stroke=\"" << palette[k % 5] << "\" stroke-width=\"2\" points=\"";
        for (std::size_t t = 0; t < f.values().size(); ++t) {
            const auto& p = image.point(f[t]);
            os << (t ? " " : "") << cx(p) << ',' << cy(p);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace dht
