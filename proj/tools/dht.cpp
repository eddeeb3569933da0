#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dht/ec.hpp"
#include "dht/figure.hpp"
#include "dht/fixtures.hpp"
#include "dht/fundamental.hpp"
#include "dht/io.hpp"
#include "dht/verify.hpp"

using namespace dht;
namespace fs = std::filesystem;

namespace {

struct Globals {
    std::size_t max_frontier = SearchOptions{}.max_frontier;
    std::size_t max_prefix = 14;
    std::size_t max_len = 13;
    std::size_t threads = 1;
    std::uint64_t seed = 1;

    SearchOptions search() const { return SearchOptions{max_frontier}; }
};

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << text;
}

template <class F>
std::string to_text(F&& write)
{
    std::ostringstream os;
    write(os);
    return os.str();
}

void print_ec_witness(const EcHomotopy& h)
{
    std::cout << "witness: " << h.steps() << " steps\n";
    for (const auto& s : h.stages)
        std::cout << "  " << s.to_string() << '\n';
}

void print_path_witness(const PathHomotopy& h)
{
    std::cout << "witness: " << h.steps() << " steps\n";
    for (const auto& s : h.stages)
        std::cout << "  " << s.to_string() << '\n';
}

void print_map_witness(const Homotopy& h)
{
    std::cout << "witness: " << h.steps() << " steps\n";
    for (const auto& s : h.stages)
        std::cout << "  " << s.to_string() << '\n';
}

/// The fixtures as files; returns the names written.
std::vector<std::string> emit_fixtures(const fs::path& dir)
{
    const PaperFixtures fx = load_fixtures();
    std::vector<std::string> written;
    auto put = [&](const std::string& name, const std::string& text) {
        write_file(dir / name, text);
        written.push_back(name);
    };
    auto image = [&](const std::string& name, const DigitalImage& im) {
        put(name, to_text([&](std::ostream& os) { write_image(os, im); }));
    };
    auto map = [&](const std::string& name, const std::string& s, const std::string& t, const DigitalMap& m) {
        put(name, to_text([&](std::ostream& os) { write_map(os, s, t, m); }));
    };
    auto hom = [&](const std::string& name, const std::string& s, const std::string& t, const Homotopy& h) {
        put(name, to_text([&](std::ostream& os) { write_homotopy(os, s, t, h); }));
    };
    auto path = [&](const std::string& name, const std::string& im, const FinitePath& p) {
        put(name, to_text([&](std::ostream& os) { write_path(os, im, p); }));
    };
    auto ecpath = [&](const std::string& name, const std::string& im, const EcPath& p) {
        put(name, to_text([&](std::ostream& os) { write_ecpath(os, im, p); }));
    };
    image("X.img", *fx.X);
    image("Y.img", *fx.Y);
    image("fig2.img", *fx.fig2);
    image("fig2_cycle.img", *fx.fig2_cycle);
    image("interval-0-1.img", *fx.unit);
    image("interval-0-2.img", *fx.ex412_image);
    map("f.map", "X.img", "Y.img", fx.f);
    map("g.map", "Y.img", "X.img", fx.g);
    hom("H.hom", "X.img", "X.img", fx.H);
    hom("K.hom", "Y.img", "Y.img", fx.K);
    hom("H_reversed.hom", "X.img", "X.img", Homotopy{{fx.H.to(), fx.H.from()}});
    map("fig2_F.map", "fig2.img", "fig2_cycle.img", fx.fig2_F);
    map("fig2_G.map", "fig2_cycle.img", "fig2.img", fx.fig2_G);
    hom("fig2_H.hom", "fig2.img", "fig2.img", fx.fig2_H);
    path("loop_f.path", "X.img", fx.loop_f);
    path("loop_g.path", "X.img", fx.loop_g);
    path("loop_f_ext.path", "X.img", fx.loop_f_ext);
    path("loop_g_ext.path", "X.img", fx.loop_g_ext);
    path("fg_inverse.path", "X.img", fx.fg_inverse);
    path("tab_first_step.path", "X.img", fx.tab_first_step);
    path("constant_x1.path", "X.img", FinitePath::constant(fx.X, fx.x[1], 0));
    ecpath("f_inf.ecpath", "X.img", infty(fx.loop_f));
    ecpath("g_inf.ecpath", "X.img", infty(fx.loop_g));
    ecpath("ex42_f.ecpath", "interval-0-1.img", fx.ex42_f);
    ecpath("ex412_f.ecpath", "interval-0-2.img", fx.ex412_f);
    ecpath("ex412_H1.ecpath", "interval-0-2.img", fx.ex412_H.at(1));
    return written;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Digital homotopy verification"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--max-frontier", g.max_frontier, "State budget for one search")->capture_default_str();
    app.add_option("--max-prefix", g.max_prefix, "EC prefix bound")->capture_default_str();
    app.add_option("--max-len", g.max_len, "Longest trivial extension examined")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for verify-paper")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for randomized sampling")->capture_default_str();

    int status = 0;

    // verify-paper
    auto* vp = app.add_subcommand("verify-paper", "Replay every worked-example claim");
    std::optional<std::size_t> corrupt;
    std::string cert_dir, format = "text";
    std::vector<std::string> only;
    std::size_t samples = 200;
    std::size_t group_len = 10;
    vp->add_option("--corrupt-point", corrupt, "Shift x_i by one before loading (negative control)");
    vp->add_option("--certificates", cert_dir, "Directory for certificate files");
    vp->add_option("--format", format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
    vp->add_option("--only", only, "Run only these checks");
    vp->add_option("--samples", samples, "Randomized samples per property check")->capture_default_str();
    vp->add_option("--group-loop-len", group_len, "Longest loop in the group samples")->capture_default_str();
    vp->callback([&] {
        VerifyConfig c;
        c.search = g.search();
        c.max_prefix = g.max_prefix;
        c.max_len = g.max_len;
        c.threads = g.threads;
        c.seed = g.seed;
        c.fixtures.corrupt_point = corrupt;
        c.only = only;
        c.property_samples = samples;
        c.group_loop_len = group_len;
        if (g.max_prefix == 0 && g.max_len == 0) {
            c.tab_null_len = 0;
            c.group_loop_len = 0;
            c.property_samples = 0;
        }
        const auto report = verify_paper(c);
        if (format == "kv")
            write_kv(std::cout, report);
        else
            write_text(std::cout, report);
        if (!cert_dir.empty())
            for (const auto& check : report.checks)
                for (const auto& [name, text] : check.certificates)
                    write_file(fs::path(cert_dir) / name, text);
        status = report.ok() ? 0 : 1;
    });

    // check-continuity
    auto* cc = app.add_subcommand("check-continuity", "Is a map continuous");
    std::string map_file;
    cc->add_option("map", map_file, "Map file")->required();
    cc->callback([&] {
        const DigitalMap f = load_map(map_file);
        std::cout << (is_continuous(f) ? "continuous" : "not continuous") << '\n';
    });

    // homotopic
    auto* hm = app.add_subcommand("homotopic", "Search for a homotopy between two maps");
    std::string map_a, map_b;
    std::optional<std::size_t> pointed;
    hm->add_option("f", map_a, "Map file")->required();
    hm->add_option("g", map_b, "Map file")->required();
    hm->add_option("--pointed", pointed, "Hold this source point index fixed");
    hm->callback([&] {
        const DigitalMap f = load_map(map_a), h = load_map(map_b);
        const auto c = pointed ? StageConstraint::pointed(static_cast<PointIndex>(*pointed)) : StageConstraint::none();
        try {
            const auto w = homotopic(f, h, c, g.search());
            std::cout << (w ? "homotopic" : "not homotopic") << '\n';
            if (w)
                print_map_witness(*w);
        } catch (const BudgetExceeded& e) {
            std::cout << "bound-exhausted: " << e.what() << '\n';
        }
    });

    // path-homotopic
    auto* ph = app.add_subcommand("path-homotopic", "Endpoint-fixed homotopy between paths of equal length");
    std::string path_a, path_b;
    ph->add_option("f", path_a, "Path file")->required();
    ph->add_option("g", path_b, "Path file")->required();
    ph->callback([&] {
        const FinitePath f = load_path(path_a), h = load_path(path_b);
        const auto q = loops_reachable(f, LoopConstraints::endpoints_fixed(), h, g.search());
        std::cout << to_string(q.status) << '\n';
        if (q.witness)
            print_path_witness(*q.witness);
    });

    // tab-equivalent
    auto* te = app.add_subcommand("tab-equivalent", "Search for a TAB homotopy of TAB trivial extensions");
    te->add_option("f", path_a, "Path file")->required();
    te->add_option("g", path_b, "Path file")->required();
    te->callback([&] {
        const FinitePath f = load_path(path_a), h = load_path(path_b);
        const auto r = tab_equivalent(f, h, f.front(), g.max_len, g.search());
        std::cout << to_string(r.verdict) << '\n';
        for (const auto& n : r.notes)
            std::cout << "  " << n << '\n';
        if (r.witness)
            print_path_witness(*r.witness);
    });

    // trivial-extension-check
    auto* tx = app.add_subcommand("trivial-extension-check", "Is the first path a trivial extension of the second");
    tx->add_option("extension", path_a, "Path file")->required();
    tx->add_option("f", path_b, "Path file")->required();
    tx->callback([&] {
        std::cout << (is_trivial_extension(load_path(path_a), load_path(path_b)) ? "trivial extension"
                                                                                  : "not a trivial extension")
                  << '\n';
    });

    // ec-homotopic
    auto* eh = app.add_subcommand("ec-homotopic", "Bounded search for an EC homotopy");
    bool fixed = false;
    eh->add_option("f", path_a, "EC path file")->required();
    eh->add_option("g", path_b, "EC path file")->required();
    eh->add_flag("--fixed-endpoints", fixed, "Hold both endpoints fixed");
    eh->callback([&] {
        const EcPath f = load_ecpath(path_a), h = load_ecpath(path_b);
        const std::size_t bound = std::max({g.max_prefix, f.tail_index(), h.tail_index()});
        const auto r = ec_homotopic(f, h, fixed, bound, g.search());
        std::cout << to_string(r.verdict) << " (" << r.method << ", " << r.states << " states)\n";
        if (r.witness)
            print_ec_witness(*r.witness);
    });

    // ec-star
    auto* es = app.add_subcommand("ec-star", "Star product of two EC loops");
    std::string image_name = "image.img";
    es->add_option("f", path_a, "EC path file")->required();
    es->add_option("g", path_b, "EC path file")->required();
    es->callback([&] {
        const auto pf = [&] {
            std::ifstream in(path_a);
            return parse_ecpath_file(in);
        }();
        write_ecpath(std::cout, pf.image_file, ec_star(load_ecpath(path_a), load_ecpath(path_b)));
    });

    // ec-normalize
    auto* en = app.add_subcommand("ec-normalize", "Reduce an EC path by local moves");
    en->add_option("f", path_a, "EC path file")->required();
    en->callback([&] {
        const auto r = ec_reduce(load_ecpath(path_a));
        std::cout << "normal form: " << r.normal.to_string() << '\n';
        print_ec_witness(r.chain);
    });

    // class-equal
    auto* ce = app.add_subcommand("class-equal", "Decide equality of loop classes");
    ce->add_option("f", path_a, "EC path file")->required();
    ce->add_option("g", path_b, "EC path file")->required();
    ce->callback([&] {
        const auto r = class_equal(load_ecpath(path_a), load_ecpath(path_b), g.max_prefix, g.search());
        std::cout << to_string(r.verdict) << " (" << r.method << ", " << r.states << " states)\n";
        if (r.witness)
            print_ec_witness(*r.witness);
    });

    // pi1-sample
    auto* ps = app.add_subcommand("pi1-sample", "Partition all short loops at a point into classes");
    std::string image_file;
    std::size_t basepoint = 0, max_loop_len = 12;
    ps->add_option("image", image_file, "Image file")->required();
    ps->add_option("--basepoint", basepoint, "Point index")->capture_default_str();
    ps->add_option("--max-loop-len", max_loop_len, "Longest sampled loop")->capture_default_str();
    ps->callback([&] {
        const ImagePtr im = load_image_ptr(image_file);
        const auto loops = enumerate_loops(im, static_cast<PointIndex>(basepoint), max_loop_len);
        std::vector<EcPath> ec;
        for (const auto& f : loops)
            ec.push_back(infty(f));
        const auto p = partition_by_ec(ec, g.max_prefix, g.search());
        std::cout << loops.size() << " loops, " << p.classes << " classes"
                  << (p.complete ? "" : " (some comparisons undecided)") << '\n';
        std::vector<bool> shown(p.classes, false);
        std::vector<std::size_t> sizes(p.classes, 0);
        for (auto l : p.label)
            ++sizes[l];
        const bool cycle = is_simple_closed_curve(*im);
        for (std::size_t i = 0; i < ec.size(); ++i) {
            if (shown[p.label[i]])
                continue;
            shown[p.label[i]] = true;
            std::cout << "class " << p.label[i] << ": " << sizes[p.label[i]] << " loops, representative "
                      << ec_reduce(ec[i]).normal.to_string();
            if (cycle)
                std::cout << ", winding " << winding_number(ec[i]);
            std::cout << '\n';
        }
    });

    // unpointed-iso
    auto* ui = app.add_subcommand("unpointed-iso", "Check q_# o G_* o F_* = id on sample loops");
    std::string fx_file, gy_file, hom_file;
    std::vector<std::string> sample_files;
    std::size_t p = 0, sample_len = 4;
    ui->add_option("--fx", fx_file, "Map X -> Y")->required();
    ui->add_option("--gy", gy_file, "Map Y -> X")->required();
    ui->add_option("--homotopy", hom_file, "Homotopy from 1_X to G o F")->required();
    ui->add_option("--basepoint", p, "Point index in X")->capture_default_str();
    ui->add_option("--sample", sample_files, "EC loop files; default all loops at the basepoint up to --sample-len");
    ui->add_option("--sample-len", sample_len, "Length of default sample loops")->capture_default_str();
    ui->callback([&] {
        const DigitalMap F = load_map(fx_file), G = load_map(gy_file);
        const Homotopy H = load_homotopy(hom_file);
        std::vector<EcPath> samples;
        for (const auto& s : sample_files)
            samples.push_back(load_ecpath(s));
        if (samples.empty())
            for (const auto& f : enumerate_loops(F.source(), static_cast<PointIndex>(p), sample_len))
                samples.push_back(infty(f));
        const auto r = unpointed_iso_pipeline(F, G, H, static_cast<PointIndex>(p), samples);
        std::cout << (r.ok ? "identity holds" : "identity fails: " + r.failure) << " on " << r.samples.size()
                  << " samples\n";
        if (r.q)
            std::cout << "q = " << r.q->to_string() << '\n';
        status = r.ok ? 0 : 1;
    });

    // emit-figure
    auto* ef = app.add_subcommand("emit-figure", "Draw a 2-dimensional image as SVG");
    std::vector<std::string> overlays;
    std::string out_file;
    ef->add_option("image", image_file, "Image file")->required();
    ef->add_option("--overlay", overlays, "Path files drawn on top");
    ef->add_option("-o,--output", out_file, "Output file (default stdout)");
    ef->callback([&] {
        const ImagePtr im = load_image_ptr(image_file);
        std::vector<FinitePath> paths;
        for (const auto& o : overlays) {
            FinitePath f = load_path(o);
            if (!same_image(f.image(), im))
                throw Error(o + ": overlay lives in a different image");
            paths.emplace_back(im, f.values());
        }
        const std::string svg = emit_figure(*im, paths);
        if (out_file.empty())
            std::cout << svg;
        else
            write_file(out_file, svg);
    });

    // emit-fixtures
    auto* ex = app.add_subcommand("emit-fixtures", "Write the fixtures as data files");
    std::string dir;
    ex->add_option("dir", dir, "Output directory")->required();
    ex->callback([&] {
        for (const auto& name : emit_fixtures(dir))
            std::cout << name << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return status;
}
