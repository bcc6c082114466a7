/// @file tools/cli.cpp
/// @brief `lorcyl classify | oracle | render` subcommands.
///
/// Reports are line-oriented `key=value`. Exit codes: 0 success, 1 domain or
/// validation error (including an inconclusive oracle), 2 usage or configuration error.

#include "cli.hpp"

#include "lorcyl/causality.hpp"
#include "lorcyl/curvature.hpp"
#include "lorcyl/errors.hpp"
#include "lorcyl/io.hpp"
#include "lorcyl/oracle.hpp"
#include "lorcyl/specfile.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>

namespace lorcyl::cli {

namespace {

constexpr double kFragileRatio = 1e-9;

std::string num(double v) {
    char buf[64];
    if (v == 0.0) v = 0.0;
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string vec(TangentVector v) { return num(v.a) + "," + num(v.b); }

const char* boolean(bool b) { return b ? "true" : "false"; }

double parse_real(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw CLI::ValidationError(what, "'" + s + "' is not a finite number");
    }
    return v;
}

std::pair<double, double> parse_pair(const std::string& s, char sep, const std::string& what) {
    const auto at = s.find(sep);
    if (at == std::string::npos) {
        throw CLI::ValidationError(what, "expected two values separated by '" + std::string(1, sep) + "'");
    }
    return {parse_real(s.substr(0, at), what), parse_real(s.substr(at + 1), what)};
}

struct GeometryFlags {
    std::string grid = "64x64";
    std::string y_range = "-1:1";

    GridSpec make() const {
        const auto at = grid.find('x');
        int nx = 0;
        int ny = 0;
        auto parse_int = [&](std::string_view t, int& v) {
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            return !t.empty() && ec == std::errc() && ptr == t.data() + t.size();
        };
        if (at == std::string::npos || !parse_int(std::string_view(grid).substr(0, at), nx) ||
            !parse_int(std::string_view(grid).substr(at + 1), ny)) {
            throw CLI::ValidationError("--grid", "expected NXxNY, got '" + grid + "'");
        }
        const auto [lo, hi] = parse_pair(y_range, ':', "--y-range");
        return GridSpec(nx, ny, lo, hi);
    }

    void add_to(CLI::App& app) {
        app.add_option("--grid", grid, "Grid size NXxNY")->capture_default_str();
        app.add_option("--y-range", y_range, "y extent a:b")->capture_default_str();
    }
};

const FlatMetric& require_flat(const MetricSpec& spec, const char* command) {
    if (!spec.flat_part()) {
        throw DomainError(std::string(command) + " needs a flat or conformal spec, got type = " +
                          std::string(to_string(spec.kind())));
    }
    return *spec.flat_part();
}

/// Opens --out, or returns `fallback` when no path was given.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path) {
        if (path.empty()) {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw Error("cannot write '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }
    bool to_file() const { return !path_.empty(); }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

// ─── classify ─────────────────────────────────────────────────────────────────

int cmd_classify(const std::string& spec_path, bool dual, double eps, std::ostream& out,
                 std::ostream& err) {
    const MetricSpec spec = load_metric_spec(spec_path);
    const FlatMetric& m = require_flat(spec, "classify");
    const CausalClass cls =
        spec.psi() ? classify_conformal(m, *spec.psi()) : classify_spacetime(m);

    const double scale = std::abs(m.E()) + std::abs(m.F()) + std::abs(m.G());
    if (std::abs(m.E()) < kFragileRatio * scale) {
        err << "warning: |E| = " << num(std::abs(m.E())) << " is below " << num(kFragileRatio)
            << "*(|E|+|F|+|G|); the class changes under arbitrarily small perturbations of E\n";
    }

    out << "class=" << to_string(cls) << '\n';
    bool duality_ok = true;
    if (dual) {
        const CausalClass negated = classify_spacetime(negate_metric(m));
        duality_ok = negated == dual_class(cls);
        out << "dual_class=" << to_string(negated) << '\n';
        out << "duality=" << (duality_ok ? "ok" : "violated") << '\n';
    }
    out << "kind=" << to_string(spec.kind()) << '\n';
    out << "E=" << num(m.E()) << '\n';
    out << "F=" << num(m.F()) << '\n';
    out << "G=" << num(m.G()) << '\n';
    if (spec.psi()) out << "psi=" << spec.psi()->to_string() << '\n';
    out << "discriminant=" << num(m.discriminant()) << '\n';
    out << "q_dx=" << num(quadratic_form(m, {1.0, 0.0})) << '\n';
    out << "dx_character=" << to_string(classify_vector(m, {1.0, 0.0}, eps)) << '\n';
    const auto [d1, d2] = null_directions(m);
    out << "null_direction_1=" << vec(d1) << '\n';
    out << "null_direction_2=" << vec(d2) << '\n';
    out << "time_orientation=" << vec(canonical_time_orientation(m).vector()) << '\n';
    const auto loop = closed_causal_curve(m);
    out << "closed_causal_curve=" << (loop ? to_string(loop->character) : "none") << '\n';
    return duality_ok ? kOk : kDomainError;
}

// ─── oracle ───────────────────────────────────────────────────────────────────

struct OracleFlags {
    GeometryFlags geometry;
    int stencil = 3;
    double eps = 1e-12;
    std::string out;
    std::uint64_t seed = OracleOptions{}.seed;
};

int cmd_oracle(const std::string& spec_path, const OracleFlags& flags, std::ostream& out,
               std::ostream& err) {
    const MetricSpec spec = load_metric_spec(spec_path);
    const FlatMetric& m = require_flat(spec, "oracle");
    const GridSpec grid = flags.geometry.make();

    const double aspect = grid.cell_hy() / grid.hx();
    if (aspect < 0.25 || aspect > 4.0) {
        err << "warning: cell aspect ratio hy/hx = " << num(aspect)
            << " is outside [1/4, 4]; the stencil resolves few cone directions\n";
    }

    OracleOptions options;
    options.seed = flags.seed;
    const OracleReport r = oracle_classify(m, grid, flags.stencil, flags.eps, options);

    out << "inferred=" << (r.inferred_class ? to_string(*r.inferred_class) : "Inconclusive") << '\n';
    out << "exact=" << to_string(r.exact_class) << '\n';
    out << "match=" << boolean(r.matches_exact()) << '\n';
    out << "causal_cycle=" << boolean(r.causal_cycle_found) << '\n';
    out << "timelike_cycle=" << boolean(r.timelike_cycle_found) << '\n';
    out << "timelike_scc_coverage=" << num(r.timelike_scc_coverage) << '\n';
    out << "diamond_violations=" << r.diamond_bound_violations << '\n';
    out << "exact_diamond_violations=" << r.exact_diamond_violations << '\n';
    out << "sampled_pairs=" << r.sampled_pairs << '\n';
    out << "soundness_violations=" << r.soundness_violations << '\n';
    out << "interior_pairs=" << r.interior_pairs << '\n';
    out << "agreement=" << num(r.agreement_with_exact) << '\n';
    out << "reach_fraction=" << num(r.reach_fraction_from_origin) << '\n';
    if (!r.inferred_class) out << "diagnostic=" << r.diagnostic << '\n';

    if (!flags.out.empty()) {
        const TimeOrientation t = canonical_time_orientation(m);
        const CausalGraph graph = build_causal_graph(m, t, grid, flags.stencil, flags.eps);
        const int si = grid.nx() / 2;
        const int sj = grid.ny() / 2;
        const auto mask = reachable_set(graph, graph.node(si, sj));
        Sink sink(flags.out, out);
        if (flags.out.size() >= 4 && flags.out.compare(flags.out.size() - 4, 4, ".csv") == 0) {
            write_mask_csv(sink.stream(), grid, mask);
        } else {
            write_mask_pgm(sink.stream(), grid, mask);
        }
        out << "reach_source=" << si << ',' << sj << '\n';
        out << "wrote=" << flags.out << '\n';
    }
    return r.inferred_class ? kOk : kDomainError;
}

// ─── render ───────────────────────────────────────────────────────────────────

int render_cones(const MetricSpec& spec, const GridSpec& grid, const std::string& path,
                 std::ostream& out) {
    Sink sink(path, out);
    std::ostream& csv = sink.stream();
    csv << "x,y,d1x,d1y,d2x,d2y\n";
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const double x = grid.cell_x(i);
            const double y = grid.cell_y(j);
            // A positive conformal factor leaves the cone unchanged.
            FlatMetric local = spec.flat_part() ? *spec.flat_part() : [&] {
                const PointCoefficients c = spec.coefficients_at(x, y);
                return validate_lorentzian(c.E, c.F, c.G);
            }();
            const auto [d1, d2] = null_directions(local);
            csv << format_g17(x) << ',' << format_g17(y) << ',' << format_g17(d1.a) << ','
                << format_g17(d1.b) << ',' << format_g17(d2.a) << ',' << format_g17(d2.b) << '\n';
        }
    }
    if (sink.to_file()) out << "wrote=" << path << '\n';
    return kOk;
}

int render_diamond(const MetricSpec& spec, const GridSpec& grid, const std::string& p_text,
                   const std::string& q_text, const std::string& path, std::ostream& out) {
    const FlatMetric& m = require_flat(spec, "render diamond");
    const auto [px, py] = parse_pair(p_text, ',', "--p");
    const auto [qx, qy] = parse_pair(q_text, ',', "--q");
    const CylinderPoint p(px, py);
    const CylinderPoint q(qx, qy);
    const TimeOrientation t = canonical_time_orientation(m);

    std::vector<std::uint8_t> mask(grid.size(), 0);
    std::size_t members = 0;
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const bool in = diamond_membership(m, t, p, q, CylinderPoint(grid.cell_x(i), grid.cell_y(j)));
            mask[grid.index(i, j)] = in ? 1 : 0;
            members += in ? 1 : 0;
        }
    }
    Sink sink(path, out);
    write_mask_pgm(sink.stream(), grid, mask);
    if (sink.to_file()) {
        out << "members=" << members << '\n';
        out << "wrote=" << path << '\n';
    }
    return kOk;
}

int render_curvature(const MetricSpec& spec, const GridSpec& grid, const std::string& path,
                     std::ostream& out) {
    const MetricField field = MetricField::from_spec(grid, spec);
    const CurvatureField K = brioschi_curvature(field);
    Sink sink(path, out);
    write_curvature_csv(sink.stream(), K);
    if (sink.to_file()) {
        double worst = 0.0;
        for (int j = 1; j + 1 < grid.ny(); ++j) {
            for (int i = 0; i < grid.nx(); ++i) worst = std::max(worst, std::abs(K.at(i, j)));
        }
        out << "max_abs_K_interior=" << num(worst) << '\n';
        out << "wrote=" << path << '\n';
    }
    return kOk;
}

}  // namespace

// ─── Entry point ──────────────────────────────────────────────────────────────

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causal structure of flat Lorentzian metrics on the cylinder S^1 x R", "lorcyl"};
    app.require_subcommand(1);

    std::function<int()> action;

    std::string spec_path;
    bool dual = false;
    double eps = 0.0;
    auto* classify = app.add_subcommand("classify", "Place a spec on the causal ladder");
    classify->add_option("spec", spec_path, "Metric spec file")->required();
    classify->add_flag("--dual", dual, "Also classify -g and check the duality");
    classify->add_option("--eps", eps, "Null tolerance for the character of d/dx")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    classify->callback([&] { action = [&] { return cmd_classify(spec_path, dual, eps, out, err); }; });

    OracleFlags oflags;
    auto* oracle = app.add_subcommand("oracle", "Re-derive the class from a discrete causal graph");
    oracle->add_option("spec", spec_path, "Metric spec file")->required();
    oflags.geometry.add_to(*oracle);
    oracle->add_option("--stencil", oflags.stencil, "Stencil radius")->capture_default_str();
    oracle->add_option("--eps", oflags.eps, "Relative null tolerance for edges")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    oracle->add_option("--seed", oflags.seed, "Sampling seed");
    oracle->add_option("--out", oflags.out, "Reachable-set image (.pgm) or table (.csv)");
    oracle->callback([&] { action = [&] { return cmd_oracle(spec_path, oflags, out, err); }; });

    auto* render = app.add_subcommand("render", "Export plot data");
    render->require_subcommand(1);
    GeometryFlags rgeometry;
    std::string rout;
    std::string p_text;
    std::string q_text;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", spec_path, "Metric spec file")->required();
        rgeometry.add_to(*sub);
        sub->add_option("--out", rout, "Output file (default: standard output)");
    };
    auto* cones = render->add_subcommand("cones", "CSV of null directions per cell");
    add_common(cones);
    cones->callback([&] {
        action = [&] { return render_cones(load_metric_spec(spec_path), rgeometry.make(), rout, out); };
    });
    auto* diamond = render->add_subcommand("diamond", "PGM mask of J+(p) ∩ J-(q)");
    add_common(diamond);
    diamond->add_option("--p", p_text, "Lower tip x,y")->required();
    diamond->add_option("--q", q_text, "Upper tip x,y")->required();
    diamond->callback([&] {
        action = [&] {
            return render_diamond(load_metric_spec(spec_path), rgeometry.make(), p_text, q_text, rout, out);
        };
    });
    auto* curvature = render->add_subcommand("curvature", "CSV of Brioschi curvature");
    add_common(curvature);
    curvature->callback([&] {
        action = [&] { return render_curvature(load_metric_spec(spec_path), rgeometry.make(), rout, out); };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        return action ? action() : kUsageError;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
}

}  // namespace lorcyl::cli
