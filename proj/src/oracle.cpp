/// @file src/oracle.cpp
/// @brief Causal graph construction, SCC cycle detection and the sampled comparison
///        against the exact causality module.

#include "lorcyl/oracle.hpp"

#include "lorcyl/errors.hpp"
#include "lorcyl/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lorcyl {

std::string_view to_string(EdgeLabel l) noexcept {
    return l == EdgeLabel::Timelike ? "Timelike" : "NullCausal";
}

// ─── Graph ────────────────────────────────────────────────────────────────────

CylinderPoint CausalGraph::point(std::uint32_t node) const noexcept {
    const int nx = grid_.nx();
    return {grid_.cell_x(static_cast<int>(node % nx)), grid_.cell_y(static_cast<int>(node / nx))};
}

TangentVector CausalGraph::displacement(const Step& s) const noexcept {
    return {s.di * grid_.hx() + s.winding, s.dj * grid_.cell_hy()};
}

std::vector<Edge> CausalGraph::edges() const {
    std::vector<Edge> out;
    for (std::uint32_t n = 0; n < node_count(); ++n) {
        for_each_neighbour(n, false, [&](std::uint32_t to, EdgeLabel label) {
            out.push_back({n, to, label});
        });
    }
    return out;
}

CausalGraph build_causal_graph(const FlatMetric& m, const TimeOrientation& t, const GridSpec& grid,
                               int stencil_radius, double eps) {
    if (stencil_radius < 1) throw ConfigError("stencil radius must be at least 1");
    if (!(eps >= 0.0)) throw ConfigError("edge tolerance eps must be non-negative");
    if (grid.nx() < 2 * stencil_radius + 1) {
        throw ConfigError("grid too coarse: nx = " + std::to_string(grid.nx()) +
                          " < 2*stencil+1 = " + std::to_string(2 * stencil_radius + 1));
    }

    std::vector<Step> steps;
    const double hx = grid.hx();
    const double hy = grid.cell_hy();
    for (int w = -stencil_radius; w <= stencil_radius; ++w) {
        for (int dj = -stencil_radius; dj <= stencil_radius; ++dj) {
            for (int di = -stencil_radius; di <= stencil_radius; ++di) {
                if (di == 0 && dj == 0) continue;
                const TangentVector v{di * hx + w, dj * hy};
                const CausalCharacter c = classify_vector(m, v, eps);
                if (c == CausalCharacter::Spacelike) continue;
                if (!is_future_directed(m, t, v, eps)) continue;
                steps.push_back({di, dj, w,
                                 c == CausalCharacter::Timelike ? EdgeLabel::Timelike
                                                                : EdgeLabel::NullCausal});
            }
        }
    }
    return CausalGraph(grid, m, t, stencil_radius, eps, std::move(steps));
}

// ─── SCC / reachability ───────────────────────────────────────────────────────

namespace {

// Iterative Tarjan. Returns the size of the component containing each node.
std::vector<std::uint32_t> component_sizes(const CausalGraph& g, bool timelike_only) {
    const std::size_t n = g.node_count();

    std::vector<std::uint32_t> offsets(n + 1, 0);
    std::vector<std::uint32_t> targets;
    for (std::uint32_t v = 0; v < n; ++v) {
        g.for_each_neighbour(v, false, [&](std::uint32_t w, EdgeLabel label) {
            if (!timelike_only || label == EdgeLabel::Timelike) targets.push_back(w);
        });
        offsets[v + 1] = static_cast<std::uint32_t>(targets.size());
    }

    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), size_of(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> calls;  // node, next edge
    std::uint32_t counter = 0;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        calls.emplace_back(root, offsets[root]);

        while (!calls.empty()) {
            auto& [v, pos] = calls.back();
            if (pos < offsets[v + 1]) {
                const std::uint32_t w = targets[pos++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.emplace_back(w, offsets[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::uint32_t done = v;
            calls.pop_back();
            if (low[done] == index[done]) {
                const auto first = std::find(stack.rbegin(), stack.rend(), done).base() - 1;
                const auto count = static_cast<std::uint32_t>(stack.end() - first);
                for (auto it = first; it != stack.end(); ++it) {
                    on_stack[*it] = 0;
                    size_of[*it] = count;
                }
                stack.erase(first, stack.end());
            }
            if (!calls.empty()) {
                const std::uint32_t parent = calls.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return size_of;
}

}  // namespace

CycleReport detect_cycles(const CausalGraph& graph) {
    // No step is (0, 0) and nx > 2·radius rules out wrap-around self loops, so a cycle
    // exists iff some component has more than one node.
    CycleReport r;
    const auto all = component_sizes(graph, false);
    r.causal_cycle = std::any_of(all.begin(), all.end(), [](auto s) { return s > 1; });

    const auto timelike = component_sizes(graph, true);
    const auto covered = std::count_if(timelike.begin(), timelike.end(), [](auto s) { return s > 1; });
    r.timelike_cycle = covered > 0;
    r.timelike_scc_coverage = static_cast<double>(covered) / static_cast<double>(graph.node_count());
    return r;
}

std::vector<std::uint8_t> reachable_set(const CausalGraph& graph, std::uint32_t source,
                                        bool reverse) {
    std::vector<std::uint8_t> seen(graph.node_count(), 0);
    std::vector<std::uint32_t> queue{source};
    seen[source] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        graph.for_each_neighbour(queue[head], reverse, [&](std::uint32_t w, EdgeLabel) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        });
    }
    return seen;
}

// ─── Interior margin ──────────────────────────────────────────────────────────

double chronological_margin(const FlatMetric& m, const TimeOrientation& t, const CylinderPoint& p,
                            const CylinderPoint& target) {
    if (m.E() > 0.0) return std::numeric_limits<double>::infinity();
    if (!future_membership(m, t, p, target, FutureMode::Chronological)) return 0.0;

    const double dx = wrap_unit(target.x() - p.x());
    const double dy = target.y() - p.y();

    // E == 0: one cone edge is the x-axis. Far enough along the admissible half-line
    // the distance to the other edge exceeds |dy|, the distance to the x-axis.
    if (m.E() == 0.0) return std::abs(dy);

    // Future-pointing unit null rays.
    auto [n1, n2] = null_directions(m);
    auto future_unit = [&](TangentVector n) {
        if (metric_pairing(m, n, t.vector()) > 0.0) n = -n;
        const double len = std::hypot(n.a, n.b);
        return TangentVector{n.a / len, n.b / len};
    };
    const TangentVector r1 = future_unit(n1);
    const TangentVector r2 = future_unit(n2);
    auto ray_distance = [](TangentVector v, TangentVector r) {
        const double dot = v.a * r.a + v.b * r.b;
        return dot >= 0.0 ? std::abs(v.a * r.b - v.b * r.a) : std::hypot(v.a, v.b);
    };

    const double lo = std::min(n1.a, n2.a) * dy;
    const double hi = std::max(n1.a, n2.a) * dy;
    double best = 0.0;
    for (double k = std::floor(lo - dx) - 1.0; k <= std::ceil(hi - dx) + 1.0; k += 1.0) {
        const TangentVector v{dx + k, dy};
        if (!(quadratic_form(m, v) < 0.0) || !(metric_pairing(m, v, t.vector()) < 0.0)) continue;
        best = std::max(best, std::min(ray_distance(v, r1), ray_distance(v, r2)));
    }
    return best;
}

// ─── Oracle ───────────────────────────────────────────────────────────────────

OracleReport oracle_classify(const FlatMetric& m, const GridSpec& grid, int stencil_radius,
                             double eps, const OracleOptions& options) {
    const TimeOrientation t = canonical_time_orientation(m);
    const CausalGraph graph = build_causal_graph(m, t, grid, stencil_radius, eps);
    const auto nodes = static_cast<std::uint32_t>(graph.node_count());

    OracleReport report;
    report.exact_class = classify_spacetime(m);

    const CycleReport cycles = detect_cycles(graph);
    report.causal_cycle_found = cycles.causal_cycle;
    report.timelike_cycle_found = cycles.timelike_cycle;
    report.timelike_scc_coverage = cycles.timelike_scc_coverage;

    const auto origin_reach = reachable_set(graph, 0);
    report.reach_fraction_from_origin =
        static_cast<double>(std::count(origin_reach.begin(), origin_reach.end(), 1)) / nodes;

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, nodes - 1);

    // Reachability soundness and agreement on interior chronological pairs.
    const double diagonal = std::hypot(grid.hx(), grid.cell_hy());
    for (int s = 0; s < options.reach_sources; ++s) {
        const std::uint32_t src = pick(rng);
        const auto reach = reachable_set(graph, src);
        const CylinderPoint p = graph.point(src);
        for (int k = 0; k < options.targets_per_source; ++k) {
            const std::uint32_t dst = pick(rng);
            const CylinderPoint q = graph.point(dst);
            ++report.sampled_pairs;
            if (reach[dst] && !future_membership(m, t, p, q, FutureMode::Causal)) {
                ++report.soundness_violations;
            }
            if (chronological_margin(m, t, p, q) >= options.interior_margin * diagonal) {
                ++report.interior_pairs;
                if (reach[dst]) ++report.interior_reached;
            }
        }
    }
    if (report.interior_pairs > 0) {
        report.agreement_with_exact =
            static_cast<double>(report.interior_reached) / report.interior_pairs;
    }

    // Diamond y-bound, graph and exact.
    std::vector<std::uint32_t> p_pool, q_pool;
    std::vector<std::vector<std::uint8_t>> futures, pasts;
    for (int i = 0; i < options.diamond_pool; ++i) {
        p_pool.push_back(pick(rng));
        futures.push_back(reachable_set(graph, p_pool.back(), false));
        q_pool.push_back(pick(rng));
        pasts.push_back(reachable_set(graph, q_pool.back(), true));
    }
    std::uniform_int_distribution<int> pool_pick(0, options.diamond_pool - 1);
    for (int s = 0; s < options.diamond_samples; ++s) {
        const int a = pool_pick(rng);
        const int b = pool_pick(rng);
        const std::uint32_t r = pick(rng);
        const CylinderPoint pp = graph.point(p_pool[a]);
        const CylinderPoint qq = graph.point(q_pool[b]);
        const CylinderPoint rr = graph.point(r);
        const bool inside = pp.y() <= rr.y() && rr.y() <= qq.y();
        if (futures[a][r] && pasts[b][r] && !inside) ++report.diamond_bound_violations;
        if (!inside && diamond_membership(m, t, pp, qq, rr)) ++report.exact_diamond_violations;
    }

    if (cycles.timelike_cycle && cycles.timelike_scc_coverage >= options.coverage_threshold) {
        report.inferred_class = CausalClass::TotallyVicious;
    } else if (cycles.causal_cycle && !cycles.timelike_cycle) {
        report.inferred_class = CausalClass::ChronologicalNonCausal;
    } else if (!cycles.causal_cycle && report.diamond_bound_violations == 0) {
        report.inferred_class = CausalClass::GloballyHyperbolic;
    } else if (cycles.timelike_cycle) {
        report.diagnostic = "timelike cycles cover only " +
                            format_g17(cycles.timelike_scc_coverage) + " of the nodes";
    } else {
        report.diagnostic = "acyclic graph with " + std::to_string(report.diamond_bound_violations) +
                            " diamond y-bound violations";
    }
    return report;
}

// ─── Export ───────────────────────────────────────────────────────────────────

void write_mask_pgm(std::ostream& out, const GridSpec& grid, std::span<const std::uint8_t> mask) {
    if (mask.size() != grid.size()) throw GridMismatchError("mask size does not match grid");
    std::vector<std::uint8_t> pixels(mask.size());
    for (int j = 0; j < grid.ny(); ++j) {
        const int row = grid.ny() - 1 - j;
        for (int i = 0; i < grid.nx(); ++i) {
            pixels[static_cast<std::size_t>(row) * grid.nx() + i] = mask[grid.index(i, j)] ? 255 : 0;
        }
    }
    write_pgm(out, grid.nx(), grid.ny(), pixels);
}

void write_mask_csv(std::ostream& out, const GridSpec& grid, std::span<const std::uint8_t> mask) {
    if (mask.size() != grid.size()) throw GridMismatchError("mask size does not match grid");
    out << "i,j,reachable\n";
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            out << i << ',' << j << ',' << (mask[grid.index(i, j)] ? 1 : 0) << '\n';
        }
    }
}

}  // namespace lorcyl
