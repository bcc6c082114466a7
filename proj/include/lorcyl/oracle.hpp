/// @file include/lorcyl/oracle.hpp
/// @brief Brute-force causal structure: a directed graph of future-causal steps between
///        grid cells, used to re-derive the exact classification independently.

#pragma once

#include "lorcyl/causality.hpp"
#include "lorcyl/curvature.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace lorcyl {

enum class EdgeLabel : std::uint8_t { Timelike, NullCausal };

/// Admissible stencil step shared by every node: (Δi, Δj) cells plus `winding` full
/// turns around the x-circle, i.e. displacement (Δi/nx + winding, Δj·hy) on the cover.
struct Step {
    int di;
    int dj;
    int winding;
    EdgeLabel label;
};

struct Edge {
    std::uint32_t from;
    std::uint32_t to;
    EdgeLabel label;
};

/// Cells of a GridSpec (centres at GridSpec::cell_x/cell_y) joined by every stencil step
/// whose centre-to-centre displacement is future causal. A step is (Δi, Δj) with
/// max(|Δi|, |Δj|) <= radius, lifted by |winding| <= radius turns around the x-circle;
/// the pure turn (0, 0, w) is a loop at one node and is left out. Steps leaving
/// [y_min, y_max] are dropped. Flat metrics are translation invariant, so the edge set is
/// one step list applied at every node. Several steps may join the same pair of nodes.
class CausalGraph {
public:
    const GridSpec& grid() const noexcept { return grid_; }
    const FlatMetric& metric() const noexcept { return metric_; }
    const TimeOrientation& orientation() const noexcept { return orientation_; }
    int stencil_radius() const noexcept { return radius_; }
    double eps() const noexcept { return eps_; }
    std::span<const Step> steps() const noexcept { return steps_; }

    std::size_t node_count() const noexcept { return grid_.size(); }
    std::uint32_t node(int i, int j) const noexcept {
        return static_cast<std::uint32_t>(grid_.index(i, j));
    }
    CylinderPoint point(std::uint32_t node) const noexcept;
    /// Displacement of a step on the universal cover.
    TangentVector displacement(const Step& s) const noexcept;

    /// Calls f(target, label) for each out-edge (reverse = false) or in-edge (reverse = true).
    template <typename F>
    void for_each_neighbour(std::uint32_t node, bool reverse, F&& f) const {
        const int nx = grid_.nx();
        const int i = static_cast<int>(node % nx);
        const int j = static_cast<int>(node / nx);
        for (const Step& s : steps_) {
            const int di = reverse ? -s.di : s.di;
            const int dj = reverse ? -s.dj : s.dj;
            const int jj = j + dj;
            if (jj < 0 || jj >= grid_.ny()) continue;
            const int ii = ((i + di) % nx + nx) % nx;
            f(static_cast<std::uint32_t>(jj * nx + ii), s.label);
        }
    }

    /// Materialised edge list, ordered by source node then step.
    std::vector<Edge> edges() const;

private:
    friend CausalGraph build_causal_graph(const FlatMetric&, const TimeOrientation&,
                                          const GridSpec&, int, double);
    CausalGraph(GridSpec grid, FlatMetric m, TimeOrientation t, int radius, double eps,
                std::vector<Step> steps)
        : grid_(grid), metric_(m), orientation_(t), radius_(radius), eps_(eps),
          steps_(std::move(steps)) {}

    GridSpec grid_;
    FlatMetric metric_;
    TimeOrientation orientation_;
    int radius_;
    double eps_;
    std::vector<Step> steps_;
};

/// Throws ConfigError when stencil_radius < 1, eps < 0 or nx < 2·stencil_radius + 1.
CausalGraph build_causal_graph(const FlatMetric& m, const TimeOrientation& t, const GridSpec& grid,
                               int stencil_radius, double eps);

struct CycleReport {
    bool causal_cycle = false;
    bool timelike_cycle = false;
    /// Fraction of nodes lying in a timelike-edge SCC with more than one node.
    double timelike_scc_coverage = 0.0;
};

/// Exact strongly-connected-component analysis over the whole graph.
CycleReport detect_cycles(const CausalGraph& graph);

/// Nodes reachable from `source` along edges (reverse = true: nodes that reach `source`).
/// The source itself is always marked.
std::vector<std::uint8_t> reachable_set(const CausalGraph& graph, std::uint32_t source,
                                        bool reverse = false);

/// Largest distance from the lift (Δx + k, Δy) to the boundary of the future cone over
/// all windings k for which it is chronological; 0 when target ∉ I⁺(p); +inf for E > 0.
double chronological_margin(const FlatMetric& m, const TimeOrientation& t,
                            const CylinderPoint& p, const CylinderPoint& target);

struct OracleOptions {
    int reach_sources = 25;        ///< BFS sources for the pair sample
    int targets_per_source = 20;   ///< pairs = reach_sources · targets_per_source
    int diamond_samples = 1000;    ///< (p, q, r) triples
    int diamond_pool = 10;         ///< distinct p and q nodes the triples draw from
    double interior_margin = 2.0;  ///< in cell diagonals
    double coverage_threshold = 0.99;
    std::uint64_t seed = 0x5eed'cafe'f00dULL;
};

struct OracleReport {
    bool causal_cycle_found = false;
    bool timelike_cycle_found = false;
    double timelike_scc_coverage = 0.0;
    /// Graph diamonds J⁺(p) ∩ J⁻(q) containing an r outside [p.y, q.y].
    int diamond_bound_violations = 0;
    /// Same check for the exact diamond_membership on the same triples.
    int exact_diamond_violations = 0;
    /// Empty means Inconclusive; `diagnostic` says why.
    std::optional<CausalClass> inferred_class;
    CausalClass exact_class = CausalClass::GloballyHyperbolic;
    std::string diagnostic;

    int sampled_pairs = 0;
    /// Graph-reachable sampled pairs that are not in the exact J⁺.
    int soundness_violations = 0;
    /// Sampled pairs that are exactly chronological with the interior margin.
    int interior_pairs = 0;
    int interior_reached = 0;
    /// interior_reached / interior_pairs (1 when there are no interior pairs).
    double agreement_with_exact = 1.0;
    /// Fraction of nodes reachable from node (0, 0).
    double reach_fraction_from_origin = 0.0;

    bool matches_exact() const noexcept { return inferred_class == exact_class; }
};

OracleReport oracle_classify(const FlatMetric& m, const GridSpec& grid, int stencil_radius,
                             double eps, const OracleOptions& options = {});

std::string_view to_string(EdgeLabel l) noexcept;

/// P2 image, one pixel per cell, top row = largest y; 255 = set.
void write_mask_pgm(std::ostream& out, const GridSpec& grid, std::span<const std::uint8_t> mask);
/// `i,j,reachable` rows in node order.
void write_mask_csv(std::ostream& out, const GridSpec& grid, std::span<const std::uint8_t> mask);

}  // namespace lorcyl
