#pragma once

#include "tubecalc/fusion.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tubecalc {

/// Vertices are labels of a fusion ring (or a window of one); alpha ~ beta
/// when N(g, alpha, beta) > 0 for some generator g.
struct WeightedGraph {
    std::vector<std::string> vertices;
    std::vector<double> weight;
    std::vector<std::vector<std::size_t>> adjacency;  // sorted, symmetric
    std::vector<std::string> generators;
    /// vertices whose neighbourhood is cut off by a window
    std::vector<bool> frontier;
    std::size_t root = 0;

    bool truncated() const;
};

/// Default weights d(alpha)^2. The generator set must be closed under duals.
WeightedGraph fusion_graph(const FusionRing& ring, const std::vector<std::size_t>& generators,
                           std::optional<std::vector<double>> weights = std::nullopt);

/// Text format: "vertex name weight", "generators a b ...", "edge a b", "frontier a".
/// The first vertex is the root.
WeightedGraph parse_graph(const std::string& text);

struct BoundaryMeasure {
    double boundary = 0.0;
    double measure = 0.0;
    double ratio() const { return boundary / measure; }
};

/// Inner plus outer boundary. Throws TruncationInconclusive when F contains a
/// frontier vertex (its true neighbourhood is unknown) unless allow_frontier.
BoundaryMeasure boundary_measure(const WeightedGraph& g, const std::vector<std::size_t>& F, bool allow_frontier = false);

enum class FolnerStrategy { balls, greedy };

struct FolnerReport {
    bool found = false;
    std::vector<std::size_t> set;  // witness when found, otherwise the best candidate
    double ratio = 0.0;            // ratio of `set`
    double epsilon = 0.0;
    FolnerStrategy strategy = FolnerStrategy::balls;
    std::size_t candidates = 0;
    std::optional<std::size_t> radius;  // balls strategy
};

FolnerReport folner_search(const WeightedGraph& g, double epsilon, std::size_t max_size,
                           FolnerStrategy strategy = FolnerStrategy::balls);

struct KestenReport {
    double graph_norm = 0.0;
    double dimension = 0.0;
    bool amenable = false;
    bool stable = true;
    std::size_t window = 0;
    std::vector<std::pair<std::size_t, double>> history;  // (window size, norm)
};

/// Operator norm of alpha -> g·alpha on a finite ring's labels.
double fusion_operator_norm(const FusionRing& ring, std::size_t generator);

/// Finite ring: a single norm computation.
KestenReport kesten_check(const FusionRing& ring, std::size_t generator, double tolerance = 1e-6);

/// Windows of an infinite ring: window sizes double from `start` until two
/// consecutive norms agree to `tolerance`; TruncationInconclusive if that does
/// not happen by `max_window`.
KestenReport kesten_check_windows(const std::function<FusionRing(std::size_t)>& window, std::size_t generator,
                                  double tolerance = 1e-6, std::size_t start = 16, std::size_t max_window = 1u << 16);

/// Largest eigenvalue of a symmetric band matrix given by rows of
/// (column, value) pairs, by bisection on positive definiteness of x I - S.
double symmetric_band_lambda_max(const std::vector<std::vector<std::pair<std::size_t, double>>>& rows);

}  // namespace tubecalc
