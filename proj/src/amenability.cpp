#include "tubecalc/amenability.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace tubecalc {

bool WeightedGraph::truncated() const { return std::find(frontier.begin(), frontier.end(), true) != frontier.end(); }

WeightedGraph fusion_graph(const FusionRing& ring, const std::vector<std::size_t>& generators,
                           std::optional<std::vector<double>> weights) {
    const std::size_t n = ring.size();
    const std::set<std::size_t> gens(generators.begin(), generators.end());
    for (std::size_t g : gens) {
        if (g >= n) throw Error("generator out of range");
        if (!gens.count(ring.dual(g))) throw Error("generator set is not closed under duals: " + ring.label(g));
    }
    WeightedGraph G;
    G.vertices = ring.labels();
    if (weights) {
        if (weights->size() != n) throw DimensionMismatch("weight list has wrong length");
        G.weight = *weights;
    } else {
        for (double d : ring.dims()) G.weight.push_back(d * d);
    }
    for (double w : G.weight)
        if (!(w > 0.0)) throw Error("weights must be positive");
    for (std::size_t g : gens) G.generators.push_back(ring.label(g));
    std::vector<std::set<std::size_t>> adj(n);
    G.frontier.assign(n, false);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t g : gens) {
            const Products p = ring.product(g, a);
            if (p.clipped) G.frontier[a] = true;
            for (const auto& [b, m] : p.terms) {
                if (b == a) continue;
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    for (const auto& s : adj) G.adjacency.emplace_back(s.begin(), s.end());
    return G;
}

WeightedGraph parse_graph(const std::string& text) {
    WeightedGraph G;
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> frontier;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (tok[0] == "vertex") {
            if (tok.size() != 3) throw ParseError(where + "expected 'vertex name weight'");
            double w = 0.0;
            try {
                w = std::stod(tok[2]);
            } catch (const std::exception&) {
                throw ParseError(where + "bad weight '" + tok[2] + "'");
            }
            if (!(w > 0.0)) throw ParseError(where + "weights must be positive");
            if (!index.emplace(tok[1], G.vertices.size()).second) throw ParseError(where + "duplicate vertex " + tok[1]);
            G.vertices.push_back(tok[1]);
            G.weight.push_back(w);
        } else if (tok[0] == "generators") {
            G.generators.assign(tok.begin() + 1, tok.end());
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) throw ParseError(where + "expected 'edge a b'");
            edges.emplace_back(tok[1], tok[2]);
        } else if (tok[0] == "frontier") {
            frontier.insert(frontier.end(), tok.begin() + 1, tok.end());
        } else {
            throw ParseError(where + "unknown keyword '" + tok[0] + "'");
        }
    }
    if (G.vertices.empty()) throw ParseError("graph has no vertices");
    auto at = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("unknown vertex '" + name + "'");
        return it->second;
    };
    std::vector<std::set<std::size_t>> adj(G.vertices.size());
    for (const auto& [a, b] : edges) {
        const std::size_t i = at(a), j = at(b);
        if (i == j) continue;
        adj[i].insert(j);
        adj[j].insert(i);
    }
    for (const auto& s : adj) G.adjacency.emplace_back(s.begin(), s.end());
    G.frontier.assign(G.vertices.size(), false);
    for (const auto& f : frontier) G.frontier[at(f)] = true;
    return G;
}

BoundaryMeasure boundary_measure(const WeightedGraph& g, const std::vector<std::size_t>& F, bool allow_frontier) {
    if (F.empty()) throw Error("boundary_measure needs a nonempty set");
    std::vector<bool> in(g.vertices.size(), false);
    for (std::size_t v : F) {
        if (v >= in.size()) throw Error("vertex out of range");
        if (g.frontier[v] && !allow_frontier)
            throw TruncationInconclusive("set touches the window frontier at " + g.vertices[v]);
        in[v] = true;
    }
    BoundaryMeasure m;
    std::vector<bool> counted(in.size(), false);
    for (std::size_t v = 0; v < in.size(); ++v) {
        if (!in[v]) continue;
        m.measure += g.weight[v];
        for (std::size_t u : g.adjacency[v]) {
            if (in[u]) continue;
            if (!counted[v]) {
                counted[v] = true;  // inner boundary
                m.boundary += g.weight[v];
            }
            if (!counted[u]) {
                counted[u] = true;  // outer boundary
                m.boundary += g.weight[u];
            }
        }
    }
    return m;
}

namespace {

FolnerReport search_balls(const WeightedGraph& g, double epsilon, std::size_t max_size) {
    FolnerReport r;
    r.strategy = FolnerStrategy::balls;
    r.epsilon = epsilon;
    std::vector<long> dist(g.vertices.size(), -1);
    std::vector<std::size_t> ball{g.root};
    dist[g.root] = 0;
    std::vector<std::size_t> layer{g.root};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t radius = 0; !layer.empty() && ball.size() <= max_size; ++radius) {
        const BoundaryMeasure m = boundary_measure(g, ball);
        ++r.candidates;
        if (m.ratio() < best) {
            best = m.ratio();
            r.set = ball;
            r.ratio = best;
            r.radius = radius;
        }
        if (m.ratio() < epsilon) {
            r.found = true;
            return r;
        }
        std::vector<std::size_t> next;
        for (std::size_t v : layer)
            for (std::size_t u : g.adjacency[v])
                if (dist[u] < 0) {
                    dist[u] = static_cast<long>(radius) + 1;
                    next.push_back(u);
                }
        std::sort(next.begin(), next.end());
        ball.insert(ball.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return r;
}

FolnerReport search_greedy(const WeightedGraph& g, double epsilon, std::size_t max_size) {
    FolnerReport r;
    r.strategy = FolnerStrategy::greedy;
    r.epsilon = epsilon;
    std::vector<std::size_t> F{g.root};
    std::vector<bool> in(g.vertices.size(), false);
    in[g.root] = true;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        const BoundaryMeasure m = boundary_measure(g, F);
        ++r.candidates;
        if (m.ratio() < best) {
            best = m.ratio();
            r.set = F;
            r.ratio = best;
        }
        if (m.ratio() < epsilon) {
            r.found = true;
            return r;
        }
        if (F.size() >= max_size) return r;
        // add the outside neighbour giving the smallest ratio (lowest index on ties)
        std::set<std::size_t> outside;
        for (std::size_t v : F)
            for (std::size_t u : g.adjacency[v])
                if (!in[u]) outside.insert(u);
        if (outside.empty()) return r;
        std::size_t pick = *outside.begin();
        double pick_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t u : outside) {
            if (g.frontier[u]) throw TruncationInconclusive("greedy growth reaches the window frontier at " + g.vertices[u]);
            auto trial = F;
            trial.push_back(u);
            const double q = boundary_measure(g, trial).ratio();
            if (q < pick_ratio) {
                pick_ratio = q;
                pick = u;
            }
        }
        F.push_back(pick);
        in[pick] = true;
    }
}

}  // namespace

FolnerReport folner_search(const WeightedGraph& g, double epsilon, std::size_t max_size, FolnerStrategy strategy) {
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    if (max_size == 0) throw Error("max_size must be positive");
    return strategy == FolnerStrategy::balls ? search_balls(g, epsilon, max_size) : search_greedy(g, epsilon, max_size);
}

double symmetric_band_lambda_max(const std::vector<std::vector<std::pair<std::size_t, double>>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) return 0.0;
    std::size_t band = 0;
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& [j, v] : rows[i]) {
            band = std::max(band, i > j ? i - j : j - i);
            s += std::fabs(v);
        }
        bound = std::max(bound, s);
    }
    // lower band of x I - S, row i holds columns i-band .. i
    auto positive_definite = [&](double x) {
        std::vector<std::vector<double>> L(n, std::vector<double>(band + 1, 0.0));
        auto at = [&](std::size_t i, std::size_t j) -> double& { return L[i][band - (i - j)]; };
        for (std::size_t i = 0; i < n; ++i) {
            at(i, i) = x;
            for (const auto& [j, v] : rows[i])
                if (j <= i) at(i, j) -= v;
        }
        std::vector<double> D(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i > band ? i - band : 0;
            for (std::size_t j = lo; j <= i; ++j) {
                double s = at(i, j);
                const std::size_t klo = std::max(lo, j > band ? j - band : 0);
                for (std::size_t k = klo; k < j; ++k) s -= at(i, k) * at(j, k) * D[k];
                if (j == i) {
                    if (!(s > 0.0)) return false;
                    D[i] = s;
                    at(i, i) = 1.0;
                } else {
                    at(i, j) = s / D[j];
                }
            }
        }
        return true;
    };
    double lo = -bound, hi = bound + 1e-12;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (positive_definite(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

double fusion_operator_norm(const FusionRing& ring, std::size_t generator) {
    const std::size_t n = ring.size();
    // M[b][a] = N(g, a, b); the norm of M is sqrt(lambda_max(M^T M))
    std::vector<std::map<std::size_t, double>> cols(n);
    for (std::size_t a = 0; a < n; ++a)
        for (const auto& [b, m] : ring.product(generator, a).terms) cols[a][b] += m;
    const bool self_dual = ring.dual(generator) == generator;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
    if (self_dual) {
        for (std::size_t a = 0; a < n; ++a)
            for (const auto& [b, v] : cols[a]) rows[b].emplace_back(a, v);
        return symmetric_band_lambda_max(rows);
    }
    std::vector<std::vector<std::pair<std::size_t, double>>> by_row(n);
    for (std::size_t a = 0; a < n; ++a)
        for (const auto& [b, v] : cols[a]) by_row[b].emplace_back(a, v);
    for (std::size_t a = 0; a < n; ++a) {
        std::map<std::size_t, double> acc;
        for (const auto& [b, v] : cols[a])
            for (const auto& [c, w] : by_row[b]) acc[c] += v * w;
        rows[a].assign(acc.begin(), acc.end());
    }
    return std::sqrt(symmetric_band_lambda_max(rows));
}

KestenReport kesten_check(const FusionRing& ring, std::size_t generator, double tolerance) {
    if (ring.truncated()) throw TruncationInconclusive("use kesten_check_windows for truncated rings");
    KestenReport r;
    r.graph_norm = fusion_operator_norm(ring, generator);
    r.dimension = ring.dims().at(generator);
    r.window = ring.size();
    r.history.emplace_back(r.window, r.graph_norm);
    r.amenable = std::fabs(r.graph_norm - r.dimension) < tolerance;
    return r;
}

KestenReport kesten_check_windows(const std::function<FusionRing(std::size_t)>& window, std::size_t generator,
                                  double tolerance, std::size_t start, std::size_t max_window) {
    KestenReport r;
    double previous = -1.0;
    for (std::size_t W = start; W <= max_window; W *= 2) {
        const FusionRing ring = window(W);
        const double norm = fusion_operator_norm(ring, generator);
        r.history.emplace_back(W, norm);
        r.dimension = ring.dims().at(generator);
        r.graph_norm = norm;
        r.window = W;
        if (previous >= 0.0 && std::fabs(norm - previous) < tolerance) {
            r.stable = true;
            r.amenable = std::fabs(norm - r.dimension) < tolerance;
            return r;
        }
        previous = norm;
    }
    throw TruncationInconclusive("norm did not stabilize by window " + std::to_string(max_window));
}

}  // namespace tubecalc
