#pragma once

// Homology checks on truncations of the circle-diagram complex.

#include "tubecalc/annular.hpp"

#include <functional>
#include <vector>

namespace tubecalc::annular {

struct H0Report {
    std::size_t chain_dim = 1;
    std::size_t boundary_rank = 0;  // rank of the degree-1 boundary on the window
    std::size_t homology_dim = 1;
    unsigned window = 0;
};

/// dim C_0 - rank(boundary from degree 1) with degree-1 diagrams up to `window` circles.
H0Report h0_report(unsigned window = 5);

struct Certificate {
    CircleDiagram target;
    bool contained = false;
    /// target = boundary(Σ coeff·diagram) when contained
    ChainVector preimage{2};
    /// boundary(preimage) recomputed and compared with the target
    bool verified = false;
};

struct H1Report {
    unsigned K = 0;
    Mode mode = Mode::unshaded;
    std::size_t domain_dim = 0;   // degree-2 diagrams with total <= K+1
    std::size_t boundary_rank = 0;
    bool contained = false;
    std::vector<Certificate> certificates;
};

/// Checks that every sigma_m, m <= K, is a boundary of a degree-2 chain with
/// at most K+1 circles, with exact certificates.
H1Report h1_vanishing_check(unsigned K, Mode mode = Mode::unshaded, std::function<void()> tick = {});

struct H2Options {
    Mode mode = Mode::unshaded;
    std::size_t chain_cap = 50000;
    /// false replaces the degree-3 window by the empty set
    bool include_degree3 = true;
    std::function<void()> tick;
};

struct KernelVectorResult {
    ChainVector vector{2};
    bool contained = false;
};

struct H2Report {
    unsigned N = 0;
    unsigned margin = 0;
    Mode mode = Mode::unshaded;
    std::size_t degree2_dim = 0;
    std::size_t degree3_dim = 0;
    std::size_t kernel_dim = 0;
    std::size_t image_rank = 0;  // rank of the degree-3 boundary on the (N+margin) window
    bool contained = false;
    std::vector<KernelVectorResult> vectors;
    std::vector<ChainVector> failing_vectors() const;
};

/// Kernel of the degree-2 boundary on diagrams with at most N circles, each
/// kernel vector tested for membership in the image of the degree-3 boundary
/// on diagrams with at most N+margin circles.
H2Report h2_vanishing_check(unsigned N, unsigned margin = 2, const H2Options& options = {});

struct TruncatedHomology {
    unsigned window = 0;
    Mode mode = Mode::unshaded;
    std::vector<std::size_t> chain_dims;   // degrees 0..3
    std::vector<std::size_t> ranks;        // ranks[k] = rank of the boundary from degree k, k = 1..3 (ranks[0] = 0)
    std::vector<long> homology_dims;       // degrees 0..2 of the truncated complex
};

/// Ranks and homology of the complex restricted to diagrams with at most
/// `window` circles in every degree. Top-of-window effects are not removed.
TruncatedHomology truncated_homology(unsigned window, Mode mode = Mode::unshaded,
                                     std::size_t chain_cap = 50000, std::function<void()> tick = {});

}  // namespace tubecalc::annular
