#include "tubecalc/annular_checks.hpp"

#include "tubecalc/error.hpp"

namespace tubecalc::annular {

namespace {

std::vector<RatFunc> to_dense(const std::vector<IntPoly>& v) { return {v.begin(), v.end()}; }

ChainVector from_combination(const Combination& combo, const std::vector<CircleDiagram>& basis, int degree) {
    ChainVector out(degree);
    for (const auto& [i, c] : combo) out.add(basis.at(i), c);
    return out;
}

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) throw SizeLimit(n, cap);
}

}  // namespace

H0Report h0_report(unsigned window) {
    H0Report r;
    r.window = window;
    r.chain_dim = count_diagrams(0, window);
    r.boundary_rank = rank(boundary_matrix(1, window, window));
    r.homology_dim = r.chain_dim - r.boundary_rank;
    return r;
}

H1Report h1_vanishing_check(unsigned K, Mode mode, std::function<void()> tick) {
    H1Report r;
    r.K = K;
    r.mode = mode;
    const unsigned window = K + 1;
    const auto domain = enumerate_diagrams(2, window, mode);
    const DiagramIndex rows(enumerate_diagrams(1, window, mode));
    r.domain_dim = domain.size();
    const ColumnSpan span(boundary_matrix(2, window, window, mode), true, std::move(tick));
    r.boundary_rank = span.rank();

    std::vector<CircleDiagram> targets;
    for (unsigned m = 0; m <= K; ++m) {
        if (mode == Mode::shaded) {
            targets.push_back(sigma(m, false));
            targets.push_back(sigma(m, true));
        } else {
            targets.push_back(sigma(m));
        }
    }
    r.contained = true;
    for (const auto& t : targets) {
        Certificate cert{t, false, ChainVector(2), false};
        auto combo = span.express(rows.coordinates(ChainVector(t)));
        if (combo) {
            cert.contained = true;
            cert.preimage = from_combination(*combo, domain, 2);
            cert.verified = boundary(cert.preimage) == ChainVector(t);
        }
        r.contained = r.contained && cert.contained && cert.verified;
        r.certificates.push_back(std::move(cert));
    }
    return r;
}

std::vector<ChainVector> H2Report::failing_vectors() const {
    std::vector<ChainVector> out;
    for (const auto& v : vectors)
        if (!v.contained) out.push_back(v.vector);
    return out;
}

H2Report h2_vanishing_check(unsigned N, unsigned margin, const H2Options& options) {
    if (N < 1) throw Error("h2 check needs N >= 1");
    H2Report r;
    r.N = N;
    r.margin = margin;
    r.mode = options.mode;
    const unsigned wide = N + margin;

    const std::size_t n3 = options.include_degree3 ? count_diagrams(3, wide, options.mode) : 0;
    check_cap(count_diagrams(2, wide, options.mode), options.chain_cap);
    check_cap(n3, options.chain_cap);

    const auto c2 = enumerate_diagrams(2, N, options.mode);
    r.degree2_dim = c2.size();
    const SparseMat d2 = boundary_matrix(2, N, N, options.mode);
    const auto kernel = kernel_basis(d2);
    r.kernel_dim = kernel.size();

    const DiagramIndex wide_rows(enumerate_diagrams(2, wide, options.mode));
    SparseMat d3(wide_rows.size(), 0);
    if (options.include_degree3) d3 = boundary_matrix(3, wide, wide, options.mode);
    r.degree3_dim = d3.cols();
    const ColumnSpan image(d3, false, options.tick);
    r.image_rank = image.rank();

    r.contained = true;
    for (const auto& k : kernel) {
        ChainVector v = DiagramIndex(c2).vector(to_dense(k), 2);
        const bool in = image.contains(wide_rows.coordinates(v));
        r.contained = r.contained && in;
        r.vectors.push_back({std::move(v), in});
    }
    return r;
}

TruncatedHomology truncated_homology(unsigned window, Mode mode, std::size_t chain_cap, std::function<void()> tick) {
    TruncatedHomology t;
    t.window = window;
    t.mode = mode;
    for (int k = 0; k <= kMaxDegree; ++k) {
        t.chain_dims.push_back(count_diagrams(k, window, mode));
        check_cap(t.chain_dims.back(), chain_cap);
    }
    t.ranks.push_back(0);
    for (int k = 1; k <= kMaxDegree; ++k) t.ranks.push_back(rank(boundary_matrix(k, window, window, mode), tick));
    for (int k = 0; k <= 2; ++k)
        t.homology_dims.push_back(static_cast<long>(t.chain_dims[k]) - static_cast<long>(t.ranks[k]) -
                                  static_cast<long>(t.ranks[k + 1]));
    return t;
}

}  // namespace tubecalc::annular
