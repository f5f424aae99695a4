#include "tubecalc/verify.hpp"

#include "tubecalc/error.hpp"
#include "tubecalc/group.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace tubecalc {

using annular::ChainVector;
using annular::CircleDiagram;
using annular::Mode;

const char* status_name(Status s) {
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

bool VerifyReport::all_passed() const {
    for (const auto& r : results)
        if (r.status != Status::pass) return false;
    return true;
}

bool VerifyReport::any_failed() const {
    for (const auto& r : results)
        if (r.status == Status::fail) return true;
    return false;
}

Json VerifyReport::to_json() const {
    Json items = Json::array();
    for (const auto& r : results)
        items.push_back({{"id", r.id}, {"name", r.name}, {"status", status_name(r.status)}, {"detail", r.detail}});
    return Json{{"criteria", items}, {"all_passed", all_passed()}};
}

std::vector<std::string> VerifyReport::summary_lines() const {
    std::vector<std::string> out;
    for (const auto& r : results) {
        char head[64];
        std::snprintf(head, sizeof head, "%-12s %2d ", status_name(r.status), r.id);
        out.push_back(head + r.name + (r.detail.empty() ? "" : " (" + r.detail + ")"));
    }
    return out;
}

ChainVector identify_degree1_shadings(const ChainVector& v) {
    ChainVector out(v.degree());
    for (const auto& [d, c] : v.terms()) {
        if (d.degree() == 1 && d.shading() && d.total_circles() % 2 == 1)
            out.add(annular::sigma(d.total_circles(), false), c);
        else
            out.add(d, c);
    }
    return out;
}

namespace {

// A failed check carries its own explanation.
struct Failed {
    std::string detail;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failed{what};
}

void cap(std::size_t n, std::size_t limit) {
    if (n > limit) throw SizeLimit(n, limit);
}

RatFunc dpow(unsigned k) { return RatFunc(IntPoly::monomial(1, k)); }

std::string ints(const std::vector<long>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string tlj_global_index() {
    double worst = 0.0;
    for (int n = 2; n <= 40; ++n) {
        const FusionRing ring = tlj_even(n);
        double total = 0.0;
        for (double d : ring.dims()) total += d * d;
        const double s = std::sin(std::numbers::pi / (n + 1));
        const double closed = (n + 1) / (4.0 * s * s);
        worst = std::max(worst, std::fabs(total - closed));
        require(std::fabs(total - closed) <= 1e-9, "global index off at n=" + std::to_string(n));
        const double b = beta0(ring).beta0;
        require(std::fabs(b - tlj_profile(static_cast<unsigned>(n)).at(0).evaluate()) <= 1e-9,
                "beta0 disagrees with the profile at n=" + std::to_string(n));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "n=2..40, max error %.1e", worst);
    return buf;
}

std::string pointed_beta0() {
    for (const char* name : {"Z2", "Z3", "S3", "D4"}) {
        const GroupTable g = GroupTable::builtin(name);
        const auto r = beta0(from_group(g));
        require(r.exact_beta0.has_value(), std::string("no exact value for ") + name);
        require(*r.exact_beta0 == RatFunc(BigRat(1, static_cast<long>(g.order()))), std::string("beta0 != 1/|G| for ") + name);
    }
    return "Z/2, Z/3, S3, D4";
}

void check_tube(const TubeAlgebra& A, const std::string& name) {
    const VerificationReport r = verify_identities(A);
    if (const IdentityCheck* f = r.first_failure()) require(false, name + ": " + f->name + " fails");
    require(r.find("lemma-sum").applicable, name + ": lemma-sum not applicable");
}

std::string tube_identities(const VerifyOptions& o) {
    std::size_t checked = 0;
    for (const char* name : {"Z2", "Z3", "S3"}) {
        const GroupTable g = GroupTable::builtin(name);
        const TubeAlgebra A = tube_from_group(g);
        check_tube(A, name);
        const CornerMatch c = fusion_corner(A, from_group(g));
        require(c.matched, std::string(name) + ": unit corner does not match the group ring: " + c.detail);
        for (const auto& ch : verify_identities(A).checks) checked += ch.checked;
    }
    if (o.tube_file) {
        std::ifstream in(*o.tube_file);
        if (!in) throw ParseError("cannot read " + *o.tube_file);
        std::stringstream ss;
        ss << in.rdbuf();
        check_tube(parse_tube(ss.str()), *o.tube_file);
    }
    return std::to_string(checked) + " instances, 0 failures";
}

std::string tube_homology(const VerifyOptions& o) {
    for (const char* name : {"Z2", "Z3", "S3"}) {
        const HomologyReport h = trivial_homology(tube_from_group(GroupTable::builtin(name)), 2, o.chain_cap, o.tick);
        require(h.dims == std::vector<long>{1, 0, 0}, std::string(name) + " gives " + ints(h.dims));
        require(h.boundary_squares_zero, std::string(name) + ": boundary does not square to zero");
    }
    return "(1,0,0) for Z/2, Z/3, S3";
}

std::string annular_golden() {
    for (unsigned k = 0; k <= 6; ++k) require(annular::boundary(annular::sigma(k)).is_zero(), "boundary of sigma_k nonzero");
    for (unsigned a = 0; a <= 5; ++a)
        for (unsigned b = 0; b <= 5; ++b)
            for (unsigned c = 0; c <= 5; ++c) {
                ChainVector e(1);
                e.add(annular::sigma(b + c), dpow(a));
                e.add(annular::sigma(a + c), -dpow(b));
                e.add(annular::sigma(a + b), dpow(c));
                require(annular::boundary(annular::sigma2(a, b, c)) == e, "degree-2 closed form fails");
            }
    for (unsigned a = 0; a <= 4; ++a)
        for (unsigned b = 0; b <= 4; ++b)
            for (unsigned c = 0; c <= 4; ++c)
                for (int s = -1; s <= 1; ++s) {
                    const std::optional<bool> S = s < 0 ? std::nullopt : std::optional<bool>(s == 1);
                    const std::optional<bool> L = S && c % 2 ? std::optional<bool>(!*S) : S;
                    // degree 2 at a = 0 and b = 0
                    if (S) {
                        ChainVector e(1);
                        e.add(annular::sigma(b + c, S), dpow(0));
                        e.add(annular::sigma(c, S), -dpow(b));
                        e.add(annular::sigma(b, L), dpow(c));
                        require(identify_degree1_shadings(annular::boundary(annular::sigma2(0, b, c, S))) ==
                                    identify_degree1_shadings(e),
                                "shaded degree-2 rule fails at a=0");
                        ChainVector f(1);
                        f.add(annular::sigma(c, S), dpow(a));
                        f.add(annular::sigma(a + c, S), -dpow(0));
                        f.add(annular::sigma(a, L), dpow(c));
                        require(annular::boundary(annular::sigma2(a, 0, c, S)) == f, "shaded degree-2 rule fails at b=0");
                    }
                    // three separate families
                    const CircleDiagram D(3, {{{1, 1}, a}, {{2, 2}, b}, {{3, 3}, c}}, S);
                    ChainVector e(2);
                    e.add(annular::sigma2(b, c, 0, S), dpow(a));
                    e.add(annular::sigma2(a, c, 0, S), -dpow(b));
                    e.add(annular::sigma2(a, b, 0, S), dpow(c));
                    e.add(annular::sigma2(a, b, c, L), -dpow(0));
                    require(annular::boundary(D) == e, "first degree-3 vector fails");
                    // nested family around q1, q2; shaded only for even c
                    if (S && c % 2) continue;
                    const unsigned l = a;
                    const CircleDiagram D2(3, {{{1, 2}, l}, {{2, 2}, b}, {{3, 3}, c}}, S);
                    ChainVector e2(2);
                    e2.add(annular::sigma2(b + l, c, 0, S), dpow(0));
                    e2.add(annular::sigma2(l, c, 0, S), -dpow(b));
                    e2.add(annular::sigma2(0, b, l, S), dpow(c));
                    e2.add(annular::sigma2(0, b, l + c, S), -dpow(0));
                    require(annular::boundary(D2) == e2, "second degree-3 vector fails");
                }
    return "degree 1 to 3, unshaded and shaded";
}

std::string boundary_squared(const VerifyOptions& o) {
    cap(annular::count_diagrams(3, 6), o.chain_cap);
    cap(annular::count_diagrams(2, 6), o.chain_cap);
    const SparseMat d3 = annular::boundary_matrix(3, 6, 6);
    const SparseMat d2 = annular::boundary_matrix(2, 6, 6);
    require((d2 * d3).is_zero(), "nonzero entries in the composite");
    return std::to_string(d3.cols()) + " degree-3 columns";
}

std::string h1(const VerifyOptions& o, double& seconds) {
    cap(annular::count_diagrams(2, 11), o.chain_cap);
    const auto t0 = std::chrono::steady_clock::now();
    const annular::H1Report r = annular::h1_vanishing_check(10, Mode::unshaded, o.tick);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(r.contained, "some sigma_m is not a boundary");
    for (const auto& c : r.certificates) require(c.verified, "certificate for " + c.target.encode() + " does not verify");
    require(seconds < 60.0, "took longer than 60 s");
    return "K=10, " + std::to_string(r.certificates.size()) + " certificates";
}

std::string h2(const VerifyOptions& o, double& seconds) {
    annular::H2Options opt;
    opt.chain_cap = o.chain_cap;
    opt.tick = o.tick;
    const auto t0 = std::chrono::steady_clock::now();
    const annular::H2Report r = annular::h2_vanishing_check(8, 2, opt);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(r.contained, std::to_string(r.failing_vectors().size()) + " kernel vectors outside the image");
    require(seconds < 600.0, "took longer than 10 min");
    return "N=8, M=2, kernel " + std::to_string(r.kernel_dim) + ", image rank " + std::to_string(r.image_rank);
}

std::string h0(const VerifyOptions& o) {
    cap(annular::count_diagrams(1, 5), o.chain_cap);
    const annular::H0Report r = annular::h0_report(5);
    require(r.homology_dim == 1, "degree-0 homology has dimension " + std::to_string(r.homology_dim));
    return "dim 1";
}

std::string hochschild() {
    const HochschildWitness w = hochschild_h1_witness(6);
    require(w.functional_vanishes_on_boundaries, "functional is nonzero on a boundary");
    require(w.witness_cycle_value == RatFunc(1), "value on the cycle is " + w.witness_cycle_value.to_string());
    return std::to_string(w.boundaries_checked) + " boundaries, value 1";
}

std::string betti_combinators() {
    for (unsigned n = 3; n <= 21; ++n)
        for (unsigned m = 3; m <= 21; ++m) {
            const unsigned nn = n == 21 ? 0 : n, mm = m == 21 ? 0 : m;  // 21 stands for infinity
            const BettiProfile f = fuss_catalan(nn, mm);
            const BettiProfile p = free_product(tlj_profile(nn), tlj_profile(mm));
            for (std::size_t k = 0; k <= 1; ++k) require(f.at(k) == p.at(k), "free product mismatch");
        }
    require(fuss_catalan(3, 3).at(1).is_zero(), "(3,3) is not zero");
    require(fuss_catalan(5, 5).at(1) == BettiValue(BigRat(2, 3)), "(5,5) is not 2/3");
    const std::vector<BettiProfile> ps = {tlj_profile(3), tlj_profile(7), fuss_catalan(4, 9), point_profile()};
    for (const auto& p : ps) {
        const BettiProfile u = tensor_product(p, point_profile());
        for (std::size_t k = 0; k <= 3; ++k) require(std::fabs(u.at(k).evaluate() - p.at(k).evaluate()) <= 1e-12, "unit fails");
        for (const auto& q : ps) {
            const BettiProfile pq = tensor_product(p, q), qp = tensor_product(q, p);
            for (std::size_t k = 0; k <= 3; ++k)
                require(std::fabs(pq.at(k).evaluate() - qp.at(k).evaluate()) <= 1e-12, "commutativity fails");
        }
    }
    return "(5,5) gives " + fuss_catalan(5, 5).at(1).to_string();
}

std::string amenability() {
    auto window = [](double delta) { return [delta](std::size_t W) { return a_infinity_window(W, delta); }; };
    const KestenReport k2 = kesten_check_windows(window(2.0), 1);
    const KestenReport k3 = kesten_check_windows(window(3.0), 1);
    require(k2.amenable, "delta=2 not amenable by norm");
    require(!k3.amenable, "delta=3 amenable by norm");
    const WeightedGraph g2 = fusion_graph(a_infinity_window(402, 2.0), {1});
    const FolnerReport f2 = folner_search(g2, 0.05, 400);
    require(f2.found, "no witness at delta=2");
    const WeightedGraph g3 = fusion_graph(a_infinity_window(202, 3.0), {1});
    const FolnerReport f3 = folner_search(g3, 0.05, 200);
    require(!f3.found && f3.ratio > 0.05, "unexpected witness at delta=3");
    std::vector<FusionRing> finite;
    for (const char* name : {"Z2", "Z3", "S3", "D4"}) finite.push_back(from_group(GroupTable::builtin(name)));
    for (int n = 3; n <= 10; ++n) finite.push_back(tlj_even(n));
    for (const auto& ring : finite) {
        std::vector<std::size_t> gens;
        for (std::size_t i = 1; i < ring.size(); ++i) gens.push_back(i);
        for (std::size_t gen : gens) require(kesten_check(ring, gen).amenable, ring.name() + " not amenable by norm");
        const FolnerReport f = folner_search(fusion_graph(ring, gens), 0.05, ring.size());
        require(f.found, ring.name() + " has no witness");
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "norms %.7f (delta=2) and %.7f (delta=3); best ratio %.3f at delta=3", k2.graph_norm,
                  k3.graph_norm, f3.ratio);
    return buf;
}

std::size_t float_rank(std::vector<std::vector<double>> a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    double scale = 0.0;
    for (const auto& r : a)
        for (double x : r) scale = std::max(scale, std::fabs(x));
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t best = rank;
        for (std::size_t r = rank; r < rows; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[best][c])) best = r;
        if (std::fabs(a[best][c]) <= 1e-9 * scale) continue;
        std::swap(a[best], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const double f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::string exact_oracle() {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 8);
    for (int trial = 0; trial < 100; ++trial) {
        SparseMat m(5, 6);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 6; ++c) {
                const int k = pick(rng);
                if (k == 0 || k == 8) continue;
                m.set(r, c, RatFunc(IntPoly::monomial(k % 2 ? 1 : -1, static_cast<unsigned>((k - 1) / 2))));
            }
        if (trial % 3 == 0)
            for (std::size_t c = 0; c < 6; ++c) m.set(4, c, m.at(0, c) * RatFunc::delta() + m.at(1, c));
        const std::size_t r = rank(m);
        for (double at : {2.3, 3.7, 5.1}) require(float_rank(m.evaluate(at)) == r, "float rank differs");
        for (const auto& v : kernel_basis(m)) {
            std::vector<RatFunc> rv(v.begin(), v.end());
            for (const auto& x : m.apply(rv)) require(x.is_zero(), "kernel vector is not in the kernel");
        }
    }
    return "100 matrices";
}

}  // namespace

VerifyReport verify_all(const VerifyOptions& o) {
    VerifyReport report;
    auto run = [&](int id, const std::string& name, const std::function<std::string(double&)>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            double inner = 0.0;
            r.detail = body(inner);
            r.status = Status::pass;
        } catch (const Failed& f) {
            r.status = Status::fail;
            r.detail = f.detail;
        } catch (const SizeLimit& e) {
            r.status = Status::inconclusive;
            r.detail = std::string("SizeLimit: ") + e.what();
        } catch (const TruncationInconclusive& e) {
            r.status = Status::inconclusive;
            r.detail = std::string("TruncationInconclusive: ") + e.what();
        } catch (const TimeLimitExceeded& e) {
            r.status = Status::inconclusive;
            r.detail = std::string("TimeLimitExceeded: ") + e.what();
        } catch (const InvariantViolation& e) {
            r.status = Status::fail;
            r.detail = std::string("InvariantViolation: ") + e.what();
        } catch (const std::exception& e) {
            r.status = Status::fail;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.results.push_back(r);
    };
    auto plain = [](std::string (*f)()) { return [f](double&) { return f(); }; };
    run(1, "TLJ global index and beta0", plain(tlj_global_index));
    run(2, "pointed beta0 = 1/|G|", plain(pointed_beta0));
    run(3, "tube identities", [&](double&) { return tube_identities(o); });
    run(4, "tube trivial homology", [&](double&) { return tube_homology(o); });
    run(5, "annular golden vectors", plain(annular_golden));
    run(6, "boundary squared at T=6", [&](double&) { return boundary_squared(o); });
    run(7, "H1 vanishing", [&](double& s) { return h1(o, s); });
    run(8, "H2 vanishing", [&](double& s) { return h2(o, s); });
    run(9, "H0 = Q", [&](double&) { return h0(o); });
    run(10, "Hochschild contrast", plain(hochschild));
    run(11, "Betti combinators", plain(betti_combinators));
    run(12, "amenability", plain(amenability));
    run(13, "exact arithmetic oracle", plain(exact_oracle));
    return report;
}

}  // namespace tubecalc
