#include "tubecalc/tube.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>

namespace tubecalc {

void add_to(Element& x, std::size_t basis, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = x.emplace(basis, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
}

void add_to(Element& x, const Element& y, const RatFunc& scale) {
    if (scale.is_zero()) return;
    for (const auto& [b, c] : y) add_to(x, b, scale.is_one() ? c : c * scale);
}

TubeAlgebra::TubeAlgebra(std::vector<std::string> corners, std::vector<TubeBasis> basis,
                         std::map<std::pair<std::size_t, std::size_t>, Element> mult, std::vector<Element> star,
                         std::vector<RatFunc> trace, std::vector<RatFunc> counit, std::vector<std::size_t> units)
    : corners_(std::move(corners)), basis_(std::move(basis)), star_(std::move(star)), trace_(std::move(trace)),
      counit_(std::move(counit)), units_(std::move(units)) {
    const std::size_t n = basis_.size();
    if (corners_.empty()) throw Error("tube algebra needs at least one corner");
    if (star_.size() != n || trace_.size() != n || counit_.size() != n)
        throw DimensionMismatch("star, trace and counit must cover every basis element");
    if (units_.size() != corners_.size()) throw DimensionMismatch("one unit per corner required");
    for (const auto& b : basis_)
        if (b.source >= corners_.size() || b.target >= corners_.size()) throw Error("basis corner out of range");
    for (std::size_t i = 0; i < units_.size(); ++i) {
        const std::size_t u = units_[i];
        if (u >= n || basis_[u].source != i || basis_[u].target != i)
            throw InvariantViolation("units", {i, u}, "unit of a corner must lie in that corner");
    }
    auto check_element = [n](const Element& x) {
        for (const auto& [b, c] : x)
            if (b >= n) throw Error("basis index out of range");
    };
    for (auto& [key, x] : mult) {
        if (key.first >= n || key.second >= n) throw Error("basis index out of range");
        check_element(x);
        for (auto it = x.begin(); it != x.end();) it = it->second.is_zero() ? x.erase(it) : std::next(it);
        if (!x.empty()) mult_.emplace(key, std::move(x));
    }
    for (const auto& x : star_) check_element(x);
}

const Element& TubeAlgebra::multiply(std::size_t a, std::size_t b) const {
    static const Element zero;
    auto it = mult_.find({a, b});
    return it == mult_.end() ? zero : it->second;
}

Element TubeAlgebra::multiply(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) add_to(out, multiply(a, b), ca * cb);
    return out;
}

Element TubeAlgebra::star(const Element& x) const {
    Element out;
    for (const auto& [a, c] : x) add_to(out, star(a), c);
    return out;
}

RatFunc TubeAlgebra::trace(const Element& x) const {
    RatFunc s;
    for (const auto& [a, c] : x) s += c * trace_[a];
    return s;
}

RatFunc TubeAlgebra::counit(const Element& x) const {
    RatFunc s;
    for (const auto& [a, c] : x) s += c * counit_[a];
    return s;
}

std::vector<std::size_t> TubeAlgebra::block(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < basis_.size(); ++a)
        if (basis_[a].source == i && basis_[a].target == j) out.push_back(a);
    return out;
}

TubeAlgebra tube_from_group(const GroupTable& group) {
    const std::size_t n = group.order();
    std::vector<std::size_t> order{group.identity()};
    for (std::size_t g = 0; g < n; ++g)
        if (g != group.identity()) order.push_back(g);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    // all group operations below are on relabelled indices (identity = 0)
    auto mul = [&](std::size_t a, std::size_t b) { return pos[group.mul(order[a], order[b])]; };
    auto inv = [&](std::size_t a) { return pos[group.inverse(order[a])]; };
    auto conj = [&](std::size_t x, std::size_t a) { return mul(mul(inv(a), x), a); };
    auto idx = [n](std::size_t i, std::size_t alpha) { return i * n + alpha; };

    std::vector<std::string> corners;
    for (std::size_t i = 0; i < n; ++i) corners.push_back(group.name(order[i]));
    std::vector<TubeBasis> basis;
    std::vector<Element> star;
    std::vector<RatFunc> trace, counit;
    std::vector<std::size_t> units;
    std::map<std::pair<std::size_t, std::size_t>, Element> mult;
    for (std::size_t i = 0; i < n; ++i) {
        units.push_back(idx(i, 0));
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
            basis.push_back({i, conj(i, alpha), "(" + corners[i] + "," + corners[alpha] + ")", corners[alpha]});
            star.push_back(Element{{idx(conj(i, alpha), inv(alpha)), RatFunc(1)}});
            trace.emplace_back(alpha == 0 ? 1 : 0);
            counit.emplace_back(i == 0 ? 1 : 0);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
            const std::size_t j = conj(i, alpha);
            for (std::size_t beta = 0; beta < n; ++beta)
                mult[{idx(i, alpha), idx(j, beta)}] = Element{{idx(i, mul(alpha, beta)), RatFunc(1)}};
        }
    return TubeAlgebra(std::move(corners), std::move(basis), std::move(mult), std::move(star), std::move(trace),
                       std::move(counit), std::move(units));
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

const IdentityCheck* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed()) return &c;
    return nullptr;
}

const IdentityCheck& VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw Error("no identity check named " + name);
}

bool is_psd(std::vector<std::vector<BigRat>> m) {
    const std::size_t n = m.size();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            if (m[i][i] < 0) return false;
            if (m[i][i] > 0 && p == n) p = i;
        }
        if (p == n) {
            // every remaining diagonal entry is zero, so the rest must vanish
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && m[i][j] != 0) return false;
            return true;
        }
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || m[i][p] == 0) continue;
            const BigRat f = m[i][p] / m[p][p];
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) m[i][j] -= f * m[p][j];
        }
    }
    return true;
}

namespace {

std::string show(const Element& x) {
    std::string s;
    for (const auto& [b, c] : x) s += (s.empty() ? "" : " + ") + c.to_string() + "*b" + std::to_string(b);
    return s.empty() ? "0" : s;
}

void record(IdentityCheck& check, std::vector<std::size_t> witness, std::string detail = {}) {
    if (check.failures++ == 0) {
        check.witness = std::move(witness);
        check.detail = std::move(detail);
    }
}

}  // namespace

VerificationReport verify_identities(const TubeAlgebra& A) {
    VerificationReport rep;
    const std::size_t n = A.dim();
    const auto& B = A.basis();

    IdentityCheck grading;
    grading.name = "grading";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            ++grading.checked;
            const Element& ab = A.multiply(a, b);
            if (ab.empty()) continue;
            if (B[a].target != B[b].source) {
                record(grading, {a, b}, "product of non-composable elements is nonzero");
                continue;
            }
            for (const auto& [c, coeff] : ab)
                if (B[c].source != B[a].source || B[c].target != B[b].target) record(grading, {a, b, c});
        }
    for (std::size_t a = 0; a < n; ++a)
        for (const auto& [c, coeff] : A.star(a))
            if (B[c].source != B[a].target || B[c].target != B[a].source) record(grading, {a, c}, "star");
    rep.checks.push_back(grading);

    IdentityCheck units;
    units.name = "units";
    for (std::size_t i = 0; i < A.corners().size(); ++i) {
        const std::size_t u = A.unit(i);
        const Element eu{{u, RatFunc(1)}};
        ++units.checked;
        if (A.multiply(u, u) != eu || A.star(u) != eu) record(units, {i, u}, "unit is not a self-adjoint idempotent");
        for (std::size_t a = 0; a < n; ++a) {
            const Element ea{{a, RatFunc(1)}};
            if (B[a].source == i && A.multiply(u, a) != ea) record(units, {i, a}, "left unit");
            if (B[a].target == i && A.multiply(a, u) != ea) record(units, {i, a}, "right unit");
        }
    }
    rep.checks.push_back(units);

    IdentityCheck assoc;
    assoc.name = "associativity";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (B[a].target != B[b].source) continue;
            const Element& ab = A.multiply(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                if (B[b].target != B[c].source) continue;
                ++assoc.checked;
                Element left, right;
                for (const auto& [x, cx] : ab) add_to(left, A.multiply(x, c), cx);
                for (const auto& [y, cy] : A.multiply(b, c)) add_to(right, A.multiply(a, y), cy);
                if (left != right) record(assoc, {a, b, c}, show(left) + " vs " + show(right));
            }
        }
    rep.checks.push_back(assoc);

    IdentityCheck invol;
    invol.name = "star-involution";
    for (std::size_t a = 0; a < n; ++a) {
        ++invol.checked;
        if (A.star(A.star(a)) != Element{{a, RatFunc(1)}}) record(invol, {a});
    }
    rep.checks.push_back(invol);

    IdentityCheck anti;
    anti.name = "star-anti-multiplicativity";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            ++anti.checked;
            const Element lhs = A.star(A.multiply(a, b));
            const Element rhs = A.multiply(A.star(b), A.star(a));
            if (lhs != rhs) record(anti, {a, b}, show(lhs) + " vs " + show(rhs));
        }
    rep.checks.push_back(anti);

    IdentityCheck tsym;
    tsym.name = "trace-symmetry";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            ++tsym.checked;
            if (A.trace(A.multiply(a, b)) != A.trace(A.multiply(b, a))) record(tsym, {a, b});
        }
    rep.checks.push_back(tsym);

    IdentityCheck gram;
    gram.name = "gram-psd";
    for (std::size_t i = 0; i < A.corners().size() && gram.applicable; ++i)
        for (std::size_t j = 0; j < A.corners().size() && gram.applicable; ++j) {
            const auto blk = A.block(i, j);
            if (blk.empty()) continue;
            ++gram.checked;
            std::vector<std::vector<BigRat>> G(blk.size(), std::vector<BigRat>(blk.size()));
            for (std::size_t r = 0; r < blk.size(); ++r)
                for (std::size_t c = 0; c < blk.size(); ++c) {
                    const RatFunc v = A.trace(A.multiply(A.star(Element{{blk[r], RatFunc(1)}}), Element{{blk[c], RatFunc(1)}}));
                    auto q = v.as_rational();
                    if (!q) {
                        gram.applicable = false;
                        gram.detail = "Gram entries depend on d";
                        break;
                    }
                    G[r][c] = *q;
                }
            if (!gram.applicable) break;
            bool symmetric = true;
            for (std::size_t r = 0; r < blk.size(); ++r)
                for (std::size_t c = 0; c < r; ++c) symmetric = symmetric && G[r][c] == G[c][r];
            if (!symmetric) record(gram, {i, j}, "Gram matrix is not symmetric");
            else if (!is_psd(G)) record(gram, {i, j}, "Gram matrix is not positive semidefinite");
        }
    rep.checks.push_back(gram);

    IdentityCheck cmult;
    cmult.name = "counit-multiplicativity";
    const auto corner = A.block(0, 0);
    for (std::size_t a : corner)
        for (std::size_t b : corner) {
            ++cmult.checked;
            if (A.counit(A.multiply(a, b)) != A.counit(a) * A.counit(b)) record(cmult, {a, b});
        }
    rep.checks.push_back(cmult);

    // d(j) W W^# = d(alpha) p_i with all dimensions 1
    IdentityCheck lemma;
    lemma.name = "lemma-sum";
    for (std::size_t i = 0; i < A.corners().size(); ++i)
        if (!A.trace(A.unit(i)).is_one()) lemma.applicable = false;
    if (lemma.applicable) {
        for (std::size_t a = 0; a < n; ++a) {
            ++lemma.checked;
            const Element w{{a, RatFunc(1)}};
            if (A.multiply(w, A.star(w)) != Element{{A.unit(B[a].source), RatFunc(1)}}) record(lemma, {a});
        }
    } else {
        lemma.detail = "only checked for pointed data (all corner traces 1)";
    }
    rep.checks.push_back(lemma);
    return rep;
}

CornerMatch fusion_corner(const TubeAlgebra& A, const FusionRing& ring) {
    CornerMatch m;
    const auto corner = A.block(0, 0);
    m.corner_dim = corner.size();
    if (corner.size() != ring.size()) {
        m.detail = "unit corner has dimension " + std::to_string(corner.size()) + ", ring has " +
                   std::to_string(ring.size()) + " labels";
        return m;
    }
    std::map<std::size_t, std::size_t> to_label, from_label;
    for (std::size_t a : corner) {
        auto l = ring.index_of(A.basis(a).label);
        if (!l || from_label.count(*l)) {
            m.detail = "basis element " + A.basis(a).name + " has no unused ring label";
            m.mismatch = {a};
            return m;
        }
        to_label[a] = *l;
        from_label[*l] = a;
    }
    for (std::size_t a : corner)
        for (std::size_t b : corner) {
            Element want;
            for (const auto& [c, mult] : ring.product(to_label[a], to_label[b]).terms)
                add_to(want, from_label[c], RatFunc(static_cast<long>(mult)));
            const Element& got = A.multiply(a, b);
            if (got != want) {
                std::size_t c = corner.front();
                for (std::size_t x : corner) {
                    auto gi = got.find(x);
                    auto wi = want.find(x);
                    const RatFunc gv = gi == got.end() ? RatFunc() : gi->second;
                    const RatFunc wv = wi == want.end() ? RatFunc() : wi->second;
                    if (gv != wv) {
                        c = x;
                        break;
                    }
                }
                m.mismatch = {a, b, c};
                m.detail = A.basis(a).name + " * " + A.basis(b).name + " disagrees with the ring at " + A.basis(c).name;
                return m;
            }
        }
    m.matched = true;
    for (const auto& [a, l] : to_label) m.bijection.emplace_back(a, l);
    return m;
}

std::size_t center_dim(const TubeAlgebra& A) {
    const std::size_t n = A.dim();
    for (const auto& [key, x] : A.mult_table())
        for (const auto& [c, v] : x)
            if (!v.is_constant()) throw Error("center_dim needs constant structure constants");
    // unknown z = Σ x_c c ; equations [c a - a c]_d = 0
    SparseMat eq(n * n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a) {
            for (const auto& [d, v] : A.multiply(c, a)) eq.add(a * n + d, c, v);
            for (const auto& [d, v] : A.multiply(a, c)) eq.add(a * n + d, c, -v);
        }
    return n - rank(eq);
}

std::vector<std::vector<std::size_t>> bar_chains(const TubeAlgebra& A, int n, std::size_t cap) {
    if (n < 0) throw Error("negative bar degree");
    std::vector<std::vector<std::size_t>> out;
    if (n == 0) return {{}};
    std::vector<std::vector<std::size_t>> by_source(A.corners().size());
    for (std::size_t a = 0; a < A.dim(); ++a) by_source[A.basis(a).source].push_back(a);
    std::vector<std::size_t> chain;
    auto rec = [&](auto&& self, std::size_t corner) -> void {
        if (static_cast<int>(chain.size()) == n) {
            if (corner == 0) {
                if (out.size() >= cap) throw SizeLimit(out.size() + 1, cap);
                out.push_back(chain);
            }
            return;
        }
        for (std::size_t a : by_source[corner]) {
            chain.push_back(a);
            self(self, A.basis(a).target);
            chain.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

SparseMat bar_boundary(const TubeAlgebra& A, int n, std::size_t cap) {
    if (n < 1) throw Error("bar boundary needs degree >= 1");
    const auto dom = bar_chains(A, n, cap);
    const auto cod = bar_chains(A, n - 1, cap);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < cod.size(); ++i) index.emplace(cod[i], i);
    auto row_of = [&](const std::vector<std::size_t>& ch) {
        auto it = index.find(ch);
        if (it == index.end()) throw InvariantViolation("counit-support", ch, "boundary leaves the bar complex");
        return it->second;
    };
    SparseMat m(cod.size(), dom.size());
    for (std::size_t col = 0; col < dom.size(); ++col) {
        const auto& ch = dom[col];
        const RatFunc first = A.counit(ch.front());
        if (!first.is_zero()) m.add(row_of({ch.begin() + 1, ch.end()}), col, first);
        for (int k = 1; k < n; ++k) {
            const RatFunc sign(k % 2 ? -1 : 1);
            for (const auto& [c, v] : A.multiply(ch[k - 1], ch[k])) {
                std::vector<std::size_t> merged(ch.begin(), ch.begin() + (k - 1));
                merged.push_back(c);
                merged.insert(merged.end(), ch.begin() + (k + 1), ch.end());
                m.add(row_of(merged), col, sign * v);
            }
        }
        const RatFunc last = A.counit(ch.back());
        if (!last.is_zero()) m.add(row_of({ch.begin(), ch.end() - 1}), col, RatFunc(n % 2 ? -1 : 1) * last);
    }
    return m;
}

HomologyReport trivial_homology(const TubeAlgebra& A, int n_max, std::size_t chain_cap, std::function<void()> tick) {
    if (n_max < 0 || n_max > 3) throw UnsupportedDegree(n_max);
    HomologyReport r;
    r.degrees_computed = n_max;
    for (int k = 0; k <= n_max + 1; ++k) r.chain_dims.push_back(bar_chains(A, k, chain_cap).size());
    r.ranks.push_back(0);
    std::vector<SparseMat> d(1);
    for (int k = 1; k <= n_max + 1; ++k) {
        d.push_back(bar_boundary(A, k, chain_cap));
        r.ranks.push_back(rank(d.back(), tick));
    }
    for (int k = 2; k <= n_max + 1; ++k)
        if (!(d[k - 1] * d[k]).is_zero()) r.boundary_squares_zero = false;
    for (int k = 0; k <= n_max; ++k)
        r.dims.push_back(static_cast<long>(r.chain_dims[k]) - static_cast<long>(r.ranks[k]) -
                         static_cast<long>(r.ranks[k + 1]));
    return r;
}

}  // namespace tubecalc
