#include "tubecalc/fusion.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace tubecalc {

FusionRing::FusionRing(std::string name, std::vector<std::string> labels, std::vector<std::size_t> dual, Rule rule,
                       std::vector<double> dims, std::optional<std::vector<IntPoly>> exact_dims, bool truncated)
    : name_(std::move(name)), labels_(std::move(labels)), dual_(std::move(dual)), rule_(std::move(rule)),
      dims_(std::move(dims)), exact_dims_(std::move(exact_dims)), truncated_(truncated) {
    if (labels_.empty()) throw Error("fusion ring needs at least the unit label");
    if (dual_.size() != labels_.size()) throw DimensionMismatch("dual permutation has wrong length");
    if (dims_.size() != labels_.size()) throw DimensionMismatch("dimension list has wrong length");
    if (exact_dims_ && exact_dims_->size() != labels_.size())
        throw DimensionMismatch("exact dimension list has wrong length");
    for (std::size_t d : dual_)
        if (d >= labels_.size()) throw Error("dual label out of range");
}

std::optional<std::size_t> FusionRing::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

Products FusionRing::product(std::size_t a, std::size_t b) const {
    if (a >= size() || b >= size()) throw Error("fusion label out of range");
    return rule_(a, b);
}

unsigned FusionRing::N(std::size_t a, std::size_t b, std::size_t c) const {
    for (const auto& [x, m] : product(a, b).terms)
        if (x == c) return m;
    return 0;
}

double FusionRing::global_index() const {
    double s = 0.0;
    for (double d : dims_) s += d * d;
    return s;
}

std::optional<RatFunc> FusionRing::exact_global_index() const {
    if (!exact_dims_) return std::nullopt;
    IntPoly s;
    for (const auto& d : *exact_dims_) s += d * d;
    return RatFunc(s);
}

namespace {

using Tally = std::map<std::size_t, unsigned long>;

void accumulate(Tally& t, const Products& p, unsigned long weight) {
    for (const auto& [x, m] : p.terms) t[x] += weight * m;
}

}  // namespace

std::vector<AxiomFailure> check_axioms(const FusionRing& ring, double dim_tolerance, std::size_t max_failures) {
    std::vector<AxiomFailure> out;
    const std::size_t n = ring.size();
    auto fail = [&](std::string axiom, std::vector<std::size_t> w, std::string detail = {}) {
        if (out.size() < max_failures) out.push_back({std::move(axiom), std::move(w), std::move(detail)});
    };

    if (ring.dual(0) != 0) fail("dual-unit", {0});
    for (std::size_t a = 0; a < n; ++a)
        if (ring.dual(ring.dual(a)) != a) fail("dual-involution", {a});

    std::vector<std::vector<Products>> table(n, std::vector<Products>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a][b] = ring.product(a, b);
    auto N = [&](std::size_t a, std::size_t b, std::size_t c) -> unsigned {
        for (const auto& [x, m] : table[a][b].terms)
            if (x == c) return m;
        return 0;
    };

    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
            const unsigned want = b == c ? 1 : 0;
            if (!table[0][b].clipped && N(0, b, c) != want) fail("unit", {0, b, c});
            if (!table[b][0].clipped && N(b, 0, c) != want) fail("unit", {b, 0, c});
        }

    for (std::size_t a = 0; a < n; ++a) {
        if (!table[a][ring.dual(a)].clipped && N(a, ring.dual(a), 0) != 1) fail("duality", {a, ring.dual(a), 0});
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b].clipped) continue;
            for (std::size_t c = 0; c < n; ++c) {
                const unsigned x = N(a, b, c);
                const std::size_t da = ring.dual(a), db = ring.dual(b), dc = ring.dual(c);
                if (!table[db][da].clipped && N(db, da, dc) != x) fail("frobenius", {a, b, c});
                if (!table[da][c].clipped && N(da, c, b) != x) fail("frobenius", {a, b, c});
            }
        }
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b].clipped) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (table[b][c].clipped) continue;
                Tally left, right;
                bool clipped = false;
                for (const auto& [x, m] : table[a][b].terms) {
                    clipped = clipped || table[x][c].clipped;
                    accumulate(left, table[x][c], m);
                }
                for (const auto& [y, m] : table[b][c].terms) {
                    clipped = clipped || table[a][y].clipped;
                    accumulate(right, table[a][y], m);
                }
                if (!clipped && left != right) {
                    std::size_t d = 0;
                    for (std::size_t k = 0; k < n; ++k) {
                        auto l = left.count(k) ? left[k] : 0ul;
                        auto r = right.count(k) ? right[k] : 0ul;
                        if (l != r) {
                            d = k;
                            break;
                        }
                    }
                    fail("associativity", {a, b, c, d});
                }
            }
        }

    const auto& dims = ring.dims();
    for (std::size_t a = 0; a < n; ++a) {
        if (!(dims[a] > 0.0)) fail("dimension-positive", {a});
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b].clipped) continue;
            double rhs = 0.0;
            for (const auto& [x, m] : table[a][b].terms) rhs += m * dims[x];
            const double lhs = dims[a] * dims[b];
            if (std::fabs(lhs - rhs) > dim_tolerance * std::max(1.0, std::fabs(lhs)))
                fail("dimension", {a, b}, std::to_string(lhs) + " vs " + std::to_string(rhs));
        }
    }
    if (const auto& ex = ring.exact_dims()) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (table[a][b].clipped) continue;
                IntPoly rhs;
                for (const auto& [x, m] : table[a][b].terms) rhs += (*ex)[x] * BigInt(m);
                if ((*ex)[a] * (*ex)[b] != rhs) fail("exact-dimension", {a, b});
            }
    }
    return out;
}

FusionRing FusionRing::from_table(std::string name, std::vector<std::string> labels, std::vector<std::size_t> dual,
                                  const std::vector<std::array<std::size_t, 4>>& entries,
                                  std::optional<std::vector<double>> dims) {
    const std::size_t n = labels.size();
    if (n == 0) throw ParseError("fusion ring has no labels");
    if (dual.size() != n) throw ParseError("dual list has wrong length");
    for (std::size_t d : dual)
        if (d >= n) throw ParseError("dual label out of range");
    auto table = std::make_shared<std::vector<std::vector<Products>>>(n, std::vector<Products>(n));
    for (const auto& [a, b, c, m] : entries) {
        if (a >= n || b >= n || c >= n) throw ParseError("structure constant index out of range");
        if (m == 0) continue;
        auto& terms = (*table)[a][b].terms;
        if (std::any_of(terms.begin(), terms.end(), [c = c](const auto& t) { return t.first == c; }))
            throw InvariantViolation("duplicate-entry", {a, b, c});
        terms.emplace_back(c, static_cast<unsigned>(m));
    }
    for (auto& row : *table)
        for (auto& p : row) std::sort(p.terms.begin(), p.terms.end());
    FusionRing::Rule rule = [table](std::size_t a, std::size_t b) { return (*table)[a][b]; };

    std::vector<double> d;
    if (dims) {
        d = *dims;
        if (d.size() != n) throw ParseError("dims list has wrong length");
    } else {
        // integer axioms first, so a broken table is reported as such
        const FusionRing bare(name, labels, dual, rule, std::vector<double>(n, 1.0));
        for (const auto& f : check_axioms(bare, 1e-9, 64))
            if (f.axiom.rfind("dimension", 0) != 0) throw InvariantViolation(f.axiom, f.witness, f.detail);
        d = perron_dims(bare);
    }
    FusionRing ring(std::move(name), std::move(labels), std::move(dual), std::move(rule), std::move(d));
    auto failures = check_axioms(ring, 1e-9, 1);
    if (!failures.empty()) throw InvariantViolation(failures[0].axiom, failures[0].witness, failures[0].detail);
    return ring;
}

FusionRing from_group(const GroupTable& group) {
    const std::size_t n = group.order();
    // relabel so that the identity is label 0
    std::vector<std::size_t> order{group.identity()};
    for (std::size_t g = 0; g < n; ++g)
        if (g != group.identity()) order.push_back(g);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::string> labels;
    std::vector<std::size_t> dual;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(group.name(order[i]));
        dual.push_back(pos[group.inverse(order[i])]);
    }
    auto rule = [group, order, pos](std::size_t a, std::size_t b) {
        Products p;
        p.terms.emplace_back(pos[group.mul(order[a], order[b])], 1u);
        return p;
    };
    return FusionRing("Vec_G", std::move(labels), std::move(dual), rule, std::vector<double>(n, 1.0),
                      std::vector<IntPoly>(n, IntPoly(1)));
}

FusionRing tlj_even(int n) {
    if (n < 2) throw Error("tlj_even needs n >= 2");
    const int top = (n - 1) / 2;  // labels f_0 .. f_{2 top}
    std::vector<std::string> labels;
    std::vector<double> dims;
    const double base = std::sin(std::numbers::pi / (n + 1));
    for (int k = 0; k <= top; ++k) {
        labels.push_back("f" + std::to_string(2 * k));
        dims.push_back(std::sin((2 * k + 1) * std::numbers::pi / (n + 1)) / base);
    }
    std::vector<std::size_t> dual(labels.size());
    for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = i;
    auto rule = [n](std::size_t a, std::size_t b) {
        const int i = static_cast<int>(a), j = static_cast<int>(b);
        Products p;
        for (int k = std::abs(i - j); k <= std::min(i + j, (n - 1) - i - j); ++k)
            p.terms.emplace_back(static_cast<std::size_t>(k), 1u);
        return p;
    };
    return FusionRing("TLJ_even(" + std::to_string(n) + ")", std::move(labels), std::move(dual), rule, std::move(dims));
}

IntPoly chebyshev_dim(unsigned k) {
    IntPoly prev(1), cur = IntPoly::delta();
    if (k == 0) return prev;
    for (unsigned i = 1; i < k; ++i) {
        IntPoly next = cur.shifted(1) - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

FusionRing a_infinity_window(std::size_t W, double delta, bool with_exact_dims) {
    if (W == 0) throw Error("window must contain the unit");
    if (delta < 2.0) throw Error("A_infinity windows need delta >= 2");
    std::vector<std::string> labels;
    std::vector<double> dims;
    double prev = 0.0, cur = 1.0;
    for (std::size_t k = 0; k < W; ++k) {
        labels.push_back("f" + std::to_string(k));
        dims.push_back(cur);
        const double next = delta * cur - prev;
        prev = cur;
        cur = next;
    }
    std::optional<std::vector<IntPoly>> exact;
    if (with_exact_dims) {
        exact.emplace();
        for (std::size_t k = 0; k < W; ++k) exact->push_back(chebyshev_dim(static_cast<unsigned>(k)));
    }
    std::vector<std::size_t> dual(W);
    for (std::size_t i = 0; i < W; ++i) dual[i] = i;
    auto rule = [W](std::size_t a, std::size_t b) {
        Products p;
        const std::size_t lo = a > b ? a - b : b - a;
        for (std::size_t k = lo; k <= a + b; k += 2) {
            if (k >= W) {
                p.clipped = true;
                break;
            }
            p.terms.emplace_back(k, 1u);
        }
        return p;
    };
    return FusionRing("A_inf window " + std::to_string(W), std::move(labels), std::move(dual), rule, std::move(dims),
                      std::move(exact), true);
}

std::vector<double> perron_dims(const FusionRing& ring) {
    if (ring.truncated()) throw Error("perron_dims needs a finite ring");
    const std::size_t n = ring.size();
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (const auto& [c, m] : ring.product(a, b).terms) A[b][c] += m;

    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
        const std::size_t b = q.front();
        q.pop();
        for (std::size_t c = 0; c < n; ++c)
            if ((A[b][c] > 0 || A[c][b] > 0) && !seen[c]) {
                seen[c] = true;
                q.push(c);
            }
    }
    for (std::size_t c = 0; c < n; ++c)
        if (!seen[c]) throw NotConnected("label " + ring.label(c) + " is not reachable from the unit");

    // power iteration on A + I (the shift removes periodicity)
    std::vector<double> v(n, 1.0), w(n);
    for (int iter = 0; iter < 200000; ++iter) {
        for (std::size_t b = 0; b < n; ++b) {
            double s = v[b];
            for (std::size_t c = 0; c < n; ++c) s += A[b][c] * v[c];
            w[b] = s;
        }
        const double lambda = w[0] / v[0];
        double res = 0.0, scale = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            res = std::max(res, std::fabs(w[b] - lambda * v[b]));
            scale = std::max(scale, std::fabs(lambda * v[b]));
        }
        for (std::size_t b = 0; b < n; ++b) v[b] = w[b] / w[0];
        if (res <= 1e-13 * scale) return v;
    }
    throw Error("perron_dims: power iteration did not converge");
}

BettiZeroReport beta0(const FusionRing& ring) {
    if (ring.truncated()) throw TruncationInconclusive("beta0 of a truncated window is undefined");
    BettiZeroReport r;
    r.global_index = ring.global_index();
    r.beta0 = 1.0 / r.global_index;
    r.exact_global_index = ring.exact_global_index();
    if (r.exact_global_index) r.exact_beta0 = RatFunc(1) / *r.exact_global_index;
    return r;
}

FusionRing product(const FusionRing& r1, const FusionRing& r2) {
    const std::size_t n2 = r2.size();
    std::vector<std::string> labels;
    std::vector<std::size_t> dual;
    std::vector<double> dims;
    std::optional<std::vector<IntPoly>> exact;
    if (r1.exact_dims() && r2.exact_dims()) exact.emplace();
    for (std::size_t a = 0; a < r1.size(); ++a)
        for (std::size_t b = 0; b < n2; ++b) {
            labels.push_back("(" + r1.label(a) + "," + r2.label(b) + ")");
            dual.push_back(r1.dual(a) * n2 + r2.dual(b));
            dims.push_back(r1.dims()[a] * r2.dims()[b]);
            if (exact) exact->push_back((*r1.exact_dims())[a] * (*r2.exact_dims())[b]);
        }
    auto rule = [r1, r2, n2](std::size_t x, std::size_t y) {
        const Products p = r1.product(x / n2, y / n2);
        const Products q = r2.product(x % n2, y % n2);
        Products out;
        out.clipped = p.clipped || q.clipped;
        for (const auto& [a, m] : p.terms)
            for (const auto& [b, k] : q.terms) out.terms.emplace_back(a * n2 + b, m * k);
        std::sort(out.terms.begin(), out.terms.end());
        return out;
    };
    return FusionRing(r1.name() + " x " + r2.name(), std::move(labels), std::move(dual), rule, std::move(dims),
                      std::move(exact), r1.truncated() || r2.truncated());
}

TPoly hochschild_boundary(unsigned i, unsigned j) {
    const RatFunc d = RatFunc::delta();
    TPoly out;
    auto add = [&](unsigned k, const RatFunc& c) {
        RatFunc& slot = out[k];
        slot += c;
        if (slot.is_zero()) out.erase(k);
    };
    add(j, pow(d, i));
    add(i + j, RatFunc(-1));
    add(i, pow(d, j));
    return out;
}

RatFunc derivative_functional(const TPoly& q) {
    const RatFunc d = RatFunc::delta();
    RatFunc s;
    for (const auto& [k, c] : q)
        if (k > 0) s += c * RatFunc(static_cast<long>(k)) * pow(d, k - 1);
    return s;
}

HochschildWitness hochschild_h1_witness(unsigned max_degree) {
    if (max_degree < 2) throw Error("hochschild witness needs max_degree >= 2");
    HochschildWitness w;
    w.max_degree = max_degree;
    for (unsigned i = 0; i <= max_degree; ++i)
        for (unsigned j = 0; i + j <= max_degree; ++j) {
            ++w.boundaries_checked;
            if (!derivative_functional(hochschild_boundary(i, j)).is_zero()) w.nonvanishing.emplace_back(i, j);
        }
    w.functional_vanishes_on_boundaries = w.nonvanishing.empty();
    w.witness_cycle_value = derivative_functional(TPoly{{1u, RatFunc(1)}});
    return w;
}

}  // namespace tubecalc
