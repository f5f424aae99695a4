#include "tubecalc/linalg.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace tubecalc {

std::size_t SparseMat::nonzeros() const {
    std::size_t n = 0;
    for (const auto& col : columns_) n += col.size();
    return n;
}

void SparseMat::set(std::size_t r, std::size_t c, RatFunc value) {
    if (r >= rows_ || c >= columns_.size()) throw DimensionMismatch("matrix index out of range");
    if (value.is_zero())
        columns_[c].erase(r);
    else
        columns_[c][r] = std::move(value);
}

void SparseMat::add(std::size_t r, std::size_t c, const RatFunc& value) {
    if (r >= rows_ || c >= columns_.size()) throw DimensionMismatch("matrix index out of range");
    if (value.is_zero()) return;
    auto& col = columns_[c];
    auto it = col.find(r);
    if (it == col.end()) {
        col.emplace(r, value);
        return;
    }
    it->second += value;
    if (it->second.is_zero()) col.erase(it);
}

RatFunc SparseMat::at(std::size_t r, std::size_t c) const {
    const auto& col = columns_.at(c);
    auto it = col.find(r);
    return it == col.end() ? RatFunc() : it->second;
}

SparseMat SparseMat::transpose() const {
    SparseMat t(cols(), rows());
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& [r, v] : columns_[c]) t.columns_[r].emplace(c, v);
    return t;
}

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    SparseMat out(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (const auto& [k, bv] : b.column(c))
            for (const auto& [r, av] : a.column(k)) out.add(r, c, av * bv);
    }
    return out;
}

std::vector<RatFunc> SparseMat::apply(const std::vector<RatFunc>& v) const {
    if (v.size() != cols()) throw DimensionMismatch("vector length does not match matrix columns");
    std::vector<RatFunc> out(rows_);
    for (std::size_t c = 0; c < cols(); ++c) {
        if (v[c].is_zero()) continue;
        for (const auto& [r, x] : columns_[c]) out[r] += x * v[c];
    }
    return out;
}

std::vector<std::vector<double>> SparseMat::evaluate(double at) const {
    std::vector<std::vector<double>> out(rows_, std::vector<double>(cols(), 0.0));
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& [r, x] : columns_[c]) out[r][c] = x.evaluate(at);
    return out;
}

namespace {

const IntPoly* find_entry(const PolyRow& row, std::size_t index) {
    auto it = std::lower_bound(row.begin(), row.end(), index,
                               [](const auto& e, std::size_t i) { return e.first < i; });
    return it != row.end() && it->first == index ? &it->second : nullptr;
}

// row = scale * v with row primitive over Z[d]
std::pair<PolyRow, RatFunc> scaled_poly_row(const std::map<std::size_t, RatFunc>& v) {
    IntPoly lcm(1);
    for (const auto& [i, x] : v) {
        if (x.den().is_one()) continue;
        IntPoly g = IntPoly::gcd(lcm, x.den());
        lcm = lcm.divexact(g) * x.den();
    }
    PolyRow row;
    row.reserve(v.size());
    IntPoly content;
    for (const auto& [i, x] : v) {
        if (x.is_zero()) continue;
        IntPoly entry = x.den().is_one() ? x.num() * lcm : x.num() * lcm.divexact(x.den());
        if (!content.is_one()) content = IntPoly::gcd(content, entry);
        row.emplace_back(i, std::move(entry));
    }
    RatFunc scale(lcm);
    if (!row.empty() && !content.is_one()) {
        for (auto& [i, e] : row) e = e.divexact(content);
        scale /= RatFunc(content);
    }
    return {std::move(row), scale};
}

std::map<std::size_t, RatFunc> dense_to_map(const std::vector<RatFunc>& v) {
    std::map<std::size_t, RatFunc> m;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) m.emplace(i, v[i]);
    return m;
}

constexpr std::size_t kTargetTag = std::numeric_limits<std::size_t>::max();

}  // namespace

PolyRow to_poly_row(const std::map<std::size_t, RatFunc>& v) { return scaled_poly_row(v).first; }

PolyRow to_poly_row(const std::vector<RatFunc>& v) { return to_poly_row(dense_to_map(v)); }

void EchelonSpan::eliminate(Vec& target, const Vec& by, std::size_t pivot, bool track) {
    const IntPoly* a = find_entry(by.row, pivot);
    const IntPoly* b = find_entry(target.row, pivot);
    if (a == nullptr || b == nullptr) return;
    IntPoly g = IntPoly::gcd(*a, *b);
    const IntPoly alpha = a->divexact(g);
    const IntPoly beta = b->divexact(g);

    PolyRow out;
    out.reserve(target.row.size() + by.row.size());
    auto it = target.row.begin();
    auto jt = by.row.begin();
    while (it != target.row.end() || jt != by.row.end()) {
        if (jt == by.row.end() || (it != target.row.end() && it->first < jt->first)) {
            out.emplace_back(it->first, alpha.is_one() ? it->second : it->second * alpha);
            ++it;
        } else if (it == target.row.end() || jt->first < it->first) {
            out.emplace_back(jt->first, -(jt->second * beta));
            ++jt;
        } else {
            IntPoly x = it->second * alpha - jt->second * beta;
            if (!x.is_zero()) out.emplace_back(it->first, std::move(x));
            ++it;
            ++jt;
        }
    }
    target.row = std::move(out);

    if (track) {
        if (!alpha.is_one()) {
            const RatFunc ra(alpha);
            for (auto& [t, c] : target.combo) c *= ra;
        }
        const RatFunc rb(beta);
        for (const auto& [t, c] : by.combo) {
            auto pos = target.combo.find(t);
            RatFunc delta = c * rb;
            if (pos == target.combo.end()) {
                target.combo.emplace(t, -delta);
            } else {
                pos->second -= delta;
                if (pos->second.is_zero()) target.combo.erase(pos);
            }
        }
    }
}

void EchelonSpan::strip_content(Vec& w, bool track) {
    if (w.row.empty()) return;
    IntPoly g;
    for (const auto& [i, e] : w.row) {
        g = IntPoly::gcd(g, e);
        if (g.is_one()) break;
    }
    if (w.row.front().second.sign() < 0) g = -g;
    if (g.is_one()) return;
    for (auto& [i, e] : w.row) e = e.divexact(g);
    if (track) {
        const RatFunc rg(g);
        for (auto& [t, c] : w.combo) c /= rg;
    }
}

void EchelonSpan::reduce(Vec& w, bool track) const {
    std::vector<std::size_t> hits;
    for (const auto& [i, e] : w.row) {
        if (i >= dim_) throw DimensionMismatch("vector index out of range");
        if (pivot_owner_[i] >= 0) hits.push_back(i);
    }
    for (std::size_t p : hits) {
        eliminate(w, basis_[static_cast<std::size_t>(pivot_owner_[p])], p, track);
        if (tick_) tick_();
    }
    strip_content(w, track);
}

EchelonSpan::Insertion EchelonSpan::insert(PolyRow v, std::size_t tag) {
    Vec w{std::move(v), {}};
    if (track_) w.combo.emplace(tag, RatFunc(1));
    reduce(w, track_);
    Insertion result;
    if (w.row.empty()) {
        result.relation = std::move(w.combo);
        return result;
    }
    // smallest (degree, index) pivot
    auto best = std::min_element(w.row.begin(), w.row.end(), [](const auto& x, const auto& y) {
        return std::make_pair(x.second.degree(), x.first) < std::make_pair(y.second.degree(), y.first);
    });
    const std::size_t pivot = best->first;
    for (auto& b : basis_) {
        if (find_entry(b.row, pivot) == nullptr) continue;
        eliminate(b, w, pivot, track_);
        strip_content(b, track_);
        if (tick_) tick_();
    }
    pivot_owner_[pivot] = static_cast<long>(basis_.size());
    pivots_.push_back(pivot);
    basis_.push_back(std::move(w));
    result.independent = true;
    return result;
}

bool EchelonSpan::contains(PolyRow v) const {
    Vec w{std::move(v), {}};
    reduce(w, false);
    return w.row.empty();
}

std::optional<Combination> EchelonSpan::express(PolyRow v) const {
    if (!track_) throw Error("express() requires a tracking EchelonSpan");
    Vec w{std::move(v), {}};
    w.combo.emplace(kTargetTag, RatFunc(1));
    reduce(w, true);
    if (!w.row.empty()) return std::nullopt;
    auto self = w.combo.find(kTargetTag);
    if (self == w.combo.end()) throw Error("internal: lost target coefficient");
    const RatFunc s = self->second;
    Combination out;
    for (const auto& [t, c] : w.combo) {
        if (t == kTargetTag) continue;
        out.emplace(t, -c / s);
    }
    return out;
}

std::size_t rank(const SparseMat& m, const std::function<void()>& tick) {
    const bool by_columns = m.rows() <= m.cols();
    const SparseMat src = by_columns ? m : m.transpose();
    EchelonSpan span(src.rows());
    if (tick) span.set_tick(tick);
    for (std::size_t c = 0; c < src.cols(); ++c) {
        if (src.column(c).empty()) continue;
        span.insert(to_poly_row(src.column(c)), c);
        if (span.rank() == src.rows()) break;
    }
    return span.rank();
}

std::vector<std::vector<IntPoly>> kernel_basis(const SparseMat& m) {
    EchelonSpan span(m.rows(), true);
    std::vector<RatFunc> scales(m.cols(), RatFunc(1));
    std::vector<std::vector<IntPoly>> out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto [row, scale] = scaled_poly_row(m.column(c));
        scales[c] = scale;
        auto ins = span.insert(std::move(row), c);
        if (ins.independent) continue;
        std::map<std::size_t, RatFunc> vec;
        for (const auto& [t, coeff] : ins.relation) vec.emplace(t, coeff * scales[t]);
        PolyRow prim = to_poly_row(vec);
        std::vector<IntPoly> dense(m.cols());
        for (auto& [i, e] : prim) dense[i] = std::move(e);
        if (dense[c].sign() < 0)
            for (auto& e : dense) e = -e;
        out.push_back(std::move(dense));
    }
    return out;
}

ColumnSpan::ColumnSpan(const SparseMat& columns, bool track, std::function<void()> tick)
    : span_(columns.rows(), track), scales_(columns.cols(), RatFunc(1)), next_tag_(columns.cols()) {
    if (tick) span_.set_tick(std::move(tick));
    for (std::size_t c = 0; c < columns.cols(); ++c) {
        if (columns.column(c).empty()) continue;
        if (!track && span_.rank() == span_.dim()) break;
        auto [row, scale] = scaled_poly_row(columns.column(c));
        scales_[c] = scale;
        span_.insert(std::move(row), c);
    }
}

bool ColumnSpan::contains(const std::vector<RatFunc>& v) const {
    if (v.size() != span_.dim()) throw DimensionMismatch("vector length does not match column length");
    return span_.contains(to_poly_row(v));
}

std::optional<Combination> ColumnSpan::express(const std::vector<RatFunc>& v) const {
    if (v.size() != span_.dim()) throw DimensionMismatch("vector length does not match column length");
    auto [target, tscale] = scaled_poly_row(dense_to_map(v));
    if (target.empty()) return Combination{};
    auto cert = span_.express(std::move(target));
    if (!cert) return std::nullopt;
    Combination out;
    for (const auto& [t, coeff] : *cert) {
        RatFunc x = coeff * scales_.at(t) / tscale;
        if (!x.is_zero()) out.emplace(t, std::move(x));
    }
    return out;
}

bool ColumnSpan::extend(const std::vector<RatFunc>& v) {
    if (v.size() != span_.dim()) throw DimensionMismatch("vector length does not match column length");
    auto [row, scale] = scaled_poly_row(dense_to_map(v));
    if (row.empty()) return false;
    scales_.push_back(scale);
    return span_.insert(std::move(row), next_tag_++).independent;
}

std::optional<Combination> express_in_columns(const std::vector<RatFunc>& v, const SparseMat& columns) {
    if (v.size() != columns.rows()) throw DimensionMismatch("vector length does not match column length");
    return ColumnSpan(columns, true).express(v);
}

bool in_span(const std::vector<RatFunc>& v, const SparseMat& columns) {
    if (v.size() != columns.rows()) throw DimensionMismatch("vector length does not match column length");
    return ColumnSpan(columns).contains(v);
}

}  // namespace tubecalc
