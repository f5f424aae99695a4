#pragma once

#include "tubecalc/ratfunc.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tubecalc {

/// Sparse rows x cols matrix over Q(d), stored by column; zeros are never stored.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    std::size_t nonzeros() const;

    void set(std::size_t r, std::size_t c, RatFunc value);
    void add(std::size_t r, std::size_t c, const RatFunc& value);
    RatFunc at(std::size_t r, std::size_t c) const;
    const std::map<std::size_t, RatFunc>& column(std::size_t c) const { return columns_.at(c); }
    bool is_zero() const { return nonzeros() == 0; }

    SparseMat transpose() const;
    friend SparseMat operator*(const SparseMat& a, const SparseMat& b);
    std::vector<RatFunc> apply(const std::vector<RatFunc>& v) const;

    /// Matrix of double values at d = at.
    std::vector<std::vector<double>> evaluate(double at) const;

private:
    std::size_t rows_ = 0;
    std::vector<std::map<std::size_t, RatFunc>> columns_;
};

/// Sparse vector over Z[d], entries sorted by index, no zeros.
using PolyRow = std::vector<std::pair<std::size_t, IntPoly>>;
/// Sparse combination tag -> coefficient.
using Combination = std::map<std::size_t, RatFunc>;

/// Clears denominators of a Q(d) vector: returns a primitive Z[d] multiple.
PolyRow to_poly_row(const std::map<std::size_t, RatFunc>& v);
PolyRow to_poly_row(const std::vector<RatFunc>& v);

/// Incrementally built, fully reduced echelon basis of a subspace of Q(d)^dim.
///
/// Vectors are kept fraction-free in Z[d] with their content (integer and
/// polynomial gcd of all entries) stripped after every row operation. Each
/// basis vector is zero at the pivots of all other basis vectors, so reducing
/// a sparse input only touches the basis vectors whose pivots it hits.
/// Pivot rule for a new vector: smallest (entry degree, index).
///
/// With tracking enabled every basis vector remembers its expression in the
/// inserted inputs (identified by caller tags), which yields linear relations
/// for dependent inputs and certificates for span membership.
class EchelonSpan {
public:
    explicit EchelonSpan(std::size_t dim, bool track = false) : dim_(dim), pivot_owner_(dim, -1), track_(track) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    bool tracking() const { return track_; }

    struct Insertion {
        bool independent = false;
        /// For a dependent input (tracking only): Σ relation[t]·input(t) = 0 with relation[tag] != 0.
        Combination relation;
    };
    Insertion insert(PolyRow v, std::size_t tag);

    bool contains(PolyRow v) const;
    /// When v is in the span: coefficients c with v = Σ c[t]·input(t). Requires tracking.
    std::optional<Combination> express(PolyRow v) const;

    /// Called once per row operation; may throw to abort long eliminations.
    void set_tick(std::function<void()> tick) { tick_ = std::move(tick); }

private:
    struct Vec {
        PolyRow row;
        Combination combo;
    };
    void reduce(Vec& w, bool track) const;
    static void strip_content(Vec& w, bool track);
    static void eliminate(Vec& target, const Vec& by, std::size_t pivot, bool track);

    std::size_t dim_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<long> pivot_owner_;
    bool track_;
    std::function<void()> tick_;
};

/// Column space of a fixed matrix, built once and queried many times.
/// Certificates refer to the original (unscaled) columns.
class ColumnSpan {
public:
    explicit ColumnSpan(const SparseMat& columns, bool track = false, std::function<void()> tick = {});

    std::size_t rank() const { return span_.rank(); }
    std::size_t dim() const { return span_.dim(); }
    bool contains(const std::vector<RatFunc>& v) const;
    /// v = Σ coeff·column(c) when v is in the span. Requires tracking.
    std::optional<Combination> express(const std::vector<RatFunc>& v) const;
    /// Adds v to the span (used to measure rank growth); returns true when independent.
    bool extend(const std::vector<RatFunc>& v);

private:
    EchelonSpan span_;
    std::vector<RatFunc> scales_;
    std::size_t next_tag_;
};

/// Rank over Q(d).
std::size_t rank(const SparseMat& m, const std::function<void()>& tick = {});

/// Basis of the right kernel; each vector has Z[d] entries with content 1 and
/// positive leading coefficient at its free column.
std::vector<std::vector<IntPoly>> kernel_basis(const SparseMat& m);

/// True iff v lies in the column span of `columns` over Q(d).
bool in_span(const std::vector<RatFunc>& v, const SparseMat& columns);

/// Column-span membership with a certificate (v = Σ coeff·column) on success.
std::optional<Combination> express_in_columns(const std::vector<RatFunc>& v, const SparseMat& columns);

}  // namespace tubecalc
