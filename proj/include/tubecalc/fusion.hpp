#pragma once

#include "tubecalc/group.hpp"
#include "tubecalc/ratfunc.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tubecalc {

/// Decomposition of a product a·b into labels with multiplicities.
struct Products {
    std::vector<std::pair<std::size_t, unsigned>> terms;  // sorted by label, no zero multiplicities
    /// true when part of the product lies outside a truncated window
    bool clipped = false;
};

/// Based ring with nonnegative integer structure constants N(a, b, c) =
/// mult of c in a·b. Label 0 is the unit. Products are produced by a rule, so
/// windows of infinite rings are never tabulated in full.
class FusionRing {
public:
    using Rule = std::function<Products(std::size_t, std::size_t)>;

    FusionRing(std::string name, std::vector<std::string> labels, std::vector<std::size_t> dual, Rule rule,
               std::vector<double> dims, std::optional<std::vector<IntPoly>> exact_dims = std::nullopt,
               bool truncated = false);

    /// Finite ring from explicit (a, b, c, mult) entries; validates every axiom
    /// and throws InvariantViolation naming the first failure.
    static FusionRing from_table(std::string name, std::vector<std::string> labels, std::vector<std::size_t> dual,
                                 const std::vector<std::array<std::size_t, 4>>& entries,
                                 std::optional<std::vector<double>> dims = std::nullopt);

    const std::string& name() const { return name_; }
    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(const std::string& label) const;
    std::size_t dual(std::size_t i) const { return dual_.at(i); }
    static constexpr std::size_t unit() { return 0; }

    Products product(std::size_t a, std::size_t b) const;
    unsigned N(std::size_t a, std::size_t b, std::size_t c) const;

    const std::vector<double>& dims() const { return dims_; }
    /// Dimensions as polynomials in d, when a closed form is known.
    const std::optional<std::vector<IntPoly>>& exact_dims() const { return exact_dims_; }
    bool truncated() const { return truncated_; }

    /// Sum of d(a)^2 over all labels (float).
    double global_index() const;
    /// Sum of exact dims squared, when exact dims are present.
    std::optional<RatFunc> exact_global_index() const;

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> dual_;
    Rule rule_;
    std::vector<double> dims_;
    std::optional<std::vector<IntPoly>> exact_dims_;
    bool truncated_;
};

struct AxiomFailure {
    std::string axiom;
    std::vector<std::size_t> witness;
    std::string detail;
};

/// Unit, dual involution, Frobenius symmetry, associativity and the dimension
/// equation, checked exhaustively. Products clipped by a window are skipped.
std::vector<AxiomFailure> check_axioms(const FusionRing& ring, double dim_tolerance = 1e-9, std::size_t max_failures = 16);

FusionRing from_group(const GroupTable& group);

/// Even part of the A_n Temperley-Lieb-Jones category: labels f_0, f_2, ...
FusionRing tlj_even(int n);

/// Window f_0 .. f_{W-1} of the generic (A_infinity) Temperley-Lieb-Jones
/// ring at loop value delta >= 2; products reaching f_W or beyond are clipped.
/// Exact Chebyshev dims are attached on request (they grow quickly with W).
FusionRing a_infinity_window(std::size_t W, double delta, bool with_exact_dims = false);

/// Chebyshev polynomial U_k with U_0 = 1, U_1 = d, U_{k+1} = d U_k - U_{k-1}.
IntPoly chebyshev_dim(unsigned k);

/// Positive eigenvector of Σ_a N(a, ., .) normalized at the unit; throws
/// NotConnected when the fusion graph is not connected.
std::vector<double> perron_dims(const FusionRing& ring);

struct BettiZeroReport {
    double global_index = 0.0;
    double beta0 = 0.0;
    std::optional<RatFunc> exact_global_index;
    std::optional<RatFunc> exact_beta0;
};
BettiZeroReport beta0(const FusionRing& ring);

/// Labels are pairs; structure constants and dims multiply.
FusionRing product(const FusionRing& r1, const FusionRing& r2);

/// Polynomial in t with Q(d) coefficients, keyed by exponent.
using TPoly = std::map<unsigned, RatFunc>;

/// b(t^i ⊗ t^j) = ε(t^i) t^j - t^(i+j) + ε(t^j) t^i with ε(p) = p(d).
TPoly hochschild_boundary(unsigned i, unsigned j);
/// φ(q) = q'(d).
RatFunc derivative_functional(const TPoly& q);

struct HochschildWitness {
    unsigned max_degree = 0;
    std::size_t boundaries_checked = 0;
    bool functional_vanishes_on_boundaries = false;
    RatFunc witness_cycle_value;  // φ(t)
    std::vector<std::pair<unsigned, unsigned>> nonvanishing;  // (i, j) with φ(b(t^i ⊗ t^j)) != 0
};
HochschildWitness hochschild_h1_witness(unsigned max_degree);

// text format; see README
FusionRing parse_fusion(const std::string& text);
std::string serialize_fusion(const FusionRing& ring);

}  // namespace tubecalc
