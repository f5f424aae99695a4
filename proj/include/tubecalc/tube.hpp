#pragma once

#include "tubecalc/fusion.hpp"
#include "tubecalc/group.hpp"
#include "tubecalc/linalg.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tubecalc {

/// Sparse element of a structure-constant algebra: basis index -> coefficient.
using Element = std::map<std::size_t, RatFunc>;

void add_to(Element& x, std::size_t basis, const RatFunc& c);
void add_to(Element& x, const Element& y, const RatFunc& scale = RatFunc(1));

struct TubeBasis {
    std::size_t source = 0;  // x = p_source · x · p_target
    std::size_t target = 0;
    std::string name;
    /// the object the element runs through (alpha in (i alpha, alpha j)); used to match the unit corner with a fusion ring
    std::string label;
};

/// Finite-dimensional graded *-algebra over Q(d) given by structure constants.
/// Corner 0 is the unit corner (epsilon).
class TubeAlgebra {
public:
    TubeAlgebra(std::vector<std::string> corners, std::vector<TubeBasis> basis,
                std::map<std::pair<std::size_t, std::size_t>, Element> mult, std::vector<Element> star,
                std::vector<RatFunc> trace, std::vector<RatFunc> counit, std::vector<std::size_t> units);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::string>& corners() const { return corners_; }
    const TubeBasis& basis(std::size_t a) const { return basis_.at(a); }
    const std::vector<TubeBasis>& basis() const { return basis_; }
    std::size_t unit(std::size_t corner) const { return units_.at(corner); }
    const std::vector<std::size_t>& units() const { return units_; }

    /// Product of two basis elements (empty when zero).
    const Element& multiply(std::size_t a, std::size_t b) const;
    Element multiply(const Element& x, const Element& y) const;
    const Element& star(std::size_t a) const { return star_.at(a); }
    Element star(const Element& x) const;
    RatFunc trace(std::size_t a) const { return trace_.at(a); }
    RatFunc trace(const Element& x) const;
    RatFunc counit(std::size_t a) const { return counit_.at(a); }
    RatFunc counit(const Element& x) const;

    const std::map<std::pair<std::size_t, std::size_t>, Element>& mult_table() const { return mult_; }
    const std::vector<Element>& star_table() const { return star_; }
    const std::vector<RatFunc>& trace_vec() const { return trace_; }
    const std::vector<RatFunc>& counit_vec() const { return counit_; }

    /// Basis elements of p_i · A · p_j.
    std::vector<std::size_t> block(std::size_t i, std::size_t j) const;

private:
    std::vector<std::string> corners_;
    std::vector<TubeBasis> basis_;
    std::map<std::pair<std::size_t, std::size_t>, Element> mult_;
    std::vector<Element> star_;
    std::vector<RatFunc> trace_;
    std::vector<RatFunc> counit_;
    std::vector<std::size_t> units_;
};

/// Tube algebra of Vec_G: basis (i, alpha), (i,alpha)(j,beta) = [j = alpha^-1 i alpha](i, alpha beta).
TubeAlgebra tube_from_group(const GroupTable& group);

struct IdentityCheck {
    std::string name;
    std::size_t checked = 0;
    std::size_t failures = 0;
    bool applicable = true;
    std::vector<std::size_t> witness;  // first failure
    std::string detail;
    bool passed() const { return failures == 0; }
};

struct VerificationReport {
    std::vector<IdentityCheck> checks;
    bool all_passed() const;
    const IdentityCheck* first_failure() const;
    const IdentityCheck& find(const std::string& name) const;
};

/// Exhaustive checks over the basis: grading, units, associativity, star
/// involution and anti-multiplicativity, trace symmetry, Gram positivity per
/// block, counit multiplicativity on the unit corner, and W W^# = p_i for
/// pointed data (all corner traces 1).
VerificationReport verify_identities(const TubeAlgebra& A);

/// Positive semidefiniteness of a symmetric rational matrix by exact LDL^T
/// with diagonal pivoting.
bool is_psd(std::vector<std::vector<BigRat>> m);

struct CornerMatch {
    bool matched = false;
    std::size_t corner_dim = 0;
    /// corner basis element -> ring label
    std::vector<std::pair<std::size_t, std::size_t>> bijection;
    std::vector<std::size_t> mismatch;  // (a, b, c) corner basis indices of the first mismatch
    std::string detail;
};

/// Compares p_eps · A · p_eps with the fusion ring, matching basis labels to ring labels.
CornerMatch fusion_corner(const TubeAlgebra& A, const FusionRing& ring);

/// dim of the center over Q; requires constant structure constants.
std::size_t center_dim(const TubeAlgebra& A);

struct HomologyReport {
    int degrees_computed = 0;
    std::vector<std::size_t> chain_dims;  // degrees 0 .. n_max+1
    std::vector<std::size_t> ranks;       // ranks[n] = rank of boundary from degree n (ranks[0] = 0)
    std::vector<long> dims;               // homology, degrees 0 .. n_max
    bool boundary_squares_zero = true;
};

/// Bar complex C_eps ⊗_B A ⊗_B ... ⊗_B A ⊗_B C_eps (B spanned by the corner units)
/// with both ends acting through the counit.
HomologyReport trivial_homology(const TubeAlgebra& A, int n_max, std::size_t chain_cap = 50000,
                                std::function<void()> tick = {});

/// Composable chains of length n starting and ending in the unit corner.
std::vector<std::vector<std::size_t>> bar_chains(const TubeAlgebra& A, int n, std::size_t cap = 50000);
SparseMat bar_boundary(const TubeAlgebra& A, int n, std::size_t cap = 50000);

// text format; see README
TubeAlgebra parse_tube(const std::string& text);
std::string serialize_tube(const TubeAlgebra& A);

}  // namespace tubecalc
