#pragma once

// Circle-diagram chain complex of the Temperley-Lieb-Jones planar algebra
// with trivial coefficients.
//
// A degree-k diagram lives on the sphere with finite punctures q_1..q_k
// (left to right) and one puncture at infinity. Every circle separates the
// punctures into two nonempty groups; it is recorded by the consecutive block
// [lo..hi] of finite punctures on the side away from infinity. Only laminar
// families (pairwise nested or disjoint blocks) are represented, which for
// k <= 3 excludes exactly the pair {[1,2], [2,3]}.
//
// The face map d_j fills q_{j+1} for j < k and the puncture at infinity for
// j = k; in the latter case q_k becomes the new puncture at infinity.
// Circles bounding an empty disk are removed with a factor d (the loop
// parameter), and the boundary is the alternating sum of the face maps.

#include "tubecalc/linalg.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tubecalc::annular {

constexpr int kMaxDegree = 3;

enum class Mode { unshaded, shaded };

struct Block {
    int lo = 1;
    int hi = 1;
    friend auto operator<=>(const Block&, const Block&) = default;
};

/// Blocks of degree k in canonical order (lexicographic on (lo, hi)).
const std::vector<Block>& block_classes(int degree);

class CircleDiagram {
public:
    /// Empty diagram of the given degree.
    explicit CircleDiagram(int degree = 0, std::optional<bool> shading = std::nullopt);
    CircleDiagram(int degree, const std::vector<std::pair<Block, unsigned>>& blocks,
                  std::optional<bool> shading = std::nullopt);

    int degree() const { return degree_; }
    /// Shading of the region at infinity (true = shaded); absent in unshaded mode and in degree 0.
    std::optional<bool> shading() const {
        return shading_ < 0 ? std::nullopt : std::optional<bool>(shading_ == 1);
    }
    unsigned multiplicity(const Block& b) const;
    std::vector<std::pair<Block, unsigned>> blocks() const;
    unsigned total_circles() const;

    /// Text form, e.g. "k=2; [1]^1 [1,2]^2; s=0".
    std::string encode() const;
    static CircleDiagram decode(const std::string& text);

    friend bool operator==(const CircleDiagram&, const CircleDiagram&) = default;
    friend auto operator<=>(const CircleDiagram&, const CircleDiagram&) = default;

private:
    friend class DiagramBuilder;
    std::int8_t degree_ = 0;
    std::int8_t shading_ = -1;
    // multiplicities indexed like block_classes(degree_)
    std::array<std::uint16_t, 6> mult_{};
};

CircleDiagram sigma(unsigned k, std::optional<bool> shading = std::nullopt);
CircleDiagram sigma2(unsigned a, unsigned b, unsigned c, std::optional<bool> shading = std::nullopt);

/// Finite Q(d)-linear combination of diagrams of one degree.
class ChainVector {
public:
    explicit ChainVector(int degree = 0) : degree_(degree) {}
    ChainVector(const CircleDiagram& d, RatFunc coeff = RatFunc(1));

    int degree() const { return degree_; }
    const std::map<CircleDiagram, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    RatFunc coefficient(const CircleDiagram& d) const;

    void add(const CircleDiagram& d, const RatFunc& coeff);
    ChainVector& operator+=(const ChainVector& o);
    ChainVector& operator-=(const ChainVector& o);
    ChainVector& operator*=(const RatFunc& s);
    friend ChainVector operator+(ChainVector a, const ChainVector& b) { return a += b; }
    friend ChainVector operator-(ChainVector a, const ChainVector& b) { return a -= b; }
    friend ChainVector operator*(RatFunc s, ChainVector v) { return v *= s; }
    friend bool operator==(const ChainVector& a, const ChainVector& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    int degree_;
    std::map<CircleDiagram, RatFunc> terms_;
};

/// All laminar diagrams of the degree with total multiplicity <= max_total
/// (both shadings in shaded mode), in canonical order.
std::vector<CircleDiagram> enumerate_diagrams(int degree, unsigned max_total, Mode mode = Mode::unshaded);
/// Closed-form size of enumerate_diagrams.
std::size_t count_diagrams(int degree, unsigned max_total, Mode mode = Mode::unshaded);

/// Face map d_j, 0 <= j <= degree.
ChainVector fill_puncture(const CircleDiagram& d, int j);
ChainVector boundary(const CircleDiagram& d);
ChainVector boundary(const ChainVector& v);

/// Matrix of the boundary from degree `degree` (columns: diagrams with total
/// <= domain_total) to degree-1 (rows: diagrams with total <= codomain_total).
SparseMat boundary_matrix(int degree, unsigned domain_total, unsigned codomain_total, Mode mode = Mode::unshaded);

/// Index lookup into an enumerated basis.
class DiagramIndex {
public:
    explicit DiagramIndex(std::vector<CircleDiagram> basis);
    const std::vector<CircleDiagram>& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }
    std::optional<std::size_t> find(const CircleDiagram& d) const;
    std::vector<RatFunc> coordinates(const ChainVector& v) const;  // throws if a term is outside the basis
    ChainVector vector(const std::vector<RatFunc>& coords, int degree) const;

private:
    std::vector<CircleDiagram> basis_;
    std::map<CircleDiagram, std::size_t> index_;
};

}  // namespace tubecalc::annular
