#pragma once

#include "tubecalc/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tubecalc {

/// Exact value in Q[s(m) : m >= 2], where s(m) = 4 sin^2(pi/m) / m.
/// Atoms with rational values (m = 2, 3, 4, 6) are folded into the rational
/// part, so every closed-form profile evaluates to a canonical polynomial in the
/// remaining atoms. Equality is structural.
class BettiValue {
public:
    BettiValue() = default;
    BettiValue(long q) : BettiValue(BigRat(q)) {}  // NOLINT
    explicit BettiValue(const BigRat& q);

    /// s(m); m = 0 stands for m = infinity and gives 0.
    static BettiValue sin_sq(unsigned m);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    std::optional<BigRat> as_rational() const;
    double evaluate() const;
    /// e.g. "1-4sin^2(pi/8)/8"
    std::string to_string() const;

    BettiValue operator-() const;
    BettiValue& operator+=(const BettiValue& o);
    BettiValue& operator-=(const BettiValue& o);
    friend BettiValue operator+(BettiValue a, const BettiValue& b) { return a += b; }
    friend BettiValue operator-(BettiValue a, const BettiValue& b) { return a -= b; }
    friend BettiValue operator*(const BettiValue& a, const BettiValue& b);
    friend bool operator==(const BettiValue& a, const BettiValue& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BettiValue& a, const BettiValue& b) { return !(a == b); }

    /// monomial (sorted atom list) -> coefficient
    const std::map<std::vector<unsigned>, BigRat>& terms() const { return terms_; }

private:
    void add_term(const std::vector<unsigned>& atoms, const BigRat& c);
    std::map<std::vector<unsigned>, BigRat> terms_;
};

struct BettiProfile {
    std::vector<BettiValue> values;  // beta_0 .. beta_D
    std::size_t declared_zero_above = 0;
    std::vector<std::string> warnings;
    std::string provenance;

    BettiValue at(std::size_t n) const { return n < values.size() ? values[n] : BettiValue(); }
};

/// A_n Temperley-Lieb-Jones subfactor; n = 0 means n = infinity.
BettiProfile tlj_profile(unsigned n);
/// beta_0 = 1, all others 0 (unit for tensor_product).
BettiProfile point_profile();
BettiProfile free_product(const BettiProfile& p1, const BettiProfile& p2);
BettiProfile tensor_product(const BettiProfile& p1, const BettiProfile& p2);
/// n, m >= 3, 0 meaning infinity.
BettiProfile fuss_catalan(unsigned n, unsigned m);

}  // namespace tubecalc
