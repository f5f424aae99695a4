#pragma once

#include "tubecalc/poly.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace tubecalc {

/// Element of Q(d) kept as num/den with gcd(num, den) = 1 (integer content
/// included) and den having a positive leading coefficient. The form is
/// unique, so equality and hashing are structural.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT: integers convert implicitly
    RatFunc(IntPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    RatFunc(IntPoly num, IntPoly den);
    explicit RatFunc(const BigRat& q);

    static RatFunc delta() { return RatFunc(IntPoly::delta()); }

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// True when the value does not depend on d.
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    std::optional<BigRat> as_rational() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);

    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Horner evaluation of num and den; throws PoleAtPoint when |den(at)| <= 1e-12.
    double evaluate(double at) const;
    std::size_t hash() const { return num_.hash() * 31u + den_.hash(); }

    /// "num" or "(num)/(den)" without spaces, e.g. "(d^2-1)/(d+2)" or "-1/2".
    std::string to_string() const;
    static RatFunc parse(std::string_view text);

private:
    void normalize();
    IntPoly num_;
    IntPoly den_;
};

RatFunc pow(const RatFunc& base, unsigned exponent);

}  // namespace tubecalc
