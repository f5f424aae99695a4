#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tubecalc {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Polynomial in the formal loop parameter d (written `d` in text form)
/// with arbitrary-precision integer coefficients, stored dense from
/// degree 0 upward. The top coefficient is never zero; the zero
/// polynomial has no coefficients and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long c);  // NOLINT: integers convert implicitly
    explicit IntPoly(const BigInt& c);
    explicit IntPoly(std::vector<BigInt> coefficients);

    static IntPoly monomial(const BigInt& c, unsigned degree);
    static IntPoly delta() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
    unsigned low_degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    bool is_monomial() const;
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    BigInt coefficient(unsigned k) const;
    const BigInt& leading() const;
    int sign() const;  // sign of the leading coefficient, 0 for zero

    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly& operator*=(const IntPoly& o);
    IntPoly& operator*=(const BigInt& c);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
    /// Total order (degree, then coefficients from the top); used for canonical sorting.
    friend bool operator<(const IntPoly& a, const IntPoly& b);

    /// gcd of the coefficients, nonnegative.
    BigInt content() const;
    /// Exact division by b; throws Error when b does not divide *this.
    IntPoly divexact(const IntPoly& b) const;
    IntPoly divexact(const BigInt& c) const;
    /// Multiply by d^k.
    IntPoly shifted(unsigned k) const;

    /// gcd over Z[d], normalized to a positive leading coefficient.
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    double evaluate(double at) const;
    std::size_t hash() const;

    /// Compact text form such as "3d^2-d+1"; "0" for zero.
    std::string to_string() const;
    /// Parses the output of to_string (and tolerates '*' and spaces).
    static IntPoly parse(std::string_view text);

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

}  // namespace tubecalc
