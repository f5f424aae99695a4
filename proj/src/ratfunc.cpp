#include "tubecalc/ratfunc.hpp"

#include "tubecalc/error.hpp"

#include <cmath>

namespace tubecalc {

RatFunc::RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
}

RatFunc::RatFunc(const BigRat& q) : num_(q.get_num()), den_(q.get_den()) {}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = IntPoly(1);
        return;
    }
    if (!den_.is_one()) {
        IntPoly g = IntPoly::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

std::optional<BigRat> RatFunc::as_rational() const {
    if (!is_constant()) return std::nullopt;
    BigRat q(num_.coefficient(0), den_.coefficient(0));
    q.canonicalize();
    return q;
}

RatFunc RatFunc::operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RatFunc();
    if (den_.is_one() && o.den_.is_one()) {
        num_ *= o.num_;
        return *this;
    }
    // cross-cancel before multiplying to keep degrees small
    IntPoly g1 = IntPoly::gcd(num_, o.den_);
    IntPoly g2 = IntPoly::gcd(o.num_, den_);
    num_ = num_.divexact(g1) * o.num_.divexact(g2);
    den_ = den_.divexact(g2) * o.den_.divexact(g1);
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw DivisionByZero();
    RatFunc inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    if (inv.den_.sign() < 0) {
        inv.num_ = -inv.num_;
        inv.den_ = -inv.den_;
    }
    return *this *= inv;
}

double RatFunc::evaluate(double at) const {
    const double d = den_.evaluate(at);
    if (std::fabs(d) <= 1e-12) throw PoleAtPoint(at);
    return num_.evaluate(at) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const IntPoly& p) {
        std::string s = p.to_string();
        return p.is_monomial() && p.sign() > 0 ? s : "(" + s + ")";
    };
    std::string n = num_.is_monomial() ? num_.to_string() : "(" + num_.to_string() + ")";
    return n + "/" + wrap(den_);
}

namespace {

std::string strip_parens(std::string_view s) {
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool outer = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && i + 1 < s.size()) {
                outer = false;
                break;
            }
        }
        if (!outer) break;
        s = s.substr(1, s.size() - 2);
    }
    return std::string(s);
}

}  // namespace

RatFunc RatFunc::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == '/' && depth == 0) {
            if (slash != std::string::npos) throw ParseError("more than one '/' in '" + s + "'");
            slash = i;
        }
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
    if (slash == std::string::npos) return RatFunc(IntPoly::parse(strip_parens(s)));
    IntPoly num = IntPoly::parse(strip_parens(std::string_view(s).substr(0, slash)));
    IntPoly den = IntPoly::parse(strip_parens(std::string_view(s).substr(slash + 1)));
    if (den.is_zero()) throw ParseError("zero denominator in '" + s + "'");
    return RatFunc(std::move(num), std::move(den));
}

RatFunc pow(const RatFunc& base, unsigned exponent) {
    RatFunc result(1);
    RatFunc b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1u;
    }
    return result;
}

}  // namespace tubecalc
