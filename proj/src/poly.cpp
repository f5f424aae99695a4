#include "tubecalc/poly.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace tubecalc {

IntPoly::IntPoly(long c) {
    if (c != 0) coeffs_.emplace_back(c);
}

IntPoly::IntPoly(const BigInt& c) {
    if (c != 0) coeffs_.push_back(c);
}

IntPoly::IntPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly IntPoly::monomial(const BigInt& c, unsigned degree) {
    IntPoly p;
    if (c == 0) return p;
    p.coeffs_.assign(degree + 1, BigInt(0));
    p.coeffs_[degree] = c;
    return p;
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

unsigned IntPoly::low_degree() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) return static_cast<unsigned>(k);
    return 0;
}

bool IntPoly::is_monomial() const {
    return !coeffs_.empty() && low_degree() == coeffs_.size() - 1;
}

BigInt IntPoly::coefficient(unsigned k) const {
    return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

const BigInt& IntPoly::leading() const {
    static const BigInt zero(0);
    return coeffs_.empty() ? zero : coeffs_.back();
}

int IntPoly::sign() const { return coeffs_.empty() ? 0 : sgn(coeffs_.back()); }

IntPoly IntPoly::operator-() const {
    IntPoly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    r.trim();
    return r;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const BigInt& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
}

bool operator<(const IntPoly& a, const IntPoly& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t k = a.coeffs_.size(); k-- > 0;) {
        if (a.coeffs_[k] != b.coeffs_[k]) return a.coeffs_[k] < b.coeffs_[k];
    }
    return false;
}

BigInt IntPoly::content() const {
    BigInt g(0);
    for (const auto& c : coeffs_) {
        if (c == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::divexact(const BigInt& c) const {
    if (c == 0) throw DivisionByZero();
    IntPoly r(*this);
    for (auto& x : r.coeffs_) {
        if (x == 0) continue;
        if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) throw Error("inexact integer division of polynomial");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return r;
}

IntPoly IntPoly::divexact(const IntPoly& b) const {
    if (b.is_zero()) throw DivisionByZero();
    if (is_zero()) return {};
    if (b.is_constant()) return divexact(b.coeffs_[0]);
    if (degree() < b.degree()) throw Error("inexact polynomial division");
    if (b.is_monomial()) {
        const unsigned shift = static_cast<unsigned>(b.degree());
        if (low_degree() < shift) throw Error("inexact polynomial division");
        std::vector<BigInt> out(coeffs_.begin() + shift, coeffs_.end());
        return IntPoly(std::move(out)).divexact(b.leading());
    }
    std::vector<BigInt> rem(coeffs_);
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<BigInt> quot(rem.size() - db, BigInt(0));
    const BigInt& lb = b.coeffs_.back();
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        if (!mpz_divisible_p(rem[k].get_mpz_t(), lb.get_mpz_t())) throw Error("inexact polynomial division");
        BigInt q;
        mpz_divexact(q.get_mpz_t(), rem[k].get_mpz_t(), lb.get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeffs_[j];
        quot[k - db] = q;
    }
    for (const auto& c : rem)
        if (c != 0) throw Error("inexact polynomial division");
    return IntPoly(std::move(quot));
}

IntPoly IntPoly::shifted(unsigned k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<BigInt> out(k, BigInt(0));
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    IntPoly r;
    r.coeffs_ = std::move(out);
    return r;
}

namespace {

// lc(q)^(deg p - deg q + 1) * p  mod q, for deg p >= deg q.
IntPoly pseudo_remainder(IntPoly p, const IntPoly& q) {
    const int dq = q.degree();
    const BigInt& lq = q.leading();
    auto coeffs = p.coefficients();
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= dq; --k) {
        if (coeffs[k] == 0) {
            continue;
        }
        BigInt top = coeffs[k];
        for (auto& c : coeffs) c *= lq;
        for (int j = 0; j <= dq; ++j) coeffs[k - dq + j] -= top * q.coefficient(j);
    }
    return IntPoly(std::move(coeffs));
}

IntPoly primitive(const IntPoly& p) {
    if (p.is_zero()) return p;
    IntPoly r = p.divexact(p.content());
    if (r.sign() < 0) r = -r;
    return r;
}

}  // namespace

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.sign() < 0 ? -b : b;
    if (b.is_zero()) return a.sign() < 0 ? -a : a;
    BigInt c;
    {
        BigInt ca = a.content(), cb = b.content();
        mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
    const unsigned shift = std::min(a.low_degree(), b.low_degree());
    if (a.is_monomial() || b.is_monomial()) return monomial(c, shift);

    IntPoly p = primitive(IntPoly(std::vector<BigInt>(a.coeffs_.begin() + a.low_degree(), a.coeffs_.end())));
    IntPoly q = primitive(IntPoly(std::vector<BigInt>(b.coeffs_.begin() + b.low_degree(), b.coeffs_.end())));
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        if (q.is_constant()) {
            p = IntPoly(1);
            break;
        }
        IntPoly r = pseudo_remainder(p, q);
        p = std::move(q);
        q = primitive(r);
    }
    return primitive(p).shifted(shift) * c;
}

double IntPoly::evaluate(double at) const {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * at + coeffs_[k].get_d();
    return acc;
}

std::size_t IntPoly::hash() const {
    std::size_t h = coeffs_.size();
    for (const auto& c : coeffs_) {
        const std::size_t x = std::hash<std::string>{}(c.get_str(16));
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const BigInt& c = coeffs_[k];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (c < 0)
            out << '-';
        else if (!first)
            out << '+';
        if (k == 0 || mag != 1) out << mag.get_str();
        if (k >= 1) out << 'd';
        if (k >= 2) out << '^' << k;
        first = false;
    }
    return out.str();
}

IntPoly IntPoly::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s.push_back(ch);
    if (s.empty()) throw ParseError("empty polynomial");
    IntPoly result;
    std::size_t i = 0;
    while (i < s.size()) {
        int sgn_term = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn_term = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ParseError("expected sign in polynomial '" + s + "'");
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        BigInt coeff = i > start ? BigInt(s.substr(start, i - start)) : BigInt(1);
        unsigned power = 0;
        if (i < s.size() && s[i] == 'd') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t ps = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == ps) throw ParseError("missing exponent in '" + s + "'");
                power = static_cast<unsigned>(std::stoul(s.substr(ps, i - ps)));
            }
        } else if (i == start) {
            throw ParseError("malformed polynomial '" + s + "'");
        }
        result += monomial(coeff * sgn_term, power);
    }
    return result;
}

}  // namespace tubecalc
