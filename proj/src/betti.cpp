#include "tubecalc/betti.hpp"

#include "tubecalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tubecalc {

BettiValue::BettiValue(const BigRat& q) { add_term({}, q); }

void BettiValue::add_term(const std::vector<unsigned>& atoms, const BigRat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(atoms, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

BettiValue BettiValue::sin_sq(unsigned m) {
    switch (m) {
    case 0:  // infinity
    case 1: return BettiValue();
    case 2: return BettiValue(2);
    case 3: return BettiValue(1);
    case 4: return BettiValue(BigRat(1, 2));
    case 6: return BettiValue(BigRat(1, 6));
    default: break;
    }
    BettiValue v;
    v.add_term({m}, BigRat(1));
    return v;
}

bool BettiValue::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

std::optional<BigRat> BettiValue::as_rational() const {
    if (terms_.empty()) return BigRat(0);
    if (!is_rational()) return std::nullopt;
    return terms_.begin()->second;
}

double BettiValue::evaluate() const {
    double s = 0.0;
    for (const auto& [atoms, c] : terms_) {
        double x = c.get_d();
        for (unsigned m : atoms) {
            const double sn = std::sin(std::numbers::pi / m);
            x *= 4.0 * sn * sn / m;
        }
        s += x;
    }
    return s;
}

std::string BettiValue::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [atoms, c] : terms_) {
        BigRat a = abs(c);
        std::string body;
        for (unsigned m : atoms) body += (body.empty() ? "" : "*") + std::string("4sin^2(pi/") + std::to_string(m) + ")/" + std::to_string(m);
        std::string coeff = a.get_str();
        std::string term = atoms.empty() ? coeff : (a == 1 ? body : coeff + "*" + body);
        if (out.empty()) out = (c < 0 ? "-" : "") + term;
        else out += (c < 0 ? "-" : "+") + term;
    }
    return out;
}

BettiValue BettiValue::operator-() const {
    BettiValue r(*this);
    for (auto& [atoms, c] : r.terms_) c = -c;
    return r;
}

BettiValue& BettiValue::operator+=(const BettiValue& o) {
    for (const auto& [atoms, c] : o.terms_) add_term(atoms, c);
    return *this;
}

BettiValue& BettiValue::operator-=(const BettiValue& o) {
    for (const auto& [atoms, c] : o.terms_) add_term(atoms, -c);
    return *this;
}

BettiValue operator*(const BettiValue& a, const BettiValue& b) {
    BettiValue r;
    for (const auto& [x, cx] : a.terms_)
        for (const auto& [y, cy] : b.terms_) {
            std::vector<unsigned> atoms(x);
            atoms.insert(atoms.end(), y.begin(), y.end());
            std::sort(atoms.begin(), atoms.end());
            r.add_term(atoms, cx * cy);
        }
    return r;
}

namespace {

void check_nonnegative(BettiProfile& p) {
    for (std::size_t k = 0; k < p.values.size(); ++k)
        if (p.values[k].evaluate() < -1e-12)
            p.warnings.push_back("beta_" + std::to_string(k) + " evaluates negative");
}

std::string show_n(unsigned n) { return n == 0 ? "inf" : std::to_string(n); }

}  // namespace

BettiProfile tlj_profile(unsigned n) {
    if (n == 1) throw Error("tlj_profile needs n >= 2 or infinity");
    BettiProfile p;
    p.values = {BettiValue::sin_sq(n == 0 ? 0 : n + 1)};
    p.provenance = "tlj(" + show_n(n) + ")";
    return p;
}

BettiProfile point_profile() {
    BettiProfile p;
    p.values = {BettiValue(1)};
    p.provenance = "point";
    return p;
}

BettiProfile free_product(const BettiProfile& p1, const BettiProfile& p2) {
    BettiProfile p;
    p.declared_zero_above = std::max<std::size_t>({1, p1.declared_zero_above, p2.declared_zero_above});
    p.values.assign(p.declared_zero_above + 1, BettiValue());
    p.values[1] = p1.at(1) + p2.at(1) + BettiValue(1) - p1.at(0) - p2.at(0);
    for (std::size_t k = 2; k <= p.declared_zero_above; ++k) p.values[k] = p1.at(k) + p2.at(k);
    for (const auto* f : {&p1, &p2})
        if (f->at(0) == BettiValue(1))
            p.warnings.push_back("factor " + f->provenance + " has beta_0 = 1; the formula assumes nontrivial factors");
    p.provenance = "free_product(" + p1.provenance + ", " + p2.provenance + ")";
    check_nonnegative(p);
    return p;
}

BettiProfile tensor_product(const BettiProfile& p1, const BettiProfile& p2) {
    BettiProfile p;
    p.declared_zero_above = p1.declared_zero_above + p2.declared_zero_above;
    p.values.assign(p.declared_zero_above + 1, BettiValue());
    for (std::size_t n = 0; n <= p.declared_zero_above; ++n)
        for (std::size_t k = 0; k <= n; ++k) p.values[n] += p1.at(k) * p2.at(n - k);
    p.provenance = "tensor_product(" + p1.provenance + ", " + p2.provenance + ")";
    check_nonnegative(p);
    return p;
}

BettiProfile fuss_catalan(unsigned n, unsigned m) {
    if ((n != 0 && n < 3) || (m != 0 && m < 3)) throw Error("fuss_catalan needs n, m >= 3 or infinity");
    BettiProfile p;
    p.declared_zero_above = 1;
    p.values = {BettiValue(),
                BettiValue(1) - BettiValue::sin_sq(n == 0 ? 0 : n + 1) - BettiValue::sin_sq(m == 0 ? 0 : m + 1)};
    p.provenance = "fuss_catalan(" + show_n(n) + ", " + show_n(m) + ")";
    check_nonnegative(p);
    return p;
}

}  // namespace tubecalc
