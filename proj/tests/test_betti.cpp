#include <catch_amalgamated.hpp>

#include "tubecalc/betti.hpp"
#include "tubecalc/error.hpp"
#include "tubecalc/fusion.hpp"

#include <cmath>
#include <numbers>

using namespace tubecalc;

namespace {

double s_of(unsigned m) {
    const double x = std::sin(std::numbers::pi / m);
    return 4 * x * x / m;
}

std::vector<BettiProfile> samples() {
    return {tlj_profile(3), tlj_profile(5), tlj_profile(0), fuss_catalan(4, 9), fuss_catalan(0, 6), point_profile(),
            tensor_product(tlj_profile(4), fuss_catalan(3, 7))};
}

}  // namespace

TEST_CASE("sin^2 atoms: rational cases fold, others stay symbolic", "[betti]") {
    CHECK(BettiValue::sin_sq(0).is_zero());
    CHECK(BettiValue::sin_sq(2) == BettiValue(2));
    CHECK(BettiValue::sin_sq(3) == BettiValue(1));
    CHECK(BettiValue::sin_sq(4) == BettiValue(BigRat(1, 2)));
    CHECK(BettiValue::sin_sq(6) == BettiValue(BigRat(1, 6)));
    CHECK_FALSE(BettiValue::sin_sq(5).is_rational());
    for (unsigned m = 2; m <= 30; ++m) CHECK(BettiValue::sin_sq(m).evaluate() == Catch::Approx(s_of(m)).epsilon(1e-14));
    CHECK(BettiValue::sin_sq(8).to_string() == "4sin^2(pi/8)/8");
}

TEST_CASE("BettiValue is a commutative ring", "[betti][property]") {
    const std::vector<BettiValue> xs = {BettiValue(3), BettiValue::sin_sq(5), BettiValue(1) - BettiValue::sin_sq(7),
                                        BettiValue::sin_sq(5) * BettiValue::sin_sq(9), BettiValue(BigRat(-2, 7))};
    for (const auto& a : xs)
        for (const auto& b : xs) {
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a - b) + b == a);
            CHECK((a * b).evaluate() == Catch::Approx(a.evaluate() * b.evaluate()).epsilon(1e-13));
            for (const auto& c : xs) CHECK(a * (b + c) == a * b + a * c);
        }
}

TEST_CASE("tlj beta0 is the inverse global index of the even part", "[betti][oracle]") {
    for (int n = 2; n <= 40; ++n) {
        const double g = tlj_even(n).global_index();
        CHECK(std::fabs(tlj_profile(static_cast<unsigned>(n)).at(0).evaluate() - 1.0 / g) <= 1e-9);
        CHECK(std::fabs(tlj_profile(static_cast<unsigned>(n)).at(0).evaluate() - s_of(static_cast<unsigned>(n) + 1)) <= 1e-15);
    }
    CHECK(tlj_profile(0).at(0).is_zero());
    CHECK_THROWS_AS(tlj_profile(1), Error);
}

TEST_CASE("Fuss-Catalan values", "[betti]") {
    CHECK(fuss_catalan(3, 3).at(1).is_zero());
    CHECK(fuss_catalan(5, 5).at(1) == BettiValue(BigRat(2, 3)));
    CHECK(fuss_catalan(5, 5).at(1).to_string() == "2/3");
    CHECK(fuss_catalan(0, 0).at(1) == BettiValue(1));
    CHECK(fuss_catalan(3, 5).at(0).is_zero());
    CHECK(fuss_catalan(7, 7).at(1).evaluate() == Catch::Approx(1 - 2 * s_of(8)));
    CHECK_THROWS_AS(fuss_catalan(2, 5), Error);
}

TEST_CASE("Fuss-Catalan equals the free product of two TLJ profiles", "[betti][property]") {
    std::vector<unsigned> ns;
    for (unsigned n = 3; n <= 20; ++n) ns.push_back(n);
    ns.push_back(0);
    for (unsigned n : ns)
        for (unsigned m : ns) {
            const BettiProfile f = fuss_catalan(n, m), p = free_product(tlj_profile(n), tlj_profile(m));
            for (std::size_t k = 0; k <= 3; ++k) CHECK(f.at(k) == p.at(k));
            CHECK(p.warnings.empty());
        }
}

TEST_CASE("free product is positive in degree one below beta0 = 1/2", "[betti][property]") {
    for (unsigned n = 3; n <= 30; ++n)
        for (unsigned m = 3; m <= 30; ++m) {
            const BettiProfile a = tlj_profile(n), b = tlj_profile(m);
            if (a.at(0).evaluate() < 0.5 && b.at(0).evaluate() < 0.5) CHECK(free_product(a, b).at(1).evaluate() > 0.0);
        }
    const BettiProfile trivial = free_product(point_profile(), tlj_profile(5));
    CHECK_FALSE(trivial.warnings.empty());
}

TEST_CASE("tensor product: unit, commutativity, associativity", "[betti][property]") {
    const auto ps = samples();
    for (const auto& p : ps) {
        const BettiProfile u = tensor_product(p, point_profile());
        for (std::size_t k = 0; k <= 4; ++k) {
            CHECK(u.at(k) == p.at(k));
            CHECK(std::fabs(u.at(k).evaluate() - p.at(k).evaluate()) <= 1e-12);
        }
        for (const auto& q : ps) {
            const BettiProfile pq = tensor_product(p, q), qp = tensor_product(q, p);
            for (std::size_t k = 0; k <= 4; ++k) CHECK(std::fabs(pq.at(k).evaluate() - qp.at(k).evaluate()) <= 1e-12);
            for (const auto& r : ps) {
                const BettiProfile l = tensor_product(tensor_product(p, q), r), rr = tensor_product(p, tensor_product(q, r));
                for (std::size_t k = 0; k <= 4; ++k) CHECK(std::fabs(l.at(k).evaluate() - rr.at(k).evaluate()) <= 1e-12);
            }
        }
    }
    // product of two TLJ beta0 values; n = 3 gives 1/2 each
    CHECK(tensor_product(tlj_profile(3), tlj_profile(3)).at(0) == BettiValue(BigRat(1, 4)));
    CHECK(tensor_product(fuss_catalan(5, 5), fuss_catalan(5, 5)).at(2) == BettiValue(BigRat(4, 9)));
}
