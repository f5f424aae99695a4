#include <catch_amalgamated.hpp>

#include "tubecalc/error.hpp"
#include "tubecalc/fusion.hpp"
#include "tubecalc/group.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace tubecalc;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(TUBECALC_DATA_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// quantum integer [k+1] at q = exp(i pi / (n+1))
double quantum_dim(int k, int n) {
    return std::sin((k + 1) * std::numbers::pi / (n + 1)) / std::sin(std::numbers::pi / (n + 1));
}

}  // namespace

TEST_CASE("tlj_even passes every axiom for n = 2..40", "[fusion][property]") {
    for (int n = 2; n <= 40; ++n) {
        const FusionRing r = tlj_even(n);
        INFO("n = " << n);
        CHECK(check_axioms(r).empty());
        REQUIRE(r.size() == static_cast<std::size_t>((n + 1) / 2));
        for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.dims()[i] == Catch::Approx(quantum_dim(2 * static_cast<int>(i), n)).epsilon(1e-12));
    }
}

TEST_CASE("global index of tlj_even against the trigonometric closed form", "[fusion][oracle]") {
    for (int n = 2; n <= 40; ++n) {
        const double s = std::sin(std::numbers::pi / (n + 1));
        const double closed = (n + 1) / (4.0 * s * s);
        CHECK(std::fabs(tlj_even(n).global_index() - closed) <= 1e-9);
        CHECK(std::fabs(beta0(tlj_even(n)).beta0 * closed - 1.0) <= 1e-12);
    }
}

TEST_CASE("tlj_even small cases by hand", "[fusion]") {
    // n = 3: Z/2 fusion (f2 * f2 = f0)
    const FusionRing r3 = tlj_even(3);
    REQUIRE(r3.size() == 2);
    CHECK(r3.product(1, 1).terms == std::vector<std::pair<std::size_t, unsigned>>{{0, 1}});
    // n = 4: Fibonacci (f2 * f2 = f0 + f2), dimension is the golden ratio
    const FusionRing r4 = tlj_even(4);
    CHECK(r4.product(1, 1).terms == std::vector<std::pair<std::size_t, unsigned>>{{0, 1}, {1, 1}});
    CHECK(r4.dims()[1] == Catch::Approx((1 + std::sqrt(5.0)) / 2));
}

TEST_CASE("group rings have dimension one and beta0 = 1/|G| exactly", "[fusion]") {
    for (const char* name : {"Z2", "Z3", "S3", "D4", "Z7"}) {
        const GroupTable g = GroupTable::builtin(name);
        const FusionRing r = from_group(g);
        INFO(name);
        CHECK(check_axioms(r).empty());
        CHECK(r.label(0) == g.name(g.identity()));
        const auto b = beta0(r);
        REQUIRE(b.exact_beta0);
        CHECK(*b.exact_beta0 == RatFunc(BigRat(1, static_cast<long>(g.order()))));
        for (double d : r.dims()) CHECK(d == 1.0);
    }
    CHECK(GroupTable::builtin("D4").order() == 8);
}

TEST_CASE("group axioms reject a non-associative loop", "[fusion]") {
    try {
        GroupTable::parse(slurp("loop5.group"));
        FAIL("loop accepted");
    } catch (const NotAGroup& e) {
        CHECK(e.axiom == "associativity");
        CHECK(e.witness.size() == 3);
    }
}

TEST_CASE("group table text round-trip", "[fusion]") {
    const GroupTable g = GroupTable::parse(slurp("s3.group"));
    CHECK(g.order() == 6);
    CHECK(GroupTable::parse(g.serialize()).table() == g.table());
}

TEST_CASE("fusion file parse and serialize round-trip", "[fusion]") {
    const FusionRing r = parse_fusion(slurp("tlj5_even.fusion"));
    CHECK(r.size() == 3);
    CHECK(check_axioms(r).empty());
    CHECK(r.dims()[1] == Catch::Approx(2.0).epsilon(1e-12));
    const FusionRing again = parse_fusion(serialize_fusion(r));
    CHECK(serialize_fusion(again) == serialize_fusion(r));
    for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = 0; b < r.size(); ++b) CHECK(again.product(a, b).terms == r.product(a, b).terms);
}

TEST_CASE("fusion file errors", "[fusion]") {
    CHECK_THROWS_AS(parse_fusion("labels 1 x\n1 1 1 1\n1 x y 1\n"), ParseError);
    CHECK_THROWS_AS(parse_fusion("labels 1 x\n1 1 1\n"), ParseError);
    // x * x is missing, so the unit axiom fails via duality
    CHECK_THROWS_AS(parse_fusion("labels 1 x\n1 1 1 1\n1 x x 1\nx 1 x 1\n"), InvariantViolation);
    // x * x = 1 + 1 breaks the dimension equation against the given dims
    CHECK_THROWS_AS(parse_fusion("labels 1 x\ndims 1 1\n1 1 1 1\n1 x x 1\nx 1 x 1\nx x 1 1\nx x x 1\n"), InvariantViolation);
}

TEST_CASE("check_axioms reports a wrong dimension", "[fusion]") {
    const FusionRing good = tlj_even(6);
    std::vector<double> dims = good.dims();
    dims[1] += 0.25;
    const FusionRing bad(good.name(), good.labels(), {0, 1, 2}, [&good](std::size_t a, std::size_t b) { return good.product(a, b); },
                         dims);
    const auto failures = check_axioms(bad);
    REQUIRE_FALSE(failures.empty());
    bool dimension = false;
    for (const auto& f : failures) dimension |= f.axiom == "dimension";
    CHECK(dimension);
}

TEST_CASE("A_infinity windows: Chebyshev dims and clipping at the edge", "[fusion]") {
    const FusionRing w = a_infinity_window(12, 2.0, true);
    CHECK(w.truncated());
    for (std::size_t k = 0; k < 12; ++k) CHECK(w.dims()[k] == Catch::Approx(static_cast<double>(k + 1)));
    CHECK(chebyshev_dim(3) == IntPoly::delta() * IntPoly::delta() * IntPoly::delta() - IntPoly(2) * IntPoly::delta());
    REQUIRE(w.exact_dims());
    CHECK((*w.exact_dims())[4] == chebyshev_dim(4));
    CHECK_FALSE(w.product(1, 5).clipped);
    CHECK(w.product(1, 11).clipped);
    CHECK(w.product(1, 11).terms == std::vector<std::pair<std::size_t, unsigned>>{{10, 1}});
    CHECK(check_axioms(w).empty());
    CHECK_THROWS_AS(beta0(w), TruncationInconclusive);
    // delta = 3: d_k = (phi^(k+1) - phi^-(k+1)) / sqrt 5 with phi^2 - 3 phi + 1 = 0
    const FusionRing w3 = a_infinity_window(10, 3.0);
    const double phi = (3 + std::sqrt(5.0)) / 2;
    for (std::size_t k = 0; k < 10; ++k)
        CHECK(w3.dims()[k] == Catch::Approx((std::pow(phi, k + 1.0) - std::pow(phi, -(k + 1.0))) / std::sqrt(5.0)));
}

TEST_CASE("product rings multiply global indices", "[fusion]") {
    const FusionRing p = product(tlj_even(5), from_group(GroupTable::builtin("Z2")));
    CHECK(p.size() == 6);
    CHECK(check_axioms(p).empty());
    CHECK(p.global_index() == Catch::Approx(12.0));
    for (int n = 3; n <= 8; ++n)
        CHECK(product(tlj_even(n), tlj_even(n)).global_index() == Catch::Approx(tlj_even(n).global_index() * tlj_even(n).global_index()));
}

TEST_CASE("Hochschild witness: the derivative functional kills boundaries", "[fusion][oracle]") {
    const HochschildWitness w = hochschild_h1_witness(6);
    CHECK(w.functional_vanishes_on_boundaries);
    CHECK(w.nonvanishing.empty());
    CHECK(w.witness_cycle_value == RatFunc(1));
    CHECK(w.boundaries_checked == 28);
    // independent evaluation at several loop values: d/dt of the boundary at t = x
    for (double x : {2.0, 2.5, 3.75})
        for (unsigned i = 0; i <= 6; ++i)
            for (unsigned j = 0; j <= 6; ++j) {
                const double lhs = std::pow(x, i) * j * std::pow(x, j - 1.0) - (i + j) * std::pow(x, i + j - 1.0) +
                                   std::pow(x, j) * i * std::pow(x, i - 1.0);
                CHECK(std::fabs(lhs) < 1e-9 * std::pow(x, 12));
                CHECK(derivative_functional(hochschild_boundary(i, j)).is_zero());
            }
}
