#include "doctest.h"
#include "periodforge/automorphic.hpp"
#include "periodforge/theorem.hpp"
#include "support.hpp"

using namespace pf;
using pftest::real1;

namespace {

using PE = PeriodExpression;
using PA = PeriodAtom;

int first_crit(const HodgeFamily& a, const HodgeFamily& b, int parity = -1) {
    for (int m = -20; m <= 20; ++m)
        if (gamma_critical(a, b, m) && (parity < 0 || ((m % 2) + 2) % 2 == parity)) return m;
    return 1000;
}

}  // namespace

TEST_SUITE("theorem") {

TEST_CASE("ids") {
    CHECK(rep_id(3) == "pi3");
    CHECK(rep_id(3, true) == "pi3^rho");
    CHECK(motive_id(2) == "M2");
    CHECK(motive_id(2, true) == "M2^rho");
}

TEST_CASE("n = 1, totally real: solves to c^{-e}(Res M2)") {
    auto M2 = real1(0, {-1, 1}), M1 = real1(0, {0}, 1);
    for (int parity : {0, 1}) {
        int m = first_crit(M2, M1, parity);
        REQUIRE(m != 1000);
        const Sign e2 = Sign::symbol(2);
        const Sign e1 = Sign::of(m % 2 ? -1 : 1) * e2;  // e2 e1 = (-1)^{m+2}
        auto rel = product_relation(1, M2, M1, e2, e1, m);
        KnownMap known{{rep_id(1), {0, PE()}}};
        auto sol = solve_step(rel, known, 2);
        CHECK(sol.rep == "pi2");
        CHECK(sol.value.symbol == 2);
        CHECK_FALSE(sol.halved);
        CHECK(sol.value.expr == closed_form(M2, 2));
        CHECK(sol.value.expr.exponent(PA::deligne("M2", Sign::symbol(2, -1))) == 1);
    }
}

TEST_CASE("sign condition is enforced") {
    auto M2 = real1(0, {-1, 1}), M1 = real1(0, {0}, 1);
    int m = first_crit(M2, M1);
    const Sign e2 = Sign::symbol(2);
    const Sign wrong = Sign::of(m % 2 ? 1 : -1) * e2;
    CHECK(pftest::error_code([&] { product_relation(1, M2, M1, e2, wrong, m); }) == "SignConditionFailed");
    CHECK(pftest::error_code([&] { product_relation(1, M2, M1, e2, e2, 50); }) == "NotCritical");
}

TEST_CASE("solve_step guards") {
    PeriodRelation two;
    two.lhs = PE(PA::whittaker("pi2", Sign::plus())) * PE(PA::whittaker("pi1", Sign::plus()));
    two.rhs = two_pi_i_pow(2);
    CHECK(pftest::error_code([&] { solve_step(two, {}, 2); }) == "MultipleUnknowns");

    PeriodRelation odd;
    odd.lhs = PE(PA::whittaker("pi2", Sign::plus()), 2);
    odd.rhs = two_pi_i_pow(3);
    CHECK(pftest::error_code([&] { solve_step(odd, {}, 2); }) == "OddExponent");

    PeriodRelation even = odd;
    even.rhs = two_pi_i_pow(4);
    auto s = solve_step(even, {}, 2);
    CHECK(s.halved);
    CHECK(s.value.expr == two_pi_i_pow(2));
}

TEST_CASE("sign substitution and renaming") {
    PE e(PA::deligne("M2", Sign::symbol(2, -1)));
    CHECK(substitute_sign(e, 2, Sign::minus()) == PE(PA::deligne("M2", Sign::plus())));
    CHECK(rename_motive(e, "M2", "M7") == PE(PA::deligne("M7", Sign::symbol(2, -1))));
}

TEST_CASE("closed forms") {
    auto M1 = real1(0, {0}, 1);
    CHECK(closed_form(M1, 1).is_one());
    auto M3 = real1(0, {-2, 0, 2}, 1);
    auto c3 = closed_form(M3, 3);
    CHECK(c3.two_pi_i_exponent() == -4);
    // c_1 may come back folded into c+ c- on this shape
    bool beta = c3.exponent(PA::cbeta("M3", "tau0", 1)) == 1;
    bool folded = c3.exponent(PA::cpm("M3", "tau0", Sign::plus())) == 1 &&
                  c3.exponent(PA::cpm("M3", "tau0", Sign::minus())) == 1;
    CHECK(beta != folded);
}

TEST_CASE("chains, short") {
    auto r = verify_chain(FieldKind::TotallyReal, 1, 3, 7);
    CHECK(r.pass());
    CHECK(r.steps.size() == 2);
    for (auto& s : r.steps) {
        CHECK(s.match);
        CHECK(s.invariants_ok);
        CHECK_FALSE(s.halved);
    }
    auto c = verify_chain(FieldKind::CM, 2, 3, 7);
    CHECK(c.pass());
    for (auto& s : c.steps) CHECK(s.halved);
    CHECK(chain_to_json(c)["seed"] == 7);
    CHECK(pftest::error_code([] { verify_chain(FieldKind::TotallyReal, 1, 1, 1); }) == "PreconditionFailed");
}

TEST_CASE("chains are reproducible") {
    CHECK(chain_to_json(verify_chain(FieldKind::TotallyReal, 2, 4, 11)) ==
          chain_to_json(verify_chain(FieldKind::TotallyReal, 2, 4, 11)));
}

}  // TEST_SUITE
