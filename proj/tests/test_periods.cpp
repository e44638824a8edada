#include "doctest.h"
#include "periodforge/gen.hpp"
#include "periodforge/periods.hpp"
#include "support.hpp"

using namespace pf;
using pftest::real1;

namespace {

using PA = PeriodAtom;
using PE = PeriodExpression;

// lambda straight from the definition, p sorted ascending per embedding
int brute_lambda(const HodgeFamily& f) {
    int s = 0;
    for (auto& t : f.types) {
        std::vector<int> p;
        for (auto& pr : t.pairs) p.push_back(pr.first);
        std::sort(p.begin(), p.end());
        for (size_t i = 0; i < p.size(); ++i) s += p[i] * static_cast<int>(p.size() - 1 - i);
    }
    return s;
}

}  // namespace

TEST_SUITE("periods") {

TEST_CASE("group arithmetic") {
    PE e = PE(PA::delta("N", "tau0")) * PE(PA::cpm("M", "tau0", Sign::minus()), 3) * two_pi_i_pow(-2);
    CHECK((e * e.inverse()).is_one());
    CHECK(e.pow(0).is_one());
    CHECK((PE(PA::delta("N", "tau0")) * PE(PA::delta("N", "tau0"))).exponent(PA::delta("N", "tau0")) == 2);
    CHECK((e / e).is_one());
    CHECK(parse_expression(e.str()) == e);
    CHECK(PA::cbeta("M", "tau0", 0) == PA::delta("M", "tau0"));
    CHECK(parse_expression("1").is_one());
}

TEST_CASE("canonical text") {
    PE e = PE(PA::delta("N", "tau0")) * PE(PA::cpm("N", "tau0", Sign::plus())) * PE(PA::cbeta("M", "tau0", 1));
    CHECK(e.str() == "c1[M,tau0]^1 * cp[N,tau0,+]^1 * delta[N,tau0]^1");
}

TEST_CASE("simplify rules") {
    auto C = pftest::cm2(1, {-1, 2});
    PeriodContext ctx{{"M", C}};
    // complex c- collapses to c+
    CHECK(simplify(PE(PA::cpm("M", "tau0", Sign::minus())), ctx) == PE(PA::cpm("M", "tau0", Sign::plus())));
    // the conjugate label is moved to the designated one
    CHECK(simplify(PE(PA::delta("M", "tau1")), ctx) == PE(PA::delta("M", "tau0")));
    // rho twist ids drop the twist
    CHECK(simplify(PE(PA::delta("M^rho", "tau0")), ctx) == PE(PA::delta("M", "tau0")));

    auto R = family_from_p(FieldProfile::totally_real(2), 0, {{-1, 1}, {-2, 2}});
    PeriodContext rctx{{"M", R}};
    CHECK(simplify(PE(PA::deligne("M", Sign::plus())), rctx) ==
          PE(PA::cpm("M", "tau0", Sign::plus())) * PE(PA::cpm("M", "tau1", Sign::plus())));

    auto N = family_from_p(FieldProfile::totally_real(2), -3, {{-2, -1}, {-1, 1}});
    PeriodContext nctx{{"N", N}};
    CHECK(simplify(PE(PA::delta_res("N")), nctx) == two_pi_i_pow(3));

    CHECK(pftest::error_code([] { simplify(PE(PA::delta("X", "tau0")), {}); }) == "MissingContext");
}

TEST_CASE("simplify is idempotent and order independent") {
    auto C = pftest::cm2(1, {-3, 0, 2});
    auto R = real1(0, {-2, 0, 2}, 1);
    PeriodContext ctx{{"C", C}, {"R", R}};
    std::vector<PA> atoms{PA::cpm("C", "tau1", Sign::minus()), PA::cpm("C^rho", "tau0", Sign::plus()),
                          PA::cbeta("C", "tau1", 1),           PA::delta("R", "tau0"),
                          PA::deligne("R", Sign::minus()),      PA::delta_res("C"),
                          PA::cbeta("R", "tau0", 1),           PA::two_pi_i()};
    gen::Rng rng(2);
    for (int k = 0; k < 200; ++k) {
        PE e;
        std::vector<PE> parts;
        for (auto& a : atoms) {
            PE x(a, gen::uniform(rng, -2, 2));
            e *= x;
            parts.push_back(x);
        }
        auto s = simplify(e, ctx);
        CHECK(simplify(s, ctx) == s);
        // simplify piecewise in reverse order, multiply, simplify again
        PE piecewise;
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) piecewise *= simplify(*it, ctx);
        CHECK(simplify(piecewise, ctx) == s);
    }
}

TEST_CASE("lambda") {
    CHECK(lambda_of(real1(3, {1})) == 0);
    auto two = family_from_p(FieldProfile::totally_real(2), 0, {{-1, 1}, {-1, 1}});
    CHECK(lambda_of(two) == -2);
    CHECK(lambda_of(real1(0, {-2, 0, 2}, 1)) == -4);
    gen::Rng rng(8);
    for (int k = 0; k < 100; ++k) {
        auto [M, N] = gen::interlaced_pair(rng, gen::uniform(rng, 1, 4), FieldProfile::cm(4));
        CHECK(lambda_of(M) == brute_lambda(M));
        // swap the two complex places
        auto M2 = M;
        std::swap(M2.types[0], M2.types[2]);
        std::swap(M2.types[1], M2.types[3]);
        CHECK(lambda_of(M2) == lambda_of(M));
    }
}

TEST_CASE("c tilde") {
    CHECK(c_tilde(real1(0, {0}, 1), "M").is_one());
    CHECK(c_tilde(real1(0, {-1, 1}), "M").is_one());
    CHECK(c_tilde(real1(0, {-2, 0, 2}, 1), "M") == PE(PA::cbeta("M", "tau0", 1)));
    auto five = family_from_p(FieldProfile::totally_real(2), 0, {{-2, -1, 0, 1, 2}, {-4, -1, 0, 1, 4}}, {{0, 1}, {1, 1}});
    auto want = PE(PA::cbeta("M", "tau0", 1)) * PE(PA::cbeta("M", "tau0", 2)) * PE(PA::cbeta("M", "tau1", 1)) *
                PE(PA::cbeta("M", "tau1", 2));
    CHECK(c_tilde(five, "M") == want);
}

TEST_CASE("factorization: worked example") {
    auto f = factorize_tensor(real1(0, {-2, 0, 2}, 1), real1(0, {-1, 1}), 0, 1);
    CHECK(f.q == 1);
    CHECK(f.literal_match);
    CHECK(f.pipeline.str() == "c1[M,tau0]^1 * cp[N,tau0,+]^1 * delta[N,tau0]^1");
    CHECK(f.phi.a == std::vector<int>{2, 1, 0});
    CHECK(f.psi.a == std::vector<int>{2, 1});
}

TEST_CASE("factorization: rank one N, minus sign") {
    auto e = factorize_tensor_cpm(real1(0, {-1, 1}), real1(0, {0}, 1), 0, -1);
    // the table keeps delta(N) to the first power even at rank one
    CHECK(e == PE(PA::cpm("M", "tau0", Sign::minus())) * PE(PA::delta("N", "tau0")));
}

TEST_CASE("factorization: complex place, rank one N") {
    gen::Rng rng(12);
    for (int k = 0; k < 20; ++k) {
        auto [M, N] = gen::interlaced_pair(rng, 1, FieldProfile::cm(2));
        auto f = factorize_tensor(M, N, 0, 1);
        CHECK(f.literal_match);
        CHECK(f.table == PE(PA::delta("N", "tau0"), 2) * PE(PA::cpm("M", "tau0", Sign::plus())) *
                             PE(PA::cpm("M", "tau0", Sign::minus())));
        PeriodContext ctx{{"M", M}, {"N", N}};
        CHECK(simplify(factorize_tensor(M, N, 0, -1).pipeline, ctx) == simplify(f.pipeline, ctx));
    }
}

TEST_CASE("factorization: strict form raises on a literal mismatch") {
    gen::Rng rng(13);
    auto [M, N] = gen::interlaced_pair(rng, 2, FieldProfile::cm(2));
    CHECK(pftest::error_code([&] { factorize_tensor_cpm(M, N, 0, 1); }) == "TableMismatch");
    // the beta-doubled table agrees
    auto f = factorize_tensor(M, N, 0, 1);
    PeriodContext ctx{{"M", M}, {"N", N}};
    CHECK(simplify(f.pipeline, ctx) == simplify(transported_complex_table(M, N, 0, "M", "N"), ctx));
}

}  // TEST_SUITE
