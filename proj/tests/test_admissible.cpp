#include "doctest.h"
#include "periodforge/admissible.hpp"
#include "support.hpp"

using namespace pf;

namespace {

AdmissibleType ty(std::vector<int> s, int dp, int dm, std::vector<int> a, int kp, int km) {
    AdmissibleType t;
    t.s = std::move(s);
    t.dplus = dp;
    t.dminus = dm;
    t.a = std::move(a);
    t.kplus = kp;
    t.kminus = km;
    return t;
}

// every exponent vector with entries <= bound whose weighted sum hits target
std::vector<BasisDecomposition> brute(const AdmissibleType& target, int bound) {
    const int t = target.t();
    const int tp = target.tplus(), tm = target.tminus();
    const int nb = std::min(tp, tm);
    std::vector<AdmissibleType> basis{basis_type(BasisKind::Det, 0, target.s, target.dplus, target.dminus),
                                      basis_type(BasisKind::FPlus, 0, target.s, target.dplus, target.dminus),
                                      basis_type(BasisKind::FMinus, 0, target.s, target.dplus, target.dminus)};
    for (int b = 1; b <= nb && 2 * b <= t; ++b)
        basis.push_back(basis_type(BasisKind::FBeta, b, target.s, target.dplus, target.dminus));
    std::vector<BasisDecomposition> out;
    std::vector<int> e(basis.size(), 0);
    while (true) {
        std::vector<int> a(t, 0);
        int kp = 0, km = 0;
        for (size_t i = 0; i < basis.size(); ++i) {
            for (int j = 0; j < t; ++j) a[j] += e[i] * basis[i].a[j];
            kp += e[i] * basis[i].kplus;
            km += e[i] * basis[i].kminus;
        }
        if (a == target.a && kp == target.kplus && km == target.kminus) {
            BasisDecomposition d;
            d.m_det = e[0];
            d.m_plus = e[1];
            d.m_minus = e[2];
            for (size_t i = 3; i < basis.size(); ++i)
                if (e[i]) d.m_beta[static_cast<int>(i) - 2] = e[i];
            out.push_back(d);
        }
        size_t i = 0;
        while (i < e.size() && e[i] == bound) e[i++] = 0;
        if (i == e.size()) break;
        ++e[i];
    }
    return out;
}

}  // namespace

TEST_SUITE("admissible") {

TEST_CASE("is_admissible examples") {
    CHECK(is_admissible(ty({1, 1, 1}, 2, 1, {1, 1, 1}, 1, 1)).ok);
    CHECK(is_admissible(ty({1, 1, 1}, 2, 1, {2, 1, 0}, 1, 1)).ok);
    auto r = is_admissible(ty({1, 1, 1}, 2, 1, {1, 0, 1}, 1, 0));
    CHECK_FALSE(r.ok);
    CHECK(r.failed == 'a');
}

TEST_CASE("split must land on a block boundary") {
    auto t = ty({2, 1}, 1, 2, {1, 1}, 1, 1);
    CHECK(pftest::error_code([&] { (void)t.tplus(); }) == "SplitNotOnBoundary");
}

TEST_CASE("basis types") {
    auto det = basis_type(BasisKind::Det, 0, {1, 1, 1, 1}, 2, 2);
    CHECK(det.a == std::vector<int>{1, 1, 1, 1});
    CHECK((det.kplus == 1 && det.kminus == 1));
    auto fp = basis_type(BasisKind::FPlus, 0, {1, 1, 1}, 2, 1);
    CHECK(fp.a == std::vector<int>{1, 1, 0});
    CHECK((fp.kplus == 1 && fp.kminus == 0));
    auto f2 = basis_type(BasisKind::FBeta, 2, {1, 1, 1, 1}, 2, 2);
    CHECK(f2.a == std::vector<int>{2, 2, 0, 0});
    CHECK((f2.kplus == 1 && f2.kminus == 1));
    for (auto& b : {det, fp, f2}) CHECK(is_admissible(b).ok);
    CHECK(pftest::error_code([] { basis_type(BasisKind::FBeta, 2, {1, 1, 1}, 2, 1); }) == "BetaOutOfRange");
}

TEST_CASE("decompose examples") {
    auto d1 = decompose(ty({1, 1, 1}, 2, 1, {1, 1, 1}, 1, 1));
    CHECK(d1.m_det == 1);
    CHECK((d1.m_plus == 0 && d1.m_minus == 0 && d1.m_beta.empty()));

    auto t2 = ty({1, 1, 1, 1}, 2, 2, {3, 2, 1, 0}, 2, 1);
    auto d2 = decompose(t2);
    CHECK(d2.m_det == 0);
    CHECK(d2.m_plus == 1);
    CHECK(d2.m_minus == 0);
    CHECK(d2.m_beta == std::map<int, int>{{1, 1}});
    CHECK(recompose(d2, t2.s, 2, 2) == t2);

    auto t3 = ty({1, 1, 1}, 2, 1, {3, 2, 1}, 2, 2);
    auto d3 = decompose(t3);
    CHECK(d3.m_det == 1);
    CHECK(d3.m_beta == std::map<int, int>{{1, 1}});
    CHECK(recompose(d3, t3.s, 2, 1) == t3);

    CHECK(pftest::error_code([] { decompose(ty({1, 1, 1}, 2, 1, {1, 0, 1}, 1, 0)); }) == "NotAdmissible");
}

TEST_CASE("decompose_all agrees with bounded brute force") {
    // small shapes, every type reachable with exponents <= 2
    for (auto [s, dp, dm] : std::vector<std::tuple<std::vector<int>, int, int>>{
             {{1, 1, 1}, 2, 1}, {{1, 1, 1, 1}, 2, 2}, {{1, 2, 1}, 3, 1}, {{2, 2}, 2, 2}, {{1, 1, 1, 1, 1}, 3, 2}}) {
        std::set<std::pair<std::vector<int>, std::pair<int, int>>> seen;
        // walk the monoid with exponents <= 2 and compare both directions
        AdmissibleType zero = ty(s, dp, dm, std::vector<int>(s.size(), 0), 0, 0);
        int nb = std::min(zero.tplus(), zero.tminus());
        if (2 * nb > zero.t()) nb = zero.t() / 2;
        std::vector<int> e(3 + nb, 0);
        while (true) {
            BasisDecomposition d;
            d.m_det = e[0];
            d.m_plus = e[1];
            d.m_minus = e[2];
            for (int b = 1; b <= nb; ++b)
                if (e[2 + b]) d.m_beta[b] = e[2 + b];
            auto t = recompose(d, s, dp, dm);
            if (seen.insert({t.a, {t.kplus, t.kminus}}).second) {
                CHECK(is_admissible(t).ok);
                auto all = decompose_all(t);
                int bound = std::max(t.a.empty() ? 0 : t.a[0], t.kplus + t.kminus);
                auto bf = brute(t, bound);
                CHECK(all.size() == bf.size());
                for (auto& x : bf) CHECK(std::find(all.begin(), all.end(), x) != all.end());
                CHECK(recompose(decompose(t), s, dp, dm) == t);
            }
            size_t i = 0;
            while (i < e.size() && e[i] == 2) e[i++] = 0;
            if (i == e.size()) break;
            ++e[i];
        }
    }
}

TEST_CASE("canonical representative folds f+ f- into f_min") {
    // t+ + t- = t: f_1 and f+ f- share a type on s=(1,1) split (1,1)
    auto t = ty({1, 1}, 1, 1, {2, 0}, 1, 1);
    auto all = decompose_all(t);
    CHECK(all.size() == 2);
    auto d = decompose(t);
    CHECK(d.m_plus == 0);
    CHECK(d.m_minus == 0);
    CHECK(d.m_beta == std::map<int, int>{{1, 1}});
}

TEST_CASE("non-complementary splits still decompose") {
    // s=(2,1,1), d+ = d- = 2: t+ = t- = 1 with t = 3
    auto z = ty({2, 1, 1}, 2, 2, {0, 0, 0}, 0, 0);
    REQUIRE(z.tplus() + z.tminus() != z.t());
    int seen = 0;
    for (int a1 = 0; a1 <= 4; ++a1)
        for (int a2 = 0; a2 <= a1; ++a2)
            for (int a3 = 0; a3 <= a2; ++a3)
                for (int kp = 0; kp <= 4; ++kp)
                    for (int km = 0; km <= 4; ++km) {
                        auto t = ty({2, 1, 1}, 2, 2, {a1, a2, a3}, kp, km);
                        if (!is_admissible(t).ok) continue;
                        ++seen;
                        CHECK(recompose(decompose(t), t.s, 2, 2) == t);
                        CHECK(decompose_all(t).size() == 1);
                    }
    CHECK(seen > 10);
}

TEST_CASE("tensor factor counts on the worked example") {
    FiltrationShape M{{-2, 0, 2}, {1, 1, 1}, 3}, N{{-1, 1}, {1, 1}, 2};
    auto ft = tensor_factor_types(M, {2, 1}, N, {1, 1}, {-1, 1}, {-2, 0, 2}, 1);
    CHECK(ft.phi_plus.a == std::vector<int>{2, 1, 0});
    CHECK(ft.psi_plus.a == std::vector<int>{2, 1});
    // naive count
    std::vector<int> a;
    for (int i : M.jumps) {
        int c = 0;
        for (int w : {-1, 1}) c += (i + w < 1);
        a.push_back(c);
    }
    CHECK(ft.phi_plus.a == a);
    CHECK(is_admissible(ft.phi_plus).ok);
    CHECK(is_admissible(ft.psi_plus).ok);
}

TEST_CASE("json") {
    auto t = admissible_from_json(nlohmann::json::parse(R"({"s":[1,1,1],"split":[2,1],"a":[2,1,0],"k":[1,1]})"));
    CHECK(t == ty({1, 1, 1}, 2, 1, {2, 1, 0}, 1, 1));
    CHECK(admissible_from_json(admissible_to_json(t)) == t);
}

}  // TEST_SUITE
