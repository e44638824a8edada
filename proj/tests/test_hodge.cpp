#include <random>

#include "doctest.h"
#include "periodforge/hodge.hpp"
#include "support.hpp"

using namespace pf;
using pftest::cm2;
using pftest::real1;

namespace {

std::vector<std::string> codes(const HodgeFamily& f) {
    std::vector<std::string> out;
    for (auto& v : validate_family(f)) out.push_back(v.code);
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& c) { return std::find(v.begin(), v.end(), c) != v.end(); }

}  // namespace

TEST_SUITE("hodge") {

TEST_CASE("validate: ok and purity violation") {
    CHECK(codes(real1(0, {-1, 0, 1}, 1)).empty());

    HodgeFamily bad;
    bad.profile = FieldProfile::totally_real(1);
    bad.rank = 2;
    bad.weight = 2;
    bad.types.push_back(HodgeType(2, {{0, 2}, {1, 0}}));
    auto v = validate_family(bad);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].code == "PurityViolation");
    CHECK(v[0].where.find("(1,0)") != std::string::npos);
}

TEST_CASE("validate: conjugation asymmetry on CM") {
    auto f = family_from_p(FieldProfile::cm(2), 1, {{-1, 2}, {-2, 3}});
    CHECK(has(codes(f), "ConjugationAsymmetry"));
    CHECK(codes(cm2(1, {-1, 2})).empty());
}

TEST_CASE("validate: diagonal sign rules") {
    CHECK(has(codes(real1(0, {-1, 0, 1})), "DiagSignMissing"));
    auto two = family_from_p(FieldProfile::totally_real(2), 0, {{0}, {0}}, {{0, 1}, {1, -1}});
    CHECK(has(codes(two), "DiagSignInconsistent"));
    auto cmdiag = family_from_p(FieldProfile::cm(2), 0, {{0}, {0}});
    CHECK(has(codes(cmdiag), "ComplexDiagonalPresent"));
}

TEST_CASE("conjugate") {
    HodgeType a(0, {{-1, 1}, {1, -1}});
    CHECK(conjugate(a) == a);
    HodgeType b(-1, {{-2, 1}, {0, -1}});
    CHECK(conjugate(b) == HodgeType(-1, {{-1, 0}, {1, -2}}));
    HodgeType c(2, {{0, 2}, {1, 1}, {2, 0}});
    CHECK(conjugate(c) == c);
    CHECK(conjugate(conjugate(b)) == b);
}

TEST_CASE("tensor against pairwise enumeration") {
    HodgeType a(0, {{-2, 2}, {0, 0}, {2, -2}}), b(0, {{-1, 1}, {1, -1}});
    auto t = tensor(a, b);
    CHECK(t.weight == 0);
    CHECK(t.pairs == std::vector<HodgePair>{{-3, 3}, {-1, 1}, {-1, 1}, {1, -1}, {1, -1}, {3, -3}});
    CHECK(t.pairs == pftest::brute_tensor(a.pairs, b.pairs));
    CHECK(tensor(a, HodgeType(0, {{0, 0}})) == a);
    CHECK(tensor(HodgeType(1, {{0, 1}}), HodgeType(1, {{1, 0}})) == HodgeType(2, {{1, 1}}));

    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        auto rnd = [&] {
            int w = static_cast<int>(rng() % 7) - 3;
            int r = 1 + static_cast<int>(rng() % 4);
            std::vector<HodgePair> ps;
            for (int i = 0; i < r; ++i) {
                int p = static_cast<int>(rng() % 9) - 4;
                ps.emplace_back(p, w - p);
            }
            return HodgeType(w, ps);
        };
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK(tensor(x, y) == tensor(y, x));
        CHECK(tensor(tensor(x, y), z) == tensor(x, tensor(y, z)));
        CHECK(tensor(x, y).rank() == x.rank() * y.rank());
        CHECK(tensor(x, y).pairs == pftest::brute_tensor(x.pairs, y.pairs));
    }
}

TEST_CASE("tate twist") {
    HodgeType a(0, {{-1, 1}, {1, -1}});
    CHECK(tate_twist(a, 0) == a);
    CHECK(tate_twist(HodgeType(0, {{0, 0}}), 1) == HodgeType(-2, {{-1, -1}}));
    CHECK(tate_twist(a, -2) == HodgeType(4, {{1, 3}, {3, 1}}));
    CHECK(tate_twist(tate_twist(a, 3), -5) == tate_twist(a, -2));
}

TEST_CASE("filtration shape") {
    auto s = filtration_shape(real1(2, {0, 1, 2}, 1), 0);
    CHECK(s.jumps == std::vector<int>{0, 1, 2});
    CHECK(s.mults == std::vector<int>{1, 1, 1});
    CHECK(s.dstar == 3);

    auto r = filtration_shape(real1(1, {0, 0, 1, 1}), 0);
    CHECK(r.jumps == std::vector<int>{0, 1});
    CHECK(r.mults == std::vector<int>{2, 2});
    CHECK(r.dstar == 4);

    // raw union at a complex place, no validation involved
    auto c = filtration_shape(family_from_p(FieldProfile::cm(2), 0, {{-2, 0, 2}, {-2, 0, 2}}), 0);
    CHECK(c.jumps == std::vector<int>{-2, 0, 2});
    CHECK(c.mults == std::vector<int>{2, 2, 2});
    CHECK(c.dstar == 6);

    CHECK(pftest::error_code([] { filtration_shape(real1(0, {0}, 1), 3); }) == "InvalidPlace");
}

TEST_CASE("filtration mults are palindromic on valid CM data") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
        int w = static_cast<int>(rng() % 5) * 2 - 3;  // odd: no diagonal possible
        std::vector<int> p;
        for (int i = 0; i < 1 + static_cast<int>(rng() % 5); ++i) p.push_back(static_cast<int>(rng() % 9) - 4);
        std::sort(p.begin(), p.end());
        auto f = cm2(w, p);
        REQUIRE(validate_family(f).empty());
        auto m = filtration_shape(f, 0).mults;
        CHECK(std::equal(m.begin(), m.end(), m.rbegin()));
    }
}

TEST_CASE("eigen dims") {
    auto c = cm2(1, {-2, 0, 2});
    CHECK(eigen_dims(c, 0) == std::pair{3, 3});
    CHECK(eigen_dims(real1(0, {-2, 0, 2}, 1), 0) == std::pair{2, 1});
    CHECK(eigen_dims(real1(0, {-2, 0, 2}, -1), 0) == std::pair{1, 2});
    CHECK(eigen_dims(real1(1, {-1, 2}), 0) == std::pair{1, 1});
    CHECK(pftest::error_code([] { eigen_dims(real1(0, {0}), 0); }) == "DiagSignMissing");
}

TEST_CASE("restriction of scalars") {
    auto f = family_from_p(FieldProfile::cm(2), -1, {{-1}, {0}});
    auto g = restrict_scalars(f, RestrictTarget::Fplus);
    CHECK(g.profile.kind() == FieldKind::TotallyReal);
    CHECK(g.rank == 2);
    CHECK(g.at(0) == HodgeType(-1, {{-1, 0}, {0, -1}}));

    auto r = real1(0, {-1, 1});
    auto rq = restrict_scalars(r, RestrictTarget::Q);
    CHECK(rq.rank == 2);
    CHECK(rq.at(0) == r.at(0));

    auto c = cm2(1, {-1, 2});
    auto cq = restrict_scalars(c, RestrictTarget::Q);
    CHECK(cq.rank == 4);
    CHECK(cq.at(0).pairs == std::vector<HodgePair>{{-1, 2}, {-1, 2}, {2, -1}, {2, -1}});

    CHECK(pftest::error_code([&] { restrict_scalars(r, RestrictTarget::Fplus); }) == "ProfileMismatch");
}

TEST_CASE("shapes survive conjugation-equivariant relabelling") {
    // swap the two complex places of a degree-4 CM profile
    auto prof = FieldProfile::cm(4);
    std::vector<std::vector<int>> p{{-1, 2}, conjugate_p({-1, 2}, 1), {-3, 0}, conjugate_p({-3, 0}, 1)};
    auto f = family_from_p(prof, 1, p);
    auto g = family_from_p(prof, 1, {p[2], p[3], p[0], p[1]});
    REQUIRE(validate_family(g).empty());
    std::multiset<std::vector<int>> a, b;
    for (int k = 0; k < 2; ++k) {
        a.insert(filtration_shape(f, k).mults);
        b.insert(filtration_shape(g, k).mults);
    }
    CHECK(a == b);
}

TEST_CASE("json round trip is canonical") {
    auto f = cm2(1, {-1, 2});
    auto j = family_to_json(f);
    auto g = family_from_json(j);
    CHECK(family_to_json(g) == j);
    CHECK(j["types"]["tau1"] == nlohmann::json::parse("[[-1,2],[2,-1]]"));
}

}  // TEST_SUITE
