#include "periodforge/automorphic.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

#include "periodforge/error.hpp"

namespace pf {

using nlohmann::json;

namespace {

using K = PlaceParameter::Kind;

bool even(int x) { return x % 2 == 0; }

int parse_half2(const json& v) {
    if (v.is_number_integer()) return 2 * v.get<int>();
    if (v.is_number_float()) {
        double d = 2 * v.get<double>();
        long r = std::lround(d);
        if (static_cast<double>(r) != d) fail("InvalidParameter", "not a half-integer: " + v.dump());
        return static_cast<int>(r);
    }
    if (v.is_string()) {
        auto s = v.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return 2 * std::stoi(s);
            if (s.substr(slash + 1) != "2") fail("InvalidParameter", "denominator must be 2: " + s);
            return std::stoi(s.substr(0, slash));
        } catch (const std::logic_error&) {
            fail("ParseError", "bad number " + s);
        }
    }
    fail("ParseError", "expected a number, got " + v.dump());
}

json half_to_json(int twice) {
    if (even(twice)) return twice / 2;
    return std::to_string(twice) + "/2";
}

std::vector<int> p_list(const HodgeType& t) { return t.p_values(); }

}  // namespace

void validate_parameter(const LanglandsParameter& p) {
    auto bad = [](const std::string& d) { fail("InvalidParameter", d); };
    if (p.n < 1) bad("n must be positive");
    if (p.places.size() != p.profile.places().size()) bad("place count does not match the profile");
    std::optional<int> delta;
    for (size_t k = 0; k < p.places.size(); ++k) {
        const auto& pp = p.places[k];
        const auto where = " at place " + std::to_string(k);
        const bool cx = p.profile.places()[k].complex;
        if (cx != (pp.kind == K::Complex)) bad("place kind disagrees with the profile" + where);
        if (pp.kind == K::Complex) {
            if (static_cast<int>(pp.pairs.size()) != p.n) bad("complex place needs n pairs" + where);
            for (size_t i = 0; i < pp.pairs.size(); ++i) {
                auto [a2, b2] = pp.pairs[i];
                if (a2 + b2 != 2 * p.purity) bad("a + b != w" + where);
                if (!even(a2 - (p.n - 1))) bad("a - (n-1)/2 not integral" + where);
                if (a2 == b2) bad("a = b puts a diagonal at a complex place" + where);
                if (i > 0 && pp.pairs[i - 1].first >= a2) bad("a not strictly increasing" + where);
            }
            continue;
        }
        const bool odd = pp.kind == K::RealOdd;
        if (odd != (p.n % 2 == 1)) bad("real place kind does not match the parity of n" + where);
        if (static_cast<int>(pp.pairs.size()) != p.n / 2) bad("wrong number of (nu, l) pairs" + where);
        if (odd) {
            if (pp.delta != 0 && pp.delta != 1) bad("delta must be 0 or 1" + where);
            if (delta && *delta != pp.delta) bad("real places carry different delta");
            delta = pp.delta;
            if (!even(p.purity - p.n + 1)) bad("middle Hodge number not integral" + where);
        }
        for (size_t i = 0; i < pp.pairs.size(); ++i) {
            auto [nu2, l] = pp.pairs[i];
            if (nu2 != p.purity) bad("nu != w/2" + where);
            if (l < 1) bad("l must be >= 1" + where);
            if (i > 0 && pp.pairs[i - 1].second <= l) bad("l not strictly decreasing" + where);
            if (!even(p.purity - l - p.n + 1)) bad("(w - l - n + 1)/2 not integral" + where);
        }
    }
}

LanglandsParameter parameter_from_json(const json& j) {
    try {
        LanglandsParameter p;
        p.n = j.at("n").get<int>();
        p.purity = j.at("purity").get<int>();
        bool any_real = false, any_cx = false;
        for (auto& pj : j.at("places")) {
            PlaceParameter pp;
            auto kind = pj.at("kind").get<std::string>();
            if (kind == "real_even") pp.kind = K::RealEven;
            else if (kind == "real_odd") pp.kind = K::RealOdd;
            else if (kind == "complex") pp.kind = K::Complex;
            else fail("ParseError", "unknown place kind " + kind);
            pp.delta = pj.value("delta", 0);
            for (auto& pr : pj.at("pairs")) {
                if (!pr.is_array() || pr.size() != 2) fail("ParseError", "pairs must be 2-element arrays");
                if (pp.kind == K::Complex) pp.pairs.emplace_back(parse_half2(pr[0]), parse_half2(pr[1]));
                else pp.pairs.emplace_back(parse_half2(pr[0]), pr[1].get<int>());
            }
            (pp.kind == K::Complex ? any_cx : any_real) = true;
            p.places.push_back(pp);
        }
        if (any_real && any_cx) fail("InvalidParameter", "mixed real and complex places are not a supported profile");
        const int k = static_cast<int>(p.places.size());
        p.profile = any_cx ? FieldProfile::cm(2 * k) : FieldProfile::totally_real(k);
        if (j.contains("profile")) {
            auto want = j["profile"].get<std::string>();
            if ((want == "cm") != any_cx) fail("InvalidParameter", "profile tag disagrees with the places");
        }
        validate_parameter(p);
        return p;
    } catch (const json::exception& e) {
        fail("ParseError", e.what());
    }
}

json parameter_to_json(const LanglandsParameter& p) {
    json places = json::array();
    for (auto& pp : p.places) {
        json o;
        o["kind"] = pp.kind == K::Complex ? "complex" : (pp.kind == K::RealOdd ? "real_odd" : "real_even");
        if (pp.kind == K::RealOdd) o["delta"] = pp.delta;
        json prs = json::array();
        for (auto [x, y] : pp.pairs)
            prs.push_back(pp.kind == K::Complex ? json::array({half_to_json(x), half_to_json(y)})
                                                : json::array({half_to_json(x), y}));
        o["pairs"] = prs;
        places.push_back(o);
    }
    return {{"n", p.n},
            {"purity", p.purity},
            {"profile", p.profile.kind() == FieldKind::CM ? "cm" : "real"},
            {"places", places}};
}

void validate_weight(const WeightVector& mu) {
    if (static_cast<int>(mu.mu.size()) != mu.profile.degree()) fail("InvalidParameter", "one weight per embedding");
    for (int e = 0; e < mu.profile.degree(); ++e) {
        const auto& v = mu.at(e);
        if (static_cast<int>(v.size()) != mu.n) fail("InvalidParameter", "weight length != n");
        for (int i = 0; i + 1 < mu.n; ++i)
            if (v[i] < v[i + 1]) fail("NotDominant", "at " + mu.profile.label(e));
        const auto& c = mu.at(mu.profile.conj(e));
        for (int i = 0; i < mu.n; ++i)
            if (c[i] != mu.w - v[mu.n - 1 - i]) fail("NotPure", "at " + mu.profile.label(e));
    }
}

WeightVector dual_weight(const WeightVector& mu) {
    WeightVector out = mu;
    out.w = -mu.w;
    for (auto& v : out.mu) {
        std::reverse(v.begin(), v.end());
        for (int& x : v) x = -x;
    }
    return out;
}

json weight_to_json(const WeightVector& mu) {
    json j;
    j["n"] = mu.n;
    j["purity"] = mu.w;
    j["profile"] = mu.profile.kind() == FieldKind::CM ? "cm" : "real";
    j["degree"] = mu.profile.degree();
    j["mu"] = mu.mu;
    return j;
}

WeightVector weight_from_json(const json& j) {
    try {
        WeightVector mu;
        mu.n = j.at("n").get<int>();
        mu.w = j.at("purity").get<int>();
        auto prof = j.at("profile").get<std::string>();
        mu.mu = j.at("mu").get<std::vector<std::vector<int>>>();
        int deg = j.value("degree", static_cast<int>(mu.mu.size()));
        if (prof == "cm") mu.profile = FieldProfile::cm(deg);
        else if (prof == "real") mu.profile = FieldProfile::totally_real(deg);
        else fail("ParseError", "profile must be real or cm");
        validate_weight(mu);
        return mu;
    } catch (const json::exception& e) {
        fail("ParseError", e.what());
    }
}

HodgeFamily hodge_from_parameter(const LanglandsParameter& p) {
    validate_parameter(p);
    const int wm = p.motivic_weight();
    std::vector<std::vector<int>> ps(p.profile.degree());
    std::map<int, int> diag;
    for (size_t k = 0; k < p.places.size(); ++k) {
        const auto& pl = p.profile.places()[k];
        const auto& pp = p.places[k];
        if (pp.kind == K::Complex) {
            for (auto [a2, b2] : pp.pairs) {
                ps[pl.rep].push_back((a2 - (p.n - 1)) / 2);
                ps[pl.other].push_back((b2 - (p.n - 1)) / 2);
            }
        } else {
            for (auto [nu2, l] : pp.pairs) {
                ps[pl.rep].push_back((p.purity - l - p.n + 1) / 2);
                ps[pl.rep].push_back((p.purity + l - p.n + 1) / 2);
            }
            if (pp.kind == K::RealOdd) {
                ps[pl.rep].push_back((p.purity - p.n + 1) / 2);
                diag[pl.rep] = pp.delta ? -1 : 1;
            }
        }
    }
    for (auto& v : ps) std::sort(v.begin(), v.end());
    auto f = family_from_p(p.profile, wm, ps, diag);
    require_valid(f);
    return f;
}

WeightVector weight_from_hodge(const HodgeFamily& f) {
    WeightVector mu;
    mu.n = f.rank;
    mu.w = f.weight + f.rank - 1;
    mu.profile = f.profile;
    for (auto& t : f.types) {
        auto p = p_list(t);
        std::vector<int> v;
        // q_i = w - p_i decreasing; mu_i = q_i + i - 1
        for (int i = 0; i < f.rank; ++i) v.push_back(f.weight - p[i] + i);
        mu.mu.push_back(v);
    }
    return mu;
}

WeightVector highest_weight_from_parameter(const LanglandsParameter& p) {
    auto mu = weight_from_hodge(hodge_from_parameter(p));
    validate_weight(mu);
    return mu;
}

LanglandsParameter parameter_from_weight(const WeightVector& mu, int delta) {
    validate_weight(mu);
    LanglandsParameter p;
    p.n = mu.n;
    p.purity = mu.w;
    p.profile = mu.profile;
    const int wm = mu.w - (mu.n - 1);
    auto p_at = [&](int e) {
        std::vector<int> out;
        for (int i = 0; i < mu.n; ++i) out.push_back(wm - (mu.at(e)[i] - i));
        std::sort(out.begin(), out.end());
        return out;
    };
    for (auto& pl : mu.profile.places()) {
        PlaceParameter pp;
        auto pv = p_at(pl.rep);
        if (pl.complex) {
            pp.kind = K::Complex;
            for (int x : pv) {
                int a2 = 2 * x + (mu.n - 1);
                pp.pairs.emplace_back(a2, 2 * mu.w - a2);
            }
        } else {
            pp.kind = mu.n % 2 ? K::RealOdd : K::RealEven;
            pp.delta = mu.n % 2 ? delta : 0;
            // p = (wm - l)/2 for the lower half
            for (int i = 0; i < mu.n / 2; ++i) pp.pairs.emplace_back(mu.w, wm - 2 * pv[i]);
        }
        p.places.push_back(pp);
    }
    validate_parameter(p);
    return p;
}

bool weight_interlace_at(const std::vector<int>& A, const std::vector<int>& B, int m) {
    for (size_t i = 0; i < B.size(); ++i)
        if (!(A[i + 1] <= B[i] + m && B[i] + m <= A[i])) return false;
    return true;
}

bool gamma_critical(const HodgeFamily& fA, const HodgeFamily& fB, int m) {
    // Deligne criticality of the dual tensor at s = m + n: its pairs are (-q, -p)
    const int s = m + fB.rank;
    for (int e = 0; e < fA.profile.degree(); ++e)
        for (auto& [P, Qh] : tensor(fA.at(e), fB.at(e)).pairs) {
            const int dp = -Qh, dq = -P;
            if (dp > dq) continue;
            if (!(dp < s && s <= dq)) return false;
        }
    return true;
}

CritResult critical_points_both(const LanglandsParameter& pA, const LanglandsParameter& pB) {
    if (pA.n != pB.n + 1) fail("RankMismatch", "need ranks n+1 and n");
    if (!(pA.profile == pB.profile)) fail("ProfileMismatch", "parameters over different profiles");
    auto fA = hodge_from_parameter(pA), fB = hodge_from_parameter(pB);
    auto muA = weight_from_hodge(fA), muB = weight_from_hodge(fB);
    auto dA = dual_weight(muA);
    int bound = pA.n + 4;
    for (const auto* mu : {&muA, &muB})
        for (auto& v : mu->mu)
            for (int x : v) bound = std::max(bound, 2 * std::abs(x) + pA.n + 4);
    CritResult r;
    for (int m = -bound; m <= bound; ++m) {
        bool ok = true;
        for (int e = 0; e < pA.profile.degree() && ok; ++e) ok = weight_interlace_at(dA.at(e), muB.at(e), m);
        if (ok) r.by_weights.insert(m);
        if (gamma_critical(fA, fB, m)) r.by_gamma.insert(m);
    }
    return r;
}

std::set<int> critical_points(const LanglandsParameter& pA, const LanglandsParameter& pB) {
    auto r = critical_points_both(pA, pB);
    if (!r.agree()) fail("OracleDisagreement", "weight interlace and Gamma poles give different sets");
    return r.by_weights;
}

bool sign_condition(int m, int n, const std::vector<int>& eps_a, const std::vector<int>& eps_b,
                    const std::vector<int>& phi_minus1) {
    if (eps_a.size() != eps_b.size() || eps_a.size() != phi_minus1.size())
        fail("InvalidParameter", "one sign per real place in every list");
    const int want = ((m + n + 1) % 2 == 0) ? 1 : -1;
    for (size_t v = 0; v < eps_a.size(); ++v)
        if (phi_minus1[v] * eps_a[v] * eps_b[v] != want) return false;
    return true;
}

bool good_position(const WeightVector& mu) {
    validate_weight(mu);
    const int n = mu.n, w = mu.w;
    for (auto& v : mu.mu) {
        auto at = [&](int i) { return v[i - 1]; };
        for (int i = 1; i < n; ++i)
            if (std::min(at(i), w - at(n + 1 - i)) < std::max(at(i + 1), w - at(n - i))) return false;
    }
    return true;
}

std::set<int> strong_weight_interlace(const WeightVector& mu, const WeightVector& nu) {
    if (mu.n != nu.n + 1) fail("RankMismatch", "need ranks n+1 and n");
    auto d = dual_weight(mu);
    int bound = 4;
    for (const auto* x : {&mu, &nu})
        for (auto& v : x->mu)
            for (int y : v) bound = std::max(bound, 2 * std::abs(y) + 4);
    std::set<int> out;
    for (int m = -bound; m <= bound; ++m) {
        bool ok = true;
        for (auto& pl : mu.profile.places()) {
            for (int a : {pl.rep, pl.other})
                for (int b : {pl.rep, pl.other}) ok = ok && weight_interlace_at(d.at(a), nu.at(b), m);
        }
        if (ok) out.insert(m);
    }
    return out;
}

WeightVector companion_weight(const WeightVector& mu) {
    validate_weight(mu);
    if (mu.n < 2) fail("PreconditionFailed", "need rank >= 2");
    if (!good_position(mu)) fail("PreconditionFailed", "weight not in good position");
    const int N = mu.n, n = N - 1, w = mu.w;
    const bool cm = mu.profile.kind() == FieldKind::CM;
    bool odd_variant = false;
    if (w % 2 != 0) {
        if (cm) fail("PreconditionFailed", "odd purity weight over a CM profile");
        for (auto& v : mu.mu)
            for (int i = 0; i + 1 < N; ++i)
                if (v[i] == v[i + 1]) fail("PreconditionFailed", "odd purity weight needs strict dominance");
        odd_variant = true;
    }
    WeightVector out;
    out.n = n;
    out.profile = mu.profile;
    out.mu.assign(mu.profile.degree(), std::vector<int>(n));
    if (cm) {
        out.w = -w;
        for (auto& pl : mu.profile.places()) {
            const auto& v = mu.at(pl.rep);
            auto& o = out.mu[pl.rep];
            // interval top: -max{mu_{n+2-i}, w - mu_i}
            for (int i = 1; i <= n; ++i) o[i - 1] = -std::max(v[n + 1 - i], w - v[i - 1]);
            auto& r = out.mu[pl.other];
            for (int i = 1; i <= n; ++i) r[i - 1] = out.w - o[n - i];
        }
    } else {
        out.w = odd_variant ? 1 - w : -w;
        const int half = n / 2;
        for (auto& pl : mu.profile.places()) {
            const auto& v = mu.at(pl.rep);
            auto& o = out.mu[pl.rep];
            for (int i = 1; i <= half; ++i) o[i - 1] = -v[n + 1 - i];
            if (n % 2) o[half] = odd_variant ? (1 - w) / 2 : -w / 2;
            for (int i = n - half + 1; i <= n; ++i) o[i - 1] = out.w - o[n - i];
        }
    }
    validate_weight(out);
    return out;
}

DegreeTriple bottom_degree(int n, const FieldProfile& profile) {
    if (n < 1) fail("InvalidParameter", "n must be positive");
    DegreeTriple r;
    for (auto& pl : profile.places()) {
        if (pl.complex) {
            r.b += n * (n - 1) / 2;
            r.t += n * (n + 1) / 2 - 1;
            r.d += n * n;
        } else {
            r.b += n * n / 4;
            r.t += (n + 1) * (n + 1) / 4 - 1;
            r.d += n * (n + 1) / 2;
        }
    }
    return r;
}

}  // namespace pf
