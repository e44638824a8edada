#include "periodforge/admissible.hpp"

#include <algorithm>
#include <climits>
#include <tuple>
#include <numeric>
#include <sstream>

#include "periodforge/error.hpp"

namespace pf {

int AdmissibleType::dstar() const { return std::accumulate(s.begin(), s.end(), 0); }

static int boundary_index(const std::vector<int>& s, int d, const char* which) {
    // an empty eigenspace sits at index 0 (rank-1 factors at a real place need it)
    if (d == 0) return 0;
    int acc = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        acc += s[i];
        if (acc == d) return static_cast<int>(i) + 1;
        if (acc > d) break;
    }
    fail("SplitNotOnBoundary", std::string(which) + "=" + std::to_string(d) + " is not a partial sum of s");
}

int AdmissibleType::tplus() const { return boundary_index(s, dplus, "d+"); }
int AdmissibleType::tminus() const { return boundary_index(s, dminus, "d-"); }

AdmissibleCheck is_admissible(const AdmissibleType& ty) {
    auto bad = [](char c, std::string d) { return AdmissibleCheck{false, c, std::move(d)}; };
    const int t = ty.t();
    if (t < 1 || static_cast<int>(ty.a.size()) != t) return bad('s', "a must have one entry per block");
    if (std::any_of(ty.s.begin(), ty.s.end(), [](int x) { return x < 1; })) return bad('s', "blocks must be positive");
    if (ty.kplus < 0 || ty.kminus < 0) return bad('s', "negative k");
    if (std::any_of(ty.a.begin(), ty.a.end(), [](int x) { return x < 0; })) return bad('s', "negative exponent in a");
    int tp, tm;
    try {
        tp = ty.tplus();
        tm = ty.tminus();
    } catch (const Error& e) {
        return bad('s', e.what());
    }
    // 1-indexed accessor; a_0 is +inf so conditions at an empty eigenspace are vacuous
    auto A = [&](int i) { return i == 0 ? INT_MAX : ty.a[i - 1]; };
    const int kp = ty.kplus, km = ty.kminus;

    for (int i = 1; i < t; ++i)
        if (A(i) < A(i + 1)) return bad('a', "a_" + std::to_string(i) + " < a_" + std::to_string(i + 1));

    const int lo = std::min(tp, tm), hi = std::max(tp, tm);
    for (int i = 1; i <= lo; ++i)
        if (A(i) + A(t + 1 - i) != kp + km) return bad('b', "i=" + std::to_string(i));

    if (A(tp) < kp) return bad('c', "a_{t+} < k+");
    if (tp < t && km < A(tp + 1)) return bad('c', "k- < a_{t+ +1}");

    if (A(lo) < std::max(kp, km)) return bad('d', "a_{min t} < max k");
    // index shifted past max(t+,t-): the printed index would exclude f+ itself
    if (hi < t && std::min(kp, km) < A(hi + 1)) return bad('d', "min k < a_{max t +1}");

    if (tp > tm)
        for (int i = tm + 1; i <= tp; ++i)
            if (A(i) != kp) return bad('e', "a_" + std::to_string(i) + " != k+");
    if (tm > tp)
        for (int i = tp + 1; i <= tm; ++i)
            if (A(i) != km) return bad('e', "a_" + std::to_string(i) + " != k-");
    return {};
}

AdmissibleType basis_type(BasisKind kind, int beta, const std::vector<int>& s, int dplus, int dminus) {
    AdmissibleType ty;
    ty.s = s;
    ty.dplus = dplus;
    ty.dminus = dminus;
    const int t = ty.t();
    const int tp = ty.tplus(), tm = ty.tminus();
    ty.a.assign(t, 0);
    switch (kind) {
        case BasisKind::Det:
            std::fill(ty.a.begin(), ty.a.end(), 1);
            ty.kplus = ty.kminus = 1;
            break;
        case BasisKind::FPlus:
            std::fill(ty.a.begin(), ty.a.begin() + tp, 1);
            ty.kplus = 1;
            break;
        case BasisKind::FMinus:
            std::fill(ty.a.begin(), ty.a.begin() + tm, 1);
            ty.kminus = 1;
            break;
        case BasisKind::FBeta:
            if (beta < 1 || beta > std::min(tp, tm) || 2 * beta > t)
                fail("BetaOutOfRange", "beta=" + std::to_string(beta));
            for (int i = 0; i < t; ++i) ty.a[i] = i < beta ? 2 : (i < t - beta ? 1 : 0);
            ty.kplus = ty.kminus = 1;
            break;
    }
    return ty;
}

static int max_beta(int t, int tp, int tm) { return std::min({tp, tm, t / 2}); }

AdmissibleType recompose(const BasisDecomposition& d, const std::vector<int>& s, int dplus, int dminus) {
    AdmissibleType out;
    out.s = s;
    out.dplus = dplus;
    out.dminus = dminus;
    out.a.assign(s.size(), 0);
    auto add = [&](const AdmissibleType& b, int m) {
        for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += m * b.a[i];
        out.kplus += m * b.kplus;
        out.kminus += m * b.kminus;
    };
    add(basis_type(BasisKind::Det, 0, s, dplus, dminus), d.m_det);
    add(basis_type(BasisKind::FPlus, 0, s, dplus, dminus), d.m_plus);
    add(basis_type(BasisKind::FMinus, 0, s, dplus, dminus), d.m_minus);
    for (auto& [b, m] : d.m_beta) add(basis_type(BasisKind::FBeta, b, s, dplus, dminus), m);
    return out;
}

std::vector<BasisDecomposition> decompose_all(const AdmissibleType& ty) {
    const int t = ty.t();
    const int tp = ty.tplus(), tm = ty.tminus();
    const int bmax = max_beta(t, tp, tm);
    std::vector<BasisDecomposition> out;
    if (ty.kplus < 0 || ty.kminus < 0) return out;

    for (int mp = 0; mp <= ty.kplus; ++mp) {
        for (int mm = 0; mm <= ty.kminus; ++mm) {
            if (ty.kplus - mp != ty.kminus - mm) continue;
            const int K = ty.kplus - mp;
            std::vector<int> r(ty.a);
            for (int i = 0; i < tp; ++i) r[i] -= mp;
            for (int i = 0; i < tm; ++i) r[i] -= mm;
            const int mdet = r[t - 1];
            if (mdet < 0) continue;
            for (int& x : r) x -= mdet;

            // f_beta jumps by 1 at beta and at t-beta (by 2 when they coincide)
            std::vector<int> D(t + 1, 0);
            for (int i = 1; i < t; ++i) D[i] = r[i - 1] - r[i];
            BasisDecomposition dec{mdet, mp, mm, {}};
            bool okd = true;
            std::vector<bool> used(t + 1, false);
            int total = 0;
            for (int b = 1; b <= bmax && okd; ++b) {
                int m;
                if (2 * b == t) {
                    if (D[b] < 0 || D[b] % 2) okd = false;
                    m = D[b] / 2;
                } else {
                    if (D[b] != D[t - b] || D[b] < 0) okd = false;
                    m = D[b];
                }
                used[b] = used[t - b] = true;
                if (okd && m > 0) dec.m_beta[b] = m;
                total += m;
            }
            for (int i = 1; i < t && okd; ++i)
                if (!used[i] && D[i] != 0) okd = false;
            // det and each f_beta carry k = (1,1)
            if (!okd || mdet + total != K) continue;
            if (recompose(dec, ty.s, ty.dplus, ty.dminus) == ty) out.push_back(dec);
        }
    }
    return out;
}

BasisDecomposition decompose(const AdmissibleType& ty) {
    auto chk = is_admissible(ty);
    if (!chk.ok) fail("NotAdmissible", std::string("condition (") + chk.failed + "): " + chk.detail);
    auto all = decompose_all(ty);
    if (all.empty()) fail("NoDecomposition", to_string(ty));
    auto key = [](const BasisDecomposition& d) { return std::tuple(std::min(d.m_plus, d.m_minus), d.m_plus, d.m_minus); };
    return *std::min_element(all.begin(), all.end(),
                             [&](const BasisDecomposition& x, const BasisDecomposition& y) { return key(x) < key(y); });
}

FactorTypes tensor_factor_types(const FiltrationShape& shapeM, std::pair<int, int> eigM, const FiltrationShape& shapeN,
                                std::pair<int, int> eigN, const std::vector<int>& N_jump_weights,
                                const std::vector<int>& M_jump_weights, int q) {
    auto count = [q](int jump, const std::vector<int>& ws) {
        return static_cast<int>(std::count_if(ws.begin(), ws.end(), [&](int w) { return jump + w < q; }));
    };
    std::vector<int> a, b;
    for (int i : shapeM.jumps) a.push_back(count(i, N_jump_weights));
    for (int i : shapeN.jumps) b.push_back(count(i, M_jump_weights));

    auto make = [](const FiltrationShape& sh, std::pair<int, int> eig, std::vector<int> v, int kp, int km) {
        AdmissibleType ty;
        ty.s = sh.mults;
        ty.dplus = eig.first;
        ty.dminus = eig.second;
        ty.a = std::move(v);
        ty.kplus = kp;
        ty.kminus = km;
        return ty;
    };
    FactorTypes out;
    out.phi_plus = make(shapeM, eigM, a, eigN.first, eigN.second);
    out.phi_minus = make(shapeM, eigM, a, eigN.second, eigN.first);
    out.psi_plus = make(shapeN, eigN, b, eigM.first, eigM.second);
    out.psi_minus = make(shapeN, eigN, b, eigM.second, eigM.first);
    return out;
}

using nlohmann::json;

json admissible_to_json(const AdmissibleType& ty) {
    return json{{"s", ty.s}, {"split", {ty.dplus, ty.dminus}}, {"a", ty.a}, {"k", {ty.kplus, ty.kminus}}};
}

AdmissibleType admissible_from_json(const json& j) {
    try {
        AdmissibleType ty;
        ty.s = j.at("s").get<std::vector<int>>();
        auto sp = j.at("split").get<std::vector<int>>();
        auto k = j.at("k").get<std::vector<int>>();
        if (sp.size() != 2 || k.size() != 2) fail("ParseError", "split and k must be pairs");
        ty.dplus = sp[0];
        ty.dminus = sp[1];
        ty.a = j.at("a").get<std::vector<int>>();
        ty.kplus = k[0];
        ty.kminus = k[1];
        return ty;
    } catch (const json::exception& e) {
        fail("ParseError", e.what());
    }
}

json decomposition_to_json(const BasisDecomposition& d) {
    json j = json::object();
    if (d.m_det) j["det"] = d.m_det;
    if (d.m_plus) j["f_plus"] = d.m_plus;
    if (d.m_minus) j["f_minus"] = d.m_minus;
    for (auto& [b, m] : d.m_beta) j["f_" + std::to_string(b)] = m;
    return j;
}

std::string to_string(const AdmissibleType& ty) {
    std::ostringstream os;
    os << "{(";
    for (size_t i = 0; i < ty.a.size(); ++i) os << (i ? "," : "") << ty.a[i];
    os << ");(" << ty.kplus << "," << ty.kminus << ")} s=(";
    for (size_t i = 0; i < ty.s.size(); ++i) os << (i ? "," : "") << ty.s[i];
    os << ") split=(" << ty.dplus << "," << ty.dminus << ")";
    return os.str();
}

}  // namespace pf
