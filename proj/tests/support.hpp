#pragma once

// Small helpers shared by the unit suites and the acceptance runner. Oracles here are
// deliberately naive: plain enumeration, no reuse of library internals.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "periodforge/error.hpp"
#include "periodforge/hodge.hpp"

namespace pftest {

inline pf::HodgeFamily real1(int w, std::vector<int> p, int diag = 0) {
    std::map<int, int> d;
    if (diag) d[0] = diag;
    return pf::family_from_p(pf::FieldProfile::totally_real(1), w, {std::move(p)}, d);
}

// CM of degree 2 with tau0 carrying p and tau1 the conjugate
inline pf::HodgeFamily cm2(int w, std::vector<int> p) {
    auto other = pf::conjugate_p(p, w);
    return pf::family_from_p(pf::FieldProfile::cm(2), w, {std::move(p), other});
}

inline std::string error_code(auto&& fn) {
    try {
        fn();
    } catch (const pf::Error& e) {
        return e.code();
    }
    return "";
}

// all pairwise sums, sorted
inline std::vector<pf::HodgePair> brute_tensor(const std::vector<pf::HodgePair>& a, const std::vector<pf::HodgePair>& b) {
    std::vector<pf::HodgePair> out;
    for (auto& x : a)
        for (auto& y : b) out.emplace_back(x.first + y.first, x.second + y.second);
    std::sort(out.begin(), out.end());
    return out;
}

// Q-range by testing both inequality chains directly: at each embedding for the plain
// condition, over every pair of embeddings of a place for the strong one
inline std::set<int> brute_q_range(const pf::HodgeFamily& M, const pf::HodgeFamily& N, bool strong) {
    std::set<int> out;
    const int t = N.rank;
    for (int Q = -60; Q <= 60; ++Q) {
        bool ok = true;
        for (auto& pl : M.profile.places()) {
            std::vector<int> es{pl.rep};
            if (pl.complex) es.push_back(pl.other);
            for (int a : es)
                for (int b : es) {
                    if (!strong && a != b) continue;
                    auto pm = M.at(a).p_values(), pn = N.at(b).p_values();
                    std::vector<int> qm, qn;  // q_i = w - p_i, decreasing
                    for (int x : pm) qm.push_back(M.weight - x);
                    for (int x : pn) qn.push_back(N.weight - x);
                    for (int i = 1; i <= t; ++i) {
                        int x = pn[i - 1] + Q;
                        if (!(-pm[t + 1 - i] < x && x <= -pm[t - i])) ok = false;
                        int y = qn[t - i] + Q;
                        if (!(-qm[i - 1] < y && y <= -qm[i])) ok = false;
                    }
                }
        }
        if (ok) out.insert(Q);
    }
    return out;
}

}  // namespace pftest
