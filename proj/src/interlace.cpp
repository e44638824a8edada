#include "periodforge/interlace.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

#include "periodforge/error.hpp"

namespace pf {

namespace {

void require_pair(const HodgeFamily& fM, const HodgeFamily& fN) {
    if (!(fM.profile == fN.profile)) fail("ProfileMismatch", "M and N live over different profiles");
    if (fM.rank != fN.rank + 1) fail("RankMismatch", "need rank(M) = rank(N) + 1");
    if (!fM.regular() || !fN.regular()) fail("NotRegular", "interlace needs regular Hodge types");
}

// 1-indexed p and q (q_i = w - p_i, so q decreases)
struct PQ {
    std::vector<int> p, q;
    int P(int i) const { return p[i - 1]; }
    int Qv(int i) const { return q[i - 1]; }
};

PQ pq_at(const HodgeFamily& f, int emb) {
    PQ r;
    r.p = f.at(emb).p_values();
    for (int x : r.p) r.q.push_back(f.weight - x);
    return r;
}

bool p_chain(const PQ& M, const PQ& N, int Q) {
    const int t = static_cast<int>(N.p.size());
    for (int i = 1; i <= t; ++i) {
        int v = N.P(i) + Q;
        if (!(-M.P(t + 2 - i) < v && v <= -M.P(t + 1 - i))) return false;
    }
    return true;
}

// last inequality read as <= like the rest of the chain
bool q_chain(const PQ& M, const PQ& N, int Q) {
    const int t = static_cast<int>(N.p.size());
    for (int i = 1; i <= t; ++i) {
        int v = N.Qv(t + 1 - i) + Q;
        if (!(-M.Qv(i) < v && v <= -M.Qv(i + 1))) return false;
    }
    return true;
}

bool strong_at(const PQ& M, const PQ& N, int Q) {
    const int t = static_cast<int>(N.p.size());
    for (int i = 1; i <= t; ++i) {
        int lo = -std::min(M.P(t + 2 - i), M.Qv(i));
        int nlo = std::min(N.P(i), N.Qv(t + 1 - i)) + Q;
        int nhi = std::max(N.P(i), N.Qv(t + 1 - i)) + Q;
        int hi = -std::max(M.P(t + 1 - i), M.Qv(i + 1));
        if (!(lo < nlo && nhi <= hi)) return false;
    }
    return true;
}

std::vector<int> embeddings_of(const HodgeFamily& f, int place) {
    const auto& pls = f.profile.places();
    if (place < 0 || place >= static_cast<int>(pls.size())) fail("InvalidPlace", "place " + std::to_string(place));
    const auto& pl = pls[place];
    if (pl.complex) return {pl.rep, pl.other};
    return {pl.rep};
}

bool strong_at_place(const HodgeFamily& fM, const HodgeFamily& fN, int place, int Q) {
    for (int e : embeddings_of(fM, place))
        if (!strong_at(pq_at(fM, e), pq_at(fN, e), Q)) return false;
    return true;
}

}  // namespace

bool check_interlace(const HodgeFamily& fM, const HodgeFamily& fN, int Q) {
    require_pair(fM, fN);
    for (int e = 0; e < fM.profile.degree(); ++e) {
        auto M = pq_at(fM, e), N = pq_at(fN, e);
        if (!p_chain(M, N, Q) || !q_chain(M, N, Q)) return false;
    }
    return true;
}

bool check_strong_interlace(const HodgeFamily& fM, const HodgeFamily& fN, int Q) {
    require_pair(fM, fN);
    for (int e = 0; e < fM.profile.degree(); ++e)
        if (!strong_at(pq_at(fM, e), pq_at(fN, e), Q)) return false;
    return true;
}

int scan_bound(const HodgeFamily& fM, const HodgeFamily& fN) {
    int m = 0;
    for (const auto* f : {&fM, &fN})
        for (auto& t : f->types)
            for (auto& [p, q] : t.pairs) m = std::max({m, std::abs(p), std::abs(q)});
    return 2 * (m + 1);
}

InterlaceReport interlace_range(const HodgeFamily& fM, const HodgeFamily& fN, bool strong) {
    require_pair(fM, fN);
    InterlaceReport r;
    const int B = scan_bound(fM, fN);
    std::vector<int> hits;
    for (int Q = -B; Q <= B; ++Q)
        if (strong ? check_strong_interlace(fM, fN, Q) : check_interlace(fM, fN, Q)) hits.push_back(Q);
    if (hits.empty()) {
        r.notes.push_back("no Q in [" + std::to_string(-B) + "," + std::to_string(B) + "]");
        return r;
    }
    r.holds = true;
    r.lo = hits.front();
    r.hi = hits.back();
    if (static_cast<int>(hits.size()) != r.hi - r.lo + 1) r.notes.push_back("Q set is not an interval");
    return r;
}

int q_value(const HodgeFamily& fM, const HodgeFamily& fN, int place) {
    require_pair(fM, fN);
    const int B = scan_bound(fM, fN);
    bool any = false;
    for (int Q = -B; Q <= B && !any; ++Q) any = strong_at_place(fM, fN, place, Q);
    if (!any) fail("PreconditionFailed", "strong interlace fails at place " + std::to_string(place));
    const auto embs = embeddings_of(fM, place);
    const int t = fN.rank;
    int best = INT_MAX;
    for (int i = 1; i <= t; ++i)
        for (int a : embs)
            for (int b : embs) best = std::min(best, fM.at(a).pairs[t + 1 - i].first + fN.at(b).pairs[i - 1].first);
    return best;
}

std::vector<HodgePair> tensor_pairs_at(const HodgeFamily& fM, const HodgeFamily& fN, int place) {
    const auto embs = embeddings_of(fM, place);
    std::vector<HodgePair> out;
    for (int a : embs)
        for (int b : embs) {
            auto tt = tensor(fM.at(a), fN.at(b));
            out.insert(out.end(), tt.pairs.begin(), tt.pairs.end());
        }
    std::sort(out.begin(), out.end());
    return out;
}

TensorPartition partition_tensor(const HodgeFamily& fM, const HodgeFamily& fN, int place) {
    TensorPartition r;
    r.q = q_value(fM, fN, place);
    for (auto& [p, q] : tensor_pairs_at(fM, fN, place)) (p < r.q ? r.below : r.atabove).push_back(p);
    return r;
}

FilResult fil_condition(const HodgeFamily& fM, const HodgeFamily& fN, int place) {
    FilResult r;
    if (!(fM.profile == fN.profile)) fail("ProfileMismatch", "M and N live over different profiles");
    const auto embs = embeddings_of(fM, place);
    const bool complex = embs.size() == 2;
    auto pairs = tensor_pairs_at(fM, fN, place);
    int diag = static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [](const HodgePair& x) { return x.first == x.second; }));

    std::pair<int, int> eig;
    if (complex) {
        if (diag > 0) {
            r.reason = "diagonal at a complex place carries both eigenvalues";
            return r;
        }
        int n = static_cast<int>(pairs.size());
        eig = {n / 2, n / 2};
    } else {
        auto count_diag = [](const HodgeType& t) {
            return static_cast<int>(std::count_if(t.pairs.begin(), t.pairs.end(), [](const HodgePair& x) { return x.first == x.second; }));
        };
        const int e = embs[0];
        // only diag x diag lands on the diagonal with a single eigenvalue
        if (diag != count_diag(fM.at(e)) * count_diag(fN.at(e))) {
            r.reason = "diagonal of the tensor mixes both eigenvalues";
            return r;
        }
        std::pair<int, int> eM, eN;
        try {
            eM = eigen_dims(fM, place);
            eN = eigen_dims(fN, place);
        } catch (const Error& ex) {
            r.reason = ex.what();
            return r;
        }
        eig = {eM.first * eN.first + eM.second * eN.second, eM.first * eN.second + eM.second * eN.first};
    }
    std::vector<int> P;
    for (auto& x : pairs) P.push_back(x.first);
    std::sort(P.begin(), P.end());
    // largest q with #{P < q} = d; unbounded above when d is everything, take the smallest then
    auto q_for = [&](int d) -> std::optional<int> {
        if (d > static_cast<int>(P.size())) return std::nullopt;
        if (d == static_cast<int>(P.size())) return P.back() + 1;
        if (d > 0 && P[d - 1] == P[d]) return std::nullopt;
        return P[d];
    };
    r.q_minus = q_for(eig.first);
    r.q_plus = q_for(eig.second);
    r.holds = r.q_minus.has_value() && r.q_plus.has_value();
    if (!r.holds) r.reason = "no filtration step matches the eigenspace dimension";
    return r;
}

}  // namespace pf
