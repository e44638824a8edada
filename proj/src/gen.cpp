#include "periodforge/gen.hpp"

#include <algorithm>
#include <set>

#include "periodforge/error.hpp"
#include "periodforge/interlace.hpp"

namespace pf::gen {

namespace {

constexpr int kAttempts = 20000;

using K = PlaceParameter::Kind;

// k distinct values from {lo, lo+step, ...} of size cnt, sorted ascending
std::vector<int> distinct_sample(Rng& rng, int lo, int step, int cnt, int k) {
    std::vector<int> pool(cnt);
    for (int i = 0; i < cnt; ++i) pool[i] = lo + i * step;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// strictly increasing, symmetric about w/2 (middle present iff size odd, needs w even)
std::vector<int> symmetric_p(Rng& rng, int size, int w, int spread) {
    const int h = size / 2;
    // candidates strictly below w/2
    const int top = floor_div(w - 1, 2);
    auto low = distinct_sample(rng, top - spread + 1, 1, spread, h);
    std::vector<int> out = low;
    if (size % 2) out.push_back(w / 2);
    for (int i = h - 1; i >= 0; --i) out.push_back(w - low[i]);
    return out;
}

int pick_sign(Rng& rng) { return uniform(rng, 0, 1) ? 1 : -1; }

}  // namespace

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

LanglandsParameter random_parameter(Rng& rng, int n, const FieldProfile& prof, int spread) {
    LanglandsParameter p;
    p.n = n;
    p.profile = prof;
    const bool cm = prof.kind() == FieldKind::CM;
    if (!cm && n % 2) p.purity = 2 * uniform(rng, -spread / 2, spread / 2);
    else p.purity = uniform(rng, -spread, spread);
    const int delta = uniform(rng, 0, 1);
    for (auto& pl : prof.places()) {
        (void)pl;
        PlaceParameter pp;
        if (cm) {
            pp.kind = K::Complex;
            // 2a = n - 1 mod 2, 2a != w
            std::vector<int> pool;
            for (int a2 = -2 * spread; a2 <= 2 * spread; ++a2)
                if ((a2 - (n - 1)) % 2 == 0 && a2 != p.purity) pool.push_back(a2);
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(n);
            std::sort(pool.begin(), pool.end());
            for (int a2 : pool) pp.pairs.emplace_back(a2, 2 * p.purity - a2);
        } else {
            pp.kind = n % 2 ? K::RealOdd : K::RealEven;
            pp.delta = n % 2 ? delta : 0;
            // l = w - n + 1 mod 2, l >= 1
            int l0 = ((p.purity - n + 1) % 2 == 0) ? 2 : 1;
            auto ls = distinct_sample(rng, l0, 2, spread + n, n / 2);
            std::reverse(ls.begin(), ls.end());
            for (int l : ls) pp.pairs.emplace_back(p.purity, l);
        }
        p.places.push_back(pp);
    }
    validate_parameter(p);
    return p;
}

std::pair<HodgeFamily, HodgeFamily> interlaced_pair(Rng& rng, int t, const FieldProfile& prof) {
    const bool cm = prof.kind() == FieldKind::CM;
    const int spread = 2 * t + 3;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        int wM = uniform(rng, -3, 3);
        if (!cm && (t + 1) % 2 == 1 && wM % 2) wM += 1;
        int c2;
        if (!cm && t % 2 == 1) c2 = (wM % 2 == 0) ? -wM : -wM + 1;
        else c2 = -wM + uniform(rng, cm ? -1 : 0, 1);
        const int Q = uniform(rng, -2, 2);
        const int wN = c2 - 2 * Q;

        std::vector<std::vector<int>> pM(prof.degree()), pN(prof.degree());
        bool ok = true;
        for (auto& pl : prof.places()) {
            std::vector<int> m;
            if (!cm) {
                m = symmetric_p(rng, t + 1, wM, spread);
            } else {
                // near-symmetric, no p = w/2
                auto base = symmetric_p(rng, t + 1 + ((t + 1) % 2), wM % 2 ? wM : wM + 1, spread + 1);
                if (static_cast<int>(base.size()) > t + 1) base.erase(base.begin() + uniform(rng, 0, t + 1));
                for (int& x : base) x += uniform(rng, -1, 1);
                std::sort(base.begin(), base.end());
                m = base;
                if (std::adjacent_find(m.begin(), m.end()) != m.end()) { ok = false; break; }
                if (std::any_of(m.begin(), m.end(), [&](int x) { return 2 * x == wM; })) { ok = false; break; }
            }
            // 1-indexed views
            auto P = [&](int i) { return m[i - 1]; };
            auto Qv = [&](int i) { return wM - m[i - 1]; };
            std::vector<int> L(t + 1), H(t + 1);
            for (int i = 1; i <= t; ++i) {
                L[i] = -std::min(P(t + 2 - i), Qv(i));
                H[i] = -std::max(P(t + 1 - i), Qv(i + 1));
            }
            std::vector<int> Y(t + 1);
            if (!cm) {
                for (int i = 1; i <= (t + 1) / 2 && ok; ++i) {
                    const int j = t + 1 - i;
                    if (i == j) {
                        Y[i] = c2 / 2;
                        ok = L[i] < Y[i] && Y[i] <= H[i] && c2 % 2 == 0;
                        continue;
                    }
                    std::vector<int> cands;
                    for (int y = L[i] + 1; y <= H[i]; ++y)
                        if (L[j] < c2 - y && c2 - y <= H[j]) cands.push_back(y);
                    if (cands.empty()) { ok = false; break; }
                    Y[i] = cands[uniform(rng, 0, static_cast<int>(cands.size()) - 1)];
                    Y[j] = c2 - Y[i];
                }
            } else {
                for (int j = 1; j <= t && ok; ++j) {
                    std::vector<int> cands;
                    const int r = t + 1 - j;
                    for (int y = L[j] + 1; y <= H[j]; ++y)
                        if (c2 - H[r] <= y && y < c2 - L[r] && 2 * y != c2 && (j == 1 || y > Y[j - 1]))
                            cands.push_back(y);
                    if (cands.empty()) { ok = false; break; }
                    Y[j] = cands[uniform(rng, 0, static_cast<int>(cands.size()) - 1)];
                }
            }
            if (!ok) break;
            std::vector<int> n;
            for (int i = 1; i <= t; ++i) n.push_back(Y[i] - Q);
            pM[pl.rep] = m;
            pN[pl.rep] = n;
            if (pl.complex) {
                pM[pl.other] = conjugate_p(m, wM);
                pN[pl.other] = conjugate_p(n, wN);
            }
        }
        if (!ok) continue;
        std::map<int, int> dM, dN;
        if (!cm) {
            const int sM = pick_sign(rng), sN = pick_sign(rng);
            for (auto& pl : prof.places()) {
                if ((t + 1) % 2) dM[pl.rep] = sM;
                if (t % 2) dN[pl.rep] = sN;
            }
        }
        auto M = family_from_p(prof, wM, pM, dM);
        auto N = family_from_p(prof, wN, pN, dN);
        if (!validate_family(M).empty() || !validate_family(N).empty()) continue;
        if (!M.regular() || !N.regular()) continue;
        if (!check_strong_interlace(M, N, Q)) continue;
        return {M, N};
    }
    fail("GeneratorExhausted", "no interlaced pair found for t = " + std::to_string(t));
}

WeightVector good_weight(Rng& rng, int n, const FieldProfile& prof, bool odd_ok) {
    const bool cm = prof.kind() == FieldKind::CM;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        WeightVector mu;
        mu.n = n;
        mu.profile = prof;
        mu.w = odd_ok ? uniform(rng, -6, 6) : 2 * uniform(rng, -3, 3);
        if (!cm && n % 2 && mu.w % 2) continue;
        mu.mu.assign(prof.degree(), std::vector<int>(n));
        for (auto& pl : prof.places()) {
            auto& v = mu.mu[pl.rep];
            // symmetric base: upper half at or above w/2, then mirror
            const int h = n / 2;
            int cur = floor_div(mu.w + 1, 2);
            std::vector<int> up(h);
            for (int i = h - 1; i >= 0; --i) {
                cur += uniform(rng, 0, 3);
                up[i] = cur;
            }
            for (int i = 0; i < h; ++i) {
                v[i] = up[i];
                v[n - 1 - i] = mu.w - up[i];
            }
            if (n % 2) v[h] = mu.w / 2;
            if (cm) {
                for (int& x : v) x += uniform(rng, -1, 1);
                if (n % 2 && mu.w % 2) v[h] = (mu.w + (uniform(rng, 0, 1) ? 1 : -1)) / 2;
                std::sort(v.rbegin(), v.rend());
                auto& r = mu.mu[pl.other];
                for (int i = 0; i < n; ++i) r[i] = mu.w - v[n - 1 - i];
            }
        }
        try {
            validate_weight(mu);
        } catch (const Error&) {
            continue;
        }
        if (cm && !good_position(mu)) continue;
        return mu;
    }
    fail("GeneratorExhausted", "no good-position weight found");
}

WeightVector strict_odd_weight(Rng& rng, int n, const FieldProfile& prof) {
    if (prof.kind() != FieldKind::TotallyReal) fail("PreconditionFailed", "odd purity variant is totally real only");
    if (n % 2) fail("PreconditionFailed", "odd purity needs even rank at real places");
    WeightVector mu;
    mu.n = n;
    mu.profile = prof;
    mu.w = 2 * uniform(rng, -3, 3) + 1;
    mu.mu.assign(prof.degree(), std::vector<int>(n));
    for (auto& pl : prof.places()) {
        auto& v = mu.mu[pl.rep];
        const int h = n / 2;
        int cur = floor_div(mu.w, 2);
        for (int i = h - 1; i >= 0; --i) {
            cur += uniform(rng, 1, 3);
            v[i] = cur;
            v[n - 1 - i] = mu.w - cur;
        }
    }
    validate_weight(mu);
    return mu;
}

}  // namespace pf::gen
