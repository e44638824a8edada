#include "periodforge/theorem.hpp"

#include <algorithm>
#include <cstdlib>

#include "periodforge/automorphic.hpp"
#include "periodforge/error.hpp"
#include "periodforge/gen.hpp"
#include "periodforge/interlace.hpp"

namespace pf {

namespace {

const SimplifyOptions kEngine{false, true};

PeriodAtom rebuild(const PeriodAtom& a, const std::string& id, const Sign& s) {
    switch (a.kind()) {
        case AtomKind::Delta: return PeriodAtom::delta(id, a.place());
        case AtomKind::CPM: return PeriodAtom::cpm(id, a.place(), s);
        case AtomKind::CBeta: return PeriodAtom::cbeta(id, a.place(), a.beta());
        case AtomKind::DeligneC: return PeriodAtom::deligne(id, s);
        case AtomKind::DeltaRes: return PeriodAtom::delta_res(id);
        case AtomKind::WhittakerP: return PeriodAtom::whittaker(id, s);
        case AtomKind::TwoPiI: return a;
    }
    return a;
}

Sign parity_sign(int x) { return Sign::of(x % 2 == 0 ? 1 : -1); }

HodgeFamily rho_twist(const HodgeFamily& f) {
    HodgeFamily out = f;
    for (int e = 0; e < f.profile.degree(); ++e) out.types[e] = f.types[f.profile.conj(e)];
    return out;
}

int crit_bound(const HodgeFamily& a, const HodgeFamily& b) {
    int m = 0;
    for (const auto* f : {&a, &b})
        for (auto& t : f->types)
            for (auto& [p, q] : t.pairs) m = std::max({m, std::abs(p), std::abs(q)});
    return 2 * m + a.rank + 4;
}

std::vector<int> crit_hodge(const HodgeFamily& fA, const HodgeFamily& fB) {
    const bool cm = fA.profile.kind() == FieldKind::CM;
    const auto fBr = rho_twist(fB);
    std::vector<int> out;
    const int B = crit_bound(fA, fB);
    for (int m = -B; m <= B; ++m)
        if (gamma_critical(fA, fB, m) && (!cm || gamma_critical(fA, fBr, m))) out.push_back(m);
    return out;
}

bool is_whit(const PeriodAtom& a) { return a.kind() == AtomKind::WhittakerP; }

}  // namespace

std::string rep_id(int k, bool rho) { return "pi" + std::to_string(k) + (rho ? "^rho" : ""); }
std::string motive_id(int k, bool rho) { return "M" + std::to_string(k) + (rho ? "^rho" : ""); }

PeriodExpression substitute_sign(const PeriodExpression& e, int k, const Sign& v) {
    PeriodExpression out;
    for (auto& [a, x] : e.terms()) out *= PeriodExpression(rebuild(a, a.id(), a.sign().substitute(k, v)), x);
    return out;
}

PeriodExpression rename_motive(const PeriodExpression& e, const std::string& from, const std::string& to) {
    PeriodExpression out;
    for (auto& [a, x] : e.terms()) out *= PeriodExpression(a.id() == from ? rebuild(a, to, a.sign()) : a, x);
    return out;
}

PeriodRelation product_relation(int n, const HodgeFamily& fM, const HodgeFamily& fN, const Sign& eps_np1,
                                const Sign& eps_n, int m) {
    if (n < 1 || fM.rank != n + 1 || fN.rank != n) fail("RankMismatch", "need ranks n+1 and n");
    if (!interlace_range(fM, fN, true).holds) fail("PreconditionFailed", "strong interlace fails");
    const bool cm = fM.profile.kind() == FieldKind::CM;
    if (!gamma_critical(fM, fN, m) || (cm && !gamma_critical(fM, rho_twist(fN), m)))
        fail("NotCritical", "m = " + std::to_string(m));

    PeriodRelation rel;
    const auto idM = motive_id(n + 1), idN = motive_id(n);
    rel.ctx = {{idM, fM}, {idN, fN}};
    PeriodExpression base = two_pi_i_pow(lambda_of(fM) + lambda_of(fN)) * c_tilde(fM, idM) * c_tilde(fN, idN);

    if (!cm) {
        if (!(eps_np1 * eps_n == parity_sign(m + n + 1))) fail("SignConditionFailed", eps_np1.str() + " " + eps_n.str());
        rel.lhs = PeriodExpression(PeriodAtom::whittaker(rep_id(n + 1), eps_np1)) *
                  PeriodExpression(PeriodAtom::whittaker(rep_id(n), eps_n));
        // n odd: c^{(-1)^{m+n} eps_n}(Res M_{n+1});  n even: c^{(-1)^{m+n} eps_{n+1}}(Res M_n)
        const Sign s = parity_sign(m + n) * (n % 2 ? eps_n : eps_np1);
        rel.rhs = base * PeriodExpression(PeriodAtom::deligne(n % 2 ? idM : idN, s));
        rel.tag = "totally real, n=" + std::to_string(n) + ", m=" + std::to_string(m);
    } else {
        const Sign plus = Sign::plus();
        rel.lhs = PeriodExpression(PeriodAtom::whittaker(rep_id(n + 1), plus), 2) *
                  PeriodExpression(PeriodAtom::whittaker(rep_id(n), plus)) *
                  PeriodExpression(PeriodAtom::whittaker(rep_id(n, true), plus));
        rel.rhs = base.pow(2) * PeriodExpression(PeriodAtom::deligne(n % 2 ? idM : idN, Sign::minus()), 2);
        rel.ctx[motive_id(n, true)] = rho_twist(fN);
        rel.tag = "CM, n=" + std::to_string(n) + ", m=" + std::to_string(m);
    }
    rel.lhs = simplify(rel.lhs, rel.ctx, kEngine);
    rel.rhs = simplify(rel.rhs, rel.ctx, kEngine);
    return rel;
}

SolveResult solve_step(const PeriodRelation& rel, const KnownMap& known, int level) {
    PeriodExpression rhs = rel.rhs;
    std::vector<std::pair<PeriodAtom, long>> unknown;
    for (auto& [a, x] : rel.lhs.terms()) {
        if (!is_whit(a)) {
            rhs = rhs / PeriodExpression(a, x);
            continue;
        }
        auto it = known.find(a.id());
        if (it == known.end()) {
            unknown.emplace_back(a, x);
            continue;
        }
        const auto& kp = it->second;
        PeriodExpression val = kp.symbol ? substitute_sign(kp.expr, kp.symbol, a.sign()) : kp.expr;
        rhs = rhs / val.pow(x);
    }
    if (unknown.size() != 1) fail("MultipleUnknowns", std::to_string(unknown.size()) + " unsolved Whittaker atoms");
    auto [atom, ex] = unknown.front();
    rhs = simplify(rhs, rel.ctx, kEngine);
    SolveResult r;
    r.rep = atom.id();
    if (ex != 1) {
        PeriodExpression root;
        for (auto& [a, x] : rhs.terms()) {
            if (x % ex != 0) fail("OddExponent", a.text() + "^" + std::to_string(x) + " under a root of order " + std::to_string(ex));
            root *= PeriodExpression(a, x / ex);
        }
        rhs = root;
        r.halved = true;
    }
    // rewrite in terms of the unknown's own sign symbol e_level
    const Sign& s = atom.sign();
    if (!s.concrete()) {
        if (s.syms.size() != 1) fail("UnsupportedSign", "sign " + s.str() + " mixes several symbols");
        const int j = *s.syms.begin();
        rhs = substitute_sign(rhs, j, Sign::symbol(level, s.coef));
        r.value.symbol = level;
    }
    r.value.expr = rhs;
    return r;
}

PeriodExpression closed_form(const HodgeFamily& f, int k) {
    const auto id = motive_id(k);
    PeriodExpression e = two_pi_i_pow(lambda_of(f)) * c_tilde(f, id);
    if (k % 2 == 0) {
        const Sign s = f.profile.kind() == FieldKind::CM ? Sign::minus() : Sign::symbol(k, -1);
        e *= PeriodExpression(PeriodAtom::deligne(id, s));
    }
    return simplify(e, {{id, f}}, kEngine);
}

namespace {

bool check_invariants(const PeriodExpression& e, int k, FieldKind kind) {
    int deligne = 0;
    bool sign_ok = true;
    for (auto& [a, x] : e.terms()) {
        if (a.kind() == AtomKind::Delta || a.kind() == AtomKind::DeltaRes || a.kind() == AtomKind::WhittakerP)
            return false;
        if (a.kind() == AtomKind::DeligneC) {
            deligne += static_cast<int>(std::abs(x));
            const Sign want = kind == FieldKind::CM ? Sign::minus() : Sign::symbol(k, -1);
            sign_ok = sign_ok && a.sign() == want && x == 1;
        }
    }
    return k % 2 ? deligne == 0 : (deligne == 1 && sign_ok);
}

PeriodExpression rho_rename_all(const PeriodExpression& e) {
    PeriodExpression out;
    for (auto& [a, x] : e.terms()) {
        const bool motive = !a.id().empty() && a.id()[0] == 'M' && a.id().find("^rho") == std::string::npos;
        out *= PeriodExpression(motive ? rebuild(a, a.id() + "^rho", a.sign()) : a, x);
    }
    return out;
}

}  // namespace

ChainReport verify_chain(FieldKind kind, int degree, int n_max, std::uint64_t seed) {
    if (n_max < 2) fail("PreconditionFailed", "n_max must be >= 2");
    ChainReport rep;
    rep.profile = kind == FieldKind::CM ? "cm" : "real";
    rep.degree = degree;
    rep.n_max = n_max;
    rep.seed = seed;
    const auto prof = kind == FieldKind::CM ? FieldProfile::cm(degree) : FieldProfile::totally_real(degree);
    gen::Rng rng(seed);

    // weight chain, top down; every level must lift to a valid parameter (no a = b at complex places),
    // otherwise the top weight is redrawn
    std::vector<WeightVector> mu(n_max + 1);
    std::vector<HodgeFamily> fam(n_max + 1);
    const int delta = gen::uniform(rng, 0, 1);
    for (;;) {
        mu[n_max] = gen::good_weight(rng, n_max, prof);
        try {
            for (int k = n_max - 1; k >= 1; --k) mu[k] = companion_weight(mu[k + 1]);
            for (int k = 1; k <= n_max; ++k) fam[k] = hodge_from_parameter(parameter_from_weight(mu[k], delta));
            break;
        } catch (const Error& e) {
            if (e.code() != "InvalidParameter") throw;
            if (++rep.redraws > 10000) fail("GeneratorExhausted", "no admissible weight chain");
        }
    }
    for (int k = 1; k <= n_max; ++k) rep.weights.push_back(mu[k].mu);

    KnownMap known;
    known[rep_id(1)] = {kind == FieldKind::CM ? 0 : 1, PeriodExpression()};
    if (kind == FieldKind::CM) known[rep_id(1, true)] = {0, PeriodExpression()};

    for (int n = 1; n < n_max; ++n) {
        ChainStep st;
        st.n = n;
        const auto& fM = fam[n + 1];
        const auto& fN = fam[n];
        st.crit = crit_hodge(fM, fN);
        if (st.crit.empty()) {
            rep.findings.push_back("n=" + std::to_string(n) + ": no critical point");
            rep.steps.push_back(st);
            break;
        }
        st.m_used.push_back(st.crit.front());
        auto other = std::find_if(st.crit.begin(), st.crit.end(), [&](int m) { return (m - st.crit.front()) % 2 != 0; });
        if (other != st.crit.end()) st.m_used.push_back(*other);
        else if (st.crit.size() > 1) st.m_used.push_back(st.crit.back());

        std::vector<SolveResult> sols;
        try {
            for (int m : st.m_used) {
                Sign enp1, en;
                if (n % 2) {
                    enp1 = Sign::symbol(n + 1);
                    en = parity_sign(m + n + 1) * enp1;
                } else {
                    en = Sign::symbol(n);
                    enp1 = parity_sign(m + n + 1) * en;
                }
                auto rel = product_relation(n, fM, fN, enp1, en, m);
                if (st.relation.empty()) st.relation = rel.lhs.str() + " ~ " + rel.rhs.str();
                sols.push_back(solve_step(rel, known, n + 1));
            }
        } catch (const Error& e) {
            rep.findings.push_back("n=" + std::to_string(n) + ": " + e.code() + " " + e.what());
            rep.steps.push_back(st);
            break;
        }
        const auto& sol = sols.front();
        st.halved = sol.halved;
        for (size_t i = 1; i < sols.size(); ++i)
            st.m_independent = st.m_independent && sols[i].value.expr == sol.value.expr &&
                               sols[i].value.symbol == sol.value.symbol;
        const auto expected = closed_form(fM, n + 1);
        st.derived = sol.value.expr.str();
        st.expected = expected.str();
        st.match = sol.value.expr == expected;
        st.invariants_ok = check_invariants(sol.value.expr, n + 1, kind);
        if (kind == FieldKind::CM && !st.halved) st.invariants_ok = false;
        if (!st.match) rep.findings.push_back("n=" + std::to_string(n + 1) + ": derived " + st.derived + " != " + st.expected);
        if (!st.m_independent) rep.findings.push_back("n=" + std::to_string(n + 1) + ": output depends on m");
        if (!st.invariants_ok) rep.findings.push_back("n=" + std::to_string(n + 1) + ": atom invariants broken");
        known[sol.rep] = sol.value;
        if (kind == FieldKind::CM) known[rep_id(n + 1, true)] = {sol.value.symbol, rho_rename_all(sol.value.expr)};
        rep.steps.push_back(st);
    }
    return rep;
}

nlohmann::json chain_to_json(const ChainReport& r) {
    nlohmann::json steps = nlohmann::json::array();
    for (auto& s : r.steps)
        steps.push_back({{"n", s.n},
                         {"crit", s.crit},
                         {"m_used", s.m_used},
                         {"relation", s.relation},
                         {"derived", s.derived},
                         {"expected", s.expected},
                         {"match", s.match},
                         {"m_independent", s.m_independent},
                         {"root_taken", s.halved},
                         {"invariants_ok", s.invariants_ok}});
    return {{"profile", r.profile}, {"degree", r.degree}, {"nmax", r.n_max},   {"seed", r.seed}, {"redraws", r.redraws},
            {"weights", r.weights}, {"steps", steps},     {"findings", r.findings}, {"pass", r.pass()}};
}

}  // namespace pf
