#include "periodforge/gamma.hpp"

#include <algorithm>

#include "periodforge/error.hpp"
#include "periodforge/interlace.hpp"

namespace pf {

GammaReduct gamma_c_reduce(long s) {
    if (s <= 0) return {true, s, 0};
    return {false, 0, -s};
}

std::vector<HodgePair> restricted_tensor_pairs(const HodgeFamily& fM, const HodgeFamily& fN) {
    if (!(fM.profile == fN.profile)) fail("ProfileMismatch", "M and N live over different profiles");
    std::vector<HodgePair> out;
    const bool cm = fM.profile.kind() == FieldKind::CM;
    for (int e = 0; e < fM.profile.degree(); ++e) {
        auto t = tensor(fM.at(e), fN.at(e));
        out.insert(out.end(), t.pairs.begin(), t.pairs.end());
        if (cm) {
            auto r = tensor(fM.at(e), fN.at(fN.profile.conj(e)));
            out.insert(out.end(), r.pairs.begin(), r.pairs.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

LInfinity l_infty_tensor(const HodgeFamily& fM, const HodgeFamily& fN, long m) {
    LInfinity out;
    for (auto& [P, Qh] : restricted_tensor_pairs(fM, fN)) {
        if (P == Qh) fail("DiagonalInTensor", "a Gamma_R factor would be needed");
        if (P > Qh) continue;
        out.below_sum += P;
        out.below_count += 1;
        auto g = gamma_c_reduce(m - P);
        if (g.pole) {
            if (!out.reduct.pole) out.reduct = g;
            continue;
        }
        out.reduct.two_pi_i_exp += g.two_pi_i_exp;
    }
    if (!out.reduct.pole) out.expr = two_pi_i_pow(out.reduct.two_pi_i_exp);
    return out;
}

bool dual_pole_free(const HodgeFamily& fM, const HodgeFamily& fN, long m) {
    // dual pairs (-Q, -P); Gamma_C(1 - m - (-Q)) for each original p < q pair
    for (auto& [P, Qh] : restricted_tensor_pairs(fM, fN)) {
        if (P >= Qh) continue;
        if (gamma_c_reduce(1 - m + Qh).pole) return false;
    }
    return true;
}

long tate_twist_exponent(long m, int dM, int dN, int deg_fplus, FieldKind kind) {
    if (kind == FieldKind::CM) return 2 * m * dM * dN * deg_fplus;
    long r = static_cast<long>(dM) * dN * deg_fplus;
    if (r % 2) fail("OddRank", "totally real twist needs even rank of the restriction");
    return m * r / 2;
}

PeriodExpression tate_twist_cpm(const PeriodExpression& expr, long m, int dM, int dN, int deg_fplus, FieldKind kind) {
    PeriodExpression out = two_pi_i_pow(tate_twist_exponent(m, dM, dN, deg_fplus, kind));
    const bool flip = (m % 2) != 0;
    for (auto& [a, e] : expr.terms()) {
        if (flip && a.kind() == AtomKind::CPM)
            out *= PeriodExpression(PeriodAtom::cpm(a.id(), a.place(), -a.sign()), e);
        else if (flip && a.kind() == AtomKind::DeligneC)
            out *= PeriodExpression(PeriodAtom::deligne(a.id(), -a.sign()), e);
        else
            out *= PeriodExpression(a, e);
    }
    return out;
}

namespace {

// product of per-place deltas of one motive -> delta of its restriction, when every place has the same power
PeriodExpression fold_deltas(const PeriodExpression& e, const HodgeFamily& f, const std::string& id) {
    const auto& pls = f.profile.places();
    std::vector<long> pw;
    for (auto& pl : pls) pw.push_back(e.exponent(PeriodAtom::delta(id, f.profile.label(pl.rep))));
    if (pw.empty() || pw[0] == 0 || !std::all_of(pw.begin(), pw.end(), [&](long x) { return x == pw[0]; })) return e;
    PeriodExpression out = e;
    for (auto& pl : pls) out = out / PeriodExpression(PeriodAtom::delta(id, f.profile.label(pl.rep)), pw[0]);
    return out * PeriodExpression(PeriodAtom::delta_res(id), pw[0]);
}

long p_sum(const HodgeFamily& f) {
    long s = 0;
    for (auto& t : f.types)
        for (int p : t.p_values()) s += p;
    return s;
}

}  // namespace

PerprodReport verify_perprod(const HodgeFamily& fM, const HodgeFamily& fN, long m, const std::string& idM,
                             const std::string& idN) {
    PerprodReport rep;
    if (!interlace_range(fM, fN, true).holds) fail("PreconditionFailed", "strong interlace fails");
    const auto kind = fM.profile.kind();
    const int deg_fplus = fM.profile.fplus_degree();

    auto L = l_infty_tensor(fM, fN, m);
    if (L.reduct.pole || !dual_pole_free(fM, fN, m)) {
        rep.not_critical = true;
        rep.notes.push_back("NotCritical");
        return rep;
    }
    rep.gamma_brute = L.below_sum;
    const long S = lambda_of(fM) + lambda_of(fN) + p_sum(fN);
    rep.reading_lambda = S;
    rep.reading_2lambda = 2 * S;
    rep.matches_lambda = rep.gamma_brute == rep.reading_lambda;
    rep.matches_2lambda = rep.gamma_brute == rep.reading_2lambda;
    rep.determinate = rep.matches_lambda != rep.matches_2lambda;

    const int sgn = (m % 2 == 0) ? 1 : -1;
    PeriodExpression cX;
    for (int v = 0; v < static_cast<int>(fM.profile.places().size()); ++v)
        cX *= factorize_tensor(fM, fN, v, sgn, idM, idN).pipeline;
    cX = fold_deltas(fold_deltas(cX, fN, idN), fM, idM);

    PeriodContext ctx{{idM, fM}, {idN, fN}};
    PeriodExpression lhs = L.expr * two_pi_i_pow(tate_twist_exponent(m, fM.rank, fN.rank, deg_fplus, kind)) * cX;

    PeriodExpression rhs = two_pi_i_pow(lambda_of(fM) + lambda_of(fN)) * c_tilde(fM, idM) * c_tilde(fN, idN);
    const bool dN_odd = fN.rank % 2 == 1;
    if (kind == FieldKind::CM) {
        rhs = rhs.pow(2);
        rhs *= PeriodExpression(PeriodAtom::deligne(dN_odd ? idM : idN, Sign::of(sgn)), 2);
    } else {
        const HodgeFamily& other = dN_odd ? fN : fM;
        int eps = other.diag_sign_value();
        if (eps == 0) fail("DiagSignMissing", "odd-rank factor needs a diagonal sign");
        rhs *= PeriodExpression(PeriodAtom::deligne(dN_odd ? idM : idN, Sign::of(sgn * eps)));
    }
    rep.lhs = simplify(lhs, ctx);
    rep.rhs = simplify(rhs, ctx);
    rep.delta = rep.lhs / rep.rhs;
    rep.pass = rep.delta.is_one();
    if (kind == FieldKind::CM && !rep.determinate) rep.notes.push_back("both gamma readings agree (S = 0)");
    return rep;
}

}  // namespace pf
