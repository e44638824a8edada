#pragma once

#include <string>
#include <vector>

#include "periodforge/hodge.hpp"
#include "periodforge/periods.hpp"

namespace pf {

struct GammaReduct {
    bool pole = false;
    long pole_at = 0;
    long two_pi_i_exp = 0;
};

// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s); modulo algebraic numbers only (2 pi i)^{-s} survives
GammaReduct gamma_c_reduce(long s);

struct LInfinity {
    GammaReduct reduct;          // product over all p < q pairs, pole if any factor has one
    PeriodExpression expr;       // twopii^exp, empty on a pole
    long below_sum = 0;          // sum of P over p < q pairs
    int below_count = 0;
};

// Hodge pairs of the restriction of scalars of the tensor: M_tau x N_tau over every embedding, plus
// M_tau x N_{rho tau} when the profile is CM
std::vector<HodgePair> restricted_tensor_pairs(const HodgeFamily& fM, const HodgeFamily& fN);

// motivic normalisation: evaluates at s = m
LInfinity l_infty_tensor(const HodgeFamily& fM, const HodgeFamily& fN, long m);
// L_infty of the dual at 1 - m
bool dual_pole_free(const HodgeFamily& fM, const HodgeFamily& fN, long m);

// c^{+-}(X(m)) ~ (2 pi i)^{e} c^{+-(-1)^m}(X); signs of cp/cres atoms flip for odd m.
// CM: e = 2 m dM dN [F+:Q]. Totally real: e = m dM dN [F:Q] / 2 (= m rank(X) / 2).
PeriodExpression tate_twist_cpm(const PeriodExpression& expr, long m, int dM, int dN, int deg_fplus,
                                FieldKind kind = FieldKind::CM);
long tate_twist_exponent(long m, int dM, int dN, int deg_fplus, FieldKind kind);

struct PerprodReport {
    bool not_critical = false;
    bool pass = false;
    PeriodExpression lhs, rhs, delta;
    long gamma_brute = 0;       // sum of P over the p<q pairs (the m part stripped)
    long reading_lambda = 0;    // lambda(M) + lambda(N) + sum p^N
    long reading_2lambda = 0;   // twice that
    bool matches_lambda = false;
    bool matches_2lambda = false;
    bool determinate = false;   // exactly one reading matches
    std::vector<std::string> notes;
};

PerprodReport verify_perprod(const HodgeFamily& fM, const HodgeFamily& fN, long m, const std::string& idM = "M",
                             const std::string& idN = "N");

}  // namespace pf
