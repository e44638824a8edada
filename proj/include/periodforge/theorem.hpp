#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "periodforge/hodge.hpp"
#include "periodforge/periods.hpp"

namespace pf {

struct PeriodRelation {
    PeriodExpression lhs;  // Whittaker atoms only
    PeriodExpression rhs;
    std::string tag;
    PeriodContext ctx;
};

// ids used by the engine
std::string rep_id(int k, bool rho = false);     // pi3, pi3^rho
std::string motive_id(int k, bool rho = false);  // M3, M3^rho

// fM has rank n+1 (id M{n+1}), fN rank n (id M{n}). Totally real: eps are +-1 times symbols and must satisfy
// eps_{n+1} eps_n = (-1)^{m+n+1}. CM: eps ignored (convention +1); relation comes squared.
PeriodRelation product_relation(int n, const HodgeFamily& fM, const HodgeFamily& fN, const Sign& eps_np1,
                                const Sign& eps_n, int m);

struct KnownPeriod {
    int symbol = 0;          // e_symbol stands for the sign argument; 0 = sign independent
    PeriodExpression expr;
};
using KnownMap = std::map<std::string, KnownPeriod>;

PeriodExpression substitute_sign(const PeriodExpression& e, int k, const Sign& v);
PeriodExpression rename_motive(const PeriodExpression& e, const std::string& from, const std::string& to);

struct SolveResult {
    std::string rep;
    KnownPeriod value;
    bool halved = false;
};

// exactly one unknown Whittaker atom; CM relations need every exponent divisible by the unknown's exponent
SolveResult solve_step(const PeriodRelation& rel, const KnownMap& known, int level);

// (2 pi i)^lambda c~ [* c^{-e_k}(Res M_k) for even k]
PeriodExpression closed_form(const HodgeFamily& f, int k);

struct ChainStep {
    int n = 0;                  // relation between levels n+1 and n
    std::vector<int> crit;
    std::vector<int> m_used;
    std::string relation;
    std::string derived;
    std::string expected;
    bool match = false;
    bool m_independent = true;
    bool halved = false;
    bool invariants_ok = true;
};

struct ChainReport {
    std::string profile;
    int degree = 0;
    int n_max = 0;
    std::uint64_t seed = 0;
    int redraws = 0;  // top weights rejected because a lower level broke the parameter assumptions
    std::vector<std::vector<std::vector<int>>> weights;  // level 1..n_max
    std::vector<ChainStep> steps;
    std::vector<std::string> findings;
    bool pass() const { return findings.empty(); }
};

ChainReport verify_chain(FieldKind kind, int degree, int n_max, std::uint64_t seed);
nlohmann::json chain_to_json(const ChainReport& r);

}  // namespace pf
