#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "periodforge/hodge.hpp"

namespace pf {

// numbers with denominator <= 2 are carried doubled
struct PlaceParameter {
    enum class Kind { RealEven, RealOdd, Complex };
    Kind kind = Kind::Complex;
    int delta = 0;
    // RealEven/RealOdd: (2 nu, l);  Complex: (2 a, 2 b)
    std::vector<std::pair<int, int>> pairs;
};

struct LanglandsParameter {
    int n = 1;
    int purity = 0;
    FieldProfile profile;                 // place k of the profile <-> places[k]
    std::vector<PlaceParameter> places;

    int motivic_weight() const { return purity - (n - 1); }
};

// InvalidParameter on any broken invariant
void validate_parameter(const LanglandsParameter& p);

LanglandsParameter parameter_from_json(const nlohmann::json& j);
nlohmann::json parameter_to_json(const LanglandsParameter& p);

struct WeightVector {
    int n = 1;
    int w = 0;
    FieldProfile profile;
    std::vector<std::vector<int>> mu;     // per embedding, non-increasing

    const std::vector<int>& at(int emb) const { return mu.at(emb); }
};

void validate_weight(const WeightVector& mu);     // NotDominant / NotPure
WeightVector dual_weight(const WeightVector& mu); // mu^v_i = -mu_{n+1-i}, purity -w
nlohmann::json weight_to_json(const WeightVector& mu);
WeightVector weight_from_json(const nlohmann::json& j);

HodgeFamily hodge_from_parameter(const LanglandsParameter& p);
WeightVector highest_weight_from_parameter(const LanglandsParameter& p);
WeightVector weight_from_hodge(const HodgeFamily& f);
// delta picks the sign character at real places when n is odd
LanglandsParameter parameter_from_weight(const WeightVector& mu, int delta = 0);

// A^v >= B + m at one embedding: A_{i+1} <= B_i + m <= A_i (A of length n+1, B of length n)
bool weight_interlace_at(const std::vector<int>& A, const std::vector<int>& B, int m);

struct CritResult {
    std::set<int> by_weights;
    std::set<int> by_gamma;
    bool agree() const { return by_weights == by_gamma; }
};

CritResult critical_points_both(const LanglandsParameter& pA, const LanglandsParameter& pB);
// throws OracleDisagreement when the two computations differ
std::set<int> critical_points(const LanglandsParameter& pA, const LanglandsParameter& pB);

// Gamma side alone on Hodge data of ranks n+1, n
bool gamma_critical(const HodgeFamily& fA, const HodgeFamily& fB, int m);

bool sign_condition(int m, int n, const std::vector<int>& eps_a, const std::vector<int>& eps_b,
                    const std::vector<int>& phi_minus1);

bool good_position(const WeightVector& mu);

// all m0 with mu^v(tau~) >= nu(tau~') + m0 for every pair of embeddings over one place
std::set<int> strong_weight_interlace(const WeightVector& mu, const WeightVector& nu);

WeightVector companion_weight(const WeightVector& mu);

struct DegreeTriple {
    int b = 0, t = 0, d = 0;
};
DegreeTriple bottom_degree(int n, const FieldProfile& profile);

}  // namespace pf
