#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "periodforge/hodge.hpp"

namespace pf {

// {(a_1..a_t); (k+, k-)} living on a block partition s of d* with eigen split (d+, d-).
struct AdmissibleType {
    std::vector<int> s;
    int dplus = 0, dminus = 0;
    std::vector<int> a;
    int kplus = 0, kminus = 0;

    int t() const { return static_cast<int>(s.size()); }
    int dstar() const;
    // prefix index where the running sum of s hits d+ (resp. d-); throws SplitNotOnBoundary
    int tplus() const;
    int tminus() const;
    bool operator==(const AdmissibleType&) const = default;
};

struct AdmissibleCheck {
    bool ok = true;
    char failed = 0;  // 'a'..'e', or 's' for a structural problem
    std::string detail;
};

AdmissibleCheck is_admissible(const AdmissibleType& ty);

enum class BasisKind { Det, FPlus, FMinus, FBeta };

AdmissibleType basis_type(BasisKind kind, int beta, const std::vector<int>& s, int dplus, int dminus);

struct BasisDecomposition {
    int m_det = 0;
    int m_plus = 0;
    int m_minus = 0;
    std::map<int, int> m_beta;  // zero entries omitted

    bool operator==(const BasisDecomposition&) const = default;
};

AdmissibleType recompose(const BasisDecomposition& d, const std::vector<int>& s, int dplus, int dminus);

// every nonnegative exponent vector reproducing ty (by back-substitution, not search)
std::vector<BasisDecomposition> decompose_all(const AdmissibleType& ty);
// canonical representative: smallest min(m+, m-), then smallest (m+, m-)
BasisDecomposition decompose(const AdmissibleType& ty);

struct FactorTypes {
    AdmissibleType phi_plus, phi_minus, psi_plus, psi_minus;
};

// counting formulas: a_mu = #{lambda : iM_mu + wN_lambda < q}, b_nu = #{lambda : iN_nu + wM_lambda < q}
FactorTypes tensor_factor_types(const FiltrationShape& shapeM, std::pair<int, int> eigM, const FiltrationShape& shapeN,
                                std::pair<int, int> eigN, const std::vector<int>& N_jump_weights,
                                const std::vector<int>& M_jump_weights, int q);

nlohmann::json admissible_to_json(const AdmissibleType& ty);
AdmissibleType admissible_from_json(const nlohmann::json& j);
nlohmann::json decomposition_to_json(const BasisDecomposition& d);
std::string to_string(const AdmissibleType& ty);

}  // namespace pf
