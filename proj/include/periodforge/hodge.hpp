#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pf {

enum class FieldKind { TotallyReal, CM };

struct Place {
    int rep = 0;     // designated embedding index
    int other = 0;   // conjugate embedding (== rep at a real place)
    bool complex = false;
    bool operator==(const Place&) const = default;
};

class FieldProfile {
public:
    FieldProfile() = default;
    // labels tau0..tau{degree-1}; for CM tau{2k} <-> tau{2k+1}
    static FieldProfile totally_real(int degree);
    static FieldProfile cm(int degree);
    // explicit labels and conjugation; conj[i] is the index of the conjugate of i
    static FieldProfile custom(FieldKind kind, std::vector<std::string> labels, std::vector<int> conj);

    FieldKind kind() const { return kind_; }
    int degree() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(i); }
    int index_of(const std::string& label) const;
    int conj(int i) const { return conj_.at(i); }
    const std::vector<Place>& places() const { return places_; }
    // place containing embedding i
    int place_of(int i) const;
    int fplus_degree() const { return kind_ == FieldKind::CM ? degree() / 2 : degree(); }

    bool operator==(const FieldProfile&) const = default;

private:
    void build_places();

    FieldKind kind_ = FieldKind::TotallyReal;
    std::vector<std::string> labels_;
    std::vector<int> conj_;
    std::vector<Place> places_;
};

using HodgePair = std::pair<int, int>;

struct HodgeType {
    int weight = 0;
    std::vector<HodgePair> pairs;  // sorted by p, then q

    HodgeType() = default;
    HodgeType(int w, std::vector<HodgePair> ps);

    int rank() const { return static_cast<int>(pairs.size()); }
    std::vector<int> p_values() const;
    bool regular() const;
    bool operator==(const HodgeType&) const = default;
};

struct HodgeFamily {
    FieldProfile profile;
    int rank = 0;
    int weight = 0;
    std::vector<HodgeType> types;             // indexed by embedding
    std::map<int, int> diag_sign;             // real embedding index -> +1 / -1

    const HodgeType& at(int emb) const { return types.at(emb); }
    bool regular() const;
    // common diagonal sign over real places, 0 if none recorded
    int diag_sign_value() const;
};

struct FiltrationShape {
    std::vector<int> jumps;
    std::vector<int> mults;
    int dstar = 0;

    int t() const { return static_cast<int>(jumps.size()); }
    bool operator==(const FiltrationShape&) const = default;
};

struct Violation {
    std::string code;
    std::string where;
};

// empty result means ok
std::vector<Violation> validate_family(const HodgeFamily& f);
void require_valid(const HodgeFamily& f);

HodgeType conjugate(const HodgeType& ht);
HodgeType tensor(const HodgeType& a, const HodgeType& b);
HodgeType tate_twist(const HodgeType& ht, int m);

FiltrationShape filtration_shape(const HodgeFamily& f, int place);
std::pair<int, int> eigen_dims(const HodgeFamily& f, int place);

enum class RestrictTarget { Fplus, Q };
HodgeFamily restrict_scalars(const HodgeFamily& f, RestrictTarget target);

// family built from per-embedding p-value lists; q = w - p
HodgeFamily family_from_p(const FieldProfile& prof, int weight, const std::vector<std::vector<int>>& p,
                          std::map<int, int> diag = {});
// p-values at rho(tau) implied by purity + conjugation symmetry
std::vector<int> conjugate_p(const std::vector<int>& p, int w);

HodgeFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const HodgeFamily& f);
nlohmann::json type_to_json(const HodgeType& t);

}  // namespace pf
