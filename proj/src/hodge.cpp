#include "periodforge/hodge.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "periodforge/error.hpp"

namespace pf {

FieldProfile FieldProfile::totally_real(int degree) {
    if (degree < 1) fail("ProfileMismatch", "degree must be positive");
    std::vector<std::string> labels;
    std::vector<int> conj;
    for (int i = 0; i < degree; ++i) {
        labels.push_back("tau" + std::to_string(i));
        conj.push_back(i);
    }
    return custom(FieldKind::TotallyReal, labels, conj);
}

FieldProfile FieldProfile::cm(int degree) {
    if (degree < 2 || degree % 2) fail("ProfileMismatch", "CM degree must be even and positive");
    std::vector<std::string> labels;
    std::vector<int> conj;
    for (int i = 0; i < degree; ++i) {
        labels.push_back("tau" + std::to_string(i));
        conj.push_back(i % 2 ? i - 1 : i + 1);
    }
    return custom(FieldKind::CM, labels, conj);
}

FieldProfile FieldProfile::custom(FieldKind kind, std::vector<std::string> labels, std::vector<int> conj) {
    FieldProfile p;
    int n = static_cast<int>(labels.size());
    if (n == 0 || static_cast<int>(conj.size()) != n) fail("ProfileMismatch", "labels/conj size");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (static_cast<int>(seen.size()) != n) fail("ProfileMismatch", "duplicate embedding label");
    for (int i = 0; i < n; ++i) {
        int c = conj[i];
        if (c < 0 || c >= n || conj[c] != i) fail("ProfileMismatch", "conj is not an involution");
        if (kind == FieldKind::TotallyReal && c != i) fail("ProfileMismatch", "totally real needs conj = id");
        if (kind == FieldKind::CM && c == i) fail("ProfileMismatch", "CM conj must be fixed-point free");
    }
    p.kind_ = kind;
    p.labels_ = std::move(labels);
    p.conj_ = std::move(conj);
    p.build_places();
    return p;
}

void FieldProfile::build_places() {
    places_.clear();
    std::vector<bool> used(labels_.size(), false);
    for (int i = 0; i < degree(); ++i) {
        if (used[i]) continue;
        Place pl;
        pl.rep = i;
        pl.other = conj_[i];
        pl.complex = conj_[i] != i;
        used[i] = used[conj_[i]] = true;
        places_.push_back(pl);
    }
}

int FieldProfile::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) fail("InvalidPlace", "unknown embedding " + label);
    return static_cast<int>(it - labels_.begin());
}

int FieldProfile::place_of(int i) const {
    for (int k = 0; k < static_cast<int>(places_.size()); ++k)
        if (places_[k].rep == i || places_[k].other == i) return k;
    fail("InvalidPlace", "embedding index out of range");
}

HodgeType::HodgeType(int w, std::vector<HodgePair> ps) : weight(w), pairs(std::move(ps)) {
    std::sort(pairs.begin(), pairs.end());
}

std::vector<int> HodgeType::p_values() const {
    std::vector<int> out;
    for (auto& [p, q] : pairs) out.push_back(p);
    return out;
}

bool HodgeType::regular() const {
    for (size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first == pairs[i - 1].first) return false;
    return true;
}

bool HodgeFamily::regular() const {
    return std::all_of(types.begin(), types.end(), [](const HodgeType& t) { return t.regular(); });
}

int HodgeFamily::diag_sign_value() const {
    return diag_sign.empty() ? 0 : diag_sign.begin()->second;
}

static std::string pair_str(const HodgePair& pq) {
    return "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
}

static bool has_diagonal(const HodgeType& t) {
    return std::any_of(t.pairs.begin(), t.pairs.end(), [](const HodgePair& pq) { return pq.first == pq.second; });
}

static int diagonal_mult(const HodgeType& t) {
    return static_cast<int>(
        std::count_if(t.pairs.begin(), t.pairs.end(), [](const HodgePair& pq) { return pq.first == pq.second; }));
}

std::vector<Violation> validate_family(const HodgeFamily& f) {
    std::vector<Violation> out;
    const auto& prof = f.profile;
    if (static_cast<int>(f.types.size()) != prof.degree()) {
        out.push_back({"RankMismatch", "one Hodge type per embedding required"});
        return out;
    }
    for (int i = 0; i < prof.degree(); ++i) {
        const auto& t = f.types[i];
        const auto& lab = prof.label(i);
        if (t.rank() != f.rank) out.push_back({"RankMismatch", lab});
        for (auto& pq : t.pairs)
            if (pq.first + pq.second != f.weight) out.push_back({"PurityViolation", lab + " pair " + pair_str(pq)});
    }
    if (!out.empty()) return out;

    int common_sign = 0;
    for (int i = 0; i < prof.degree(); ++i) {
        const auto& t = f.types[i];
        const auto& lab = prof.label(i);
        int c = prof.conj(i);
        if (!(f.types[c] == conjugate(t))) out.push_back({"ConjugationAsymmetry", lab});
        auto ds = f.diag_sign.find(i);
        if (c != i) {
            if (has_diagonal(t)) out.push_back({"ComplexDiagonalPresent", lab});
            if (ds != f.diag_sign.end()) out.push_back({"DiagSignInconsistent", lab + " sign at a complex embedding"});
            continue;
        }
        if (has_diagonal(t)) {
            if (ds == f.diag_sign.end()) {
                out.push_back({"DiagSignMissing", lab});
                continue;
            }
        } else if (ds != f.diag_sign.end()) {
            out.push_back({"DiagSignInconsistent", lab + " sign given without a diagonal"});
            continue;
        }
        if (ds == f.diag_sign.end()) continue;
        if (ds->second != 1 && ds->second != -1) {
            out.push_back({"DiagSignInconsistent", lab + " sign must be +1 or -1"});
            continue;
        }
        if (common_sign == 0) common_sign = ds->second;
        else if (common_sign != ds->second) out.push_back({"DiagSignInconsistent", lab});
    }
    return out;
}

void require_valid(const HodgeFamily& f) {
    auto v = validate_family(f);
    if (!v.empty()) fail(v.front().code, v.front().where);
}

HodgeType conjugate(const HodgeType& ht) {
    std::vector<HodgePair> ps;
    for (auto& [p, q] : ht.pairs) ps.emplace_back(q, p);
    return HodgeType(ht.weight, ps);
}

HodgeType tensor(const HodgeType& a, const HodgeType& b) {
    std::vector<HodgePair> ps;
    for (auto& x : a.pairs)
        for (auto& y : b.pairs) ps.emplace_back(x.first + y.first, x.second + y.second);
    return HodgeType(a.weight + b.weight, ps);
}

HodgeType tate_twist(const HodgeType& ht, int m) {
    std::vector<HodgePair> ps;
    for (auto& [p, q] : ht.pairs) ps.emplace_back(p - m, q - m);
    return HodgeType(ht.weight - 2 * m, ps);
}

static const Place& place_at(const HodgeFamily& f, int place) {
    if (place < 0 || place >= static_cast<int>(f.profile.places().size()))
        fail("InvalidPlace", "place index " + std::to_string(place));
    return f.profile.places()[place];
}

FiltrationShape filtration_shape(const HodgeFamily& f, int place) {
    const auto& pl = place_at(f, place);
    std::map<int, int> count;
    for (int p : f.at(pl.rep).p_values()) count[p]++;
    if (pl.complex)
        for (int p : f.at(pl.other).p_values()) count[p]++;
    FiltrationShape s;
    for (auto& [p, c] : count) {
        s.jumps.push_back(p);
        s.mults.push_back(c);
        s.dstar += c;
    }
    return s;
}

std::pair<int, int> eigen_dims(const HodgeFamily& f, int place) {
    const auto& pl = place_at(f, place);
    if (pl.complex) return {f.rank, f.rank};
    const auto& t = f.at(pl.rep);
    int off = static_cast<int>(
        std::count_if(t.pairs.begin(), t.pairs.end(), [](const HodgePair& pq) { return pq.first < pq.second; }));
    int diag = diagonal_mult(t);
    if (diag == 0) return {off, off};
    auto it = f.diag_sign.find(pl.rep);
    if (it == f.diag_sign.end()) fail("DiagSignMissing", f.profile.label(pl.rep));
    return it->second > 0 ? std::pair{off + diag, off} : std::pair{off, off + diag};
}

HodgeFamily restrict_scalars(const HodgeFamily& f, RestrictTarget target) {
    HodgeFamily out;
    out.weight = f.weight;
    if (target == RestrictTarget::Fplus) {
        if (f.profile.kind() != FieldKind::CM) fail("ProfileMismatch", "restriction to F+ needs a CM profile");
        int g = static_cast<int>(f.profile.places().size());
        out.profile = FieldProfile::totally_real(g);
        out.rank = 2 * f.rank;
        for (auto& pl : f.profile.places()) {
            auto ps = f.at(pl.rep).pairs;
            auto& o = f.at(pl.other).pairs;
            ps.insert(ps.end(), o.begin(), o.end());
            out.types.emplace_back(f.weight, ps);
        }
        return out;
    }
    out.profile = FieldProfile::totally_real(1);
    out.rank = f.rank * f.profile.degree();
    std::vector<HodgePair> ps;
    for (auto& t : f.types) ps.insert(ps.end(), t.pairs.begin(), t.pairs.end());
    out.types.emplace_back(f.weight, ps);
    if (has_diagonal(out.types[0])) out.diag_sign[0] = f.diag_sign_value() ? f.diag_sign_value() : 1;
    return out;
}

std::vector<int> conjugate_p(const std::vector<int>& p, int w) {
    std::vector<int> out;
    for (int x : p) out.push_back(w - x);
    std::sort(out.begin(), out.end());
    return out;
}

HodgeFamily family_from_p(const FieldProfile& prof, int weight, const std::vector<std::vector<int>>& p,
                          std::map<int, int> diag) {
    HodgeFamily f;
    f.profile = prof;
    f.weight = weight;
    f.rank = p.empty() ? 0 : static_cast<int>(p[0].size());
    for (auto& row : p) {
        std::vector<HodgePair> ps;
        for (int x : row) ps.emplace_back(x, weight - x);
        f.types.emplace_back(weight, ps);
    }
    f.diag_sign = std::move(diag);
    return f;
}

using nlohmann::json;

static FieldProfile profile_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    FieldKind fk;
    if (kind == "cm" || kind == "CM") fk = FieldKind::CM;
    else if (kind == "real" || kind == "totally_real" || kind == "TotallyReal") fk = FieldKind::TotallyReal;
    else fail("ParseError", "profile kind " + kind);
    int degree = j.at("degree").get<int>();
    if (!j.contains("embeddings"))
        return fk == FieldKind::CM ? FieldProfile::cm(degree) : FieldProfile::totally_real(degree);
    auto labels = j.at("embeddings").get<std::vector<std::string>>();
    if (static_cast<int>(labels.size()) != degree) fail("ParseError", "embeddings length != degree");
    std::vector<int> conj(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) conj[i] = static_cast<int>(i);
    if (j.contains("conj")) {
        for (auto& [a, b] : j.at("conj").items()) {
            auto ia = std::find(labels.begin(), labels.end(), a) - labels.begin();
            auto ib = std::find(labels.begin(), labels.end(), b.get<std::string>()) - labels.begin();
            if (ia >= degree || ib >= degree) fail("ParseError", "conj refers to unknown embedding");
            conj[ia] = static_cast<int>(ib);
            conj[ib] = static_cast<int>(ia);
        }
    }
    return FieldProfile::custom(fk, labels, conj);
}

static json profile_to_json(const FieldProfile& p) {
    json j;
    j["kind"] = p.kind() == FieldKind::CM ? "cm" : "real";
    j["degree"] = p.degree();
    j["embeddings"] = p.labels();
    if (p.kind() == FieldKind::CM) {
        json c = json::object();
        for (auto& pl : p.places()) c[p.label(pl.rep)] = p.label(pl.other);
        j["conj"] = c;
    }
    return j;
}

HodgeFamily family_from_json(const json& j) {
    try {
        HodgeFamily f;
        f.profile = profile_from_json(j.at("profile"));
        f.rank = j.at("rank").get<int>();
        f.weight = j.at("weight").get<int>();
        const auto& types = j.at("types");
        for (int i = 0; i < f.profile.degree(); ++i) {
            const auto& lab = f.profile.label(i);
            if (!types.contains(lab)) fail("ParseError", "missing Hodge type for " + lab);
            std::vector<HodgePair> ps;
            for (auto& pr : types.at(lab)) ps.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
            f.types.emplace_back(f.weight, ps);
        }
        if (j.contains("diag_sign"))
            for (auto& [lab, v] : j.at("diag_sign").items()) f.diag_sign[f.profile.index_of(lab)] = v.get<int>();
        return f;
    } catch (const json::exception& e) {
        fail("ParseError", e.what());
    }
}

json type_to_json(const HodgeType& t) {
    json a = json::array();
    for (auto& [p, q] : t.pairs) a.push_back({p, q});
    return a;
}

json family_to_json(const HodgeFamily& f) {
    json j;
    j["profile"] = profile_to_json(f.profile);
    j["rank"] = f.rank;
    j["weight"] = f.weight;
    json types = json::object();
    for (int i = 0; i < f.profile.degree(); ++i) types[f.profile.label(i)] = type_to_json(f.types[i]);
    j["types"] = types;
    json ds = json::object();
    for (auto& [i, s] : f.diag_sign) ds[f.profile.label(i)] = s;
    j["diag_sign"] = ds;
    return j;
}

}  // namespace pf
