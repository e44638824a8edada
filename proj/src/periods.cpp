#include "periodforge/periods.hpp"

#include <algorithm>
#include <sstream>

#include "periodforge/error.hpp"
#include "periodforge/interlace.hpp"

namespace pf {

// ---- Sign ----

Sign Sign::operator*(const Sign& o) const {
    Sign r{coef * o.coef, {}};
    std::set_symmetric_difference(syms.begin(), syms.end(), o.syms.begin(), o.syms.end(),
                                  std::inserter(r.syms, r.syms.begin()));
    return r;
}

Sign Sign::substitute(int k, const Sign& v) const {
    if (!syms.count(k)) return *this;
    Sign rest = *this;
    rest.syms.erase(k);
    return rest * v;
}

std::string Sign::str() const {
    std::string s = coef > 0 ? "+" : "-";
    for (int k : syms) s += "e" + std::to_string(k);
    return s;
}

Sign Sign::parse(const std::string& s) {
    if (s.empty() || (s[0] != '+' && s[0] != '-')) fail("ParseError", "sign '" + s + "'");
    Sign r{s[0] == '+' ? 1 : -1, {}};
    size_t i = 1;
    while (i < s.size()) {
        if (s[i] != 'e') fail("ParseError", "sign '" + s + "'");
        size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) fail("ParseError", "sign '" + s + "'");
        r = r * Sign::symbol(std::stoi(s.substr(i + 1, j - i - 1)));
        i = j;
    }
    return r;
}

// ---- atoms ----

PeriodAtom::PeriodAtom(AtomKind k, std::string id, std::string place, Sign s, int beta)
    : kind_(k), id_(std::move(id)), place_(std::move(place)), sign_(std::move(s)), beta_(beta) {
    switch (kind_) {
        case AtomKind::Delta: text_ = "delta[" + id_ + "," + place_ + "]"; break;
        case AtomKind::CPM: text_ = "cp[" + id_ + "," + place_ + "," + sign_.str() + "]"; break;
        case AtomKind::CBeta: text_ = "c" + std::to_string(beta_) + "[" + id_ + "," + place_ + "]"; break;
        case AtomKind::TwoPiI: text_ = "twopii"; break;
        case AtomKind::DeligneC: text_ = "cres[" + id_ + "," + sign_.str() + "]"; break;
        case AtomKind::DeltaRes: text_ = "deltares[" + id_ + "]"; break;
        case AtomKind::WhittakerP: text_ = "whit[" + id_ + "," + sign_.str() + "]"; break;
    }
}

PeriodAtom PeriodAtom::delta(const std::string& id, const std::string& place) {
    return PeriodAtom(AtomKind::Delta, id, place, {}, 0);
}
PeriodAtom PeriodAtom::cpm(const std::string& id, const std::string& place, Sign s) {
    return PeriodAtom(AtomKind::CPM, id, place, std::move(s), 0);
}
PeriodAtom PeriodAtom::cbeta(const std::string& id, const std::string& place, int beta) {
    if (beta < 0) fail("BetaOutOfRange", "negative beta");
    if (beta == 0) return delta(id, place);
    return PeriodAtom(AtomKind::CBeta, id, place, {}, beta);
}
PeriodAtom PeriodAtom::two_pi_i() { return PeriodAtom(AtomKind::TwoPiI, "", "", {}, 0); }
PeriodAtom PeriodAtom::deligne(const std::string& id, Sign s) {
    return PeriodAtom(AtomKind::DeligneC, id, "", std::move(s), 0);
}
PeriodAtom PeriodAtom::delta_res(const std::string& id) { return PeriodAtom(AtomKind::DeltaRes, id, "", {}, 0); }
PeriodAtom PeriodAtom::whittaker(const std::string& rep, Sign s) {
    return PeriodAtom(AtomKind::WhittakerP, rep, "", std::move(s), 0);
}

// ---- expressions ----

PeriodExpression::PeriodExpression(const PeriodAtom& a, long e) { add(a, e); }

void PeriodExpression::add(const PeriodAtom& a, long e) {
    if (e == 0) return;
    auto it = exps_.find(a);
    if (it == exps_.end()) {
        exps_.emplace(a, e);
        return;
    }
    it->second += e;
    if (it->second == 0) exps_.erase(it);
}

PeriodExpression& PeriodExpression::operator*=(const PeriodExpression& o) {
    for (auto& [a, e] : o.exps_) add(a, e);
    return *this;
}

PeriodExpression PeriodExpression::operator*(const PeriodExpression& o) const {
    PeriodExpression r = *this;
    r *= o;
    return r;
}

PeriodExpression PeriodExpression::operator/(const PeriodExpression& o) const { return *this * o.inverse(); }

PeriodExpression PeriodExpression::pow(long e) const {
    PeriodExpression r;
    if (e == 0) return r;
    for (auto& [a, x] : exps_) r.exps_.emplace(a, x * e);
    return r;
}

long PeriodExpression::exponent(const PeriodAtom& a) const {
    auto it = exps_.find(a);
    return it == exps_.end() ? 0 : it->second;
}

std::string PeriodExpression::str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (auto& [a, e] : exps_) {
        if (!out.empty()) out += " * ";
        out += a.text() + "^" + std::to_string(e);
    }
    return out;
}

PeriodExpression two_pi_i_pow(long e) { return PeriodExpression(PeriodAtom::two_pi_i(), e); }

static PeriodAtom parse_atom(const std::string& tok) {
    if (tok == "twopii") return PeriodAtom::two_pi_i();
    auto lb = tok.find('[');
    if (lb == std::string::npos || tok.back() != ']') fail("ParseError", "atom '" + tok + "'");
    std::string head = tok.substr(0, lb);
    std::vector<std::string> args;
    std::stringstream ss(tok.substr(lb + 1, tok.size() - lb - 2));
    for (std::string x; std::getline(ss, x, ',');) args.push_back(x);
    auto need = [&](size_t n) {
        if (args.size() != n) fail("ParseError", "atom '" + tok + "' arity");
    };
    if (head == "delta") return need(2), PeriodAtom::delta(args[0], args[1]);
    if (head == "cp") return need(3), PeriodAtom::cpm(args[0], args[1], Sign::parse(args[2]));
    if (head == "cres") return need(2), PeriodAtom::deligne(args[0], Sign::parse(args[1]));
    if (head == "deltares") return need(1), PeriodAtom::delta_res(args[0]);
    if (head == "whit") return need(2), PeriodAtom::whittaker(args[0], Sign::parse(args[1]));
    if (head.size() > 1 && head[0] == 'c' &&
        std::all_of(head.begin() + 1, head.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return need(2), PeriodAtom::cbeta(args[0], args[1], std::stoi(head.substr(1)));
    fail("ParseError", "atom '" + tok + "'");
}

PeriodExpression parse_expression(const std::string& text) {
    PeriodExpression r;
    if (text == "1" || text.empty()) return r;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nxt = text.find(" * ", pos);
        std::string tok = text.substr(pos, nxt == std::string::npos ? std::string::npos : nxt - pos);
        auto caret = tok.rfind('^');
        long e = 1;
        if (caret != std::string::npos && tok.find(']', caret) == std::string::npos) {
            e = std::stol(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        r *= PeriodExpression(parse_atom(tok), e);
        if (nxt == std::string::npos) break;
        pos = nxt + 3;
    }
    return r;
}

// ---- simplify ----

namespace {

const std::string kRho = "^rho";

const HodgeFamily& lookup(const PeriodContext& ctx, const std::string& id) {
    auto it = ctx.find(id);
    if (it == ctx.end()) fail("MissingContext", "no Hodge data for motive '" + id + "'");
    return it->second;
}

int place_index(const HodgeFamily& f, const std::string& label) { return f.profile.place_of(f.profile.index_of(label)); }

const std::string& rep_label(const HodgeFamily& f, int place) { return f.profile.label(f.profile.places()[place].rep); }

PeriodAtom with_id(const PeriodAtom& a, const std::string& id) {
    switch (a.kind()) {
        case AtomKind::Delta: return PeriodAtom::delta(id, a.place());
        case AtomKind::CPM: return PeriodAtom::cpm(id, a.place(), a.sign());
        case AtomKind::CBeta: return PeriodAtom::cbeta(id, a.place(), a.beta());
        case AtomKind::DeligneC: return PeriodAtom::deligne(id, a.sign());
        case AtomKind::DeltaRes: return PeriodAtom::delta_res(id);
        case AtomKind::WhittakerP: return PeriodAtom::whittaker(id, a.sign());
        default: return a;
    }
}

PeriodAtom with_place(const PeriodAtom& a, const std::string& place) {
    switch (a.kind()) {
        case AtomKind::Delta: return PeriodAtom::delta(a.id(), place);
        case AtomKind::CPM: return PeriodAtom::cpm(a.id(), place, a.sign());
        case AtomKind::CBeta: return PeriodAtom::cbeta(a.id(), place, a.beta());
        default: return a;
    }
}

PeriodExpression rewrite(const PeriodAtom& a, const PeriodContext& ctx, const SimplifyOptions& opt, bool& changed) {
    if (a.id().size() > kRho.size() && a.id().compare(a.id().size() - kRho.size(), kRho.size(), kRho) == 0) {
        changed = true;
        return PeriodExpression(with_id(a, a.id().substr(0, a.id().size() - kRho.size())));
    }
    switch (a.kind()) {
        case AtomKind::TwoPiI:
        case AtomKind::WhittakerP:
            return PeriodExpression(a);
        case AtomKind::Delta:
        case AtomKind::CPM:
        case AtomKind::CBeta: {
            const auto& f = lookup(ctx, a.id());
            int pl = place_index(f, a.place());
            const auto& lab = rep_label(f, pl);
            if (lab != a.place()) {
                changed = true;
                return PeriodExpression(with_place(a, lab));
            }
            const bool complex = f.profile.places()[pl].complex;
            if (a.kind() == AtomKind::CPM && complex && !(a.sign() == Sign::plus())) {
                changed = true;
                return PeriodExpression(PeriodAtom::cpm(a.id(), lab, Sign::plus()));
            }
            if (a.kind() == AtomKind::CBeta && opt.fold_cbeta) {
                auto sh = filtration_shape(f, pl);
                auto eig = eigen_dims(f, pl);
                AdmissibleType probe;
                probe.s = sh.mults;
                probe.dplus = eig.first;
                probe.dminus = eig.second;
                try {
                    int tp = probe.tplus(), tm = probe.tminus();
                    if (tp + tm == sh.t() && a.beta() == std::min(tp, tm)) {
                        changed = true;
                        return PeriodExpression(PeriodAtom::cpm(a.id(), lab, Sign::plus())) *
                               PeriodExpression(PeriodAtom::cpm(a.id(), lab, Sign::minus()));
                    }
                } catch (const Error&) {
                    // split off the block boundaries: no fold
                }
            }
            return PeriodExpression(a);
        }
        case AtomKind::DeligneC: {
            if (!opt.expand_deligne) return PeriodExpression(a);
            const auto& f = lookup(ctx, a.id());
            const auto& pls = f.profile.places();
            bool has_real = std::any_of(pls.begin(), pls.end(), [](const Place& p) { return !p.complex; });
            if (!a.sign().concrete() && has_real) return PeriodExpression(a);
            PeriodExpression r;
            for (int k = 0; k < static_cast<int>(pls.size()); ++k)
                r *= PeriodExpression(PeriodAtom::cpm(a.id(), rep_label(f, k), a.sign()));
            changed = true;
            return r;
        }
        case AtomKind::DeltaRes: {
            const auto& f = lookup(ctx, a.id());
            long s = 0;
            for (auto& t : f.types)
                for (int p : t.p_values()) s += p;
            changed = true;
            return two_pi_i_pow(-s);
        }
    }
    return PeriodExpression(a);
}

}  // namespace

PeriodExpression simplify(const PeriodExpression& e, const PeriodContext& ctx, SimplifyOptions opt) {
    PeriodExpression cur = e;
    for (int round = 0; round < 64; ++round) {
        bool changed = false;
        PeriodExpression next;
        for (auto& [a, x] : cur.terms()) next *= rewrite(a, ctx, opt, changed).pow(x);
        cur = next;
        if (!changed) return cur;
    }
    fail("SimplifyDiverged", e.str());
}

int lambda_of(const HodgeFamily& f) {
    int s = 0;
    for (auto& t : f.types) {
        auto p = t.p_values();
        const int d = static_cast<int>(p.size());
        for (int i = 1; i <= d; ++i) s += p[i - 1] * (d - i);
    }
    return s;
}

static int ctilde_top(int d) { return d >= 2 ? (d - 1) / 2 : 0; }  // ceil(d/2 - 1)

PeriodExpression c_tilde(const HodgeFamily& f, const std::string& id) {
    PeriodExpression r;
    const int top = ctilde_top(f.rank);
    for (int e = 0; e < f.profile.degree(); ++e) {
        const auto& lab = rep_label(f, f.profile.place_of(e));
        for (int b = 1; b <= top; ++b) r *= PeriodExpression(PeriodAtom::cbeta(id, lab, b));
    }
    return r;
}

// ---- factorization ----

namespace {

PeriodExpression to_atoms(const BasisDecomposition& d, const std::string& id, const std::string& place) {
    PeriodExpression r;
    r *= PeriodExpression(PeriodAtom::delta(id, place), d.m_det);
    r *= PeriodExpression(PeriodAtom::cpm(id, place, Sign::plus()), d.m_plus);
    r *= PeriodExpression(PeriodAtom::cpm(id, place, Sign::minus()), d.m_minus);
    for (auto& [b, m] : d.m_beta) r *= PeriodExpression(PeriodAtom::cbeta(id, place, b), m);
    return r;
}

std::vector<int> jump_weights(const HodgeFamily& f, int place) {
    const auto& pl = f.profile.places()[place];
    auto w = f.at(pl.rep).p_values();
    if (pl.complex) {
        auto o = f.at(pl.other).p_values();
        w.insert(w.end(), o.begin(), o.end());
    }
    std::sort(w.begin(), w.end());
    return w;
}

PeriodExpression betas(const std::string& id, const std::string& place, int from, int to, int step, long exp) {
    PeriodExpression r;
    for (int b = from; b <= to; ++b) r *= PeriodExpression(PeriodAtom::cbeta(id, place, b * step), exp);
    return r;
}

PeriodExpression closed_form(const HodgeFamily& fM, const HodgeFamily& fN, int place, int sign, const std::string& idM,
                             const std::string& idN, int step) {
    const int dN = fN.rank;
    const auto& lab = rep_label(fM, place);
    const bool complex = fM.profile.places()[place].complex;
    const long e = complex ? 2 : 1;
    PeriodExpression r;
    if (dN % 2 == 0) {
        r *= betas(idM, lab, 1, dN / 2, step, e);
        r *= betas(idN, lab, 0, dN / 2 - 1, step, e);
        if (complex) {
            r *= PeriodExpression(PeriodAtom::cpm(idN, lab, Sign::plus()));
            r *= PeriodExpression(PeriodAtom::cpm(idN, lab, Sign::minus()));
        } else {
            auto eM = eigen_dims(fM, place);
            int epsM = eM.first > eM.second ? 1 : -1;
            r *= PeriodExpression(PeriodAtom::cpm(idN, lab, Sign::of(sign * epsM)));
        }
    } else {
        r *= betas(idM, lab, 1, (dN - 1) / 2, step, e);
        r *= betas(idN, lab, 0, (dN - 1) / 2, step, e);
        if (complex) {
            r *= PeriodExpression(PeriodAtom::cpm(idM, lab, Sign::plus()));
            r *= PeriodExpression(PeriodAtom::cpm(idM, lab, Sign::minus()));
        } else {
            auto eN = eigen_dims(fN, place);
            int epsN = eN.first > eN.second ? 1 : -1;
            r *= PeriodExpression(PeriodAtom::cpm(idM, lab, Sign::of(sign * epsN)));
        }
    }
    return r;
}

}  // namespace

Factorization factorize_tensor(const HodgeFamily& fM, const HodgeFamily& fN, int place, int sign,
                               const std::string& idM, const std::string& idN) {
    if (sign != 1 && sign != -1) fail("InvalidSign", std::to_string(sign));
    Factorization out;
    out.q = q_value(fM, fN, place);  // checks profile, ranks, regularity, strong interlace
    auto shM = filtration_shape(fM, place), shN = filtration_shape(fN, place);
    auto eM = eigen_dims(fM, place), eN = eigen_dims(fN, place);
    auto ft = tensor_factor_types(shM, eM, shN, eN, jump_weights(fN, place), jump_weights(fM, place), out.q);
    out.phi = sign > 0 ? ft.phi_plus : ft.phi_minus;
    out.psi = sign > 0 ? ft.psi_plus : ft.psi_minus;
    out.phi_dec = decompose(out.phi);
    out.psi_dec = decompose(out.psi);
    const auto& lab = rep_label(fM, place);
    out.pipeline = to_atoms(out.phi_dec, idM, lab) * to_atoms(out.psi_dec, idN, lab);
    out.table = closed_form(fM, fN, place, sign, idM, idN, 1);
    PeriodContext ctx{{idM, fM}, {idN, fN}};
    out.literal_match = simplify(out.pipeline, ctx) == simplify(out.table, ctx);
    return out;
}

PeriodExpression factorize_tensor_cpm(const HodgeFamily& fM, const HodgeFamily& fN, int place, int sign,
                                      const std::string& idM, const std::string& idN) {
    auto f = factorize_tensor(fM, fN, place, sign, idM, idN);
    if (!f.literal_match) fail("TableMismatch", "pipeline " + f.pipeline.str() + " vs table " + f.table.str());
    return f.pipeline;
}

PeriodExpression transported_complex_table(const HodgeFamily& fM, const HodgeFamily& fN, int place,
                                           const std::string& idM, const std::string& idN) {
    if (!fM.profile.places().at(place).complex) fail("InvalidPlace", "transported table is for complex places");
    return closed_form(fM, fN, place, 1, idM, idN, 2);
}

}  // namespace pf
