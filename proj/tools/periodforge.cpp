#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "periodforge/admissible.hpp"
#include "periodforge/automorphic.hpp"
#include "periodforge/error.hpp"
#include "periodforge/gamma.hpp"
#include "periodforge/gen.hpp"
#include "periodforge/hodge.hpp"
#include "periodforge/interlace.hpp"
#include "periodforge/periods.hpp"
#include "periodforge/theorem.hpp"

using nlohmann::json;
using namespace pf;

namespace {

constexpr int kOk = 0, kFinding = 1, kInput = 2;

std::uint64_t g_seed = 0;
std::string g_output = "json";

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ParseError", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail("ParseError", path + ": " + e.what());
    }
}

HodgeFamily read_family(const std::string& path) { return family_from_json(read_json(path)); }

void emit(json report) {
    report["seed"] = g_seed;
    if (g_output == "text") {
        for (auto& [k, v] : report.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

// errors that are mathematical findings rather than bad input
bool is_finding(const std::string& code) {
    static const std::set<std::string> f{"OracleDisagreement", "TableMismatch", "OddExponent", "MultipleUnknowns"};
    return f.count(code) > 0;
}

FieldKind parse_kind(const std::string& s) {
    if (s == "real") return FieldKind::TotallyReal;
    if (s == "cm") return FieldKind::CM;
    fail("ParseError", "profile must be real or cm");
}

json violations_json(const std::vector<Violation>& vs) {
    json a = json::array();
    for (auto& v : vs) a.push_back({{"code", v.code}, {"where", v.where}});
    return a;
}

int require_valid_or_report(const HodgeFamily& f, const std::string& what) {
    auto vs = validate_family(f);
    if (vs.empty()) return kOk;
    emit({{"ok", false}, {"input", what}, {"error", vs.front().code}, {"violations", violations_json(vs)}});
    return kInput;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("PERIODFORGE_SEED")) {
        try {
            g_seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "PERIODFORGE_SEED is not an integer\n";
            return kInput;
        }
    }

    CLI::App app{"periodforge: Hodge data, period factorizations and Whittaker-period checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g_seed, "seed for generated data (default: $PERIODFORGE_SEED or 0)");
    app.add_option("--output", g_output, "json or text")->check(CLI::IsMember({"json", "text"}));

    int code = kOk;

    // hodge
    auto* hodge = app.add_subcommand("hodge", "Hodge families");
    hodge->require_subcommand(1);
    std::string fa, fb;
    int place = 0;
    auto* h_val = hodge->add_subcommand("validate", "check a Hodge family");
    h_val->add_option("file", fa)->required();
    h_val->callback([&] {
        auto f = read_family(fa);
        auto vs = validate_family(f);
        if (!vs.empty()) {
            emit({{"ok", false}, {"error", vs.front().code}, {"violations", violations_json(vs)}});
            code = kInput;
            return;
        }
        emit({{"ok", true}, {"regular", f.regular()}});
    });
    auto* h_ten = hodge->add_subcommand("tensor", "Hodge types of the tensor product per embedding");
    h_ten->add_option("a", fa)->required();
    h_ten->add_option("b", fb)->required();
    h_ten->callback([&] {
        auto A = read_family(fa), B = read_family(fb);
        if ((code = require_valid_or_report(A, fa)) || (code = require_valid_or_report(B, fb))) return;
        if (!(A.profile == B.profile)) fail("ProfileMismatch", "families over different profiles");
        json types = json::object();
        for (int e = 0; e < A.profile.degree(); ++e) types[A.profile.label(e)] = type_to_json(tensor(A.at(e), B.at(e)));
        emit({{"weight", A.weight + B.weight}, {"rank", A.rank * B.rank}, {"types", types}});
    });
    auto* h_shape = hodge->add_subcommand("shape", "filtration shape and eigenspace split at a place");
    h_shape->add_option("file", fa)->required();
    h_shape->add_option("--place", place, "place index");
    h_shape->callback([&] {
        auto f = read_family(fa);
        if ((code = require_valid_or_report(f, fa))) return;
        auto sh = filtration_shape(f, place);
        auto eig = eigen_dims(f, place);
        emit({{"jumps", sh.jumps}, {"mults", sh.mults}, {"dstar", sh.dstar}, {"split", {eig.first, eig.second}}});
    });

    // admissible
    auto* adm = app.add_subcommand("admissible", "admissible types");
    adm->require_subcommand(1);
    auto* a_chk = adm->add_subcommand("check", "test the admissibility conditions");
    a_chk->add_option("file", fa)->required();
    a_chk->callback([&] {
        auto ty = admissible_from_json(read_json(fa));
        auto r = is_admissible(ty);
        json out{{"admissible", r.ok}};
        if (!r.ok) {
            out["failed"] = std::string(1, r.failed);
            out["detail"] = r.detail;
            code = kFinding;
        }
        emit(out);
    });
    auto* a_dec = adm->add_subcommand("decompose", "write an admissible type in the basis types");
    a_dec->add_option("file", fa)->required();
    a_dec->callback([&] {
        auto ty = admissible_from_json(read_json(fa));
        auto all = decompose_all(ty);
        auto d = decompose(ty);
        emit({{"decomposition", decomposition_to_json(d)}, {"recomposed", admissible_to_json(recompose(d, ty.s, ty.dplus, ty.dminus))}, {"solutions", all.size()}});
    });

    // interlace
    auto* il = app.add_subcommand("interlace", "interlace conditions between M (rank n+1) and N (rank n)");
    il->require_subcommand(1);
    bool strong = false;
    std::optional<int> qopt;
    auto* i_chk = il->add_subcommand("check", "interlace test; scans Q unless --q is given");
    i_chk->add_option("m", fa)->required();
    i_chk->add_option("n", fb)->required();
    i_chk->add_flag("--strong", strong);
    i_chk->add_option("--q", qopt);
    i_chk->callback([&] {
        auto M = read_family(fa), N = read_family(fb);
        if ((code = require_valid_or_report(M, fa)) || (code = require_valid_or_report(N, fb))) return;
        json out{{"strong", strong}};
        if (qopt) {
            bool h = strong ? check_strong_interlace(M, N, *qopt) : check_interlace(M, N, *qopt);
            out["q"] = *qopt;
            out["holds"] = h;
            if (!h) code = kFinding;
        } else {
            auto r = interlace_range(M, N, strong);
            out["holds"] = r.holds;
            if (r.holds) out["q_range"] = {r.lo, r.hi};
            out["notes"] = r.notes;
            if (!r.holds) code = kFinding;
        }
        emit(out);
    });
    auto* i_q = il->add_subcommand("qvalue", "the integer q at a place");
    i_q->add_option("m", fa)->required();
    i_q->add_option("n", fb)->required();
    i_q->add_option("--place", place);
    i_q->callback([&] {
        auto M = read_family(fa), N = read_family(fb);
        if ((code = require_valid_or_report(M, fa)) || (code = require_valid_or_report(N, fb))) return;
        auto fil = fil_condition(M, N, place);
        json out{{"q", q_value(M, N, place)}, {"fil", fil.holds}};
        if (fil.q_minus) out["q_minus"] = *fil.q_minus;
        if (fil.q_plus) out["q_plus"] = *fil.q_plus;
        emit(out);
    });
    auto* i_part = il->add_subcommand("partition", "split the tensor Hodge pairs at q");
    i_part->add_option("m", fa)->required();
    i_part->add_option("n", fb)->required();
    i_part->add_option("--place", place);
    i_part->callback([&] {
        auto M = read_family(fa), N = read_family(fb);
        if ((code = require_valid_or_report(M, fa)) || (code = require_valid_or_report(N, fb))) return;
        auto p = partition_tensor(M, N, place);
        const int t = N.rank;
        const bool cx = M.profile.places().at(place).complex;
        const int want = cx ? 2 * t * (t + 1) : t * (t + 1) / 2;
        bool ok = static_cast<int>(p.below.size()) == want && static_cast<int>(p.atabove.size()) == want;
        if (!ok) code = kFinding;
        emit({{"q", p.q}, {"below", p.below}, {"at_or_above", p.atabove}, {"expected_each", want}, {"balanced", ok}});
    });

    // critical
    auto* crit = app.add_subcommand("critical", "critical points of the Rankin-Selberg pair");
    crit->add_option("--a", fa, "parameter of rank n+1")->required();
    crit->add_option("--b", fb, "parameter of rank n")->required();
    crit->callback([&] {
        auto A = parameter_from_json(read_json(fa)), B = parameter_from_json(read_json(fb));
        auto r = critical_points_both(A, B);
        if (!r.agree()) {
            emit({{"error", "OracleDisagreement"}, {"by_weights", r.by_weights}, {"by_gamma", r.by_gamma}});
            code = kFinding;
            return;
        }
        emit({{"crit", r.by_weights}});
    });

    // factorize
    auto* fac = app.add_subcommand("factorize", "c+-(M x N) at a place in fundamental periods");
    std::string sign_s = "+";
    bool strict = false;
    fac->add_option("m", fa)->required();
    fac->add_option("n", fb)->required();
    fac->add_option("--place", place);
    fac->add_option("--sign", sign_s)->check(CLI::IsMember({"+", "-"}));
    fac->add_flag("--strict", strict, "fail when the pipeline and the closed-form table disagree");
    fac->callback([&] {
        auto M = read_family(fa), N = read_family(fb);
        if ((code = require_valid_or_report(M, fa)) || (code = require_valid_or_report(N, fb))) return;
        const int s = sign_s == "+" ? 1 : -1;
        auto f = factorize_tensor(M, N, place, s);
        json out{{"q", f.q},
                 {"phi", admissible_to_json(f.phi)},
                 {"psi", admissible_to_json(f.psi)},
                 {"phi_decomposition", decomposition_to_json(f.phi_dec)},
                 {"psi_decomposition", decomposition_to_json(f.psi_dec)},
                 {"pipeline", f.pipeline.str()},
                 {"table", f.table.str()},
                 {"literal_match", f.literal_match}};
        if (strict && !f.literal_match) code = kFinding;
        emit(out);
    });

    // gamma
    auto* gam = app.add_subcommand("gamma", "Gamma factors and the period-product check");
    gam->require_subcommand(1);
    auto* g_pp = gam->add_subcommand("verify-perprod", "L_inf(m) c+(X(m)) against the closed form");
    std::string profile_s = "real";
    int shift = 0, rank = 2, degree = 1;
    g_pp->add_option("--m", fa, "Hodge family M (rank n+1); omit both files to draw a random pair");
    g_pp->add_option("--n", fb, "Hodge family N (rank n)");
    g_pp->add_option("--shift", shift, "Tate twist m");
    g_pp->add_option("--profile", profile_s)->check(CLI::IsMember({"real", "cm"}));
    g_pp->add_option("--rank", rank, "rank of N for a random pair");
    g_pp->add_option("--degree", degree, "field degree for a random pair");
    g_pp->callback([&] {
        HodgeFamily M, N;
        if (fa.empty() != fb.empty()) fail("ParseError", "give both --m and --n, or neither");
        if (!fa.empty()) {
            M = read_family(fa);
            N = read_family(fb);
            if ((code = require_valid_or_report(M, fa)) || (code = require_valid_or_report(N, fb))) return;
        } else {
            gen::Rng rng(g_seed);
            auto kind = parse_kind(profile_s);
            auto prof = kind == FieldKind::CM ? FieldProfile::cm(2 * degree) : FieldProfile::totally_real(degree);
            std::tie(M, N) = gen::interlaced_pair(rng, rank, prof);
        }
        auto r = verify_perprod(M, N, shift);
        json out{{"m", family_to_json(M)}, {"n", family_to_json(N)}, {"shift", shift}};
        if (r.not_critical) {
            out["not_critical"] = true;
            code = kFinding;
            emit(out);
            return;
        }
        out["lhs"] = r.lhs.str();
        out["rhs"] = r.rhs.str();
        out["delta"] = r.delta.str();
        out["pass"] = r.pass;
        out["gamma_exponent"] = r.gamma_brute;
        out["reading_lambda"] = r.reading_lambda;
        out["reading_2lambda"] = r.reading_2lambda;
        out["matches_lambda"] = r.matches_lambda;
        out["matches_2lambda"] = r.matches_2lambda;
        out["determinate"] = r.determinate;
        out["notes"] = r.notes;
        const bool cm = M.profile.kind() == FieldKind::CM;
        if (cm ? !r.determinate : !r.pass) code = kFinding;
        emit(out);
    });

    // weights
    auto* wts = app.add_subcommand("weights", "highest weights");
    wts->require_subcommand(1);
    auto* w_comp = wts->add_subcommand("companion", "companion weight of rank n for a weight of rank n+1");
    w_comp->add_option("file", fa)->required();
    w_comp->callback([&] {
        auto mu = weight_from_json(read_json(fa));
        auto c = companion_weight(mu);
        auto m0 = strong_weight_interlace(mu, c);
        const bool ok = good_position(c) && !m0.empty();
        if (!ok) code = kFinding;
        emit({{"companion", weight_to_json(c)}, {"good_position", good_position(c)}, {"strong_m0", m0}});
    });
    auto* w_good = wts->add_subcommand("goodpos", "good-position test");
    w_good->add_option("file", fa)->required();
    w_good->callback([&] {
        auto mu = weight_from_json(read_json(fa));
        emit({{"good_position", good_position(mu)}});
    });

    // theorem
    auto* thm = app.add_subcommand("theorem", "Whittaker-period induction");
    thm->require_subcommand(1);
    auto* t_ver = thm->add_subcommand("verify", "derive p(pi^(k)) up to nmax and compare with the closed form");
    int nmax = 3;
    degree = 1;
    t_ver->add_option("--profile", profile_s)->check(CLI::IsMember({"real", "cm"}));
    t_ver->add_option("--degree", degree, "field degree (even for cm)");
    t_ver->add_option("--nmax", nmax);
    t_ver->callback([&] {
        auto kind = parse_kind(profile_s);
        int deg = degree;
        if (kind == FieldKind::CM && deg % 2) fail("ParseError", "CM degree must be even");
        auto r = verify_chain(kind, deg, nmax, g_seed);
        if (!r.pass()) code = kFinding;
        auto j = chain_to_json(r);
        j.erase("seed");
        emit(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    } catch (const pf::Error& e) {
        emit({{"error", e.code()}, {"detail", e.what()}});
        return is_finding(e.code()) ? kFinding : kInput;
    }
    return code;
}
