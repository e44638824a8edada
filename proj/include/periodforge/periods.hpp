#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "periodforge/admissible.hpp"
#include "periodforge/hodge.hpp"

namespace pf {

// +-1 times a product of free +-1 symbols e_k (e_k^2 = 1)
struct Sign {
    int coef = 1;
    std::set<int> syms;

    static Sign plus() { return {}; }
    static Sign minus() { return {-1, {}}; }
    static Sign of(int c) { return {c >= 0 ? 1 : -1, {}}; }
    static Sign symbol(int k, int c = 1) { return {c >= 0 ? 1 : -1, {k}}; }
    static Sign parse(const std::string& s);

    bool concrete() const { return syms.empty(); }
    Sign operator*(const Sign& o) const;
    Sign operator-() const { return {-coef, syms}; }
    // replace e_k by v
    Sign substitute(int k, const Sign& v) const;
    std::string str() const;
    bool operator==(const Sign&) const = default;
};

enum class AtomKind { Delta, CPM, CBeta, TwoPiI, DeligneC, DeltaRes, WhittakerP };

class PeriodAtom {
public:
    static PeriodAtom delta(const std::string& id, const std::string& place);
    static PeriodAtom cpm(const std::string& id, const std::string& place, Sign s);
    // beta = 0 gives delta
    static PeriodAtom cbeta(const std::string& id, const std::string& place, int beta);
    static PeriodAtom two_pi_i();
    static PeriodAtom deligne(const std::string& id, Sign s);
    static PeriodAtom delta_res(const std::string& id);
    static PeriodAtom whittaker(const std::string& rep, Sign s);

    AtomKind kind() const { return kind_; }
    const std::string& id() const { return id_; }
    const std::string& place() const { return place_; }
    const Sign& sign() const { return sign_; }
    int beta() const { return beta_; }
    const std::string& text() const { return text_; }

    bool operator<(const PeriodAtom& o) const { return text_ < o.text_; }
    bool operator==(const PeriodAtom& o) const { return text_ == o.text_; }

private:
    PeriodAtom(AtomKind k, std::string id, std::string place, Sign s, int beta);
    AtomKind kind_;
    std::string id_, place_;
    Sign sign_;
    int beta_ = 0;
    std::string text_;
};

class PeriodExpression {
public:
    PeriodExpression() = default;
    explicit PeriodExpression(const PeriodAtom& a, long e = 1);

    PeriodExpression operator*(const PeriodExpression& o) const;
    PeriodExpression operator/(const PeriodExpression& o) const;
    PeriodExpression& operator*=(const PeriodExpression& o);
    PeriodExpression pow(long e) const;
    PeriodExpression inverse() const { return pow(-1); }

    long exponent(const PeriodAtom& a) const;
    bool is_one() const { return exps_.empty(); }
    const std::map<PeriodAtom, long>& terms() const { return exps_; }
    long two_pi_i_exponent() const { return exponent(PeriodAtom::two_pi_i()); }
    std::string str() const;
    bool operator==(const PeriodExpression& o) const { return exps_ == o.exps_; }

private:
    void add(const PeriodAtom& a, long e);
    std::map<PeriodAtom, long> exps_;
};

PeriodExpression two_pi_i_pow(long e);
PeriodExpression parse_expression(const std::string& text);

// motive-id -> Hodge data for place kinds, p-sums and shapes
using PeriodContext = std::map<std::string, HodgeFamily>;

struct SimplifyOptions {
    bool expand_deligne = true;  // c(Res M) -> product over places
    bool fold_cbeta = true;      // c_{min(t+-)} -> c+ c- when t+ + t- = t
};

PeriodExpression simplify(const PeriodExpression& e, const PeriodContext& ctx, SimplifyOptions opt = {});

int lambda_of(const HodgeFamily& f);
PeriodExpression c_tilde(const HodgeFamily& f, const std::string& id);

struct Factorization {
    PeriodExpression pipeline;   // from the counting formulas + basis decomposition
    PeriodExpression table;      // closed form read literally
    bool literal_match = false;  // pipeline == table after simplify
    AdmissibleType phi, psi;
    BasisDecomposition phi_dec, psi_dec;
    int q = 0;
};

// sign is the sign of c^{+-}_v(M, N); place is a place index of the common profile
Factorization factorize_tensor(const HodgeFamily& fM, const HodgeFamily& fN, int place, int sign,
                               const std::string& idM = "M", const std::string& idN = "N");
// strict form: TableMismatch when the pipeline disagrees with the literal table
PeriodExpression factorize_tensor_cpm(const HodgeFamily& fM, const HodgeFamily& fN, int place, int sign,
                                      const std::string& idM = "M", const std::string& idN = "N");

// closed form with the complex-place beta index doubled, for shapes where tau and rho-tau
// jumps are all distinct
PeriodExpression transported_complex_table(const HodgeFamily& fM, const HodgeFamily& fN, int place,
                                           const std::string& idM, const std::string& idN);

}  // namespace pf
