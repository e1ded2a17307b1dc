#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "triq/mfield.hpp"

namespace triq {

// The seven base units of the quadratic subfields, in basis order.
enum class RadU { r2 = 0, rp1, rp2, r2p1, r2p2, rp1p2, r2p1p2 };
Int radicand_of(RadU r, const Int& p1, const Int& p2);

// Formal product of base units with rational exponents and a sign.
// Exponent denominators are 2 for square-root generators and 4 only for
// generators resolved from nested square roots.
struct UnitWord {
    int sign = 1;
    std::array<Rat, 7> exps{};
};

struct Generator {
    std::string label;
    UnitWord word;
    MQElement value;
};

enum class Theorem { MT1A, MT3, MT4 };

struct CaseId {
    Theorem theorem;
    int item = 0;
    char sub = 0;  // 'a'/'b' where applicable, 0 otherwise
    bool swapped = false;

    std::string label() const;  // e.g. "MT3.7b"
};

struct SqrtHalfParams {
    Int p;
    Int alpha1, alpha2;
    int u = 0;  // (alpha1^2 - 2p*alpha2^2)/2 = (-1)^u
};

// Lemma-7 data for sqrt(e_2p) = (alpha1 + alpha2*sqrt(2p))/sqrt(2).
SqrtHalfParams lemma7_params(const Int& p);

enum class SqrtForm { F1, F2, F3 };  // see sqrt_2p1p2_form
struct SqrtFormResult {
    SqrtForm tag;
    int shift_sign;        // which of x+1 / x-1 fired
    bool contradiction;    // none or several families fired
};

// Shape of sqrt(e_2p1p2) per the three factorization families:
// F1 = (y1/2)sqrt(2)+y2*sqrt(p1p2), F2 = y1*sqrt(p2)+(y2/2)sqrt(2p1),
// F3 = y1*sqrt(p1)+(y2/2)sqrt(2p2); requires N(e_2p1p2) = +1.
SqrtFormResult sqrt_2p1p2_form(const Int& p1, const Int& p2);

struct Config {
    Int oracle_bound = 1000000;
    bool run_lemma10_asserts = true;
};

struct ResolutionEntry {
    std::string tuple;
    bool square = false;
};

struct ResolutionRecord {
    bool searched = false;
    std::vector<ResolutionEntry> tried;
    std::optional<std::string> witness;
};

struct H2Entry {
    Int d;
    Int value;
    H2Source source;
    std::optional<Int> oracle_value;  // recorded when both lemma and oracle exist
};

struct LResults {
    bool covered = false;
    int delta = 0;          // log2(qK) - 4
    std::optional<int> delta_corollary;  // (5,5) pairs: k3 criterion
    std::optional<Int> qL;
    std::optional<Int> h2L;
    std::string torsion = "zeta8";
};

struct CaseReport {
    Int p1, p2;             // as given by the caller
    int p1_mod8 = 0, p2_mod8 = 0;
    NormSignature signature;  // in caller order
    CaseId case_id;
    std::map<std::string, bool> conditions;
    std::optional<SqrtHalfParams> lemma7_u;  // for the canonical p2 role
    std::optional<SqrtHalfParams> lemma7_v;  // for the canonical p1 role
    std::vector<Generator> generators;       // 7, in canonical order
    Int qK;
    bool resolved_by_search = false;
    ResolutionRecord resolution;
    std::vector<H2Entry> h2_subfields;  // the 7 quadratic subfields
    Int h2K;
    std::optional<Int> h2K_closed_form;  // MT1A cross-check value
    LResults L;
    bool contradiction = false;
    std::vector<std::string> notes;

    std::string to_json() const;  // schema 1, deterministic key order
};

CaseId classify(const Int& p1, const Int& p2);

// F.S.U of a biquadratic subfield as words over the base units.
std::vector<UnitWord> biquad_fsu(SubfieldId sf, const Int& p1, const Int& p2);

CaseReport analyze(const Int& p1, const Int& p2, const Config& cfg = {});

// Generators + qK only (shares the analyze machinery).
std::pair<std::vector<Generator>, Int> synthesize_fsu(const CaseId& id, const Int& p1,
                                                      const Int& p2);

ResolutionRecord resolve_ambiguous(const CaseId& id, const Int& p1, const Int& p2);

// h2(K) by the Wada formula with v = 9; throws on non-integral result.
Int h2_K(const Int& qK, const std::vector<H2Entry>& subfield_h2);

}  // namespace triq
