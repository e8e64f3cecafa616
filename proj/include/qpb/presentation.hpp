#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpb/qscalar.hpp"

namespace qpb {

using GenIndex = int;

struct Generator {
    std::string name;
    bool invertible = false;
    int weight = 1;  // grading weight; adjoined minors weigh their degree
    std::optional<std::pair<int, int>> matrix_pos;
};

struct Factor {
    GenIndex gen;
    int exp;
    bool operator==(const Factor&) const = default;
};

using Word = std::vector<Factor>;

/// PBW-shaped monomial: factors with strictly increasing generator index,
/// nonzero exponents; the empty list is the unit.
class Monomial {
  public:
    Monomial() = default;
    static Monomial unit() { return Monomial(); }
    static Monomial single(GenIndex g, int exp);
    /// Factors must already be strictly ascending with nonzero exponents.
    static Monomial from_sorted(Word f);

    bool is_unit() const { return f_.empty(); }
    const Word& factors() const { return f_; }
    int exp_of(GenIndex g) const;
    int signed_degree(const std::vector<Generator>& gens) const;
    size_t size() const { return f_.size(); }

    /// Componentwise divisibility with matching exponent signs.
    bool divisible_by(const Monomial& pattern) const;
    Monomial inverse_candidate() const;  // negate all exponents

    bool operator==(const Monomial& o) const { return f_ == o.f_; }
    bool operator<(const Monomial& o) const;

  private:
    Word f_;
};

/// Finite QScalar-linear combination of monomials in canonical form:
/// no zero coefficients stored.
class Element {
  public:
    Element() = default;
    static Element zero() { return Element(); }
    static Element unit(QScalar c = QScalar::one());
    static Element term(Monomial m, QScalar c);

    void add_term(const Monomial& m, const QScalar& c);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const QScalar& c) const;
    bool operator==(const Element& o) const { return t_ == o.t_; }

    bool is_zero() const { return t_.empty(); }
    /// Nonempty iff the element is c*1; returns c.
    std::optional<QScalar> as_scalar() const;
    size_t term_count() const { return t_.size(); }
    const std::map<Monomial, QScalar>& terms() const { return t_; }
    std::optional<QScalar> coeff_of(const Monomial& m) const;

  private:
    std::map<Monomial, QScalar> t_;
};

struct RawTerm {
    QScalar coeff;
    Word word;
};
using RawExpr = std::vector<RawTerm>;

RawExpr raw_of(const Element& e);
RawExpr raw_product(const Element& a, const Element& b);

/// Rewrite rule for an adjacent descending letter pair hi^hs * lo^ls -> rhs.
struct PairRule {
    GenIndex hi = -1, lo = -1;
    int hi_sign = 1, lo_sign = 1;
    Element rhs;
    bool pure = false;       // rhs is scalar * lo^ls * hi^hs
    QScalar pure_scalar;
};

/// Monomial pattern substitution applied after PBW ordering; the pattern is
/// extracted through pure q-commutations and replaced by rhs.
struct SubstRule {
    Monomial pattern;
    Element rhs;
};

struct missing_rule_error : qpb_error {
    using qpb_error::qpb_error;
};
struct budget_exceeded_error : qpb_error {
    using qpb_error::qpb_error;
};
struct extraction_error : qpb_error {
    using qpb_error::qpb_error;
};
struct localization_error : qpb_error {
    using qpb_error::qpb_error;
};

struct Report {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
    void fail(std::string msg) { failures.push_back(std::move(msg)); }
    void note(std::string msg) { notes.push_back(std::move(msg)); }
    void merge(const Report& o, const std::string& prefix);
};

struct NormalFormOptions {
    std::int64_t budget = 4'000'000;
    bool fail_on_missing_rule = false;  // return nullopt instead of throwing
    std::mt19937_64* rng = nullptr;     // randomized reduction order when set
};

/// Presented algebra over QScalar with a deterministic normal form.
class Presentation {
  public:
    GenIndex add_generator(Generator g);
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& gen(GenIndex i) const { return gens_.at(i); }
    std::optional<GenIndex> find_generator(const std::string& name) const;
    int size() const { return static_cast<int>(gens_.size()); }

    bool graded = true;  // enforce weight homogeneity of pair rules

    void add_pair_rule(GenIndex hi, int hi_sign, GenIndex lo, int lo_sign, Element rhs);
    void add_subst_rule(Monomial pattern, Element rhs);
    const PairRule* find_rule(GenIndex hi, int hi_sign, GenIndex lo, int lo_sign) const;
    const std::map<std::uint32_t, PairRule>& pair_rules() const { return pair_rules_; }
    const std::vector<SubstRule>& subst_rules() const { return subst_rules_; }

    Element normal_form(RawExpr expr, const NormalFormOptions& opts = {}) const;
    std::optional<Element> try_normal_form(RawExpr expr, const NormalFormOptions& opts) const;
    Element normalize(const Element& e, const NormalFormOptions& opts = {}) const;
    Element mul(const Element& a, const Element& b, const NormalFormOptions& opts = {}) const;
    Element mul(std::span<const Element> factors) const;
    Element power(const Element& a, int e) const;  // negative via invert_element
    Element gen_element(GenIndex g, int exp = 1) const;

    /// Scalar s with hi^hs * lo^ls = s * lo^ls * hi^hs, when that pair rule
    /// exists and is pure.
    std::optional<QScalar> pure_swap_scalar(GenIndex hi, int hi_sign, GenIndex lo,
                                            int lo_sign) const;

    /// Re-normalizes every rule right-hand side against the current system.
    void renormalize_rules();

    bool operator==(const Presentation& o) const;

  private:
    friend Presentation adjoin_inverse(const Presentation&, GenIndex);
    friend std::pair<Presentation, GenIndex> adjoin_element_inverse(const Presentation&,
                                                                    const Element&,
                                                                    const std::string&,
                                                                    const Monomial&);
    static std::uint32_t rule_key(GenIndex hi, int hi_sign, GenIndex lo, int lo_sign);
    void derive_inverse_rules(GenIndex g);
    void shrink_patterns_for(GenIndex g);

    std::vector<Generator> gens_;
    std::map<std::uint32_t, PairRule> pair_rules_;
    std::vector<SubstRule> subst_rules_;  // kept sorted by pattern size
};

/// Marks g invertible and derives the g^{-1} rewrite rules by solving the
/// existing relations; throws localization_error when the rule schema cannot
/// express the localization.
Presentation adjoin_inverse(const Presentation& p, GenIndex g);

/// Adjoins a new invertible generator tied to the element theta by the
/// substitution rule lead_pattern -> name - (theta - lead term). Commutation
/// rules of the new generator with every existing one are computed, with
/// non-pure corrections derived where needed.
std::pair<Presentation, GenIndex> adjoin_element_inverse(const Presentation& p,
                                                         const Element& theta,
                                                         const std::string& name,
                                                         const Monomial& lead_pattern);

/// Two-sided inverse of an element whose normal form is a single invertible
/// monomial term; nullopt otherwise.
std::optional<Element> invert_element(const Presentation& p, const Element& e);

/// Checks that mapping each generator of src to images[g] extends to an
/// algebra homomorphism src -> tgt (every relation maps to zero).
Report check_hom(const std::vector<Element>& images, const Presentation& src,
                 const Presentation& tgt);

Element map_monomial(const std::vector<Element>& images, const Monomial& m,
                     const Presentation& tgt);
Element map_element(const std::vector<Element>& images, const Element& e,
                    const Presentation& tgt);

struct SmokeResult {
    int trials = 0;
    std::vector<std::string> disagreements;
    bool ok() const { return disagreements.empty(); }
};

/// Randomized rewrite-order agreement test: normalizes random words with the
/// deterministic strategy and several randomized ones and compares.
SmokeResult confluence_smoke(const Presentation& p, int max_len, int trials,
                             std::uint64_t seed);

}  // namespace qpb
