#include "qpb/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace qpb {

Monomial Monomial::single(GenIndex g, int exp) {
    Monomial m;
    if (exp != 0) m.f_.push_back({g, exp});
    return m;
}

Monomial Monomial::from_sorted(Word f) {
    Monomial m;
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].exp == 0) throw qpb_error("zero exponent in monomial");
        if (i > 0 && f[i - 1].gen >= f[i].gen) throw qpb_error("monomial factors not ascending");
    }
    m.f_ = std::move(f);
    return m;
}

int Monomial::exp_of(GenIndex g) const {
    for (const auto& f : f_)
        if (f.gen == g) return f.exp;
    return 0;
}

int Monomial::signed_degree(const std::vector<Generator>& gens) const {
    int d = 0;
    for (const auto& f : f_) d += f.exp * gens[f.gen].weight;
    return d;
}

bool Monomial::divisible_by(const Monomial& pattern) const {
    for (const auto& pf : pattern.f_) {
        int e = exp_of(pf.gen);
        if (pf.exp > 0 && e < pf.exp) return false;
        if (pf.exp < 0 && e > pf.exp) return false;
    }
    return true;
}

Monomial Monomial::inverse_candidate() const {
    Monomial m(*this);
    for (auto& f : m.f_) f.exp = -f.exp;
    return m;
}

bool Monomial::operator<(const Monomial& o) const {
    return std::lexicographical_compare(
        f_.begin(), f_.end(), o.f_.begin(), o.f_.end(), [](const Factor& a, const Factor& b) {
            if (a.gen != b.gen) return a.gen < b.gen;
            return a.exp < b.exp;
        });
}

Element Element::unit(QScalar c) { return term(Monomial::unit(), c); }

Element Element::term(Monomial m, QScalar c) {
    Element e;
    e.add_term(m, c);
    return e;
}

void Element::add_term(const Monomial& m, const QScalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
}

Element Element::operator+(const Element& o) const {
    Element r(*this);
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

Element Element::operator-(const Element& o) const {
    Element r(*this);
    for (const auto& [m, c] : o.t_) r.add_term(m, -c);
    return r;
}

Element Element::operator-() const {
    Element r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
}

Element Element::scaled(const QScalar& s) const {
    Element r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, c * s);
    return r;
}

std::optional<QScalar> Element::as_scalar() const {
    if (t_.empty()) return QScalar::zero();
    if (t_.size() == 1 && t_.begin()->first.is_unit()) return t_.begin()->second;
    return std::nullopt;
}

std::optional<QScalar> Element::coeff_of(const Monomial& m) const {
    auto it = t_.find(m);
    if (it == t_.end()) return std::nullopt;
    return it->second;
}

RawExpr raw_of(const Element& e) {
    RawExpr r;
    for (const auto& [m, c] : e.terms()) r.push_back({c, m.factors()});
    return r;
}

RawExpr raw_product(const Element& a, const Element& b) {
    RawExpr r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Word w = ma.factors();
            const Word& wb = mb.factors();
            w.insert(w.end(), wb.begin(), wb.end());
            r.push_back({ca * cb, std::move(w)});
        }
    return r;
}

void Report::merge(const Report& o, const std::string& prefix) {
    for (const auto& f : o.failures) failures.push_back(prefix + f);
    for (const auto& n : o.notes) notes.push_back(prefix + n);
}

GenIndex Presentation::add_generator(Generator g) {
    if (find_generator(g.name)) throw qpb_error("duplicate generator name " + g.name);
    gens_.push_back(std::move(g));
    return static_cast<GenIndex>(gens_.size()) - 1;
}

std::optional<GenIndex> Presentation::find_generator(const std::string& name) const {
    for (GenIndex i = 0; i < size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

std::uint32_t Presentation::rule_key(GenIndex hi, int hi_sign, GenIndex lo, int lo_sign) {
    return (static_cast<std::uint32_t>(hi) << 17) | (hi_sign < 0 ? 1u << 16 : 0u) |
           (static_cast<std::uint32_t>(lo) << 1) | (lo_sign < 0 ? 1u : 0u);
}

void Presentation::add_pair_rule(GenIndex hi, int hi_sign, GenIndex lo, int lo_sign,
                                 Element rhs) {
    if (hi <= lo) throw qpb_error("pair rule must rewrite a descending pair");
    if ((hi_sign < 0 && !gens_[hi].invertible) || (lo_sign < 0 && !gens_[lo].invertible))
        throw qpb_error("inverse sign on non-invertible generator in rule");
    if (graded) {
        int lhs_deg = hi_sign * gens_[hi].weight + lo_sign * gens_[lo].weight;
        for (const auto& [m, c] : rhs.terms())
            if (m.signed_degree(gens_) != lhs_deg)
                throw qpb_error("pair rule not weight-homogeneous: " + gens_[hi].name + "," +
                                gens_[lo].name);
    }
    PairRule r{hi, lo, hi_sign, lo_sign, rhs, false, QScalar::zero()};
    // pure q-commutation detection: rhs == s * lo^ls * hi^hs
    if (rhs.term_count() == 1) {
        Word w{{lo, lo_sign}, {hi, hi_sign}};
        Monomial swapped = Monomial::from_sorted(w);
        if (auto c = rhs.coeff_of(swapped)) {
            r.pure = true;
            r.pure_scalar = *c;
        }
    }
    pair_rules_[rule_key(hi, hi_sign, lo, lo_sign)] = std::move(r);
}

void Presentation::add_subst_rule(Monomial pattern, Element rhs) {
    if (pattern.is_unit()) throw qpb_error("empty substitution pattern");
    subst_rules_.push_back({std::move(pattern), std::move(rhs)});
    std::stable_sort(subst_rules_.begin(), subst_rules_.end(),
                     [](const SubstRule& a, const SubstRule& b) {
                         return a.pattern.size() < b.pattern.size();
                     });
}

const PairRule* Presentation::find_rule(GenIndex hi, int hi_sign, GenIndex lo,
                                        int lo_sign) const {
    auto it = pair_rules_.find(rule_key(hi, hi_sign, lo, lo_sign));
    if (it == pair_rules_.end()) return nullptr;
    return &it->second;
}

std::optional<QScalar> Presentation::pure_swap_scalar(GenIndex hi, int hi_sign, GenIndex lo,
                                                      int lo_sign) const {
    const PairRule* r = find_rule(hi, hi_sign, lo, lo_sign);
    if (!r || !r->pure) return std::nullopt;
    return r->pure_scalar;
}

namespace {

// Merge adjacent same-generator factors, drop zero exponents, and validate
// inverse legality.
void merge_word(Word& w, const std::vector<Generator>& gens) {
    size_t out = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i].exp == 0) continue;
        if (out > 0 && w[out - 1].gen == w[i].gen) {
            w[out - 1].exp += w[i].exp;
            if (w[out - 1].exp == 0) --out;
        } else {
            w[out++] = w[i];
        }
    }
    w.resize(out);
    for (const auto& f : w)
        if (f.exp < 0 && !gens[f.gen].invertible)
            throw qpb_error("negative exponent on non-invertible generator " + gens[f.gen].name);
}

int sign_of(int x) { return x < 0 ? -1 : 1; }

}  // namespace

Element Presentation::gen_element(GenIndex g, int exp) const {
    if (exp < 0 && !gens_[g].invertible)
        throw qpb_error("negative power of non-invertible generator");
    return Element::term(Monomial::single(g, exp), QScalar::one());
}

std::optional<Element> Presentation::try_normal_form(RawExpr expr,
                                                     const NormalFormOptions& opts) const {
    std::deque<RawTerm> work(expr.begin(), expr.end());
    Element out;
    std::int64_t steps = 0;
    auto random_index = [&](size_t n) -> size_t {
        if (!opts.rng || n <= 1) return 0;
        return static_cast<size_t>((*opts.rng)() % n);
    };
    while (!work.empty()) {
        RawTerm t = std::move(work.front());
        work.pop_front();
        if (t.coeff.is_zero()) continue;
        bool consumed = false;
        while (!consumed) {
            if (++steps > opts.budget)
                throw budget_exceeded_error("rewrite step budget exceeded (defective rule set?)");
            merge_word(t.word, gens_);
            // collect descending adjacent positions
            std::vector<size_t> desc;
            for (size_t i = 0; i + 1 < t.word.size(); ++i)
                if (t.word[i].gen > t.word[i + 1].gen) desc.push_back(i);
            if (!desc.empty()) {
                size_t i = desc[random_index(desc.size())];
                Factor& fh = t.word[i];
                Factor& fl = t.word[i + 1];
                const PairRule* rule =
                    find_rule(fh.gen, sign_of(fh.exp), fl.gen, sign_of(fl.exp));
                if (!rule) {
                    if (opts.fail_on_missing_rule) return std::nullopt;
                    throw missing_rule_error("no rewrite rule for pair " + gens_[fh.gen].name +
                                             "," + gens_[fl.gen].name);
                }
                if (rule->pure) {
                    long crossings =
                        static_cast<long>(std::abs(fh.exp)) * static_cast<long>(std::abs(fl.exp));
                    t.coeff = t.coeff * rule->pure_scalar.pow(static_cast<int>(crossings));
                    std::swap(fh, fl);
                    continue;
                }
                // peel one letter from each side and substitute the rule rhs
                int hs = sign_of(fh.exp), ls = sign_of(fl.exp);
                Word prefix(t.word.begin(), t.word.begin() + i);
                Word suffix(t.word.begin() + i + 2, t.word.end());
                Factor hi_rest{fh.gen, fh.exp - hs};
                Factor lo_rest{fl.gen, fl.exp - ls};
                for (const auto& [m, c] : rule->rhs.terms()) {
                    RawTerm nt;
                    nt.coeff = t.coeff * c;
                    nt.word = prefix;
                    if (hi_rest.exp != 0) nt.word.push_back(hi_rest);
                    const Word& mw = m.factors();
                    nt.word.insert(nt.word.end(), mw.begin(), mw.end());
                    if (lo_rest.exp != 0) nt.word.push_back(lo_rest);
                    nt.word.insert(nt.word.end(), suffix.begin(), suffix.end());
                    work.push_back(std::move(nt));
                }
                consumed = true;
                continue;
            }
            // word is PBW-ordered; apply the first dividing substitution
            Monomial m = Monomial::from_sorted(t.word);
            const SubstRule* hit = nullptr;
            std::vector<const SubstRule*> hits;
            for (const auto& sr : subst_rules_)
                if (m.divisible_by(sr.pattern)) hits.push_back(&sr);
            if (!hits.empty()) hit = hits[random_index(hits.size())];
            if (!hit) {
                out.add_term(m, t.coeff);
                consumed = true;
                continue;
            }
            // extraction: assemble the pattern letters adjacently via pure
            // q-commutation moves, then splice in the rhs
            const Word& pat = hit->pattern.factors();
            Word w = t.word;
            QScalar scalar = QScalar::one();
            // index of each pattern generator in w
            std::vector<size_t> pos(pat.size());
            for (size_t pi = 0; pi < pat.size(); ++pi) {
                size_t j = 0;
                while (j < w.size() && w[j].gen != pat[pi].gen) ++j;
                pos[pi] = j;
            }
            size_t anchor = pos.back();
            // move pattern chunks (right to left) to just before the anchor
            for (size_t pi = pat.size() - 1; pi-- > 0;) {
                // chunk pat[pi] departs rightward from w[pos[pi]] and must
                // cross every factor strictly between it and the assembly
                // point, excluding chunks already removed (their exponents
                // were subtracted below)
                for (size_t j = pos[pi] + 1; j < anchor; ++j) {
                    if (w[j].exp == 0) continue;
                    auto lam = pure_swap_scalar(w[j].gen, sign_of(w[j].exp), pat[pi].gen,
                                                sign_of(pat[pi].exp));
                    if (!lam)
                        throw extraction_error(
                            "substitution extraction blocked: no pure commutation between " +
                            gens_[w[j].gen].name + " and " + gens_[pat[pi].gen].name);
                    long crossings = static_cast<long>(std::abs(pat[pi].exp)) *
                                     static_cast<long>(std::abs(w[j].exp));
                    scalar = scalar * lam->inverse().pow(static_cast<int>(crossings));
                }
                w[pos[pi]].exp -= pat[pi].exp;
            }
            w[anchor].exp -= pat.back().exp;
            Word prefix(w.begin(), w.begin() + anchor);
            Word suffix(w.begin() + anchor, w.end());
            for (const auto& [rm, rc] : hit->rhs.terms()) {
                RawTerm nt;
                nt.coeff = t.coeff * scalar * rc;
                nt.word = prefix;
                const Word& mw = rm.factors();
                nt.word.insert(nt.word.end(), mw.begin(), mw.end());
                nt.word.insert(nt.word.end(), suffix.begin(), suffix.end());
                work.push_back(std::move(nt));
            }
            consumed = true;
        }
    }
    return out;
}

Element Presentation::normal_form(RawExpr expr, const NormalFormOptions& opts) const {
    auto r = try_normal_form(std::move(expr), opts);
    if (!r) throw missing_rule_error("normal form hit a missing rule");
    return *r;
}

Element Presentation::normalize(const Element& e, const NormalFormOptions& opts) const {
    return normal_form(raw_of(e), opts);
}

Element Presentation::mul(const Element& a, const Element& b,
                          const NormalFormOptions& opts) const {
    return normal_form(raw_product(a, b), opts);
}

Element Presentation::mul(std::span<const Element> factors) const {
    Element acc = Element::unit();
    for (const auto& f : factors) acc = mul(acc, f);
    return acc;
}

Element Presentation::power(const Element& a, int e) const {
    if (e == 0) return Element::unit();
    Element base = a;
    if (e < 0) {
        auto inv = invert_element(*this, a);
        if (!inv) throw qpb_error("cannot invert element for negative power");
        base = *inv;
        e = -e;
    }
    Element acc = Element::unit();
    for (int i = 0; i < e; ++i) acc = mul(acc, base);
    return acc;
}

void Presentation::renormalize_rules() {
    // Only substitution right sides are re-reduced. Pair rules keep the
    // solved form mu*(x g) + C that inverse derivation decomposes; a pattern
    // firing inside a pair rhs is handled by the normal-form worklist anyway.
    for (auto& sr : subst_rules_) sr.rhs = normalize(sr.rhs);
}

bool Presentation::operator==(const Presentation& o) const {
    if (gens_.size() != o.gens_.size() || graded != o.graded) return false;
    for (size_t i = 0; i < gens_.size(); ++i) {
        const auto& a = gens_[i];
        const auto& b = o.gens_[i];
        if (a.name != b.name || a.invertible != b.invertible || a.weight != b.weight ||
            a.matrix_pos != b.matrix_pos)
            return false;
    }
    if (pair_rules_.size() != o.pair_rules_.size() ||
        subst_rules_.size() != o.subst_rules_.size())
        return false;
    for (const auto& [k, r] : pair_rules_) {
        auto it = o.pair_rules_.find(k);
        if (it == o.pair_rules_.end() || !(it->second.rhs == r.rhs)) return false;
    }
    for (size_t i = 0; i < subst_rules_.size(); ++i)
        if (!(subst_rules_[i].pattern == o.subst_rules_[i].pattern) ||
            !(subst_rules_[i].rhs == o.subst_rules_[i].rhs))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Localization

void Presentation::shrink_patterns_for(GenIndex g) {
    // A pattern ending in an invertible generator g shrinks: A*g^e = R gives
    // A = R*g^{-e}.
    for (auto& sr : subst_rules_) {
        while (!sr.pattern.factors().empty()) {
            Factor last = sr.pattern.factors().back();
            if (last.gen != g || !gens_[last.gen].invertible) break;
            Word pw = sr.pattern.factors();
            pw.pop_back();
            if (pw.empty()) throw localization_error("substitution pattern collapsed to unit");
            Element shifted =
                mul(sr.rhs, Element::term(Monomial::single(last.gen, -last.exp), QScalar::one()));
            sr.pattern = Monomial::from_sorted(pw);
            sr.rhs = shifted;
        }
    }
    std::stable_sort(subst_rules_.begin(), subst_rules_.end(),
                     [](const SubstRule& a, const SubstRule& b) {
                         return a.pattern.size() < b.pattern.size();
                     });
}

void Presentation::derive_inverse_rules(GenIndex g) {
    struct Pending {
        GenIndex other;
        int other_sign;
        bool g_high;  // derived rule is (g^{-1}, x^s) when true, (x^s, g^{-1}) otherwise
    };
    std::vector<Pending> pending;
    for (GenIndex x = 0; x < size(); ++x) {
        if (x == g) continue;
        std::vector<int> signs{1};
        if (gens_[x].invertible) signs.push_back(-1);
        for (int sx : signs) pending.push_back({x, sx, g > x});
    }
    NormalFormOptions strict;
    strict.fail_on_missing_rule = true;
    bool progress = true;
    while (progress && !pending.empty()) {
        progress = false;
        std::vector<Pending> next;
        for (const auto& pd : pending) {
            const PairRule* base = pd.g_high ? find_rule(g, 1, pd.other, pd.other_sign)
                                             : find_rule(pd.other, pd.other_sign, g, 1);
            if (!base)
                throw localization_error("no defining relation between " + gens_[g].name +
                                         " and " + gens_[pd.other].name);
            // decompose rhs = mu * (swapped pair) + C with C free of g
            Word sw = pd.g_high ? Word{{pd.other, pd.other_sign}, {g, 1}}
                                : Word{{g, 1}, {pd.other, pd.other_sign}};
            std::sort(sw.begin(), sw.end(),
                      [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
            Monomial swapped = Monomial::from_sorted(sw);
            auto mu = base->rhs.coeff_of(swapped);
            if (!mu || mu->is_zero())
                throw localization_error("relation for " + gens_[pd.other].name +
                                         " lacks the swapped leading term; " + gens_[g].name +
                                         " is not localizable by this rule schema");
            Element c_part = base->rhs - Element::term(swapped, *mu);
            for (const auto& [m, c] : c_part.terms())
                if (m.exp_of(g) != 0)
                    throw localization_error("correction term involves " + gens_[g].name +
                                             "; not localizable by this rule schema");
            // g^{-1} x^s = mu^{-1} x^s g^{-1} - mu^{-1} g^{-1} C g^{-1}   (g high)
            // x^s g^{-1} = mu^{-1} g^{-1} x^s - mu^{-1} g^{-1} C g^{-1}   (g low)
            RawExpr cand;
            QScalar mi = mu->inverse();
            if (pd.g_high)
                cand.push_back({mi, {{pd.other, pd.other_sign}, {g, -1}}});
            else
                cand.push_back({mi, {{g, -1}, {pd.other, pd.other_sign}}});
            for (const auto& [m, c] : c_part.terms()) {
                Word w{{g, -1}};
                const Word& mw = m.factors();
                w.insert(w.end(), mw.begin(), mw.end());
                w.push_back({g, -1});
                cand.push_back({-(mi * c), std::move(w)});
            }
            auto nf = try_normal_form(cand, strict);
            if (!nf) {
                next.push_back(pd);  // retry once more rules exist
                continue;
            }
            if (pd.g_high)
                add_pair_rule(g, -1, pd.other, pd.other_sign, *nf);
            else
                add_pair_rule(pd.other, pd.other_sign, g, -1, *nf);
            progress = true;
        }
        pending = std::move(next);
    }
    if (!pending.empty())
        throw localization_error("inverse rule derivation did not close for " + gens_[g].name);
}

Presentation adjoin_inverse(const Presentation& p, GenIndex g) {
    if (p.gen(g).invertible) throw qpb_error("generator already invertible");
    Presentation q(p);
    q.gens_[g].invertible = true;
    q.derive_inverse_rules(g);
    q.shrink_patterns_for(g);
    q.renormalize_rules();
    // verification: g * (g^{-1} x) == x and (x g^{-1}) * g == x
    for (GenIndex x = 0; x < q.size(); ++x) {
        if (x == g) continue;
        Element xe = q.gen_element(x);
        Element left = q.mul(q.gen_element(g), q.mul(q.gen_element(g, -1), xe));
        Element right = q.mul(q.mul(xe, q.gen_element(g, -1)), q.gen_element(g));
        if (!(left == q.normalize(xe)) || !(right == q.normalize(xe)))
            throw localization_error("derived inverse rules fail the two-sided check for " +
                                     q.gen(x).name);
    }
    return q;
}

std::pair<Presentation, GenIndex> adjoin_element_inverse(const Presentation& p,
                                                         const Element& theta,
                                                         const std::string& name,
                                                         const Monomial& lead_pattern) {
    Element th = p.normalize(theta);
    auto lead_coeff = th.coeff_of(lead_pattern);
    if (!lead_coeff || lead_coeff->is_zero())
        throw localization_error("lead pattern does not occur in the adjoined element");
    Presentation q(p);
    int weight = 0;
    for (const auto& f : lead_pattern.factors()) weight += f.exp * p.gen(f.gen).weight;
    GenIndex m = q.add_generator({name, false, weight, std::nullopt});
    // commutation rules of the new generator with every existing one
    for (GenIndex x = 0; x < m; ++x) {
        std::vector<int> signs{1};
        if (q.gen(x).invertible) signs.push_back(-1);
        for (int sx : signs) {
            Element xe = p.gen_element(x, sx);
            Element tx = p.mul(th, xe);
            Element xt = p.mul(xe, th);
            Element diff = p.normalize(tx - xt);
            Element swapped = Element::term(
                Monomial::from_sorted({{x, sx}, {m, 1}}), QScalar::one());
            if (diff.is_zero()) {
                q.add_pair_rule(m, 1, x, sx, swapped);
                continue;
            }
            // pure with a scalar twist: theta*x == lambda * x*theta
            std::optional<QScalar> lambda;
            if (tx.term_count() == xt.term_count() && !xt.is_zero()) {
                auto it_t = tx.terms().begin();
                auto it_x = xt.terms().begin();
                if (it_t->first == it_x->first) {
                    QScalar cand = it_t->second / it_x->second;
                    if (xt.scaled(cand) == tx) lambda = cand;
                }
            }
            if (lambda) {
                q.add_pair_rule(m, 1, x, sx, swapped.scaled(*lambda));
            } else {
                // M x = x M + (theta x - x theta)
                q.add_pair_rule(m, 1, x, sx, swapped + diff);
            }
        }
    }
    // tie the generator to theta: lead -> lead_coeff^{-1} (M - (theta - lead))
    Element rest = th - Element::term(lead_pattern, *lead_coeff);
    Element rhs = (Element::term(Monomial::single(m, 1), QScalar::one()) - rest)
                      .scaled(lead_coeff->inverse());
    q.add_subst_rule(lead_pattern, rhs);
    q.gens_[m].invertible = true;
    q.derive_inverse_rules(m);
    // shrink the new pattern through already-invertible trailing generators
    for (GenIndex x = 0; x < q.size(); ++x)
        if (q.gen(x).invertible) q.shrink_patterns_for(x);
    q.renormalize_rules();
    // consistency: theta itself must now normalize to the new generator
    Element back = q.normalize(th);
    if (!(back == Element::term(Monomial::single(m, 1), QScalar::one())))
        throw localization_error("adjoined element does not reduce to its generator");
    return {std::move(q), m};
}

std::optional<Element> invert_element(const Presentation& p, const Element& e) {
    Element nf = p.normalize(e);
    if (nf.term_count() != 1) return std::nullopt;
    const auto& [m, c] = *nf.terms().begin();
    for (const auto& f : m.factors())
        if (!p.gen(f.gen).invertible) return std::nullopt;
    Monomial cand = m.inverse_candidate();
    Element prod = p.mul(Element::term(m, QScalar::one()), Element::term(cand, QScalar::one()));
    auto s = prod.as_scalar();
    if (!s || s->is_zero()) return std::nullopt;
    Element inv = Element::term(cand, c.inverse() * s->inverse());
    // two-sided verification
    Element left = p.mul(inv, nf);
    Element right = p.mul(nf, inv);
    if (!(left == Element::unit()) || !(right == Element::unit())) return std::nullopt;
    return inv;
}

Element map_monomial(const std::vector<Element>& images, const Monomial& m,
                     const Presentation& tgt) {
    Element acc = Element::unit();
    for (const auto& f : m.factors()) {
        Element img = images.at(f.gen);
        if (f.exp < 0) {
            auto inv = invert_element(tgt, img);
            if (!inv) throw qpb_error("image of inverted generator is not invertible");
            img = *inv;
        }
        for (int i = 0; i < std::abs(f.exp); ++i) acc = tgt.mul(acc, img);
    }
    return acc;
}

Element map_element(const std::vector<Element>& images, const Element& e,
                    const Presentation& tgt) {
    Element acc;
    for (const auto& [m, c] : e.terms()) acc = acc + map_monomial(images, m, tgt).scaled(c);
    return tgt.normalize(acc);
}

Report check_hom(const std::vector<Element>& images, const Presentation& src,
                 const Presentation& tgt) {
    Report rep;
    if (static_cast<int>(images.size()) != src.size()) {
        rep.fail("image count does not match generator count");
        return rep;
    }
    for (GenIndex g = 0; g < src.size(); ++g) {
        if (src.gen(g).invertible && !invert_element(tgt, images[g]))
            rep.fail("image of invertible generator " + src.gen(g).name +
                     " has no two-sided inverse");
    }
    if (!rep.ok()) return rep;
    for (const auto& [k, r] : src.pair_rules()) {
        Element lhs = tgt.mul(map_monomial(images, Monomial::single(r.hi, r.hi_sign), tgt),
                              map_monomial(images, Monomial::single(r.lo, r.lo_sign), tgt));
        Element rhs = map_element(images, r.rhs, tgt);
        if (!(lhs == rhs))
            rep.fail("relation violated: " + src.gen(r.hi).name +
                     (r.hi_sign < 0 ? "^-1" : "") + "*" + src.gen(r.lo).name +
                     (r.lo_sign < 0 ? "^-1" : ""));
    }
    for (const auto& sr : src.subst_rules()) {
        Element lhs = map_monomial(images, sr.pattern, tgt);
        Element rhs = map_element(images, sr.rhs, tgt);
        if (!(lhs == rhs)) rep.fail("substitution relation violated");
    }
    return rep;
}

SmokeResult confluence_smoke(const Presentation& p, int max_len, int trials,
                             std::uint64_t seed) {
    SmokeResult res;
    res.trials = trials;
    std::mt19937_64 rng(seed);
    if (p.size() == 0) return res;
    std::uniform_int_distribution<int> len_dist(1, std::max(1, max_len));
    std::uniform_int_distribution<int> gen_dist(0, p.size() - 1);
    std::uniform_int_distribution<int> sign_dist(0, 2);
    for (int t = 0; t < trials; ++t) {
        int len = len_dist(rng);
        Word w;
        for (int i = 0; i < len; ++i) {
            GenIndex g = gen_dist(rng);
            int exp = 1;
            if (p.gen(g).invertible && sign_dist(rng) == 0) exp = -1;
            w.push_back({g, exp});
        }
        Element ref;
        try {
            ref = p.normal_form({{QScalar::one(), w}});
        } catch (const qpb_error&) {
            continue;  // budget or extraction limits are not confluence failures
        }
        for (int run = 0; run < 3; ++run) {
            std::mt19937_64 sub(rng());
            NormalFormOptions opts;
            opts.rng = &sub;
            Element alt = p.normal_form({{QScalar::one(), w}}, opts);
            if (!(alt == ref)) {
                std::ostringstream os;
                os << "normal-form disagreement on word:";
                for (const auto& f : w)
                    os << " " << p.gen(f.gen).name
                       << (f.exp != 1 ? "^" + std::to_string(f.exp) : "");
                res.disagreements.push_back(os.str());
                break;
            }
        }
    }
    return res;
}

}  // namespace qpb
