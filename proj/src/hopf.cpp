#include "qpb/hopf.hpp"

#include <algorithm>

namespace qpb {

TensorElement TensorElement::tensor(std::span<const Element> legs) {
    TensorElement r(static_cast<int>(legs.size()));
    std::vector<Monomial> cur(legs.size());
    std::function<void(size_t, QScalar)> rec = [&](size_t i, QScalar c) {
        if (i == legs.size()) {
            r.add_term(cur, c);
            return;
        }
        for (const auto& [m, mc] : legs[i].terms()) {
            cur[i] = m;
            rec(i + 1, c * mc);
        }
    };
    rec(0, QScalar::one());
    return r;
}

TensorElement TensorElement::tensor(const Element& a, const Element& b) {
    std::vector<Element> legs{a, b};
    return tensor(legs);
}

void TensorElement::add_term(std::vector<Monomial> legs, const QScalar& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(legs.size()) != deg_) throw qpb_error("tensor degree mismatch");
    auto it = t_.find(legs);
    if (it == t_.end()) {
        t_.emplace(std::move(legs), c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    if (deg_ != o.deg_) throw qpb_error("tensor degree mismatch");
    TensorElement r(*this);
    for (const auto& [l, c] : o.t_) r.add_term(l, c);
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    return *this + o.scaled(-QScalar::one());
}

TensorElement TensorElement::scaled(const QScalar& c) const {
    TensorElement r(deg_);
    if (c.is_zero()) return r;
    for (const auto& [l, cc] : t_) r.t_.emplace(l, cc * c);
    return r;
}

TensorElement TensorElement::mul(const TensorElement& a, const TensorElement& b,
                                 std::span<const Presentation* const> legs) {
    if (a.deg_ != b.deg_ || static_cast<int>(legs.size()) != a.deg_)
        throw qpb_error("tensor degree mismatch in product");
    TensorElement r(a.deg_);
    for (const auto& [la, ca] : a.t_) {
        for (const auto& [lb, cb] : b.t_) {
            // multiply legwise, then expand the product of sums
            std::vector<Element> leg_products(a.deg_);
            for (int i = 0; i < a.deg_; ++i)
                leg_products[i] = legs[i]->mul(Element::term(la[i], QScalar::one()),
                                               Element::term(lb[i], QScalar::one()));
            TensorElement expanded = tensor(leg_products);
            for (const auto& [l, c] : expanded.t_) r.add_term(l, ca * cb * c);
        }
    }
    return r;
}

TensorElement TensorElement::renormalized(std::span<const Presentation* const> legs) const {
    TensorElement r(deg_);
    for (const auto& [l, c] : t_) {
        std::vector<Element> parts(deg_);
        for (int i = 0; i < deg_; ++i)
            parts[i] = legs[i]->normalize(Element::term(l[i], QScalar::one()));
        TensorElement expanded = tensor(parts);
        for (const auto& [nl, nc] : expanded.terms()) r.add_term(nl, c * nc);
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Monomial power of a single-factor monomial.
Monomial single_factor_power(const Monomial& m, int e) {
    if (m.is_unit()) return m;
    if (m.size() != 1) throw qpb_error("expected single-factor grouplike leg");
    const Factor& f = m.factors()[0];
    return Monomial::single(f.gen, f.exp * e);
}

}  // namespace

TensorElement HopfStructure::coproduct(const Element& x) const {
    TensorElement out(2);
    const Presentation* legs[2] = {alg.get(), alg.get()};
    for (const auto& [m, c] : x.terms()) {
        TensorElement acc = TensorElement::tensor(Element::unit(), Element::unit());
        for (const auto& f : m.factors()) {
            const TensorElement& dg = delta_gen.at(f.gen);
            TensorElement fpow(2);
            if (f.exp > 0) {
                fpow = dg;
                for (int i = 1; i < f.exp; ++i) fpow = TensorElement::mul(fpow, dg, legs);
            } else {
                if (dg.term_count() != 1)
                    throw qpb_error("negative power needs a grouplike coproduct");
                const auto& [dl, dc] = *dg.terms().begin();
                std::vector<Monomial> neg{single_factor_power(dl[0], f.exp),
                                          single_factor_power(dl[1], f.exp)};
                fpow.add_term(neg, dc.pow(f.exp));
            }
            acc = TensorElement::mul(acc, fpow, legs);
        }
        for (const auto& [l, lc] : acc.terms()) out.add_term(l, c * lc);
    }
    return out;
}

QScalar HopfStructure::counit(const Element& x) const {
    QScalar out = QScalar::zero();
    for (const auto& [m, c] : x.terms()) {
        QScalar v = QScalar::one();
        for (const auto& f : m.factors()) {
            QScalar e = counit_gen.at(f.gen);
            if (f.exp < 0 && e.is_zero()) throw qpb_error("counit inverse of zero");
            v = v * e.pow(f.exp);
        }
        out = out + c * v;
    }
    return out;
}

Element HopfStructure::antipode(const Element& x) const {
    Element out;
    for (const auto& [m, c] : x.terms()) {
        Element acc = Element::unit();
        const auto& fs = m.factors();
        for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
            Element sg = antipode_gen.at(it->gen);
            if (it->exp < 0) {
                auto inv = invert_element(*alg, sg);
                if (!inv) throw qpb_error("antipode image not invertible");
                sg = *inv;
            }
            for (int i = 0; i < std::abs(it->exp); ++i) acc = alg->mul(acc, sg);
        }
        out = out + acc.scaled(c);
    }
    return alg->normalize(out);
}

Element HopfStructure::antipode_power(const Element& x, int k) const {
    Element r = x;
    for (int i = 0; i < k; ++i) r = antipode(r);
    return r;
}

TensorElement HopfStructure::sweedler(const Element& x, int k) const {
    if (k < 1) throw qpb_error("sweedler degree must be >= 1");
    TensorElement cur(1);
    for (const auto& [m, c] : x.terms()) cur.add_term({m}, c);
    for (int d = 1; d < k; ++d) {
        TensorElement next(d + 1);
        for (const auto& [legs, c] : cur.terms()) {
            TensorElement dl = coproduct(Element::term(legs.back(), QScalar::one()));
            for (const auto& [dlegs, dc] : dl.terms()) {
                std::vector<Monomial> nl(legs.begin(), legs.end() - 1);
                nl.push_back(dlegs[0]);
                nl.push_back(dlegs[1]);
                next.add_term(std::move(nl), c * dc);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::optional<Element> HopfStructure::invert_grouplike(const Element& g) const {
    Element nf = alg->normalize(g);
    if (nf.term_count() != 1) return std::nullopt;
    if (!(coproduct(nf) == TensorElement::tensor(nf, nf))) return std::nullopt;
    Element inv = antipode(nf);
    if (!(alg->mul(nf, inv) == Element::unit()) || !(alg->mul(inv, nf) == Element::unit()))
        return std::nullopt;
    return inv;
}

// ---------------------------------------------------------------------------

MapExpr MapExpr::algebra_hom(HopfPtr source, PresPtr target, std::vector<Element> images) {
    if (static_cast<int>(images.size()) != source->alg->size())
        throw qpb_error("algebra hom image count mismatch");
    MapExpr m;
    m.kind_ = Kind::algebra_hom;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.images_ = std::move(images);
    return m;
}

MapExpr MapExpr::unit_counit(HopfPtr source, PresPtr target) {
    MapExpr m;
    m.kind_ = Kind::unit_counit;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    return m;
}

MapExpr MapExpr::zero_map(HopfPtr source, PresPtr target) {
    MapExpr m;
    m.kind_ = Kind::zero;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    return m;
}

MapExpr MapExpr::linear_table_map(HopfPtr source, PresPtr target,
                                  std::map<Monomial, Element> values) {
    MapExpr m;
    m.kind_ = Kind::linear_table;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.table_ = std::move(values);
    return m;
}

MapExpr MapExpr::sum_map(MapExpr f, MapExpr g) {
    if (f.source_->alg.get() != g.source_->alg.get() || f.target_.get() != g.target_.get())
        throw qpb_error("sum of maps with different source or target");
    MapExpr m;
    m.kind_ = Kind::sum;
    m.source_ = f.source_;
    m.target_ = f.target_;
    m.parts_.push_back(std::move(f));
    m.parts_.push_back(std::move(g));
    return m;
}

MapExpr convolve(MapExpr f, MapExpr g) {
    if (f.source_->alg.get() != g.source_->alg.get() || f.target_.get() != g.target_.get())
        throw qpb_error("convolution of maps with different source or target");
    MapExpr m;
    m.kind_ = MapExpr::Kind::convolution;
    m.source_ = f.source_;
    m.target_ = f.target_;
    auto push = [&m](MapExpr& x) {
        if (x.kind_ == MapExpr::Kind::convolution)
            for (auto& p : x.parts_) m.parts_.push_back(std::move(p));
        else
            m.parts_.push_back(std::move(x));
    };
    push(f);
    push(g);
    return m;
}

MapExpr conv_inverse(MapExpr f) {
    MapExpr m;
    m.kind_ = MapExpr::Kind::precompose_antipode;
    m.source_ = f.source_;
    m.target_ = f.target_;
    m.s_power_ = 1;
    m.inner_ = std::make_shared<const MapExpr>(std::move(f));
    return m;
}

Element MapExpr::evaluate(const Element& h) const {
    switch (kind_) {
        case Kind::algebra_hom:
            return map_element(images_, h, *target_);
        case Kind::unit_counit:
            return Element::unit(source_->counit(h));
        case Kind::zero:
            return Element::zero();
        case Kind::precompose_antipode:
            return inner_->evaluate(source_->antipode_power(h, s_power_));
        case Kind::linear_table: {
            Element out;
            for (const auto& [m, c] : h.terms()) {
                auto it = table_.find(m);
                if (it != table_.end()) out = out + it->second.scaled(c);
            }
            return target_->normalize(out);
        }
        case Kind::sum: {
            Element out;
            for (const auto& p : parts_) out = out + p.evaluate(h);
            return target_->normalize(out);
        }
        case Kind::convolution: {
            int k = static_cast<int>(parts_.size());
            TensorElement sw = source_->sweedler(h, k);
            Element out;
            for (const auto& [legs, c] : sw.terms()) {
                Element prod = Element::unit();
                for (int i = 0; i < k; ++i)
                    prod = target_->mul(
                        prod, parts_[i].evaluate(Element::term(legs[i], QScalar::one())));
                out = out + prod.scaled(c);
            }
            return target_->normalize(out);
        }
    }
    throw qpb_error("unreachable map kind");
}

Element evaluate_map(const MapExpr& m, const Element& h) { return m.evaluate(h); }

// ---------------------------------------------------------------------------

TensorElement CoactionDef::apply(const Element& x) const {
    const Presentation* legs[2] = {space.get(), hopf->alg.get()};
    TensorElement out(2);
    for (const auto& [m, c] : x.terms()) {
        TensorElement acc = TensorElement::tensor(Element::unit(), Element::unit());
        for (const auto& f : m.factors()) {
            const TensorElement& rg = rho_gen.at(f.gen);
            TensorElement fpow(2);
            if (f.exp > 0) {
                fpow = rg;
                for (int i = 1; i < f.exp; ++i) fpow = TensorElement::mul(fpow, rg, legs);
            } else {
                if (rg.term_count() != 1)
                    throw qpb_error("coaction of inverted generator is not diagonal");
                const auto& [rl, rc] = *rg.terms().begin();
                Element inv_e = Element::term(rl[0], QScalar::one());
                auto ie = invert_element(*space, inv_e);
                if (!ie) throw qpb_error("coaction first leg not invertible");
                Element hleg = Element::term(rl[1], QScalar::one());
                std::optional<Element> ih = invert_element(*hopf->alg, hleg);
                if (!ih) ih = hopf->invert_grouplike(hleg);
                if (!ih) throw qpb_error("coaction second leg not invertible or grouplike");
                TensorElement base = TensorElement::tensor(*ie, *ih).scaled(rc.inverse());
                fpow = base;
                for (int i = 1; i < -f.exp; ++i) fpow = TensorElement::mul(fpow, base, legs);
            }
            acc = TensorElement::mul(acc, fpow, legs);
        }
        for (const auto& [l, lc] : acc.terms()) out.add_term(l, c * lc);
    }
    return out;
}

HopfAction HopfAction::gauge(const MapExpr& gamma) {
    HopfAction a;
    a.hopf = gamma.source();
    a.space = gamma.target();
    MapExpr g = gamma;
    a.apply = [g](const Element& h, const Element& u) -> Element {
        const auto& H = *g.source();
        const auto& E = *g.target();
        TensorElement sw = H.sweedler(h, 2);
        Element out;
        for (const auto& [legs, c] : sw.terms()) {
            Element left = g.evaluate(Element::term(legs[0], QScalar::one()));
            Element right = g.evaluate(H.antipode(Element::term(legs[1], QScalar::one())));
            out = out + E.mul(E.mul(left, u), right).scaled(c);
        }
        return E.normalize(out);
    };
    return a;
}

HopfAction HopfAction::trivial(HopfPtr hopf, PresPtr space) {
    HopfAction a;
    a.hopf = hopf;
    a.space = space;
    const HopfStructure* H = a.hopf.get();
    auto hold = a.hopf;
    a.apply = [H, hold, space](const Element& h, const Element& u) -> Element {
        return space->normalize(u.scaled(H->counit(h)));
    };
    return a;
}

// ---------------------------------------------------------------------------

namespace {

Element contract_pair(const TensorElement& t, const Presentation& p,
                      const std::function<Element(const Element&)>& f0,
                      const std::function<Element(const Element&)>& f1) {
    Element out;
    for (const auto& [legs, c] : t.terms()) {
        Element a = f0(Element::term(legs[0], QScalar::one()));
        Element b = f1(Element::term(legs[1], QScalar::one()));
        out = out + p.mul(a, b).scaled(c);
    }
    return p.normalize(out);
}

std::vector<Element> generator_samples(const Presentation& p) {
    std::vector<Element> out;
    out.push_back(Element::unit());
    for (GenIndex g = 0; g < p.size(); ++g) out.push_back(p.normalize(p.gen_element(g)));
    return out;
}

// coproduct applied to an unnormalized word, factor by factor
TensorElement coproduct_of_word(const HopfStructure& H, const Word& w) {
    const Presentation* legs[2] = {H.alg.get(), H.alg.get()};
    TensorElement acc = TensorElement::tensor(Element::unit(), Element::unit());
    for (const auto& f : w) {
        TensorElement d = H.coproduct(H.alg->normalize(
            Element::term(Monomial::single(f.gen, f.exp), QScalar::one())));
        acc = TensorElement::mul(acc, d, legs);
    }
    return acc;
}

}  // namespace

Report check_hopf_axioms(const HopfStructure& H, std::span<const Element> samples) {
    Report rep;
    const Presentation& P = *H.alg;
    std::vector<Element> xs = generator_samples(P);
    xs.insert(xs.end(), samples.begin(), samples.end());
    for (const auto& x : xs) {
        TensorElement d = H.coproduct(x);
        // coassociativity
        TensorElement left(3), right(3);
        for (const auto& [l, c] : d.terms()) {
            TensorElement d0 = H.coproduct(Element::term(l[0], QScalar::one()));
            for (const auto& [dl, dc] : d0.terms())
                left.add_term({dl[0], dl[1], l[1]}, c * dc);
            TensorElement d1 = H.coproduct(Element::term(l[1], QScalar::one()));
            for (const auto& [dl, dc] : d1.terms())
                right.add_term({l[0], dl[0], dl[1]}, c * dc);
        }
        if (!(left == right)) rep.fail("coassociativity fails");
        // counit laws
        Element eps_id = contract_pair(
            d, P, [&](const Element& e) { return Element::unit(H.counit(e)); },
            [&](const Element& e) { return e; });
        Element id_eps = contract_pair(
            d, P, [&](const Element& e) { return e; },
            [&](const Element& e) { return Element::unit(H.counit(e)); });
        Element xn = P.normalize(x);
        if (!(eps_id == xn)) rep.fail("left counit law fails");
        if (!(id_eps == xn)) rep.fail("right counit law fails");
        // antipode laws
        Element s_id = contract_pair(
            d, P, [&](const Element& e) { return H.antipode(e); },
            [&](const Element& e) { return e; });
        Element id_s = contract_pair(
            d, P, [&](const Element& e) { return e; },
            [&](const Element& e) { return H.antipode(e); });
        Element eps1 = Element::unit(H.counit(x));
        if (!(s_id == eps1)) rep.fail("left antipode law fails");
        if (!(id_s == eps1)) rep.fail("right antipode law fails");
    }
    // structure maps must respect the relations
    for (const auto& [k, r] : P.pair_rules()) {
        Word lhs{{r.hi, r.hi_sign}, {r.lo, r.lo_sign}};
        if (!(coproduct_of_word(H, lhs) == H.coproduct(P.normalize(r.rhs))))
            rep.fail("coproduct does not respect relation on " + P.gen(r.hi).name + "," +
                     P.gen(r.lo).name);
        QScalar el = H.counit_gen.at(r.hi).pow(r.hi_sign) * H.counit_gen.at(r.lo).pow(r.lo_sign);
        if (!(el == H.counit(r.rhs)))
            rep.fail("counit does not respect relation on " + P.gen(r.hi).name + "," +
                     P.gen(r.lo).name);
        Element s_lhs = P.mul(H.antipode(P.gen_element(r.lo, r.lo_sign)),
                              H.antipode(P.gen_element(r.hi, r.hi_sign)));
        if (!(s_lhs == H.antipode(P.normalize(r.rhs))))
            rep.fail("antipode does not respect relation on " + P.gen(r.hi).name + "," +
                     P.gen(r.lo).name);
    }
    for (const auto& sr : P.subst_rules()) {
        if (!(coproduct_of_word(H, sr.pattern.factors()) == H.coproduct(P.normalize(sr.rhs))))
            rep.fail("coproduct does not respect a substitution relation");
        QScalar el = QScalar::one();
        for (const auto& f : sr.pattern.factors()) el = el * H.counit_gen.at(f.gen).pow(f.exp);
        if (!(el == H.counit(sr.rhs))) rep.fail("counit does not respect a substitution relation");
        Element s_lhs = Element::unit();
        const Word& pf = sr.pattern.factors();
        for (auto it = pf.rbegin(); it != pf.rend(); ++it)
            s_lhs = P.mul(s_lhs, H.antipode(P.gen_element(it->gen, it->exp)));
        if (!(s_lhs == H.antipode(P.normalize(sr.rhs))))
            rep.fail("antipode does not respect a substitution relation");
    }
    return rep;
}

Report check_comodule_algebra(const CoactionDef& rho, std::span<const Element> samples) {
    Report rep;
    const Presentation& E = *rho.space;
    const Presentation& Ha = *rho.hopf->alg;
    const Presentation* legs[2] = {&E, &Ha};
    // algebra map: relations
    for (const auto& [k, r] : E.pair_rules()) {
        TensorElement lhs = TensorElement::tensor(Element::unit(), Element::unit());
        for (const Factor f : {Factor{r.hi, r.hi_sign}, Factor{r.lo, r.lo_sign}})
            lhs = TensorElement::mul(
                lhs, rho.apply(E.normalize(Element::term(Monomial::single(f.gen, f.exp),
                                                         QScalar::one()))),
                legs);
        if (!(lhs == rho.apply(E.normalize(r.rhs))))
            rep.fail("coaction does not respect relation on " + E.gen(r.hi).name + "," +
                     E.gen(r.lo).name);
    }
    for (const auto& sr : E.subst_rules()) {
        TensorElement lhs = TensorElement::tensor(Element::unit(), Element::unit());
        for (const auto& f : sr.pattern.factors())
            lhs = TensorElement::mul(
                lhs, rho.apply(E.normalize(Element::term(Monomial::single(f.gen, f.exp),
                                                         QScalar::one()))),
                legs);
        if (!(lhs == rho.apply(E.normalize(sr.rhs))))
            rep.fail("coaction does not respect a substitution relation");
    }
    // coassociativity and counit on generators and samples
    std::vector<Element> xs = generator_samples(E);
    xs.insert(xs.end(), samples.begin(), samples.end());
    for (const auto& x : xs) {
        Element xn = E.normalize(x);
        TensorElement rx = rho.apply(xn);
        TensorElement a(3), b(3);
        for (const auto& [l, c] : rx.terms()) {
            TensorElement r0 = rho.apply(Element::term(l[0], QScalar::one()));
            for (const auto& [rl, rc] : r0.terms()) a.add_term({rl[0], rl[1], l[1]}, c * rc);
            TensorElement d1 = rho.hopf->coproduct(Element::term(l[1], QScalar::one()));
            for (const auto& [dl, dc] : d1.terms()) b.add_term({l[0], dl[0], dl[1]}, c * dc);
        }
        if (!(a == b)) rep.fail("coaction coassociativity fails");
        Element back;
        for (const auto& [l, c] : rx.terms())
            back = back +
                   Element::term(l[0], QScalar::one())
                       .scaled(c * rho.hopf->counit(Element::term(l[1], QScalar::one())));
        if (!(E.normalize(back) == xn)) rep.fail("coaction counit law fails");
    }
    return rep;
}

Report check_module_algebra(const HopfAction& act, std::span<const Element> samples_h,
                            std::span<const Element> samples_u) {
    Report rep;
    const Presentation& U = *act.space;
    const HopfStructure& H = *act.hopf;
    for (const auto& h : samples_h) {
        // unit axiom
        Element hu = act.apply(h, Element::unit());
        if (!(hu == Element::unit(H.counit(h)))) rep.fail("h |> 1 != eps(h) 1");
        // multiplicativity over sample pairs
        for (const auto& u : samples_u) {
            for (const auto& v : samples_u) {
                Element lhs = act.apply(h, U.mul(u, v));
                TensorElement sw = H.sweedler(h, 2);
                Element rhs;
                for (const auto& [legs, c] : sw.terms()) {
                    Element au = act.apply(Element::term(legs[0], QScalar::one()), u);
                    Element av = act.apply(Element::term(legs[1], QScalar::one()), v);
                    rhs = rhs + U.mul(au, av).scaled(c);
                }
                if (!(lhs == U.normalize(rhs))) rep.fail("module-algebra law fails");
            }
        }
    }
    // action is associative for products in H
    for (const auto& h : samples_h) {
        for (const auto& k : samples_h) {
            for (const auto& u : samples_u) {
                Element lhs = act.apply(H.alg->mul(h, k), u);
                Element rhs = act.apply(h, act.apply(k, u));
                if (!(lhs == rhs)) rep.fail("action does not respect products in H");
            }
        }
    }
    // unit of H acts as identity
    for (const auto& u : samples_u)
        if (!(act.apply(Element::unit(), u) == U.normalize(u)))
            rep.fail("1 |> u != u");
    return rep;
}

}  // namespace qpb
