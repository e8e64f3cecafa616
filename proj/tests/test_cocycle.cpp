#include <doctest.h>

#include <random>

#include "qpb/assoc.hpp"
#include "qpb/cocycle.hpp"
#include "qpb/parse.hpp"

#include "twist_helper.hpp"

using namespace qpb;

namespace {

struct Slq2Cocycle {
    QuantumMatrixAlgebra A = slq(2);
    BorelPair B = borel(A);
    Chart I, T;
    CechCocycle c;
    Element u, up;  // the two chart coordinates in the ambient

    Slq2Cocycle()
        : I(build_chart(A, B, sigma_id(2))),
          T(build_chart(A, B, sigma_swap())),
          c(build_cech_cocycle(A, B, {I, T})) {
        u = c.charts[0].coordinates[0];
        up = c.charts[1].coordinates[0];
    }

    std::vector<Element> borel_gens() const {
        std::vector<Element> out;
        for (GenIndex g = 0; g < B.algebra.pres->size(); ++g)
            out.push_back(B.algebra.pres->gen_element(g));
        return out;
    }

    std::vector<Element> sample_h() const {
        std::vector<Element> out = borel_gens();
        size_t n = out.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                out.push_back(B.algebra.pres->mul(out[i], out[j]));
        out.push_back(Element::unit());
        return out;
    }
};

Slq2Cocycle& cocy() {
    static Slq2Cocycle c;
    return c;
}

Element nf(const Presentation& p, const std::string& s) {
    return p.normal_form(parse_raw_expr(s, p));
}

}  // namespace

TEST_CASE("u u' = 1 = u' u in the common localization") {
    auto& C = cocy();
    CHECK(C.c.ambient->mul(C.u, C.up) == Element::unit());
    CHECK(C.c.ambient->mul(C.up, C.u) == Element::unit());
}

TEST_CASE("transition matrix of the two SL_q(2) charts") {
    auto& C = cocy();
    const Presentation& P = *C.c.ambient;
    const Presentation& bp = *C.B.algebra.pres;
    const MapExpr& y = C.c.y[0][1];  // gamma_I * gamma_tau^{-1}
    Element y11 = y.evaluate(nf(bp, "h11"));
    Element y21 = y.evaluate(nf(bp, "h21"));
    Element y22 = y.evaluate(nf(bp, "h22"));
    CHECK(y11 == P.normalize(C.u.scaled(QScalar::q_power(1))));
    CHECK(y21 == nf(P, "-q"));
    CHECK(y22 == C.up);
    // lower triangular: the Borel kills h12, so the (1,2) entry vanishes
    // identically; the convolution of the reverse pair gives the inverse
    const MapExpr& yr = C.c.y[1][0];
    CHECK(yr.evaluate(nf(bp, "h11")) == P.normalize(C.up.scaled(QScalar::q_power(-1))));
    CHECK(yr.evaluate(nf(bp, "h21")) == Element::unit());
    CHECK(yr.evaluate(nf(bp, "h22")) == C.u);
}

TEST_CASE("raw sections reproduce the displayed Y matrix up to one (-q) power") {
    auto& C = cocy();
    const Presentation& P = *C.c.ambient;
    const Presentation& bp = *C.B.algebra.pres;
    MapExpr y_raw = transition_map(C.c.charts[0].gamma_raw, C.c.charts[1].gamma_raw);
    QScalar common = QScalar::neg_q_power(1);
    // displayed matrix [[-u, 0],[1, u']]
    CHECK(y_raw.evaluate(nf(bp, "h11")) == P.normalize((-C.u).scaled(common)));
    CHECK(y_raw.evaluate(nf(bp, "h21")) == P.normalize(Element::unit(common)));
    CHECK(y_raw.evaluate(nf(bp, "h22")) == P.normalize(C.up.scaled(common)));
}

TEST_CASE("self-comparison is the convolution unit") {
    auto& C = cocy();
    MapExpr self = transition_map(C.c.charts[0].gamma, C.c.charts[0].gamma);
    for (const Element& h : C.sample_h())
        CHECK(self.evaluate(h) == Element::unit(C.B.algebra.hopf->counit(h)));
}

TEST_CASE("convolution inverse property of the y pair") {
    auto& C = cocy();
    MapExpr both = convolve(C.c.y[0][1], C.c.y[1][0]);
    for (const Element& h : C.sample_h())
        CHECK(both.evaluate(h) == Element::unit(C.B.algebra.hopf->counit(h)));
}

TEST_CASE("gauge action and chart action agree on the coordinate") {
    auto& C = cocy();
    HopfAction ga = gauge_action(C.c.charts[0].gamma);
    ChartAction ca = chart_action(C.I);
    const Presentation& bp = *C.B.algebra.pres;
    for (GenIndex g = 0; g < bp.size(); ++g) {
        Element via_chart = C.c.ambient->normalize(ca.table[g][0]);
        Element via_gauge = ga.apply(bp.gen_element(g), C.u);
        CHECK(via_chart == via_gauge);
    }
}

TEST_CASE("full cocycle check passes for SL_q(2)") {
    auto& C = cocy();
    Report r = check_cocycle(C.c, C.sample_h());
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
}

TEST_CASE("intertwining fixtures") {
    auto& C = cocy();
    // trivial: y = eps(.)1 with equal actions
    MapExpr eps = MapExpr::unit_counit(C.c.hopf, C.c.ambient);
    std::vector<Element> us{C.u, C.up};
    CHECK(check_intertwine(eps, C.c.charts[0].action, C.c.charts[0].action, C.borel_gens(),
                           us)
              .ok());
    // mismatched: raw (un-rescaled) section against the hom section
    HopfAction raw_act = gauge_action(C.c.charts[1].gamma_raw);
    Report bad = check_intertwine(C.c.y[0][1], C.c.charts[0].action, raw_act,
                                  C.borel_gens(), us);
    CHECK_FALSE(bad.ok());
}

TEST_CASE("perturbing one transition value breaks the triangle") {
    auto& C = cocy();
    CechCocycle broken = C.c;
    GenIndex h21 = *C.B.algebra.pres->find_generator("h21");
    std::map<Monomial, Element> bump{{Monomial::single(h21, 1), Element::unit()}};
    broken.y[0][1] = MapExpr::sum_map(
        broken.y[0][1], MapExpr::linear_table_map(C.c.hopf, C.c.ambient, bump));
    Report r = check_cocycle(broken, C.sample_h());
    CHECK_FALSE(r.ok());
}

TEST_CASE("one-chart cocycle is trivially consistent") {
    auto& C = cocy();
    CechCocycle single = build_cech_cocycle(C.A, C.B, {C.I});
    CHECK(single.charts.size() == 1);
    Report r = check_cocycle(single, C.sample_h());
    CHECK(r.ok());
}

TEST_CASE("degenerate one-chart cocycle over the n = 3 flag base") {
    QuantumMatrixAlgebra A = glq(3);
    BorelPair B = borel(A);
    Chart ch = build_chart(A, B, sigma_id(3));
    CechCocycle c = build_cech_cocycle(A, B, {ch});
    std::vector<Element> gens;
    for (GenIndex g = 0; g < B.algebra.pres->size(); ++g)
        gens.push_back(B.algebra.pres->gen_element(g));
    Report r = check_cocycle(c, gens);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
}

TEST_CASE("convolution inverse of a section evaluates through the antipode") {
    auto& C = cocy();
    const Presentation& bp = *C.B.algebra.pres;
    MapExpr inv = conv_inverse(C.c.charts[0].gamma);
    // S(h22) = h11 in the SL Borel, so the inverse at h22 is gamma(h11)
    Element lhs = inv.evaluate(bp.gen_element(*bp.find_generator("h22")));
    Element rhs = C.c.charts[0].gamma.evaluate(bp.gen_element(*bp.find_generator("h11")));
    CHECK(lhs == rhs);
}

TEST_CASE("transition values live in the coordinate bimodule") {
    auto& C = cocy();
    std::vector<Element> left{C.u}, right{C.up};
    for (const char* hname : {"h11", "h21", "h22"}) {
        Element v = C.c.y[0][1].evaluate(
            C.B.algebra.pres->gen_element(*C.B.algebra.pres->find_generator(hname)));
        auto w = bimodule_witness(v, *C.c.ambient, left, right, 3);
        CHECK(w.has_value());
    }
}

TEST_CASE("three trivializations give a nondegenerate triangle") {
    // the two Gauss sections plus a character-twist of the first are three
    // different trivializations over the same localization, so every ordered
    // triple of the cocycle conditions is exercised with distinct entries
    auto& C = cocy();
    std::vector<QScalar> chi;
    CechCocycle twisted = testing::twist_cocycle(C.c, QScalar::q_power(2), chi);
    CechCocycle three = C.c;
    AmbientChart extra = twisted.charts[0];
    extra.label = "s12t";
    three.charts.push_back(extra);
    three.y.clear();
    for (size_t mu = 0; mu < three.charts.size(); ++mu) {
        std::vector<MapExpr> row;
        for (size_t lam = 0; lam < three.charts.size(); ++lam)
            row.push_back(transition_map(three.charts[mu].gamma, three.charts[lam].gamma));
        three.y.push_back(std::move(row));
    }
    Report r = check_cocycle(three, C.borel_gens());
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
    // the new pair maps are genuinely different from the old ones
    const Presentation& bp = *C.B.algebra.pres;
    Element h21 = bp.gen_element(*bp.find_generator("h21"));
    CHECK_FALSE(three.y[2][1].evaluate(h21) == three.y[0][1].evaluate(h21));
}

TEST_CASE("cohomologousness: identity zero-cocycle relates a cocycle to itself") {
    auto& C = cocy();
    ZeroCocycle r;
    for (size_t i = 0; i < C.c.charts.size(); ++i)
        r.r.push_back(MapExpr::unit_counit(C.c.hopf, C.c.ambient));
    std::vector<Element> us{C.u, C.up, Element::unit()};
    Report rep = check_cohomologous(C.c, C.c, r, C.sample_h(), us);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
}

TEST_CASE("cohomologousness: grouplike twist gives a passing nontrivial zero-cocycle") {
    auto& C = cocy();
    std::vector<QScalar> chi;
    CechCocycle twisted = testing::twist_cocycle(C.c, QScalar::q_power(1), chi);
    // the twisted cocycle is a genuine cocycle
    CHECK(check_cocycle(twisted, C.borel_gens()).ok());
    // r_lambda = chi(.) 1 as an algebra hom with scalar images
    ZeroCocycle r;
    const Presentation& bp = *C.B.algebra.pres;
    std::vector<Element> imgs(bp.size());
    for (GenIndex g = 0; g < bp.size(); ++g) imgs[g] = Element::unit(chi[g]);
    for (size_t i = 0; i < C.c.charts.size(); ++i)
        r.r.push_back(MapExpr::algebra_hom(C.c.hopf, C.c.ambient, imgs));
    std::vector<Element> us{C.u, C.up, Element::unit()};
    Report rep = check_cohomologous(twisted, C.c, r, C.sample_h(), us);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
    // and the twist is genuinely nontrivial: the transition maps differ and
    // the zero-cocycle is not the convolution unit
    Element h21 = bp.gen_element(*bp.find_generator("h21"));
    CHECK_FALSE(twisted.y[0][1].evaluate(h21) == C.c.y[0][1].evaluate(h21));
    Element h11 = bp.gen_element(*bp.find_generator("h11"));
    CHECK_FALSE(r.r[0].evaluate(h11) == Element::unit());
}

TEST_CASE("a zero map is rejected as a zero-cocycle") {
    auto& C = cocy();
    ZeroCocycle r;
    for (size_t i = 0; i < C.c.charts.size(); ++i)
        r.r.push_back(MapExpr::zero_map(C.c.hopf, C.c.ambient));
    std::vector<Element> us{C.u};
    Report rep = check_cohomologous(C.c, C.c, r, C.borel_gens(), us);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("smash product of the coordinate line with the Borel") {
    auto& C = cocy();
    // U = k[u] with the chart-I action re-expressed in the coordinate
    CoordinateAlgebra ca = coordinate_algebra(C.I.alg, C.I.coordinates[0], "u", 6);
    HopfAction ga = gauge_action(C.I.gamma);
    auto action_on_u = [&](const Element& h, const Element& upoly) {
        Element val = ga.apply(h, ca.embed(upoly));
        auto back = ca.express(val);
        if (!back) throw qpb_error("action leaves the coordinate subalgebra");
        return *back;
    };
    SmashProduct sp = smash_product(ca.poly, C.B.algebra.hopf, action_on_u);
    const Presentation& S = *sp.algebra;
    const Presentation& bp = *C.B.algebra.pres;
    Element su = S.gen_element(sp.u_gen[0]);
    Element h11 = S.gen_element(sp.h_gen[*bp.find_generator("h11")]);
    Element h21 = S.gen_element(sp.h_gen[*bp.find_generator("h21")]);
    Element h22 = S.gen_element(sp.h_gen[*bp.find_generator("h22")]);
    // (u#1)(u#1) = u^2 # 1
    CHECK(S.mul(su, su) == S.normalize(S.power(su, 2)));
    // (1#h)(u#1) = sum (h_(1) |> u) # h_(2)
    CHECK(S.mul(h11, su) == S.mul(su, h11).scaled(QScalar::q_power(1)));
    CHECK(S.mul(h22, su) == S.mul(su, h22).scaled(QScalar::q_power(-1)));
    CHECK(S.mul(h21, su) == S.mul(su, h21).scaled(QScalar::q_power(-1)));
    // (1#h)(1#g) = 1#hg
    CHECK(S.mul(h11, h22) == Element::unit());
    // associativity on random degree-2 words
    std::mt19937_64 rng(13);
    std::vector<Element> gens{su, h11, h21, h22};
    for (int i = 0; i < 20; ++i) {
        const Element& x = gens[rng() % gens.size()];
        const Element& y = gens[rng() % gens.size()];
        const Element& z = gens[rng() % gens.size()];
        CHECK(S.mul(S.mul(x, y), z) == S.mul(x, S.mul(y, z)));
    }
    // the coaction makes it a comodule algebra
    CHECK(check_comodule_algebra(sp.coaction, {}).ok());
}

TEST_CASE("smoke test the ambient localization") {
    auto& C = cocy();
    SmokeResult s = confluence_smoke(*C.c.ambient, 6, 200, 20260808);
    CHECK(s.trials == 200);
    CHECK(s.ok());
}
