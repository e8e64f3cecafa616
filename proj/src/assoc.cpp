#include "qpb/assoc.hpp"

namespace qpb {

Corep trivial_corep(HopfPtr H) {
    Corep V;
    V.dim = 1;
    V.hopf = std::move(H);
    V.m = {{Element::unit()}};
    return V;
}

Corep fundamental_corep(const BorelPair& B) {
    Corep V;
    int n = B.algebra.n;
    V.dim = n;
    V.hopf = B.algebra.hopf;
    V.m.assign(n, std::vector<Element>(n));
    const Presentation& bp = *B.algebra.pres;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            // v^j_i := h^i_j, zero above the diagonal
            if (i >= j) {
                GenIndex g = *bp.find_generator("h" + std::to_string(i + 1) +
                                                std::to_string(j + 1));
                V.m[j][i] = bp.gen_element(g);
            } else {
                V.m[j][i] = Element::zero();
            }
        }
    return V;
}

Report check_corep(const Corep& V) {
    Report rep;
    const HopfStructure& H = *V.hopf;
    for (int j = 0; j < V.dim; ++j)
        for (int i = 0; i < V.dim; ++i) {
            TensorElement lhs = H.coproduct(V.m[j][i]);
            TensorElement rhs(2);
            for (int k = 0; k < V.dim; ++k) {
                TensorElement t = TensorElement::tensor(V.m[k][i], V.m[j][k]);
                for (const auto& [l, c] : t.terms()) rhs.add_term(l, c);
            }
            if (!(lhs == rhs))
                rep.fail("coproduct pattern fails at entry (" + std::to_string(j) + "," +
                         std::to_string(i) + ")");
            QScalar eps = H.counit(V.m[j][i]);
            if (!(eps == (i == j ? QScalar::one() : QScalar::zero())))
                rep.fail("counit pattern fails at entry (" + std::to_string(j) + "," +
                         std::to_string(i) + ")");
        }
    return rep;
}

bool operator==(const CotensorVector& a, const CotensorVector& b) {
    if (a.comp.size() != b.comp.size()) return false;
    for (size_t i = 0; i < a.comp.size(); ++i)
        if (!(a.comp[i] == b.comp[i])) return false;
    return true;
}

std::vector<std::vector<GenMatrix>> bundle_transition(const CechCocycle& c, const Corep& V) {
    size_t k = c.charts.size();
    std::vector<std::vector<GenMatrix>> mats(k, std::vector<GenMatrix>(k));
    for (size_t lam = 0; lam < k; ++lam)
        for (size_t mu = 0; mu < k; ++mu) {
            GenMatrix M(V.dim, std::vector<Element>(V.dim));
            for (int i = 0; i < V.dim; ++i)
                for (int j = 0; j < V.dim; ++j)
                    M[i][j] = c.y[lam][mu].evaluate(V.m[i][j]);
            mats[lam][mu] = std::move(M);
        }
    return mats;
}

Report check_bundle_cocycle(const CechCocycle& c,
                            const std::vector<std::vector<GenMatrix>>& mats) {
    Report rep;
    const Presentation& P = *c.ambient;
    size_t k = mats.size();
    int dim = static_cast<int>(mats[0][0].size());
    for (size_t lam = 0; lam < k; ++lam)
        if (!mat_equal(mats[lam][lam], mat_identity(dim)))
            rep.fail("M_{lambda,lambda} != I at " + c.charts[lam].label);
    for (size_t lam = 0; lam < k; ++lam)
        for (size_t mu = 0; mu < k; ++mu)
            for (size_t nu = 0; nu < k; ++nu) {
                GenMatrix lhs =
                    mat_mul(P, mat_transpose(mats[lam][mu]), mat_transpose(mats[mu][nu]));
                if (!mat_equal(lhs, mat_transpose(mats[lam][nu])))
                    rep.fail("transposed product rule fails at (" + c.charts[lam].label + "," +
                             c.charts[mu].label + "," + c.charts[nu].label + ")");
            }
    return rep;
}

CotensorVector kappa(const MapExpr& gamma, const Corep& V, const CotensorVector& x) {
    const Presentation& E = *gamma.target();
    CotensorVector out;
    out.comp.assign(V.dim, Element::zero());
    for (int j = 0; j < V.dim; ++j) {
        Element acc;
        for (int i = 0; i < V.dim; ++i)
            acc = acc + E.mul(x.comp[i], gamma.evaluate(V.m[j][i]));
        out.comp[j] = E.normalize(acc);
    }
    return out;
}

CotensorVector kappa_inv(const MapExpr& gamma, const Corep& V, const CotensorVector& x) {
    const Presentation& E = *gamma.target();
    const HopfStructure& H = *gamma.source();
    CotensorVector out;
    out.comp.assign(V.dim, Element::zero());
    for (int j = 0; j < V.dim; ++j) {
        Element acc;
        for (int i = 0; i < V.dim; ++i)
            acc = acc + E.mul(x.comp[i], gamma.evaluate(H.antipode(V.m[j][i])));
        out.comp[j] = E.normalize(acc);
    }
    return out;
}

bool cotensor_membership(const CotensorVector& x, const CoactionDef& rho_E, const Corep& V) {
    // both sides live in E (x) H (x) V; keys are (E-monomial, H-monomial, basis)
    std::map<std::tuple<Monomial, Monomial, int>, QScalar> lhs, rhs;
    auto add = [](auto& m, const Monomial& e, const Monomial& h, int i, const QScalar& c) {
        if (c.is_zero()) return;
        auto key = std::make_tuple(e, h, i);
        auto it = m.find(key);
        if (it == m.end()) {
            m.emplace(key, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) m.erase(it);
    };
    for (int i = 0; i < V.dim; ++i) {
        TensorElement t = rho_E.apply(x.comp[i]);
        for (const auto& [legs, c] : t.terms()) add(lhs, legs[0], legs[1], i, c);
    }
    for (int i = 0; i < V.dim; ++i)
        for (const auto& [em, ec] : x.comp[i].terms())
            for (int j = 0; j < V.dim; ++j)
                for (const auto& [hm, hc] : V.m[j][i].terms())
                    add(rhs, em, hm, j, ec * hc);
    return lhs == rhs;
}

Report check_global_section(const SectionTuple& s, const CechCocycle& c, const Corep& V) {
    Report rep;
    const Presentation& P = *c.ambient;
    size_t k = c.charts.size();
    if (s.local.size() != k) {
        rep.fail("tuple size does not match the chart family");
        return rep;
    }
    for (size_t mu = 0; mu < k; ++mu)
        for (size_t lam = 0; lam < k; ++lam) {
            for (int j = 0; j < V.dim; ++j) {
                Element lhs;
                for (int i = 0; i < V.dim; ++i)
                    lhs = lhs + P.mul(s.local[mu].comp[i], c.y[mu][lam].evaluate(V.m[j][i]));
                if (!(P.normalize(lhs) == P.normalize(s.local[lam].comp[j])))
                    rep.fail("matching fails for pair (" + c.charts[mu].label + "," +
                             c.charts[lam].label + ") at basis " + std::to_string(j));
            }
        }
    return rep;
}

SectionTuple transport_section(const CechCocycle& c, const Corep& V, size_t mu,
                               const CotensorVector& local) {
    const Presentation& P = *c.ambient;
    SectionTuple s;
    for (size_t lam = 0; lam < c.charts.size(); ++lam) {
        CotensorVector v;
        v.comp.assign(V.dim, Element::zero());
        for (int j = 0; j < V.dim; ++j) {
            Element acc;
            for (int i = 0; i < V.dim; ++i)
                acc = acc + P.mul(local.comp[i], c.y[mu][lam].evaluate(V.m[j][i]));
            v.comp[j] = P.normalize(acc);
        }
        s.local.push_back(std::move(v));
    }
    return s;
}

}  // namespace qpb
