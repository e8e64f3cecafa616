#include "qpb/charts.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qpb {

std::vector<int> sigma_id(int n) {
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 1);
    return s;
}

std::vector<int> sigma_swap() { return {2, 1}; }

std::pair<PresPtr, std::vector<std::pair<GenIndex, Element>>> localize_chart(
    const QuantumMatrixAlgebra& A, const std::vector<int>& sigma) {
    if (A.variant != QuantumMatrixAlgebra::Variant::glq &&
        A.variant != QuantumMatrixAlgebra::Variant::slq)
        throw qpb_error("chart localization needs GL_q or SL_q");
    int n = A.n;
    Presentation P = *A.pres;
    std::vector<std::pair<GenIndex, Element>> adjoined;
    for (int k = 1; k <= n; ++k) {
        int i0 = n - k + 1;
        std::vector<int> rows(sigma.begin() + (i0 - 1), sigma.end());
        std::sort(rows.begin(), rows.end());
        std::vector<int> cols(k);
        std::iota(cols.begin(), cols.end(), i0);
        Element theta = quantum_minor(A, rows, cols);
        Element nf = P.normalize(theta);
        if (auto s = nf.as_scalar()) {
            if (s->is_zero()) throw localization_error("vanishing principal minor");
            continue;  // unit already (the SL_q full minor)
        }
        if (nf.term_count() == 1) {
            bool invertible_already = true;
            for (const auto& f : nf.terms().begin()->first.factors())
                if (!P.gen(f.gen).invertible) invertible_already = false;
            if (invertible_already) continue;
            const Monomial& m = nf.terms().begin()->first;
            if (m.size() == 1 && m.factors()[0].exp == 1) {
                P = adjoin_inverse(P, m.factors()[0].gen);
                continue;
            }
        }
        // composite minor: adjoin a tied generator with the diagonal monomial
        // of the sorted submatrix as its lead pattern
        Word lead;
        for (int r = 0; r < k; ++r) lead.push_back({A.t(rows[r], cols[r]), 1});
        std::sort(lead.begin(), lead.end(),
                  [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
        auto [P2, mg] = adjoin_element_inverse(P, theta, "M" + std::to_string(k),
                                               Monomial::from_sorted(lead));
        P = std::move(P2);
        adjoined.push_back({mg, theta});
    }
    // Laplace elimination: the NW corner of each permuted principal block is
    // solvable once the smaller principal minor is invertible
    for (int k = 2; k <= n; ++k) {
        int i0 = n - k + 1;
        GenMatrix block(k, std::vector<Element>(k));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                block[r][c] = A.t_el(sigma[i0 + r - 1], i0 + c);
        // evaluate the block determinants over the base algebra, where the
        // determinant substitution is the only pattern and reduces them to
        // their tied generators; chart patterns would shadow it
        Element pm_k = matrix_qdet(*A.pres, block);
        GenMatrix prev(k - 1, std::vector<Element>(k - 1));
        for (int r = 0; r < k - 1; ++r)
            for (int c = 0; c < k - 1; ++c) prev[r][c] = block[1 + r][1 + c];
        Element pm_prev = matrix_qdet(*A.pres, prev);
        auto inv_prev = invert_element(P, pm_prev);
        if (!inv_prev) throw localization_error("previous principal minor not invertible");
        // first-row Laplace of the permuted block, grouped by the column of
        // the top-row entry; the grouping is exact on the q-det formula
        Element rest;
        for (int j = 1; j < k; ++j) {
            GenMatrix compl_mat(k - 1, std::vector<Element>(k - 1));
            for (int r = 0; r < k - 1; ++r) {
                int cc = 0;
                for (int c = 0; c < k; ++c) {
                    if (c == j) continue;
                    compl_mat[r][cc++] = block[1 + r][c];
                }
            }
            rest = rest + P.mul(block[0][j], matrix_qdet(P, compl_mat))
                              .scaled(QScalar::neg_q_power(j));
        }
        Element corner = P.normalize(block[0][0]);
        if (corner.term_count() != 1) continue;  // corner already eliminated
        QScalar lc = corner.terms().begin()->second;
        Monomial lm = corner.terms().begin()->first;
        if (lm.size() != 1 || lm.factors()[0].exp != 1) continue;
        Element rhs = P.mul((P.normalize(pm_k) - P.normalize(rest)).scaled(lc.inverse()),
                            *inv_prev);
        // a self-referential pattern carries no information (the determinant
        // substitution already performs this elimination)
        bool self_ref = false;
        for (const auto& [m, c] : rhs.terms())
            if (m.divisible_by(lm)) self_ref = true;
        if (self_ref) continue;
        bool duplicate = false;
        for (const auto& sr : P.subst_rules())
            if (sr.pattern == lm) {
                if (!(P.normalize(sr.rhs) == P.normalize(rhs)))
                    throw localization_error("inconsistent elimination patterns");
                duplicate = true;
            }
        if (!duplicate) {
            P.add_subst_rule(lm, rhs);
            P.renormalize_rules();
        }
    }
    return {std::make_shared<Presentation>(std::move(P)), adjoined};
}

CoactionDef extend_coaction(const CoactionDef& rho, PresPtr localized,
                            const std::vector<std::pair<GenIndex, Element>>& adjoined) {
    CoactionDef out;
    out.space = localized;
    out.hopf = rho.hopf;
    const Presentation* legs[2] = {localized.get(), rho.hopf->alg.get()};
    out.rho_gen.resize(localized->size(), TensorElement(2));
    for (size_t g = 0; g < rho.rho_gen.size(); ++g)
        out.rho_gen[g] = rho.rho_gen[g].renormalized(legs);
    for (const auto& [mg, theta_poly] : adjoined) {
        // the defining polynomial lives over the base generators, so the base
        // coaction applies; the result must be diagonal with one grouplike leg
        TensorElement t = rho.apply(rho.space->normalize(theta_poly));
        std::optional<Monomial> leg;
        for (const auto& [lm, c] : t.terms()) {
            if (!leg)
                leg = lm[1];
            else if (!(*leg == lm[1]))
                throw localization_error("coaction of an inverted element is not diagonal");
        }
        if (!leg) throw localization_error("empty coaction for an inverted element");
        TensorElement expect = TensorElement::tensor(rho.space->normalize(theta_poly),
                                                     Element::term(*leg, QScalar::one()));
        if (!(t == expect))
            throw localization_error("coaction of an inverted element is not diagonal");
        TensorElement d(2);
        d.add_term({Monomial::single(mg, 1), *leg}, QScalar::one());
        out.rho_gen[mg] = d;
    }
    return out;
}

std::pair<GenMatrix, GenMatrix> gauss_decompose(const QuantumMatrixAlgebra& A,
                                                const std::vector<int>& sigma,
                                                const Presentation& loc) {
    int n = A.n;
    GenMatrix M(n, std::vector<Element>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = loc.normalize(A.t_el(sigma[i], j + 1));
    GenMatrix U = mat_identity(n);
    GenMatrix L(n, std::vector<Element>(n));
    for (int i = n - 1; i >= 0; --i) {
        for (int j = n - 1; j > i; --j) {
            Element x = M[i][j];
            for (int k = j + 1; k < n; ++k) x = x - loc.mul(U[i][k], L[k][j]);
            auto inv = invert_element(loc, L[j][j]);
            if (!inv) throw localization_error("Gauss pivot is not invertible in the chart");
            U[i][j] = loc.mul(loc.normalize(x), *inv);
        }
        for (int j = 0; j <= i; ++j) {
            Element x = M[i][j];
            for (int k = i + 1; k < n; ++k) x = x - loc.mul(U[i][k], L[k][j]);
            L[i][j] = loc.normalize(x);
        }
    }
    if (!mat_equal(mat_mul(loc, U, L), M))
        throw qpb_error("Gauss decomposition failed verification");
    return {U, L};
}

namespace {

std::vector<Element> gamma_images(const QuantumMatrixAlgebra& A, const BorelPair& B,
                                  const GenMatrix& L, const Presentation& loc,
                                  const std::vector<int>& diag_exp) {
    int n = A.n;
    const Presentation& bp = *B.algebra.pres;
    std::vector<Element> images(bp.size());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            GenIndex hg = *bp.find_generator("h" + std::to_string(i) + std::to_string(j));
            Element img = L[i - 1][j - 1];
            if (i == j) img = img.scaled(QScalar::neg_q_power(diag_exp[i - 1]));
            images[hg] = loc.normalize(img);
        }
    if (B.algebra.det_gen) {
        Element d = Element::unit();
        for (int i = 1; i <= n; ++i)
            d = loc.mul(d, L[i - 1][i - 1].scaled(QScalar::neg_q_power(diag_exp[i - 1])));
        images[*B.algebra.det_gen] = d;
    }
    return images;
}

}  // namespace

Chart build_chart(const QuantumMatrixAlgebra& A, const BorelPair& B,
                  const std::vector<int>& sigma) {
    Chart ch;
    ch.sigma = sigma;
    ch.base = A;
    ch.borel = B;
    auto [loc, adjoined] = localize_chart(A, sigma);
    ch.alg = loc;
    ch.adjoined_minors = adjoined;
    auto [U, L] = gauss_decompose(A, sigma, *loc);
    ch.U = U;
    ch.A = L;
    ch.rho = extend_coaction(borel_coaction(A, B), loc, adjoined);
    for (int i = 0; i < A.n; ++i)
        for (int j = i + 1; j < A.n; ++j) ch.coordinates.push_back(loc->normalize(U[i][j]));
    for (const auto& u : ch.coordinates)
        if (!(ch.rho.apply(u) == TensorElement::tensor(u, Element::unit())))
            ch.notes.fail("chart coordinate is not coinvariant");
    std::vector<int> zero_exp(A.n, 0);
    ch.gamma_raw = MapExpr::algebra_hom(B.algebra.hopf, loc,
                                        gamma_images(A, B, L, *loc, zero_exp));
    // search small (-q)-power rescalings of the diagonal images until the
    // Borel relations hold, preferring the smallest total exponent
    std::vector<std::vector<int>> candidates;
    {
        std::vector<int> e(A.n, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == A.n) {
                candidates.push_back(e);
                return;
            }
            for (int v = -2; v <= 2; ++v) {
                e[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const std::vector<int>& a, const std::vector<int>& b) {
                             int sa = 0, sb = 0;
                             for (int x : a) sa += std::abs(x);
                             for (int x : b) sb += std::abs(x);
                             if (sa != sb) return sa < sb;
                             return a < b;
                         });
    }
    bool found = false;
    for (const auto& e : candidates) {
        std::vector<Element> imgs = gamma_images(A, B, L, *loc, e);
        if (check_hom(imgs, *B.algebra.pres, *loc).ok()) {
            ch.gamma = MapExpr::algebra_hom(B.algebra.hopf, loc, imgs);
            ch.diag_exponents = e;
            ch.gamma_hom_ok = true;
            found = true;
            break;
        }
    }
    if (!found) {
        ch.gamma = ch.gamma_raw;
        ch.diag_exponents = zero_exp;
        ch.notes.fail("no (-q)-power rescaling makes gamma a Borel homomorphism");
        if (A.n <= 2) throw qpb_error("gamma rescaling search failed at n <= 2");
    }
    // colinearity: rho(gamma(h)) = (gamma (x) id)(Delta_B h) on generators
    if (ch.gamma_hom_ok) {
        const Presentation& bp = *B.algebra.pres;
        for (GenIndex g = 0; g < bp.size(); ++g) {
            TensorElement lhs = ch.rho.apply(ch.gamma.evaluate(bp.gen_element(g)));
            TensorElement dh = B.algebra.hopf->coproduct(bp.gen_element(g));
            TensorElement rhs(2);
            for (const auto& [l, c] : dh.terms()) {
                Element img = ch.gamma.evaluate(Element::term(l[0], QScalar::one()));
                TensorElement t =
                    TensorElement::tensor(img, Element::term(l[1], QScalar::one()));
                for (const auto& [tl, tc] : t.terms()) rhs.add_term(tl, tc * c);
            }
            if (!(lhs == rhs)) ch.notes.fail("gamma is not a comodule map on a generator");
        }
    }
    return ch;
}

ChartAction chart_action(const Chart& chart) {
    ChartAction ca;
    ca.action = HopfAction::gauge(chart.gamma);
    const Presentation& bp = *chart.borel.algebra.pres;
    for (GenIndex g = 0; g < bp.size(); ++g) {
        std::vector<Element> row;
        for (const auto& u : chart.coordinates)
            row.push_back(ca.action.apply(bp.gen_element(g), u));
        ca.table.push_back(std::move(row));
    }
    return ca;
}

std::pair<std::vector<Element>, Report> chart_coordinates(const Chart& chart) {
    Report rep;
    for (size_t i = 0; i < chart.coordinates.size(); ++i)
        if (!(chart.rho.apply(chart.coordinates[i]) ==
              TensorElement::tensor(chart.coordinates[i], Element::unit())))
            rep.fail("coordinate " + std::to_string(i) + " is not coinvariant");
    return {chart.coordinates, rep};
}

}  // namespace qpb
