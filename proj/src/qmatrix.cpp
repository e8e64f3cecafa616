#include "qpb/qmatrix.hpp"

#include <algorithm>
#include <numeric>

namespace qpb {

namespace {

std::string t_name(int n, int i, int j) {
    if (n == 2) {
        if (i == 1 && j == 1) return "a";
        if (i == 1 && j == 2) return "b";
        if (i == 2 && j == 1) return "c";
        return "d";
    }
    return "t" + std::to_string(i) + std::to_string(j);
}

int inversions(const std::vector<int>& perm) {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv;
}

Presentation mq_presentation(int n) {
    Presentation p;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            p.add_generator({t_name(n, i, j), false, 1, {{i, j}}});
    auto tg = [&](int i, int j) { return (i - 1) * n + (j - 1); };
    QScalar lam = q_minus_q_inverse();
    QScalar qi = QScalar::q_power(-1);
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j)
                for (int l = 1; l <= n; ++l) {
                    GenIndex lo = tg(i, k), hi = tg(j, l);
                    if (hi <= lo) continue;
                    Element rhs;
                    if (i == j || k == l) {
                        // same row or column: Y X = q^{-1} X Y
                        rhs = Element::term(Monomial::from_sorted({{lo, 1}, {hi, 1}}), qi);
                    } else if (i < j && k > l) {
                        // antidiagonal pair commutes
                        rhs = Element::term(Monomial::from_sorted({{lo, 1}, {hi, 1}}),
                                            QScalar::one());
                    } else if (i < j && k < l) {
                        // diagonal pair: d a = a d - (q - q^{-1}) b c
                        rhs = Element::term(Monomial::from_sorted({{lo, 1}, {hi, 1}}),
                                            QScalar::one());
                        rhs.add_term(Monomial::from_sorted({{tg(i, l), 1}, {tg(j, k), 1}}),
                                     -lam);
                    } else {
                        continue;
                    }
                    p.add_pair_rule(hi, 1, lo, 1, rhs);
                }
    return p;
}

Monomial diagonal_monomial(int n) {
    Word w;
    for (int i = 1; i <= n; ++i) w.push_back({(i - 1) * n + (i - 1), 1});
    return Monomial::from_sorted(w);
}

Element determinant_raw(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    Element det;
    do {
        Word w;
        for (int i = 1; i <= n; ++i) w.push_back({(i - 1) * n + (perm[i - 1] - 1), 1});
        std::sort(w.begin(), w.end(),
                  [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
        det.add_term(Monomial::from_sorted(w), QScalar::neg_q_power(inversions(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

HopfStructure matrix_hopf(const QuantumMatrixAlgebra& A) {
    const Presentation& P = *A.pres;
    int n = A.n;
    HopfStructure H;
    H.alg = A.pres;
    H.delta_gen.resize(P.size(), TensorElement(2));
    H.counit_gen.resize(P.size());
    H.antipode_gen.resize(P.size());
    auto tg = [&](int i, int j) { return (i - 1) * n + (j - 1); };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            TensorElement d(2);
            for (int k = 1; k <= n; ++k)
                d.add_term({Monomial::single(tg(i, k), 1), Monomial::single(tg(k, j), 1)},
                           QScalar::one());
            H.delta_gen[tg(i, j)] = d;
            H.counit_gen[tg(i, j)] = i == j ? QScalar::one() : QScalar::zero();
        }
    if (A.det_gen) {
        TensorElement d(2);
        d.add_term({Monomial::single(*A.det_gen, 1), Monomial::single(*A.det_gen, 1)},
                   QScalar::one());
        H.delta_gen[*A.det_gen] = d;
        H.counit_gen[*A.det_gen] = QScalar::one();
        H.antipode_gen[*A.det_gen] =
            Element::term(Monomial::single(*A.det_gen, -1), QScalar::one());
    }
    // antipode via the quantum cofactor pattern; verified against S(T)T = I
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::vector<int> rows, cols;
            for (int r = 1; r <= n; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 1; c <= n; ++c)
                if (c != i) cols.push_back(c);
            GenMatrix sub(rows.size(), std::vector<Element>(cols.size()));
            for (size_t r = 0; r < rows.size(); ++r)
                for (size_t c = 0; c < cols.size(); ++c)
                    sub[r][c] = Element::term(Monomial::single(tg(rows[r], cols[c]), 1),
                                              QScalar::one());
            Element minor = n == 1 ? Element::unit() : matrix_qdet(P, sub);
            Element img = minor.scaled(QScalar::neg_q_power(i - j));
            if (A.det_gen)
                img = P.mul(img,
                            Element::term(Monomial::single(*A.det_gen, -1), QScalar::one()));
            H.antipode_gen[tg(i, j)] = P.normalize(img);
        }
    return H;
}

void verify_antipode_inverts(const QuantumMatrixAlgebra& A) {
    GenMatrix T = A.t_matrix();
    GenMatrix S = antipode_matrix(A);
    GenMatrix I = mat_identity(A.n);
    if (!mat_equal(mat_mul(*A.pres, S, T), I) || !mat_equal(mat_mul(*A.pres, T, S), I))
        throw qpb_error("antipode does not invert the generator matrix");
}

}  // namespace

GenIndex QuantumMatrixAlgebra::t(int i, int j) const {
    if (variant == Variant::borel) throw qpb_error("Borel algebras index generators by name");
    return (i - 1) * n + (j - 1);
}

Element QuantumMatrixAlgebra::t_el(int i, int j) const {
    return Element::term(Monomial::single(t(i, j), 1), QScalar::one());
}

GenMatrix QuantumMatrixAlgebra::t_matrix() const {
    GenMatrix T(n, std::vector<Element>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) T[i - 1][j - 1] = t_el(i, j);
    return T;
}

QuantumMatrixAlgebra mq_algebra(int n) {
    QuantumMatrixAlgebra A;
    A.n = n;
    A.variant = QuantumMatrixAlgebra::Variant::mq;
    A.pres = std::make_shared<Presentation>(mq_presentation(n));
    return A;
}

QuantumMatrixAlgebra glq(int n) {
    Presentation p = mq_presentation(n);
    auto [loc, dgen] = adjoin_element_inverse(p, determinant_raw(n), "D", diagonal_monomial(n));
    QuantumMatrixAlgebra A;
    A.n = n;
    A.variant = QuantumMatrixAlgebra::Variant::glq;
    A.pres = std::make_shared<Presentation>(std::move(loc));
    A.det_gen = dgen;
    A.hopf = std::make_shared<HopfStructure>(matrix_hopf(A));
    if (n <= 2) verify_antipode_inverts(A);
    return A;
}

QuantumMatrixAlgebra slq(int n) {
    Presentation p = mq_presentation(n);
    if (n > 1) {
        Element det = determinant_raw(n);
        Monomial lead = diagonal_monomial(n);
        QScalar lead_coeff = *det.coeff_of(lead);
        Element rest = det - Element::term(lead, lead_coeff);
        Element rhs = (Element::unit() - rest).scaled(lead_coeff.inverse());
        p.add_subst_rule(lead, p.normalize(rhs));
        p.graded = false;
        p.renormalize_rules();
    }
    QuantumMatrixAlgebra A;
    A.n = n;
    A.variant = QuantumMatrixAlgebra::Variant::slq;
    A.pres = std::make_shared<Presentation>(std::move(p));
    A.hopf = std::make_shared<HopfStructure>(matrix_hopf(A));
    if (n <= 2) verify_antipode_inverts(A);
    return A;
}

Element matrix_qdet(const Presentation& p, const GenMatrix& X) {
    int k = static_cast<int>(X.size());
    if (k == 0) return Element::unit();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    Element det;
    do {
        Element prod = Element::unit(QScalar::neg_q_power(inversions(perm)));
        for (int i = 0; i < k; ++i) prod = p.mul(prod, X[i][perm[i] - 1]);
        det = det + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p.normalize(det);
}

Element quantum_determinant(const QuantumMatrixAlgebra& A) {
    return A.pres->normalize(determinant_raw(A.n));
}

Element quantum_minor(const QuantumMatrixAlgebra& A, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw qpb_error("quantum minor needs |rows| = |cols|");
    GenMatrix sub(rows.size(), std::vector<Element>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) sub[r][c] = A.t_el(rows[r], cols[c]);
    return matrix_qdet(*A.pres, sub);
}

BorelPair borel(const QuantumMatrixAlgebra& A) {
    if (A.variant != QuantumMatrixAlgebra::Variant::glq &&
        A.variant != QuantumMatrixAlgebra::Variant::slq)
        throw qpb_error("Borel quotient needs GL_q or SL_q");
    const Presentation& src = *A.pres;
    int n = A.n;
    Presentation bp;
    bp.graded = src.graded;
    std::vector<GenIndex> image(src.size(), -1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i >= j)
                image[(i - 1) * n + (j - 1)] = bp.add_generator(
                    {"h" + std::to_string(i) + std::to_string(j), false, 1, {{i, j}}});
    std::optional<GenIndex> bdet;
    if (A.det_gen) {
        bdet = bp.add_generator({"D", true, n, std::nullopt});
        image[*A.det_gen] = *bdet;
    }
    // pi on monomials: strictly upper factors kill the term; order and
    // exponents carry over because pi preserves the generator order
    auto map_mono = [&](const Monomial& m) -> std::optional<Monomial> {
        Word w;
        for (const auto& f : m.factors()) {
            if (image[f.gen] < 0) return std::nullopt;
            w.push_back({image[f.gen], f.exp});
        }
        return Monomial::from_sorted(std::move(w));
    };
    auto map_el = [&](const Element& e) {
        Element out;
        for (const auto& [m, c] : e.terms())
            if (auto mm = map_mono(m)) out.add_term(*mm, c);
        return out;
    };
    for (const auto& [k, r] : src.pair_rules()) {
        bool hi_live = image[r.hi] >= 0, lo_live = image[r.lo] >= 0;
        Element rhs = map_el(r.rhs);
        if (!hi_live || !lo_live) {
            if (!rhs.is_zero()) throw qpb_error("Borel quotient is inconsistent");
            continue;
        }
        bp.add_pair_rule(image[r.hi], r.hi_sign, image[r.lo], r.lo_sign, rhs);
    }
    for (const auto& sr : src.subst_rules()) {
        auto pat = map_mono(sr.pattern);
        Element rhs = map_el(sr.rhs);
        if (!pat) {
            if (!rhs.is_zero()) throw qpb_error("Borel quotient is inconsistent");
            continue;
        }
        bp.add_subst_rule(*pat, rhs);
    }
    BorelPair B;
    B.algebra.n = n;
    B.algebra.variant = QuantumMatrixAlgebra::Variant::borel;
    B.algebra.pres = std::make_shared<Presentation>(std::move(bp));
    B.algebra.det_gen = bdet;
    const Presentation& BP = *B.algebra.pres;
    for (GenIndex g = 0; g < src.size(); ++g)
        B.pi.push_back(image[g] < 0
                           ? Element::zero()
                           : Element::term(Monomial::single(image[g], 1), QScalar::one()));
    Report hom = check_hom(B.pi, src, BP);
    if (!hom.ok()) throw qpb_error("Borel projection fails check_hom: " + hom.failures[0]);
    HopfStructure H;
    H.alg = B.algebra.pres;
    H.delta_gen.resize(BP.size(), TensorElement(2));
    H.counit_gen.resize(BP.size());
    H.antipode_gen.resize(BP.size());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            GenIndex g = image[(i - 1) * n + (j - 1)];
            TensorElement d(2);
            for (int k = j; k <= i; ++k)
                d.add_term({Monomial::single(image[(i - 1) * n + (k - 1)], 1),
                            Monomial::single(image[(k - 1) * n + (j - 1)], 1)},
                           QScalar::one());
            H.delta_gen[g] = d;
            H.counit_gen[g] = i == j ? QScalar::one() : QScalar::zero();
            H.antipode_gen[g] =
                BP.normalize(map_el(A.hopf->antipode_gen[(i - 1) * n + (j - 1)]));
        }
    if (bdet) {
        TensorElement d(2);
        d.add_term({Monomial::single(*bdet, 1), Monomial::single(*bdet, 1)}, QScalar::one());
        H.delta_gen[*bdet] = d;
        H.counit_gen[*bdet] = QScalar::one();
        H.antipode_gen[*bdet] = Element::term(Monomial::single(*bdet, -1), QScalar::one());
    }
    B.algebra.hopf = std::make_shared<HopfStructure>(std::move(H));
    return B;
}

CoactionDef borel_coaction(const QuantumMatrixAlgebra& A, const BorelPair& B) {
    CoactionDef rho;
    rho.space = A.pres;
    rho.hopf = B.algebra.hopf;
    rho.rho_gen.resize(A.pres->size(), TensorElement(2));
    int n = A.n;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            TensorElement d(2);
            for (int k = j; k <= n; ++k) {
                const Element& h = B.pi[(k - 1) * n + (j - 1)];
                if (h.is_zero()) continue;
                d.add_term({Monomial::single((i - 1) * n + (k - 1), 1),
                            h.terms().begin()->first},
                           QScalar::one());
            }
            rho.rho_gen[(i - 1) * n + (j - 1)] = d;
        }
    if (A.det_gen) {
        TensorElement d(2);
        d.add_term(
            {Monomial::single(*A.det_gen, 1), Monomial::single(*B.algebra.det_gen, 1)},
            QScalar::one());
        rho.rho_gen[*A.det_gen] = d;
    }
    return rho;
}

GenMatrix mat_mul(const Presentation& p, const GenMatrix& X, const GenMatrix& Y) {
    size_t n = X.size(), m = Y[0].size(), k = Y.size();
    GenMatrix R(n, std::vector<Element>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Element acc;
            for (size_t l = 0; l < k; ++l) acc = acc + p.mul(X[i][l], Y[l][j]);
            R[i][j] = p.normalize(acc);
        }
    return R;
}

GenMatrix mat_identity(int n) {
    GenMatrix I(n, std::vector<Element>(n));
    for (int i = 0; i < n; ++i) I[i][i] = Element::unit();
    return I;
}

GenMatrix mat_transpose(const GenMatrix& X) {
    GenMatrix R(X[0].size(), std::vector<Element>(X.size()));
    for (size_t i = 0; i < X.size(); ++i)
        for (size_t j = 0; j < X[i].size(); ++j) R[j][i] = X[i][j];
    return R;
}

bool mat_equal(const GenMatrix& X, const GenMatrix& Y) {
    if (X.size() != Y.size()) return false;
    for (size_t i = 0; i < X.size(); ++i) {
        if (X[i].size() != Y[i].size()) return false;
        for (size_t j = 0; j < X[i].size(); ++j)
            if (!(X[i][j] == Y[i][j])) return false;
    }
    return true;
}

GenMatrix antipode_matrix(const QuantumMatrixAlgebra& A) {
    if (!A.hopf) throw qpb_error("antipode matrix needs a Hopf structure");
    GenMatrix S(A.n, std::vector<Element>(A.n));
    for (int i = 1; i <= A.n; ++i)
        for (int j = 1; j <= A.n; ++j) S[i - 1][j - 1] = A.hopf->antipode(A.t_el(i, j));
    return S;
}

}  // namespace qpb
