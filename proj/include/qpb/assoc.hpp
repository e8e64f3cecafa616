#pragma once

#include "qpb/cocycle.hpp"

namespace qpb {

/// Matrix corepresentation of H: rho_V(v_i) = sum_j m[j][i] (x) v_j with
/// Delta(m[j][i]) = sum_k m[k][i] (x) m[j][k] (transposed multiplication).
struct Corep {
    int dim = 0;
    HopfPtr hopf;
    GenMatrix m;  // m[j][i] over the Hopf algebra

    Element entry(int upper_j, int lower_i) const { return m[upper_j][lower_i]; }
};

Corep trivial_corep(HopfPtr H);
/// v^j_i := h^i_j for the Borel of SL_q/GL_q at size n.
Corep fundamental_corep(const BorelPair& B);

Report check_corep(const Corep& V);

/// Element of E (x) V: one E-coefficient per basis vector of V.
struct CotensorVector {
    std::vector<Element> comp;
};

bool operator==(const CotensorVector& a, const CotensorVector& b);

/// Transition matrices M_{lambda,mu}[i][j] = y_{lambda,mu}(v^i_j).
std::vector<std::vector<GenMatrix>> bundle_transition(const CechCocycle& c, const Corep& V);

/// M^T_{lambda,mu} M^T_{mu,nu} = M^T_{lambda,nu} and M_{lambda,lambda} = I.
Report check_bundle_cocycle(const CechCocycle& c,
                            const std::vector<std::vector<GenMatrix>>& mats);

/// kappa(e (x) v_i) = sum_j e gamma(v^j_i) (x) v_j, and its inverse via
/// gamma o S.
CotensorVector kappa(const MapExpr& gamma, const Corep& V, const CotensorVector& x);
CotensorVector kappa_inv(const MapExpr& gamma, const Corep& V, const CotensorVector& x);

/// (rho_E (x) id)(x) = (id (x) rho_V)(x) as degree-3 tensors.
bool cotensor_membership(const CotensorVector& x, const CoactionDef& rho_E, const Corep& V);

/// One CotensorVector per chart, over the cocycle's ambient algebra.
struct SectionTuple {
    std::vector<CotensorVector> local;
};

/// sum_i u_i^mu y_{mu,lambda}(v_{i(-1)}) (x) v_{i(0)} = sum_j u_j^lambda (x) v_j.
Report check_global_section(const SectionTuple& s, const CechCocycle& c, const Corep& V);

/// Transports a local cotensor vector from chart mu to every chart through
/// the transition maps, producing a tuple that satisfies the matching
/// condition by construction.
SectionTuple transport_section(const CechCocycle& c, const Corep& V, size_t mu,
                               const CotensorVector& local);

}  // namespace qpb
