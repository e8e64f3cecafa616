#pragma once

#include "qpb/qmatrix.hpp"

namespace qpb {

/// Localized chart of the quantum flag construction for a permutation sigma:
/// the base algebra with the principal quantum minors of w_sigma^{-1} T
/// inverted, the Gauss factors, the trivializing section, and the coaction.
struct Chart {
    std::vector<int> sigma;  // 1-based: sigma[i-1] is the row placed at i
    QuantumMatrixAlgebra base;
    BorelPair borel;
    PresPtr alg;
    std::vector<std::pair<GenIndex, Element>> adjoined_minors;  // gen, defining element
    GenMatrix U, A;
    MapExpr gamma;      // hom-normalized section
    MapExpr gamma_raw;  // verbatim Gauss entries
    std::vector<int> diag_exponents;  // (-q) powers applied to diagonal images
    bool gamma_hom_ok = false;
    CoactionDef rho;
    std::vector<Element> coordinates;  // strictly upper entries of U
    Report notes;
};

std::vector<int> sigma_id(int n);
std::vector<int> sigma_swap();  // the transposition at n = 2

/// Adjoins every principal lower-right quantum minor of w_sigma^{-1} T,
/// smallest first, and installs the Laplace elimination patterns. Returns the
/// localized presentation and the adjoined composite-minor generators.
std::pair<PresPtr, std::vector<std::pair<GenIndex, Element>>> localize_chart(
    const QuantumMatrixAlgebra& A, const std::vector<int>& sigma);

/// Extends a coaction to a localization; inverted generators must coact
/// diagonally with a grouplike second leg.
CoactionDef extend_coaction(const CoactionDef& rho, PresPtr localized,
                            const std::vector<std::pair<GenIndex, Element>>& adjoined);

/// Solves w_sigma^{-1} T = U A with U unidiagonal upper and A lower
/// triangular, then verifies the identity exactly.
std::pair<GenMatrix, GenMatrix> gauss_decompose(const QuantumMatrixAlgebra& A,
                                                const std::vector<int>& sigma,
                                                const Presentation& loc);

Chart build_chart(const QuantumMatrixAlgebra& A, const BorelPair& B,
                  const std::vector<int>& sigma);

struct ChartAction {
    HopfAction action;
    // table[borel gen][coordinate] = action value, normalized
    std::vector<std::vector<Element>> table;
};

ChartAction chart_action(const Chart& chart);

/// Strictly upper entries of U with their coinvariance report.
std::pair<std::vector<Element>, Report> chart_coordinates(const Chart& chart);

}  // namespace qpb
