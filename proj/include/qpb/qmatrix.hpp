#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qpb/hopf.hpp"
#include "qpb/presentation.hpp"

namespace qpb {

using GenMatrix = std::vector<std::vector<Element>>;

struct QuantumMatrixAlgebra {
    enum class Variant { mq, glq, slq, borel };
    int n = 0;
    Variant variant = Variant::mq;
    PresPtr pres;
    HopfPtr hopf;                      // null for the plain matrix bialgebra
    std::optional<GenIndex> det_gen;   // D (glq) or its Borel image

    GenIndex t(int i, int j) const;    // 1-based indices
    Element t_el(int i, int j) const;
    GenMatrix t_matrix() const;
};

QuantumMatrixAlgebra mq_algebra(int n);
QuantumMatrixAlgebra glq(int n);
QuantumMatrixAlgebra slq(int n);

/// q-determinant of an explicit matrix of elements: sum over permutations of
/// (-q)^{l(sigma)} X[1][sigma(1)] ... X[k][sigma(k)], normalized in p.
Element matrix_qdet(const Presentation& p, const GenMatrix& X);

/// The quantum determinant polynomial of A (normalized; equals the D
/// generator in GL_q and 1 in SL_q).
Element quantum_determinant(const QuantumMatrixAlgebra& A);

/// Quantum minor over sorted 1-based row and column sets of equal size.
Element quantum_minor(const QuantumMatrixAlgebra& A, const std::vector<int>& rows,
                      const std::vector<int>& cols);

struct BorelPair {
    QuantumMatrixAlgebra algebra;     // Variant::borel
    std::vector<Element> pi;          // per source generator, over the quotient
};

/// Quotient by the Hopf ideal of strictly upper generators.
BorelPair borel(const QuantumMatrixAlgebra& A);

/// rho = (id (x) pi) o Delta as a coaction of the Borel on A.
CoactionDef borel_coaction(const QuantumMatrixAlgebra& A, const BorelPair& B);

GenMatrix mat_mul(const Presentation& p, const GenMatrix& X, const GenMatrix& Y);
GenMatrix mat_identity(int n);
GenMatrix mat_transpose(const GenMatrix& X);
bool mat_equal(const GenMatrix& X, const GenMatrix& Y);

/// Entrywise antipode of the generator matrix (variant with a Hopf structure).
GenMatrix antipode_matrix(const QuantumMatrixAlgebra& A);

}  // namespace qpb
