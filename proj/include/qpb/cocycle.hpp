#pragma once

#include <functional>

#include "qpb/charts.hpp"

namespace qpb {

/// h |> u = sum gamma(h_(1)) u gamma(S h_(2)) for a trivializing section.
inline HopfAction gauge_action(const MapExpr& gamma) { return HopfAction::gauge(gamma); }

/// y = gamma1 * gamma2^{-1} in the convolution algebra; both sections must
/// target the same ambient algebra.
MapExpr transition_map(const MapExpr& gamma1, const MapExpr& gamma2);

/// U # H with multiplication (u#h)(v#g) = sum u (h_(1) |> v) # h_(2) g.
struct SmashProduct {
    PresPtr base;
    HopfPtr hopf;
    PresPtr algebra;
    std::vector<GenIndex> u_gen;  // base generator -> smash generator
    std::vector<GenIndex> h_gen;  // hopf generator -> smash generator
    CoactionDef coaction;         // u#h -> sum (u#h_(1)) (x) h_(2)

    Element embed_u(const Element& u) const;
    Element embed_h(const Element& h) const;
};

SmashProduct smash_product(
    PresPtr U, HopfPtr H,
    const std::function<Element(const Element&, const Element&)>& action_on_u);

/// One chart of a cocycle, transported into the common ambient localization.
struct AmbientChart {
    std::string label;
    MapExpr gamma;
    MapExpr gamma_raw;
    HopfAction action;
    std::vector<Element> coordinates;
};

struct CechCocycle {
    HopfPtr hopf;
    PresPtr ambient;
    std::vector<AmbientChart> charts;
    std::vector<std::vector<MapExpr>> y;  // y[mu][lambda] = gamma_mu * gamma_lambda^{-1}
};

/// Builds the two-sided transition data over the localization at the union of
/// all charts' inverted elements.
CechCocycle build_cech_cocycle(const QuantumMatrixAlgebra& base, const BorelPair& B,
                               const std::vector<Chart>& charts);

/// sum (h_(1) |>_1 u) y(h_(2)) = sum y(h_(1)) (h_(2) |>_2 u).
Report check_intertwine(const MapExpr& y, const HopfAction& act1, const HopfAction& act2,
                        std::span<const Element> samples_h,
                        std::span<const Element> samples_u);

/// The three cocycle conditions: Hopf actions, intertwining for every ordered
/// pair, and the convolution triangle with y_{mu,mu} = eps(.)1.
Report check_cocycle(const CechCocycle& c, std::span<const Element> samples_h);

struct ZeroCocycle {
    std::vector<MapExpr> r;  // one map H -> U_lambda per chart
};

/// Verifies that r relates c_new to c_old: each r_lambda convolution
/// invertible, sum (h1 |>new u) r(h2) = sum r(h1) (h2 |>old u), and
/// sum r_l(h1) y_old(h2) = sum y_new(h1) r_m(h2).
Report check_cohomologous(const CechCocycle& c_new, const CechCocycle& c_old,
                          const ZeroCocycle& r, std::span<const Element> samples_h,
                          std::span<const Element> samples_u);

/// Expresses x as a left polynomial in left_coords times a right polynomial
/// in right_coords (degrees bounded); returns a printable witness.
std::optional<std::string> bimodule_witness(const Element& x, const Presentation& ambient,
                                            std::span<const Element> left_coords,
                                            std::span<const Element> right_coords,
                                            int max_degree);

/// The coordinate subalgebra of a one-coordinate chart as a free polynomial
/// algebra, with embedding and exact re-expression.
struct CoordinateAlgebra {
    PresPtr poly;    // one commutative generator
    PresPtr chart;
    Element coord;   // image of the generator
    int max_degree;

    Element embed(const Element& p) const;
    std::optional<Element> express(const Element& x) const;
};

CoordinateAlgebra coordinate_algebra(PresPtr chart, const Element& coord,
                                     const std::string& name, int max_degree);

}  // namespace qpb
