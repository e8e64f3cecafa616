#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qpb/presentation.hpp"

namespace qpb {

using PresPtr = std::shared_ptr<const Presentation>;

/// Formal sum of k-fold tensors of monomials with QScalar coefficients.
/// Legs are kept normal-form in their respective algebras by construction.
class TensorElement {
  public:
    explicit TensorElement(int degree = 1) : deg_(degree) {}
    static TensorElement zero(int degree) { return TensorElement(degree); }
    /// Expands a tensor product of elements into canonical form.
    static TensorElement tensor(std::span<const Element> legs);
    static TensorElement tensor(const Element& a, const Element& b);

    int degree() const { return deg_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const std::map<std::vector<Monomial>, QScalar>& terms() const { return t_; }

    void add_term(std::vector<Monomial> legs, const QScalar& c);
    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement scaled(const QScalar& c) const;
    bool operator==(const TensorElement& o) const { return deg_ == o.deg_ && t_ == o.t_; }

    /// Componentwise product; legs[i] is the algebra of leg i.
    static TensorElement mul(const TensorElement& a, const TensorElement& b,
                             std::span<const Presentation* const> legs);
    /// Re-normalizes every leg in the given algebras.
    TensorElement renormalized(std::span<const Presentation* const> legs) const;

  private:
    int deg_;
    std::map<std::vector<Monomial>, QScalar> t_;
};

/// Coproduct, counit, and antipode on generators, extended multiplicatively
/// (anti-multiplicatively for S) over normal forms.
struct HopfStructure {
    PresPtr alg;
    std::vector<TensorElement> delta_gen;   // degree 2, legs (alg, alg)
    std::vector<QScalar> counit_gen;
    std::vector<Element> antipode_gen;

    TensorElement coproduct(const Element& x) const;
    QScalar counit(const Element& x) const;
    Element antipode(const Element& x) const;
    Element antipode_power(const Element& x, int k) const;
    /// Iterated coproduct with k legs; k = 1 returns x as a 1-tensor.
    TensorElement sweedler(const Element& x, int k) const;

    /// Inverse of a grouplike element (single monomial with Delta(g) = g (x) g),
    /// computed via the antipode and verified; nullopt if not grouplike.
    std::optional<Element> invert_grouplike(const Element& g) const;
};

using HopfPtr = std::shared_ptr<const HopfStructure>;

/// Symbolic linear map H -> E.
class MapExpr {
  public:
    enum class Kind {
        algebra_hom,
        unit_counit,
        zero,
        convolution,
        precompose_antipode,
        linear_table,
        sum
    };

    MapExpr() = default;  // empty map; fill via a factory before use

    static MapExpr algebra_hom(HopfPtr source, PresPtr target, std::vector<Element> images);
    static MapExpr unit_counit(HopfPtr source, PresPtr target);
    static MapExpr zero_map(HopfPtr source, PresPtr target);
    /// Linear map given by values on finitely many basis monomials of the
    /// source normal form, zero elsewhere.
    static MapExpr linear_table_map(HopfPtr source, PresPtr target,
                                    std::map<Monomial, Element> values);
    static MapExpr sum_map(MapExpr f, MapExpr g);

    Kind kind() const { return kind_; }
    const HopfPtr& source() const { return source_; }
    const PresPtr& target() const { return target_; }
    const std::vector<Element>& images() const { return images_; }

    Element evaluate(const Element& h) const;

    friend MapExpr convolve(MapExpr f, MapExpr g);
    friend MapExpr conv_inverse(MapExpr f);

  private:
    Kind kind_ = Kind::unit_counit;
    HopfPtr source_;
    PresPtr target_;
    std::vector<Element> images_;            // algebra_hom
    std::vector<MapExpr> parts_;             // convolution, sum
    std::shared_ptr<const MapExpr> inner_;   // precompose_antipode
    std::map<Monomial, Element> table_;      // linear_table
    int s_power_ = 0;
};

MapExpr convolve(MapExpr f, MapExpr g);
MapExpr conv_inverse(MapExpr f);
Element evaluate_map(const MapExpr& m, const Element& h);

/// Right coaction rho: E -> E (x) H given on generators, extended
/// multiplicatively; inverted generators require a diagonal grouplike leg.
struct CoactionDef {
    PresPtr space;
    HopfPtr hopf;
    std::vector<TensorElement> rho_gen;  // legs (space, hopf->alg)

    TensorElement apply(const Element& x) const;
};

/// Hopf action of H on an algebra; apply is linear in both arguments.
struct HopfAction {
    HopfPtr hopf;
    PresPtr space;
    std::function<Element(const Element&, const Element&)> apply;

    /// h |> u = sum gamma(h_(1)) * u * gamma(S h_(2)).
    static HopfAction gauge(const MapExpr& gamma);
    static HopfAction trivial(HopfPtr hopf, PresPtr space);
};

Report check_hopf_axioms(const HopfStructure& H, std::span<const Element> samples);
Report check_comodule_algebra(const CoactionDef& rho, std::span<const Element> samples);
Report check_module_algebra(const HopfAction& act, std::span<const Element> samples_h,
                            std::span<const Element> samples_u);

}  // namespace qpb
