#pragma once

#include <string>

#include "qpb/hopf.hpp"
#include "qpb/presentation.hpp"

namespace qpb {

struct parse_error : qpb_error {
    parse_error(const std::string& msg, size_t pos)
        : qpb_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

/// Grammar: sum of terms; a term multiplies integers, q^k, generator names
/// and parenthesized subexpressions; division only by scalar-valued factors.
QScalar parse_scalar(const std::string& text);
RawExpr parse_raw_expr(const std::string& text, const Presentation& p);
Element parse_element(const std::string& text, const Presentation& p);

std::string print_scalar(const QScalar& c);
std::string print_monomial(const Monomial& m, const Presentation& p);
std::string print_element(const Element& e, const Presentation& p);
std::string print_tensor(const TensorElement& t, std::span<const Presentation* const> legs);

/// Line-oriented presentation file format:
///   gen <name> [inv] [weight <w>] [pos <i> <j>]
///   ungraded
///   rule <word> = <element-expr>
///   subst <word> = <element-expr>
std::string write_presentation(const Presentation& p);
Presentation read_presentation(const std::string& text);

}  // namespace qpb
