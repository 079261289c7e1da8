#pragma once

#include <map>
#include <memory>
#include <string>

#include "mf/errors.hpp"
#include "mf/poly_symbol.hpp"

namespace mf::io {

/// Syntax error with the 0-based character offset where parsing stopped.
class ParseError : public ArgumentError {
public:
    ParseError(const std::string& what, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Expression tree over x and p.
///
/// Grammar: sum := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
/// unary := '-' unary | power; power := atom ('^' unary)?;
/// atom := number | x | p | name | exp '(' sum ')' | '(' sum ')'.
/// Other names are looked up in the constants table at parse time.
class Expression {
public:
    struct Node;

    static Expression parse(const std::string& text, const std::map<std::string, double>& constants = {});

    cplx evaluate(double x, double p) const;
    /// True when the tree only uses +, −, *, numbers, x, p and non-negative integer powers
    /// (division by a constant allowed).
    bool is_polynomial() const;
    /// Throws ArgumentError unless is_polynomial().
    PolySymbol to_poly() const;
    /// Symbolic ∂/∂x.
    Expression derivative_x() const;
    bool depends_on_p() const;
    std::string to_string() const;

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

}  // namespace mf::io
