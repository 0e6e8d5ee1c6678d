#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tmoyal/errors.hpp"
#include "tmoyal/gauss.hpp"
#include "tmoyal/geometry.hpp"
#include "tmoyal/poly.hpp"
#include "tmoyal/star.hpp"

namespace tmoyal {

enum class NodeKind { rational, imaginary, symbol, sum, difference, product, power, call };

struct AstNode;
using AstPtr = std::shared_ptr<const AstNode>;

struct AstNode {
    NodeKind kind;
    Rational number;
    Sym symbol = Sym::x1;
    std::string callee;
    unsigned exponent = 0;
    std::vector<AstPtr> children;
};

AstPtr make_rational(const Rational& value);
AstPtr make_imaginary();
AstPtr make_symbol(Sym s);
AstPtr make_sum(AstPtr lhs, AstPtr rhs);
AstPtr make_difference(AstPtr lhs, AstPtr rhs);
AstPtr make_product(AstPtr lhs, AstPtr rhs);
AstPtr make_power(AstPtr base, unsigned exponent);
AstPtr make_call(const std::string& callee, std::vector<AstPtr> args);

bool ast_equal(const AstPtr& a, const AstPtr& b);

// Grammar accepted by `parse_expression` (whitespace insensitive):
//   expr   := ('-')? term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := rational | 'i' | symbol | func '(' expr (',' expr)* ')' | '(' expr ')'
// with rational := uint ('/' uint)?, the twelve generator names as
// symbols (w11^1 and friends lex as single tokens), the binary
// functions star, comm, acomm, gauss and the unary functions
// d1, d2, X1, X2.  Throws ParseError with a byte offset.
AstPtr parse_expression(const std::string& text);

// Renders with the minimal parenthesization that reparses to an
// equal tree.
std::string render(const AstPtr& node);

// Evaluation produces either a polynomial or a Gaussian-windowed
// density; any subexpression touching gauss() promotes to the latter.
using Value = std::variant<Poly, GaussianDensity>;

Value eval_expression(const AstPtr& node, const Geometry& g,
                      StarMethod method = StarMethod::closed);

GaussianDensity to_density(const Value& v);
Value value_star(const Geometry& g, const Value& lhs, const Value& rhs,
                 StarMethod method = StarMethod::closed);
std::string value_str(const Value& v);

} // namespace tmoyal
