#pragma once

// Textual description of a q-series built from named atoms.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' int)?
//           | rational '*' factor
//   primary:= atom | '(' expr ')' | 'D(' expr ')' | 'U(' int ',' expr ')'
//   atom   := 'eta(' int ')' | 'theta(' int ')' | 'thetapsi(' int ',' int ')' | 'E4(' int ')'
//   rational := '-'? int ('/' int)?
//
// Atom arguments are dilations: eta(m) is eta(m z). thetapsi(D, m) is the
// unary theta series of the Kronecker character (D / .), D a negative
// fundamental discriminant. D(.) is q d/dq and U(m, .) extracts every m-th
// coefficient.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "hwf/qseries.hpp"

namespace hwf {

class FormSpecError : public std::runtime_error {
public:
    FormSpecError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }
    /// Byte offset into the parsed text.
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct FormSpecNode;
using FormSpecExpr = std::shared_ptr<const FormSpecNode>;

namespace spec {
struct Eta { std::int64_t m; };
struct Theta { std::int64_t m; };
struct ThetaPsi { std::int64_t discriminant; std::int64_t m; };
struct E4 { std::int64_t m; };
struct Derive { FormSpecExpr arg; };
struct UOp { std::int64_t m; FormSpecExpr arg; };
struct Sum { FormSpecExpr lhs; FormSpecExpr rhs; bool subtract; };
struct Product { FormSpecExpr lhs; FormSpecExpr rhs; };
struct Power { FormSpecExpr base; unsigned exponent; };
struct Scaled { mpq_class factor; FormSpecExpr arg; };
}  // namespace spec

struct FormSpecNode {
    std::variant<spec::Eta, spec::Theta, spec::ThetaPsi, spec::E4, spec::Derive, spec::UOp, spec::Sum,
                 spec::Product, spec::Power, spec::Scaled>
        node;
};

class FormSpec {
public:
    explicit FormSpec(FormSpecExpr root) : root_(std::move(root)) {}

    const FormSpecNode& root() const { return *root_; }
    const FormSpecExpr& expr() const { return root_; }

    /// Structural rendering, e.g. "Pow(Eta(1), 24)".
    std::string to_string() const;
    /// Twice the weight, when every sum combines terms of equal weight.
    std::optional<int> weight_twice() const;

private:
    FormSpecExpr root_;
};

/// Throws FormSpecError on syntax or argument-range errors.
FormSpec parse_formspec(std::string_view text);

/// Evaluates to a series valid for all exponents < prec.
QSeries evaluate(const FormSpec& spec, std::int64_t prec);

}  // namespace hwf
