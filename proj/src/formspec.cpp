#include "hwf/formspec.hpp"

#include <cctype>
#include <limits>

namespace hwf {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

FormSpecExpr make(auto node) { return std::make_shared<const FormSpecNode>(FormSpecNode{std::move(node)}); }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    FormSpecExpr parse()
    {
        FormSpecExpr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const
    {
        throw FormSpecError(what, at.value_or(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c)
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    bool at_digit()
    {
        skip_space();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::int64_t integer()
    {
        skip_space();
        const std::size_t start = pos_;
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const int d = text_[pos_] - '0';
            if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) fail("integer too large", start);
            v = v * 10 + d;
            ++pos_;
        }
        if (pos_ == start) fail("expected integer");
        return v;
    }

    std::int64_t signed_integer()
    {
        const bool neg = accept('-');
        const std::int64_t v = integer();
        return neg ? -v : v;
    }

    std::int64_t positive_argument(const char* what)
    {
        skip_space();
        const std::size_t at = pos_;
        const std::int64_t v = integer();
        if (v < 1) fail(std::string(what) + " must be >= 1", at);
        return v;
    }

    std::string identifier()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    FormSpecExpr expr()
    {
        FormSpecExpr lhs = term();
        while (true) {
            if (accept('+'))
                lhs = make(spec::Sum{lhs, term(), false});
            else if (accept('-'))
                lhs = make(spec::Sum{lhs, term(), true});
            else
                return lhs;
        }
    }

    FormSpecExpr term()
    {
        FormSpecExpr lhs = factor();
        while (accept('*')) lhs = make(spec::Product{lhs, factor()});
        return lhs;
    }

    FormSpecExpr factor()
    {
        if (at_digit() || peek('-')) {
            const std::size_t at = pos_;
            const std::int64_t num = signed_integer();
            std::int64_t den = 1;
            if (accept('/')) {
                const std::size_t den_at = pos_;
                den = integer();
                if (den == 0) fail("zero denominator", den_at);
            }
            if (!accept('*')) fail("scalar must be followed by '*'", at);
            mpq_class c(static_cast<long>(num), static_cast<unsigned long>(den));
            c.canonicalize();
            return make(spec::Scaled{c, factor()});
        }
        FormSpecExpr base = primary();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            const std::int64_t e = integer();
            if (e < 1 || e > 100000) fail("exponent must be between 1 and 100000", at);
            return make(spec::Power{base, static_cast<unsigned>(e)});
        }
        return base;
    }

    FormSpecExpr primary()
    {
        if (accept('(')) {
            FormSpecExpr e = expr();
            expect(')');
            return e;
        }
        skip_space();
        const std::size_t at = pos_;
        const std::string name = identifier();
        if (name.empty()) {
            if (pos_ >= text_.size()) fail("unexpected end of input");
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        expect('(');
        FormSpecExpr out;
        if (name == "eta") {
            out = make(spec::Eta{positive_argument("eta dilation")});
        } else if (name == "theta") {
            out = make(spec::Theta{positive_argument("theta dilation")});
        } else if (name == "E4") {
            out = make(spec::E4{positive_argument("E4 dilation")});
        } else if (name == "thetapsi") {
            skip_space();
            const std::size_t d_at = pos_;
            const std::int64_t d = signed_integer();
            if (d >= 0 || !is_fundamental_discriminant(d))
                fail("thetapsi character must be a negative fundamental discriminant", d_at);
            expect(',');
            out = make(spec::ThetaPsi{d, positive_argument("thetapsi dilation")});
        } else if (name == "D") {
            out = make(spec::Derive{expr()});
        } else if (name == "U") {
            const std::int64_t m = positive_argument("U index");
            expect(',');
            out = make(spec::UOp{m, expr()});
        } else {
            fail("unknown function '" + name + "'", at);
        }
        expect(')');
        return out;
    }
};

std::string render(const FormSpecNode& n)
{
    return std::visit(
        Overloaded{
            [](const spec::Eta& x) { return "Eta(" + std::to_string(x.m) + ")"; },
            [](const spec::Theta& x) { return "Theta(" + std::to_string(x.m) + ")"; },
            [](const spec::ThetaPsi& x) {
                return "ThetaPsi(" + std::to_string(x.discriminant) + ", " + std::to_string(x.m) + ")";
            },
            [](const spec::E4& x) { return "E4(" + std::to_string(x.m) + ")"; },
            [](const spec::Derive& x) { return "D(" + render(*x.arg) + ")"; },
            [](const spec::UOp& x) { return "U(" + std::to_string(x.m) + ", " + render(*x.arg) + ")"; },
            [](const spec::Sum& x) {
                return std::string(x.subtract ? "Sub(" : "Add(") + render(*x.lhs) + ", " + render(*x.rhs) + ")";
            },
            [](const spec::Product& x) { return "Mul(" + render(*x.lhs) + ", " + render(*x.rhs) + ")"; },
            [](const spec::Power& x) { return "Pow(" + render(*x.base) + ", " + std::to_string(x.exponent) + ")"; },
            [](const spec::Scaled& x) { return "Scale(" + x.factor.get_str() + ", " + render(*x.arg) + ")"; },
        },
        n.node);
}

std::optional<int> weight_of(const FormSpecNode& n)
{
    return std::visit(
        Overloaded{
            [](const spec::Eta&) -> std::optional<int> { return 1; },
            [](const spec::Theta&) -> std::optional<int> { return 1; },
            [](const spec::ThetaPsi&) -> std::optional<int> { return 3; },
            [](const spec::E4&) -> std::optional<int> { return 8; },
            [](const spec::Derive& x) -> std::optional<int> {
                auto w = weight_of(*x.arg);
                return w ? std::optional<int>(*w + 4) : std::nullopt;
            },
            [](const spec::UOp& x) { return weight_of(*x.arg); },
            [](const spec::Sum& x) -> std::optional<int> {
                auto a = weight_of(*x.lhs);
                auto b = weight_of(*x.rhs);
                return (a && b && *a == *b) ? a : std::nullopt;
            },
            [](const spec::Product& x) -> std::optional<int> {
                auto a = weight_of(*x.lhs);
                auto b = weight_of(*x.rhs);
                return (a && b) ? std::optional<int>(*a + *b) : std::nullopt;
            },
            [](const spec::Power& x) -> std::optional<int> {
                auto w = weight_of(*x.base);
                return w ? std::optional<int>(*w * static_cast<int>(x.exponent)) : std::nullopt;
            },
            [](const spec::Scaled& x) { return weight_of(*x.arg); },
        },
        n.node);
}

// Valid for every exponent < prec (possibly beyond).
QSeries eval(const FormSpecNode& n, std::int64_t prec)
{
    return std::visit(
        Overloaded{
            [&](const spec::Eta& x) { return eta(x.m, prec); },
            [&](const spec::Theta& x) { return theta(x.m, prec); },
            [&](const spec::ThetaPsi& x) {
                const std::int64_t modulus = -x.discriminant;
                return theta_psi(DirichletCharacter::kronecker(x.discriminant, modulus), x.m, prec);
            },
            [&](const spec::E4& x) {
                const std::int64_t base_prec = (prec + x.m - 1) / x.m;
                return dilate(x.m, eisenstein_e4(base_prec));
            },
            [&](const spec::Derive& x) { return derive(eval(*x.arg, prec)); },
            [&](const spec::UOp& x) { return u_op(x.m, eval(*x.arg, x.m * prec)); },
            [&](const spec::Sum& x) {
                QSeries a = eval(*x.lhs, prec);
                QSeries b = eval(*x.rhs, prec);
                return x.subtract ? sub(a, b) : add(a, b);
            },
            [&](const spec::Product& x) { return mul(eval(*x.lhs, prec), eval(*x.rhs, prec)); },
            [&](const spec::Power& x) { return pow(eval(*x.base, prec), x.exponent); },
            [&](const spec::Scaled& x) { return scale(eval(*x.arg, prec), x.factor); },
        },
        n.node);
}

}  // namespace

std::string FormSpec::to_string() const { return render(*root_); }

std::optional<int> FormSpec::weight_twice() const { return weight_of(*root_); }

FormSpec parse_formspec(std::string_view text) { return FormSpec(Parser(text).parse()); }

QSeries evaluate(const FormSpec& spec, std::int64_t prec)
{
    if (prec < 1) throw std::invalid_argument("evaluate: precision must be positive");
    return truncate_below(eval(spec.root(), prec), prec);
}

}  // namespace hwf
