#include "heisenberg/expr.hpp"

#include <cctype>

#include "heisenberg/errors.hpp"

namespace heisenberg {

ExprPtr Expr::literal(Rational magnitude, bool imaginary)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Literal;
    magnitude.canonicalize();
    e->magnitude = std::move(magnitude);
    e->imaginary = imaginary;
    return e;
}

ExprPtr Expr::atom(std::string name, unsigned index)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Atom;
    e->name = std::move(name);
    e->index = index;
    return e;
}

ExprPtr Expr::sub(ExprPtr alpha)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Sub;
    e->args = {std::move(alpha)};
    return e;
}

ExprPtr Expr::neg(ExprPtr inner)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->args = {std::move(inner)};
    return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr Expr::pow(ExprPtr base, unsigned exponent)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->exponent = exponent;
    e->args = {std::move(base)};
    return e;
}

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
    case Expr::Kind::Literal:
        return a.magnitude == b.magnitude && a.imaginary == b.imaginary;
    case Expr::Kind::Atom:
        return a.name == b.name && a.index == b.index;
    case Expr::Kind::Pow:
        if (a.exponent != b.exponent) return false;
        break;
    default:
        break;
    }
    for (std::size_t k = 0; k < a.args.size(); ++k)
        if (!structurally_equal(*a.args[k], *b.args[k])) return false;
    return true;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    ExprPtr run()
    {
        auto e = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    std::string digits()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected digits", pos_);
        return s_.substr(start, pos_ - start);
    }

    ExprPtr expr()
    {
        auto lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(Expr::Kind::Add, lhs, term());
            else if (accept('-'))
                lhs = Expr::binary(Expr::Kind::Subtract, lhs, term());
            else
                return lhs;
        }
    }

    ExprPtr term()
    {
        auto lhs = unary();
        while (accept('*')) lhs = Expr::binary(Expr::Kind::Mul, lhs, unary());
        return lhs;
    }

    ExprPtr unary()
    {
        if (accept('-')) return Expr::neg(unary());
        return power();
    }

    ExprPtr power()
    {
        auto base = primary();
        if (accept('^')) {
            skip();
            const std::size_t at = pos_;
            const std::string d = digits();
            if (d.size() > 6) throw ParseError("exponent too large", at);
            return Expr::pow(base, static_cast<unsigned>(std::stoul(d)));
        }
        return base;
    }

    ExprPtr literal()
    {
        const std::size_t at = pos_;
        const std::string whole = digits();
        Rational q;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            const std::string den = digits();
            if (mpz_class(den, 10) == 0) throw ParseError("zero denominator", at);
            q = Rational(mpz_class(whole, 10), mpz_class(den, 10));
        } else if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::string frac = digits();
            mpz_class den = 1;
            for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
            q = Rational(mpz_class(whole + frac, 10), den);
        } else {
            q = Rational(mpz_class(whole, 10));
        }
        bool imaginary = false;
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            imaginary = true;
        }
        if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("juxtaposition is not allowed; use '*'", pos_);
        return Expr::literal(q, imaginary);
    }

    ExprPtr primary()
    {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return literal();
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) throw ParseError(std::string("unexpected '") + c + "'", pos_);

        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
        const std::string word = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (word == "T" || word == "A" || word == "Adag" || word == "Lap") return Expr::atom(word);
        if (word == "Sub") {
            expect('(');
            auto alpha = expr();
            expect(')');
            return Expr::sub(alpha);
        }
        if (word == "X" || word == "Y" || word == "Z" || word == "Zb") {
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError(word + " needs an index", pos_);
            const std::string d = digits();
            if (d.size() > 6 || std::stoul(d) == 0) throw ParseError("generator index must be in 1..999999", at);
            return Expr::atom(word, static_cast<unsigned>(std::stoul(d)));
        }
        throw ParseError("unknown name '" + word + "'", at);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Subtract:
        return 1;
    case Expr::Kind::Mul:
        return 2;
    case Expr::Kind::Neg:
        return 3;
    case Expr::Kind::Pow:
        return 4;
    default:
        return 5;
    }
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + print(e) + ")" : print(e); }

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Literal: {
        std::string s = e.magnitude.get_num().get_str();
        if (e.magnitude.get_den() != 1) s += "/" + e.magnitude.get_den().get_str();
        return e.imaginary ? s + "i" : s;
    }
    case Expr::Kind::Atom:
        return e.index ? e.name + std::to_string(e.index) : e.name;
    case Expr::Kind::Sub:
        return "Sub(" + print(*e.args[0]) + ")";
    case Expr::Kind::Neg:
        return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
    case Expr::Kind::Add:
    case Expr::Kind::Subtract:
        return print(*e.args[0]) + (e.kind == Expr::Kind::Add ? " + " : " - ") + wrap(*e.args[1], precedence(*e.args[1]) <= 1);
    case Expr::Kind::Mul:
        return wrap(*e.args[0], precedence(*e.args[0]) < 2) + "*" + wrap(*e.args[1], precedence(*e.args[1]) <= 2);
    case Expr::Kind::Pow:
        return wrap(*e.args[0], precedence(*e.args[0]) < 5) + "^" + std::to_string(e.exponent);
    }
    return {};
}

std::size_t infer_dimension(const Expr& e)
{
    std::size_t n = e.kind == Expr::Kind::Atom ? e.index : 0;
    for (const auto& a : e.args) n = std::max(n, infer_dimension(*a));
    return std::max<std::size_t>(n, 1);
}

AlgebraElement lower(const Expr& e, std::size_t n)
{
    switch (e.kind) {
    case Expr::Kind::Literal:
        return AlgebraElement::scalar(n, e.imaginary ? GaussianRational(Rational(0), e.magnitude) : GaussianRational(e.magnitude));
    case Expr::Kind::Atom: {
        if (e.index > n) throw DomainError(e.name + std::to_string(e.index) + " is out of range for n = " + std::to_string(n));
        if (e.name == "X") return x_field(n, e.index);
        if (e.name == "Y") return y_field(n, e.index);
        if (e.name == "Z") return z_field(n, e.index);
        if (e.name == "Zb") return zbar_field(n, e.index);
        if (e.name == "T") return t_field(n);
        if (e.name == "Lap") return heisenberg_laplacian(n);
        if (n != 1) throw DomainError(e.name + " is defined on H_1 only");
        return e.name == "A" ? factor_A() : factor_A_dagger();
    }
    case Expr::Kind::Sub: {
        const auto alpha = lower(*e.args[0], n);
        GaussianRational a(0);
        for (const auto& [m, c] : alpha.terms()) {
            if (!m.is_one()) throw DomainError("Sub(alpha) needs a scalar alpha");
            a = c;
        }
        return sublaplacian(n, a);
    }
    case Expr::Kind::Neg:
        return -lower(*e.args[0], n);
    case Expr::Kind::Add:
        return lower(*e.args[0], n) + lower(*e.args[1], n);
    case Expr::Kind::Subtract:
        return lower(*e.args[0], n) - lower(*e.args[1], n);
    case Expr::Kind::Mul:
        return lower(*e.args[0], n) * lower(*e.args[1], n);
    case Expr::Kind::Pow:
        return power(lower(*e.args[0], n), e.exponent);
    }
    throw DomainError("unknown expression node");
}

}  // namespace heisenberg
