#include <doctest.h>

#include "heisenberg/expr.hpp"
#include "test_support.hpp"

using namespace heisenberg;
namespace ht = heisenberg::testing;

namespace {

ExprPtr random_expr(int depth)
{
    const int pick = depth <= 0 ? ht::uniform_int(0, 2) : ht::uniform_int(0, 9);
    switch (pick) {
    case 0: {
        Rational q(ht::uniform_int(0, 9), ht::uniform_int(1, 4));
        return Expr::literal(q, ht::uniform_int(0, 3) == 0);
    }
    case 1: {
        static const char* indexed[] = {"X", "Y", "Z", "Zb"};
        return Expr::atom(indexed[ht::uniform_int(0, 3)], static_cast<unsigned>(ht::uniform_int(1, 3)));
    }
    case 2: {
        static const char* plain[] = {"T", "A", "Adag", "Lap"};
        return Expr::atom(plain[ht::uniform_int(0, 3)]);
    }
    case 3:
        return Expr::sub(random_expr(0));
    case 4:
        return Expr::neg(random_expr(depth - 1));
    case 5:
        return Expr::pow(random_expr(depth - 1), static_cast<unsigned>(ht::uniform_int(0, 3)));
    case 6:
        return Expr::binary(Expr::Kind::Add, random_expr(depth - 1), random_expr(depth - 1));
    case 7:
        return Expr::binary(Expr::Kind::Subtract, random_expr(depth - 1), random_expr(depth - 1));
    default:
        return Expr::binary(Expr::Kind::Mul, random_expr(depth - 1), random_expr(depth - 1));
    }
}

AlgebraElement lowered(const std::string& text) { return lower(*parse(text), infer_dimension(*parse(text))); }

}  // namespace

TEST_CASE("lowering examples")
{
    CHECK(lowered("X1*Y1 - Y1*X1") == GaussianRational(-4) * t_field(1));
    CHECK(lowered("Sub(0)") == sublaplacian(1, 0));
    CHECK(to_string(lowered("Sub(0)")) == "1/4*X1^2 + 1/4*Y1^2");
    CHECK(lowered("Sub(1/2 + 3i)") == sublaplacian(1, GaussianRational(Rational(1, 2), Rational(3))));
    const auto f = lowered("(X1 - 1i*Y1)*(X1 + 1i*Y1)");
    const auto defect = f - heisenberg_laplacian(1);
    REQUIRE(defect.terms().size() == 1);
    CHECK(defect.terms().begin()->first.c == 1);
    CHECK(defect == GaussianRational(Rational(0), Rational(-4)) * t_field(1));
    CHECK(lowered("A*Adag") == f);
    CHECK(lowered("Y1*X1") == x_field(1, 1) * y_field(1, 1) + GaussianRational(4) * t_field(1));
    CHECK(to_string(lowered("Y1*X1")) == "X1*Y1 + 4*T");
    CHECK(lowered("0.25*Lap") == GaussianRational(Rational(1, 4)) * heisenberg_laplacian(1));
    CHECK(lowered("Z2*Zb2 - Zb2*Z2") == commutator(z_field(2, 2), zbar_field(2, 2)));
    CHECK(infer_dimension(*parse("X3 + T")) == 3);
    CHECK(infer_dimension(*parse("T")) == 1);
    CHECK(lowered("X1^0") == AlgebraElement::scalar(1, GaussianRational(1)));
}

TEST_CASE("syntax and domain errors")
{
    const auto position_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    CHECK(position_of("X1 + ") == 5);
    CHECK(position_of("2X1") == 1);
    CHECK(position_of("X1 Y1") == 3);
    CHECK(position_of("(X1") == 3);
    CHECK(position_of("Q1") == 0);
    CHECK(position_of("X0") == 0);
    CHECK(position_of("X") == 1);
    CHECK(position_of("1/0") == 0);
    CHECK(position_of("X1^") == 3);
    CHECK(position_of("X1^2^3") == 4);

    CHECK_THROWS_AS(lower(*parse("X2"), 1), DomainError);
    CHECK_THROWS_AS(lower(*parse("A"), 2), DomainError);
    CHECK_THROWS_AS(lower(*parse("Sub(X1)"), 1), DomainError);
}

TEST_CASE("canonical printing")
{
    CHECK(print(*parse("  X1*Y1-Y1 *X1")) == "X1*Y1 - Y1*X1");
    CHECK(print(*parse("-(X1*Y1)")) == "-(X1*Y1)");
    CHECK(print(*parse("(-X1)^2")) == "(-X1)^2");
    CHECK(print(*parse("-X1^2")) == "-X1^2");
    CHECK(print(*parse("X1*(Y1*T)")) == "X1*(Y1*T)");
    CHECK(print(*parse("(X1*Y1)*T")) == "X1*Y1*T");
    CHECK(print(*parse("X1 - (Y1 - T)")) == "X1 - (Y1 - T)");
    CHECK(print(*parse("0.50i")) == "1/2i");
    CHECK(print(*parse("(X1^2)^3")) == "(X1^2)^3");
}

TEST_CASE("parse(print(e)) = e on generated expressions")
{
    for (int k = 0; k < 300; ++k) {
        const auto e = random_expr(4);
        const std::string text = print(*e);
        const auto back = parse(text);
        CHECK_MESSAGE(structurally_equal(*e, *back), text);
        CHECK(print(*back) == text);
    }
}

TEST_CASE("normalize is a fixed point")
{
    for (int k = 0; k < 100; ++k) {
        const auto e = ht::random_element(2, 3, 4);
        const std::string text = to_string(e);
        const auto once = lower(*parse(text), 2);
        CHECK_MESSAGE(once == e, text);
        CHECK(to_string(lower(*parse(to_string(once)), 2)) == to_string(once));
    }
}
