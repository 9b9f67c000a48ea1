#include <doctest.h>

#include "heisenberg/algebra.hpp"
#include "test_support.hpp"

using namespace heisenberg;
namespace ht = heisenberg::testing;

namespace {

const GaussianRational I = GaussianRational::i();

Monomial mono1(unsigned a, unsigned b, unsigned c) { return Monomial{{a}, {b}, c}; }

AlgebraElement word_product(std::size_t n, const std::vector<Generator>& w)
{
    AlgebraElement out = AlgebraElement::scalar(n, GaussianRational(1));
    for (const auto& g : w) out = out * AlgebraElement::generator(n, g);
    return out;
}

}  // namespace

TEST_CASE("pbw normalization examples")
{
    const auto x = Generator::x(1);
    const auto y = Generator::y(1);

    AlgebraElement expected(1);
    expected.add_term(mono1(1, 1, 0), 1);
    expected.add_term(mono1(0, 0, 1), 4);
    CHECK(pbw_normalize(1, {y, x}) == expected);
    CHECK(to_string(pbw_normalize(1, {y, x})) == "X1*Y1 + 4*T");

    CHECK(pbw_normalize(1, {x, y}) == AlgebraElement::monomial(mono1(1, 1, 0)));

    // Y Y X -> X Y^2 + 8 Y T, worked by hand through two swaps.
    AlgebraElement yyx(1);
    yyx.add_term(mono1(1, 2, 0), 1);
    yyx.add_term(mono1(0, 1, 1), 8);
    CHECK(pbw_normalize(1, {y, y, x}) == yyx);
    CHECK(pbw_normalize(1, {y, y, x}, 1, RewriteOrder::RightToLeft) == yyx);
    CHECK(word_product(1, {y, y, x}) == yyx);

    CHECK_THROWS_AS(pbw_normalize(1, {Generator::x(2)}), DomainError);
}

TEST_CASE("closed-form product agrees with word rewriting")
{
    for (std::size_t n : {1U, 2U}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto u = ht::random_word(n, 5);
            const auto v = ht::random_word(n, 5);
            std::vector<Generator> uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            CHECK(pbw_normalize(n, u) * pbw_normalize(n, v) == pbw_normalize(n, uv));
        }
    }
}

TEST_CASE("commutators")
{
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = ht::random_element(2);
        CHECK(commutator(t_field(2), p).is_zero());
    }
    CHECK(commutator(z_field(1, 1), zbar_field(1, 1)) == (-2 * I) * t_field(1));
    CHECK(commutator(x_field(2, 1), x_field(2, 2)).is_zero());
    CHECK(commutator(y_field(2, 1), x_field(2, 2)).is_zero());
    CHECK(commutator(y_field(2, 2), x_field(2, 2)) == GaussianRational(4) * t_field(2));
    CHECK(commutator(z_field(1, 1), z_field(1, 1)).is_zero());
    CHECK(commutator(zbar_field(1, 1), zbar_field(1, 1)).is_zero());
}

TEST_CASE("complex fields")
{
    CHECK(z_field(2, 2) + zbar_field(2, 2) == x_field(2, 2));
    CHECK(z_field(2, 2) - zbar_field(2, 2) == (-I) * y_field(2, 2));
    CHECK_THROWS_AS(z_field(1, 2), DomainError);
    CHECK_THROWS_AS(zbar_field(1, 0), DomainError);
}

TEST_CASE("homogeneous degree")
{
    CHECK(homogeneous_degree(heisenberg_laplacian(1)) == 2U);
    CHECK(homogeneous_degree(x_field(1, 1)) == 1U);
    CHECK_FALSE(homogeneous_degree(x_field(1, 1) + t_field(1)).has_value());
    CHECK(homogeneous_degree(AlgebraElement::scalar(1, 5)) == 0U);
    CHECK_THROWS_AS(homogeneous_degree(AlgebraElement(1)), DomainError);
}

TEST_CASE("sublaplacian builds")
{
    const GaussianRational alpha(Rational(3, 2), Rational(-1, 3));
    for (std::size_t n : {1U, 3U}) {
        AlgebraElement quarter(n);
        for (unsigned j = 1; j <= n; ++j) {
            quarter.add_term([&] { auto m = Monomial::one(n); m.a[j - 1] = 2; return m; }(), Rational(1, 4));
            quarter.add_term([&] { auto m = Monomial::one(n); m.b[j - 1] = 2; return m; }(), Rational(1, 4));
        }
        const auto l = sublaplacian(n, alpha);
        CHECK(l == quarter + (I * alpha) * t_field(n));
        CHECK(homogeneous_degree(l) == 2U);

        // Z Zbar + Zbar Z = (X^2 + Y^2)/2, so the complex-field build is -1/4 sum (X^2+Y^2).
        CHECK(sublaplacian_complex_form(n, alpha) - l == GaussianRational(-2) * quarter);
    }
    CHECK(to_string(sublaplacian(1, 0)) == "1/4*X1^2 + 1/4*Y1^2");
}

TEST_CASE("laplacian factors")
{
    const auto a = factor_A();
    const auto ad = factor_A_dagger();
    CHECK(a + ad == GaussianRational(2) * x_field(1, 1));
    // A A^dag = X^2 + Y^2 + i (XY - YX) = Delta + i[X,Y] = Delta - 4i T
    CHECK(a * ad - heisenberg_laplacian(1) == (-4 * I) * t_field(1));
    CHECK(ad * a - heisenberg_laplacian(1) == (4 * I) * t_field(1));
    CHECK(homogeneous_degree(heisenberg_laplacian(2)) == 2U);
}

TEST_CASE("formal transpose")
{
    CHECK(formal_transpose(x_field(1, 1)) == -x_field(1, 1));
    CHECK(formal_transpose(x_field(1, 1) * y_field(1, 1)) == pbw_normalize(1, {Generator::y(1), Generator::x(1)}));
    CHECK(formal_transpose(x_field(1, 1) * y_field(1, 1)) ==
          x_field(1, 1) * y_field(1, 1) + GaussianRational(4) * t_field(1));
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = ht::random_element(2);
        const auto q = ht::random_element(2);
        CHECK(formal_transpose(formal_transpose(p)) == p);
        CHECK(formal_transpose(p * q) == formal_transpose(q) * formal_transpose(p));
    }
}

TEST_CASE("preconditioner")
{
    CHECK(preconditioner(1, 1) == heisenberg_laplacian(1));
    CHECK(homogeneous_degree(preconditioner(2, 3)) == 6U);
    CHECK_THROWS_AS(preconditioner(1, 0), DomainError);

    // (X^2+Y^2)^2 expanded word by word through the rewriting oracle.
    const auto x = Generator::x(1);
    const auto y = Generator::y(1);
    const auto oracle = pbw_normalize(1, {x, x, x, x}) + pbw_normalize(1, {x, x, y, y}) +
                        pbw_normalize(1, {y, y, x, x}) + pbw_normalize(1, {y, y, y, y});
    CHECK(preconditioner(1, 2) == oracle);
    CHECK(to_string(oracle) == "X1^4 + 2*X1^2*Y1^2 + 16*X1*Y1*T + Y1^4 + 32*T^2");
}

TEST_CASE("algebraic properties on random elements")
{
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = trial % 2 ? 2 : 1;
        const auto p = ht::random_element(n);
        const auto q = ht::random_element(n);
        const auto r = ht::random_element(n);

        CHECK((p * q) * r == p * (q * r));
        CHECK((commutator(p, commutator(q, r)) + commutator(q, commutator(r, p)) + commutator(r, commutator(p, q)))
                  .is_zero());

        const Rational mu = ht::random_rational(4, 3);
        CHECK(dilate(p * q, mu) == dilate(p, mu) * dilate(q, mu));
    }

    // Grading on homogeneous pieces.
    for (int trial = 0; trial < 40; ++trial) {
        const auto w1 = ht::random_word(2, 4);
        const auto w2 = ht::random_word(2, 4);
        const auto p = pbw_normalize(2, w1, ht::random_gaussian(3, 1) + GaussianRational(Rational(1, 7)));
        const auto q = pbw_normalize(2, w2, GaussianRational(1));
        const auto dp = homogeneous_degree(p);
        const auto dq = homogeneous_degree(q);
        REQUIRE(dp.has_value());
        REQUIRE(dq.has_value());
        CHECK(homogeneous_degree(p * q) == *dp + *dq);
        CHECK(dilate(p, Rational(3)) == p * GaussianRational(pow(GaussianRational(3), *dp)));
    }
}

TEST_CASE("pbw confluence")
{
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto w = ht::random_word(n, 8);
        CHECK(pbw_normalize(n, w, 1, RewriteOrder::LeftToRight) == pbw_normalize(n, w, 1, RewriteOrder::RightToLeft));
    }
}

TEST_CASE("text and json forms")
{
    AlgebraElement e(2);
    auto m = Monomial::one(2);
    m.a = {2, 0};
    m.b = {0, 1};
    m.c = 1;
    e.add_term(m, GaussianRational(Rational(3, 4), Rational(1, 2)));
    e.add_term(Monomial::one(2), -1);
    e.add_term([] { auto t = Monomial::one(2); t.c = 1; return t; }(), GaussianRational(Rational(0), Rational(-2)));
    CHECK(to_string(e) == "(3/4 + 1/2i)*X1^2*Y2*T - 2i*T - 1");
    CHECK(algebra_element_from_json(to_json(e)) == e);
    CHECK(to_string(AlgebraElement(1)) == "0");
    CHECK(to_string(-x_field(1, 1)) == "-X1");
}
