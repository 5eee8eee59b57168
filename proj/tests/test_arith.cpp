#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hwf/arith.hpp"
#include "support/oracles.hpp"

using namespace hwf;

TEST_CASE("kronecker symbol examples")
{
    CHECK(kronecker(7, 1) == 1);
    CHECK(kronecker(16, 2) == 0);
    CHECK(kronecker(2, 3) == -1);
    CHECK(kronecker(-4, 7) == -1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(1, 2) == 1);
    CHECK(kronecker(-1, -1) == -1);
    CHECK(kronecker(3, -1) == 1);
}

TEST_CASE("kronecker agrees with Euler's criterion for odd primes below 200")
{
    for (const auto p : primes_up_to(199)) {
        if (p == 2) continue;
        for (std::int64_t a = -p; a < 2 * p; ++a) REQUIRE(kronecker(a, p) == oracle::legendre_euler(a, p));
    }
}

TEST_CASE("kronecker is completely multiplicative in both arguments")
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::int64_t> dist(-5000, 5000);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t a = dist(rng), b = dist(rng);
        std::int64_t n = dist(rng), m = dist(rng);
        if (n == 0) n = 1;
        if (m == 0) m = -1;
        REQUIRE(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
        REQUIRE(kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m));
    }
}

TEST_CASE("chi_t_N")
{
    CHECK(chi_t_N(6, 4, 1, 2) == 0);
    CHECK(chi_t_N(6, 4, 1, 3) == 1);
    CHECK(chi_t_N(1, 44, 3, 3) == 0);
    CHECK(chi_t_N(1, 44, 3, 5) == kronecker(-3 * 44 * 44, 5));
    CHECK_THROWS_AS(chi_t_N(6, 4, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(chi_t_N(6, 6, 1, 3), std::invalid_argument);
}

TEST_CASE("chi_star")
{
    CHECK(chi_star(DirichletCharacter::trivial(4), 6, 3) == 1);
    CHECK(chi_star(DirichletCharacter::trivial(44), 1, 7) == -1);
    CHECK(chi_star(DirichletCharacter::trivial(44), 1, 2) == 0);
    CHECK(chi_star(DirichletCharacter::trivial(44), 1, 5) == 1);
}

TEST_CASE("fundamental discriminants")
{
    CHECK(is_fundamental_discriminant(1));
    CHECK(is_fundamental_discriminant(5));
    CHECK_FALSE(is_fundamental_discriminant(9));
    CHECK(is_fundamental_discriminant(8));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-3));
    CHECK_FALSE(is_fundamental_discriminant(4));
    CHECK_FALSE(is_fundamental_discriminant(-1));
    CHECK_THROWS_AS(is_fundamental_discriminant(0), std::invalid_argument);
}

TEST_CASE("fundamental discriminants agree with the field-discriminant rule for |d| <= 10^4")
{
    for (std::int64_t d = -10000; d <= 10000; ++d) {
        if (d == 0 || d == 1) continue;
        const std::int64_t ad = d < 0 ? -d : d;
        std::int64_t r = 0;
        while ((r + 1) * (r + 1) <= ad) ++r;
        const bool square = d > 0 && r * r == d;
        const bool expected = !square && oracle::field_discriminant(d) == d;
        REQUIRE_MESSAGE(is_fundamental_discriminant(d) == expected, "d = " << d);
    }
}

TEST_CASE("squarefree decomposition")
{
    CHECK(squarefree_decompose(12).t == 3);
    CHECK(squarefree_decompose(12).m == 2);
    CHECK(squarefree_decompose(1).t == 1);
    CHECK(squarefree_decompose(1).m == 1);
    CHECK(squarefree_decompose(360).t == 10);
    CHECK(squarefree_decompose(360).m == 6);
    for (std::int64_t n = 1; n <= 100000; ++n) {
        const auto [t, m] = squarefree_decompose(n);
        REQUIRE(t * m * m == n);
        REQUIRE(is_squarefree(t));
    }
    CHECK_THROWS(squarefree_decompose(0));
}

TEST_CASE("divisors")
{
    CHECK(divisors(1) == std::vector<std::int64_t>{1});
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(49) == std::vector<std::int64_t>{1, 7, 49});
}

TEST_CASE("real Dirichlet characters")
{
    const auto psi = DirichletCharacter::kronecker(-4, 4);
    CHECK(psi.is_odd());
    CHECK(psi.is_primitive());
    CHECK(psi(1) == 1);
    CHECK(psi(3) == -1);
    CHECK(psi(2) == 0);

    const auto chi = DirichletCharacter::trivial(44);
    CHECK(chi.is_trivial());
    CHECK_FALSE(chi.is_primitive());
    CHECK(chi(3) == 1);
    CHECK(chi(11) == 0);

    for (const auto& c : {DirichletCharacter::kronecker(-3, 3), DirichletCharacter::kronecker(5, 20),
                          DirichletCharacter::kronecker(-7, 7), DirichletCharacter::trivial(44),
                          DirichletCharacter::kronecker(12, 12)}) {
        const std::int64_t M = c.period();
        for (std::int64_t a = -60; a <= 60; ++a) {
            REQUIRE(c(a + M) == c(a));
            for (std::int64_t b = -12; b <= 12; ++b) REQUIRE(c(a * b) == c(a) * c(b));
        }
    }

    CHECK(DirichletCharacter::parse("trivial:4") == DirichletCharacter::trivial(4));
    CHECK(DirichletCharacter::parse("kronecker:-4/mod:4") == psi);
    CHECK(DirichletCharacter::parse(psi.to_string()) == psi);
    CHECK_THROWS_AS(DirichletCharacter::parse("conrey:5.2"), std::invalid_argument);
    CHECK_THROWS_AS(DirichletCharacter::parse("trivial:x"), std::invalid_argument);
}
