#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hwf {

/// Extended Kronecker symbol (a/n), defined for every pair of integers.
/// At n = 0 the value is 1 for a = +-1 and 0 otherwise.
int kronecker(std::int64_t a, std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

bool is_squarefree(std::int64_t n);

bool is_prime(std::int64_t n);

/// Primes p <= limit, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// True iff d is 1 or the discriminant of a quadratic field.
/// Throws std::invalid_argument for d = 0.
bool is_fundamental_discriminant(std::int64_t d);

struct SquarefreeDecomposition {
    std::int64_t t;  // square-free part
    std::int64_t m;  // n = t * m^2
};

SquarefreeDecomposition squarefree_decompose(std::int64_t n);

std::vector<std::int64_t> divisors(std::int64_t n);

/// A real Dirichlet character a -> (top/a), restricted to a coprime to the
/// modulus. The trivial character modulo N has top 1.
///
/// Only real characters exist in this library; the textual form accepted by
/// parse() is "trivial:<N>" or "kronecker:<top>/mod:<N>".
class DirichletCharacter {
public:
    static DirichletCharacter trivial(std::int64_t modulus);
    static DirichletCharacter kronecker(std::int64_t top, std::int64_t modulus);
    static DirichletCharacter parse(const std::string& text);

    int operator()(std::int64_t a) const { return value(a); }
    int value(std::int64_t a) const;

    std::int64_t top() const { return top_; }
    std::int64_t modulus() const { return modulus_; }
    bool is_trivial() const { return top_ == 1; }
    bool is_odd() const { return value(-1) == -1; }
    bool is_primitive() const;
    /// A period M with value(a + M) == value(a) for all a.
    std::int64_t period() const;

    std::string to_string() const;

    friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

private:
    DirichletCharacter(std::int64_t top, std::int64_t modulus) : top_(top), modulus_(modulus) {}

    std::int64_t top_;
    std::int64_t modulus_;
};

/// chi_{t,N}(d) = ((-1)^k N^2 t / d). Requires t square-free and 4 | N.
int chi_t_N(int k, std::int64_t N, std::int64_t t, std::int64_t d);

/// chi*(a) = (-4/a)^k chi(a).
int chi_star(const DirichletCharacter& chi, int k, std::int64_t a);

}  // namespace hwf
