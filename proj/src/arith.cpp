#include "hwf/arith.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace hwf {

namespace {

// (2/n) for odd n, indexed by n mod 8.
constexpr int kTwoTable[8] = {0, 1, 0, -1, 0, -1, 0, 1};

int mod8(std::int64_t a) { return static_cast<int>(((a % 8) + 8) % 8); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return a / gcd(a, b) * b; }

}  // namespace

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a % 2 == 0) && (n % 2 == 0)) return 0;

    int v = 0;
    while (n % 2 == 0) {
        ++v;
        n /= 2;
    }
    int k = (v % 2 == 0) ? 1 : kTwoTable[mod8(a)];
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }

    // n is now odd and positive.
    while (true) {
        if (a == 0) return n == 1 ? k : 0;
        v = 0;
        while (a % 2 == 0) {
            ++v;
            a /= 2;
        }
        if (v % 2 == 1) k *= kTwoTable[mod8(n)];
        if ((a & n & 2) != 0) k = -k;
        std::int64_t r = a < 0 ? -a : a;
        a = n % r;
        n = r;
    }
}

std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        std::int64_t r = a % b;
        a = b;
        b = r;
    }
    return a;
}

bool is_squarefree(std::int64_t n)
{
    if (n == 0) return false;
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit)
{
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::int64_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return out;
}

bool is_fundamental_discriminant(std::int64_t d)
{
    if (d == 0) throw std::invalid_argument("is_fundamental_discriminant: d must be nonzero");
    if (d == 1) return true;
    const int r = static_cast<int>(((d % 4) + 4) % 4);
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    const std::int64_t m = d / 4;
    const int rm = static_cast<int>(((m % 4) + 4) % 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

SquarefreeDecomposition squarefree_decompose(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("squarefree_decompose: n must be positive");
    std::int64_t t = 1;
    std::int64_t m = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) m *= p;
        if (e % 2 == 1) t *= p;
    }
    t *= n;
    return {t, m};
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("divisors: n must be positive");
    std::vector<std::int64_t> small;
    std::vector<std::int64_t> large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// -- DirichletCharacter ------------------------------------------------------

DirichletCharacter DirichletCharacter::trivial(std::int64_t modulus)
{
    if (modulus < 1) throw std::invalid_argument("character modulus must be positive");
    return DirichletCharacter(1, modulus);
}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t top, std::int64_t modulus)
{
    if (modulus < 1) throw std::invalid_argument("character modulus must be positive");
    if (top == 0) throw std::invalid_argument("Kronecker character top must be nonzero");
    return DirichletCharacter(top, modulus);
}

DirichletCharacter DirichletCharacter::parse(const std::string& text)
{
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw std::invalid_argument("malformed character spec '" + text + "'");
        return static_cast<std::int64_t>(v);
    };

    const std::string trivial_tag = "trivial:";
    const std::string kronecker_tag = "kronecker:";
    if (text.rfind(trivial_tag, 0) == 0) return trivial(to_int(text.substr(trivial_tag.size())));
    if (text.rfind(kronecker_tag, 0) == 0) {
        const std::string rest = text.substr(kronecker_tag.size());
        const auto slash = rest.find("/mod:");
        if (slash == std::string::npos)
            throw std::invalid_argument("malformed character spec '" + text + "'");
        return kronecker(to_int(rest.substr(0, slash)), to_int(rest.substr(slash + 5)));
    }
    throw std::invalid_argument("unsupported character spec '" + text +
                                "' (only real characters are supported)");
}

int DirichletCharacter::value(std::int64_t a) const
{
    if (gcd(a, modulus_) != 1) return 0;
    return hwf::kronecker(top_, a);
}

bool DirichletCharacter::is_primitive() const
{
    if (is_trivial()) return modulus_ == 1;
    const std::int64_t abs_top = top_ < 0 ? -top_ : top_;
    return is_fundamental_discriminant(top_) && modulus_ == abs_top;
}

std::int64_t DirichletCharacter::period() const
{
    const std::int64_t abs_top = top_ < 0 ? -top_ : top_;
    const int r = static_cast<int>(((top_ % 4) + 4) % 4);
    const std::int64_t kron_period = (r == 0 || r == 1) ? abs_top : 4 * abs_top;
    return lcm(kron_period, modulus_);
}

std::string DirichletCharacter::to_string() const
{
    if (is_trivial()) return "trivial:" + std::to_string(modulus_);
    return "kronecker:" + std::to_string(top_) + "/mod:" + std::to_string(modulus_);
}

// -- characters used by the lift ---------------------------------------------

int chi_t_N(int k, std::int64_t N, std::int64_t t, std::int64_t d)
{
    if (t < 1 || !is_squarefree(t)) throw std::invalid_argument("chi_t_N: t must be square-free and positive");
    if (N < 1 || N % 4 != 0) throw std::invalid_argument("chi_t_N: level must be divisible by 4");
    const __int128 top = static_cast<__int128>(N) * N * t * (k % 2 == 0 ? 1 : -1);
    if (top > std::numeric_limits<std::int64_t>::max() || top < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("chi_t_N: N^2 t out of range");
    return kronecker(static_cast<std::int64_t>(top), d);
}

int chi_star(const DirichletCharacter& chi, int k, std::int64_t a)
{
    const int base = kronecker(-4, a);
    const int twist = (k % 2 == 0) ? base * base : base;
    return twist * chi(a);
}

}  // namespace hwf
