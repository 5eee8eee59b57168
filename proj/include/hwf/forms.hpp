#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hwf/arith.hpp"
#include "hwf/qseries.hpp"

namespace hwf {

/// Integer coefficients a(0), ..., a(prec). Reads past prec throw.
class Coefficients {
public:
    Coefficients() = default;
    explicit Coefficients(std::vector<mpz_class> values);

    std::int64_t prec() const { return static_cast<std::int64_t>(values_.size()) - 1; }
    const mpz_class& operator[](std::int64_t n) const { return at(n); }
    const mpz_class& at(std::int64_t n) const;
    std::span<const mpz_class> values() const { return values_; }

    friend bool operator==(const Coefficients&, const Coefficients&) = default;

private:
    std::vector<mpz_class> values_{mpz_class(0)};
};

/// Weight (2k+1)/2 form on Gamma_0(N), 4 | N.
struct HalfIntegralForm {
    std::string id;
    int weight_num = 1;
    std::int64_t level = 4;
    DirichletCharacter character = DirichletCharacter::trivial(4);
    bool plus_space = false;
    Coefficients coeffs;

    int k() const { return (weight_num - 1) / 2; }
    std::int64_t prec() const { return coeffs.prec(); }
    const mpz_class& a(std::int64_t n) const { return coeffs.at(n); }
};

struct IntegralForm {
    std::string id;
    int weight = 2;
    std::int64_t level = 1;
    DirichletCharacter character = DirichletCharacter::trivial(1);
    Coefficients coeffs;

    std::int64_t prec() const { return coeffs.prec(); }
    const mpz_class& a(std::int64_t n) const { return coeffs.at(n); }
};

/// Reads a(0..prec) off a series with integral, non-negative offset and
/// integral coefficients. Throws std::domain_error otherwise.
Coefficients finalize_coefficients(const QSeries& s, std::int64_t prec);

/// Checks level, weight parity and (when flagged) the plus-space support
/// condition. Throws std::domain_error on violation.
HalfIntegralForm make_half_integral(std::string id, int weight_num, std::int64_t level, DirichletCharacter chi,
                                    bool plus_space, Coefficients coeffs);

/// Indices 1 <= n <= prec with (-1)^k n = 2, 3 mod 4 and a(n) != 0.
std::vector<std::int64_t> plus_space_check(const HalfIntegralForm& f);
std::vector<std::int64_t> plus_space_violations(const Coefficients& a, int k);

/// (1/4) (2 E4(4z) D theta - (D E4)(4z) theta), weight 13/2 level 4.
HalfIntegralForm delta_form(std::int64_t prec);
/// (1/2) (theta(11z) eta(2z) eta(22z)) | U_4, weight 3/2 level 44, normalized
/// so that a(3) = 1.
HalfIntegralForm g_form(std::int64_t prec);
/// q prod (1 - q^n)^24, weight 12 level 1.
IntegralForm ramanujan_delta(std::int64_t prec);
/// eta(z)^2 eta(11z)^2, weight 2 level 11.
IntegralForm x0_11_form(std::int64_t prec);
/// E4, weight 4 level 1 (not cuspidal).
IntegralForm e4_form(std::int64_t prec);

}  // namespace hwf
