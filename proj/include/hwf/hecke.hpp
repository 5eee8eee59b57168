#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hwf/forms.hpp"

namespace hwf {

/// Shimura lift of f at the square-free index t.
struct LiftResult {
    std::int64_t t = 1;
    IntegralForm form;  // A(n), 1 <= n <= floor(sqrt(prec_f / t))
    int source_k = 0;
    std::int64_t source_level = 0;
    DirichletCharacter source_character = DirichletCharacter::trivial(1);

    std::int64_t prec() const { return form.prec(); }
};

/// A(n) = sum_{d | n} chi_{t,N}(d) d^(k-1) a(n^2 t / d^2).
LiftResult shimura_lift(const HalfIntegralForm& f, std::int64_t t);

/// T(p^2) on weight k + 1/2:
///   b(n) = a(p^2 n) + chi*(p) (n/p) p^(k-1) a(n) + chi(p)^2 p^(2k-1) a(n/p^2).
/// Throws std::invalid_argument if p is not prime or divides the level.
Coefficients t_square_half(std::int64_t p, const HalfIntegralForm& f);

/// T(p) on weight 2k: B(n) = A(pn) + chi^2(p) p^(2k-1) A(n/p).
Coefficients t_integral(std::int64_t p, const IntegralForm& F);

/// n -> a(m n).
Coefficients u_coefficients(std::int64_t m, const Coefficients& a);

/// Roots of X^2 - lambda X + p^(2k-1), as trace, norm and the sign of the
/// discriminant lambda^2 - 4 p^(2k-1). A negative sign means a complex pair of
/// absolute value p^(k - 1/2).
struct SatakeData {
    mpz_class trace;
    mpz_class norm;
    int discriminant_sign = 0;
};

SatakeData satake(const mpz_class& lambda, std::int64_t p, int k);
/// lambda^2 <= 4 p^(2k-1).
bool deligne_check(const mpz_class& lambda, std::int64_t p, int k);
/// |lambda| < p^k + p^(k-1).
bool elementary_bound_check(const mpz_class& lambda, std::int64_t p, int k);

struct EigenReport {
    std::int64_t p = 0;
    std::optional<mpz_class> lambda;
    bool is_eigen = false;
    std::int64_t checked_up_to = 0;
    std::optional<std::int64_t> first_violation;
    std::optional<SatakeData> satake;
    std::string diagnostic;
};

/// Compares after(n) against lambda * before(n) for 1 <= n <= min precision.
/// Throws std::invalid_argument if `before` vanishes on the shared range.
EigenReport extract_eigenvalue(const Coefficients& before, const Coefficients& after);

/// T(p^2) eigen test with Satake data filled in.
EigenReport half_integral_eigen(const HalfIntegralForm& f, std::int64_t p);
/// T(p) eigen test; Satake data uses k = weight / 2.
EigenReport integral_eigen(const IntegralForm& F, std::int64_t p);

/// [a(t p^(2m))] for m = 0 .. M with t p^(2M) <= prec.
std::vector<mpz_class> local_power_sequence(const HalfIntegralForm& f, std::int64_t t, std::int64_t p);

/// a(t p^(2m)) for m = 0..count-1 generated from a(t) by
///   a(t p^2) = a(t) (lambda - chi_{t,N}(p) p^(k-1)),
///   a(t p^(2m)) = lambda a(t p^(2m-2)) - p^(2k-1) a(t p^(2m-4)).
std::vector<mpz_class> recurrence_sequence(const HalfIntegralForm& f, std::int64_t t, std::int64_t p,
                                           const mpz_class& lambda, std::size_t count);

struct RecurrenceReport {
    std::int64_t t = 0;
    std::int64_t p = 0;
    std::optional<mpz_class> lambda;
    bool passed = false;
    std::int64_t max_m = -1;            // largest m compared
    std::int64_t max_index = 0;         // t p^(2 max_m)
    std::optional<std::int64_t> first_violation_m;
    std::vector<mpz_class> observed;    // direct coefficients
    std::vector<mpz_class> predicted;   // recurrence values
    std::string diagnostic;
};

/// Extracts lambda_p from T(p^2) and checks the local recurrence within precision.
RecurrenceReport recurrence_check(const HalfIntegralForm& f, std::int64_t t, std::int64_t p);

/// Keeps a(n) where (n/p) = eps; level becomes N p^2.
HalfIntegralForm twisted_component(const HalfIntegralForm& f, std::int64_t p, int eps);

}  // namespace hwf
