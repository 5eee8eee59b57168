#include "hwf/hecke.hpp"

#include <stdexcept>

namespace hwf {

namespace {

mpz_class power(std::int64_t p, int e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

void require_good_prime(std::int64_t p, std::int64_t level)
{
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (level % p == 0) throw std::invalid_argument("p divides level (p = " + std::to_string(p) + ", N = " + std::to_string(level) + ")");
}

void require_squarefree_index(std::int64_t t, std::int64_t prec)
{
    if (t < 1 || !is_squarefree(t)) throw std::invalid_argument("t = " + std::to_string(t) + " is not square-free");
    if (t > prec) throw std::out_of_range("t = " + std::to_string(t) + " exceeds precision " + std::to_string(prec));
}

}  // namespace

LiftResult shimura_lift(const HalfIntegralForm& f, std::int64_t t)
{
    require_squarefree_index(t, f.prec());
    const int k = f.k();
    std::int64_t prec_a = 0;
    while ((prec_a + 1) * (prec_a + 1) * t <= f.prec()) ++prec_a;

    std::vector<mpz_class> A(static_cast<std::size_t>(prec_a) + 1);
    for (std::int64_t n = 1; n <= prec_a; ++n) {
        mpz_class sum = 0;
        for (const std::int64_t d : divisors(n)) {
            const int chi = chi_t_N(k, f.level, t, d);
            if (chi == 0) continue;
            const std::int64_t m = n / d;
            mpz_class term = power(d, k - 1) * f.a(m * m * t);
            if (chi < 0) term = -term;
            sum += term;
        }
        A[static_cast<std::size_t>(n)] = sum;
    }

    LiftResult r;
    r.t = t;
    r.form = IntegralForm{f.id + ".lift.t" + std::to_string(t), 2 * k, f.level / 2,
                          DirichletCharacter::trivial(f.level / 2), Coefficients(std::move(A))};
    r.source_k = k;
    r.source_level = f.level;
    r.source_character = f.character;
    return r;
}

Coefficients t_square_half(std::int64_t p, const HalfIntegralForm& f)
{
    require_good_prime(p, f.level);
    const int k = f.k();
    const std::int64_t p2 = p * p;
    const std::int64_t prec = f.prec() / p2;
    const int chi_p = f.character(p);
    const mpz_class middle = chi_star(f.character, k, p) * power(p, k - 1);
    const mpz_class last = chi_p * chi_p * power(p, 2 * k - 1);

    std::vector<mpz_class> b(static_cast<std::size_t>(prec) + 1);
    for (std::int64_t n = 0; n <= prec; ++n) {
        mpz_class v = f.a(p2 * n);
        const int leg = kronecker(n, p);
        if (leg != 0) v += leg * middle * f.a(n);
        if (n % p2 == 0) v += last * f.a(n / p2);
        b[static_cast<std::size_t>(n)] = std::move(v);
    }
    return Coefficients(std::move(b));
}

Coefficients t_integral(std::int64_t p, const IntegralForm& F)
{
    require_good_prime(p, F.level);
    const std::int64_t prec = F.prec() / p;
    const int chi_p = F.character(p);
    const mpz_class last = chi_p * chi_p * power(p, F.weight - 1);
    std::vector<mpz_class> b(static_cast<std::size_t>(prec) + 1);
    for (std::int64_t n = 0; n <= prec; ++n) {
        mpz_class v = F.a(p * n);
        if (n % p == 0) v += last * F.a(n / p);
        b[static_cast<std::size_t>(n)] = std::move(v);
    }
    return Coefficients(std::move(b));
}

Coefficients u_coefficients(std::int64_t m, const Coefficients& a)
{
    if (m < 1) throw std::invalid_argument("U operator: index must be positive");
    const std::int64_t prec = a.prec() / m;
    std::vector<mpz_class> b(static_cast<std::size_t>(prec) + 1);
    for (std::int64_t n = 0; n <= prec; ++n) b[static_cast<std::size_t>(n)] = a[m * n];
    return Coefficients(std::move(b));
}

SatakeData satake(const mpz_class& lambda, std::int64_t p, int k)
{
    SatakeData s;
    s.trace = lambda;
    s.norm = power(p, 2 * k - 1);
    const mpz_class disc = lambda * lambda - 4 * s.norm;
    s.discriminant_sign = sgn(disc);
    return s;
}

bool deligne_check(const mpz_class& lambda, std::int64_t p, int k)
{
    return lambda * lambda <= 4 * power(p, 2 * k - 1);
}

bool elementary_bound_check(const mpz_class& lambda, std::int64_t p, int k)
{
    return abs(lambda) < power(p, k) + power(p, k - 1);
}

EigenReport extract_eigenvalue(const Coefficients& before, const Coefficients& after)
{
    const std::int64_t shared = std::min(before.prec(), after.prec());
    EigenReport r;
    r.checked_up_to = shared;

    std::int64_t n0 = 0;
    for (std::int64_t n = 1; n <= shared; ++n) {
        if (sgn(before[n]) != 0) {
            n0 = n;
            break;
        }
    }
    if (n0 == 0) throw std::invalid_argument("extract_eigenvalue: sequence vanishes on the shared range");

    if (!mpz_divisible_p(after[n0].get_mpz_t(), before[n0].get_mpz_t())) {
        r.first_violation = n0;
        r.diagnostic = "ratio at n = " + std::to_string(n0) + " is not an integer (" + after[n0].get_str() + " / " +
                       before[n0].get_str() + ")";
        return r;
    }
    const mpz_class lambda = after[n0] / before[n0];
    r.lambda = lambda;
    for (std::int64_t n = 1; n <= shared; ++n) {
        if (after[n] != lambda * before[n]) {
            r.first_violation = n;
            r.diagnostic = "coefficient mismatch at n = " + std::to_string(n);
            return r;
        }
    }
    r.is_eigen = true;
    return r;
}

EigenReport half_integral_eigen(const HalfIntegralForm& f, std::int64_t p)
{
    EigenReport r = extract_eigenvalue(f.coeffs, t_square_half(p, f));
    r.p = p;
    if (r.lambda) r.satake = satake(*r.lambda, p, f.k());
    return r;
}

EigenReport integral_eigen(const IntegralForm& F, std::int64_t p)
{
    EigenReport r = extract_eigenvalue(F.coeffs, t_integral(p, F));
    r.p = p;
    if (r.lambda) r.satake = satake(*r.lambda, p, F.weight / 2);
    return r;
}

std::vector<mpz_class> local_power_sequence(const HalfIntegralForm& f, std::int64_t t, std::int64_t p)
{
    if (t < 1 || !is_squarefree(t)) throw std::invalid_argument("t = " + std::to_string(t) + " is not square-free");
    if (t > f.prec()) throw std::out_of_range("t = " + std::to_string(t) + " exceeds precision");
    if (f.level % p == 0) throw std::invalid_argument("p divides level");
    std::vector<mpz_class> out;
    for (std::int64_t n = t;; n *= p * p) {
        out.push_back(f.a(n));
        if (n > f.prec() / (p * p)) break;
    }
    return out;
}

std::vector<mpz_class> recurrence_sequence(const HalfIntegralForm& f, std::int64_t t, std::int64_t p,
                                           const mpz_class& lambda, std::size_t count)
{
    const int k = f.k();
    const mpz_class norm = power(p, 2 * k - 1);
    const mpz_class twist = chi_t_N(k, f.level, t, p) * power(p, k - 1);
    std::vector<mpz_class> seq;
    if (count == 0) return seq;
    seq.push_back(f.a(t));
    if (count > 1) seq.push_back(f.a(t) * (lambda - twist));
    while (seq.size() < count) {
        const std::size_t m = seq.size();
        seq.push_back(lambda * seq[m - 1] - norm * seq[m - 2]);
    }
    return seq;
}

RecurrenceReport recurrence_check(const HalfIntegralForm& f, std::int64_t t, std::int64_t p)
{
    RecurrenceReport r;
    r.t = t;
    r.p = p;
    const EigenReport eig = half_integral_eigen(f, p);
    if (!eig.is_eigen) {
        r.diagnostic = "not a T(" + std::to_string(p) + "^2) eigenform: " + eig.diagnostic;
        return r;
    }
    r.lambda = eig.lambda;
    r.observed = local_power_sequence(f, t, p);
    r.predicted = recurrence_sequence(f, t, p, *eig.lambda, r.observed.size());
    r.max_m = static_cast<std::int64_t>(r.observed.size()) - 1;
    r.max_index = t;
    for (std::int64_t m = 0; m < r.max_m; ++m) r.max_index *= p * p;
    for (std::size_t m = 0; m < r.observed.size(); ++m) {
        if (r.observed[m] != r.predicted[m]) {
            r.first_violation_m = static_cast<std::int64_t>(m);
            r.diagnostic = "a(t p^(2m)) disagrees with the recurrence at m = " + std::to_string(m);
            return r;
        }
    }
    r.passed = true;
    return r;
}

HalfIntegralForm twisted_component(const HalfIntegralForm& f, std::int64_t p, int eps)
{
    if (eps != 1 && eps != -1) throw std::invalid_argument("twisted_component: eps must be +1 or -1");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (f.level % p == 0) throw std::invalid_argument("p divides level");
    std::vector<mpz_class> out(static_cast<std::size_t>(f.prec()) + 1);
    for (std::int64_t n = 1; n <= f.prec(); ++n)
        if (kronecker(n, p) == eps) out[static_cast<std::size_t>(n)] = f.a(n);
    HalfIntegralForm g = f;
    g.id = f.id + ".twist.p" + std::to_string(p) + (eps > 0 ? "+" : "-");
    g.level = f.level * p * p;
    g.coeffs = Coefficients(std::move(out));
    return g;
}

}  // namespace hwf
