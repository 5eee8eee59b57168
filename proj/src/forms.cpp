#include "hwf/forms.hpp"

#include <stdexcept>

namespace hwf {

Coefficients::Coefficients(std::vector<mpz_class> values) : values_(std::move(values))
{
    if (values_.empty()) throw std::invalid_argument("coefficient table needs at least a(0)");
}

const mpz_class& Coefficients::at(std::int64_t n) const
{
    if (n < 0 || n > prec())
        throw std::out_of_range("coefficient a(" + std::to_string(n) + ") beyond precision " + std::to_string(prec()));
    return values_[static_cast<std::size_t>(n)];
}

Coefficients finalize_coefficients(const QSeries& s, std::int64_t prec)
{
    if (!s.offset().is_integral()) throw std::domain_error("cannot finalize series with fractional offset " + s.offset().to_string());
    const std::int64_t o = s.offset().in_24ths() / 24;
    if (o < 0) throw std::domain_error("cannot finalize series with negative offset");
    if (!s.is_integral()) throw std::domain_error("cannot finalize series with non-integral coefficients");
    const std::int64_t bound = o + static_cast<std::int64_t>(s.prec());
    if (bound <= prec)
        throw std::domain_error("series known only below q^" + std::to_string(bound) + ", need through q^" +
                                std::to_string(prec));
    std::vector<mpz_class> out(static_cast<std::size_t>(prec) + 1);
    s.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
        const std::int64_t n = o + static_cast<std::int64_t>(i);
        if (n <= prec) out[static_cast<std::size_t>(n)] = v;
    });
    return Coefficients(std::move(out));
}

std::vector<std::int64_t> plus_space_violations(const Coefficients& a, int k)
{
    std::vector<std::int64_t> bad;
    for (std::int64_t n = 1; n <= a.prec(); ++n) {
        const std::int64_t r = (((k % 2 == 0) ? n : -n) % 4 + 4) % 4;
        if ((r == 2 || r == 3) && sgn(a[n]) != 0) bad.push_back(n);
    }
    return bad;
}

std::vector<std::int64_t> plus_space_check(const HalfIntegralForm& f) { return plus_space_violations(f.coeffs, f.k()); }

HalfIntegralForm make_half_integral(std::string id, int weight_num, std::int64_t level, DirichletCharacter chi,
                                    bool plus_space, Coefficients coeffs)
{
    if (weight_num < 1 || weight_num % 2 == 0) throw std::domain_error("half-integral weight numerator must be odd and positive");
    if (level < 4 || level % 4 != 0) throw std::domain_error("half-integral level must be divisible by 4");
    HalfIntegralForm f{std::move(id), weight_num, level, std::move(chi), plus_space, std::move(coeffs)};
    if (plus_space) {
        const auto bad = plus_space_check(f);
        if (!bad.empty()) throw std::domain_error("plus-space condition fails at n = " + std::to_string(bad.front()));
    }
    return f;
}

HalfIntegralForm delta_form(std::int64_t prec)
{
    if (prec < 1) throw std::invalid_argument("delta_form: precision must be positive");
    const std::int64_t bound = prec + 1;
    const QSeries e4 = eisenstein_e4((bound + 3) / 4);
    const QSeries th = theta(1, bound);
    const QSeries lhs = scale(mul(dilate(4, e4), derive(th)), 2);
    const QSeries rhs = mul(dilate(4, derive(e4)), th);
    const QSeries delta = scale(sub(lhs, rhs), mpq_class(1, 4));
    return make_half_integral("delta", 13, 4, DirichletCharacter::trivial(4), true,
                              finalize_coefficients(delta, prec));
}

HalfIntegralForm g_form(std::int64_t prec)
{
    if (prec < 1) throw std::invalid_argument("g_form: precision must be positive");
    const std::int64_t work = 4 * (prec + 1);
    const QSeries product = mul(mul(theta(11, work), eta(2, work)), eta(22, work));
    // Only odd n contribute to theta(11z) at exponents 0 mod 4, and they come
    // in pairs +-n. Halving gives a(3) = 1.
    return make_half_integral("g", 3, 44, DirichletCharacter::trivial(44), true,
                              finalize_coefficients(scale(u_op(4, product), mpq_class(1, 2)), prec));
}

IntegralForm ramanujan_delta(std::int64_t prec)
{
    if (prec < 1) throw std::invalid_argument("ramanujan_delta: precision must be positive");
    const QSeries d = pow(eta(1, prec + 1), 24);
    return IntegralForm{"Delta", 12, 1, DirichletCharacter::trivial(1), finalize_coefficients(d, prec)};
}

IntegralForm x0_11_form(std::int64_t prec)
{
    if (prec < 1) throw std::invalid_argument("x0_11_form: precision must be positive");
    const QSeries g = mul(pow(eta(1, prec + 1), 2), pow(eta(11, prec + 1), 2));
    return IntegralForm{"G11", 2, 11, DirichletCharacter::trivial(11), finalize_coefficients(g, prec)};
}

IntegralForm e4_form(std::int64_t prec)
{
    if (prec < 0) throw std::invalid_argument("e4_form: precision must be non-negative");
    return IntegralForm{"E4", 4, 1, DirichletCharacter::trivial(1), finalize_coefficients(eisenstein_e4(prec + 1), prec)};
}

}  // namespace hwf
