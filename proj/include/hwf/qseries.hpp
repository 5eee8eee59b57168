#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hwf/arith.hpp"

namespace hwf {

/// Rational power of q with denominator dividing 24, stored in units of 1/24.
class Offset {
public:
    constexpr Offset() = default;

    static constexpr Offset integer(std::int64_t n) { return Offset(24 * n); }
    static constexpr Offset twenty_fourths(std::int64_t n) { return Offset(n); }
    /// Throws std::invalid_argument unless num/den reduces to a denominator dividing 24.
    static Offset fraction(std::int64_t num, std::int64_t den);

    constexpr std::int64_t in_24ths() const { return n24_; }
    constexpr bool is_integral() const { return n24_ % 24 == 0; }
    std::int64_t floor() const;
    std::int64_t ceil() const;
    mpq_class value() const { return mpq_class(n24_, 24); }
    std::string to_string() const;

    constexpr Offset operator+(Offset o) const { return Offset(n24_ + o.n24_); }
    constexpr Offset operator-(Offset o) const { return Offset(n24_ - o.n24_); }
    constexpr Offset operator*(std::int64_t m) const { return Offset(n24_ * m); }
    constexpr auto operator<=>(const Offset&) const = default;

private:
    constexpr explicit Offset(std::int64_t n24) : n24_(n24) {}
    std::int64_t n24_ = 0;
};

enum class Density { dense, sparse };

/// Truncated power series sum_{i < prec} c_i q^(offset + i) with exact rational
/// coefficients, stored as integer numerators over one positive common
/// denominator (kept in lowest terms).
///
/// Reading c_i for i >= prec is an error: the series carries no information
/// there. Values are immutable once built; every operation returns a new series.
class QSeries {
public:
    struct Term {
        std::size_t index;
        mpz_class numerator;
    };

    /// A series is stored sparse when its nonzero count is at most prec / 16.
    static constexpr std::size_t kSparseRatio = 16;

    QSeries() = default;

    static QSeries zero(Offset offset, std::size_t prec);
    static QSeries from_integers(Offset offset, std::vector<mpz_class> coeffs);
    static QSeries from_rationals(Offset offset, const std::vector<mpq_class>& coeffs);
    /// Terms as (index, value); indices must lie in [0, prec). Repeated
    /// indices accumulate.
    static QSeries from_terms(Offset offset, std::size_t prec,
                              const std::vector<std::pair<std::size_t, mpq_class>>& terms);

    Offset offset() const { return offset_; }
    std::size_t prec() const { return prec_; }
    /// First exponent with no information, i.e. offset + prec.
    Offset precision_bound() const { return offset_ + Offset::integer(static_cast<std::int64_t>(prec_)); }
    Density density() const { return sparse_ ? Density::sparse : Density::dense; }
    const mpz_class& denominator() const { return den_; }
    bool is_integral() const { return den_ == 1; }

    /// Coefficient of q^(offset + i). Throws std::out_of_range for i >= prec.
    mpq_class coeff(std::size_t i) const;
    /// Coefficient of q^e for an integral exponent e; zero below the offset.
    /// Requires an integral offset.
    mpq_class at_exponent(std::int64_t e) const;
    /// All coefficients as integers; throws std::domain_error if any is not.
    std::vector<mpz_class> integer_coefficients() const;
    std::size_t nonzero_count() const;

    /// Visits nonzero numerators in ascending index order.
    template <class Fn>
    void for_each_nonzero(Fn&& fn) const
    {
        if (sparse_) {
            for (const auto& t : terms_) fn(t.index, t.numerator);
        } else {
            for (std::size_t i = 0; i < dense_.size(); ++i)
                if (sgn(dense_[i]) != 0) fn(i, dense_[i]);
        }
    }

    std::string to_string(std::size_t max_terms = 12) const;

    /// Equal offset, precision and coefficients; representation is ignored.
    friend bool operator==(const QSeries& a, const QSeries& b);

private:
    friend class SeriesBuilder;

    Offset offset_;
    std::size_t prec_ = 0;
    mpz_class den_ = 1;
    bool sparse_ = false;
    std::vector<mpz_class> dense_;
    std::vector<Term> terms_;

    void settle();
};

std::ostream& operator<<(std::ostream& os, const QSeries& s);

/// Worker threads used by multiplication kernels. Results never depend on it.
void set_thread_count(unsigned n);
unsigned thread_count();

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries negate(const QSeries& a);
QSeries scale(const QSeries& a, const mpq_class& c);

/// Truncated Cauchy product. Uses the O(prec * s) kernel when either operand
/// is sparse, schoolbook convolution otherwise.
QSeries mul(const QSeries& a, const QSeries& b);
/// Dense schoolbook product regardless of density (reference kernel).
QSeries mul_schoolbook(const QSeries& a, const QSeries& b);
/// a^e for e >= 1; identical to e - 1 successive products.
QSeries pow(const QSeries& a, unsigned e);

/// Keeps only exponents strictly below `bound`.
QSeries truncate_below(const QSeries& a, std::int64_t bound);

/// prod_{n>=1} (1 - q^n) via the pentagonal number theorem, exponents < prec.
QSeries euler(std::size_t prec);
/// eta(m z) = q^(m/24) prod (1 - q^(m n)), exponents < prec.
QSeries eta(std::int64_t m, std::int64_t prec);
/// theta(m z) = sum_{n in Z} q^(m n^2), exponents < prec.
QSeries theta(std::int64_t m, std::int64_t prec);
/// sum_{n in Z} psi(n) n q^(m n^2) for odd primitive real psi.
QSeries theta_psi(const DirichletCharacter& psi, std::int64_t m, std::int64_t prec);
/// E_4 = 1 + 240 sum sigma_3(n) q^n, exponents < prec.
QSeries eisenstein_e4(std::int64_t prec);

/// D = q d/dq.
QSeries derive(const QSeries& a);
/// q -> q^m. The result prec is m * prec(a), optionally capped.
QSeries dilate(std::int64_t m, const QSeries& a, std::optional<std::size_t> cap = std::nullopt);
/// Coefficient of q^n in the result is that of q^(m n) in a. Integral offsets only.
QSeries u_op(std::int64_t m, const QSeries& a);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

}  // namespace hwf
