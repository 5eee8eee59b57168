#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hwf/forms.hpp"

namespace hwf {

struct SignChanges {
    std::size_t count = 0;
    /// Label of the second entry of each opposite-sign adjacent pair.
    std::vector<std::int64_t> positions;
};

/// Zeros are deleted, then each adjacent pair of opposite signs counts once.
/// Positions are 1-based unless labels are supplied.
SignChanges sign_changes(std::span<const mpz_class> seq);
SignChanges sign_changes(std::span<const mpz_class> seq, std::span<const std::int64_t> labels);

std::optional<std::int64_t> first_negative(const Coefficients& a);

/// [a(t n^2)] for n = 1..X. Requires t X^2 <= prec.
std::vector<mpz_class> subseq_t_n2(const HalfIntegralForm& f, std::int64_t t, std::int64_t X);

struct SignStatsReport {
    std::string label;
    std::int64_t X = 0;
    std::int64_t n_pos = 0;
    std::int64_t n_neg = 0;
    std::int64_t n_zero_skipped = 0;
    mpq_class ratio;          // n_pos / (n_pos + n_neg)
    std::string ratio_text;   // six decimals
    std::size_t sign_change_count = 0;
    std::vector<std::int64_t> change_positions;
};

/// Decimal rendering with `digits` places, rounding half away from zero.
std::string render_ratio(const mpq_class& r, int digits);

/// Builds a report from (index, value) entries in any order; entries are
/// taken in ascending index. Throws std::domain_error if no entry is nonzero.
SignStatsReport stats_from_entries(std::string label, std::int64_t X,
                                   std::vector<std::pair<std::int64_t, mpz_class>> entries);

/// #{n <= X : a(n) > 0} / #{n <= X : a(n) != 0}.
SignStatsReport r_plus_tot(const Coefficients& a, std::int64_t X);
SignStatsReport r_plus_tot(const HalfIntegralForm& f, std::int64_t X);

/// Same ratio restricted to n with (-1)^k n a fundamental discriminant (1 included).
SignStatsReport r_plus_fund(const Coefficients& a, int k, std::int64_t X);
SignStatsReport r_plus_fund(const HalfIntegralForm& f, std::int64_t X);

/// t in T with (t / p_j) = eps_j for every j.
std::vector<std::int64_t> dprime_filter(std::span<const std::int64_t> T, std::span<const std::int64_t> primes,
                                        std::span<const int> eps);

struct SurveyEntry {
    std::int64_t t = 0;
    std::optional<std::int64_t> n_t;  // smallest n with a(t n^2) != 0
    mpz_class value;
};

struct SquarefreeSurvey {
    std::vector<SurveyEntry> entries;
    SignStatsReport stats;
};

/// For each square-free t <= X (optionally restricted by (t/p_j) = eps_j)
/// reads the first nonzero a(t n^2) with t n^2 <= prec.
SquarefreeSurvey squarefree_sign_survey(const HalfIntegralForm& f, std::int64_t X,
                                        std::span<const std::int64_t> primes = {}, std::span<const int> eps = {});

struct ClassSignWitnesses {
    std::int64_t p = 0;
    int eps = 0;
    std::optional<std::int64_t> negative;  // smallest n, (n/p) = eps, a(n) < 0
    std::optional<std::int64_t> positive;  // smallest n, (n/p) = eps, a(n) > 0
};

ClassSignWitnesses class_sign_witnesses(const Coefficients& a, std::int64_t p, int eps, std::int64_t limit);

}  // namespace hwf
