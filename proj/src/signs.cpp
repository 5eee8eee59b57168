#include "hwf/signs.hpp"

#include <algorithm>
#include <stdexcept>

namespace hwf {

SignChanges sign_changes(std::span<const mpz_class> seq)
{
    std::vector<std::int64_t> labels(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) labels[i] = static_cast<std::int64_t>(i) + 1;
    return sign_changes(seq, labels);
}

SignChanges sign_changes(std::span<const mpz_class> seq, std::span<const std::int64_t> labels)
{
    if (labels.size() != seq.size()) throw std::invalid_argument("sign_changes: label count mismatch");
    SignChanges out;
    int last = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const int s = sgn(seq[i]);
        if (s == 0) continue;
        if (last != 0 && s != last) {
            ++out.count;
            out.positions.push_back(labels[i]);
        }
        last = s;
    }
    return out;
}

std::optional<std::int64_t> first_negative(const Coefficients& a)
{
    for (std::int64_t n = 1; n <= a.prec(); ++n)
        if (sgn(a[n]) < 0) return n;
    return std::nullopt;
}

std::vector<mpz_class> subseq_t_n2(const HalfIntegralForm& f, std::int64_t t, std::int64_t X)
{
    if (t < 1 || X < 0) throw std::invalid_argument("subseq_t_n2: t must be positive");
    if (X > 0 && t * X * X > f.prec())
        throw std::out_of_range("subseq_t_n2: t X^2 = " + std::to_string(t * X * X) + " exceeds precision " +
                                std::to_string(f.prec()));
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(X));
    for (std::int64_t n = 1; n <= X; ++n) out.push_back(f.a(t * n * n));
    return out;
}

std::string render_ratio(const mpq_class& r, int digits)
{
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const mpz_class num = abs(r.get_num()) * scale * 2 + r.get_den();
    const mpz_class den = r.get_den() * 2;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::string s = q.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    std::string out = sgn(r) < 0 && q != 0 ? "-" : "";
    out += s.substr(0, s.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
    return out;
}

SignStatsReport stats_from_entries(std::string label, std::int64_t X,
                                   std::vector<std::pair<std::int64_t, mpz_class>> entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SignStatsReport r;
    r.label = std::move(label);
    r.X = X;
    std::vector<mpz_class> values;
    std::vector<std::int64_t> labels;
    for (auto& [n, v] : entries) {
        const int s = sgn(v);
        if (s > 0) ++r.n_pos;
        if (s < 0) ++r.n_neg;
        if (s == 0) {
            ++r.n_zero_skipped;
            continue;
        }
        labels.push_back(n);
        values.push_back(std::move(v));
    }
    if (r.n_pos + r.n_neg == 0) throw std::domain_error(r.label + ": no nonzero coefficients up to X = " + std::to_string(X));
    r.ratio = mpq_class(r.n_pos, r.n_pos + r.n_neg);
    r.ratio.canonicalize();
    r.ratio_text = render_ratio(r.ratio, 6);
    const SignChanges sc = sign_changes(values, labels);
    r.sign_change_count = sc.count;
    r.change_positions = sc.positions;
    return r;
}

namespace {

void require_within(const Coefficients& a, std::int64_t X)
{
    if (X < 1) throw std::invalid_argument("X must be positive");
    if (X > a.prec()) throw std::out_of_range("X = " + std::to_string(X) + " exceeds precision " + std::to_string(a.prec()));
}

}  // namespace

SignStatsReport r_plus_tot(const Coefficients& a, std::int64_t X)
{
    require_within(a, X);
    std::vector<std::pair<std::int64_t, mpz_class>> entries;
    entries.reserve(static_cast<std::size_t>(X));
    for (std::int64_t n = 1; n <= X; ++n) entries.emplace_back(n, a[n]);
    return stats_from_entries("R_tot", X, std::move(entries));
}

SignStatsReport r_plus_tot(const HalfIntegralForm& f, std::int64_t X) { return r_plus_tot(f.coeffs, X); }

SignStatsReport r_plus_fund(const Coefficients& a, int k, std::int64_t X)
{
    require_within(a, X);
    const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
    std::vector<std::pair<std::int64_t, mpz_class>> entries;
    for (std::int64_t n = 1; n <= X; ++n)
        if (is_fundamental_discriminant(sign * n)) entries.emplace_back(n, a[n]);
    return stats_from_entries("R_fund", X, std::move(entries));
}

SignStatsReport r_plus_fund(const HalfIntegralForm& f, std::int64_t X) { return r_plus_fund(f.coeffs, f.k(), X); }

std::vector<std::int64_t> dprime_filter(std::span<const std::int64_t> T, std::span<const std::int64_t> primes,
                                        std::span<const int> eps)
{
    if (primes.size() != eps.size()) throw std::invalid_argument("dprime_filter: one sign per prime required");
    std::vector<std::int64_t> out;
    for (const std::int64_t t : T) {
        bool keep = true;
        for (std::size_t j = 0; j < primes.size() && keep; ++j) keep = kronecker(t, primes[j]) == eps[j];
        if (keep) out.push_back(t);
    }
    return out;
}

SquarefreeSurvey squarefree_sign_survey(const HalfIntegralForm& f, std::int64_t X, std::span<const std::int64_t> primes,
                                        std::span<const int> eps)
{
    require_within(f.coeffs, X);
    for (const std::int64_t p : primes)
        if (f.level % p == 0) throw std::invalid_argument("dprime prime " + std::to_string(p) + " divides level");
    std::vector<std::int64_t> candidates;
    for (std::int64_t t = 1; t <= X; ++t)
        if (is_squarefree(t)) candidates.push_back(t);
    const std::vector<std::int64_t> ts = dprime_filter(candidates, primes, eps);

    SquarefreeSurvey out;
    std::vector<std::pair<std::int64_t, mpz_class>> entries;
    for (const std::int64_t t : ts) {
        SurveyEntry e;
        e.t = t;
        for (std::int64_t n = 1; t * n * n <= f.prec(); ++n) {
            if (sgn(f.a(t * n * n)) != 0) {
                e.n_t = n;
                e.value = f.a(t * n * n);
                break;
            }
        }
        entries.emplace_back(t, e.value);
        out.entries.push_back(std::move(e));
    }
    out.stats = stats_from_entries("squarefree_survey", X, std::move(entries));
    return out;
}

ClassSignWitnesses class_sign_witnesses(const Coefficients& a, std::int64_t p, int eps, std::int64_t limit)
{
    ClassSignWitnesses w;
    w.p = p;
    w.eps = eps;
    const std::int64_t top = std::min(limit, a.prec());
    for (std::int64_t n = 1; n <= top && (!w.negative || !w.positive); ++n) {
        if (kronecker(n, p) != eps) continue;
        const int s = sgn(a[n]);
        if (s < 0 && !w.negative) w.negative = n;
        if (s > 0 && !w.positive) w.positive = n;
    }
    return w;
}

}  // namespace hwf
