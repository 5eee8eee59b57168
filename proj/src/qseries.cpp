#include "hwf/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hwf {

namespace {

std::atomic<unsigned> g_threads{1};

// Below this many output coefficients a product is never split across threads.
constexpr std::size_t kMinParallelOutput = 4096;

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Runs fn(lo, hi) over a partition of [0, n). Chunks write disjoint output
// ranges, so the result is independent of the partition.
void for_output_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn)
{
    const unsigned threads = g_threads.load();
    if (threads <= 1 || n < kMinParallelOutput) {
        fn(0, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(threads, n / (kMinParallelOutput / 4));
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = n * c / chunks;
        const std::size_t hi = n * (c + 1) / chunks;
        pool.emplace_back(fn, lo, hi);
    }
    for (auto& t : pool) t.join();
}

mpz_class lcm(const mpz_class& a, const mpz_class& b)
{
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class from_int128(__int128 v)
{
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

std::size_t count_from_bound(Offset offset, std::int64_t bound)
{
    const std::int64_t diff24 = 24 * bound - offset.in_24ths();
    return diff24 <= 0 ? 0 : static_cast<std::size_t>(ceil_div(diff24, 24));
}

}  // namespace

// -- Offset -------------------------------------------------------------------

Offset Offset::fraction(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::invalid_argument("offset denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = gcd(num, den);
    num /= g;
    den /= g;
    if (24 % den != 0)
        throw std::invalid_argument("offset denominator " + std::to_string(den) + " does not divide 24");
    return Offset(num * (24 / den));
}

std::int64_t Offset::floor() const { return floor_div(n24_, 24); }
std::int64_t Offset::ceil() const { return ceil_div(n24_, 24); }

std::string Offset::to_string() const
{
    if (is_integral()) return std::to_string(n24_ / 24);
    const std::int64_t g = gcd(n24_, 24);
    return std::to_string(n24_ / g) + "/" + std::to_string(24 / g);
}

// -- construction helpers -------------------------------------------------------

class SeriesBuilder {
public:
    static QSeries dense(Offset offset, std::vector<mpz_class> nums, mpz_class den = 1)
    {
        QSeries s;
        s.offset_ = offset;
        s.prec_ = nums.size();
        s.den_ = std::move(den);
        s.sparse_ = false;
        s.dense_ = std::move(nums);
        s.settle();
        return s;
    }

    // Terms must have strictly increasing indices below prec.
    static QSeries sparse(Offset offset, std::size_t prec, std::vector<QSeries::Term> terms, mpz_class den = 1)
    {
        QSeries s;
        s.offset_ = offset;
        s.prec_ = prec;
        s.den_ = std::move(den);
        s.sparse_ = true;
        s.terms_ = std::move(terms);
        s.settle();
        return s;
    }

    static const std::vector<mpz_class>& dense_data(const QSeries& s) { return s.dense_; }
    static const std::vector<QSeries::Term>& sparse_data(const QSeries& s) { return s.terms_; }

    static std::vector<mpz_class> dense_copy(const QSeries& s)
    {
        if (!s.sparse_) return s.dense_;
        std::vector<mpz_class> out(s.prec_);
        for (const auto& t : s.terms_) out[t.index] = t.numerator;
        return out;
    }
};

void QSeries::settle()
{
    if (sgn(den_) == 0) throw std::invalid_argument("zero denominator");
    if (sgn(den_) < 0) {
        den_ = -den_;
        for (auto& v : dense_) v = -v;
        for (auto& t : terms_) t.numerator = -t.numerator;
    }
    if (den_ != 1) {
        mpz_class g = den_;
        for_each_nonzero([&](std::size_t, const mpz_class& v) {
            if (g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        });
        if (nonzero_count() == 0) g = den_;
        if (g != 1) {
            for (auto& v : dense_)
                if (sgn(v) != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            for (auto& t : terms_) mpz_divexact(t.numerator.get_mpz_t(), t.numerator.get_mpz_t(), g.get_mpz_t());
            den_ /= g;
        }
    }

    const std::size_t nnz = nonzero_count();
    const bool want_sparse = nnz <= prec_ / kSparseRatio;
    if (want_sparse && !sparse_) {
        std::vector<Term> terms;
        terms.reserve(nnz);
        for (std::size_t i = 0; i < dense_.size(); ++i)
            if (sgn(dense_[i]) != 0) terms.push_back({i, std::move(dense_[i])});
        dense_.clear();
        dense_.shrink_to_fit();
        terms_ = std::move(terms);
        sparse_ = true;
    } else if (!want_sparse && sparse_) {
        std::vector<mpz_class> dense(prec_);
        for (auto& t : terms_) dense[t.index] = std::move(t.numerator);
        terms_.clear();
        dense_ = std::move(dense);
        sparse_ = false;
    } else if (sparse_) {
        std::erase_if(terms_, [](const Term& t) { return sgn(t.numerator) == 0; });
    }
}

QSeries QSeries::zero(Offset offset, std::size_t prec) { return SeriesBuilder::sparse(offset, prec, {}); }

QSeries QSeries::from_integers(Offset offset, std::vector<mpz_class> coeffs)
{
    return SeriesBuilder::dense(offset, std::move(coeffs));
}

QSeries QSeries::from_rationals(Offset offset, const std::vector<mpq_class>& coeffs)
{
    mpz_class den = 1;
    for (const auto& c : coeffs) den = lcm(den, c.get_den());
    std::vector<mpz_class> nums(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) nums[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    return SeriesBuilder::dense(offset, std::move(nums), den);
}

QSeries QSeries::from_terms(Offset offset, std::size_t prec,
                            const std::vector<std::pair<std::size_t, mpq_class>>& terms)
{
    mpz_class den = 1;
    for (const auto& [i, c] : terms) {
        if (i >= prec) throw std::out_of_range("term index beyond precision");
        den = lcm(den, c.get_den());
    }
    std::vector<std::pair<std::size_t, mpz_class>> scaled;
    scaled.reserve(terms.size());
    for (const auto& [i, c] : terms) scaled.emplace_back(i, c.get_num() * (den / c.get_den()));
    std::stable_sort(scaled.begin(), scaled.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Term> merged;
    for (auto& [i, v] : scaled) {
        if (!merged.empty() && merged.back().index == i)
            merged.back().numerator += v;
        else
            merged.push_back({i, std::move(v)});
    }
    return SeriesBuilder::sparse(offset, prec, std::move(merged), den);
}

mpq_class QSeries::coeff(std::size_t i) const
{
    if (i >= prec_)
        throw std::out_of_range("coefficient index " + std::to_string(i) + " beyond precision " +
                                std::to_string(prec_));
    mpz_class num = 0;
    if (sparse_) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                                   [](const Term& t, std::size_t idx) { return t.index < idx; });
        if (it != terms_.end() && it->index == i) num = it->numerator;
    } else {
        num = dense_[i];
    }
    mpq_class r(num, den_);
    r.canonicalize();
    return r;
}

mpq_class QSeries::at_exponent(std::int64_t e) const
{
    if (!offset_.is_integral()) throw std::domain_error("at_exponent requires an integral offset");
    const std::int64_t o = offset_.in_24ths() / 24;
    if (e < o) return 0;
    return coeff(static_cast<std::size_t>(e - o));
}

std::vector<mpz_class> QSeries::integer_coefficients() const
{
    if (den_ != 1) throw std::domain_error("series has non-integral coefficients (denominator " + den_.get_str() + ")");
    return SeriesBuilder::dense_copy(*this);
}

std::size_t QSeries::nonzero_count() const
{
    if (sparse_) {
        return static_cast<std::size_t>(
            std::count_if(terms_.begin(), terms_.end(), [](const Term& t) { return sgn(t.numerator) != 0; }));
    }
    return static_cast<std::size_t>(
        std::count_if(dense_.begin(), dense_.end(), [](const mpz_class& v) { return sgn(v) != 0; }));
}

std::string QSeries::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    bool truncated = false;
    for_each_nonzero([&](std::size_t i, const mpz_class& num) {
        if (shown == max_terms) {
            truncated = true;
            return;
        }
        mpq_class c(num, den_);
        c.canonicalize();
        const Offset e = offset_ + Offset::integer(static_cast<std::int64_t>(i));
        const bool neg = sgn(c) < 0;
        if (shown == 0)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        mpq_class mag = abs(c);
        const bool unit_exp = e == Offset::integer(0);
        if (mag != 1 || unit_exp) os << mag.get_str();
        if (!unit_exp) {
            if (mag != 1) os << "*";
            os << "q";
            if (e != Offset::integer(1)) {
                const std::string es = e.to_string();
                os << "^" << (e.is_integral() && e.in_24ths() > 0 ? es : "(" + es + ")");
            }
        }
        ++shown;
    });
    if (shown == 0) os << "0";
    if (truncated) os << " + ...";
    const std::string bound = precision_bound().to_string();
    os << " + O(q^" << (precision_bound().is_integral() ? bound : "(" + bound + ")") << ")";
    return os.str();
}

bool operator==(const QSeries& a, const QSeries& b)
{
    if (a.offset_ != b.offset_ || a.prec_ != b.prec_ || a.den_ != b.den_) return false;
    if (a.nonzero_count() != b.nonzero_count()) return false;
    std::vector<std::pair<std::size_t, const mpz_class*>> ta;
    a.for_each_nonzero([&](std::size_t i, const mpz_class& v) { ta.emplace_back(i, &v); });
    std::size_t k = 0;
    bool equal = true;
    b.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
        if (!equal) return;
        if (ta[k].first != i || *ta[k].second != v) equal = false;
        ++k;
    });
    return equal;
}

std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.to_string(); }

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }
unsigned thread_count() { return g_threads.load(); }

// -- ring operations ------------------------------------------------------------

namespace {

QSeries linear_combination(const QSeries& a, const QSeries& b, bool subtract)
{
    const std::int64_t delta24 = a.offset().in_24ths() - b.offset().in_24ths();
    if (delta24 % 24 != 0)
        throw std::invalid_argument("cannot add series whose offsets " + a.offset().to_string() + " and " +
                                    b.offset().to_string() + " differ by a non-integer");
    const Offset offset = std::min(a.offset(), b.offset());
    const Offset bound = std::min(a.precision_bound(), b.precision_bound());
    const std::int64_t span = (bound - offset).in_24ths() / 24;
    const std::size_t prec = span > 0 ? static_cast<std::size_t>(span) : 0;

    const mpz_class den = lcm(a.denominator(), b.denominator());
    const mpz_class fa = den / a.denominator();
    mpz_class fb = den / b.denominator();
    if (subtract) fb = -fb;

    std::vector<mpz_class> out(prec);
    auto accumulate = [&](const QSeries& s, const mpz_class& factor) {
        const auto shift = static_cast<std::size_t>((s.offset() - offset).in_24ths() / 24);
        s.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
            const std::size_t j = i + shift;
            if (j < prec) mpz_addmul(out[j].get_mpz_t(), v.get_mpz_t(), factor.get_mpz_t());
        });
    };
    accumulate(a, fa);
    accumulate(b, fb);
    return SeriesBuilder::dense(offset, std::move(out), den);
}

// out[k] += sum_j s_j d[k - j] for k in [lo, hi).
void dense_sparse_kernel(const std::vector<mpz_class>& dense, const std::vector<QSeries::Term>& sparse,
                         std::vector<mpz_class>& out, std::size_t lo, std::size_t hi)
{
    for (const auto& term : sparse) {
        if (term.index >= hi) break;
        const std::size_t start = std::max(lo, term.index);
        const mpz_srcptr s = term.numerator.get_mpz_t();
        for (std::size_t k = start; k < hi; ++k) {
            const mpz_class& d = dense[k - term.index];
            if (sgn(d) != 0) mpz_addmul(out[k].get_mpz_t(), d.get_mpz_t(), s);
        }
    }
}

void dense_dense_kernel(const std::vector<mpz_class>& a, const std::vector<std::size_t>& a_nonzero,
                        const std::vector<mpz_class>& b, std::vector<mpz_class>& out, std::size_t lo,
                        std::size_t hi)
{
    for (std::size_t k = lo; k < hi; ++k) {
        mpz_ptr acc = out[k].get_mpz_t();
        for (const std::size_t i : a_nonzero) {
            if (i > k) break;
            const mpz_class& bv = b[k - i];
            if (sgn(bv) != 0) mpz_addmul(acc, a[i].get_mpz_t(), bv.get_mpz_t());
        }
    }
}

std::vector<std::size_t> nonzero_indices(const std::vector<mpz_class>& v)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) idx.push_back(i);
    return idx;
}

QSeries schoolbook(const QSeries& a, const QSeries& b, std::size_t prec, Offset offset)
{
    std::vector<mpz_class> av = SeriesBuilder::dense_copy(a);
    std::vector<mpz_class> bv = SeriesBuilder::dense_copy(b);
    av.resize(prec);
    bv.resize(prec);
    const auto a_nonzero = nonzero_indices(av);
    std::vector<mpz_class> out(prec);
    for_output_chunks(prec, [&](std::size_t lo, std::size_t hi) { dense_dense_kernel(av, a_nonzero, bv, out, lo, hi); });
    return SeriesBuilder::dense(offset, std::move(out), a.denominator() * b.denominator());
}

}  // namespace

QSeries add(const QSeries& a, const QSeries& b) { return linear_combination(a, b, false); }
QSeries sub(const QSeries& a, const QSeries& b) { return linear_combination(a, b, true); }
QSeries negate(const QSeries& a) { return scale(a, -1); }

QSeries scale(const QSeries& a, const mpq_class& c)
{
    mpq_class cc = c;
    cc.canonicalize();
    std::vector<QSeries::Term> terms;
    a.for_each_nonzero([&](std::size_t i, const mpz_class& v) { terms.push_back({i, v * cc.get_num()}); });
    return SeriesBuilder::sparse(a.offset(), a.prec(), std::move(terms), a.denominator() * cc.get_den());
}

QSeries mul(const QSeries& a, const QSeries& b)
{
    const Offset offset = a.offset() + b.offset();
    const std::size_t prec = std::min(a.prec(), b.prec());
    const mpz_class den = a.denominator() * b.denominator();

    const bool a_sparse = a.density() == Density::sparse;
    const bool b_sparse = b.density() == Density::sparse;
    if (!a_sparse && !b_sparse) return schoolbook(a, b, prec, offset);

    std::vector<mpz_class> out(prec);
    if (a_sparse && b_sparse) {
        const auto& ta = SeriesBuilder::sparse_data(a);
        const auto& tb = SeriesBuilder::sparse_data(b);
        for (const auto& x : ta) {
            if (x.index >= prec) break;
            for (const auto& y : tb) {
                const std::size_t k = x.index + y.index;
                if (k >= prec) break;
                mpz_addmul(out[k].get_mpz_t(), x.numerator.get_mpz_t(), y.numerator.get_mpz_t());
            }
        }
    } else {
        const QSeries& d = a_sparse ? b : a;
        const QSeries& s = a_sparse ? a : b;
        std::vector<mpz_class> dense_view;
        const std::vector<mpz_class>* dv = &SeriesBuilder::dense_data(d);
        if (dv->size() < prec) {
            dense_view = *dv;
            dense_view.resize(prec);
            dv = &dense_view;
        }
        const auto& terms = SeriesBuilder::sparse_data(s);
        for_output_chunks(prec, [&](std::size_t lo, std::size_t hi) { dense_sparse_kernel(*dv, terms, out, lo, hi); });
    }
    return SeriesBuilder::dense(offset, std::move(out), den);
}

QSeries mul_schoolbook(const QSeries& a, const QSeries& b)
{
    return schoolbook(a, b, std::min(a.prec(), b.prec()), a.offset() + b.offset());
}

QSeries pow(const QSeries& a, unsigned e)
{
    if (e == 0) throw std::invalid_argument("pow: exponent must be positive");
    if (e == 1) return a;

    // For a sparse integral base with unit constant term the power is produced
    // by the recurrence n f_0 g_n = sum_{k=1}^{n} ((e+1)k - n) f_k g_{n-k},
    // which costs O(prec * nonzero(a)) and equals the iterated product.
    const bool unit_head = a.prec() > 0 && abs(a.coeff(0)) == 1;
    if (e >= 3 && a.density() == Density::sparse && a.is_integral() && unit_head) {
        const std::size_t prec = a.prec();
        const auto& terms = SeriesBuilder::sparse_data(a);
        const mpz_class& f0 = terms.front().numerator;
        std::vector<mpz_class> g(prec);
        mpz_pow_ui(g[0].get_mpz_t(), f0.get_mpz_t(), e);
        mpz_class acc;
        mpz_class weight;
        for (std::size_t n = 1; n < prec; ++n) {
            acc = 0;
            for (std::size_t t = 1; t < terms.size() && terms[t].index <= n; ++t) {
                const std::size_t k = terms[t].index;
                const mpz_class& gk = g[n - k];
                if (sgn(gk) == 0) continue;
                weight = static_cast<long>((static_cast<std::int64_t>(e) + 1) * static_cast<std::int64_t>(k) -
                                           static_cast<std::int64_t>(n));
                weight *= terms[t].numerator;
                mpz_addmul(acc.get_mpz_t(), weight.get_mpz_t(), gk.get_mpz_t());
            }
            if (sgn(acc) == 0) continue;
            mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
            if (f0 < 0) acc = -acc;
            g[n] = acc;
        }
        return SeriesBuilder::dense(a.offset() * static_cast<std::int64_t>(e), std::move(g));
    }

    QSeries r = a;
    for (unsigned i = 1; i < e; ++i) r = mul(r, a);
    return r;
}

QSeries truncate_below(const QSeries& a, std::int64_t bound)
{
    const std::size_t prec = std::min(a.prec(), count_from_bound(a.offset(), bound));
    std::vector<QSeries::Term> terms;
    a.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
        if (i < prec) terms.push_back({i, v});
    });
    return SeriesBuilder::sparse(a.offset(), prec, std::move(terms), a.denominator());
}

// -- generators ---------------------------------------------------------------

namespace {

// (exponent, sign) pairs of the pentagonal expansion with exponent < limit, ascending.
std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t limit)
{
    std::vector<std::pair<std::int64_t, int>> out;
    if (limit <= 0) return out;
    out.emplace_back(0, 1);
    for (std::int64_t j = 1;; ++j) {
        const int sign = (j % 2 == 0) ? 1 : -1;
        const std::int64_t lo = j * (3 * j - 1) / 2;
        const std::int64_t hi = j * (3 * j + 1) / 2;
        if (lo >= limit) break;
        out.emplace_back(lo, sign);
        if (hi < limit) out.emplace_back(hi, sign);
    }
    return out;
}

}  // namespace

QSeries euler(std::size_t prec)
{
    std::vector<QSeries::Term> terms;
    for (const auto& [e, sign] : pentagonal_terms(static_cast<std::int64_t>(prec)))
        terms.push_back({static_cast<std::size_t>(e), mpz_class(sign)});
    return SeriesBuilder::sparse(Offset{}, prec, std::move(terms));
}

QSeries eta(std::int64_t m, std::int64_t prec)
{
    if (m < 1) throw std::invalid_argument("eta: dilation must be positive");
    const Offset offset = Offset::twenty_fourths(m);
    const std::size_t count = count_from_bound(offset, prec);
    std::vector<QSeries::Term> terms;
    const auto limit = static_cast<std::int64_t>(count);
    for (const auto& [e, sign] : pentagonal_terms(ceil_div(limit, m))) {
        const std::int64_t i = m * e;
        if (i < limit) terms.push_back({static_cast<std::size_t>(i), mpz_class(sign)});
    }
    return SeriesBuilder::sparse(offset, count, std::move(terms));
}

QSeries theta(std::int64_t m, std::int64_t prec)
{
    if (m < 1) throw std::invalid_argument("theta: dilation must be positive");
    const std::size_t count = prec > 0 ? static_cast<std::size_t>(prec) : 0;
    std::vector<QSeries::Term> terms;
    if (count > 0) terms.push_back({0, mpz_class(1)});
    for (std::int64_t n = 1; m * n * n < prec; ++n) terms.push_back({static_cast<std::size_t>(m * n * n), mpz_class(2)});
    return SeriesBuilder::sparse(Offset{}, count, std::move(terms));
}

QSeries theta_psi(const DirichletCharacter& psi, std::int64_t m, std::int64_t prec)
{
    if (m < 1) throw std::invalid_argument("theta_psi: dilation must be positive");
    if (!psi.is_odd()) throw std::invalid_argument("theta_psi: character " + psi.to_string() + " is not odd");
    if (!psi.is_primitive()) throw std::invalid_argument("theta_psi: character " + psi.to_string() + " is not primitive");
    const std::size_t count = prec > 0 ? static_cast<std::size_t>(prec) : 0;
    std::vector<QSeries::Term> terms;
    for (std::int64_t n = 1; m * n * n < prec; ++n) {
        const int v = psi(n);
        if (v != 0) terms.push_back({static_cast<std::size_t>(m * n * n), mpz_class(2 * v * n)});
    }
    return SeriesBuilder::sparse(Offset{}, count, std::move(terms));
}

QSeries eisenstein_e4(std::int64_t prec)
{
    const std::size_t count = prec > 0 ? static_cast<std::size_t>(prec) : 0;
    std::vector<__int128> sigma(count, 0);
    for (std::size_t d = 1; d < count; ++d) {
        const __int128 cube = static_cast<__int128>(d) * d * d;
        for (std::size_t n = d; n < count; n += d) sigma[n] += cube;
    }
    std::vector<mpz_class> nums(count);
    if (count > 0) nums[0] = 1;
    for (std::size_t n = 1; n < count; ++n) nums[n] = from_int128(240 * sigma[n]);
    return SeriesBuilder::dense(Offset{}, std::move(nums));
}

// -- operators ----------------------------------------------------------------

QSeries derive(const QSeries& a)
{
    const std::int64_t o24 = a.offset().in_24ths();
    const bool integral = a.offset().is_integral();
    std::vector<QSeries::Term> terms;
    a.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
        const std::int64_t e24 = o24 + 24 * static_cast<std::int64_t>(i);
        const std::int64_t factor = integral ? e24 / 24 : e24;
        terms.push_back({i, v * mpz_class(static_cast<long>(factor))});
    });
    mpz_class den = a.denominator();
    if (!integral) den *= 24;
    return SeriesBuilder::sparse(a.offset(), a.prec(), std::move(terms), den);
}

QSeries dilate(std::int64_t m, const QSeries& a, std::optional<std::size_t> cap)
{
    if (m < 1) throw std::invalid_argument("dilate: factor must be positive");
    std::size_t prec = a.prec() * static_cast<std::size_t>(m);
    if (cap) prec = std::min(prec, *cap);
    std::vector<QSeries::Term> terms;
    a.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
        const std::size_t j = i * static_cast<std::size_t>(m);
        if (j < prec) terms.push_back({j, v});
    });
    return SeriesBuilder::sparse(a.offset() * m, prec, std::move(terms), a.denominator());
}

QSeries u_op(std::int64_t m, const QSeries& a)
{
    if (m < 1) throw std::invalid_argument("U operator: index must be positive");
    if (!a.offset().is_integral())
        throw std::domain_error("U operator applied to series with fractional offset " + a.offset().to_string());
    const std::int64_t o = a.offset().in_24ths() / 24;
    const std::int64_t bound = o + static_cast<std::int64_t>(a.prec());
    const std::int64_t new_offset = ceil_div(o, m);
    const std::int64_t new_bound = floor_div(bound, m);
    const std::size_t prec = new_bound > new_offset ? static_cast<std::size_t>(new_bound - new_offset) : 0;
    std::vector<QSeries::Term> terms;
    a.for_each_nonzero([&](std::size_t i, const mpz_class& v) {
        const std::int64_t e = o + static_cast<std::int64_t>(i);
        if (e % m != 0) return;
        const std::int64_t j = e / m - new_offset;
        if (j >= 0 && static_cast<std::size_t>(j) < prec) terms.push_back({static_cast<std::size_t>(j), v});
    });
    return SeriesBuilder::sparse(Offset::integer(new_offset), prec, std::move(terms), a.denominator());
}

}  // namespace hwf
