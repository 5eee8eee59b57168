#include "hwf/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwf/coeff_file.hpp"
#include "hwf/formspec.hpp"
#include "hwf/hecke.hpp"

namespace hwf::cli {

using nlohmann::json;

namespace {

// Raised for bad input; maps to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json big(const mpz_class& v)
{
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) throw UsageError(std::string("malformed ") + what + " '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what);
    return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << text;
}

void write_json(const std::string& path, const json& j, std::ostream& out) { write_text(path, j.dump(2) + "\n", out); }

void check_precision(std::int64_t prec, bool allow_huge, std::ostream& err)
{
    if (prec < 1) throw UsageError("precision must be positive");
    if (prec > kDefaultPrecisionLimit) {
        if (!allow_huge)
            throw UsageError("precision " + std::to_string(prec) + " exceeds " + std::to_string(kDefaultPrecisionLimit) +
                             "; pass --allow-huge to proceed");
        err << "warning: precision " << prec << " needs substantial memory and time\n";
    }
}

json signs_json(const SignChanges& sc, std::span<const mpz_class> seq)
{
    std::int64_t pos = 0, neg = 0, zero = 0;
    for (const auto& v : seq) {
        const int s = sgn(v);
        pos += s > 0;
        neg += s < 0;
        zero += s == 0;
    }
    json values = json::array();
    for (const auto& v : seq) values.push_back(big(v));
    return json{{"length", seq.size()}, {"n_pos", pos},       {"n_neg", neg},
                {"n_zero", zero},       {"values", values},    {"sign_changes", sc.count},
                {"positions", sc.positions}};
}

json report_json(const SignStatsReport& r)
{
    return json{{"label", r.label},
                {"X", r.X},
                {"n_pos", r.n_pos},
                {"n_neg", r.n_neg},
                {"n_zero_skipped", r.n_zero_skipped},
                {"ratio", r.ratio.get_str()},
                {"ratio_decimal", r.ratio_text},
                {"sign_changes", r.sign_change_count}};
}

json eigen_json(const EigenReport& r, int k, const std::string& form, const std::string& op)
{
    json j{{"schema", "hwf-eigen/1"}, {"form", form}, {"op", op}, {"p", r.p}, {"is_eigen", r.is_eigen},
           {"checked_up_to", r.checked_up_to}};
    j["lambda"] = r.lambda ? big(*r.lambda) : json(nullptr);
    j["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
    if (r.satake) {
        j["satake"] = json{{"trace", big(r.satake->trace)},
                           {"norm", big(r.satake->norm)},
                           {"discriminant_sign", r.satake->discriminant_sign}};
    }
    if (r.lambda) {
        j["deligne"] = deligne_check(*r.lambda, r.p, k);
        j["elementary_bound"] = elementary_bound_check(*r.lambda, r.p, k);
    }
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

// -- build --------------------------------------------------------------------

struct BuildOptions {
    std::string form;
    std::int64_t prec = 0;
    std::string out;
    std::int64_t level = 0;
    std::string character;
    int weight_num = 0;
    bool allow_huge = false;
};

CoefficientFile build_file(const BuildOptions& o)
{
    if (o.form == "delta") return to_file(delta_form(o.prec));
    if (o.form == "g") return to_file(g_form(o.prec));
    if (o.form == "Delta") return to_file(ramanujan_delta(o.prec));
    if (o.form == "G11") return to_file(x0_11_form(o.prec));
    if (o.form == "E4") return to_file(e4_form(o.prec));

    FormSpec spec = [&] {
        try {
            return parse_formspec(o.form);
        } catch (const FormSpecError& e) {
            throw UsageError(std::string("form spec: ") + e.what());
        }
    }();
    int weight = o.weight_num;
    if (weight == 0) {
        const auto inferred = spec.weight_twice();
        if (!inferred) throw UsageError("cannot infer the weight of '" + o.form + "'; pass --weight-num");
        weight = *inferred;
    }
    const QSeries s = evaluate(spec, o.prec + 1);
    CoefficientFile file;
    file.form_id = o.form;
    file.weight_num = weight;
    file.level = o.level > 0 ? o.level : (weight % 2 == 1 ? 4 : 1);
    file.character = o.character.empty() ? DirichletCharacter::trivial(file.level) : DirichletCharacter::parse(o.character);
    file.coeffs = finalize_coefficients(s, o.prec);
    file.offset = s.offset().in_24ths() / 24;
    if (file.is_half_integral()) (void)half_integral_from_file(file);
    return file;
}

int cmd_build(const BuildOptions& o, std::ostream& out, std::ostream& err)
{
    check_precision(o.prec, o.allow_huge, err);
    const CoefficientFile file = build_file(o);
    save_coefficient_file(o.out, file);
    out << "wrote " << o.out << ": " << file.form_id << ", weight " << file.weight_num << "/2, level " << file.level
        << ", precision " << file.precision() << "\n";
    return kExitOk;
}

// -- lift ---------------------------------------------------------------------

struct LiftOptions {
    std::string in;
    std::int64_t t = 1;
    std::string out;
};

int cmd_lift(const LiftOptions& o, std::ostream& out)
{
    const HalfIntegralForm f = half_integral_from_file(load_coefficient_file(o.in));
    if (o.t < 1 || !is_squarefree(o.t)) throw UsageError("t = " + std::to_string(o.t) + " is not square-free");
    if (o.t > f.prec()) throw UsageError("t = " + std::to_string(o.t) + " exceeds input precision " + std::to_string(f.prec()));
    const LiftResult lift = shimura_lift(f, o.t);
    save_coefficient_file(o.out, to_file(lift.form));
    out << "wrote " << o.out << ": lift of " << f.id << " at t = " << o.t << ", weight " << lift.form.weight
        << ", level " << lift.form.level << ", precision " << lift.prec() << "\n";
    return kExitOk;
}

// -- hecke --------------------------------------------------------------------

struct HeckeOptions {
    std::string in;
    std::string op;
    std::int64_t p = 0;
    std::string out;
    std::string json_out;
    bool verify_eigen = false;
};

int cmd_hecke(const HeckeOptions& o, std::ostream& out)
{
    const CoefficientFile file = load_coefficient_file(o.in);
    if (o.op != "u") {
        if (!is_prime(o.p)) throw UsageError(std::to_string(o.p) + " is not prime");
        if (file.level % o.p == 0) throw UsageError("p divides level (p = " + std::to_string(o.p) + ", N = " + std::to_string(file.level) + ")");
    }

    CoefficientFile result = file;
    std::optional<EigenReport> report;
    int k = 0;
    if (o.op == "tsq") {
        const HalfIntegralForm f = half_integral_from_file(file);
        k = f.k();
        result.coeffs = t_square_half(o.p, f);
        result.form_id = file.form_id + ".T" + std::to_string(o.p) + "^2";
        if (o.verify_eigen) report = half_integral_eigen(f, o.p);
    } else if (o.op == "tp") {
        const IntegralForm F = integral_from_file(file);
        k = F.weight / 2;
        result.coeffs = t_integral(o.p, F);
        result.form_id = file.form_id + ".T" + std::to_string(o.p);
        if (o.verify_eigen) report = integral_eigen(F, o.p);
    } else if (o.op == "u") {
        if (o.p < 1) throw UsageError("U index must be positive");
        if (o.verify_eigen) throw UsageError("--verify-eigen applies to tsq and tp only");
        result.coeffs = u_coefficients(o.p, file.coeffs);
        result.form_id = file.form_id + ".U" + std::to_string(o.p);
        result.offset = std::min<std::int64_t>(file.offset, 1);
    } else {
        throw UsageError("unknown operator '" + o.op + "' (expected tsq, tp or u)");
    }
    if (!o.out.empty()) save_coefficient_file(o.out, result);

    if (!report) {
        if (o.out.empty()) write_coefficient_file(out, result);
        return kExitOk;
    }
    const json j = eigen_json(*report, k, file.form_id, o.op);
    write_json(o.json_out, j, out);
    const bool ok = report->is_eigen && j.value("deligne", false) && j.value("elementary_bound", false);
    return ok ? kExitOk : kExitVerificationFailed;
}

// -- signs --------------------------------------------------------------------

struct SignsOptions {
    std::string in;
    std::string stats = "tot,fund";
    std::string x_list;
    std::string csv;
    std::string json_out;
    std::int64_t t = 0;
    std::int64_t powers_p = 0;
    std::string dprime;
};

int cmd_signs(const SignsOptions& o, std::ostream& out)
{
    const CoefficientFile file = load_coefficient_file(o.in);
    const int k = file.is_half_integral() ? (file.weight_num - 1) / 2 : 0;

    bool want_tot = false, want_fund = false;
    {
        std::stringstream ss(o.stats);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "tot") want_tot = true;
            else if (item == "fund") want_fund = true;
            else if (!item.empty()) throw UsageError("unknown statistic '" + item + "'");
        }
    }

    std::vector<std::int64_t> xs;
    if (o.x_list.empty()) {
        for (std::int64_t x = 10; x <= file.precision(); x *= 10) xs.push_back(x);
        if (xs.empty()) xs.push_back(file.precision());
    } else {
        xs = parse_int_list(o.x_list, "X list");
    }
    for (const std::int64_t x : xs)
        if (x < 1 || x > file.precision())
            throw UsageError("X = " + std::to_string(x) + " outside [1, " + std::to_string(file.precision()) + "]");

    const bool sub_modes = o.t != 0 || o.powers_p != 0 || !o.dprime.empty();
    if (!sub_modes || !o.csv.empty()) {
        std::vector<StatsRow> rows;
        for (const std::int64_t x : xs) {
            StatsRow row{x, std::nullopt, std::nullopt};
            if (want_tot) row.tot = r_plus_tot(file.coeffs, x);
            if (want_fund) row.fund = r_plus_fund(file.coeffs, k, x);
            rows.push_back(std::move(row));
        }
        write_text(o.csv, stats_csv(rows), out);
    }
    if (!sub_modes) return kExitOk;

    if (!file.is_half_integral()) throw UsageError("subsequence modes need a half-integral weight form");
    const HalfIntegralForm f = half_integral_from_file(file);
    json j{{"schema", "hwf-signs/1"}, {"form", f.id}};
    const std::int64_t t = o.t == 0 ? 1 : o.t;
    if (t < 1 || !is_squarefree(t)) throw UsageError("t = " + std::to_string(t) + " is not square-free");
    if (t > f.prec()) throw UsageError("t exceeds precision");

    if (o.powers_p != 0) {
        if (!is_prime(o.powers_p) || f.level % o.powers_p == 0) throw UsageError("--powers-p needs a prime not dividing the level");
        const auto seq = local_power_sequence(f, t, o.powers_p);
        std::vector<std::int64_t> labels;
        for (std::size_t m = 0; m < seq.size(); ++m) labels.push_back(static_cast<std::int64_t>(m));
        json r = signs_json(sign_changes(seq, labels), seq);
        r["t"] = t;
        r["p"] = o.powers_p;
        j["powers"] = r;
    } else if (o.t != 0) {
        std::int64_t X = 0;
        while (t * (X + 1) * (X + 1) <= f.prec()) ++X;
        const auto seq = subseq_t_n2(f, t, X);
        json r = signs_json(sign_changes(seq), seq);
        r["t"] = t;
        j["t_n2"] = r;
    }
    if (!o.dprime.empty()) {
        std::vector<std::int64_t> primes;
        std::vector<int> eps;
        std::stringstream ss(o.dprime);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw UsageError("--dprime expects p:eps pairs");
            primes.push_back(parse_int_list(item.substr(0, colon), "prime")[0]);
            const std::int64_t e = parse_int_list(item.substr(colon + 1), "sign")[0];
            if (e != 1 && e != -1) throw UsageError("--dprime signs must be +1 or -1");
            eps.push_back(static_cast<int>(e));
        }
        for (const std::int64_t p : primes)
            if (!is_prime(p) || f.level % p == 0) throw UsageError("--dprime primes must not divide the level");
        const std::int64_t X = *std::max_element(xs.begin(), xs.end());
        const SquarefreeSurvey survey = squarefree_sign_survey(f, X, primes, eps);
        json r = report_json(survey.stats);
        r["primes"] = primes;
        r["eps"] = eps;
        r["t_count"] = survey.entries.size();
        r["positions"] = survey.stats.change_positions;
        j["survey"] = r;
    }
    write_json(o.json_out, j, out);
    return kExitOk;
}

// -- verify -------------------------------------------------------------------

struct VerifyOptions {
    std::string in;
    std::string suite;
    std::string json_out;
    std::string t_list;
    std::string p_list;
    std::int64_t limit = 10000;
};

std::vector<std::int64_t> good_primes(const std::string& list, std::int64_t level, std::vector<std::int64_t> fallback)
{
    std::vector<std::int64_t> ps = list.empty() ? std::move(fallback) : parse_int_list(list, "prime list");
    for (const std::int64_t p : ps)
        if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    std::erase_if(ps, [&](std::int64_t p) { return level % p == 0; });
    return ps;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out)
{
    const CoefficientFile file = load_coefficient_file(o.in);
    json j{{"schema", "hwf-verify/1"}, {"suite", o.suite}, {"form", file.form_id}};
    json checks = json::array();
    bool pass = true;

    if (o.suite == "plus-space") {
        const HalfIntegralForm f = half_integral_from_file(file);
        const auto bad = plus_space_check(f);
        json witnesses = json::array();
        for (const auto n : bad) witnesses.push_back(json{{"index", n}, {"value", big(f.a(n))}});
        checks.push_back(json{{"check", "plus-space"}, {"k", f.k()}, {"checked_up_to", f.prec()}, {"pass", bad.empty()},
                              {"witnesses", witnesses}});
        pass = bad.empty();
    } else if (o.suite == "recurrence") {
        const HalfIntegralForm f = half_integral_from_file(file);
        std::vector<std::int64_t> ts;
        if (o.t_list.empty()) {
            for (std::int64_t t = 1; t <= f.prec() && ts.size() < 3; ++t)
                if (is_squarefree(t) && sgn(f.a(t)) != 0) ts.push_back(t);
        } else {
            ts = parse_int_list(o.t_list, "t list");
        }
        for (const auto t : ts)
            if (t < 1 || !is_squarefree(t) || t > f.prec()) throw UsageError("t = " + std::to_string(t) + " must be square-free and within precision");
        for (const auto p : good_primes(o.p_list, f.level, {3, 5, 7})) {
            if (f.prec() / (p * p) < 1) continue;
            for (const auto t : ts) {
                const RecurrenceReport r = recurrence_check(f, t, p);
                json c{{"check", "recurrence"}, {"t", t}, {"p", p}, {"pass", r.passed}, {"max_m", r.max_m},
                       {"max_index", r.max_index}};
                c["lambda"] = r.lambda ? big(*r.lambda) : json(nullptr);
                json witnesses = json::array();
                std::int64_t n = t;
                for (std::size_t m = 0; m < r.observed.size(); ++m, n *= p * p)
                    witnesses.push_back(json{{"index", n}, {"value", big(r.observed[m])}, {"predicted", big(r.predicted[m])}});
                c["witnesses"] = witnesses;
                if (!r.diagnostic.empty()) c["diagnostic"] = r.diagnostic;
                pass = pass && r.passed;
                checks.push_back(c);
            }
        }
    } else if (o.suite == "bounds") {
        const auto primes = good_primes(o.p_list, file.level, primes_up_to(13));
        for (const auto p : primes) {
            EigenReport r;
            int k = 0;
            if (file.is_half_integral()) {
                const HalfIntegralForm f = half_integral_from_file(file);
                if (f.prec() / (p * p) < 1) continue;
                k = f.k();
                r = half_integral_eigen(f, p);
            } else {
                const IntegralForm F = integral_from_file(file);
                if (F.prec() / p < 1) continue;
                k = F.weight / 2;
                r = integral_eigen(F, p);
            }
            json c = eigen_json(r, k, file.form_id, file.is_half_integral() ? "tsq" : "tp");
            c.erase("schema");
            c["check"] = "bounds";
            const bool ok = r.is_eigen && c.value("deligne", false) && c.value("elementary_bound", false);
            c["pass"] = ok;
            pass = pass && ok;
            checks.push_back(c);
        }
    } else if (o.suite == "prop2") {
        const HalfIntegralForm f = half_integral_from_file(file);
        for (const auto p : good_primes(o.p_list, f.level, {3, 5, 7})) {
            for (const int eps : {1, -1}) {
                const ClassSignWitnesses w = class_sign_witnesses(f.coeffs, p, eps, o.limit);
                json witnesses = json::array();
                if (w.negative) witnesses.push_back(json{{"index", *w.negative}, {"value", big(f.a(*w.negative))}, {"sign", -1}});
                if (w.positive) witnesses.push_back(json{{"index", *w.positive}, {"value", big(f.a(*w.positive))}, {"sign", 1}});
                const bool ok = w.negative && w.positive;
                checks.push_back(json{{"check", "prop2"}, {"p", p}, {"eps", eps}, {"limit", std::min(o.limit, f.prec())},
                                      {"pass", ok}, {"witnesses", witnesses}});
                pass = pass && ok;
            }
        }
    } else {
        throw UsageError("unknown suite '" + o.suite + "' (expected plus-space, recurrence, bounds or prop2)");
    }

    j["checks"] = checks;
    j["pass"] = pass;
    write_json(o.json_out, j, out);
    return pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace

std::string table_cell(const mpq_class& ratio, std::int64_t X) { return render_ratio(ratio, X < 10000 ? 3 : 6); }

std::string stats_csv(const std::vector<StatsRow>& rows)
{
    std::string s = "X,R_tot,R_fund\n";
    for (const auto& r : rows) {
        s += std::to_string(r.X) + ",";
        if (r.tot) s += table_cell(r.tot->ratio, r.X);
        s += ",";
        if (r.fund) s += table_cell(r.fund->ratio, r.X);
        s += "\n";
    }
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Half-integral weight modular forms: build q-expansions, lift, apply Hecke operators, count signs", "hwf"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for series products")->check(CLI::Range(1u, 256u));

    BuildOptions build;
    auto* b = app.add_subcommand("build", "Build a form and write its coefficient file");
    b->add_option("--form", build.form, "delta, g, Delta, G11, E4 or a form spec expression")->required();
    b->add_option("--prec", build.prec, "Coefficients a(n) for n <= prec")->required();
    b->add_option("--out", build.out, "Output coefficient file")->required();
    b->add_option("--level", build.level, "Level recorded for form-spec builds");
    b->add_option("--character", build.character, "Character recorded for form-spec builds");
    b->add_option("--weight-num", build.weight_num, "Twice the weight, for form-spec builds");
    b->add_flag("--allow-huge", build.allow_huge, "Permit precision above 100000");

    LiftOptions lift;
    auto* l = app.add_subcommand("lift", "Shimura lift at a square-free index t");
    l->add_option("--in", lift.in)->required();
    l->add_option("--t", lift.t)->required();
    l->add_option("--out", lift.out)->required();

    HeckeOptions hecke;
    auto* h = app.add_subcommand("hecke", "Apply T(p^2), T(p) or U_p");
    h->add_option("--in", hecke.in)->required();
    h->add_option("--op", hecke.op, "tsq, tp or u")->required();
    h->add_option("--p", hecke.p)->required();
    h->add_option("--out", hecke.out, "Write the transformed coefficients here");
    h->add_option("--json", hecke.json_out, "Eigen report destination (default stdout)");
    h->add_flag("--verify-eigen", hecke.verify_eigen, "Check the eigenform property and bounds");

    SignsOptions signs;
    auto* s = app.add_subcommand("signs", "Positive-coefficient ratios and sign changes");
    s->add_option("--in", signs.in)->required();
    s->add_option("--stats", signs.stats, "Comma list of tot, fund");
    s->add_option("--X-list", signs.x_list, "Comma list of cutoffs (default: powers of ten)");
    s->add_option("--csv", signs.csv, "CSV destination (default stdout)");
    s->add_option("--json", signs.json_out, "Sign report destination (default stdout)");
    s->add_option("--t", signs.t, "Report signs of a(t n^2)");
    s->add_option("--powers-p", signs.powers_p, "Report signs of a(t p^(2m))");
    s->add_option("--dprime", signs.dprime, "Survey square-free t with (t/p) = eps, as p:eps,...");

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "Run a verification suite");
    v->add_option("--in", verify.in)->required();
    v->add_option("--suite", verify.suite, "plus-space, recurrence, bounds or prop2")->required();
    v->add_option("--json", verify.json_out, "Report destination (default stdout)");
    v->add_option("--t", verify.t_list, "Comma list of square-free t (recurrence)");
    v->add_option("--p", verify.p_list, "Comma list of primes");
    v->add_option("--limit", verify.limit, "Search bound for prop2 witnesses");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    set_thread_count(threads);
    try {
        if (*b) return cmd_build(build, out, err);
        if (*l) return cmd_lift(lift, out);
        if (*h) return cmd_hecke(hecke, out);
        if (*s) return cmd_signs(signs, out);
        if (*v) return cmd_verify(verify, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hwf::cli
