#include "hwf/coeff_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hwf {

namespace {

std::int64_t parse_int(const std::string& s, std::size_t line)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw CoefficientFileError("malformed integer '" + s + "'", line);
    return static_cast<std::int64_t>(v);
}

}  // namespace

void write_coefficient_file(std::ostream& os, const CoefficientFile& file)
{
    os << "#format " << CoefficientFile::kFormatVersion << '\n'
       << "#form " << file.form_id << '\n'
       << "#weight " << file.weight_num << "/2\n"
       << "#level " << file.level << '\n'
       << "#character " << file.character.to_string() << '\n'
       << "#precision " << file.precision() << '\n'
       << "#offset " << file.offset << '\n';
    for (std::int64_t n = std::max<std::int64_t>(file.offset, 0); n <= file.precision(); ++n) {
        const mpz_class& v = file.coeffs[n];
        if (sgn(v) != 0) os << n << '\t' << v.get_str() << '\n';
    }
}

CoefficientFile read_coefficient_file(std::istream& is)
{
    static const char* const kKeys[] = {"format", "form", "weight", "level", "character", "precision", "offset"};
    std::string fields[7];
    std::string line;
    std::size_t lineno = 0;
    for (std::size_t i = 0; i < 7; ++i) {
        ++lineno;
        if (!std::getline(is, line)) throw CoefficientFileError("truncated header", lineno);
        const std::string prefix = std::string("#") + kKeys[i] + " ";
        if (line.rfind(prefix, 0) != 0) throw CoefficientFileError("expected '" + prefix + "...'", lineno);
        fields[i] = line.substr(prefix.size());
    }

    if (parse_int(fields[0], 1) != CoefficientFile::kFormatVersion)
        throw CoefficientFileError("unsupported format version " + fields[0], 1);
    CoefficientFile file;
    file.form_id = fields[1];
    if (fields[2].size() < 3 || fields[2].substr(fields[2].size() - 2) != "/2")
        throw CoefficientFileError("weight must be written as <num>/2", 3);
    file.weight_num = static_cast<int>(parse_int(fields[2].substr(0, fields[2].size() - 2), 3));
    file.level = parse_int(fields[3], 4);
    if (file.level < 1) throw CoefficientFileError("level must be positive", 4);
    try {
        file.character = DirichletCharacter::parse(fields[4]);
    } catch (const std::invalid_argument& e) {
        throw CoefficientFileError(e.what(), 5);
    }
    const std::int64_t prec = parse_int(fields[5], 6);
    if (prec < 0) throw CoefficientFileError("precision must be non-negative", 6);
    file.offset = parse_int(fields[6], 7);
    if (file.offset < 0) throw CoefficientFileError("offset must be non-negative", 7);

    std::vector<mpz_class> values(static_cast<std::size_t>(prec) + 1);
    std::int64_t last = -1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw CoefficientFileError("expected 'n<TAB>a(n)'", lineno);
        const std::int64_t n = parse_int(line.substr(0, tab), lineno);
        if (n <= last) throw CoefficientFileError("indices must be strictly ascending", lineno);
        if (n < file.offset || n > prec) throw CoefficientFileError("index " + std::to_string(n) + " outside [offset, precision]", lineno);
        mpz_class v;
        if (v.set_str(line.substr(tab + 1), 10) != 0) throw CoefficientFileError("malformed coefficient", lineno);
        if (sgn(v) == 0) throw CoefficientFileError("zero coefficients are not listed", lineno);
        values[static_cast<std::size_t>(n)] = std::move(v);
        last = n;
    }
    file.coeffs = Coefficients(std::move(values));
    return file;
}

void save_coefficient_file(const std::string& path, const CoefficientFile& file)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_coefficient_file(os, file);
    if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

CoefficientFile load_coefficient_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_coefficient_file(is);
}

CoefficientFile to_file(const HalfIntegralForm& f)
{
    return CoefficientFile{f.id, f.weight_num, f.level, f.character, sgn(f.coeffs[0]) != 0 ? 0 : 1, f.coeffs};
}

CoefficientFile to_file(const IntegralForm& F)
{
    return CoefficientFile{F.id, 2 * F.weight, F.level, F.character, sgn(F.coeffs[0]) != 0 ? 0 : 1, F.coeffs};
}

HalfIntegralForm half_integral_from_file(const CoefficientFile& file)
{
    if (!file.is_half_integral()) throw std::domain_error("'" + file.form_id + "' has integral weight " + std::to_string(file.weight_num / 2));
    HalfIntegralForm f = make_half_integral(file.form_id, file.weight_num, file.level, file.character, false, file.coeffs);
    f.plus_space = plus_space_check(f).empty();
    return f;
}

IntegralForm integral_from_file(const CoefficientFile& file)
{
    if (file.is_half_integral()) throw std::domain_error("'" + file.form_id + "' has half-integral weight " + std::to_string(file.weight_num) + "/2");
    return IntegralForm{file.form_id, file.weight_num / 2, file.level, file.character, file.coeffs};
}

}  // namespace hwf
