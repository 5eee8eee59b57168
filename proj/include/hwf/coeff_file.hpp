#pragma once

// Coefficient file, version 1. A fixed header of seven '#' lines followed by
// one "n<TAB>a(n)" line per nonzero coefficient, ascending n:
//
//   #format 1
//   #form delta
//   #weight 13/2
//   #level 4
//   #character trivial:4
//   #precision 100
//   #offset 1
//   1	1
//   4	-56
//
// Coefficients below the offset are zero by definition; n never exceeds the
// precision.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hwf/forms.hpp"

namespace hwf {

struct CoefficientFile {
    static constexpr int kFormatVersion = 1;

    std::string form_id;
    int weight_num = 0;  // weight = weight_num / 2
    std::int64_t level = 1;
    DirichletCharacter character = DirichletCharacter::trivial(1);
    std::int64_t offset = 1;
    Coefficients coeffs;

    std::int64_t precision() const { return coeffs.prec(); }
    bool is_half_integral() const { return weight_num % 2 == 1; }

    friend bool operator==(const CoefficientFile&, const CoefficientFile&) = default;
};

class CoefficientFileError : public std::runtime_error {
public:
    CoefficientFileError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

void write_coefficient_file(std::ostream& os, const CoefficientFile& file);
CoefficientFile read_coefficient_file(std::istream& is);

void save_coefficient_file(const std::string& path, const CoefficientFile& file);
CoefficientFile load_coefficient_file(const std::string& path);

CoefficientFile to_file(const HalfIntegralForm& f);
CoefficientFile to_file(const IntegralForm& F);
/// Throws std::domain_error if the file does not describe a half-integral weight form.
HalfIntegralForm half_integral_from_file(const CoefficientFile& file);
IntegralForm integral_from_file(const CoefficientFile& file);

}  // namespace hwf
