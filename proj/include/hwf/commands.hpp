#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hwf/signs.hpp"

namespace hwf::cli {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

/// Largest precision accepted without --allow-huge.
constexpr std::int64_t kDefaultPrecisionLimit = 100000;

/// Entry point shared by the hwf executable and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Table cell format: three decimals below X = 10^4, six from there on.
std::string table_cell(const mpq_class& ratio, std::int64_t X);

struct StatsRow {
    std::int64_t X = 0;
    std::optional<SignStatsReport> tot;
    std::optional<SignStatsReport> fund;
};

/// "X,R_tot,R_fund" header plus one row per entry; absent columns stay empty.
std::string stats_csv(const std::vector<StatsRow>& rows);

}  // namespace hwf::cli
