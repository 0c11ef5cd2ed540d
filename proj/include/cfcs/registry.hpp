#pragma once
// Embedded, checksummed copies of the two published tables; the per-row
// verification pipeline (convergence constant, limits by every route,
// irrationality measure, integrality sweep, Hauptmodul value); and the
// deterministic parallel batch driver behind the CLI.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfcs/denom.hpp"
#include "cfcs/exact.hpp"
#include "cfcs/family.hpp"
#include "cfcs/modular.hpp"
#include "cfcs/mpreal.hpp"

namespace cfcs {

struct RegistryCorrupt : Error {
    using Error::Error;
};
struct UnknownTag : Error {
    using Error::Error;
};

// A finite product of base^exponent factors, e.g. 12^{1/4} or 2^{1/3} 3^{1/2}.
struct AlgebraicMultiplier {
    std::vector<std::pair<Rational, Rational>> factors;
    MPReal value(long bits) const;
    std::string str() const;  // "1" for the empty product
};

struct Table1Row {
    std::string tag;
    long N = 0, D = 0;
    QuadraticSurd tau;
    Rational sq, A, K;
    std::string halfLogE;  // published decimal, "-" for nonconvergent rows
    std::string mStar;     // published decimal
    bool irrFlag = false;
};

struct Table2Row {
    std::string tag;
    AlgebraicMultiplier multiplier;
    long disc = 0;  // negative fundamental discriminant of the limit's CS value
    Rational a1, A, b0, K;
    long D = 0;
    std::string mu;  // published decimal or "-"
    FamilyParams family() const { return {a1, b0, A, K, D}; }
};

const std::vector<Table1Row>& table1();  // 44 rows
const std::vector<Table2Row>& table2();  // 39 rows
const Table1Row& table1_row(const std::string& tag);   // throws UnknownTag
const Table2Row& table2_row(const std::string& tag);   // throws UnknownTag
const Table2Row* table2_find(const std::string& tag);  // nullptr if absent
unsigned long long registry_checksum();  // FNV-1a of the embedded text

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string tag, check;
    CheckStatus status = CheckStatus::Skip;
    std::string value, expected, tol;
    long ms = 0;
};

struct VerificationReport {
    std::vector<CheckResult> entries;
    bool all_pass() const;
};

// Runs, in order: (a) the convergence constant log|E|/2 against the
// published column (+-0.001; +-0.005 for the 2-decimal row), (b) the CF
// limit by direct iteration, the T-ratio, the f_D formula and the modular
// pipeline against multiplier * CS(disc) to >= 40 digits, (c) the
// irrationality measure from exact constants against the published value,
// (d) the exact integrality sweep for both convergent branches, (e) the
// Hauptmodul against the published sq and the evaluation residual.
// Rows absent from Table 2 (nonconvergent) skip (b)-(d). Individual check
// failures are recorded, never thrown.
std::vector<CheckResult> verify_row(const std::string& tag, const PrecPolicy& prec,
                                    long integrality_n = 300);

// All 44 rows, dispatched to `workers` threads (0 = hardware concurrency),
// merged in registry order regardless of scheduling.
VerificationReport run_all(const PrecPolicy& prec, int workers = 0,
                           long integrality_n = 300);

std::string to_json_line(const CheckResult& c);
const char* status_name(CheckStatus s);

}  // namespace cfcs
