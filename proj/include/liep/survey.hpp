#pragma once

#include <memory>
#include <string>
#include <vector>

#include "liep/jacobi.hpp"
#include "liep/liering.hpp"

namespace liep {

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& s);

struct SurveyRow {
    u64 p;
    std::string a_label; // index as text, or "mixed"
    long i;
    long rho;
    long v;
    long lambda;
    long y; // lambda - (3i + 13 - 2p)
    std::array<long, 3> witness;
    long ms; // wall time; reported only when timings are requested
};

/// One row per (a, i) over the grid, each computed in its own context at the
/// policy precision (or the override). Rows are written by index, so output
/// order and content do not depend on the parallel schedule.
std::vector<SurveyRow> survey(u64 p, const std::vector<long>& a_set, long i_lo, long i_hi,
                              int precision_override = 0);

/// CSV header: p,a,i,rho,v,lambda,y,wj,wk,wl,ms
std::string format_rows(const std::vector<SurveyRow>& rows, Format fmt, bool with_timings);

enum class TableKind { ATable, JTable };

/// The a(j,k) matrix (rows j, columns k) or the J(j,j+1,l) matrix (rows j,
/// columns l) over [i, i+span); text rows are space-separated digits.
std::string emit_table(TableKind kind, u64 p, long a, long i, int span, int precision_override,
                       Format fmt);

/// Owning bundle for a gamma loaded from a file (the file fixes p and N).
struct GammaFile {
    std::unique_ptr<const PrimeCtx> ctx;
    std::unique_ptr<const HomGamma> gamma;
};

GammaFile load_gamma_file(const std::string& path);
std::string gamma_to_json_string(const HomGamma& g);

std::string lambda_report_json(const LambdaReport& rep);
std::string lambda_report_text(const LambdaReport& rep);

/// Export schema: {"p","i","m","orders","brackets":{"j,k":[...]}} with
/// orders as exponents o_j (generator j has additive order p^{o_j}).
std::string lie_ring_json(const LieRing& L);

struct VerifyReport {
    std::string suite;
    int trials = 0;
    int failures = 0;
    std::string first_failure; // minimal reproducer text
};

/// suite in {lem53, lem56, lem59, jlemma, bounds, crosscheck, fgidentities,
/// liering}; deterministic given the seed.
VerifyReport run_verify(const std::string& suite, int trials, u64 seed);

const std::vector<std::string>& verify_suite_names();

} // namespace liep
