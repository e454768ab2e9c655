#include "liep/survey.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "liep/eigenframe.hpp"

namespace liep {

using ordered_json = nlohmann::ordered_json;

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ParseError("unknown format '" + s + "' (expected text|csv|json)");
}

// ---------------------------------------------------------------------------
// survey

std::vector<SurveyRow> survey(u64 p, const std::vector<long>& a_set, long i_lo, long i_hi,
                              int precision_override) {
    if (i_hi < i_lo) throw ParseError("empty i range");
    std::vector<std::pair<long, long>> grid;
    for (long a : a_set)
        for (long i = i_lo; i <= i_hi; ++i) grid.emplace_back(a, i);

    std::vector<SurveyRow> rows(grid.size());
    std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < static_cast<long>(grid.size()); ++t) {
        try {
            auto [a, i] = grid[static_cast<size_t>(t)];
            auto t0 = std::chrono::steady_clock::now();
            int prec = precision_override > 0 ? precision_override : PrimeCtx::default_precision(p, i);
            PrimeCtx ctx(p, prec);
            HomGamma g = HomGamma::one_param(ctx, i, a);
            LambdaReport rep = lambda_report(g);
            auto t1 = std::chrono::steady_clock::now();
            SurveyRow& row = rows[static_cast<size_t>(t)];
            row.p = p;
            row.a_label = std::to_string(a);
            row.i = i;
            row.rho = rep.rho;
            row.v = rep.v;
            row.lambda = rep.lambda;
            row.y = rep.y_main;
            row.witness = rep.witness;
            row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

std::string format_rows(const std::vector<SurveyRow>& rows, Format fmt, bool with_timings) {
    std::ostringstream os;
    auto ms_of = [&](const SurveyRow& r) { return with_timings ? r.ms : 0; };
    switch (fmt) {
    case Format::Csv:
        os << "p,a,i,rho,v,lambda,y,wj,wk,wl,ms\n";
        for (const auto& r : rows)
            os << r.p << ',' << r.a_label << ',' << r.i << ',' << r.rho << ',' << r.v << ','
               << r.lambda << ',' << r.y << ',' << r.witness[0] << ',' << r.witness[1] << ','
               << r.witness[2] << ',' << ms_of(r) << '\n';
        break;
    case Format::Json: {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json o;
            o["p"] = r.p;
            o["a"] = r.a_label;
            o["i"] = r.i;
            o["rho"] = r.rho;
            o["v"] = r.v;
            o["lambda"] = r.lambda;
            o["y"] = r.y;
            o["witness"] = {r.witness[0], r.witness[1], r.witness[2]};
            o["ms"] = ms_of(r);
            arr.push_back(std::move(o));
        }
        os << arr.dump(2) << '\n';
        break;
    }
    case Format::Text:
        os << "   p  a    i  rho    v  lambda    y  witness        ms\n";
        for (const auto& r : rows) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%4llu %2s %4ld %4ld %4ld %7ld %4ld  (%ld,%ld,%ld) %7ld\n",
                          static_cast<unsigned long long>(r.p), r.a_label.c_str(), r.i, r.rho, r.v,
                          r.lambda, r.y, r.witness[0], r.witness[1], r.witness[2], ms_of(r));
            os << buf;
        }
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// tables

std::string emit_table(TableKind kind, u64 p, long a, long i, int span, int precision_override,
                       Format fmt) {
    int prec = precision_override > 0 ? precision_override : PrimeCtx::default_precision(p, i);
    PrimeCtx ctx(p, prec);
    if (span <= 0) span = ctx.d();
    if (span > ctx.d()) throw ParseError("span exceeds d = p - 1");
    HomGamma g = HomGamma::one_param(ctx, i, a);

    std::vector<std::vector<int>> m(static_cast<size_t>(span), std::vector<int>(span, 0));
    if (kind == TableKind::ATable) {
        const CoeffTable& t = g.coeff_table();
        for (int r = 0; r < span; ++r)
            for (int c = 0; c < span; ++c) m[r][c] = t.at(i + r, i + c);
    } else {
        JTable t(g);
        for (int r = 0; r < span; ++r)
            for (int c = 0; c < span; ++c) m[r][c] = t.at(i + r, i + r + 1, i + c);
    }

    std::ostringstream os;
    switch (fmt) {
    case Format::Text:
        for (const auto& row : m) {
            for (size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
            os << '\n';
        }
        break;
    case Format::Csv:
        for (const auto& row : m) {
            for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
            os << '\n';
        }
        break;
    case Format::Json: {
        ordered_json arr = m;
        os << arr.dump() << '\n';
        break;
    }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

ordered_json elem_to_json(const KElem& e) {
    ordered_json o;
    o["shift"] = e.shift();
    o["coeffs"] = std::vector<u64>(e.coeffs().begin(), e.coeffs().end());
    return o;
}

KElem elem_from_json(const PrimeCtx& ctx, const nlohmann::json& j) {
    if (!j.contains("shift") || !j.contains("coeffs")) throw ParseError("element literal needs shift and coeffs");
    return KElem::from_parts(ctx, j["shift"].get<long>(), j["coeffs"].get<std::vector<u64>>());
}

} // namespace

std::string gamma_to_json_string(const HomGamma& g) {
    ordered_json o;
    o["p"] = g.ctx().p();
    o["precision"] = g.ctx().precision();
    o["i"] = g.i();
    ordered_json coeffs;
    for (const auto& [a, c] : g.coeffs()) coeffs[std::to_string(a)] = elem_to_json(c);
    o["coeffs"] = std::move(coeffs);
    return o.dump();
}

GammaFile load_gamma_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open gamma file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("gamma file '" + path + "': " + e.what());
    }
    if (!j.contains("p") || !j.contains("i") || !j.contains("coeffs"))
        throw ParseError("gamma file needs p, i and coeffs");
    u64 p = j["p"].get<u64>();
    long i = j["i"].get<long>();
    int prec = j.contains("precision") ? j["precision"].get<int>() : PrimeCtx::default_precision(p, i);
    GammaFile out;
    out.ctx = std::make_unique<PrimeCtx>(p, prec);
    std::map<long, KElem> coeffs;
    for (auto it = j["coeffs"].begin(); it != j["coeffs"].end(); ++it) {
        long a = 0;
        try {
            a = std::stol(it.key());
        } catch (const std::exception&) {
            throw ParseError("coefficient key '" + it.key() + "' is not an index");
        }
        coeffs.emplace(a, elem_from_json(*out.ctx, it.value()));
    }
    out.gamma = std::make_unique<HomGamma>(*out.ctx, i, std::move(coeffs));
    return out;
}

std::string lambda_report_json(const LambdaReport& rep) {
    ordered_json o;
    o["p"] = rep.p;
    o["i"] = rep.i;
    o["rho"] = rep.rho;
    o["v"] = rep.v;
    o["lambda"] = rep.lambda;
    o["y"] = rep.y_main;
    o["witness"] = {rep.witness[0], rep.witness[1], rep.witness[2]};
    return o.dump();
}

std::string lambda_report_text(const LambdaReport& rep) {
    std::ostringstream os;
    os << "p = " << rep.p << ", i = " << rep.i << ", rho = " << rep.rho << ", v = " << rep.v
       << "\nlambda = " << rep.lambda << "  (bounds " << rep.lower_bound << " <= lambda <= "
       << rep.upper_bound << ")\ny = " << rep.y_main << "\nwitness = (" << rep.witness[0] << ", "
       << rep.witness[1] << ", " << rep.witness[2] << ")\n";
    return os.str();
}

std::string lie_ring_json(const LieRing& L) {
    ordered_json o;
    o["p"] = L.p();
    o["i"] = L.i();
    o["m"] = L.m();
    o["orders"] = L.orders();
    ordered_json br;
    for (int j = 0; j < L.rank(); ++j)
        for (int k = j + 1; k < L.rank(); ++k)
            br[std::to_string(j) + "," + std::to_string(k)] = L.bracket_coeffs(j, k);
    o["brackets"] = std::move(br);
    return o.dump();
}

// ---------------------------------------------------------------------------
// verify suites

namespace {

constexpr u64 kSuitePrimes[] = {5, 7, 11, 13};

struct TrialOutcome {
    bool failed = false;
    std::string detail;
};

u64 trial_seed(u64 seed, int trial) { return seed ^ (0x51d3f29c95a7b1e5ULL * (trial + 1)); }

long binom_mod(long n, long k, long p) {
    if (k < 0 || k > n) return 0;
    u64 exact = 1; // n < 32 here, so this stays well inside u64
    for (long t = 1; t <= k; ++t) exact = exact * static_cast<u64>(n - k + t) / static_cast<u64>(t);
    return static_cast<long>(exact % static_cast<u64>(p));
}

std::string describe_gamma(const HomGamma& g) {
    return gamma_to_json_string(g);
}

TrialOutcome check_table_laws(const HomGamma& g) {
    const CoeffTable& t = g.coeff_table();
    const long i = g.i();
    const int d = t.size();
    const long p = static_cast<long>(g.ctx().p());
    for (long j = i; j < i + d; ++j) {
        if (t.at(j, j) != 0) return {true, "diagonal a(j,j) != 0 at j=" + std::to_string(j)};
        for (long k = i; k < i + d; ++k) {
            if ((t.at(j, k) + t.at(k, j)) % p != 0)
                return {true, "antisymmetry fails at (" + std::to_string(j) + "," + std::to_string(k) + ")"};
            if (t.at(j, k) != (t.at(j + 1, k) + t.at(j, k + 1)) % p)
                return {true, "shift recurrence fails at (" + std::to_string(j) + "," + std::to_string(k) + ")"};
        }
        if (t.at(j, j + 1) != t.at(j, j + 2))
            return {true, "a(j,j+1) != a(j,j+2) at j=" + std::to_string(j)};
        if (t.at(j, j + d - 2) != t.at(j + d - 1, j + d - 2))
            return {true, "a(j,j+d-2) != a(j+d-1,j+d-2) at j=" + std::to_string(j)};
    }
    // periodicity against a fresh evaluation at shifted indices
    long rho = t.rho();
    for (long k = i; k < i + d; ++k) {
        KElem img = g.eval(KElem::kappa_pow(g.ctx(), i + d), KElem::kappa_pow(g.ctx(), k));
        int direct = img.leading_coeff(i + d + k + rho);
        if (direct != t.at(i + d, k))
            return {true, "period-d recomputation mismatch at k=" + std::to_string(k)};
    }
    return {};
}

TrialOutcome check_nonvanishing_row(const HomGamma& g) {
    const CoeffTable& t = g.coeff_table();
    const long i = g.i();
    for (long j = i; j < i + t.size(); ++j)
        if (t.at(j, j + 1) != 0) return {};
    return {true, "all a(j,j+1) vanish in the window"};
}

TrialOutcome check_binomial_identity(const HomGamma& g) {
    const CoeffTable& t = g.coeff_table();
    const long i = g.i();
    const int d = t.size();
    const long p = static_cast<long>(g.ctx().p());
    for (long j = i; j < i + d; ++j)
        for (long tt = 1; tt < d; ++tt) {
            long sum = 0;
            for (long u = 0; u <= (tt - 1) / 2; ++u) {
                long term = binom_mod(tt - u - 1, u, p) * t.c(j + u) % p;
                sum = (u % 2 == 0) ? (sum + term) % p : (sum - term % p + p) % p;
            }
            if (t.at(j + tt, j) != sum)
                return {true, "first-column recurrence fails at j=" + std::to_string(j) +
                                  ", t=" + std::to_string(tt)};
        }
    return {};
}

TrialOutcome check_jtable_laws(const HomGamma& g, SplitMix64& rng) {
    JTable t(g);
    const long i = g.i();
    const int d = t.size();
    const long p = static_cast<long>(g.ctx().p());
    for (long j = i; j < i + d; ++j)
        for (long k = i; k < i + d; ++k)
            for (long l = i; l < i + d; ++l) {
                int v = t.at(j, k, l);
                if (v != t.at(l, j, k) || (v + t.at(k, j, l)) % p != 0)
                    return {true, "J symmetry fails at (" + std::to_string(j) + "," +
                                      std::to_string(k) + "," + std::to_string(l) + ")"};
                int rec = static_cast<int>((static_cast<long>(t.at(j + 1, k, l)) + t.at(j, k + 1, l) +
                                            t.at(j, k, l + 1)) %
                                           p);
                if (v != rec)
                    return {true, "J recurrence fails at (" + std::to_string(j) + "," +
                                      std::to_string(k) + "," + std::to_string(l) + ")"};
            }
    // leading-digit consistency against full arithmetic on sampled triples
    long rho = g.offset();
    for (int s = 0; s < 8; ++s) {
        long j = i + static_cast<long>(rng.below(d));
        long k = i + static_cast<long>(rng.below(d));
        long l = i + static_cast<long>(rng.below(d));
        if (j == k || k == l || j == l) continue;
        KElem jv = jacobi_value(g, KElem::kappa_pow(g.ctx(), j), KElem::kappa_pow(g.ctx(), k),
                                KElem::kappa_pow(g.ctx(), l));
        long level = j + k + l + 2 * rho;
        int table = t.at(j, k, l);
        long v = jv.val();
        if (table != 0) {
            if (v != level || jv.leading_coeff(level) != table)
                return {true, "nonzero J(j,k,l) does not match the full value at (" +
                                  std::to_string(j) + "," + std::to_string(k) + "," +
                                  std::to_string(l) + ")"};
        } else if (v != kValInfinity && v <= level) {
            return {true, "vanishing J(j,k,l) but full value has val <= j+k+l+2rho"};
        }
    }
    return {};
}

TrialOutcome check_bounds(const HomGamma& g) {
    LambdaReport rep = lambda_report(g);
    long p = static_cast<long>(rep.p);
    if (!(3 * rep.i + 13 - 2 * p <= rep.lower_bound && rep.lower_bound <= rep.lambda &&
          rep.lambda <= rep.upper_bound))
        return {true, "bound sandwich fails: lambda=" + std::to_string(rep.lambda)};
    if (rep.y_main < 0) return {true, "y < 0"};
    return {};
}

TrialOutcome check_crosscheck(const PrimeCtx& ctx, const HomGamma& g, SplitMix64& rng) {
    WeightCtx w(ctx);
    long base = g.i();
    long x = base + static_cast<long>(rng.below(ctx.d()));
    long y = base + static_cast<long>(rng.below(ctx.d() + 2));
    long z = base + static_cast<long>(rng.below(ctx.d() + 4));
    if (x == y) y += ctx.d() + 4;
    if (x == z || y == z) z += 2 * ctx.d() + 6;
    CrosscheckResult res = crosscheck(w, g, x, y, z);
    if (!res.gamma_path_ok)
        return {true, "eigenvector paths disagree at (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) +
                          "), discrepancy val = " + std::to_string(res.discrepancy_val)};
    if (!res.membership_ok)
        return {true, "mod-p membership criterion disagrees at (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) + ")"};
    return {};
}

TrialOutcome check_liering(const PrimeCtx& ctx, const HomGamma& g) {
    LambdaReport rep = lambda_report(g);
    LieRing at_lambda(g, rep.lambda);
    if (at_lambda.order_exponent() != rep.lambda - rep.i)
        return {true, "|L| != p^(m-i) at m=lambda"};
    auto jc = at_lambda.check_jacobi();
    if (!jc.ok)
        return {true, "Jacobi fails at m=lambda, witness (" + std::to_string(jc.witness[0]) + "," +
                          std::to_string(jc.witness[1]) + "," + std::to_string(jc.witness[2]) + ")"};
    LieRing beyond(g, rep.lambda + 1);
    auto jc2 = beyond.check_jacobi();
    if (jc2.ok) return {true, "Jacobi still passes at m=lambda+1"};
    if (g.i() > static_cast<long>(ctx.p()) - 1) {
        auto series = at_lambda.lower_central_series();
        if (series.nilpotency_class > static_cast<int>(ctx.p()) - 1)
            return {true, "class " + std::to_string(series.nilpotency_class) + " exceeds p-1"};
    }
    return {};
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"lem53",      "lem56",  "lem59",
                                                   "jlemma",     "bounds", "crosscheck",
                                                   "fgidentities", "liering"};
    return names;
}

VerifyReport run_verify(const std::string& suite, int trials, u64 seed) {
    const auto& names = verify_suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UnknownSuite("unknown suite '" + suite + "'");

    VerifyReport rep;
    rep.suite = suite;

    if (suite == "fgidentities") {
        // deterministic full scan, no sampling
        for (u64 p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
            for (long a = 2; a <= static_cast<long>(p - 1) / 2; ++a) {
                ++rep.trials;
                FGConstants c = fg_constants(p, a);
                bool ok = c.factorization_residual == 0;
                for (long i : {0L, 1L, 2L}) {
                    FGValue v1 = f_g(p, a, i, i, i + 1, i + 2);
                    ok = ok && v1.f == c.f1 && v1.g == c.g1;
                    FGValue v2 = f_g(p, a, i, i, i + 1, i + 4);
                    ok = ok && v2.f == c.f2 && v2.g == c.g2;
                }
                if (!ok) {
                    ++rep.failures;
                    if (rep.first_failure.empty())
                        rep.first_failure =
                            "p=" + std::to_string(p) + " a=" + std::to_string(a);
                }
            }
        }
        return rep;
    }

    rep.trials = trials;
    std::vector<TrialOutcome> outcomes(static_cast<size_t>(trials));

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        TrialOutcome& out = outcomes[static_cast<size_t>(t)];
        try {
            SplitMix64 rng(trial_seed(seed, t));
            u64 p = kSuitePrimes[static_cast<size_t>(t) % 4];
            if (suite == "liering") {
                long i = static_cast<long>(p) - 1 + rng.range(0, 5);
                PrimeCtx ctx(p, PrimeCtx::default_precision(p, i));
                bool mixed = (t % 2 == 1) && p > 5;
                if (mixed) {
                    HomGamma g = random_surjective_gamma(ctx, i, rng);
                    out = check_liering(ctx, g);
                    if (out.failed) out.detail += " gamma=" + describe_gamma(g);
                } else {
                    long a = 2 + static_cast<long>(rng.below((p - 3) / 2));
                    HomGamma g = HomGamma::one_param(ctx, i, a);
                    out = check_liering(ctx, g);
                    if (out.failed) out.detail += " gamma=theta_" + std::to_string(a);
                }
            } else if (suite == "crosscheck") {
                long i = rng.range(0, 4);
                PrimeCtx ctx(p, PrimeCtx::default_precision(p, i) + 2);
                if (t % 2 == 0) {
                    HomGamma g = random_surjective_gamma(ctx, i, rng);
                    out = check_crosscheck(ctx, g, rng);
                    if (out.failed) out.detail += " gamma=" + describe_gamma(g);
                } else {
                    long a = 2 + static_cast<long>(rng.below((p - 3) / 2));
                    std::vector<u64> mant(ctx.d());
                    for (auto& c : mant) c = rng.below(ctx.modulus());
                    if (mant[0] % p == 0) mant[0] += 1;
                    HomGamma g = HomGamma::one_param(ctx, i, a, KElem::from_parts(ctx, 0, mant));
                    out = check_crosscheck(ctx, g, rng);
                    if (out.failed) out.detail += " gamma=" + describe_gamma(g);
                }
            } else {
                long i = rng.range(0, 6);
                PrimeCtx ctx(p, PrimeCtx::default_precision(p, i));
                HomGamma g = random_surjective_gamma(ctx, i, rng);
                if (suite == "lem53") out = check_table_laws(g);
                else if (suite == "lem56") out = check_nonvanishing_row(g);
                else if (suite == "lem59") out = check_binomial_identity(g);
                else if (suite == "jlemma") out = check_jtable_laws(g, rng);
                else if (suite == "bounds") out = check_bounds(g);
                if (out.failed) out.detail += " gamma=" + describe_gamma(g);
            }
            if (out.failed)
                out.detail = "trial=" + std::to_string(t) + " p=" + std::to_string(p) + " " + out.detail;
        } catch (const std::exception& e) {
            out.failed = true;
            out.detail = "trial=" + std::to_string(t) + " exception: " + e.what();
        }
    }

    for (const auto& out : outcomes) {
        if (out.failed) {
            ++rep.failures;
            if (rep.first_failure.empty()) rep.first_failure = out.detail;
        }
    }
    return rep;
}

} // namespace liep
