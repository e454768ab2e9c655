#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "liep/eigenframe.hpp"
#include "liep/survey.hpp"

namespace {

using namespace liep;

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open output file '" + out_path + "'");
    out << text;
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw ParseError("range must look like LO..HI");
    try {
        return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("range must look like LO..HI");
    }
}

std::vector<long> parse_a_set(const std::string& s, u64 p) {
    std::vector<long> out;
    if (s == "all") {
        for (long a = 2; a <= static_cast<long>(p - 1) / 2; ++a) out.push_back(a);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ParseError("bad index list '" + s + "'");
        }
    }
    if (out.empty()) throw ParseError("empty index list");
    return out;
}

struct GammaArgs {
    u64 p = 0;
    long a = 0;
    long i = 0;
    int precision = 0;
    std::string gamma_file;
};

// Builds gamma either from --gamma FILE or from (--p, --a, --i).
struct LoadedGamma {
    GammaFile file;            // owns when loaded from file
    std::unique_ptr<PrimeCtx> ctx;
    std::unique_ptr<HomGamma> gamma;
    const HomGamma& get() const { return file.gamma ? *file.gamma : *gamma; }
    const PrimeCtx& context() const { return file.ctx ? *file.ctx : *ctx; }
};

LoadedGamma make_gamma(const GammaArgs& args) {
    LoadedGamma out;
    if (!args.gamma_file.empty()) {
        out.file = load_gamma_file(args.gamma_file);
        return out;
    }
    if (args.p == 0 || args.a == 0) throw ParseError("need either --gamma FILE or --p with --a");
    int prec = args.precision > 0 ? args.precision : PrimeCtx::default_precision(args.p, args.i);
    out.ctx = std::make_unique<PrimeCtx>(args.p, prec);
    out.gamma = std::make_unique<HomGamma>(HomGamma::one_param(*out.ctx, args.i, args.a));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-adic cyclotomic arithmetic and finite Lie p-ring invariants"};
    app.require_subcommand(1);

    u64 p = 0;
    long i = 0, m = 0, a_single = 2;
    int precision = 0, span = 0, trials = 100, jobs = 0;
    u64 seed = 1;
    bool timings = false;
    std::string a_list = "all", i_range, fmt_s = "text", out_path, gamma_file, suite;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--precision", precision, "coefficient precision N (0 = auto)");
        cmd->add_option("--format", fmt_s, "text|csv|json")->capture_default_str();
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
        cmd->add_option("--jobs", jobs, "worker threads (0 = library default)");
    };

    CLI::App* c_survey = app.add_subcommand("survey", "lambda/y over a grid of (a, i)");
    c_survey->add_option("--p", p, "prime >= 5")->required();
    c_survey->add_option("--a", a_list, "comma-separated indices or 'all'")->capture_default_str();
    c_survey->add_option("--i-range", i_range, "levels LO..HI")->required();
    c_survey->add_flag("--timings", timings, "report per-row wall time");
    add_common(c_survey);

    CLI::App* c_atable = app.add_subcommand("atable", "leading-coefficient matrix a(j,k)");
    CLI::App* c_jtable = app.add_subcommand("jtable", "Jacobi matrix J(j,j+1,l)");
    for (CLI::App* cmd : {c_atable, c_jtable}) {
        cmd->add_option("--p", p, "prime >= 5")->required();
        cmd->add_option("--a", a_single, "index of theta_a")->required();
        cmd->add_option("--i", i, "level");
        cmd->add_option("--span", span, "matrix size (default d)");
        add_common(cmd);
    }

    CLI::App* c_lambda = app.add_subcommand("lambda", "certified lambda(gamma) report");
    c_lambda->add_option("--p", p, "prime >= 5");
    c_lambda->add_option("--a", a_single, "index of theta_a");
    c_lambda->add_option("--i", i, "level");
    c_lambda->add_option("--gamma", gamma_file, "gamma file (json)");
    add_common(c_lambda);

    CLI::App* c_ring = app.add_subcommand("liering", "materialize L_{i,m}(gamma)");
    c_ring->add_option("--p", p, "prime >= 5");
    c_ring->add_option("--a", a_single, "index of theta_a");
    c_ring->add_option("--i", i, "level");
    c_ring->add_option("--m", m, "quotient depth (default lambda)");
    c_ring->add_option("--gamma", gamma_file, "gamma file (json)");
    add_common(c_ring);

    CLI::App* c_verify = app.add_subcommand("verify", "property suites");
    c_verify->add_option("suite", suite, "one of: lem53 lem56 lem59 jlemma bounds crosscheck fgidentities liering")
        ->required();
    c_verify->add_option("--trials", trials, "trial count")->capture_default_str();
    c_verify->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    add_common(c_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif

    try {
        Format fmt = parse_format(fmt_s);

        if (app.got_subcommand(c_survey)) {
            auto [lo, hi] = parse_range(i_range);
            auto rows = survey(p, parse_a_set(a_list, p), lo, hi, precision);
            write_out(format_rows(rows, fmt, timings), out_path);
        } else if (app.got_subcommand(c_atable) || app.got_subcommand(c_jtable)) {
            TableKind kind = app.got_subcommand(c_atable) ? TableKind::ATable : TableKind::JTable;
            write_out(emit_table(kind, p, a_single, i, span, precision, fmt), out_path);
        } else if (app.got_subcommand(c_lambda)) {
            GammaArgs ga{p, a_single, i, precision, gamma_file};
            if (!gamma_file.empty()) ga.a = 0, ga.p = 0;
            else if (p == 0) throw ParseError("need either --gamma FILE or --p with --a");
            LoadedGamma lg = make_gamma(ga);
            LambdaReport rep = lambda_report(lg.get());
            write_out(fmt == Format::Json ? lambda_report_json(rep) + "\n" : lambda_report_text(rep),
                      out_path);
        } else if (app.got_subcommand(c_ring)) {
            GammaArgs ga{p, a_single, i, precision, gamma_file};
            if (!gamma_file.empty()) ga.a = 0, ga.p = 0;
            else if (p == 0) throw ParseError("need either --gamma FILE or --p with --a");
            LoadedGamma lg = make_gamma(ga);
            long depth = m;
            if (depth == 0) depth = lambda_report(lg.get()).lambda;
            LieRing ring(lg.get(), depth);
            if (fmt == Format::Json) {
                write_out(lie_ring_json(ring) + "\n", out_path);
            } else {
                std::ostringstream os;
                os << "p = " << ring.p() << ", i = " << ring.i() << ", m = " << ring.m()
                   << ", |L| = " << ring.p() << "^" << ring.order_exponent() << "\norders:";
                for (int o : ring.orders()) os << ' ' << o;
                auto jc = ring.check_jacobi();
                os << "\njacobi: " << (jc.ok ? "pass" : "fail");
                if (!jc.ok)
                    os << " at (" << jc.witness[0] << "," << jc.witness[1] << "," << jc.witness[2] << ")";
                if (jc.ok) {
                    auto series = ring.lower_central_series();
                    os << "\nlower central series exponents:";
                    for (long e : series.order_exponents) os << ' ' << e;
                    os << "\nclass: " << series.nilpotency_class;
                }
                os << '\n';
                write_out(os.str(), out_path);
            }
        } else if (app.got_subcommand(c_verify)) {
            VerifyReport rep = run_verify(suite, trials, seed);
            std::ostringstream os;
            os << "suite " << rep.suite << ": " << rep.trials << " trials, " << rep.failures
               << " failures\n";
            if (rep.failures > 0) os << "first failure: " << rep.first_failure << '\n';
            write_out(os.str(), out_path);
            if (rep.failures > 0) return 5;
        }
    } catch (const PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotSurjective& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const UnknownSuite& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
