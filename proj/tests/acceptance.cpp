// Acceptance suite: every gate below must hold exactly (no tolerances beyond
// the stated trial counts). Prints one line per criterion and exits nonzero
// if any of them fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "liep/eigenframe.hpp"
#include "liep/survey.hpp"
#include "support.hpp"

using namespace liep;

namespace {

struct Gate {
    std::string name;
    std::function<bool(std::string&)> run;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) return "<missing file>";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kGoldenDir = std::string(LIEP_SOURCE_DIR) + "/tests/golden/";

KElem random_o_elem(const PrimeCtx& ctx, SplitMix64& rng) {
    std::vector<u64> c(ctx.d());
    for (auto& x : c) x = rng.below(ctx.modulus());
    KElem e = KElem::from_parts(ctx, 0, std::move(c));
    for (u64 t = rng.below(3); t > 0; --t) e = e.scaled(ctx.p());
    return e * KElem::kappa_pow(ctx, static_cast<long>(rng.below(ctx.d() + 1)));
}

bool golden_tables(std::string& note) {
    struct Row {
        TableKind kind;
        long a;
        std::string file;
    };
    const Row rows[] = {{TableKind::ATable, 2, "atable_p7_a2_i0.txt"},
                        {TableKind::ATable, 3, "atable_p7_a3_i0.txt"},
                        {TableKind::JTable, 2, "jtable_p7_a2_i0.txt"},
                        {TableKind::JTable, 3, "jtable_p7_a3_i0.txt"}};
    for (const Row& r : rows) {
        std::string got = emit_table(r.kind, 7, r.a, 0, 0, 0, Format::Text);
        std::string want = slurp(kGoldenDir + r.file);
        if (got != want) {
            note = "mismatch against " + r.file;
            return false;
        }
    }
    note = "4 matrices bit-exact";
    return true;
}

bool p5_family(std::string& note) {
    auto rows = survey(5, {2}, 0, 11, 0);
    for (const auto& r : rows) {
        if (r.lambda != 3 * r.i + 3 || r.y != 0) {
            note = "row i=" + std::to_string(r.i) + " has lambda=" + std::to_string(r.lambda);
            return false;
        }
    }
    note = "12 rows, lambda = 3i+3 and y = 0 throughout";
    return true;
}

bool experiment_lists(std::string& note) {
    struct Hit {
        u64 p;
        long a, i;
    };
    const std::vector<Hit> expected = {{7, 2, 3},  {7, 3, 2},  {7, 3, 5},  {11, 4, 10},
                                       {13, 2, 4}, {13, 4, 2}, {13, 4, 5}, {13, 4, 8},
                                       {13, 4, 11}, {13, 5, 4}, {13, 6, 3}, {13, 6, 9}};
    int rows_checked = 0;
    for (u64 p : {7, 11, 13}) {
        std::vector<long> a_all;
        for (long a = 2; a <= static_cast<long>(p - 1) / 2; ++a) a_all.push_back(a);
        auto rows = survey(p, a_all, 0, 13, 0);
        for (const auto& r : rows) {
            ++rows_checked;
            long y2 = r.lambda - (3 * r.i + 3);
            if (y2 < 0 || y2 > 2) {
                note = "y=" + std::to_string(y2) + " outside {0,1,2} at p=" + std::to_string(p) +
                       " a=" + r.a_label + " i=" + std::to_string(r.i);
                return false;
            }
            long a = std::stol(r.a_label);
            bool listed = false;
            for (const Hit& h : expected)
                if (h.p == p && h.a == a && h.i == r.i) listed = true;
            if (listed && y2 != 2) {
                note = "listed pair (" + std::to_string(p) + "," + std::to_string(a) + "," +
                       std::to_string(r.i) + ") has y=" + std::to_string(y2);
                return false;
            }
        }
    }
    note = std::to_string(rows_checked) + " one-parameter rows, y in {0,1,2}; all 12 listed pairs have y=2";
    return true;
}

bool bound_sandwich(std::string& note) {
    VerifyReport rep = run_verify("bounds", 400, 20260808);
    note = std::to_string(rep.trials) + " trials (100 per prime), " + std::to_string(rep.failures) +
           " failures";
    if (rep.failures) note += "; first: " + rep.first_failure;
    return rep.failures == 0;
}

bool identity_suites(std::string& note) {
    for (const char* suite : {"lem53", "lem56", "lem59", "jlemma"}) {
        VerifyReport rep = run_verify(suite, 100, 8675309);
        if (rep.failures != 0) {
            note = std::string(suite) + ": " + rep.first_failure;
            return false;
        }
    }
    note = "lem53/lem56/lem59/jlemma, 100 trials each, zero failures";
    return true;
}

bool dual_path(std::string& note) {
    VerifyReport rep = run_verify("crosscheck", 50, 424242);
    note = std::to_string(rep.trials) + " trials, " + std::to_string(rep.failures) + " failures";
    if (rep.failures) note += "; first: " + rep.first_failure;
    return rep.failures == 0;
}

bool closed_forms(std::string& note) {
    VerifyReport rep = run_verify("fgidentities", 0, 0);
    note = std::to_string(rep.trials) + " (p,a) pairs over 5 <= p <= 31";
    if (rep.failures) note += "; first: " + rep.first_failure;
    return rep.failures == 0;
}

bool ring_boundary(std::string& note) {
    VerifyReport rep = run_verify("liering", 20, 1337);
    note = std::to_string(rep.trials) + " instances, " + std::to_string(rep.failures) + " failures";
    if (rep.failures) note += "; first: " + rep.first_failure;
    return rep.failures == 0;
}

bool kernel_oracle(std::string& note) {
    SplitMix64 rng(90210);
    int checked = 0;
    for (u64 p : {5, 7}) {
        PrimeCtx ctx(p, 6);
        oracle::Ring R(p, 6);
        for (int t = 0; t < 200; ++t) {
            KElem a = random_o_elem(ctx, rng);
            long v = a.val();
            if (v == kValInfinity) continue;
            KElem flat = a.rebased(0);
            std::vector<u64> coeffs(flat.coeffs().begin(), flat.coeffs().end());
            if (!oracle::in_pideal(R, coeffs, v) || oracle::in_pideal(R, coeffs, v + 1)) {
                note = "digit valuation disagrees with membership at p=" + std::to_string(p) +
                       " trial " + std::to_string(t);
                return false;
            }
            ++checked;
        }
        for (int t = 0; t < 60; ++t) {
            KElem a = random_o_elem(ctx, rng);
            KElem b = random_o_elem(ctx, rng);
            long va = a.val(), vb = b.val();
            if (va == kValInfinity || vb == kValInfinity) continue;
            if (va + vb < ctx.capacity() - 2 && (a * b).certified_val() != va + vb) {
                note = "mul valuation not additive at p=" + std::to_string(p);
                return false;
            }
            long j = 1 + static_cast<long>(rng.below(p - 1));
            if (a.galois(j).certified_val() != va) {
                note = "galois changed a valuation at p=" + std::to_string(p);
                return false;
            }
            ++checked;
        }
    }
    note = std::to_string(checked) + " membership/arithmetic checks";
    return true;
}

} // namespace

int main() {
    std::vector<Gate> gates = {
        {"1 golden tables p=7 (atable/jtable, theta_2/theta_3)", golden_tables},
        {"2 p=5 family: lambda = 3i+3, y = 0 for i in 0..11", p5_family},
        {"3 experiment lists and y in {0,1,2} sweep", experiment_lists},
        {"4 bound sandwich on 100 random gammas per prime", bound_sandwich},
        {"5 table/Jacobi identity suites (100 trials each)", identity_suites},
        {"6 dual-path agreement and membership criterion (50 trials)", dual_path},
        {"7 closed-form identities for all p <= 31", closed_forms},
        {"8 Lie ring boundary at m = lambda (20 instances)", ring_boundary},
        {"9 kernel valuation oracle and arithmetic laws", kernel_oracle},
    };

    int failures = 0;
    for (Gate& gate : gates) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = gate.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(t1 - t0).count();
        std::printf("criterion %-55s %s (%.2f s)%s%s\n", gate.name.c_str(), ok ? "PASS" : "FAIL",
                    secs, note.empty() ? "" : " -- ", note.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", gates.size());
    return failures == 0 ? 0 : 1;
}
