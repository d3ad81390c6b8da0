// Acceptance suite: runs the full set of exit criteria, one line per
// criterion, and exits nonzero if any fail. Pass a criterion number to run
// just that one.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hardinian/asymptotics.hpp"
#include "hardinian/counting.hpp"
#include "hardinian/enumerate.hpp"
#include "hardinian/oeis.hpp"
#include "hardinian/recurrence.hpp"

using namespace hardinian;

namespace {

const std::filesystem::path fixtures_dir{HARDINIAN_FIXTURES_DIR};

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Failure{"cannot open fixture " + p.string()};
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

mpz_class pow4(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 4, static_cast<unsigned long>(e));
    return p;
}

// 1: r=1 closed form vs exhaustive enumeration on the diagonal.
void criterion1() {
    for (int n = 1; n <= 7; ++n) {
        const mpz_class expect = (pow4(n - 1) - 1) / 3;
        const mpz_class got = count_brute(1, n, n);
        require(got == expect, "count_brute(1," + std::to_string(n) + "," + std::to_string(n) +
                                   ") = " + got.get_str() + ", want " + expect.get_str());
    }
}

// 2: r=1 rectangular closed form vs exhaustive enumeration.
void criterion2() {
    for (int n = 1; n <= 7; ++n)
        for (int k = 1; k <= n; ++k) {
            const mpz_class expect = pow4(k - 1) * (n - k) + (pow4(k - 1) - 1) / 3;
            const mpz_class got = count_brute(1, n, k);
            require(got == expect, "count_brute(1," + std::to_string(n) + "," +
                                       std::to_string(k) + ") = " + got.get_str() + ", want " +
                                       expect.get_str());
        }
}

// 3: five-way method agreement for the r=1 diagonal on n = 1..20.
void criterion3() {
    for (int n = 1; n <= 20; ++n) {
        const mpz_class expect = h1_diag_closed(n);
        require(h1_pathsum(n) == expect, "h1_pathsum mismatch at n=" + std::to_string(n));
        require(h_diag_gv(1, n) == expect, "h_diag_gv mismatch at n=" + std::to_string(n));
        require(count_dp(1, n, n) == expect, "count_dp mismatch at n=" + std::to_string(n));
        if (n >= 2)
            require(h1_diag_bordered(n) == expect,
                    "h1_diag_bordered mismatch at n=" + std::to_string(n));
    }
}

// 4: minor tables vs direct Bareiss minors; Dodgson chain to n = 12.
void criterion4() {
    for (int n = 1; n <= 10; ++n) {
        const IntMatrix m = build_M(n);
        const MinorTable t = minor_table(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                require(t.at(i, j) == minor_det(m, {i}, {j}),
                        "minor_table(" + std::to_string(n) + ") wrong at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
    }
    MinorTable chain = minor_table(1);
    for (int n = 2; n <= 12; ++n) chain = dodgson_extend(chain);
    require(chain.delta == minor_table(12).delta, "dodgson chain does not reproduce n=12");
}

// 5: Jacobi identity vs direct minors, exhaustively for r in {2,3}, n <= 8.
void criterion5() {
    for (int n = 2; n <= 8; ++n) {
        const IntMatrix m = build_M(n);
        const MinorTable t = minor_table(n);
        for (int r = 2; r <= 3 && r <= n; ++r) {
            std::vector<int> rows(r), cols(r);
            std::function<void(int, int)> walk_rows = [&](int pos, int lo) {
                if (pos == r) {
                    std::function<void(int, int)> walk_cols = [&](int cpos, int clo) {
                        if (cpos == r) {
                            require(jacobi_minor(t, rows, cols) == minor_det(m, rows, cols),
                                    "jacobi_minor mismatch at n=" + std::to_string(n));
                            return;
                        }
                        for (int c = clo; c < n; ++c) {
                            cols[cpos] = c;
                            walk_cols(cpos + 1, c + 1);
                        }
                    };
                    walk_cols(0, 0);
                    return;
                }
                for (int v = lo; v < n; ++v) {
                    rows[pos] = v;
                    walk_rows(pos + 1, v + 1);
                }
            };
            walk_rows(0, 0);
        }
    }
}

// 6: r=2 oracle agreement.
void criterion6() {
    for (int n = 1; n <= 6; ++n)
        require(h_diag_gv(2, n) == count_brute(2, n, n),
                "gv vs brute mismatch at n=" + std::to_string(n));
    for (int n = 1; n <= 8; ++n)
        require(h_diag_gv(2, n) == count_dp(2, n, n),
                "gv vs dp mismatch at n=" + std::to_string(n));
    require(h_diag_gv(2, 4) == 19, "h_diag_gv(2,4) != 19");
}

// 7: the S1/S2 reformulation, including the hand value S1(2)-S2(2) = 53-34.
void criterion7() {
    // independent S1/S2 evaluation for m = 2, straight from the definition
    auto s = [](int u, int v) {
        mpz_class acc = 0;
        for (int i1 = 0; i1 <= u; ++i1)
            for (int i2 = i1 + 1; i2 <= v; ++i2) acc += binomial(u, i1) * binomial(v, i2);
        return acc;
    };
    mpz_class s1 = 0, s2 = 0;
    for (int u = 0; u <= 2; ++u)
        for (int v = 0; v <= 2; ++v) {
            s1 += s(u, v) * s(u, v);
            s2 += s(u, v) * s(v, u);
        }
    require(s1 == 53 && s2 == 34, "hand values S1(2)=53, S2(2)=34 not reproduced");
    require(h2_via_s1s2(4) == 19, "h2_via_s1s2(4) != 19");
    for (int n = 2; n <= 30; ++n)
        require(h2_via_s1s2(n) == h_diag_gv(2, n),
                "s1s2 vs gv mismatch at n=" + std::to_string(n));
}

// 8: the order-5 recurrence verifies on computed terms and extends exactly.
void criterion8() {
    const Sequence terms = diag_sequence(2, 30, CountMethod::jacobi);
    const PRecurrence rec = kk_recurrence();
    const VerifyReport report = verify(rec, terms);
    require(report.pass, "kk recurrence fails at window n=" + std::to_string(report.first_failing()));
    require(report.windows.front().n == rec.valid_from, "verification does not start at valid_from");

    Sequence seed = terms;
    seed.values.resize(5);
    const Sequence extended = extend(rec, seed, 40);
    const Sequence direct = diag_sequence(2, 40, CountMethod::jacobi);
    for (int n = 1; n <= 40; ++n)
        require(extended.at(n) == direct.at(n), "extension mismatch at n=" + std::to_string(n));
}

// 9: guessing recovers the r=1 recurrence from 12 terms, and an
// order-5/degree-9 guess on 90 extended r=2 terms verifies on 10 more.
void criterion9() {
    const Sequence h1 = diag_sequence(1, 12, CountMethod::closed);
    const auto small = guess(h1, 2, 0);
    bool found = false;
    for (const auto& rec : small) {
        if (rec.order != 2) continue;
        const mpz_class a = poly_eval(rec.coeffs[0], 0), b = poly_eval(rec.coeffs[1], 0),
                        c = poly_eval(rec.coeffs[2], 0);
        if (a * (-5) == b * 4 && c * 4 == a) found = true;
    }
    require(found, "order-2 guess did not recover f(n+2) - 5f(n+1) + 4f(n)");

    const Sequence seed = diag_sequence(2, 10, CountMethod::jacobi);
    const Sequence full = extend(kk_recurrence(), seed, 100);
    Sequence train = full;
    train.values.resize(90);
    const auto big = guess(train, 5, 9);
    require(!big.empty(), "order-5/degree-9 guess found nothing");
    bool verified = false;
    for (const auto& rec : big) verified = verified || verify(rec, full).pass;
    require(verified, "no order-5/degree-9 candidate verifies on the held-out terms");
}

// 10: r=3 routes against the enumeration oracle and each other.
void criterion10() {
    for (int n = 1; n <= 6; ++n)
        require(h_diag_gv(3, n) == count_brute(3, n, n),
                "gv vs brute mismatch at n=" + std::to_string(n));
    for (int n = 2; n <= 12; ++n)
        require(h3_diag_bordered(n) == h_diag_gv(3, n),
                "bordered vs gv mismatch at n=" + std::to_string(n));
}

// 11: asymptotic constants within the stated tolerances.
void criterion11() {
    {
        const Sequence seq = diag_sequence(1, 30, CountMethod::closed);
        const AsymptoticFit fit = fit_constant(seq, 1, 3, 60);
        const mpf_class target = paper_constant(1).value(60);
        mpf_class rel = abs(mpf_class(fit.c_extrapolated - target)) / target;
        require(rel < 1e-6, "r=1 fit misses 1/12 beyond 1e-6");
    }
    {
        const Sequence seed = diag_sequence(2, 10, CountMethod::jacobi);
        const Sequence seq = extend(kk_recurrence(), seed, 60);
        const AsymptoticFit fit = fit_constant(seq, 2, 3, 60);
        const mpf_class target = paper_constant(2).value(60);
        mpf_class rel = abs(mpf_class(fit.c_extrapolated - target)) / target;
        require(rel < 0.05, "r=2 fit misses 1/(2^2 3^4 pi) beyond 5%");
    }
}

// 12: polynomial-in-n degree detection for fixed k.
void criterion12() {
    for (int k = 3; k <= 6; ++k) {
        Sequence seq;
        seq.offset = 1;
        for (int n = 1; n <= 20; ++n) seq.values.push_back(h1_rect_closed(n, k));
        const PolyDegreeReport report = poly_degree_check(1, k, seq);
        require(report.polynomial && report.degree == 1,
                "r=1 k=" + std::to_string(k) + ": expected tail degree 1");
    }
    for (int k = 3; k <= 5; ++k) {
        Sequence seq;
        seq.offset = 1;
        for (int n = 1; n <= 25; ++n) seq.values.push_back(h_rect(2, n, k, CountMethod::dp));
        const PolyDegreeReport report = poly_degree_check(2, k, seq);
        require(report.polynomial && report.degree == 2,
                "r=2 k=" + std::to_string(k) + ": expected tail degree 2");
        // exactly-zero third differences on the reported tail
        std::vector<mpz_class> diffs(seq.values.begin() +
                                         static_cast<long>(report.tail_start - seq.offset),
                                     seq.values.end());
        for (int level = 0; level < 3; ++level) {
            for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
            diffs.pop_back();
        }
        for (const auto& d : diffs)
            require(d == 0, "r=2 k=" + std::to_string(k) + ": third differences not exactly zero");
    }
}

// 13: b-file round trips and fixture cross-checks.
void criterion13() {
    for (const char* name : {"b253217.txt", "b253026.txt", "h1_diag_fixture.txt"}) {
        const std::string text = slurp(fixtures_dir / name);
        const BFile parsed = parse_bfile(text);
        std::string canonical;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            canonical += line;
            canonical += '\n';
        }
        require(write_bfile(parsed) == canonical,
                std::string("b-file round trip not byte-exact for ") + name);
    }

    {
        const BFile remote = parse_bfile(slurp(fixtures_dir / "h1_diag_fixture.txt"));
        const Sequence local = diag_sequence(1, static_cast<int>(remote.entries.size()),
                                             CountMethod::closed);
        require(crosscheck(local, remote).pass, "r=1 diagonal vs closed-form fixture failed");
    }
    {
        const BFile remote = parse_bfile(slurp(fixtures_dir / "b253217.txt"), "A253217");
        const Sequence local = diag_sequence(2, 20, CountMethod::jacobi);
        require(crosscheck(local, remote).pass, "A253217 fixture cross-check failed");
    }
    {
        const BFile remote = parse_bfile(slurp(fixtures_dir / "b253026.txt"), "A253026");
        Sequence local;
        local.offset = 1;
        for (long d = 2; local.values.size() < 60; ++d)
            for (long i = 1; i < d; ++i) local.values.push_back(h1_rect_closed(i, d - i));
        require(crosscheck(local, remote).pass, "A253026 fixture cross-check failed");
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"r=1 diagonal closed form vs brute force, n <= 7", criterion1},
        {"r=1 rectangle closed form vs brute force, k <= n <= 7", criterion2},
        {"r=1 five-method agreement, n <= 20", criterion3},
        {"minor tables vs direct minors, Dodgson chain to 12", criterion4},
        {"Jacobi identity vs direct minors, r in {2,3}, n <= 8", criterion5},
        {"r=2 oracle agreement (brute to 6, dp to 8)", criterion6},
        {"S1/S2 reformulation, n <= 30", criterion7},
        {"order-5 recurrence verifies and extends to n = 40", criterion8},
        {"guessing recovers r=1 and r=2 recurrences", criterion9},
        {"r=3 routes agree (brute to 6, bordered to 12)", criterion10},
        {"asymptotic constants for r = 1, 2", criterion11},
        {"polynomial tail degrees for fixed k", criterion12},
        {"OEIS b-file round trips and fixture cross-checks", criterion13},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int num = static_cast<int>(i) + 1;
        if (only != 0 && only != num) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criteria[i].second();
        } catch (const Failure& f) {
            error = f.message;
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << (error.empty() ? "[PASS]" : "[FAIL]") << " criterion " << num << ": "
             << criteria[i].first << " (" << std::fixed << std::setprecision(1) << seconds
             << "s)";
        if (!error.empty()) line << " -- " << error;
        std::cout << line.str() << std::endl;
        if (!error.empty()) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
