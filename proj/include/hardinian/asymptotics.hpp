#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sequence.hpp"

namespace hardinian {

namespace detail {

inline mp_bitcnt_t bits_for_digits(int digits) {
    if (digits < 10) digits = 10;
    return static_cast<mp_bitcnt_t>(digits * 3.3219280948873623 + 32);
}

// 100 decimal digits, far beyond every tolerance used here.
inline mpf_class pi_value(mp_bitcnt_t prec) {
    static const char* digits =
        "3.14159265358979323846264338327950288419716939937510"
        "58209749445923078164062862089986280348253421170679";
    return mpf_class(digits, prec);
}

}  // namespace detail

// An exact constant of the form 2^a * 3^b * pi^e.
struct PowerProduct {
    bool known = false;
    int pow2 = 0;
    int pow3 = 0;
    int pow_pi = 0;

    mpf_class value(int digits = 60) const {
        if (!known) throw std::logic_error("PowerProduct::value: constant is unknown");
        const mp_bitcnt_t prec = detail::bits_for_digits(digits);
        mpf_class v(1, prec);
        auto apply = [&](long base_pow2_exp, int e) {
            mpz_class b;
            mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(base_pow2_exp),
                          static_cast<unsigned long>(e < 0 ? -e : e));
            mpf_class f(b, prec);
            if (e >= 0)
                v *= f;
            else
                v /= f;
        };
        if (pow2 != 0) apply(2, pow2);
        if (pow3 != 0) apply(3, pow3);
        if (pow_pi != 0) {
            const mpf_class pi = detail::pi_value(prec);
            for (int t = 0; t < (pow_pi < 0 ? -pow_pi : pow_pi); ++t) {
                if (pow_pi >= 0)
                    v *= pi;
                else
                    v /= pi;
            }
        }
        return v;
    }

    std::string to_string() const {
        if (!known) return "unknown";
        if (pow2 == 0 && pow3 == 0 && pow_pi == 0) return "1";
        std::string s;
        auto term = [&](const char* base, int e) {
            if (e == 0) return;
            if (!s.empty()) s += " * ";
            s += base;
            s += "^";
            s += std::to_string(e);
        };
        term("2", pow2);
        term("3", pow3);
        term("pi", pow_pi);
        return s;
    }
};

// The conjectured asymptotic constants c in H_r(n,n) ~ c 2^{2rn} n^{-C(r,2)},
// for 0 <= r <= 5; "unknown" beyond that.
inline PowerProduct paper_constant(int r) {
    switch (r) {
        case 0: return {true, 0, 0, 0};
        case 1: return {true, -2, -1, 0};
        case 2: return {true, -2, -4, -1};
        case 3: return {true, -2, -9, -1};
        case 4: return {true, 2, -16, -2};
        case 5: return {true, 4, -23, -2};
        default: return {};
    }
}

struct AsymptoticFit {
    int r = 0;
    mpz_class exponent_base;  // 4^r
    int power = 0;            // -r(r-1)/2
    int extrapolation_order = 0;
    int digits = 0;
    std::vector<std::pair<long, mpf_class>> c_estimates;  // (n, scaled value)
    mpf_class c_extrapolated;
    PowerProduct paper;
};

// Fits the constant in H_r(n,n) ~ c 4^{rn} n^{-r(r-1)/2}. Scaled values are
// computed exactly as rationals and only then rounded to high-precision
// floats; the extrapolation assumes corrections in powers of 1/n and
// eliminates the first `extrapolation_order` of them (Richardson/Neville on
// the trailing points). Deterministic for fixed (seq, order, digits).
inline AsymptoticFit fit_constant(const Sequence& seq, int r, int extrapolation_order = 3,
                                  int digits = 60) {
    if (r < 0) throw std::invalid_argument("fit_constant: r must be non-negative");
    if (extrapolation_order < 0)
        throw std::invalid_argument("fit_constant: extrapolation order must be non-negative");
    if (seq.last_index() < 20 ||
        static_cast<long>(seq.values.size()) < extrapolation_order + 1)
        throw std::invalid_argument("fit_constant: too few terms (need n up to at least 20)");

    const mp_bitcnt_t prec = detail::bits_for_digits(digits);
    const int p = r * (r - 1) / 2;

    AsymptoticFit fit;
    fit.r = r;
    mpz_ui_pow_ui(fit.exponent_base.get_mpz_t(), 4, static_cast<unsigned long>(r));
    fit.power = -p;
    fit.extrapolation_order = extrapolation_order;
    fit.digits = digits;
    fit.paper = paper_constant(r);

    for (long n = std::max(seq.first_index(), 1L); n <= seq.last_index(); ++n) {
        mpz_class num = seq.at(n), den;
        mpz_class npow;
        mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n),
                      static_cast<unsigned long>(p));
        num *= npow;
        mpz_ui_pow_ui(den.get_mpz_t(), 4, static_cast<unsigned long>(r) *
                                              static_cast<unsigned long>(n));
        mpq_class q(num, den);
        q.canonicalize();
        mpf_class v(0, prec);
        mpf_set_q(v.get_mpf_t(), q.get_mpq_t());
        fit.c_estimates.emplace_back(n, std::move(v));
    }

    // Neville extrapolation to h = 0 with h = 1/n on the last order+1 points.
    const std::size_t npts = static_cast<std::size_t>(extrapolation_order) + 1;
    const std::size_t start = fit.c_estimates.size() - npts;
    std::vector<long> ns(npts);
    std::vector<mpf_class> tab(npts, mpf_class(0, prec));
    for (std::size_t i = 0; i < npts; ++i) {
        ns[i] = fit.c_estimates[start + i].first;
        tab[i] = fit.c_estimates[start + i].second;
    }
    for (std::size_t lev = 1; lev < npts; ++lev) {
        for (std::size_t i = 0; i + lev < npts; ++i) {
            const long n1 = ns[i], n2 = ns[i + lev];
            mpf_class t(0, prec);
            t = tab[i + 1] * n2 - tab[i] * n1;
            t /= (n2 - n1);
            tab[i] = t;
        }
    }
    fit.c_extrapolated = std::move(tab[0]);  // keeps the working precision
    return fit;
}

struct PolyDegreeReport {
    bool polynomial = false;  // false: not polynomial on the range (or too short a tail)
    int degree = -1;
    long tail_start = 0;  // first n of the exactly-polynomial tail
};

// Exact finite differencing: reports the smallest d whose (d+1)-st
// differences are identically zero on a trailing run of at least `min_tail`
// entries, and the index where that tail begins. All arithmetic is integer;
// zero means exactly zero.
inline PolyDegreeReport poly_degree_check(int /*r*/, int /*k*/, const Sequence& seq,
                                          int min_tail = 3) {
    if (min_tail < 1) throw std::invalid_argument("poly_degree_check: min_tail must be >= 1");
    if (static_cast<long>(seq.values.size()) < 2 + min_tail)
        throw std::invalid_argument("poly_degree_check: too few terms to distinguish");

    std::vector<mpz_class> diffs = seq.values;
    for (int d = 0;; ++d) {
        // (d+1)-st differences
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
        diffs.pop_back();
        if (static_cast<int>(diffs.size()) < min_tail) return {};

        std::size_t zeros = 0;
        for (auto it = diffs.rbegin(); it != diffs.rend() && *it == 0; ++it) ++zeros;
        if (static_cast<int>(zeros) >= min_tail) {
            PolyDegreeReport report;
            report.polynomial = true;
            report.degree = d;
            report.tail_start = seq.offset + static_cast<long>(diffs.size() - zeros);
            return report;
        }
    }
}

}  // namespace hardinian
