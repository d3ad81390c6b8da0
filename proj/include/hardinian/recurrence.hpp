#pragma once

#include <gmpxx.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sequence.hpp"

namespace hardinian {

// Dense integer polynomial in n, coefficients lowest-degree-first.
using Poly = std::vector<mpz_class>;

inline mpz_class poly_eval(const Poly& p, const mpz_class& n) {
    mpz_class v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * n + *it;
    return v;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Poly poly_scaled(const Poly& a, long c) {
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline bool poly_is_zero(const Poly& p) {
    return std::all_of(p.begin(), p.end(), [](const mpz_class& c) { return c == 0; });
}

// A linear recurrence with integer polynomial coefficients:
//   p_0(n) f(n) + p_1(n) f(n+1) + ... + p_s(n) f(n+s) = 0  for n >= valid_from.
// p_s must not be identically zero; no content normalization is required.
struct PRecurrence {
    int order = 0;
    long valid_from = 0;
    std::vector<Poly> coeffs;
};

inline void check_well_formed(const PRecurrence& rec) {
    if (rec.order < 1) throw std::invalid_argument("PRecurrence: order must be >= 1");
    if (rec.coeffs.size() != static_cast<std::size_t>(rec.order) + 1)
        throw std::invalid_argument("PRecurrence: expected order+1 coefficient polynomials");
    if (poly_is_zero(rec.coeffs.back()))
        throw std::invalid_argument("PRecurrence: leading polynomial is identically zero");
}

struct WindowCheck {
    long n = 0;          // window covers f(n) .. f(n+order)
    bool ok = false;
    mpz_class residual;  // sum p_i(n) f(n+i), zero iff ok
};

struct VerifyReport {
    bool pass = false;
    std::vector<WindowCheck> windows;

    long first_failing() const {
        for (const auto& w : windows)
            if (!w.ok) return w.n;
        return -1;
    }
};

// Checks every window [n, n+order] the sequence covers at n >= valid_from.
inline VerifyReport verify(const PRecurrence& rec, const Sequence& seq) {
    check_well_formed(rec);
    const long lo = std::max(seq.first_index(), rec.valid_from);
    const long hi = seq.last_index() - rec.order;
    if (hi < lo)
        throw std::invalid_argument("verify: insufficient terms (need order+1 consecutive "
                                    "terms at some n >= valid_from)");
    VerifyReport report;
    report.pass = true;
    for (long n = lo; n <= hi; ++n) {
        WindowCheck w;
        w.n = n;
        w.residual = 0;
        for (int i = 0; i <= rec.order; ++i)
            w.residual += poly_eval(rec.coeffs[static_cast<std::size_t>(i)], n) * seq.at(n + i);
        w.ok = (w.residual == 0);
        report.pass = report.pass && w.ok;
        report.windows.push_back(std::move(w));
    }
    return report;
}

// Forward application: extends `initial` to n_max by exact rational solves of
// the window equation. Every produced value must be an integer and the
// leading coefficient must not vanish at any step; existing full windows are
// re-checked first so a failing recurrence is never extended across.
inline Sequence extend(const PRecurrence& rec, const Sequence& initial, long n_max) {
    check_well_formed(rec);
    const int s = rec.order;
    if (static_cast<long>(initial.values.size()) < s)
        throw std::invalid_argument("extend: need at least `order` initial terms");
    if (n_max <= initial.last_index()) return initial;

    if (initial.last_index() - s >= std::max(initial.first_index(), rec.valid_from)) {
        const VerifyReport check = verify(rec, initial);
        if (!check.pass)
            throw std::runtime_error("extend: recurrence fails on the provided terms at window n=" +
                                     std::to_string(check.first_failing()));
    }

    Sequence out = initial;
    mpq_class q;
    while (out.last_index() < n_max) {
        const long n = out.last_index() + 1 - s;
        if (n < rec.valid_from)
            throw std::invalid_argument("extend: first extension window starts below valid_from");
        const mpz_class lead = poly_eval(rec.coeffs[static_cast<std::size_t>(s)], n);
        if (lead == 0)
            throw std::runtime_error("extend: leading coefficient vanishes at n=" + std::to_string(n));
        mpz_class acc = 0;
        for (int i = 0; i < s; ++i)
            acc += poly_eval(rec.coeffs[static_cast<std::size_t>(i)], n) * out.at(n + i);
        q = mpq_class(-acc, lead);
        q.canonicalize();
        if (q.get_den() != 1)
            throw std::runtime_error("extend: non-integer value at index " +
                                     std::to_string(n + s) +
                                     " (wrong recurrence or wrong valid_from)");
        out.values.push_back(q.get_num());
    }
    return out;
}

namespace detail {

// Fraction-free row echelon form with column pivoting. Returns the pivot
// column of each pivot row in order; the matrix is modified in place.
inline std::vector<int> bareiss_echelon(std::vector<std::vector<mpz_class>>& m) {
    const int nrows = static_cast<int>(m.size());
    const int ncols = nrows ? static_cast<int>(m[0].size()) : 0;
    std::vector<int> pivot_cols;
    mpz_class prev = 1, t;
    int rank = 0;
    for (int c = 0; c < ncols && rank < nrows; ++c) {
        int piv = -1;
        for (int i = rank; i < nrows; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(piv)]);
        const mpz_class& pv = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        for (int i = rank + 1; i < nrows; ++i) {
            auto& row = m[static_cast<std::size_t>(i)];
            const mpz_class head = row[static_cast<std::size_t>(c)];
            for (int j = c; j < ncols; ++j) {
                t = row[static_cast<std::size_t>(j)] * pv -
                    head * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
                mpz_divexact(row[static_cast<std::size_t>(j)].get_mpz_t(), t.get_mpz_t(),
                             prev.get_mpz_t());
            }
        }
        prev = pv;
        pivot_cols.push_back(c);
        ++rank;
    }
    return pivot_cols;
}

// Nullspace basis of the echelon form, one integer-cleared, content-reduced
// vector per free column, in increasing free-column order. The sign is
// normalized so the highest-index nonzero entry is positive.
inline std::vector<std::vector<mpz_class>> nullspace_basis(
    const std::vector<std::vector<mpz_class>>& m, const std::vector<int>& pivot_cols,
    int ncols) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<mpz_class>> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<mpq_class> x(static_cast<std::size_t>(ncols), mpq_class(0));
        x[static_cast<std::size_t>(f)] = 1;
        for (int t = static_cast<int>(pivot_cols.size()) - 1; t >= 0; --t) {
            const int pc = pivot_cols[static_cast<std::size_t>(t)];
            const auto& row = m[static_cast<std::size_t>(t)];
            mpq_class acc = 0;
            for (int c = pc + 1; c < ncols; ++c) {
                if (row[static_cast<std::size_t>(c)] == 0) continue;
                acc += mpq_class(row[static_cast<std::size_t>(c)]) * x[static_cast<std::size_t>(c)];
            }
            x[static_cast<std::size_t>(pc)] = -acc / mpq_class(row[static_cast<std::size_t>(pc)]);
        }
        // clear denominators, reduce content, normalize sign
        mpz_class lcm = 1;
        for (auto& q : x) {
            q.canonicalize();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        }
        std::vector<mpz_class> v(static_cast<std::size_t>(ncols));
        mpz_class content = 0;
        for (int c = 0; c < ncols; ++c) {
            v[static_cast<std::size_t>(c)] = x[static_cast<std::size_t>(c)].get_num() *
                                             (lcm / x[static_cast<std::size_t>(c)].get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
                    v[static_cast<std::size_t>(c)].get_mpz_t());
        }
        if (content > 1)
            for (auto& z : v) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), content.get_mpz_t());
        for (int c = ncols - 1; c >= 0; --c) {
            if (v[static_cast<std::size_t>(c)] != 0) {
                if (v[static_cast<std::size_t>(c)] < 0)
                    for (auto& z : v) z = -z;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

// Dense recurrence guessing: sets up the homogeneous system
//   sum_{i=0}^{order} sum_{d=0}^{degree} c_{i,d} n^d a(n+i) = 0
// over every available window and returns the exact rational nullspace basis
// as candidate recurrences. Sound by construction on its input (every
// candidate annihilates all windows); neither complete nor minimal.
inline std::vector<PRecurrence> guess(const Sequence& seq, int order, int degree,
                                      int safety_margin = 5) {
    if (order < 1 || degree < 0) throw std::invalid_argument("guess: bad order/degree");
    const long need = static_cast<long>(order + 1) * (degree + 1) + order + safety_margin;
    if (static_cast<long>(seq.values.size()) < need)
        throw std::invalid_argument("guess: insufficient terms (need at least " +
                                    std::to_string(need) + ", have " +
                                    std::to_string(seq.values.size()) + ")");

    const int ncols = (order + 1) * (degree + 1);
    const long nwin = static_cast<long>(seq.values.size()) - order;
    std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(nwin));
    for (long w = 0; w < nwin; ++w) {
        const long n = seq.offset + w;
        auto& row = m[static_cast<std::size_t>(w)];
        row.resize(static_cast<std::size_t>(ncols));
        mpz_class npow = 1;
        std::vector<mpz_class> powers(static_cast<std::size_t>(degree) + 1);
        for (int d = 0; d <= degree; ++d) {
            powers[static_cast<std::size_t>(d)] = npow;
            npow *= n;
        }
        for (int i = 0; i <= order; ++i)
            for (int d = 0; d <= degree; ++d)
                row[static_cast<std::size_t>(i * (degree + 1) + d)] =
                    powers[static_cast<std::size_t>(d)] * seq.at(n + i);
    }

    const std::vector<int> pivots = detail::bareiss_echelon(m);
    const auto basis = detail::nullspace_basis(m, pivots, ncols);

    std::vector<PRecurrence> out;
    for (const auto& v : basis) {
        PRecurrence rec;
        rec.valid_from = seq.offset;
        rec.coeffs.assign(static_cast<std::size_t>(order) + 1, Poly{});
        for (int i = 0; i <= order; ++i) {
            Poly p(v.begin() + i * (degree + 1), v.begin() + (i + 1) * (degree + 1));
            while (p.size() > 1 && p.back() == 0) p.pop_back();
            rec.coeffs[static_cast<std::size_t>(i)] = std::move(p);
        }
        int s = order;
        while (s > 0 && poly_is_zero(rec.coeffs[static_cast<std::size_t>(s)])) --s;
        if (s < 1) continue;  // not representable as a recurrence of order >= 1
        rec.coeffs.resize(static_cast<std::size_t>(s) + 1);
        rec.order = s;
        if (verify(rec, seq).pass) out.push_back(std::move(rec));
    }
    return out;
}

// The order-5 recurrence for f(n) = H_2(n,n), coefficient polynomials
// transcribed factor-by-factor. It holds on every window from n = 1 against
// the computed terms (checked in the tests), hence valid_from = 1.
inline PRecurrence kk_recurrence() {
    auto lin = [](long c0, long c1) { return Poly{mpz_class(c0), mpz_class(c1)}; };
    auto make = [](std::vector<long> cs) {
        Poly p;
        for (long c : cs) p.emplace_back(c);
        return p;
    };

    const Poly p0 = poly_scaled(
        poly_mul(poly_mul(lin(1, 1), poly_mul(lin(1, 2), lin(1, 2))),
                 make({161046, 465785, 551943, 343020, 117954, 21285, 1575})),
        32);
    const Poly p1 = poly_scaled(
        make({4443102, 33718283, 105734340, 180574335, 186866686, 122556360, 51280818,
              13267683, 1933470, 121275}),
        -8);
    const Poly p2 = poly_scaled(
        make({12137328, 91378536, 283626704, 478464380, 488415476, 315713355, 130145646,
              33170868, 4763070, 294525}),
        2);
    const Poly p3 = make({10688508, 80866406, 252913504, 431097970, 445804136, 292620525,
                          122735586, 31877118, 4668570, 294525});
    const Poly p4 = poly_scaled(
        make({4877748, 36871922, 114948300, 194784258, 199650088, 129484209, 53503836,
              13655808, 1961820, 121275}),
        -1);
    const Poly p5 = poly_scaled(
        poly_mul(poly_mul(lin(7, 2), make({2428, 16118, 41382, 52554, 35154, 11835, 1575})),
                 poly_mul(lin(3, 1), lin(3, 1))),
        2);

    PRecurrence rec;
    rec.order = 5;
    rec.valid_from = 1;
    rec.coeffs = {p0, p1, p2, p3, p4, p5};
    return rec;
}

// The order-2 recurrence s(n+2) = 5 s(n+1) - 4 s(n) satisfied by the r=1
// diagonal.
inline PRecurrence h1_recurrence() {
    PRecurrence rec;
    rec.order = 2;
    rec.valid_from = 1;
    rec.coeffs = {Poly{mpz_class(4)}, Poly{mpz_class(-5)}, Poly{mpz_class(1)}};
    return rec;
}

// JSON document: {"order": s, "valid_from": n0, "coeffs": [[c00, c01, ...], ...]},
// coefficients lowest-degree-first. Coefficients outside the 64-bit range are
// written as strings; the reader accepts both forms.
inline std::string to_json(const PRecurrence& rec) {
    nlohmann::ordered_json j;
    j["order"] = rec.order;
    j["valid_from"] = rec.valid_from;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& p : rec.coeffs) {
        auto poly = nlohmann::ordered_json::array();
        for (const auto& c : p) {
            if (c.fits_slong_p())
                poly.push_back(c.get_si());
            else
                poly.push_back(c.get_str());
        }
        coeffs.push_back(std::move(poly));
    }
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

inline PRecurrence precurrence_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    PRecurrence rec;
    rec.order = j.at("order").get<int>();
    rec.valid_from = j.at("valid_from").get<long>();
    for (const auto& poly : j.at("coeffs")) {
        Poly p;
        for (const auto& c : poly) {
            if (c.is_number_integer())
                p.emplace_back(static_cast<long>(c.get<std::int64_t>()));
            else if (c.is_string())
                p.emplace_back(c.get<std::string>());
            else
                throw std::invalid_argument("PRecurrence JSON: coefficient must be an integer or string");
        }
        if (p.empty()) p.emplace_back(0);
        rec.coeffs.push_back(std::move(p));
    }
    check_well_formed(rec);
    return rec;
}

}  // namespace hardinian
