/**
 * @file cubic.hpp
 * @brief Cubic partition numbers a(n) and congruence verifiers.
 *
 * sum a(n) q^n = 1 / ((q;q)_inf (q^2;q^2)_inf). The main path divides by the
 * two lacunary Euler products in turn, so a(0..n) costs O(n^1.5) ring
 * operations; residue rings below 2^32 use machine words.
 */
#ifndef CUBICPART_CUBIC_HPP
#define CUBICPART_CUBIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abasis.hpp"
#include "error.hpp"
#include "etaquot.hpp"
#include "qseries.hpp"
#include "report.hpp"

namespace cubicpart {

struct CubicSeries {
    CoefficientRing ring;
    std::vector<mpz_class> a;

    long n_max() const { return static_cast<long>(a.size()) - 1; }

    const mpz_class& operator()(long n) const {
        if (n < 0 || n > n_max())
            throw Error(ErrorKind::out_of_window, "a(" + std::to_string(n) + ") outside 0.." + std::to_string(n_max()));
        return a[static_cast<std::size_t>(n)];
    }
};

namespace detail {

/// Nonzero (k, e_k), k >= 1, of prod (1 - q^(delta n)) below n_max + 1.
inline std::vector<std::pair<long, int>> pentagonal_terms(long delta, long n_max) {
    std::vector<std::pair<long, int>> t;
    for (long k = 1;; ++k) {
        const long e1 = delta * (k * (3 * k - 1) / 2);
        const long e2 = delta * (k * (3 * k + 1) / 2);
        if (e1 > n_max)
            break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        t.emplace_back(e1, sign);
        if (e2 <= n_max)
            t.emplace_back(e2, sign);
    }
    std::sort(t.begin(), t.end());
    return t;
}

/// Solves x * E = y in place (x overwrites y) for a lacunary E with E_0 = 1.
template <typename T, typename Reduce>
void divide_lacunary(std::vector<T>& x, const std::vector<std::pair<long, int>>& terms, Reduce reduce) {
    for (std::size_t n = 1; n < x.size(); ++n) {
        T acc = x[n];
        for (const auto& [k, e] : terms) {
            if (static_cast<std::size_t>(k) > n)
                break;
            if (e > 0)
                acc -= x[n - static_cast<std::size_t>(k)];
            else
                acc += x[n - static_cast<std::size_t>(k)];
        }
        x[n] = reduce(acc);
    }
}

} // namespace detail

/// a(0..n_max) over `ring`.
inline CubicSeries cubic_series(long n_max, const CoefficientRing& ring = CoefficientRing::integers()) {
    if (n_max < 0)
        throw Error(ErrorKind::invalid_argument, "n_max must be >= 0");
    const auto e1 = detail::pentagonal_terms(1, n_max);
    const auto e2 = detail::pentagonal_terms(2, n_max);
    const std::size_t len = static_cast<std::size_t>(n_max) + 1;
    CubicSeries out{ring, {}};

    if (!ring.is_exact() && ring.modulus() < mpz_class(1UL << 32)) {
        const std::uint64_t m = ring.modulus().get_ui();
        // Values stay in [0, m); adding m before subtracting keeps the word unsigned.
        std::vector<std::uint64_t> x(len, 0);
        x[0] = 1 % m;
        auto solve = [&](const std::vector<std::pair<long, int>>& terms) {
            for (std::size_t n = 1; n < len; ++n) {
                std::uint64_t acc = x[n];
                for (const auto& [k, e] : terms) {
                    if (static_cast<std::size_t>(k) > n)
                        break;
                    const std::uint64_t v = x[n - static_cast<std::size_t>(k)];
                    acc = e > 0 ? acc + m - v : acc + v;
                    if (acc >= m)
                        acc %= m;
                }
                x[n] = acc % m;
            }
        };
        solve(e1);
        solve(e2);
        out.a.reserve(len);
        for (std::uint64_t v : x)
            out.a.emplace_back(static_cast<unsigned long>(v));
        return out;
    }

    std::vector<mpz_class> x(len, 0);
    x[0] = 1;
    auto reduce = [&ring](mpz_class v) {
        ring.normalize(v);
        return v;
    };
    detail::divide_lacunary(x, e1, reduce);
    detail::divide_lacunary(x, e2, reduce);
    out.a = std::move(x);
    return out;
}

/// Cubic partitions of n by dynamic programming over part types: one kind
/// of part k for odd k, two kinds for even k. Independent of the series code.
inline std::vector<mpz_class> cubic_bruteforce_table(long n_max) {
    if (n_max < 0 || n_max > 2000)
        throw Error(ErrorKind::invalid_argument, "brute-force oracle is limited to 0 <= n <= 2000");
    std::vector<mpz_class> count(static_cast<std::size_t>(n_max) + 1, 0);
    count[0] = 1;
    for (long part = 1; part <= n_max; ++part) {
        const int colors = part % 2 == 0 ? 2 : 1;
        for (int c = 0; c < colors; ++c)
            for (long s = part; s <= n_max; ++s)
                count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - part)];
    }
    return count;
}

inline mpz_class cubic_bruteforce(long n) { return cubic_bruteforce_table(n).back(); }

/// a(0..n_max) by inverting the q-series E_1 E_2 (a third, independent route).
inline std::vector<mpz_class> cubic_via_inversion(long n_max) {
    const Exponent prec = n_max + 1;
    const QSeries series = inverse(mul(euler_factor(1, 1, prec), euler_factor(2, 1, prec)), prec);
    std::vector<mpz_class> out;
    for (Exponent n = 0; n < prec; ++n)
        out.push_back(series.coeff(n));
    return out;
}

struct DeltaPair {
    long alpha = 0;
    /// 8^-1 mod 5^(2 alpha + 2).
    mpz_class delta;
    /// 5^(2 alpha + 2) - delta = (5^(2 alpha + 2) - 1) / 8.
    mpz_class delta_prime;
    mpz_class modulus;
};

inline mpz_class pow_ui(unsigned long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline mpz_class inverse_mod(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorKind::invalid_argument, x.get_str() + " is not invertible mod " + m.get_str());
    return r;
}

inline DeltaPair delta_pair(long alpha) {
    if (alpha < 0)
        throw Error(ErrorKind::invalid_argument, "alpha must be >= 0");
    DeltaPair d;
    d.alpha = alpha;
    d.modulus = pow_ui(5, static_cast<unsigned long>(2 * alpha + 2));
    d.delta = inverse_mod(8, d.modulus);
    d.delta_prime = d.modulus - d.delta;
    if ((8 * d.delta - 1) % d.modulus != 0 || 8 * d.delta_prime != d.modulus - 1)
        throw Error(ErrorKind::oracle_disagreement, "delta arithmetic failed for alpha=" + std::to_string(alpha));
    if (alpha >= 1) {
        const DeltaPair prev = delta_pair(alpha - 1);
        if (d.delta_prime != prev.delta_prime + 3 * pow_ui(25, static_cast<unsigned long>(alpha)))
            throw Error(ErrorKind::oracle_disagreement, "delta' recurrence fails at alpha=" + std::to_string(alpha));
    }
    return d;
}

enum class Theorem { thm11, thm12, thm14 };

inline std::string theorem_id(Theorem t) {
    switch (t) {
    case Theorem::thm11: return "1.1";
    case Theorem::thm12: return "1.2";
    case Theorem::thm14: return "1.4";
    }
    return "?";
}

/// a(step * n + offset) = 0 mod `modulus` for all n >= 0.
struct Progression {
    mpz_class step;
    mpz_class offset;
    mpz_class modulus;
};

inline Progression theorem_progression(Theorem t, long alpha) {
    switch (t) {
    case Theorem::thm11: {
        if (alpha < 1)
            throw Error(ErrorKind::invalid_argument, "the modulus-3 family needs alpha >= 1");
        const mpz_class step = pow_ui(3, static_cast<unsigned long>(alpha));
        const long extra = alpha % 2 == 0 ? 1 : 0;
        return {step, inverse_mod(8, step), pow_ui(3, static_cast<unsigned long>(alpha + extra))};
    }
    case Theorem::thm12:
        if (alpha != 0)
            throw Error(ErrorKind::invalid_argument, "a(25n+22) is the alpha = 0 case");
        return {25, 22, 5};
    case Theorem::thm14: {
        const DeltaPair d = delta_pair(alpha);
        return {d.modulus, d.delta, pow_ui(5, static_cast<unsigned long>(alpha + 1))};
    }
    }
    throw Error(ErrorKind::invalid_argument, "unknown theorem");
}

/// Checks a(step*n + offset) = 0 (mod modulus) for 0 <= n < n_count on a
/// residue series; one report line per n, labelled with `id` and `alpha`.
inline Report verify_progression(const Progression& p, const std::string& id, long alpha, long n_count) {
    if (n_count < 1)
        throw Error(ErrorKind::invalid_argument, "n_count must be >= 1");
    const mpz_class top = p.step * (n_count - 1) + p.offset;
    if (!top.fits_slong_p())
        throw Error(ErrorKind::invalid_argument, "index " + top.get_str() + " too large");
    const CubicSeries a = cubic_series(top.get_si(), CoefficientRing::residues(p.modulus));
    Report rep;
    for (long n = 0; n < n_count; ++n) {
        const mpz_class index = p.step * n + p.offset;
        const mpz_class& r = a(index.get_si());
        const bool pass = r == 0;
        rep.add(Check{"THM",
                      {{"", id}, {"alpha", std::to_string(alpha)}, {"n", std::to_string(n)},
                       {"index", index.get_str()}, {"residue", r.get_str()}, {"mod", p.modulus.get_str()}},
                      pass ? "PASS" : "FAIL",
                      pass ? Outcome::pass : Outcome::fail,
                      false});
    }
    return rep;
}

inline Report verify_theorem(Theorem t, long alpha, long n_count) {
    return verify_progression(theorem_progression(t, alpha), theorem_id(t), alpha, n_count);
}

namespace detail {

inline Check series_check(const std::string& tag, std::vector<std::pair<std::string, std::string>> fields,
                          const std::optional<Exponent>& diff) {
    fields.emplace_back("first_diff", diff ? std::to_string(*diff) : std::string("none"));
    return Check{tag, std::move(fields), diff ? "FAIL" : "PASS", diff ? Outcome::fail : Outcome::pass, false};
}

/// sum_{n >= 1} a(step*n - shift) q^n below prec (terms with negative index are 0).
inline QSeries progression_series(const CubicSeries& a, long step, long shift_back, Exponent prec) {
    std::vector<mpz_class> c(static_cast<std::size_t>(std::max<Exponent>(prec, 0)));
    for (Exponent n = 1; n < prec; ++n) {
        const long idx = step * n - shift_back;
        if (idx >= 0)
            c[static_cast<std::size_t>(n)] = a(idx);
    }
    return QSeries(a.ring, 0, std::move(c), prec);
}

inline QSeries e1e2(Exponent prec, const CoefficientRing& ring = CoefficientRing::integers()) {
    return mul(euler_factor(1, 1, prec, ring), euler_factor(2, 1, prec, ring));
}

} // namespace detail

/// sum a(3n+2) q^n = 3 prod (1-q^3n)^3 (1-q^6n)^3 / ((1-q^n)^4 (1-q^2n)^4), coefficientwise below prec.
inline Report verify_3n2_identity(Exponent prec) {
    if (prec < 10)
        throw Error(ErrorKind::invalid_argument, "prec must be >= 10");
    const CubicSeries a = cubic_series(3 * (prec - 1) + 2);
    std::vector<mpz_class> lhs_c;
    for (Exponent n = 0; n < prec; ++n)
        lhs_c.push_back(a(3 * n + 2));
    const QSeries lhs(CoefficientRing::integers(), 0, std::move(lhs_c), prec);
    QSeries rhs = QSeries::one(CoefficientRing::integers(), prec);
    for (auto [delta, r] : {std::pair{3L, 3L}, {6L, 3L}, {1L, -4L}, {2L, -4L}})
        rhs = mul(rhs, euler_factor(delta, r, prec));
    rhs = scale(rhs, 3);

    Report rep;
    for (Exponent n = 0; n < prec; ++n) {
        const bool pass = lhs.coeff(n) == rhs.coeff(n);
        rep.add(Check{"IDENTITY",
                      {{"", "3n+2"}, {"n", std::to_string(n)}, {"lhs", lhs.coeff(n).get_str()}, {"rhs", rhs.coeff(n).get_str()}},
                      pass ? "PASS" : "FAIL",
                      pass ? Outcome::pass : Outcome::fail,
                      false});
    }
    return rep;
}

/// Replays the modulus-5 argument on q-series, with F expanded below `prec`:
///  (i)   U(F) = (sum a(5n-3) q^n) E_5 E_10;
///  (ii)  U(F) = 3A + 25A^2 + 125A^3;
///  (iii) U(U(F)) = (sum a(25n-3) q^n) E_1 E_2, all a(25n-3) = 0 mod 5, and
///        U(3A + 25A^2 + 125A^3) = 0 mod 5 as an A-polynomial;
///  (iv)  E_1 E_2 has a unit constant term mod 5.
inline Report verify_u_pipeline(Exponent prec) {
    if (prec < 60)
        throw Error(ErrorKind::invalid_argument, "prec must be >= 60");
    const CoefficientRing zz = CoefficientRing::integers();
    Report rep;
    const QSeries f = expand(f_quotient(), prec);
    const QSeries uf = u_p(f, 5);
    const QSeries uuf = u_p(uf, 5);
    const CubicSeries a = cubic_series(25 * prec + 25);

    // (i)
    const QSeries rhs1 = mul(detail::progression_series(a, 5, 3, uf.prec()),
                             mul(euler_factor(5, 1, uf.prec()), euler_factor(10, 1, uf.prec())));
    rep.add(detail::series_check("PIPELINE", {{"stage", "i"}, {"window", std::to_string(uf.prec())}},
                                 first_difference(uf, rhs1)));

    // (ii)
    const APoly expected_uf{0, 3, 25, 125};
    const QSeries a_series = expand(a_quotient(), uf.prec());
    std::optional<Exponent> diff2;
    APoly reduced;
    try {
        reduced = reduce_to_apoly(uf, a_series, false, 3);
        if (!(reduced == expected_uf))
            diff2 = 0;
        else
            diff2 = first_difference(evaluate(reduced, a_series, uf.prec()), uf);
    } catch (const Error&) {
        diff2 = 0;
    }
    rep.add(detail::series_check("PIPELINE", {{"stage", "ii"}, {"apoly", "\"" + to_string(reduced) + "\""}}, diff2));

    // (iii)
    const QSeries prog = detail::progression_series(a, 25, 3, uuf.prec());
    rep.add(detail::series_check("PIPELINE", {{"stage", "iii"}, {"window", std::to_string(uuf.prec())}},
                                 first_difference(uuf, mul(prog, detail::e1e2(uuf.prec())))));
    std::optional<Exponent> nondivisible;
    for (Exponent n = 1; n < prog.prec() && !nondivisible; ++n)
        if (!mpz_divisible_ui_p(prog.coeff(n).get_mpz_t(), 5))
            nondivisible = n;
    rep.add(detail::series_check("PIPELINE", {{"stage", "iii-mod5"}, {"window", std::to_string(prog.prec())}}, nondivisible));
    APoly u_of_uf;
    for (long i = 1; i <= 3; ++i)
        u_of_uf = u_of_uf + u_image_direct(BasisKind::a, i) * expected_uf[static_cast<std::size_t>(i)];
    std::optional<Exponent> bad_coeff;
    for (std::size_t j = 0; j < u_of_uf.coeffs().size() && !bad_coeff; ++j)
        if (!mpz_divisible_ui_p(u_of_uf.coeffs()[j].get_mpz_t(), 5))
            bad_coeff = static_cast<Exponent>(j);
    rep.add(detail::series_check("PIPELINE", {{"stage", "iii-apoly"}, {"degree", std::to_string(u_of_uf.degree())}}, bad_coeff));

    // (iv)
    const QSeries e = detail::e1e2(prec, CoefficientRing::residues(5));
    const bool unit = !e.is_zero() && e.vmin() == 0 && CoefficientRing::residues(5).is_unit(e.leading());
    rep.add(Check{"PIPELINE", {{"stage", "iv"}, {"witness", "q^0"}, {"coefficient", e.is_zero() ? "0" : e.leading().get_str()}},
                  unit ? "PASS" : "FAIL", unit ? Outcome::pass : Outcome::fail, false});
    (void)zz;
    return rep;
}

} // namespace cubicpart

#endif // CUBICPART_CUBIC_HPP
