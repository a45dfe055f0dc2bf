/**
 * @file abasis.hpp
 * @brief U_5 images as polynomials in the Hauptmodul A of Gamma_0(10).
 *
 * Weight-0 functions on Gamma_0(50) built from F and A are mapped by U_5 to
 * polynomials in A. This header recovers those polynomials from
 * q-expansions (greedy elimination against powers of A), solves for the
 * elementary symmetric functions sigma_1..sigma_5 of the five conjugates
 * A((z+t)/5) from power sums, and runs the resulting five-term recurrence
 *
 *   U(X A^i) = s1 U(X A^(i-1)) - s2 U(X A^(i-2)) + s3 U(X A^(i-3))
 *              - s4 U(X A^(i-4)) + s5 U(X A^(i-5)),     X in {1, F},
 *
 * to build the integer matrices a = (a_ij) and b = (b_ij).
 */
#ifndef CUBICPART_ABASIS_HPP
#define CUBICPART_ABASIS_HPP

#include <gmpxx.h>

#include <array>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apoly.hpp"
#include "error.hpp"
#include "etaquot.hpp"
#include "fixtures.hpp"
#include "qseries.hpp"
#include "report.hpp"
#include "val5.hpp"

namespace cubicpart {

/// Extra certified coefficients beyond the expected degree.
inline constexpr int kGuardWindow = 5;

/// F^e A^i on Gamma_0(50), e = 0 for A-kind and 1 for FA-kind.
inline EtaQuotient basis_quotient(BasisKind kind, long i) {
    EtaQuotient q = a_quotient().at_level(50).pow(i);
    if (kind == BasisKind::fa)
        q = q * f_quotient();
    return q;
}

struct ExpectedShape {
    long min_degree = 0;
    long max_degree = 0;
    bool allow_constant = true;
};

/// Degree window of U(F^e A^i) as a polynomial in A, read off the order
/// bounds at the cusps: A has simple poles at 0 and 1/2 and simple zeros at
/// 1/5 and 1/10, so the pole order at 0 bounds the degree and the order at
/// i-infinity bounds the lowest power.
inline ExpectedShape expected_shape(const EtaQuotient& eq) {
    if (eq.level() != 50)
        throw Error(ErrorKind::invalid_argument, "U_5 reduction expects a quotient on Gamma_0(50), got level " + std::to_string(eq.level()));
    const U5OrderBounds b = u5_order_bounds(ligozat_table(eq));
    ExpectedShape s;
    const mpz_class pole = -std::min(b.ceiled.at(1), b.ceiled.at(2));
    s.max_degree = std::max(0L, pole.get_si());
    s.min_degree = std::max(0L, b.ceiled.at(10).get_si());
    s.allow_constant = s.min_degree == 0;
    return s;
}

inline ExpectedShape expected_shape(BasisKind kind, long i) { return expected_shape(basis_quotient(kind, i)); }

/// Expansion prec needed before U_5 to certify `max_degree` plus the guard window.
inline Exponent u5_source_prec(long max_degree, int guard = kGuardWindow) { return 5 * (max_degree + 1 + guard); }

/// Writes f as a polynomial in A by greedy elimination of leading terms.
/// The residual must vanish through f.prec, which must exceed max_degree by
/// at least `guard` coefficients.
inline APoly reduce_to_apoly(const QSeries& f, const QSeries& a, bool allow_constant, long max_degree,
                             int guard = kGuardWindow) {
    if (!f.ring().is_exact() || !a.ring().is_exact())
        throw Error(ErrorKind::invalid_argument, "reduction needs exact integer series");
    if (a.is_zero() || a.vmin() != 1 || a.leading() != 1)
        throw Error(ErrorKind::invalid_argument, "A must start with q + O(q^2)");
    if (!f.is_zero() && f.vmin() < 0)
        throw Error(ErrorKind::nonzero_residual, "series has a pole at q = 0");
    const Exponent window = f.prec();
    if (window == kExactPrec || window < max_degree + 1 + guard)
        throw Error(ErrorKind::insufficient_precision,
                    "prec " + prec_to_string(window) + " does not certify degree " + std::to_string(max_degree) +
                        " with a guard of " + std::to_string(guard));
    if (a.prec() < window)
        throw Error(ErrorKind::insufficient_precision, "A is known to fewer terms than the series");

    std::vector<mpz_class> residual(static_cast<std::size_t>(window));
    for (Exponent n = 0; n < window; ++n)
        residual[static_cast<std::size_t>(n)] = f.coeff(n);

    const QSeries a_win = truncate(a, window);
    QSeries power = QSeries::one(a.ring(), window);
    long power_exp = 0;
    std::vector<mpz_class> out;
    for (Exponent n = 0; n < window; ++n) {
        const mpz_class c = residual[static_cast<std::size_t>(n)];
        if (c == 0)
            continue;
        if (n > max_degree || (n == 0 && !allow_constant))
            throw Error(ErrorKind::nonzero_residual,
                        "residual coefficient " + c.get_str() + " at q^" + std::to_string(n) +
                            " (allowed degrees " + (allow_constant ? "0" : "1") + ".." + std::to_string(max_degree) + ")");
        while (power_exp < n) {
            power = truncate(mul(power, a_win), window);
            ++power_exp;
        }
        const auto pc = power.stored();
        for (std::size_t k = 0; k < pc.size(); ++k)
            mpz_submul(residual[static_cast<std::size_t>(power.vmin()) + k].get_mpz_t(), c.get_mpz_t(), pc[k].get_mpz_t());
        out.resize(static_cast<std::size_t>(n) + 1);
        out[static_cast<std::size_t>(n)] = c;
    }
    return APoly(std::move(out));
}

/// U_5 of a weight-0 quotient on Gamma_0(50) as a polynomial in A. The
/// expansion prec is sized from the order bounds unless `prec` is given.
inline APoly u_image_direct(const EtaQuotient& eq, int guard = kGuardWindow, std::optional<Exponent> prec = std::nullopt) {
    if (eq.weight() != 0)
        throw Error(ErrorKind::invalid_argument, "U_5 reduction expects weight 0");
    const ExpectedShape shape = expected_shape(eq);
    const QSeries image = u_p(expand(eq, prec.value_or(u5_source_prec(shape.max_degree, guard))), 5);
    const QSeries a = expand(a_quotient(), image.prec());
    return reduce_to_apoly(image, a, shape.allow_constant, shape.max_degree, guard);
}

/// U(F^e A^i) recomputed from q-expansions: expand, apply U_5, reduce.
inline APoly u_image_direct(BasisKind kind, long i, int guard = kGuardWindow) {
    return u_image_direct(basis_quotient(kind, i), guard);
}

// ---- symmetric functions ----------------------------------------------

struct SigmaSet {
    std::array<APoly, 5> s;

    /// sigma_k, 1 <= k <= 5.
    const APoly& operator()(int k) const { return s.at(static_cast<std::size_t>(k - 1)); }
};

namespace detail {

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline QPoly to_qpoly(const APoly& p) {
    QPoly q;
    for (const auto& c : p.coeffs())
        q.emplace_back(c);
    return q;
}

inline QPoly qadd(const QPoly& a, const QPoly& b, const mpq_class& kb = 1) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += kb * b[i];
    trim(r);
    return r;
}

inline QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline QPoly qscale(QPoly a, const mpq_class& k) {
    for (auto& x : a)
        x *= k;
    trim(a);
    return a;
}

/// Exact quotient num / den; throws if the division leaves a remainder.
inline QPoly qdiv_exact(QPoly num, const QPoly& den) {
    if (den.empty())
        throw Error(ErrorKind::oracle_disagreement, "division by the zero polynomial");
    trim(num);
    if (num.size() < den.size()) {
        if (!num.empty())
            throw Error(ErrorKind::oracle_disagreement, "polynomial division leaves a remainder");
        return {};
    }
    QPoly quo(num.size() - den.size() + 1);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const mpq_class c = num[k + den.size() - 1] / den.back();
        quo[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[k + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty())
        throw Error(ErrorKind::oracle_disagreement, "polynomial division leaves a remainder");
    trim(quo);
    return quo;
}

inline APoly to_integer_apoly(const QPoly& p, const std::string& what) {
    std::vector<mpz_class> out;
    for (const auto& c : p) {
        if (c.get_den() != 1)
            throw Error(ErrorKind::oracle_disagreement, what + " has a non-integral coefficient " + c.get_str());
        out.push_back(c.get_num());
    }
    return APoly(std::move(out));
}

} // namespace detail

/// Solves for sigma_1..sigma_5 from U(A^-1..-4) and U(A).
///
/// With x_t = 1/A((z+t)/5), the power sums of the x_t are 5U(A^-k) and their
/// elementary symmetric functions are e_k = sigma_(5-k)/sigma_5; Newton's
/// identities give e_1..e_4, and 5U(A) = sum 1/x_t = sigma_1 fixes
/// sigma_5 = sigma_1 / e_4.
inline SigmaSet solve_sigma(const std::array<APoly, 4>& u_inverse_powers, const APoly& u_a) {
    using namespace detail;
    std::array<QPoly, 5> p; // p[k] = power sum of order k, k = 1..4
    for (int k = 1; k <= 4; ++k)
        p[static_cast<std::size_t>(k)] = to_qpoly(u_inverse_powers[static_cast<std::size_t>(k - 1)] * mpz_class(5));

    std::array<QPoly, 5> e; // e[k], k = 1..4
    for (int k = 1; k <= 4; ++k) {
        // k e_k = sum_{m=1..k} (-1)^(m-1) e_{k-m} p_m, e_0 = 1
        QPoly acc;
        for (int m = 1; m <= k; ++m) {
            const QPoly term = (k - m == 0) ? p[static_cast<std::size_t>(m)]
                                            : qmul(e[static_cast<std::size_t>(k - m)], p[static_cast<std::size_t>(m)]);
            acc = qadd(acc, term, (m % 2 == 1) ? 1 : -1);
        }
        e[static_cast<std::size_t>(k)] = qscale(acc, mpq_class(1, k));
    }

    const QPoly sigma1 = to_qpoly(u_a * mpz_class(5));
    const QPoly sigma5 = qdiv_exact(sigma1, e[4]);
    SigmaSet out;
    out.s[0] = to_integer_apoly(sigma1, "sigma_1");
    out.s[1] = to_integer_apoly(qmul(e[3], sigma5), "sigma_2");
    out.s[2] = to_integer_apoly(qmul(e[2], sigma5), "sigma_3");
    out.s[3] = to_integer_apoly(qmul(e[1], sigma5), "sigma_4");
    out.s[4] = to_integer_apoly(sigma5, "sigma_5");
    return out;
}

/// A printed table entry that disagrees with the recomputed value.
struct TableDiff {
    std::string table;
    std::string kind;
    long i = 0;
    long j = 0;
    mpz_class printed;
    mpz_class computed;
};

inline std::vector<TableDiff> diff_apoly(const std::string& table, const std::string& kind, long i,
                                         const APoly& printed, const APoly& computed) {
    std::vector<TableDiff> out;
    const long top = std::max(printed.degree(), computed.degree());
    for (long j = 0; j <= top; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (printed[ju] != computed[ju])
            out.push_back({table, kind, i, j, printed[ju], computed[ju]});
    }
    return out;
}

inline Check table_diff_check(const TableDiff& d) {
    return Check{"TABLE",
                 {{"", d.table}, {"kind", d.kind}, {"i", std::to_string(d.i)}, {"j", std::to_string(d.j)},
                  {"printed", d.printed.get_str()}, {"computed", d.computed.get_str()}},
                 "TABLE_DIFF",
                 Outcome::warn};
}

inline Check table_match_check(const std::string& table, const std::string& kind, long i) {
    return Check{"TABLE", {{"", table}, {"kind", kind}, {"i", std::to_string(i)}}, "MATCH", Outcome::pass};
}

struct SigmaResult {
    SigmaSet sigma;
    std::vector<TableDiff> diffs;
};

/// sigma_1..sigma_5 from directly reduced U(A^-k) and U(A); diffed against
/// the printed list when `published` is given. The computed value is returned either way.
inline SigmaResult sigma_set(const PublishedTables* published = nullptr, int guard = kGuardWindow) {
    std::array<APoly, 4> inv;
    for (long k = 1; k <= 4; ++k)
        inv[static_cast<std::size_t>(k - 1)] = u_image_direct(BasisKind::a, -k, guard);
    SigmaResult r{solve_sigma(inv, u_image_direct(BasisKind::a, 1, guard)), {}};
    if (published != nullptr)
        for (int k = 1; k <= 5; ++k)
            if (const auto it = published->sigma.find(k); it != published->sigma.end()) {
                auto d = diff_apoly("sigma", "sigma", k, it->second, r.sigma(k));
                r.diffs.insert(r.diffs.end(), d.begin(), d.end());
            }
    return r;
}

/// Seeds U(X A^i) for i = -4..0; seeds[k] holds i = k - 4.
using SeedWindow = std::array<APoly, 5>;

struct WindowResult {
    SeedWindow seeds;
    std::vector<TableDiff> diffs;
};

inline WindowResult initial_window(BasisKind kind, const PublishedTables* published = nullptr, int guard = kGuardWindow) {
    WindowResult r;
    for (long i = -4; i <= 0; ++i) {
        const APoly computed = u_image_direct(kind, i, guard);
        r.seeds[static_cast<std::size_t>(i + 4)] = computed;
        if (published != nullptr)
            if (const APoly* printed = published->row(kind, i)) {
                auto d = diff_apoly("seed", to_string(kind), i, *printed, computed);
                r.diffs.insert(r.diffs.end(), d.begin(), d.end());
            }
    }
    return r;
}

/// One step of the five-term recurrence; window ordered i-5 .. i-1.
inline APoly newton_next(std::span<const APoly, 5> w, const SigmaSet& sigma) {
    return sigma(1) * w[4] - sigma(2) * w[3] + sigma(3) * w[2] - sigma(4) * w[1] + sigma(5) * w[0];
}

/// Rows i = 1..count continuing a seed window.
inline std::vector<APoly> run_recurrence(const SeedWindow& seeds, const SigmaSet& sigma, long count) {
    std::vector<APoly> all(seeds.begin(), seeds.end());
    all.reserve(all.size() + static_cast<std::size_t>(std::max(0L, count)));
    for (long i = 1; i <= count; ++i) {
        std::span<const APoly, 5> w(all.data() + all.size() - 5, 5);
        all.push_back(newton_next(w, sigma));
    }
    return {all.begin() + 5, all.end()};
}

/// Rows U(A^i) (A-kind) or U(F A^i) (FA-kind), i >= 1, as integer A-polynomials.
class UMatrix {
public:
    UMatrix() = default;
    UMatrix(BasisKind kind, std::vector<APoly> rows) : kind_(kind), rows_(std::move(rows)) {}

    BasisKind kind() const { return kind_; }
    long rows() const { return static_cast<long>(rows_.size()); }

    const APoly& row(long i) const {
        if (i < 1 || i > rows())
            throw Error(ErrorKind::insufficient_matrix_rows,
                        to_string(kind_) + " matrix has " + std::to_string(rows()) + " rows, row " + std::to_string(i) + " requested");
        return rows_[static_cast<std::size_t>(i - 1)];
    }

    mpz_class entry(long i, long j) const { return j < 0 ? mpz_class(0) : row(i)[static_cast<std::size_t>(j)]; }

private:
    BasisKind kind_ = BasisKind::a;
    std::vector<APoly> rows_;
};

/// Columns where row i may be nonzero: ceil(i/5) <= j <= 5i (A-kind) or 5i+3 (FA-kind).
inline std::pair<long, long> support_bounds(BasisKind kind, long i) {
    return {(i + 4) / 5, 5 * i + (kind == BasisKind::fa ? 3 : 0)};
}

inline void check_row_support(BasisKind kind, long i, const APoly& row) {
    const auto [lo, hi] = support_bounds(kind, i);
    const auto c = row.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        const long jj = static_cast<long>(j);
        if (c[j] != 0 && (jj < lo || jj > hi || jj == 0))
            throw Error(ErrorKind::support_violation, to_string(kind) + " row " + std::to_string(i) + " has entry " +
                                                          c[j].get_str() + " at column " + std::to_string(jj) +
                                                          " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

/// Rows 1..i_max from the recurrence. Rows 1..verify_rows_up_to are also
/// recomputed by direct q-series reduction (in parallel) and must agree.
inline UMatrix build_matrix(BasisKind kind, long i_max, long verify_rows_up_to, const SigmaSet& sigma,
                            const SeedWindow& seeds, int guard = kGuardWindow) {
    if (i_max < 1)
        throw Error(ErrorKind::invalid_argument, "i_max must be >= 1");
    std::vector<APoly> rows = run_recurrence(seeds, sigma, i_max);
    for (long i = 1; i <= i_max; ++i)
        check_row_support(kind, i, rows[static_cast<std::size_t>(i - 1)]);

    const long verify = std::min(verify_rows_up_to, i_max);
    std::vector<std::future<APoly>> oracle;
    for (long i = 1; i <= verify; ++i)
        oracle.push_back(std::async(std::launch::async, [kind, i, guard] { return u_image_direct(kind, i, guard); }));
    for (long i = 1; i <= verify; ++i) {
        const APoly direct = oracle[static_cast<std::size_t>(i - 1)].get();
        const auto d = diff_apoly("oracle", to_string(kind), i, direct, rows[static_cast<std::size_t>(i - 1)]);
        if (!d.empty())
            throw Error(ErrorKind::oracle_disagreement,
                        to_string(kind) + " row " + std::to_string(i) + " column " + std::to_string(d.front().j) +
                            ": recurrence " + d.front().computed.get_str() + ", direct reduction " + d.front().printed.get_str());
    }
    return UMatrix(kind, std::move(rows));
}

/// Everything the recurrence needs, computed from q-series.
struct Basis {
    SigmaSet sigma;
    SeedWindow a_seeds;
    SeedWindow fa_seeds;
    std::vector<TableDiff> diffs;
};

inline Basis compute_basis(const PublishedTables* published = nullptr, int guard = kGuardWindow) {
    Basis b;
    auto s = sigma_set(published, guard);
    auto wa = initial_window(BasisKind::a, published, guard);
    auto wf = initial_window(BasisKind::fa, published, guard);
    b.sigma = s.sigma;
    b.a_seeds = wa.seeds;
    b.fa_seeds = wf.seeds;
    for (auto* d : {&s.diffs, &wa.diffs, &wf.diffs})
        b.diffs.insert(b.diffs.end(), d->begin(), d->end());
    return b;
}

/// One coefficient of the recurrence for a_ij in terms of a_(i-k, j-l):
/// (-1)^(k+1) sigma_k[l] and its 5-adic order.
struct StarTerm {
    int k = 0;
    long l = 0;
    mpz_class coefficient;
    Val5 order = Val5::infinite();
};

inline std::vector<StarTerm> star_terms(const SigmaSet& sigma) {
    std::vector<StarTerm> out;
    for (int k = 1; k <= 5; ++k) {
        const auto c = sigma(k).coeffs();
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (c[l] == 0)
                continue;
            const mpz_class coef = (k % 2 == 1) ? c[l] : mpz_class(-c[l]);
            out.push_back({k, static_cast<long>(l), coef, pval5(coef)});
        }
    }
    return out;
}

/// Compares recomputed rows with the printed appendix and seed/sigma lists.
/// Mismatches are warnings. Also replays the recurrence from the printed
/// seeds and sigma list, which tells transcription slips apart from errors
/// inherited from a wrong seed.
inline Report appendix_report(const Basis& basis, const UMatrix& a, const UMatrix& b, const PublishedTables& published) {
    Report rep;
    for (const auto& d : basis.diffs)
        rep.add(table_diff_check(d));

    auto compare = [&](const std::string& table, BasisKind kind, long i, const APoly& computed) {
        const APoly* printed = published.row(kind, i);
        if (printed == nullptr)
            return;
        const auto diffs = diff_apoly(table, to_string(kind), i, *printed, computed);
        if (diffs.empty())
            rep.add(table_match_check(table, to_string(kind), i));
        for (const auto& d : diffs)
            rep.add(table_diff_check(d));
    };

    for (const auto& [key, row] : published.rows) {
        const auto [kind, i] = key;
        if (i < 1)
            continue;
        const UMatrix& m = kind == BasisKind::a ? a : b;
        if (i <= m.rows())
            compare("appendix", kind, i, m.row(i));
    }

    // Replay from the printed data.
    SigmaSet printed_sigma = basis.sigma;
    for (int k = 1; k <= 5; ++k)
        if (const auto it = published.sigma.find(k); it != published.sigma.end())
            printed_sigma.s[static_cast<std::size_t>(k - 1)] = it->second;
    for (BasisKind kind : {BasisKind::a, BasisKind::fa}) {
        SeedWindow seeds = kind == BasisKind::a ? basis.a_seeds : basis.fa_seeds;
        for (long i = -4; i <= 0; ++i)
            if (const APoly* p = published.row(kind, i))
                seeds[static_cast<std::size_t>(i + 4)] = *p;
        long top = 0;
        for (const auto& [key, row] : published.rows)
            if (key.first == kind)
                top = std::max(top, key.second);
        const auto replay = run_recurrence(seeds, printed_sigma, top);
        for (long i = 1; i <= top; ++i)
            compare("replay", kind, i, replay[static_cast<std::size_t>(i - 1)]);
    }
    return rep;
}

} // namespace cubicpart

#endif // CUBICPART_ABASIS_HPP
