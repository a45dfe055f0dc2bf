/**
 * @file etaquot.hpp
 * @brief Symbolic eta-quotients prod eta(delta z)^r_delta on Gamma_0(N).
 *
 * Modularity (Newman's conditions), orders at cusps (Ligozat's formula),
 * cusp representatives of Gamma_0(N), the lower bounds for orders of U_5(f)
 * on Gamma_0(10) given orders of f on Gamma_0(50), and q-expansion.
 */
#ifndef CUBICPART_ETAQUOT_HPP
#define CUBICPART_ETAQUOT_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "qseries.hpp"

namespace cubicpart {

using ExactRational = mpq_class;

inline ExactRational make_rational(const mpz_class& num, const mpz_class& den = 1) {
    ExactRational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const ExactRational& r) { return r.get_str(); }

inline mpz_class ceil(const ExactRational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> ds;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0)
            ds.push_back(d);
    return ds;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1)
            ++count;
    return count;
}

class EtaQuotient {
public:
    using Exponents = std::map<std::int64_t, std::int64_t>;

    EtaQuotient() = default;

    /// Zero exponents are dropped; every delta must divide the level.
    EtaQuotient(std::int64_t level, const Exponents& exps) : level_(level) {
        if (level < 1)
            throw Error(ErrorKind::invalid_argument, "level must be positive");
        for (const auto& [delta, r] : exps) {
            if (delta < 1 || level % delta != 0)
                throw Error(ErrorKind::invalid_argument,
                            std::to_string(delta) + " does not divide level " + std::to_string(level));
            if (r != 0)
                exps_[delta] = r;
        }
    }

    std::int64_t level() const { return level_; }
    const Exponents& exponents() const { return exps_; }

    std::int64_t exponent(std::int64_t delta) const {
        const auto it = exps_.find(delta);
        return it == exps_.end() ? 0 : it->second;
    }

    /// Weight (1/2) sum r_delta.
    ExactRational weight() const {
        std::int64_t sum = 0;
        for (const auto& [delta, r] : exps_)
            sum += r;
        return make_rational(sum, 2);
    }

    /// sum delta * r_delta; 24 times the exponent of the leading q-power.
    std::int64_t upper_sum() const {
        std::int64_t sum = 0;
        for (const auto& [delta, r] : exps_)
            sum += delta * r;
        return sum;
    }

    std::int64_t lower_sum() const {
        std::int64_t sum = 0;
        for (const auto& [delta, r] : exps_)
            sum += (level_ / delta) * r;
        return sum;
    }

    /// Same exponents viewed at another level (which must be a multiple of every delta).
    EtaQuotient at_level(std::int64_t level) const { return EtaQuotient(level, exps_); }

    /// Pointwise exponent sum; the product of the two functions at the lcm level.
    friend EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b) {
        Exponents e = a.exps_;
        for (const auto& [delta, r] : b.exps_)
            e[delta] += r;
        return EtaQuotient(std::lcm(a.level_, b.level_), e);
    }

    /// Exponents multiplied by k (k may be negative).
    EtaQuotient pow(std::int64_t k) const {
        Exponents e;
        for (const auto& [delta, r] : exps_)
            e[delta] = r * k;
        return EtaQuotient(level_, e);
    }

    friend bool operator==(const EtaQuotient& a, const EtaQuotient& b) {
        return a.level_ == b.level_ && a.exps_ == b.exps_;
    }

private:
    std::int64_t level_ = 1;
    Exponents exps_;
};

/// `N; delta^r * delta^r * ...`, deltas in increasing order.
inline std::string format_eta_quotient(const EtaQuotient& eq) {
    std::ostringstream os;
    os << eq.level() << ';';
    bool first = true;
    for (const auto& [delta, r] : eq.exponents()) {
        os << (first ? " " : " * ") << delta << '^' << r;
        first = false;
    }
    return os.str();
}

inline EtaQuotient parse_eta_quotient(const std::string& text) {
    auto fail = [&](const std::string& why) -> EtaQuotient {
        throw Error(ErrorKind::parse_error, "eta-quotient '" + text + "': " + why);
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos)
            return std::string();
        const auto e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    };
    auto to_int = [&](const std::string& s) -> std::int64_t {
        const std::string t = trim(s);
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            fail("bad integer '" + t + "'");
        }
        if (t.empty() || pos != t.size())
            fail("bad integer '" + t + "'");
        return v;
    };

    const auto semi = text.find(';');
    if (semi == std::string::npos)
        return fail("missing ';'");
    const std::int64_t level = to_int(text.substr(0, semi));
    EtaQuotient::Exponents exps;
    const std::string body = trim(text.substr(semi + 1));
    if (!body.empty()) {
        std::size_t start = 0;
        while (true) {
            const auto star = body.find('*', start);
            const std::string factor = trim(body.substr(start, star == std::string::npos ? std::string::npos : star - start));
            const auto caret = factor.find('^');
            if (caret == std::string::npos)
                fail("factor '" + factor + "' lacks '^'");
            const std::int64_t delta = to_int(factor.substr(0, caret));
            const std::int64_t r = to_int(factor.substr(caret + 1));
            if (exps.count(delta))
                fail("repeated delta " + std::to_string(delta));
            exps[delta] = r;
            if (star == std::string::npos)
                break;
            start = star + 1;
        }
    }
    try {
        return EtaQuotient(level, exps);
    } catch (const Error& e) {
        return fail(e.what());
    }
}

/// Hauptmodul-side function F = eta(25z)eta(50z) / (eta(z)eta(2z)) on Gamma_0(50).
inline EtaQuotient f_quotient() { return EtaQuotient(50, {{1, -1}, {2, -1}, {25, 1}, {50, 1}}); }

/// Hauptmodul A = eta^2(5z)eta^2(10z) / (eta^2(z)eta^2(2z)) on Gamma_0(10).
inline EtaQuotient a_quotient() { return EtaQuotient(10, {{1, -2}, {2, -2}, {5, 2}, {10, 2}}); }

struct NewmanCheck {
    ExactRational weight;
    bool cond_upper = false;
    bool cond_lower = false;
    ExactRational s;
    bool is_modular_function = false;
};

namespace detail {

inline bool is_square(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

} // namespace detail

inline NewmanCheck check_newman(const EtaQuotient& eq) {
    NewmanCheck out;
    out.weight = eq.weight();
    out.cond_upper = eq.upper_sum() % 24 == 0;
    out.cond_lower = eq.lower_sum() % 24 == 0;
    mpz_class num = 1;
    mpz_class den = 1;
    for (const auto& [delta, r] : eq.exponents()) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(delta), static_cast<unsigned long>(r > 0 ? r : -r));
        (r > 0 ? num : den) *= p;
    }
    out.s = make_rational(num, den);
    out.is_modular_function = out.weight == 0 && out.cond_upper && out.cond_lower &&
                              detail::is_square(out.s.get_num()) && detail::is_square(out.s.get_den());
    return out;
}

struct Cusp {
    std::int64_t c = 0;
    std::int64_t d = 1;

    friend bool operator==(const Cusp&, const Cusp&) = default;
};

inline std::string to_string(const Cusp& cusp) { return std::to_string(cusp.c) + "/" + std::to_string(cusp.d); }

/// Ligozat: (N/24) sum_delta gcd(d,delta)^2 r_delta / (gcd(d,N/d) d delta).
inline ExactRational ligozat_order(const EtaQuotient& eq, const Cusp& cusp) {
    const std::int64_t n = eq.level();
    const std::int64_t d = cusp.d;
    if (d < 1 || n % d != 0)
        throw Error(ErrorKind::invalid_argument, "cusp denominator " + std::to_string(d) + " does not divide " + std::to_string(n));
    ExactRational sum = 0;
    const std::int64_t g = std::gcd(d, n / d);
    for (const auto& [delta, r] : eq.exponents()) {
        const std::int64_t gd = std::gcd(d, delta);
        sum += make_rational(mpz_class(gd * gd) * r, mpz_class(g) * d * delta);
    }
    ExactRational out = make_rational(n, 24) * sum;
    out.canonicalize();
    return out;
}

/// Order at every divisor d of the level (orders only depend on d).
inline std::map<std::int64_t, ExactRational> ligozat_table(const EtaQuotient& eq) {
    std::map<std::int64_t, ExactRational> t;
    for (std::int64_t d : divisors(eq.level()))
        t[d] = ligozat_order(eq, Cusp{d == 1 ? 0 : 1, d});
    return t;
}

/// One representative c/d per cusp class of Gamma_0(N): for each d | N the
/// classes of c modulo gcd(d, N/d), each represented by its smallest
/// positive c coprime to d; 0 is written 0/1.
inline std::vector<Cusp> cusp_representatives(std::int64_t level) {
    if (level < 1)
        throw Error(ErrorKind::invalid_argument, "level must be positive");
    std::vector<Cusp> out;
    for (std::int64_t d : divisors(level)) {
        if (d == 1) {
            out.push_back({0, 1});
            continue;
        }
        const std::int64_t g = std::gcd(d, level / d);
        std::vector<Cusp> row;
        for (std::int64_t residue = 0; residue < g; ++residue) {
            if (std::gcd(residue, g) != 1)
                continue;
            std::int64_t c = residue == 0 ? g : residue;
            while (std::gcd(c, d) != 1)
                c += g;
            row.push_back({c, d});
        }
        std::sort(row.begin(), row.end(), [](const Cusp& a, const Cusp& b) { return a.c < b.c; });
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

inline std::int64_t cusp_count(std::int64_t level) {
    std::int64_t total = 0;
    for (std::int64_t d : divisors(level))
        total += euler_phi(std::gcd(d, level / d));
    return total;
}

struct U5OrderBounds {
    /// Lower bounds at the cusps of Gamma_0(10), keyed by denominator 1, 2, 5, 10.
    std::map<std::int64_t, ExactRational> raw;
    /// Ceilings of `raw`; orders of modular functions are integers.
    std::map<std::int64_t, mpz_class> ceiled;
};

/// Orders of U_5(f) on Gamma_0(10) from orders of f on Gamma_0(50).
inline U5OrderBounds u5_order_bounds(const std::map<std::int64_t, ExactRational>& orders50) {
    auto at = [&](std::int64_t d) -> const ExactRational& {
        const auto it = orders50.find(d);
        if (it == orders50.end())
            throw Error(ErrorKind::invalid_argument, "missing order at denominator " + std::to_string(d));
        return it->second;
    };
    U5OrderBounds b;
    b.raw[1] = std::min(at(1), at(5));
    b.raw[2] = std::min(at(2), at(10));
    b.raw[5] = ExactRational(at(25) / 5);
    b.raw[10] = ExactRational(at(50) / 5);
    for (auto& [d, v] : b.raw) {
        v.canonicalize();
        b.ceiled[d] = ceil(v);
    }
    return b;
}

/// q-expansion valid below prec: q^(sum delta r / 24) prod euler_factor(delta, r).
inline QSeries expand(const EtaQuotient& eq, Exponent prec, const CoefficientRing& ring = CoefficientRing::integers()) {
    const std::int64_t upper = eq.upper_sum();
    if (upper % 24 != 0)
        throw Error(ErrorKind::non_integral_exponent,
                    "leading exponent " + std::to_string(upper) + "/24 of " + format_eta_quotient(eq) + " is not integral");
    const Exponent v = upper / 24;
    if (prec <= v)
        return QSeries::zero(ring, prec);
    const Exponent body_prec = prec - v;
    QSeries body = QSeries::one(ring, body_prec);
    for (const auto& [delta, r] : eq.exponents())
        body = mul(body, euler_factor(delta, r, body_prec, ring));
    return shift(body, v);
}

} // namespace cubicpart

#endif // CUBICPART_ETAQUOT_HPP
