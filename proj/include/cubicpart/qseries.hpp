/**
 * @file qseries.hpp
 * @brief Truncated Laurent series in q with checked precision.
 *
 * A QSeries stores the coefficients of q^vmin, q^(vmin+1), ... and a
 * precision `prec`: every coefficient of q^n with n < prec is known, the
 * ones not stored being zero. `kExactPrec` marks a series known exactly
 * (a Laurent polynomial). Every operation derives the tightest precision
 * that follows from the precision of its inputs.
 */
#ifndef CUBICPART_QSERIES_HPP
#define CUBICPART_QSERIES_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "ring.hpp"

namespace cubicpart {

using Exponent = std::int64_t;

inline constexpr Exponent kExactPrec = std::numeric_limits<Exponent>::max();

namespace detail {

inline Exponent prec_add(Exponent a, Exponent b) {
    if (a == kExactPrec || b == kExactPrec)
        return kExactPrec;
    return a + b;
}

inline Exponent floor_div(Exponent a, Exponent b) {
    Exponent q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Exponent ceil_div(Exponent a, Exponent b) { return -floor_div(-a, b); }

} // namespace detail

class QSeries {
public:
    /// Exact zero over the integers.
    QSeries() = default;

    /// Builds and normalizes a series. `coeffs[k]` is the coefficient of q^(vmin+k).
    QSeries(CoefficientRing ring, Exponent vmin, std::vector<mpz_class> coeffs, Exponent prec)
        : ring_(std::move(ring)), vmin_(vmin), prec_(prec), coeffs_(std::move(coeffs)) {
        normalize();
    }

    static QSeries zero(const CoefficientRing& ring, Exponent prec = kExactPrec) {
        return QSeries(ring, 0, {}, prec);
    }

    static QSeries one(const CoefficientRing& ring, Exponent prec = kExactPrec) {
        return monomial(ring, 1, 0, prec);
    }

    static QSeries monomial(const CoefficientRing& ring, const mpz_class& c, Exponent n,
                            Exponent prec = kExactPrec) {
        return QSeries(ring, n, {c}, prec);
    }

    const CoefficientRing& ring() const { return ring_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return prec_ == kExactPrec; }
    Exponent prec() const { return prec_; }

    /// Exponent of the leading term. For zero this is the precision bound
    /// (the series is O(q^prec)), or 0 for the exact zero.
    Exponent vmin() const {
        if (is_zero())
            return is_exact() ? 0 : prec_;
        return vmin_;
    }

    /// Coefficients of q^vmin .. q^(vmin+size-1); later ones below prec are zero.
    std::span<const mpz_class> stored() const { return coeffs_; }

    const mpz_class& leading() const {
        if (is_zero())
            throw Error(ErrorKind::invalid_argument, "zero series has no leading coefficient");
        return coeffs_.front();
    }

    mpz_class coeff(Exponent n) const {
        if (n >= prec_)
            throw Error(ErrorKind::out_of_window,
                        "coefficient of q^" + std::to_string(n) + " requested but prec is " + std::to_string(prec_));
        if (is_zero() || n < vmin_)
            return 0;
        const auto k = static_cast<std::size_t>(n - vmin_);
        return k < coeffs_.size() ? coeffs_[k] : mpz_class(0);
    }

    /// Structural equality: same ring, precision and coefficients.
    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.ring_ == b.ring_ && a.prec_ == b.prec_ && a.vmin() == b.vmin() && a.coeffs_ == b.coeffs_;
    }

private:
    void normalize() {
        for (auto& c : coeffs_)
            ring_.normalize(c);
        if (prec_ != kExactPrec) {
            const Exponent keep = std::max<Exponent>(0, prec_ - vmin_);
            if (static_cast<Exponent>(coeffs_.size()) > keep)
                coeffs_.resize(static_cast<std::size_t>(keep));
        }
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0)
            ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            vmin_ += static_cast<Exponent>(lead);
        }
        if (coeffs_.empty())
            vmin_ = 0;
    }

    CoefficientRing ring_;
    Exponent vmin_ = 0;
    Exponent prec_ = kExactPrec;
    std::vector<mpz_class> coeffs_;
};

namespace detail {

inline void require_same_ring(const QSeries& f, const QSeries& g) {
    if (!(f.ring() == g.ring()))
        throw Error(ErrorKind::ring_mismatch, f.ring().to_string() + " vs " + g.ring().to_string());
}

/// Indices k >= 1 with a nonzero k-th stored coefficient.
inline std::vector<std::size_t> nonzero_tail(std::span<const mpz_class> c) {
    std::vector<std::size_t> nz;
    for (std::size_t k = 1; k < c.size(); ++k)
        if (c[k] != 0)
            nz.push_back(k);
    return nz;
}

} // namespace detail

inline QSeries truncate(const QSeries& f, Exponent prec) {
    const Exponent p = std::min(prec, f.prec());
    if (f.is_zero())
        return QSeries::zero(f.ring(), p);
    return QSeries(f.ring(), f.vmin(), {f.stored().begin(), f.stored().end()}, p);
}

/// Multiplies by q^k.
inline QSeries shift(const QSeries& f, Exponent k) {
    const Exponent p = detail::prec_add(f.prec(), k);
    if (f.is_zero())
        return QSeries::zero(f.ring(), p);
    return QSeries(f.ring(), f.vmin() + k, {f.stored().begin(), f.stored().end()}, p);
}

inline QSeries scale(const QSeries& f, const mpz_class& c) {
    std::vector<mpz_class> out(f.stored().begin(), f.stored().end());
    for (auto& x : out)
        x *= c;
    return QSeries(f.ring(), f.vmin(), std::move(out), f.prec());
}

inline QSeries neg(const QSeries& f) { return scale(f, -1); }

inline QSeries add(const QSeries& f, const QSeries& g) {
    detail::require_same_ring(f, g);
    const Exponent p = std::min(f.prec(), g.prec());
    if (f.is_zero())
        return truncate(g, p);
    if (g.is_zero())
        return truncate(f, p);
    const Exponent lo = std::min(f.vmin(), g.vmin());
    Exponent hi = std::max(f.vmin() + static_cast<Exponent>(f.stored().size()),
                           g.vmin() + static_cast<Exponent>(g.stored().size()));
    hi = std::min(hi, p);
    if (hi <= lo)
        return QSeries::zero(f.ring(), p);
    std::vector<mpz_class> out(static_cast<std::size_t>(hi - lo));
    auto accumulate = [&](const QSeries& s) {
        const auto c = s.stored();
        for (std::size_t k = 0; k < c.size(); ++k) {
            const Exponent n = s.vmin() + static_cast<Exponent>(k);
            if (n >= hi)
                break;
            out[static_cast<std::size_t>(n - lo)] += c[k];
        }
    };
    accumulate(f);
    accumulate(g);
    return QSeries(f.ring(), lo, std::move(out), p);
}

inline QSeries sub(const QSeries& f, const QSeries& g) { return add(f, neg(g)); }

/// Cauchy product; prec = min(f.prec + g.vmin, g.prec + f.vmin).
inline QSeries mul(const QSeries& f, const QSeries& g) {
    detail::require_same_ring(f, g);
    const Exponent p = std::min(detail::prec_add(f.prec(), g.vmin()), detail::prec_add(g.prec(), f.vmin()));
    if (f.is_zero() || g.is_zero())
        return QSeries::zero(f.ring(), p);
    const Exponent v = f.vmin() + g.vmin();
    const auto fc = f.stored();
    const auto gc = g.stored();
    std::size_t len = fc.size() + gc.size() - 1;
    if (p != kExactPrec)
        len = std::min<std::size_t>(len, static_cast<std::size_t>(std::max<Exponent>(0, p - v)));
    std::vector<mpz_class> out(len);

    // Outer loop over the sparser factor; eta products are lacunary.
    const auto count_nz = [](std::span<const mpz_class> c) {
        return std::count_if(c.begin(), c.end(), [](const mpz_class& x) { return x != 0; });
    };
    auto outer = fc;
    auto inner = gc;
    if (count_nz(gc) < count_nz(fc))
        std::swap(outer, inner);
    for (std::size_t i = 0; i < outer.size() && i < len; ++i) {
        if (outer[i] == 0)
            continue;
        const std::size_t jmax = std::min(inner.size(), len - i);
        mpz_srcptr a = outer[i].get_mpz_t();
        for (std::size_t j = 0; j < jmax; ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a, inner[j].get_mpz_t());
    }
    return QSeries(f.ring(), v, std::move(out), p);
}

/// Multiplicative inverse, valid below min(prec, f.prec - 2 f.vmin).
inline QSeries inverse(const QSeries& f, Exponent prec = kExactPrec) {
    if (f.is_zero())
        throw Error(ErrorKind::non_unit_leading, "cannot invert the zero series");
    const mpz_class u = f.ring().unit_inverse(f.leading());
    const Exponent v = f.vmin();
    const Exponent rprec = std::min(prec, detail::prec_add(f.prec(), -2 * v));
    if (rprec == kExactPrec)
        throw Error(ErrorKind::invalid_argument, "inverse of an exact series needs a finite prec");
    const Exponent len = rprec + v;
    if (len <= 0)
        return QSeries::zero(f.ring(), rprec);

    const auto h = f.stored();
    std::vector<std::size_t> nz;
    for (std::size_t k : detail::nonzero_tail(h))
        if (static_cast<Exponent>(k) < len)
            nz.push_back(k);

    std::vector<mpz_class> g(static_cast<std::size_t>(len));
    g[0] = u;
    mpz_class s;
    for (std::size_t n = 1; n < g.size(); ++n) {
        s = 0;
        for (std::size_t k : nz) {
            if (k > n)
                break;
            mpz_addmul(s.get_mpz_t(), h[k].get_mpz_t(), g[n - k].get_mpz_t());
        }
        g[n] = -u * s;
        f.ring().normalize(g[n]);
    }
    return QSeries(f.ring(), -v, std::move(g), rprec);
}

/// f^e by square-and-multiply. Negative e inverts first; `prec_cap` bounds
/// the inverse when f is exact.
inline QSeries int_pow(const QSeries& f, std::int64_t e, Exponent prec_cap = kExactPrec) {
    if (e == 0)
        return QSeries::one(f.ring());
    QSeries base = e > 0 ? f : inverse(f, prec_cap);
    std::uint64_t n = e > 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-(e + 1)) + 1;
    std::optional<QSeries> acc;
    while (true) {
        if (n & 1U)
            acc = acc ? mul(*acc, base) : base;
        n >>= 1U;
        if (n == 0)
            break;
        base = mul(base, base);
    }
    return *acc;
}

/// Atkin's U_p: coefficient of q^n in the result is that of q^(pn) in f.
inline QSeries u_p(const QSeries& f, std::int64_t p) {
    if (p < 2)
        throw Error(ErrorKind::invalid_argument, "U_p needs p >= 2");
    const Exponent rprec = f.is_exact() ? kExactPrec : detail::floor_div(f.prec() - 1, p) + 1;
    if (f.is_zero())
        return QSeries::zero(f.ring(), rprec);
    const Exponent v = detail::ceil_div(f.vmin(), p);
    const auto c = f.stored();
    std::vector<mpz_class> out;
    for (Exponent n = v;; ++n) {
        const Exponent k = p * n - f.vmin();
        if (k >= static_cast<Exponent>(c.size()))
            break;
        out.push_back(c[static_cast<std::size_t>(k)]);
    }
    return QSeries(f.ring(), v, std::move(out), rprec);
}

/// Reduces an exact series into a residue ring (or a residue series into a
/// ring whose modulus divides the current one).
inline QSeries change_ring(const QSeries& f, const CoefficientRing& ring) {
    if (!f.ring().is_exact()) {
        if (ring.is_exact() || !mpz_divisible_p(f.ring().modulus().get_mpz_t(), ring.modulus().get_mpz_t()))
            throw Error(ErrorKind::ring_mismatch, "cannot lift " + f.ring().to_string() + " to " + ring.to_string());
    }
    return QSeries(ring, f.vmin(), {f.stored().begin(), f.stored().end()}, f.prec());
}

/// Sum of (-1)^k q^(delta k(3k-1)/2) over all integers k, below prec.
inline QSeries pentagonal_series(std::int64_t delta, Exponent prec, const CoefficientRing& ring) {
    std::vector<mpz_class> c(static_cast<std::size_t>(std::max<Exponent>(prec, 1)));
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (std::int64_t kk : {k, -k}) {
            if (k == 0 && any)
                break;
            const Exponent e = delta * (kk * (3 * kk - 1) / 2);
            if (e < prec) {
                c[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any)
            break;
    }
    return QSeries(ring, 0, std::move(c), prec);
}

/// Expansion of prod_{n>=1} (1 - q^(delta n))^r below prec.
inline QSeries euler_factor(std::int64_t delta, std::int64_t r, Exponent prec,
                            const CoefficientRing& ring = CoefficientRing::integers()) {
    if (delta < 1)
        throw Error(ErrorKind::invalid_argument, "euler_factor needs delta >= 1");
    if (prec < 1)
        throw Error(ErrorKind::invalid_argument, "euler_factor needs prec >= 1");
    if (r == 0)
        return QSeries::one(ring, prec);
    const QSeries base = pentagonal_series(delta, prec, ring);
    if (r == 1)
        return base;
    return int_pow(base, r, prec);
}

/// First exponent below both precisions (and below `upto`) where f and g differ.
inline std::optional<Exponent> first_difference(const QSeries& f, const QSeries& g, Exponent upto = kExactPrec) {
    detail::require_same_ring(f, g);
    if (f.is_zero() && g.is_zero())
        return std::nullopt;
    auto end_of = [](const QSeries& s) { return s.vmin() + static_cast<Exponent>(s.stored().size()); };
    Exponent lo = kExactPrec;
    Exponent last = std::numeric_limits<Exponent>::min();
    for (const QSeries* s : {&f, &g}) {
        if (s->is_zero())
            continue;
        lo = std::min(lo, s->vmin());
        last = std::max(last, end_of(*s));
    }
    const Exponent stop = std::min({f.prec(), g.prec(), upto, last});
    for (Exponent n = lo; n < stop; ++n)
        if (f.coeff(n) != g.coeff(n))
            return n;
    return std::nullopt;
}

inline bool agree_within(const QSeries& f, const QSeries& g, Exponent upto = kExactPrec) {
    return !first_difference(f, g, upto).has_value();
}

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return sub(f, g); }
inline QSeries operator-(const QSeries& f) { return neg(f); }
inline QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }

// ---- wire format -------------------------------------------------------

inline std::string prec_to_string(Exponent p) { return p == kExactPrec ? std::string("inf") : std::to_string(p); }

/// Header `vmin=<int> prec=<int|inf> ring=<Z|Zmod:m>`, then `n<TAB>c` per nonzero term.
inline void write_series(std::ostream& os, const QSeries& f) {
    os << "vmin=" << f.vmin() << " prec=" << prec_to_string(f.prec()) << " ring=" << f.ring().to_string() << '\n';
    const auto c = f.stored();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0)
            os << f.vmin() + static_cast<Exponent>(k) << '\t' << c[k].get_str() << '\n';
}

inline std::string serialize(const QSeries& f) {
    std::ostringstream os;
    write_series(os, f);
    return os.str();
}

namespace detail {

inline Exponent parse_exponent(const std::string& s) {
    if (s == "inf")
        return kExactPrec;
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse_error, "bad integer '" + s + "'");
    }
    if (pos != s.size())
        throw Error(ErrorKind::parse_error, "bad integer '" + s + "'");
    return v;
}

inline std::string take_field(const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0)
        throw Error(ErrorKind::parse_error, "expected '" + key + "=...' but got '" + token + "'");
    return token.substr(key.size() + 1);
}

} // namespace detail

inline QSeries read_series(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw Error(ErrorKind::parse_error, "missing series header");
    std::istringstream hs(header);
    std::string tv, tp, tr, extra;
    if (!(hs >> tv >> tp >> tr) || (hs >> extra))
        throw Error(ErrorKind::parse_error, "malformed series header '" + header + "'");
    const Exponent vmin = detail::parse_exponent(detail::take_field(tv, "vmin"));
    const Exponent prec = detail::parse_exponent(detail::take_field(tp, "prec"));
    const CoefficientRing ring = CoefficientRing::parse(detail::take_field(tr, "ring"));

    std::vector<mpz_class> coeffs;
    std::string line;
    Exponent last = vmin - 1;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw Error(ErrorKind::parse_error, "term line without TAB: '" + line + "'");
        const Exponent n = detail::parse_exponent(line.substr(0, tab));
        mpz_class c;
        if (c.set_str(line.substr(tab + 1), 10) != 0)
            throw Error(ErrorKind::parse_error, "bad coefficient in '" + line + "'");
        if (n <= last || n >= prec || c == 0 || ring.canonical(c) != c)
            throw Error(ErrorKind::parse_error, "non-canonical term line '" + line + "'");
        if (coeffs.empty() && n != vmin)
            throw Error(ErrorKind::parse_error, "first term exponent differs from vmin");
        coeffs.resize(static_cast<std::size_t>(n - vmin));
        coeffs.push_back(c);
        last = n;
    }
    QSeries f(ring, vmin, std::move(coeffs), prec);
    if (f.vmin() != vmin)
        throw Error(ErrorKind::parse_error, "header vmin does not match the terms");
    return f;
}

inline QSeries deserialize(const std::string& text) {
    std::istringstream is(text);
    return read_series(is);
}

} // namespace cubicpart

#endif // CUBICPART_QSERIES_HPP
