#ifndef CUBICPART_APOLY_HPP
#define CUBICPART_APOLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qseries.hpp"

namespace cubicpart {

/// Polynomial sum_j c_j A^j with exact integer coefficients; trailing zeros trimmed.
class APoly {
public:
    APoly() = default;

    explicit APoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    APoly(std::initializer_list<long> coeffs) {
        for (long x : coeffs)
            c_.emplace_back(x);
        trim();
    }

    static APoly monomial(const mpz_class& c, std::size_t j) {
        std::vector<mpz_class> v(j + 1);
        v[j] = c;
        return APoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    std::span<const mpz_class> coeffs() const { return c_; }

    mpz_class operator[](std::size_t j) const { return j < c_.size() ? c_[j] : mpz_class(0); }

    /// Smallest j with a nonzero coefficient.
    std::optional<std::size_t> low_degree() const {
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0)
                return j;
        return std::nullopt;
    }

    friend APoly operator+(const APoly& a, const APoly& b) {
        std::vector<mpz_class> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t j = 0; j < a.c_.size(); ++j)
            out[j] += a.c_[j];
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[j] += b.c_[j];
        return APoly(std::move(out));
    }

    friend APoly operator-(const APoly& a) { return a * mpz_class(-1); }
    friend APoly operator-(const APoly& a, const APoly& b) { return a + (-b); }

    friend APoly operator*(const APoly& a, const mpz_class& k) {
        std::vector<mpz_class> out(a.c_);
        for (auto& x : out)
            x *= k;
        return APoly(std::move(out));
    }

    friend APoly operator*(const APoly& a, const APoly& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<mpz_class> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
        return APoly(std::move(out));
    }

    friend bool operator==(const APoly& a, const APoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

/// Which family a U_5 image belongs to: U(A^i) rows or U(F A^i) rows.
enum class BasisKind { a, fa };

inline std::string to_string(BasisKind k) { return k == BasisKind::a ? "A" : "FA"; }

/// Human-readable form, e.g. `-2 - 5A` or `3A + 25A^2 + 125A^3`.
inline std::string to_string(const APoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    const auto c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0)
            continue;
        mpz_class mag = abs(c[j]);
        if (out.empty())
            out += c[j] < 0 ? "-" : "";
        else
            out += c[j] < 0 ? " - " : " + ";
        if (j == 0 || mag != 1)
            out += mag.get_str();
        if (j >= 1)
            out += "A";
        if (j >= 2)
            out += "^" + std::to_string(j);
    }
    return out;
}

/// p(A) as a q-series valid below min(prec, a.prec); `a` must have vmin >= 1.
inline QSeries evaluate(const APoly& p, const QSeries& a, Exponent prec) {
    const CoefficientRing& ring = a.ring();
    const Exponent window = std::min(prec, a.prec());
    QSeries sum = QSeries::zero(ring, window);
    QSeries power = QSeries::one(ring, window);
    const auto c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j > 0) {
            power = mul(power, a);
            if (power.is_zero())
                break;
        }
        if (c[j] != 0)
            sum = add(sum, scale(power, c[j]));
    }
    return truncate(sum, window);
}

} // namespace cubicpart

#endif // CUBICPART_APOLY_HPP
