/**
 * @file ring.hpp
 * @brief Coefficient rings for q-series: exact integers or residues mod m.
 */
#ifndef CUBICPART_RING_HPP
#define CUBICPART_RING_HPP

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace cubicpart {

class CoefficientRing {
public:
    enum class Kind { exact, residues };

    /// The ring of integers.
    CoefficientRing() = default;

    static CoefficientRing integers() { return {}; }

    static CoefficientRing residues(const mpz_class& m) {
        if (m < 2)
            throw Error(ErrorKind::invalid_argument, "residue modulus must be >= 2, got " + m.get_str());
        CoefficientRing r;
        r.kind_ = Kind::residues;
        r.modulus_ = m;
        return r;
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::exact; }
    /// Zero for the exact ring.
    const mpz_class& modulus() const { return modulus_; }

    /// Brings `x` into canonical form: [0, m) for residues, unchanged otherwise.
    void normalize(mpz_class& x) const {
        if (kind_ == Kind::residues)
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
    }

    mpz_class canonical(mpz_class x) const {
        normalize(x);
        return x;
    }

    bool is_unit(const mpz_class& x) const {
        if (kind_ == Kind::exact)
            return x == 1 || x == -1;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
        return g == 1;
    }

    mpz_class unit_inverse(const mpz_class& x) const {
        if (!is_unit(x))
            throw Error(ErrorKind::non_unit_leading, x.get_str() + " is not a unit in " + to_string());
        if (kind_ == Kind::exact)
            return x;
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
        return inv;
    }

    /// `Z` or `Zmod:m`, as used in the series header line.
    std::string to_string() const {
        return kind_ == Kind::exact ? std::string("Z") : "Zmod:" + modulus_.get_str();
    }

    static CoefficientRing parse(const std::string& s) {
        if (s == "Z")
            return integers();
        const std::string prefix = "Zmod:";
        if (s.rfind(prefix, 0) == 0) {
            mpz_class m;
            if (m.set_str(s.substr(prefix.size()), 10) != 0)
                throw Error(ErrorKind::parse_error, "bad modulus in ring '" + s + "'");
            return residues(m);
        }
        throw Error(ErrorKind::parse_error, "unknown ring '" + s + "'");
    }

    friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
    }

private:
    Kind kind_ = Kind::exact;
    mpz_class modulus_ = 0;
};

} // namespace cubicpart

#endif // CUBICPART_RING_HPP
