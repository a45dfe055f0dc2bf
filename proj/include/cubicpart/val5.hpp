#ifndef CUBICPART_VAL5_HPP
#define CUBICPART_VAL5_HPP

#include <gmpxx.h>

#include <algorithm>
#include <string>

namespace cubicpart {

/// 5-adic order of an integer; the order of 0 is +infinity.
class Val5 {
public:
    static Val5 infinite() { return Val5(true, 0); }
    static Val5 finite(long v) { return Val5(false, v); }

    bool is_infinite() const { return inf_; }
    long value() const { return v_; }

    /// pi(m) >= bound; always true for +infinity.
    bool at_least(long bound) const { return inf_ || v_ >= bound; }

    friend Val5 operator+(Val5 a, Val5 b) {
        if (a.inf_ || b.inf_)
            return infinite();
        return finite(a.v_ + b.v_);
    }

    friend Val5 min(Val5 a, Val5 b) {
        if (a.inf_)
            return b;
        if (b.inf_)
            return a;
        return finite(std::min(a.v_, b.v_));
    }

    friend bool operator==(Val5 a, Val5 b) { return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_); }

    friend bool operator<(Val5 a, Val5 b) {
        if (a.inf_)
            return false;
        return b.inf_ || a.v_ < b.v_;
    }

    std::string to_string() const { return inf_ ? std::string("inf") : std::to_string(v_); }

private:
    Val5(bool inf, long v) : inf_(inf), v_(v) {}

    bool inf_;
    long v_;
};

inline Val5 pval5(const mpz_class& m) {
    if (m == 0)
        return Val5::infinite();
    mpz_class rest;
    const mpz_class five = 5;
    const auto e = mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), five.get_mpz_t());
    return Val5::finite(static_cast<long>(e));
}

} // namespace cubicpart

#endif // CUBICPART_VAL5_HPP
