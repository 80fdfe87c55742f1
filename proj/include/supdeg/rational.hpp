#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace supdeg {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int &n, const Int &d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Int numerator(const Rat &q) { return q.get_num(); }
inline Int denominator(const Rat &q) { return q.get_den(); }
inline bool is_integer(const Rat &q) { return q.get_den() == 1; }

inline Int gcd(const Int &a, const Int &b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int &a, const Int &b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int floor_rat(const Rat &q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int ceil_rat(const Rat &q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// a mod m in [0, m)
inline Int mod_euclid(const Int &a, const Int &m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Int &d, const Int &a) {
    if (d == 0) return a == 0;
    return mod_euclid(a, abs(d)) == 0;
}

// q in (1/r)Z, i.e. r*q integral; q is canonical so this is den(q) | r.
inline bool in_lattice(const Rat &q, const Int &r) {
    return divides(denominator(q), r);
}

inline std::string to_string(const Rat &q) { return q.get_str(); }
inline std::string to_string(const Int &n) { return n.get_str(); }

// A valuation: a rational or +infinity (the valuation of zero).
class Val {
public:
    Val() : inf_(true) {}
    explicit Val(Rat q) : inf_(false), q_(std::move(q)) {}
    static Val infinity() { return Val(); }

    bool is_infinite() const { return inf_; }
    const Rat &finite() const {
        if (inf_) throw std::logic_error("valuation is infinite");
        return q_;
    }

    friend bool operator==(const Val &a, const Val &b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.q_ == b.q_;
    }
    friend bool operator!=(const Val &a, const Val &b) { return !(a == b); }
    friend bool operator<(const Val &a, const Val &b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.q_ < b.q_;
    }
    friend bool operator<=(const Val &a, const Val &b) { return a < b || a == b; }
    friend bool operator>(const Val &a, const Val &b) { return b < a; }
    friend bool operator>=(const Val &a, const Val &b) { return b <= a; }

    friend Val operator+(const Val &a, const Val &b) {
        if (a.inf_ || b.inf_) return infinity();
        return Val(a.q_ + b.q_);
    }

    Val scaled(const Rat &k) const {
        if (inf_) return infinity();
        return Val(Rat(q_ * k));
    }

    std::string str() const { return inf_ ? "inf" : to_string(q_); }

private:
    bool inf_;
    Rat q_;
};

inline Val min(const Val &a, const Val &b) { return a < b ? a : b; }
inline Val max(const Val &a, const Val &b) { return a < b ? b : a; }

// Lexicographic comparison helper for rational vectors.
inline int cmp(const Rat &a, const Rat &b) {
    return mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
}

}  // namespace supdeg
