#pragma once

#include <optional>
#include <vector>

#include "supdeg/rational.hpp"

namespace supdeg {

// The map rho(x) = (a x + c) / b from (1/r)Z to (1/(r b))Z, restricted to an
// open interval.  Asks whether the image meets (1/r)Z, i.e. whether some
// numerator n with n/r in I satisfies a n = -r c (mod b).
struct AffineLatticeProblem {
    Int a;
    Int b;               // b >= 1
    Rat c;               // intercept numerator of c/b; r*c must clear to an integer
    Int r = 1;           // target lattice (1/r)Z, r >= 1
    std::optional<Rat> lo;  // open lower endpoint; nullopt = -infinity
    std::optional<Rat> hi;  // open upper endpoint; nullopt = +infinity

    void validate() const {
        if (b < 1) throw std::invalid_argument("modulus b must be >= 1");
        if (r < 1) throw std::invalid_argument("lattice parameter r must be >= 1");
        if (!in_lattice(c, r)) throw std::invalid_argument("r*c is not an integer");
    }
    Int rc() const { return Int(numerator(c) * (r / denominator(c))); }
    bool bounded() const { return lo && hi; }
    std::optional<Rat> length() const {
        if (!bounded()) return std::nullopt;
        return Rat(*hi - *lo);
    }
};

// Complete sorted list of numerators n with n/r in the open interval and
// a*n + r*c = 0 (mod b).  The interval must be bounded unless a cap on the
// numerator range is supplied.
inline std::vector<Int> solutions_in_interval(const AffineLatticeProblem &p,
                                              std::optional<Int> cap = std::nullopt) {
    p.validate();
    if (!p.bounded() && !cap) throw std::invalid_argument("unbounded interval needs an explicit cap");
    Int n_min, n_max;
    if (p.lo)
        n_min = floor_rat(Rat(*p.lo * Rat(p.r))) + 1;
    else
        n_min = -*cap;
    if (p.hi)
        n_max = ceil_rat(Rat(*p.hi * Rat(p.r))) - 1;
    else
        n_max = *cap;
    std::vector<Int> out;
    Int rc = p.rc();
    for (Int n = n_min; n <= n_max; ++n)
        if (divides(p.b, p.a * n + rc)) out.push_back(n);
    return out;
}

// Decides whether the image of rho meets (1/r)Z.  With ignore_interval the
// criterion is gcd(a, b) | r c; otherwise the interval is honored, using the
// pigeonhole guarantee for intervals longer than (b+1)/r and enumation for
// the rest.
inline bool lattice_solvable(const AffineLatticeProblem &p, bool ignore_interval) {
    p.validate();
    Int g = gcd(p.a, p.b);
    bool gcd_ok = divides(g, p.rc());
    if (ignore_interval) return gcd_ok;
    if (!gcd_ok) return false;
    if (!p.bounded()) return true;  // an unbounded interval meets every residue class
    Rat need = rat(Int(p.b + 1), Int(p.r));
    if (*p.length() > need) return true;
    return !solutions_in_interval(p).empty();
}

// Smallest r_0 such that every r >= r_0 makes the open interval (M, N)
// longer than (q+1)/r; computed as the smallest integer greater than
// (q+1)/(N-M) + 1.
inline long stability_threshold(long q, const Rat &M, const Rat &N) {
    if (!(M < N)) throw std::invalid_argument("interval endpoints must satisfy M < N");
    Rat x = rat(Int(q + 1), Int(1)) / Rat(N - M) + 1;
    Int r0 = floor_rat(x) + 1;
    return r0.get_si();
}

}  // namespace supdeg
