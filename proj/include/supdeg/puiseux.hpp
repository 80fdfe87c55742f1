#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "supdeg/context.hpp"

namespace supdeg {

// An exact element of the representable tame closure: a finite sum of
// coefficient * pi^(exponent) terms, exponents rational with denominator
// dividing the context ram_index, coefficients in Q(zeta_M).  All stored
// coefficients are nonzero; the zero element has no terms and valuation
// +infinity.
class Pux {
public:
    Pux() = default;
    explicit Pux(Ctx ctx) : ctx_(std::move(ctx)) {}

    static Pux zero(Ctx ctx) { return Pux(std::move(ctx)); }
    static Pux monomial(const Ctx &ctx, const Cyc &coeff, const Rat &exponent) {
        Pux x(ctx);
        x.add_term(exponent, coeff);
        return x;
    }
    static Pux from_rational(const Ctx &ctx, const Rat &r) {
        return monomial(ctx, Cyc::from_rational(ctx->field(), r), Rat(0));
    }
    static Pux one(const Ctx &ctx) { return from_rational(ctx, Rat(1)); }
    static Pux pi_power(const Ctx &ctx, const Rat &e) {
        return monomial(ctx, Cyc::one(ctx->field()), e);
    }

    const Ctx &context() const { return ctx_; }
    const std::map<Rat, Cyc> &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }

    Val valuation() const {
        if (t_.empty()) return Val::infinity();
        return Val(t_.begin()->first);
    }

    Pux operator-() const {
        Pux r(ctx_);
        for (const auto &[e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }
    Pux operator+(const Pux &o) const {
        check(o);
        Pux r = *this;
        for (const auto &[e, c] : o.t_) r.add_term(e, c);
        return r;
    }
    Pux operator-(const Pux &o) const { return *this + (-o); }
    Pux operator*(const Pux &o) const {
        check(o);
        Pux r(ctx_);
        for (const auto &[e1, c1] : t_)
            for (const auto &[e2, c2] : o.t_) r.add_term(Rat(e1 + e2), c1 * c2);
        return r;
    }
    Pux scaled(const Cyc &c) const {
        Pux r(ctx_);
        if (c.is_zero()) return r;
        for (const auto &[e, k] : t_) r.add_term(e, k * c);
        return r;
    }
    Pux scaled(const Rat &r) const { return scaled(Cyc::from_rational(ctx_->field(), r)); }

    Pux pow(unsigned long n) const {
        Pux acc = one(ctx_);
        for (unsigned long i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    // Galois generator applied k times: c * pi^(j/N) -> c * zeta_N^(j k) * pi^(j/N).
    Pux galois_apply(long k) const {
        if (!ctx_->galois_available())
            throw context_error("galois action needs zeta_N among coefficients (N | M)");
        unsigned n = ctx_->ram_index();
        unsigned m = ctx_->cyclotomic_order();
        Pux r(ctx_);
        for (const auto &[e, c] : t_) {
            Int j = numerator(e) * (static_cast<long>(n) / denominator(e));
            Int rot = mod_euclid(j * Int(k) * Int(static_cast<long>(m / n)), Int(static_cast<long>(m)));
            r.add_term(e, c * Cyc::zeta_pow(ctx_->field(), rot.get_si()));
        }
        return r;
    }

    // Degree of the generated extension over the context base field: the
    // smallest k >= 1 fixing the element under the Galois generator.
    // Coefficients are always Galois-fixed here, so this is the lcm of the
    // reduced exponent denominators.
    Int degree_over_base() const {
        Int d(1);
        for (const auto &[e, c] : t_) d = lcm(d, denominator(e));
        return d;
    }

    // Keep exactly the terms with exponent strictly below e.
    Pux truncate_below(const Rat &e) const {
        Pux r(ctx_);
        for (const auto &[exp, c] : t_) {
            if (exp < e)
                r.t_.emplace(exp, c);
            else
                break;
        }
        return r;
    }

    // Element of the base field itself: all exponents integral.
    bool is_base_rational() const {
        for (const auto &[e, c] : t_)
            if (!is_integer(e)) return false;
        return true;
    }

    bool touches_prime(unsigned p) const {
        for (const auto &[e, c] : t_)
            if (c.touches_prime(p)) return true;
        return false;
    }

    friend bool operator==(const Pux &a, const Pux &b) {
        return compatible(a.ctx_, b.ctx_) && a.t_ == b.t_;
    }
    friend bool operator!=(const Pux &a, const Pux &b) { return !(a == b); }

    // Canonical total order: by term sequence (exponent, then coefficient).
    int compare(const Pux &o) const {
        auto i = t_.begin();
        auto j = o.t_.begin();
        for (; i != t_.end() && j != o.t_.end(); ++i, ++j) {
            int c = cmp(i->first, j->first);
            if (c != 0) return c;
            c = i->second.compare(j->second);
            if (c != 0) return c;
        }
        if (i != t_.end()) return 1;
        if (j != o.t_.end()) return -1;
        return 0;
    }
    friend bool operator<(const Pux &a, const Pux &b) { return a.compare(b) < 0; }

    // Reinterpret in another context with the same coefficient field,
    // exponents scaled by the given factor (1 for plain widening).
    Pux transported(const Ctx &to, const Rat &exponent_scale) const {
        Pux r(to);
        for (const auto &[e, c] : t_) r.add_term(Rat(e * exponent_scale), c);
        return r;
    }

    std::string str() const;

private:
    void check(const Pux &o) const {
        if (!compatible(ctx_, o.ctx_)) throw context_error("operands built over different contexts");
    }
    void add_term(const Rat &e, const Cyc &c) {
        if (!divides(denominator(e), Int(static_cast<long>(ctx_->ram_index()))))
            throw context_error("exponent denominator " + to_string(denominator(e)) +
                                " exceeds ram_index " + std::to_string(ctx_->ram_index()));
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            Cyc s = it->second + c;
            if (s.is_zero())
                t_.erase(it);
            else
                it->second = s;
        }
    }

    Ctx ctx_;
    std::map<Rat, Cyc> t_;
};

// Valuation of the difference, the ultrametric distance in valuation form.
inline Val dist_val(const Pux &a, const Pux &b) { return (a - b).valuation(); }

// Canonical rendering of an integral zeta-polynomial, ascending powers,
// e.g. "z^2" or "1 - z + 2*z^3".
inline std::string zpoly_str(const Cyc &c) {
    if (!c.is_integral())
        throw std::invalid_argument("coefficient not representable as an integer polynomial in z");
    std::ostringstream os;
    bool first = true;
    const auto &co = c.coords();
    for (size_t i = 0; i < co.size(); ++i) {
        if (co[i] == 0) continue;
        Rat a = abs(co[i]);
        bool neg = co[i] < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (i == 0) {
            os << to_string(a);
        } else {
            if (a != 1) os << to_string(a) << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

inline std::string Pux::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        std::string mono = "pi^(" + to_string(e) + ")";
        if (c.is_rational()) {
            Rat r = c.rational_value();
            if (r < 0) os << "-";
            Rat a = abs(r);
            if (e == 0) {
                os << to_string(a);
            } else if (a == 1) {
                os << mono;
            } else {
                os << to_string(a) << "*" << mono;
            }
        } else {
            os << "(" << zpoly_str(c) << ")";
            if (e != 0) os << "*" << mono;
        }
    }
    return os.str();
}

}  // namespace supdeg
