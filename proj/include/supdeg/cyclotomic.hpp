#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "supdeg/rational.hpp"

namespace supdeg {

namespace detail {

// Cyclotomic polynomial Phi_M over Z, computed by exact division:
// x^M - 1 = prod_{d | M} Phi_d(x).
inline std::vector<Int> cyclotomic_poly(unsigned M) {
    static std::map<unsigned, std::vector<Int>> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    std::vector<unsigned> stack{M};
    while (!stack.empty()) {
        unsigned m = stack.back();
        if (memo.count(m)) {
            stack.pop_back();
            continue;
        }
        bool ready = true;
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0 && !memo.count(d)) {
                stack.push_back(d);
                ready = false;
            }
        if (!ready) continue;
        stack.pop_back();

        std::vector<Int> f(m + 1, 0);  // x^m - 1
        f[0] = -1;
        f[m] = 1;
        for (unsigned d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const auto &g = memo.at(d);  // monic, exact divisor
            std::vector<Int> q(f.size() - g.size() + 1, 0);
            std::vector<Int> rem = f;
            for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
                Int coef = rem[i + g.size() - 1];
                q[i] = coef;
                if (coef == 0) continue;
                for (size_t j = 0; j < g.size(); ++j) rem[i + j] -= coef * g[j];
            }
            f = q;
        }
        memo[m] = f;
    }
    return memo.at(M);
}

}  // namespace detail

// The field Q(zeta_M) with the canonical basis 1, z, ..., z^{phi(M)-1}
// modulo Phi_M.  Immutable, shared between all values of the same order.
class CycField {
public:
    explicit CycField(unsigned M) : M_(M) {
        if (M == 0) throw std::invalid_argument("cyclotomic order must be positive");
        phi_ = detail::cyclotomic_poly(M);
        deg_ = static_cast<unsigned>(phi_.size()) - 1;
        // z^k expressed in the basis, for k in [0, M).  Built by repeated
        // multiplication by z with reduction via the monic Phi_M.
        zpow_.resize(M_);
        std::vector<Rat> cur(deg_, Rat(0));
        cur[0] = 1;
        for (unsigned k = 0; k < M_; ++k) {
            zpow_[k] = cur;
            std::vector<Rat> next(deg_, Rat(0));
            Rat top = cur[deg_ - 1];
            for (unsigned i = 0; i + 1 < deg_; ++i) next[i + 1] = cur[i];
            if (top != 0)
                for (unsigned i = 0; i < deg_; ++i) next[i] -= top * Rat(phi_[i]);
            cur = std::move(next);
        }
    }

    unsigned order() const { return M_; }
    unsigned degree() const { return deg_; }
    const std::vector<Rat> &zeta_power(long k) const {
        long m = k % static_cast<long>(M_);
        if (m < 0) m += M_;
        return zpow_[static_cast<size_t>(m)];
    }

    static std::shared_ptr<const CycField> get(unsigned M) {
        static std::map<unsigned, std::shared_ptr<const CycField>> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(M);
        if (it != cache.end()) return it->second;
        auto f = std::make_shared<const CycField>(M);
        cache.emplace(M, f);
        return f;
    }

private:
    unsigned M_;
    unsigned deg_;
    std::vector<Int> phi_;
    std::vector<std::vector<Rat>> zpow_;
};

using CycFieldPtr = std::shared_ptr<const CycField>;

// An element of Q(zeta_M), reduced modulo Phi_M; equality is
// coefficient-vector equality.
class Cyc {
public:
    Cyc() = default;
    Cyc(CycFieldPtr f, std::vector<Rat> coords) : f_(std::move(f)), c_(std::move(coords)) {
        if (c_.size() != f_->degree()) throw std::invalid_argument("bad coordinate length");
    }

    static Cyc zero(CycFieldPtr f) {
        std::vector<Rat> c(f->degree(), Rat(0));
        return Cyc(std::move(f), std::move(c));
    }
    static Cyc from_rational(CycFieldPtr f, const Rat &r) {
        std::vector<Rat> c(f->degree(), Rat(0));
        c[0] = r;
        return Cyc(std::move(f), std::move(c));
    }
    static Cyc one(CycFieldPtr f) { return from_rational(std::move(f), Rat(1)); }
    static Cyc zeta_pow(CycFieldPtr f, long k) {
        auto c = f->zeta_power(k);
        return Cyc(std::move(f), std::move(c));
    }

    const CycFieldPtr &field() const { return f_; }
    const std::vector<Rat> &coords() const { return c_; }

    bool is_zero() const {
        for (const auto &x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw std::logic_error("not a rational coefficient");
        return c_.empty() ? Rat(0) : c_[0];
    }
    bool is_integral() const {
        for (const auto &x : c_)
            if (!is_integer(x)) return false;
        return true;
    }

    Cyc operator-() const {
        auto c = c_;
        for (auto &x : c) x = -x;
        return Cyc(f_, std::move(c));
    }
    Cyc operator+(const Cyc &o) const {
        check(o);
        auto c = c_;
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
        return Cyc(f_, std::move(c));
    }
    Cyc operator-(const Cyc &o) const { return *this + (-o); }
    Cyc operator*(const Cyc &o) const {
        check(o);
        unsigned d = f_->degree();
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (unsigned i = 0; i < d; ++i) {
            if (c_[i] == 0) continue;
            for (unsigned j = 0; j < d; ++j) {
                if (o.c_[j] == 0) continue;
                prod[i + j] += c_[i] * o.c_[j];
            }
        }
        std::vector<Rat> out(d, Rat(0));
        for (unsigned k = 0; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            if (k < d) {
                out[k] += prod[k];
            } else {
                const auto &row = f_->zeta_power(static_cast<long>(k));
                for (unsigned i = 0; i < d; ++i) out[i] += prod[k] * row[i];
            }
        }
        return Cyc(f_, std::move(out));
    }
    Cyc scaled(const Rat &r) const {
        auto c = c_;
        for (auto &x : c) x *= r;
        return Cyc(f_, std::move(c));
    }

    friend bool operator==(const Cyc &a, const Cyc &b) {
        return a.f_->order() == b.f_->order() && a.c_ == b.c_;
    }
    friend bool operator!=(const Cyc &a, const Cyc &b) { return !(a == b); }

    // Total order used for canonical term ordering.
    int compare(const Cyc &o) const {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) {
            int c = cmp(c_[i], o.c_[i]);
            if (c != 0) return c;
        }
        return 0;
    }

    // True when some rational coordinate has numerator or denominator
    // divisible by p; used for the mixed-characteristic warning.
    bool touches_prime(unsigned p) const {
        if (p == 0) return false;
        Int ip(static_cast<long>(p));
        for (const auto &x : c_) {
            if (x == 0) continue;
            if (divides(ip, numerator(x)) || divides(ip, denominator(x))) return true;
        }
        return false;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << " + ";
            os << to_string(c_[i]);
            if (i == 1) os << "*z";
            if (i > 1) os << "*z^" << i;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check(const Cyc &o) const {
        if (f_->order() != o.f_->order()) throw std::invalid_argument("cyclotomic order mismatch");
    }

    CycFieldPtr f_;
    std::vector<Rat> c_;
};

}  // namespace supdeg
