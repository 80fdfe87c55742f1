#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "supdeg/rational.hpp"

namespace supdeg {

// An eventually periodic subset of the positive integers: a finite
// exceptional part below a threshold T, and membership for n >= T decided
// by n mod P against a residue set.  Canonical form has minimal P, then
// minimal T, and the exceptional list confined below T, so equality of
// representations is extensional equality.
class NatSet {
public:
    NatSet() = default;  // empty set: T=1, P=1, no residues

    static NatSet empty() { return NatSet(); }

    // All positive multiples of m.
    static NatSet progression(long m) {
        if (m <= 0) throw std::invalid_argument("progression step must be positive");
        NatSet s;
        s.threshold_ = 1;
        s.period_ = m;
        s.residues_ = {0};
        s.canonicalize();
        return s;
    }

    // All n > r.
    static NatSet tail_above(long r) {
        if (r < 0) throw std::invalid_argument("tail bound must be nonnegative");
        NatSet s;
        s.threshold_ = r + 1;
        s.period_ = 1;
        s.residues_ = {0};
        s.canonicalize();
        return s;
    }

    // Assemble from parts (exceptional elements below T, tail residues mod P
    // from T on); canonicalized on construction.
    static NatSet from_parts(std::vector<long> except, long threshold, long period,
                             std::vector<long> residues) {
        if (threshold < 1 || period < 1) throw std::invalid_argument("bad threshold or period");
        NatSet s;
        std::sort(except.begin(), except.end());
        except.erase(std::unique(except.begin(), except.end()), except.end());
        for (long e : except)
            if (e <= 0 || e >= threshold) throw std::invalid_argument("exceptional element out of range");
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        for (long r : residues)
            if (r < 0 || r >= period) throw std::invalid_argument("residue out of range");
        s.except_ = std::move(except);
        s.threshold_ = threshold;
        s.period_ = period;
        s.residues_ = std::move(residues);
        s.canonicalize();
        return s;
    }

    static NatSet finite(std::vector<long> elems) {
        NatSet s;
        for (long e : elems) {
            if (e <= 0) throw std::invalid_argument("elements must be positive");
        }
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        s.except_ = std::move(elems);
        s.threshold_ = s.except_.empty() ? 1 : s.except_.back() + 1;
        s.period_ = 1;
        s.canonicalize();
        return s;
    }

    // { k*n : n in this }
    NatSet scaled(long k) const {
        if (k <= 0) throw std::invalid_argument("scale must be positive");
        NatSet s;
        for (long e : except_) s.except_.push_back(e * k);
        s.threshold_ = threshold_ * k;
        s.period_ = period_ * k;
        for (long r : residues_) s.residues_.push_back(mod(k * (threshold_ + r0_lift(r)), s.period_));
        std::sort(s.residues_.begin(), s.residues_.end());
        s.residues_.erase(std::unique(s.residues_.begin(), s.residues_.end()), s.residues_.end());
        s.canonicalize();
        return s;
    }

    NatSet union_with(const NatSet &o) const {
        NatSet s;
        long p = std::lcm(period_, o.period_);
        long t = std::max(threshold_, o.threshold_);
        s.period_ = p;
        s.threshold_ = t;
        std::set<long> ex;
        for (long e : except_)
            if (e < t) ex.insert(e);
        for (long e : o.except_)
            if (e < t) ex.insert(e);
        // members in [min threshold, t) coming from a tail
        for (long n = std::min(threshold_, o.threshold_); n < t; ++n)
            if (member(n) || o.member(n)) ex.insert(n);
        s.except_.assign(ex.begin(), ex.end());
        for (long r = 0; r < p; ++r)
            if (tail_member(t + r) || o.tail_member(t + r)) s.residues_.push_back(mod(t + r, p));
        std::sort(s.residues_.begin(), s.residues_.end());
        s.residues_.erase(std::unique(s.residues_.begin(), s.residues_.end()), s.residues_.end());
        s.canonicalize();
        return s;
    }

    bool member(long n) const {
        if (n <= 0) return false;
        if (n < threshold_) return std::binary_search(except_.begin(), except_.end(), n);
        return tail_member(n);
    }

    // Exact: beyond both thresholds both sets are periodic with period
    // lcm(P1, P2), so one full period decides containment.
    bool subset_of(const NatSet &o) const {
        long hi = std::max(threshold_, o.threshold_) + std::lcm(period_, o.period_);
        for (long n = 1; n <= hi; ++n)
            if (member(n) && !o.member(n)) return false;
        return true;
    }

    bool is_empty() const { return except_.empty() && residues_.empty(); }

    // gcd of all members; rejected on the empty set.
    long index() const {
        if (is_empty()) throw std::domain_error("index of the empty set");
        long g = 0;
        for (long e : except_) g = std::gcd(g, e);
        for (long r : residues_) {
            long first = threshold_ + mod(r - threshold_, period_);
            g = std::gcd(g, std::gcd(first, period_));
        }
        return g;
    }

    // True when the complement of this set inside dN is finite, i.e. every
    // sufficiently large multiple of d is a member.  The multiples of d hit
    // exactly the residue classes divisible by gcd(d, P) infinitely often.
    bool cofinite_in(long d) const {
        if (d <= 0) throw std::invalid_argument("modulus must be positive");
        long g = std::gcd(d, period_);
        for (long k = 0; k < period_ / g; ++k) {
            long rep = mod(d * k, period_);
            if (!std::binary_search(residues_.begin(), residues_.end(), rep)) return false;
        }
        return true;
    }

    std::pair<long, bool> index_and_cofinite(std::optional<long> d = std::nullopt) const {
        long idx = index();
        return {idx, cofinite_in(d.value_or(idx))};
    }

    const std::vector<long> &exceptional() const { return except_; }
    long threshold() const { return threshold_; }
    long period() const { return period_; }
    const std::vector<long> &residues() const { return residues_; }

    friend bool operator==(const NatSet &a, const NatSet &b) {
        return a.except_ == b.except_ && a.threshold_ == b.threshold_ && a.period_ == b.period_ &&
               a.residues_ == b.residues_;
    }
    friend bool operator!=(const NatSet &a, const NatSet &b) { return !(a == b); }

    // Canonical rendering: sorted exceptional elements, then the periodic tail.
    std::string render_canonical() const {
        std::ostringstream os;
        os << "{";
        for (size_t i = 0; i < except_.size(); ++i) {
            if (i) os << ", ";
            os << except_[i];
        }
        os << "}";
        if (!residues_.empty()) {
            os << " u { n >= " << threshold_ << " : n mod " << period_ << " in {";
            for (size_t i = 0; i < residues_.size(); ++i) {
                if (i) os << ", ";
                os << residues_[i];
            }
            os << "} }";
        }
        return os.str();
    }

private:
    static long mod(long a, long m) {
        long r = a % m;
        return r < 0 ? r + m : r;
    }
    long r0_lift(long r) const {
        // smallest n >= threshold_ with n mod period_ == r, returned as n - threshold_...
        return mod(r - threshold_, period_);
    }
    bool tail_member(long n) const {
        return std::binary_search(residues_.begin(), residues_.end(), mod(n, period_));
    }

    void canonicalize() {
        // drop exceptional elements at or above threshold into the tail check
        std::vector<long> keep;
        for (long e : except_) {
            if (e >= threshold_) {
                if (!tail_member(e)) throw std::logic_error("exceptional element above threshold");
            } else {
                keep.push_back(e);
            }
        }
        except_ = std::move(keep);
        if (residues_.empty()) {
            period_ = 1;
            if (!except_.empty()) threshold_ = except_.back() + 1;
            else threshold_ = 1;
            return;
        }
        // minimal period: smallest divisor d of period_ with a d-shift-invariant tail
        for (long d = 1; d <= period_; ++d) {
            if (period_ % d != 0) continue;
            bool ok = true;
            for (long r = 0; r < period_ && ok; ++r) {
                bool a = std::binary_search(residues_.begin(), residues_.end(), r);
                bool b = std::binary_search(residues_.begin(), residues_.end(), mod(r + d, period_));
                if (a != b) ok = false;
            }
            if (ok) {
                if (d < period_) {
                    std::vector<long> rs;
                    for (long r : residues_) rs.push_back(mod(r, d));
                    std::sort(rs.begin(), rs.end());
                    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
                    residues_ = std::move(rs);
                    period_ = d;
                }
                break;
            }
        }
        // minimal threshold: absorb consistent elements downward
        while (threshold_ > 1) {
            long n = threshold_ - 1;
            bool listed = !except_.empty() && except_.back() == n;
            bool tail = tail_member(n);
            if (listed != tail) break;
            if (listed) except_.pop_back();
            threshold_ = n;
        }
    }

    std::vector<long> except_;
    long threshold_ = 1;
    long period_ = 1;
    std::vector<long> residues_;
};

}  // namespace supdeg
