#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>

#include "supdeg/curve.hpp"
#include "supdeg/natset.hpp"

namespace supdeg {

struct FamilyRequest {
    unsigned q = 3;
    std::vector<unsigned> parts;               // the n_k
    std::optional<unsigned> total_degree;      // D; must equal q * sum(parts)
    std::optional<unsigned> residue_char;      // chosen automatically when absent
};

struct FamilyResult {
    CurveSpec curve;
    NatSet expected;            // qN plus one progression per part > 1
    std::string expected_label; // e.g. "3N ∪ 2N ∪ 5N"
    long c = 0;                 // q * (number of parts equal to 1)
    long a = 0;                 // exponent of the extra factor (or of the scalar)
    unsigned p = 0;             // residue characteristic used
};

namespace detail {

inline unsigned pick_family_prime(unsigned q, unsigned N, const Int &avoid_product) {
    for (unsigned p = 2;; ++p) {
        if (!is_prime(p)) continue;
        if (p == q) continue;
        if (std::gcd(p, N) != 1) continue;
        if (divides(Int(static_cast<long>(p)), avoid_product)) continue;
        return p;
    }
}

}  // namespace detail

// Builds y^q = F(x) whose degree set is exactly qN together with one
// progression per part n_k > 1:
//
//   F(x) = pi * (x^c - pi^a) * prod over parts n > 1 of
//          prod_{i=1..q*count(n)} (x^n - u_i^n * pi),  u_i = i
//
// with c = q * (number of parts equal to 1).  The q blocks per part carry
// distinct unit twists so that F stays free of q-th powers while every
// valuation level keeps a root count divisible by q.  When no part equals 1
// the extra factor degenerates to a scalar and the leading coefficient
// carries its exponent instead.
inline FamilyResult generate_family(const FamilyRequest &req) {
    if (req.parts.empty()) throw std::invalid_argument("at least one part is required");
    if (!detail::is_prime(req.q)) throw std::invalid_argument("q must be prime");
    for (unsigned n : req.parts)
        if (n == 0) throw std::invalid_argument("parts must be positive");
    unsigned total = 0;
    for (unsigned n : req.parts) total += n;
    if (req.total_degree && *req.total_degree != req.q * total)
        throw std::invalid_argument("total degree must equal q * sum(parts)");

    unsigned ones = static_cast<unsigned>(std::count(req.parts.begin(), req.parts.end(), 1u));
    if (req.q == 2 && ones % 2 != 0)
        throw std::invalid_argument(
            "with q = 2 the number of parts equal to 1 must be even; a hyperelliptic curve with "
            "deg F = 2 (mod 4) cannot realize the degree set 2N");

    std::vector<unsigned> big;  // parts > 1, ascending
    for (unsigned n : req.parts)
        if (n > 1) big.push_back(n);
    std::sort(big.begin(), big.end());

    FamilyResult out;
    out.c = static_cast<long>(req.q) * ones;

    // ram_index: every exponent denominator divides lcm(c, parts)
    unsigned N = 1;
    if (out.c > 0) N = static_cast<unsigned>(std::lcm<long>(N, out.c));
    for (unsigned n : big) N = static_cast<unsigned>(std::lcm(N, n));

    // the extra exponent a: deterministic largest admissible negative value
    if (out.c > 0) {
        if (req.q == 2) {
            long cap = -out.c * static_cast<long>(big.empty() ? 1 : big.back()) - 1;
            long a = cap;
            while (mod_euclid(Int(a), Int(4)) != 2) --a;
            out.a = a;
        } else {
            long a = -out.c - 1;
            while (!(mod_euclid(Int(a), Int(req.q)) == 1 && std::gcd(std::abs(a), out.c) == 1)) --a;
            out.a = a;
        }
    } else {
        out.a = req.q == 2 ? 2 : 1;  // only the scalar pi^(a+1) survives
    }

    // distinct unit twists: avoid primes dividing the units or their n-th
    // power differences, so the residues stay distinct in mixed characteristic
    Int avoid(1);
    for (unsigned n : big) {
        unsigned copies = req.q * static_cast<unsigned>(std::count(big.begin(), big.end(), n));
        for (unsigned i = 1; i <= copies; ++i) {
            Int ui(static_cast<long>(i));
            avoid *= ui;
            Int uin;
            mpz_pow_ui(uin.get_mpz_t(), ui.get_mpz_t(), n);
            for (unsigned j = 1; j < i; ++j) {
                Int uj(static_cast<long>(j));
                Int ujn;
                mpz_pow_ui(ujn.get_mpz_t(), uj.get_mpz_t(), n);
                avoid *= (uin - ujn);
            }
        }
    }
    out.p = req.residue_char ? *req.residue_char : detail::pick_family_prime(req.q, N, avoid);
    if (out.p == req.q) throw std::invalid_argument("residue characteristic must differ from q");
    if (std::gcd(out.p, N) != 1)
        throw std::invalid_argument("residue characteristic shares a factor with a part; the "
                                    "construction needs tame roots");

    Ctx ctx = make_context(out.p, N, N);
    CurveSpec &c = out.curve;
    c.context = ctx;
    c.q = req.q;
    std::ostringstream nm;
    nm << "family-q" << req.q;
    for (unsigned n : req.parts) nm << "-" << n;
    c.name = nm.str();

    if (out.c > 0) {
        c.leading = Pux::pi_power(ctx, Rat(1));
        for (long j = 0; j < out.c; ++j) {
            RootEntry r;
            r.value = Pux::monomial(ctx, Cyc::zeta_pow(ctx->field(), j * (N / out.c)),
                                    rat(out.a, out.c));
            r.multiplicity = 1;
            c.roots.push_back(std::move(r));
        }
    } else {
        c.leading = Pux::pi_power(ctx, Rat(out.a + 1));
    }

    std::vector<unsigned> distinct;
    for (unsigned n : big)
        if (distinct.empty() || distinct.back() != n) distinct.push_back(n);
    for (unsigned n : distinct) {
        unsigned copies = req.q * static_cast<unsigned>(std::count(big.begin(), big.end(), n));
        for (unsigned i = 1; i <= copies; ++i) {
            for (unsigned j = 0; j < n; ++j) {
                RootEntry r;
                Cyc coeff = Cyc::zeta_pow(ctx->field(), static_cast<long>(j) * (N / n))
                                .scaled(Rat(static_cast<long>(i)));
                r.value = Pux::monomial(ctx, coeff, rat(1, n));
                r.multiplicity = 1;
                c.roots.push_back(std::move(r));
            }
        }
    }
    c.sort_roots();

    out.expected = NatSet::progression(req.q);
    std::ostringstream lbl;
    lbl << req.q << "N";
    for (unsigned n : distinct) {
        out.expected = out.expected.union_with(NatSet::progression(n));
        lbl << " ∪ " << n << "N";
    }
    out.expected_label = lbl.str();
    return out;
}

}  // namespace supdeg
