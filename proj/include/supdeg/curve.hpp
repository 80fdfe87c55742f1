#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "supdeg/puiseux.hpp"

namespace supdeg {

struct RootEntry {
    Pux value;
    unsigned multiplicity = 1;
};

// The curve y^q = F(x) with F given by its leading coefficient and root
// multiset: F(x) = leading * prod (x - root)^multiplicity.
struct CurveSpec {
    std::string name;
    unsigned q = 2;
    Ctx context;
    Pux leading;
    std::vector<RootEntry> roots;  // sorted by canonical value order

    unsigned degree() const {
        unsigned d = 0;
        for (const auto &r : roots) d += r.multiplicity;
        return d;
    }

    void sort_roots() {
        std::stable_sort(roots.begin(), roots.end(), [](const RootEntry &a, const RootEntry &b) {
            Val va = a.value.valuation(), vb = b.value.valuation();
            if (va != vb) return va < vb;
            return a.value.compare(b.value) < 0;
        });
    }

    bool is_root_value(const Pux &x) const {
        for (const auto &r : roots)
            if (r.value == x) return true;
        return false;
    }

    friend bool operator==(const CurveSpec &a, const CurveSpec &b) {
        if (a.name != b.name || a.q != b.q || !compatible(a.context, b.context) ||
            a.leading != b.leading || a.roots.size() != b.roots.size())
            return false;
        for (size_t i = 0; i < a.roots.size(); ++i)
            if (a.roots[i].multiplicity != b.roots[i].multiplicity ||
                a.roots[i].value != b.roots[i].value)
                return false;
        return true;
    }
};

struct ValidationCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::vector<std::string> warnings;
    bool wild = false;

    bool ok() const {
        for (const auto &c : checks)
            if (!c.pass) return false;
        return true;
    }
    const ValidationCheck *find(const std::string &name) const {
        for (const auto &c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

// Checks the standing hypotheses: the root multiset is closed under the
// Galois generator, multiplicities stay below q, q is a prime different
// from the residue characteristic, and the context is tame.  Warnings
// flag a zero root and coefficients that collide with the residue
// characteristic when read in mixed characteristic.
inline ValidationReport validate_curve(const CurveSpec &c) {
    ValidationReport rep;
    const auto &ctx = c.context;

    bool tame = ctx->tame();
    rep.wild = !tame;
    rep.checks.push_back({"tame", tame,
                          tame ? "gcd(ram_index, residue_char) = 1"
                               : "ram_index shares a factor with the residue characteristic"});

    bool qp = detail::is_prime(c.q) && (ctx->residue_char() == 0 || c.q != ctx->residue_char());
    rep.checks.push_back({"q_prime_ne_p", qp,
                          qp ? "q is prime and differs from the residue characteristic"
                             : "q must be a prime different from the residue characteristic"});

    bool mults = true;
    for (const auto &r : c.roots)
        if (r.multiplicity == 0 || r.multiplicity >= c.q) mults = false;
    rep.checks.push_back({"multiplicities_below_q", mults,
                          mults ? "all multiplicities are in [1, q)" : "a root multiplicity reaches q"});

    bool lead_ok = !c.leading.is_zero() && c.leading.is_base_rational();
    rep.checks.push_back({"leading_in_base_field", lead_ok,
                          lead_ok ? "leading coefficient has integral exponents"
                                  : "leading coefficient must be a nonzero base-field element"});

    bool closed = true;
    std::string closed_detail = "root multiset is stable under the Galois generator";
    if (!ctx->galois_available()) {
        closed = false;
        closed_detail = "cyclotomic_order does not contain zeta_N; orbit check unavailable";
    } else {
        std::map<Pux, long> count;
        for (const auto &r : c.roots) count[r.value] += r.multiplicity;
        for (const auto &r : c.roots) {
            Pux img = r.value.galois_apply(1);
            auto it = count.find(img);
            if (it == count.end() || it->second != count.at(r.value)) {
                closed = false;
                closed_detail = "the Galois image of " + r.value.str() + " is missing";
                break;
            }
        }
    }
    rep.checks.push_back({"galois_closed", closed, closed_detail});

    for (const auto &r : c.roots) {
        if (r.value.is_zero()) {
            rep.warnings.push_back("0 is a root; the curve has a base-rational point and degree set N");
            break;
        }
    }
    unsigned p = ctx->residue_char();
    if (p > 0) {
        bool touched = c.leading.touches_prime(p);
        for (size_t i = 0; i < c.roots.size() && !touched; ++i) {
            if (c.roots[i].value.touches_prime(p)) touched = true;
            for (size_t j = i + 1; j < c.roots.size() && !touched; ++j)
                if ((c.roots[i].value - c.roots[j].value).touches_prime(p)) touched = true;
        }
        if (touched)
            rep.warnings.push_back(
                "a coefficient involves the residue characteristic; exact results may diverge from "
                "the mixed-characteristic field");
    }
    return rep;
}

// v(F(x0)) computed factor by factor: the coefficients form a field, so
// valuations add exactly across the product.  Equals
// evaluate_F(c, x0).valuation() without materializing the product.
inline Val valuation_of_F(const CurveSpec &c, const Pux &x0) {
    const Ctx &ctx = x0.context();
    bool same = compatible(ctx, c.context);
    Val acc = c.leading.valuation();
    for (const auto &r : c.roots) {
        Pux root = same ? r.value : r.value.transported(ctx, Rat(1));
        Val v = dist_val(x0, root);
        for (unsigned i = 0; i < r.multiplicity; ++i) acc = acc + v;
    }
    return acc;
}

// Direct evaluation F(x0) = leading * prod (x0 - root)^mult.  Exact; zero
// exactly when x0 is a root.
inline Pux evaluate_F(const CurveSpec &c, const Pux &x0) {
    if (!compatible(c.context, x0.context()) &&
        !(x0.context()->residue_char() == c.context->residue_char() &&
          x0.context()->cyclotomic_order() == c.context->cyclotomic_order() &&
          x0.context()->normalization() == c.context->normalization() &&
          x0.context()->ram_index() % c.context->ram_index() == 0))
        throw context_error("evaluation point context is incompatible with the curve");
    const Ctx &ctx = x0.context();
    Pux acc = c.leading.transported(ctx, Rat(1));
    for (const auto &r : c.roots) {
        Pux factor = x0 - r.value.transported(ctx, Rat(1));
        acc = acc * factor.pow(r.multiplicity);
    }
    return acc;
}

}  // namespace supdeg
