#pragma once

#include <memory>
#include <numeric>

#include "supdeg/cyclotomic.hpp"
#include "supdeg/rational.hpp"

namespace supdeg {

struct context_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The computational base field: a discretely valued Henselian field with
// uniformizer pi, residue characteristic p, together with the largest
// representable tame extension pi^(1/N) and the coefficient field
// Q(zeta_M).  `normalization` is the scaling factor between the current
// value group and the value group of the field everything started in
// (1 for that field itself).
//
// The tame Galois generator sends pi^(1/N) to zeta_N * pi^(1/N) and fixes
// all coefficients (the residue field is treated as algebraically closed).
// Applying it requires zeta_N among the coefficients, i.e. N | M; contexts
// with N not dividing M are permitted for evaluation-only work (witness
// checking widens the exponent lattice without enlarging the coefficient
// field) and reject Galois operations.
class BaseFieldContext {
public:
    BaseFieldContext(unsigned p, unsigned N, unsigned M, Rat normalization = Rat(1))
        : p_(p), N_(N), M_(M), norm_(std::move(normalization)), field_(CycField::get(M)) {
        if (N_ == 0 || M_ == 0) throw context_error("ram_index and cyclotomic_order must be positive");
        if (norm_ <= 0) throw context_error("normalization must be positive");
    }

    unsigned residue_char() const { return p_; }
    unsigned ram_index() const { return N_; }
    unsigned cyclotomic_order() const { return M_; }
    const Rat &normalization() const { return norm_; }
    const CycFieldPtr &field() const { return field_; }

    bool tame() const { return p_ == 0 || std::gcd(N_, p_) == 1; }
    bool galois_available() const { return M_ % N_ == 0; }

    friend bool operator==(const BaseFieldContext &a, const BaseFieldContext &b) {
        return a.p_ == b.p_ && a.N_ == b.N_ && a.M_ == b.M_ && a.norm_ == b.norm_;
    }
    friend bool operator!=(const BaseFieldContext &a, const BaseFieldContext &b) { return !(a == b); }

private:
    unsigned p_;
    unsigned N_;
    unsigned M_;
    Rat norm_;
    CycFieldPtr field_;
};

using Ctx = std::shared_ptr<const BaseFieldContext>;

inline Ctx make_context(unsigned p, unsigned N, unsigned M, Rat normalization = Rat(1)) {
    return std::make_shared<const BaseFieldContext>(p, N, M, std::move(normalization));
}

// Pass to the subfield generated by pi^(1/e): the new uniformizer is
// pi^(1/e), exponents rescale by e, the Galois generator becomes the e-th
// power of the old one.  Requires e | N.
inline Ctx rebase_context(const Ctx &ctx, unsigned e) {
    if (e == 0 || ctx->ram_index() % e != 0) throw context_error("rebase degree must divide ram_index");
    return make_context(ctx->residue_char(), ctx->ram_index() / e, ctx->cyclotomic_order(),
                        Rat(ctx->normalization() * Rat(static_cast<long>(e))));
}

// Widen the exponent lattice to denominators dividing lcm(N, extra) without
// touching the coefficient field.  Galois operations may become unavailable.
inline Ctx widen_exponents(const Ctx &ctx, unsigned extra) {
    unsigned n = static_cast<unsigned>(std::lcm(ctx->ram_index(), extra));
    if (n == ctx->ram_index()) return ctx;
    return make_context(ctx->residue_char(), n, ctx->cyclotomic_order(), ctx->normalization());
}

inline bool compatible(const Ctx &a, const Ctx &b) { return *a == *b; }

}  // namespace supdeg
