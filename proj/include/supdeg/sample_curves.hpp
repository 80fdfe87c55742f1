#pragma once

#include "supdeg/curve.hpp"

namespace supdeg {
namespace samples {

// Thirty tamely ramified roots over a 7-adic model: the Galois orbits of
// c * pi^(1/2) + pi^(3/5) for c = 1, 2, 3, with y^3 = 7 * prod(x - root).
// The orbit of each seed splits into two balls of five roots around
// +-c * pi^(1/2); the full set sits at mutual distance 1/2 and each ball
// branches at 3/5.
inline CurveSpec thirty_root_curve() {
    Ctx ctx = make_context(7, 10, 10);
    CurveSpec c;
    c.name = "sample30";
    c.q = 3;
    c.context = ctx;
    c.leading = Pux::pi_power(ctx, Rat(1));
    for (long head = 1; head <= 3; ++head) {
        for (int sign : {1, -1}) {
            for (long i = 0; i < 5; ++i) {
                RootEntry r;
                Pux lead = Pux::pi_power(ctx, rat(1, 2)).scaled(Rat(sign * head));
                Pux tail = Pux::monomial(ctx, Cyc::zeta_pow(ctx->field(), 2 * i), rat(3, 5));
                r.value = lead + tail;
                r.multiplicity = 1;
                c.roots.push_back(std::move(r));
            }
        }
    }
    c.sort_roots();
    return c;
}

// A wildly ramified configuration over residue characteristic 3, modelled
// with its true difference valuations: two square roots of pi at mutual
// distance 1/2, and three cube roots at mutual distance 5/6 and at distance
// 1/3 from the square roots.  The tameness check fails (gcd(6, 3) = 3), but
// the cluster tree and its constants are still meaningful.
inline CurveSpec wild_cube_curve() {
    Ctx ctx = make_context(3, 6, 6);
    CurveSpec c;
    c.name = "wild3";
    c.q = 2;
    c.context = ctx;
    c.leading = Pux::one(ctx);
    auto add = [&](const Pux &v) {
        RootEntry r;
        r.value = v;
        r.multiplicity = 1;
        c.roots.push_back(std::move(r));
    };
    add(Pux::pi_power(ctx, rat(1, 2)));
    add(-Pux::pi_power(ctx, rat(1, 2)));
    add(Pux::pi_power(ctx, rat(1, 3)));
    add(Pux::pi_power(ctx, rat(1, 3)) + Pux::pi_power(ctx, rat(5, 6)));
    add(Pux::pi_power(ctx, rat(1, 3)) + Pux::pi_power(ctx, rat(5, 6)).scaled(Rat(2)));
    c.sort_roots();
    return c;
}

}  // namespace samples
}  // namespace supdeg
