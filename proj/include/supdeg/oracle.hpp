#pragma once

#include <optional>
#include <set>

#include "supdeg/engine.hpp"

namespace supdeg {
namespace oracle {

// Every subset cut out by a closed disk, found by trying all centers among
// the root values and all radii among the pairwise difference valuations
// (plus the point disk).  Capped at 12 distinct values.
inline std::set<std::vector<int>> clusters_bruteforce(const std::vector<Pux> &values) {
    if (values.size() > 12) throw std::invalid_argument("brute-force cap is 12 distinct roots");
    size_t k = values.size();
    std::vector<std::vector<Val>> d(k, std::vector<Val>(k));
    std::set<Rat> radii;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            d[i][j] = i == j ? Val::infinity() : dist_val(values[i], values[j]);
            if (i != j) radii.insert(d[i][j].finite());
        }
    std::set<std::vector<int>> out;
    for (size_t z = 0; z < k; ++z) {
        std::vector<Val> rs;
        for (const Rat &r : radii) rs.push_back(Val(r));
        rs.push_back(Val::infinity());
        for (const Val &rho : rs) {
            std::vector<int> s;
            for (size_t i = 0; i < k; ++i)
                if (d[z][i] >= rho) s.push_back(static_cast<int>(i));
            if (!s.empty()) out.insert(s);
        }
    }
    return out;
}

// Recompute the complement sum of c_s by grouping the complement into
// Galois orbits: after shifting by the cluster center, every orbit
// contributes (orbit size) * (common valuation), multiplicity weighted.
// Must equal c_s - v(a_d).
inline Rat c_via_min_poly_orbits(const ClusterTree &t, int cluster) {
    Pux gamma = t.shift_center(cluster);
    const Cluster &s = t.node(cluster);
    std::vector<bool> seen(t.value_count(), false);
    Rat total(0);
    for (size_t j = 0; j < t.value_count(); ++j) {
        if (seen[j]) continue;
        if (std::binary_search(s.members.begin(), s.members.end(), static_cast<int>(j))) continue;
        // walk the value orbit
        std::vector<int> orbit;
        Pux v = t.value(static_cast<int>(j));
        long deg = v.degree_over_base().get_si();
        for (long step = 0; step < deg; ++step) {
            Pux img = v.galois_apply(step);
            for (size_t i = 0; i < t.value_count(); ++i)
                if (t.value(static_cast<int>(i)) == img && !seen[i]) {
                    orbit.push_back(static_cast<int>(i));
                    seen[i] = true;
                }
        }
        Val w = dist_val(t.value(orbit.front()), gamma);
        total += Rat(t.multiplicity(orbit.front())) * Rat(orbit.size()) * w.finite();
    }
    return total;
}

struct SearchGrid {
    long exponent_denominator_factor = 1;  // candidate exponents use denominators dividing m * this
    long max_candidates = 20000;
    std::vector<long> coefficients{1, 2};
};

// Deterministic semi-decision probe for a degree-m point, independent of the
// region analysis: samples x0 = prefix + u * pi^(g) over truncation prefixes
// of the root values and a band of exponents, and keeps the first candidate
// with degree exactly m whose F-value valuation is a multiple of q in
// (1/m)Z.  Absence of a hit proves nothing.
inline std::optional<WitnessPoint> small_degree_search(const CurveSpec &c, const ClusterTree &t, long m,
                                                       const SearchGrid &grid = {}) {
    long q = c.q;
    unsigned N = c.context->ram_index();
    if (m * static_cast<long>(N) > 2000000) throw std::invalid_argument("degree exceeds the search cap");
    long den = m * grid.exponent_denominator_factor;
    Ctx wide = widen_exponents(c.context, static_cast<unsigned>(std::lcm<long>(den, N)));
    long tried = 0;
    for (size_t id = 0; id < t.nodes().size(); ++id) {
        Pux prefix = t.shift_center_unchecked(static_cast<int>(id)).transported(wide, Rat(1));
        // exponent band around this cluster: from the complement reach to the depth
        auto reach = t.complement_reach(static_cast<int>(id));
        const auto &depth = t.node(id).depth;
        Rat lo;
        if (reach) {
            lo = *reach;
        } else if (depth) {
            lo = *depth - 1;
        } else {
            Val va = t.value(t.node(id).members[0]).valuation();
            lo = va.is_infinite() ? Rat(-1) : va.finite();
        }
        Rat hi = depth ? Rat(*depth + 1) : Rat(lo + 2);
        Int j0 = floor_rat(Rat(lo * Rat(den))) + 1;
        Int j1 = ceil_rat(Rat(hi * Rat(den))) - 1;
        for (Int j = j0; j <= j1; ++j) {
            for (long u : grid.coefficients) {
                if (++tried > grid.max_candidates) return std::nullopt;
                Pux x0 = prefix + Pux::pi_power(wide, rat(j, Int(den))).scaled(Rat(u));
                if (x0.degree_over_base() != Int(m)) continue;
                if (c.is_root_value(x0)) continue;
                Val vf = valuation_of_F(c, x0);
                if (vf.is_infinite()) continue;
                if (!is_integer(Rat(vf.finite() * Rat(m) / Rat(q)))) continue;
                WitnessPoint w;
                w.x0 = x0;
                w.claimed_degree = m;
                w.vF = vf.finite();
                w.verified = true;
                w.kind = "search";
                return w;
            }
        }
    }
    return std::nullopt;
}

}  // namespace oracle
}  // namespace supdeg
