#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "supdeg/cluster.hpp"
#include "supdeg/congruence.hpp"
#include "supdeg/natset.hpp"

namespace supdeg {

// Raised when a certificate fails its direct re-verification; the CLI maps
// this to exit code 3.
struct soundness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Cofiniteness decision
// ---------------------------------------------------------------------------

struct ClusterConditionRecord {
    int cluster;
    long size = 0;
    long size_mod_q = 0;
    Rat c;
    long c_mod_q = 0;
    bool gamma_in_region = false;
    std::optional<Rat> vF_gamma;
    bool passes = true;
    std::string failure;
};

struct Verdict {
    bool cofinite = false;
    bool zero_is_root = false;
    std::optional<Rat> vF0;
    std::vector<ClusterConditionRecord> invariant_clusters;
    std::string certificate;
};

namespace detail {

inline long mod_q(const Rat &x, long q) {
    if (!is_integer(x)) throw std::logic_error("expected an integral quantity mod q");
    return mod_euclid(numerator(x), Int(q)).get_si();
}

}  // namespace detail

// The degree set fails to be cofinite exactly when v(F(0)) is not 0 mod q
// and every Galois-invariant cluster s has |s| = 0, c_s != 0 (mod q), and,
// when its center lies in its own region, v(F(gamma_s)) != 0 (mod q).
inline Verdict decide_cofinite(const CurveSpec &c, const ClusterTree &t) {
    Verdict v;
    if (!c.context->tame()) throw context_error("cofiniteness decision requires a tame curve");
    long q = c.q;

    for (const auto &r : c.roots)
        if (r.value.is_zero()) {
            v.zero_is_root = true;
            v.cofinite = true;
            v.certificate = "cofinite: 0 is a root, so the curve has a base-rational point and degree set N";
            return v;
        }

    Pux F0 = evaluate_F(c, Pux::zero(c.context));
    Val vF0 = F0.valuation();
    if (vF0.is_infinite() || !is_integer(vF0.finite()))
        throw std::logic_error("v(F(0)) must be a finite integer for a Galois-closed root set");
    v.vF0 = vF0.finite();
    long f0q = detail::mod_q(*v.vF0, q);
    if (f0q == 0) {
        v.cofinite = true;
        v.certificate = "cofinite: v(F(0)) = " + to_string(*v.vF0) + " = 0 (mod " + std::to_string(q) + ")";
    }

    for (size_t id = 0; id < t.nodes().size(); ++id) {
        if (!t.invariant(static_cast<int>(id))) continue;
        ClusterConditionRecord rec;
        rec.cluster = static_cast<int>(id);
        ClusterConstants cc = t.cluster_constants(rec.cluster);
        rec.size = cc.size;
        rec.size_mod_q = cc.size % q;
        rec.c = cc.c;
        rec.c_mod_q = detail::mod_q(cc.c, q);
        if (rec.size_mod_q != 0) {
            rec.passes = false;
            rec.failure = "|s| = " + std::to_string(rec.size) + " != 0 (mod " + std::to_string(q) + ")";
        } else if (rec.c_mod_q == 0) {
            rec.passes = false;
            rec.failure = "c_s = " + to_string(cc.c) + " = 0 (mod " + std::to_string(q) + ")";
        }
        Pux gamma = t.shift_center(rec.cluster);
        RegionLocation loc = t.locate(gamma);
        rec.gamma_in_region = !loc.at_root && loc.cluster == rec.cluster;
        if (rec.gamma_in_region) {
            Val vg = evaluate_F(c, gamma).valuation();
            rec.vF_gamma = vg.finite();
            if (rec.passes && detail::mod_q(*rec.vF_gamma, q) == 0) {
                rec.passes = false;
                rec.failure = "gamma_s lies in X_s and v(F(gamma_s)) = " + to_string(*rec.vF_gamma) +
                              " = 0 (mod " + std::to_string(q) + ")";
            }
        }
        if (!rec.passes && !v.cofinite) {
            v.cofinite = true;
            v.certificate = "cofinite: cluster of size " + std::to_string(rec.size) + " fails: " + rec.failure;
        }
        v.invariant_clusters.push_back(std::move(rec));
    }
    if (!v.cofinite) {
        v.certificate = "not cofinite: v(F(0)) = " + to_string(*v.vF0) + " != 0 (mod " + std::to_string(q) +
                        ") and every invariant cluster satisfies the congruence conditions";
    }
    return v;
}

// ---------------------------------------------------------------------------
// Region analysis
// ---------------------------------------------------------------------------

enum class AdmitKind { none, annulus, boundary, deep };

struct RegionAnalysis {
    int cluster = -1;             // orbit representative
    long e = 1;                   // Krasner base degree = orbit size
    long slope = 0;               // |s|, multiplicity weighted
    Rat intercept;                // rebased c_s
    std::optional<Rat> lower;     // rebased max complement distance; nullopt = -inf
    std::optional<Rat> upper;     // rebased depth; nullopt = +inf (single value)
    Pux gamma;                    // center, in curve coordinates
    bool gamma_in_region = false;
    std::optional<Rat> boundary_value;  // slope * upper + intercept, when upper is finite
    std::optional<Rat> vertex_value;    // rebased v(F(gamma)), when gamma_in_region
    long r0 = 1;                  // interval stability threshold
    NatSet annulus_set;           // relative degrees from the open interval
    NatSet boundary_set;          // relative degrees from positions at the branching depth
    NatSet deep_set;              // relative degrees from positions beyond it (base field only)
    NatSet relative;              // union of the three
    NatSet absolute;              // e * relative
};

namespace detail {

inline AffineLatticeProblem region_problem(const RegionAnalysis &reg, long q, long r) {
    AffineLatticeProblem p;
    p.a = reg.slope;
    p.b = q;
    p.c = reg.intercept;
    p.r = r;
    if (reg.lower) p.lo = *reg.lower;
    if (reg.upper) p.hi = *reg.upper;
    return p;
}

// progression modulus for r * V in qZ
inline long multiple_modulus(const Rat &V, long q) {
    Int u = numerator(V);
    Int w = denominator(V);
    Int m = (q * w) / gcd(abs(u), q * w);
    return u == 0 ? 1 : m.get_si();
}

}  // namespace detail

inline AdmitKind region_admits(const RegionAnalysis &reg, long q, long r) {
    if (lattice_solvable(detail::region_problem(reg, q, r), false)) return AdmitKind::annulus;
    if (reg.upper) {
        long wN = denominator(*reg.upper).get_si();
        long m2 = detail::multiple_modulus(*reg.boundary_value, q);
        if (r % wN == 0 && r % m2 == 0) return AdmitKind::boundary;
    }
    if (reg.e == 1 && reg.gamma_in_region) {
        long m3 = detail::multiple_modulus(*reg.vertex_value, q);
        if (r % m3 == 0) return AdmitKind::deep;
    }
    return AdmitKind::none;
}

// Full analysis of one cluster-orbit representative: rebase to the Krasner
// base field of the enclosing ball (degree e = orbit size), then collect the
// relative degrees admitted by the interval congruence, by the boundary
// positions at the branching depth, and by the deep positions beyond it.
inline RegionAnalysis region_degrees(const CurveSpec &c, const ClusterTree &t, int rep) {
    if (!c.context->tame()) throw context_error("region analysis requires a tame curve");
    long q = c.q;
    RegionAnalysis reg;
    reg.cluster = rep;
    reg.e = t.orbit_of(rep).size;
    if (c.context->ram_index() % reg.e != 0) throw std::logic_error("orbit size must divide ram_index");
    Rat e_scale(reg.e);

    ClusterConstants cc = t.cluster_constants(rep);
    reg.slope = cc.size;
    reg.intercept = Rat(cc.c * e_scale);
    if (!is_integer(reg.intercept)) throw std::logic_error("rebased c_s fails integrality");
    if (auto d = t.complement_reach(rep)) reg.lower = Rat(*d * e_scale);
    if (cc.depth) reg.upper = Rat(*cc.depth * e_scale);
    reg.gamma = t.shift_center_unchecked(rep);
    for (const auto &[exp, coeff] : reg.gamma.terms())
        if (!in_lattice(exp, Int(reg.e)))
            throw std::logic_error("center escapes the rebased base field");
    RegionLocation loc = t.locate(reg.gamma);
    reg.gamma_in_region = !loc.at_root && loc.cluster == rep;
    if (reg.upper) reg.boundary_value = Rat(Rat(reg.slope) * *reg.upper + reg.intercept);
    if (reg.gamma_in_region) {
        Val vg = evaluate_F(c, reg.gamma).valuation();
        reg.vertex_value = vg.finite() * e_scale;
        if (reg.upper && *reg.vertex_value != *reg.boundary_value)
            throw std::logic_error("v(F(gamma)) disagrees with |s|*d_s + c_s");
    }
    if (reg.lower && reg.upper && !(*reg.lower < *reg.upper))
        throw std::logic_error("region interval is empty");

    // annulus part: exact enumeration below the stability threshold, the
    // divisibility criterion certifies the tail beyond it
    Int g = gcd(Int(reg.slope), Int(q));
    bool tail_all, tail_q;
    if (g == 1) {
        tail_all = true;
        tail_q = false;
    } else {  // g == q
        tail_all = detail::mod_q(reg.intercept, q) == 0;
        tail_q = !tail_all;
    }
    if (reg.lower && reg.upper) {
        reg.r0 = stability_threshold(q, *reg.lower, *reg.upper);
        std::vector<long> explicit_r;
        for (long r = 1; r < reg.r0; ++r)
            if (lattice_solvable(detail::region_problem(reg, q, r), false)) explicit_r.push_back(r);
        NatSet tail;
        if (tail_all)
            tail = NatSet::from_parts({}, reg.r0, 1, {0});
        else if (tail_q)
            tail = NatSet::from_parts({}, reg.r0, q, {0});
        reg.annulus_set = NatSet::finite(explicit_r).union_with(tail);
    } else {
        // infinite interval: the gcd criterion alone decides, uniformly in r
        if (tail_all)
            reg.annulus_set = NatSet::from_parts({}, 1, 1, {0});
        else if (tail_q)
            reg.annulus_set = NatSet::progression(q);
    }
    // boundary positions: r * upper integral and r * boundary_value in qZ
    if (reg.upper) {
        long wN = denominator(*reg.upper).get_si();
        long m2 = detail::multiple_modulus(*reg.boundary_value, q);
        reg.boundary_set = NatSet::progression(std::lcm(wN, m2));
    }
    // deep positions: only over the base field itself (the interval analysis
    // is what is carried across a rebase; see the region notes)
    if (reg.e == 1 && reg.gamma_in_region) {
        long m3 = detail::multiple_modulus(*reg.vertex_value, q);
        reg.deep_set = NatSet::progression(m3);
    }
    reg.relative = reg.annulus_set.union_with(reg.boundary_set).union_with(reg.deep_set);
    reg.absolute = reg.relative.scaled(reg.e);
    return reg;
}

// qN plus one progression per Galois orbit of distinct root values.
inline NatSet baseline_lower(const CurveSpec &c, const ClusterTree &t) {
    NatSet s = NatSet::progression(c.q);
    std::vector<bool> seen(t.value_count(), false);
    for (size_t i = 0; i < t.value_count(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orbit{static_cast<int>(i)};
        // walk the orbit via single-value clusters
        Pux v = t.value(static_cast<int>(i));
        long deg = t.value(static_cast<int>(i)).degree_over_base().get_si();
        for (long k = 1; k < deg; ++k) {
            Pux img = v.galois_apply(k);
            for (size_t j = 0; j < t.value_count(); ++j)
                if (t.value(static_cast<int>(j)) == img) seen[j] = true;
        }
        seen[i] = true;
        s = s.union_with(NatSet::progression(deg));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Witness construction
// ---------------------------------------------------------------------------

struct WitnessPoint {
    Pux x0;
    long claimed_degree = 0;
    Rat vF;
    bool verified = false;
    std::string kind;
    int region = -1;  // index into the region list; -1 for the q-baseline
};

namespace detail {

inline Int first_coprime_above(const Rat &bound_exclusive, long modulus) {
    Int a = floor_rat(bound_exclusive) + 1;
    while (gcd(a, Int(modulus)) != 1) ++a;
    return a;
}

inline void verify_witness(const CurveSpec &c, WitnessPoint &w, long q, bool full_product) {
    Int deg = w.x0.degree_over_base();
    Val vF = valuation_of_F(c, w.x0);
    if (full_product && vF != evaluate_F(c, w.x0).valuation())
        throw soundness_error("factor-wise valuation disagrees with the full product");
    bool ok = deg == Int(w.claimed_degree) && !vF.is_infinite();
    if (ok) {
        w.vF = vF.finite();
        // v(F(x0)) must be a multiple of q in (1/m)Z
        Rat scaled = Rat(w.vF * Rat(w.claimed_degree) / Rat(q));
        ok = is_integer(scaled);
    }
    w.verified = ok;
    if (!ok)
        throw soundness_error("witness for degree " + std::to_string(w.claimed_degree) +
                              " failed direct verification");
}

}  // namespace detail

// Witness for a degree divisible by q: a point far below every root whose
// x-coordinate has degree m/q, paired with a degree-q extension by y.
inline WitnessPoint construct_q_multiple_witness(const CurveSpec &c, const ClusterTree &t, long m) {
    long q = c.q;
    if (m % q != 0) throw std::invalid_argument("degree must be a multiple of q");
    long k = m / q;
    Val minval = Val::infinity();
    for (size_t i = 0; i < t.value_count(); ++i) minval = min(minval, t.value(static_cast<int>(i)).valuation());
    Int W = minval.is_infinite() ? Int(0) : floor_rat(minval.finite());
    W -= 2;
    Ctx wide = widen_exponents(c.context, static_cast<unsigned>(m));
    Rat e1 = Rat(W) + rat(1, k);
    Rat e2 = Rat(W + 1) + rat(1, m);
    Pux x0 = Pux::pi_power(wide, e1) + Pux::pi_power(wide, e2);
    WitnessPoint w;
    w.x0 = x0;
    w.claimed_degree = m;
    w.kind = "q-baseline";
    detail::verify_witness(c, w, q, w.claimed_degree <= 24 && c.roots.size() <= 40);
    return w;
}

// Witness inside a region for a relative degree r; kind selects the
// position (annulus solution, boundary direction, or deep point).
inline WitnessPoint construct_witness(const CurveSpec &c, const ClusterTree &t, const RegionAnalysis &reg,
                                      long r, AdmitKind kind) {
    long q = c.q;
    long m = reg.e * r;
    Ctx wide = widen_exponents(c.context, static_cast<unsigned>(std::lcm(m, (long)c.context->ram_index())));
    Rat inv_e = rat(1, reg.e);
    Pux gamma_w = reg.gamma.transported(wide, Rat(1));
    WitnessPoint w;
    w.claimed_degree = m;
    w.region = reg.cluster;

    if (kind == AdmitKind::annulus) {
        // pick the smallest solution numerator in the interval
        AffineLatticeProblem p = detail::region_problem(reg, q, r);
        Int a;
        if (p.bounded()) {
            auto sols = solutions_in_interval(p);
            if (sols.empty()) throw soundness_error("annulus witness requested without a solution");
            a = sols.front();
        } else {
            Int start(0);
            if (p.lo)
                start = floor_rat(Rat(*p.lo * Rat(r)));
            else if (p.hi)
                start = Int(ceil_rat(Rat(*p.hi * Rat(r))) - (q + 2));
            Int end = p.hi ? Int(ceil_rat(Rat(*p.hi * Rat(r))) - 1) : Int(start + q + 2);
            a = start;
            bool found = false;
            for (Int n = Int(start + (p.lo ? 1 : 0)); n <= end; ++n)
                if (divides(p.b, Int(p.a * n + p.rc()))) {
                    a = n;
                    found = true;
                    break;
                }
            if (!found) throw soundness_error("annulus witness scan found no solution");
        }
        // a/r = u/t reduced; x0 = gamma + pi^(u/(t e)) + pi^(A/(r e)), A > r*u/t, gcd(A, r e) = 1
        Rat pos = rat(a, Int(r));  // rebased v(x0 - gamma)
        Int A = detail::first_coprime_above(Rat(pos * Rat(r)), m);
        Pux x0 = gamma_w + Pux::pi_power(wide, Rat(pos * inv_e)) +
                 Pux::pi_power(wide, Rat(rat(A, Int(r)) * inv_e));
        w.x0 = x0;
        w.kind = "annulus";
    } else if (kind == AdmitKind::boundary) {
        // direction coefficient avoiding every child head at the branching depth
        Rat depth_abs = Rat(*reg.upper * inv_e);
        std::vector<Cyc> heads;
        for (int ch : t.node(reg.cluster).children) {
            Pux diff = t.value(t.node(ch).members[0]) - reg.gamma;
            auto it = diff.terms().find(depth_abs);
            heads.push_back(it == diff.terms().end() ? Cyc::zero(c.context->field()) : it->second);
        }
        if (t.node(reg.cluster).children.empty()) heads.push_back(Cyc::zero(c.context->field()));
        long u = 1;
        while (true) {
            Cyc cand = Cyc::from_rational(c.context->field(), Rat(u));
            bool clash = false;
            for (const auto &h : heads)
                if (h == cand) clash = true;
            if (!clash) break;
            ++u;
        }
        Int A = detail::first_coprime_above(Rat(*reg.upper * Rat(r)), m);
        Pux x0 = gamma_w + Pux::pi_power(wide, depth_abs).scaled(Rat(u)) +
                 Pux::pi_power(wide, Rat(rat(A, Int(r)) * inv_e));
        w.x0 = x0;
        w.kind = "boundary";
    } else if (kind == AdmitKind::deep) {
        Rat floor_pos = reg.upper ? Rat(*reg.upper + 1) : Rat(1);
        Int A = detail::first_coprime_above(Rat(floor_pos * Rat(r)), m);
        Pux x0 = gamma_w + Pux::pi_power(wide, Rat(rat(A, Int(r)) * inv_e));
        w.x0 = x0;
        w.kind = "deep";
    } else {
        throw std::invalid_argument("region does not admit this degree");
    }
    detail::verify_witness(c, w, q, w.claimed_degree <= 24 && c.roots.size() <= 40);
    return w;
}

// ---------------------------------------------------------------------------
// Degree set computation
// ---------------------------------------------------------------------------

struct RegionObstruction {
    int region_index;
    std::string reason;
};

struct SetComponent {
    NatSet set;
    std::string label;
    long order_key;  // e, with the q progression first
};

enum class Exactness { exact, inexact, unknown };

struct DegreeSetResult {
    NatSet lower;
    NatSet upper;
    Exactness exact = Exactness::unknown;
    long bound = 0;
    Verdict verdict;
    std::vector<RegionAnalysis> regions;
    std::vector<SetComponent> components;
    std::map<long, WitnessPoint> witnesses;          // one per member <= bound
    std::map<long, std::vector<RegionObstruction>> obstructions;  // per excluded m <= bound
    std::string display;
};

namespace detail {

inline std::string render_compact(const NatSet &s) {
    if (s.is_empty()) return "{}";
    // progression?
    if (s.exceptional().empty() && s.threshold() == 1 && s.residues() == std::vector<long>{0})
        return s.period() == 1 ? "N" : std::to_string(s.period()) + "N";
    // finite [+ tail with period 1]
    if (s.period() == 1 && s.residues().empty()) {
        std::ostringstream os;
        os << "{";
        for (size_t i = 0; i < s.exceptional().size(); ++i)
            os << (i ? "," : "") << s.exceptional()[i];
        os << "}";
        return os.str();
    }
    if (s.period() == 1 && s.residues() == std::vector<long>{0}) {
        std::ostringstream os;
        if (!s.exceptional().empty()) {
            os << "{";
            for (size_t i = 0; i < s.exceptional().size(); ++i)
                os << (i ? "," : "") << s.exceptional()[i];
            os << "} ∪ ";
        }
        os << "N>" << (s.threshold() - 1);
        return os.str();
    }
    return s.render_canonical();
}

inline std::string component_label(long e, const NatSet &relative) {
    NatSet absolute = relative.scaled(e);
    std::string abs = render_compact(absolute);
    if (abs == "N" || (abs.size() >= 2 && abs.back() == 'N' &&
                       abs.find_first_not_of("0123456789") == abs.size() - 1))
        return abs;  // plain progression
    if (e == 1) return render_compact(relative);
    return std::to_string(e) + "*(" + render_compact(relative) + ")";
}

}  // namespace detail

inline DegreeSetResult compute_degree_set(const CurveSpec &c, const ClusterTree &t,
                                          std::optional<long> requested_bound = std::nullopt) {
    long q = c.q;
    DegreeSetResult res;
    res.verdict = decide_cofinite(c, t);

    // orbit representatives: smallest cluster id per orbit
    std::vector<int> reps;
    std::vector<bool> seen(t.nodes().size(), false);
    for (size_t id = 0; id < t.nodes().size(); ++id) {
        if (seen[id]) continue;
        auto orb = t.orbit_of(static_cast<int>(id));
        for (int o : orb.representatives) seen[o] = true;
        reps.push_back(static_cast<int>(id));
    }
    for (int rep : reps) res.regions.push_back(region_degrees(c, t, rep));

    // default enumeration bound: covers every region's certified tail
    long bound = 200;
    for (const auto &reg : res.regions) bound = std::max(bound, 2 * reg.e * reg.r0);
    if (requested_bound) {
        if (*requested_bound < 1) throw std::invalid_argument("bound must be positive");
        bound = *requested_bound;
    }
    res.bound = bound;

    NatSet lower = baseline_lower(c, t);
    for (const auto &reg : res.regions) lower = lower.union_with(reg.absolute);
    res.lower = lower;
    res.upper = lower;  // the region predicates drive both directions

    // exactness: the bound must cover every region's certified tail
    res.exact = Exactness::exact;
    for (const auto &reg : res.regions)
        if (bound < reg.e * reg.r0 || bound < res.lower.threshold()) res.exact = Exactness::unknown;

    // witnesses for every member below the bound
    for (long m = 1; m <= bound; ++m) {
        if (!res.lower.member(m)) continue;
        if (m % q == 0) {
            res.witnesses.emplace(m, construct_q_multiple_witness(c, t, m));
            continue;
        }
        bool made = false;
        for (size_t ri = 0; ri < res.regions.size() && !made; ++ri) {
            const auto &reg = res.regions[ri];
            if (m % reg.e != 0) continue;
            long r = m / reg.e;
            AdmitKind kind = region_admits(reg, q, r);
            if (kind == AdmitKind::none) continue;
            WitnessPoint w = construct_witness(c, t, reg, r, kind);
            w.region = static_cast<int>(ri);
            res.witnesses.emplace(m, std::move(w));
            made = true;
        }
        if (!made) throw soundness_error("member " + std::to_string(m) + " has no witness");
    }

    // obstruction records for every excluded degree below the bound,
    // re-verified against brute force
    for (long m = 1; m <= bound; ++m) {
        if (res.lower.member(m)) continue;
        std::vector<RegionObstruction> obs;
        if (m % q == 0) throw soundness_error("a multiple of q is excluded");
        for (size_t ri = 0; ri < res.regions.size(); ++ri) {
            const auto &reg = res.regions[ri];
            if (m % reg.e != 0) {
                obs.push_back({static_cast<int>(ri),
                               "no candidate x-coordinate: " + std::to_string(reg.e) + " does not divide " +
                                   std::to_string(m)});
                continue;
            }
            long r = m / reg.e;
            AdmitKind kind = region_admits(reg, q, r);
            if (kind != AdmitKind::none)
                throw soundness_error("excluded degree " + std::to_string(m) + " is admitted by a region");
            // brute re-check of the interval congruence
            AffineLatticeProblem p = detail::region_problem(reg, q, r);
            if (p.bounded()) {
                if (!solutions_in_interval(p).empty())
                    throw soundness_error("obstruction contradicted by direct scan");
            } else {
                if (lattice_solvable(p, true))
                    throw soundness_error("obstruction contradicted by the divisibility criterion");
            }
            obs.push_back({static_cast<int>(ri),
                           "congruence |s|*x + c_s in q*(1/" + std::to_string(r) +
                               ")Z has no admissible position"});
        }
        res.obstructions.emplace(m, std::move(obs));
    }

    // display components: qN first, then regions by (e, cluster id), with
    // duplicates and subsumed components dropped
    std::vector<SetComponent> comps;
    comps.push_back({NatSet::progression(q), std::to_string(q) + "N", 0});
    std::vector<size_t> order(res.regions.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (res.regions[a].e != res.regions[b].e) return res.regions[a].e < res.regions[b].e;
        return res.regions[a].cluster < res.regions[b].cluster;
    });
    for (size_t i : order) {
        const auto &reg = res.regions[i];
        for (const NatSet *part : {&reg.annulus_set, &reg.boundary_set, &reg.deep_set}) {
            if (part->is_empty()) continue;
            NatSet abs_part = part->scaled(reg.e);
            bool dup = false;
            for (const auto &cp : comps)
                if (cp.set == abs_part) dup = true;
            if (!dup) comps.push_back({abs_part, detail::component_label(reg.e, *part), reg.e});
        }
    }
    // drop components contained in the union of the others
    std::vector<bool> keep(comps.size(), true);
    for (size_t i = comps.size(); i-- > 1;) {
        NatSet rest = NatSet::empty();
        for (size_t j = 0; j < comps.size(); ++j)
            if (j != i && keep[j]) rest = rest.union_with(comps[j].set);
        if (comps[i].set.subset_of(rest)) keep[i] = false;
    }
    std::ostringstream disp;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (!keep[i]) continue;
        res.components.push_back(comps[i]);
        if (res.components.size() > 1) disp << " ∪ ";
        disp << comps[i].label;
    }
    res.display = disp.str();
    return res;
}

}  // namespace supdeg
