#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "supdeg/curve.hpp"

namespace supdeg {

// One node of the laminar family: the set of roots cut out by some disk.
struct Cluster {
    std::vector<int> members;      // indices of distinct root values, sorted
    long size = 0;                 // multiplicity-weighted |s|
    std::optional<Rat> depth;      // d_s = min internal difference valuation; nullopt = +inf
    int parent = -1;
    std::vector<int> children;

    bool single_value() const { return members.size() == 1; }
};

enum class ClusterShape { AnnulusType, BallType, Both };

struct ClusterConstants {
    long size;
    std::optional<Rat> depth;
    Rat c;  // c_s = v(a_d) + sum over the complement of v(alpha - beta)
};

struct RegionLocation {
    bool at_root = false;
    int cluster = -1;
    Val distance;  // the common difference valuation to the nearest roots
};

class ClusterTree {
public:
    explicit ClusterTree(const CurveSpec &curve) : curve_(curve) {
        if (curve.roots.empty()) throw std::invalid_argument("need at least one root");
        collect_values();
        build_matrix();
        build_nodes();
        build_galois_permutation();
    }

    const CurveSpec &curve() const { return curve_; }
    const std::vector<Cluster> &nodes() const { return nodes_; }
    const Cluster &node(int id) const { return nodes_.at(id); }
    int root_id() const { return root_; }
    size_t value_count() const { return values_.size(); }
    const Pux &value(int i) const { return values_.at(i); }
    unsigned multiplicity(int i) const { return mults_.at(i); }
    const Rat &pair_valuation(int i, int j) const { return dist_.at(i).at(j); }
    bool galois_known() const { return perm_.has_value(); }

    int find_cluster(const std::vector<int> &sorted_members) const {
        auto it = index_.find(sorted_members);
        return it == index_.end() ? -1 : it->second;
    }

    // All member sets, for cross-checking against brute-force enumeration.
    std::set<std::vector<int>> family() const {
        std::set<std::vector<int>> f;
        for (const auto &n : nodes_) f.insert(n.members);
        return f;
    }

    // c_s = v(a_d) + sum_{beta outside s} v(alpha - beta), multiplicity
    // weighted; recomputed with a second representative as an independence
    // check.
    ClusterConstants cluster_constants(int id) const {
        const Cluster &s = nodes_.at(id);
        Rat c = complement_sum(s, s.members[0]);
        if (s.members.size() > 1) {
            Rat c2 = complement_sum(s, s.members[1]);
            if (c != c2) throw std::logic_error("c_s depends on the representative");
        }
        return {s.size, s.depth, c};
    }

    ClusterShape classify(int id) const {
        const Cluster &s = nodes_.at(id);
        // annulus type: s = { alpha : v(alpha) >= v(alpha_min) } for a member
        Val minv = Val::infinity();
        for (int i : s.members) minv = min(minv, values_[i].valuation());
        bool annulus = true;
        for (size_t j = 0; j < values_.size(); ++j) {
            bool in_s = std::binary_search(s.members.begin(), s.members.end(), static_cast<int>(j));
            bool should = values_[j].valuation() >= minv;
            if (in_s != should) annulus = false;
        }
        // ball type: every member lies in the open ball B_{|alpha|}(alpha)
        bool ball = true;
        int a0 = s.members[0];
        Val va = values_[a0].valuation();
        for (int i : s.members) {
            if (i == a0) continue;
            if (!(Val(dist_[a0][i]) > va)) ball = false;
        }
        if (s.single_value() && values_[a0].is_zero()) ball = false;
        if (!annulus && !ball) throw std::logic_error("cluster is neither annulus nor ball type");
        if (annulus && ball) return ClusterShape::Both;
        return annulus ? ClusterShape::AnnulusType : ClusterShape::BallType;
    }

    // Orbit of the cluster under the Galois generator; the generator
    // permutes distinct root values, hence clusters.
    struct Orbit {
        long size = 1;
        std::vector<int> representatives;  // cluster ids, starting with the argument
    };
    Orbit orbit_of(int id) const {
        if (!perm_) throw context_error("galois orbit unavailable: root set is not closed");
        Orbit o;
        o.representatives.push_back(id);
        std::vector<int> cur = nodes_.at(id).members;
        while (true) {
            std::vector<int> next;
            next.reserve(cur.size());
            for (int i : cur) next.push_back((*perm_)[i]);
            std::sort(next.begin(), next.end());
            if (next == nodes_.at(id).members) break;
            int cid = find_cluster(next);
            if (cid < 0) throw std::logic_error("galois image of a cluster is not a cluster");
            o.representatives.push_back(cid);
            cur = std::move(next);
        }
        o.size = static_cast<long>(o.representatives.size());
        return o;
    }
    bool invariant(int id) const { return orbit_of(id).size == 1; }

    // The base-field center: the common truncation of any member strictly
    // below the first internal branching exponent (the cluster depth); for
    // singleton values the member itself.
    Pux shift_center(int id) const {
        if (!curve_.context->tame()) throw context_error("shift center requires a tame context");
        if (!invariant(id)) throw std::invalid_argument("shift center requires an invariant cluster");
        Pux g = shift_center_unchecked(id);
        const Cluster &s = nodes_.at(id);
        if (!g.is_base_rational()) throw std::logic_error("shift center escaped the base field");
        // separation: min over s of v(alpha - gamma) > max over complement
        Val inner = Val::infinity();
        for (int i : s.members) inner = min(inner, dist_val(values_[i], g));
        for (size_t j = 0; j < values_.size(); ++j) {
            if (std::binary_search(s.members.begin(), s.members.end(), static_cast<int>(j))) continue;
            if (!(dist_val(values_[j], g) < inner)) throw std::logic_error("shift center fails separation");
        }
        return g;
    }

    // Truncation-based center without the invariance/tameness gate; used
    // internally by the region analysis after rebasing.
    Pux shift_center_unchecked(int id) const {
        const Cluster &s = nodes_.at(id);
        const Pux &rep = values_[s.members[0]];
        if (!s.depth) return rep;
        return rep.truncate_below(*s.depth);
    }

    // Largest difference valuation from s to its complement (the valuation
    // form of the distance to the nearest outside root); nullopt when the
    // complement is empty.
    std::optional<Rat> complement_reach(int id) const {
        const Cluster &s = nodes_.at(id);
        std::optional<Rat> m;
        int a0 = s.members[0];
        for (size_t j = 0; j < values_.size(); ++j) {
            if (std::binary_search(s.members.begin(), s.members.end(), static_cast<int>(j))) continue;
            const Rat &d = dist_[a0][j];
            if (!m || d > *m) m = d;
        }
        return m;
    }

    // Locate x0 in the partition by nearest roots: the cluster of roots at
    // maximal difference valuation, all equidistant.  x0 may live in a
    // widened context (same field data, finer exponent lattice).
    RegionLocation locate(const Pux &x0) const {
        const Ctx &xc = x0.context();
        bool same = compatible(xc, curve_.context);
        if (!same && !(xc->residue_char() == curve_.context->residue_char() &&
                       xc->cyclotomic_order() == curve_.context->cyclotomic_order() &&
                       xc->normalization() == curve_.context->normalization() &&
                       xc->ram_index() % curve_.context->ram_index() == 0))
            throw context_error("point context is incompatible with the tree");
        RegionLocation loc;
        Val best = Val(Rat(0));
        bool first = true;
        std::vector<Val> d(values_.size());
        for (size_t i = 0; i < values_.size(); ++i) {
            d[i] = same ? dist_val(x0, values_[i]) : dist_val(x0, values_[i].transported(xc, Rat(1)));
            if (d[i].is_infinite()) {
                loc.at_root = true;
                return loc;
            }
            if (first || best < d[i]) best = d[i], first = false;
        }
        std::vector<int> S;
        for (size_t i = 0; i < values_.size(); ++i)
            if (d[i] == best) S.push_back(static_cast<int>(i));
        loc.cluster = find_cluster(S);
        if (loc.cluster < 0) throw std::logic_error("nearest-root set is not a cluster");
        loc.distance = best;
        return loc;
    }

    // v(F(x0)) by the slope formula: |s| * v(x0 - alpha) + c_s for the
    // nearest cluster s.
    Rat vF_by_formula(const Pux &x0) const {
        RegionLocation loc = locate(x0);
        if (loc.at_root) throw std::invalid_argument("x0 is a root; v(F(x0)) is infinite");
        ClusterConstants cc = cluster_constants(loc.cluster);
        return Rat(Rat(cc.size) * loc.distance.finite() + cc.c);
    }

    std::string render_ascii() const;
    std::string render_dot() const;

private:
    void collect_values() {
        for (const auto &r : curve_.roots) {
            bool found = false;
            for (size_t i = 0; i < values_.size(); ++i)
                if (values_[i] == r.value) {
                    mults_[i] += r.multiplicity;
                    found = true;
                }
            if (!found) {
                values_.push_back(r.value);
                mults_.push_back(r.multiplicity);
            }
        }
    }

    void build_matrix() {
        size_t k = values_.size();
        dist_.assign(k, std::vector<Rat>(k, Rat(0)));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j) {
                Val v = dist_val(values_[i], values_[j]);
                if (v.is_infinite()) throw std::logic_error("distinct values at infinite distance");
                dist_[i][j] = dist_[j][i] = v.finite();
            }
    }

    void build_nodes() {
        size_t k = values_.size();
        std::vector<int> comp_node(k);
        std::vector<int> uf(k);
        for (size_t i = 0; i < k; ++i) {
            Cluster leaf;
            leaf.members = {static_cast<int>(i)};
            leaf.size = mults_[i];
            nodes_.push_back(leaf);
            comp_node[i] = static_cast<int>(i);
            uf[i] = static_cast<int>(i);
        }
        std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };

        std::set<Rat, std::greater<Rat>> levels;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j) levels.insert(dist_[i][j]);

        for (const Rat &t : levels) {
            for (size_t i = 0; i < k; ++i)
                for (size_t j = i + 1; j < k; ++j)
                    if (dist_[i][j] == t) {
                        int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                        if (a != b) uf[b] = a;
                    }
            // new nodes for components that changed at this level
            std::map<int, std::vector<int>> groups;
            for (size_t i = 0; i < k; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
            for (auto &[rep, members] : groups) {
                std::set<int> child_nodes;
                for (int i : members) child_nodes.insert(comp_node[i]);
                if (child_nodes.size() <= 1) continue;  // unchanged component
                Cluster c;
                c.members = members;
                c.depth = t;
                for (int i : members) c.size += mults_[i];
                for (int ch : child_nodes) c.children.push_back(ch);
                std::sort(c.children.begin(), c.children.end());
                int id = static_cast<int>(nodes_.size());
                nodes_.push_back(c);
                for (int ch : c.children) nodes_[ch].parent = id;
                for (int i : members) comp_node[i] = id;
            }
        }
        root_ = comp_node[0];
        for (size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i].members] = static_cast<int>(i);
    }

    void build_galois_permutation() {
        if (!curve_.context->galois_available()) return;
        std::map<Pux, int> lookup;
        for (size_t i = 0; i < values_.size(); ++i) lookup[values_[i]] = static_cast<int>(i);
        std::vector<int> perm(values_.size());
        for (size_t i = 0; i < values_.size(); ++i) {
            Pux img = values_[i].galois_apply(1);
            auto it = lookup.find(img);
            if (it == lookup.end()) return;  // not closed; orbits unavailable
            perm[i] = it->second;
        }
        perm_ = std::move(perm);
    }

    Rat complement_sum(const Cluster &s, int rep) const {
        Rat c = curve_.leading.valuation().finite();
        for (size_t j = 0; j < values_.size(); ++j) {
            if (std::binary_search(s.members.begin(), s.members.end(), static_cast<int>(j))) continue;
            c += Rat(mults_[j]) * dist_[rep][j];
        }
        return c;
    }

    CurveSpec curve_;
    std::vector<Pux> values_;
    std::vector<unsigned> mults_;
    std::vector<std::vector<Rat>> dist_;
    std::vector<Cluster> nodes_;
    std::map<std::vector<int>, int> index_;
    std::optional<std::vector<int>> perm_;
    int root_ = 0;
};

inline std::string ClusterTree::render_ascii() const {
    std::ostringstream os;
    std::function<void(int, std::string)> walk = [&](int id, std::string prefix) {
        const Cluster &s = nodes_.at(id);
        ClusterConstants cc = cluster_constants(id);
        os << "[size=" << s.size << " depth=" << (s.depth ? to_string(*s.depth) : "inf")
           << " c=" << to_string(cc.c);
        if (galois_known()) os << " orbit=" << orbit_of(id).size;
        os << "]";
        if (s.single_value()) os << " " << values_[s.members[0]].str();
        os << "\n";
        std::vector<int> kids = s.children;
        std::sort(kids.begin(), kids.end(),
                  [&](int a, int b) { return nodes_[a].members[0] < nodes_[b].members[0]; });
        for (size_t i = 0; i < kids.size(); ++i) {
            bool last = (i + 1 == kids.size());
            os << prefix << (last ? "`- " : "+- ");
            walk(kids[i], prefix + (last ? "   " : "|  "));
        }
    };
    walk(root_, "");
    return os.str();
}

inline std::string ClusterTree::render_dot() const {
    std::ostringstream os;
    os << "digraph clusters {\n  node [shape=box];\n";
    for (size_t i = 0; i < nodes_.size(); ++i) {
        ClusterConstants cc = cluster_constants(static_cast<int>(i));
        os << "  n" << i << " [label=\"size=" << nodes_[i].size << "\\ndepth="
           << (nodes_[i].depth ? to_string(*nodes_[i].depth) : "inf") << "\\nc=" << to_string(cc.c)
           << "\"];\n";
    }
    for (size_t i = 0; i < nodes_.size(); ++i)
        for (int ch : nodes_[i].children) os << "  n" << i << " -> n" << ch << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace supdeg
