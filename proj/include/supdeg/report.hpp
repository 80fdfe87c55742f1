#pragma once

#include <json.hpp>

#include "supdeg/engine.hpp"
#include "supdeg/parse.hpp"

namespace supdeg {

inline std::string render_validation(const ValidationReport &rep) {
    std::ostringstream os;
    os << "validation:\n";
    for (const auto &c : rep.checks)
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
    for (const auto &w : rep.warnings) os << "  warning: " << w << "\n";
    if (rep.wild) os << "  flag: wild (analysis limited to the cluster tree)\n";
    return os.str();
}

inline std::string render_verdict(const Verdict &v, long q) {
    std::ostringstream os;
    os << "verdict: " << (v.cofinite ? "cofinite" : "not cofinite") << "\n";
    os << "  " << v.certificate << "\n";
    if (v.vF0) os << "  v(F(0)) = " << to_string(*v.vF0) << " (mod " << q << ": "
                  << mod_euclid(numerator(*v.vF0), Int(q)).get_str() << ")\n";
    for (const auto &rec : v.invariant_clusters) {
        os << "  invariant cluster size=" << rec.size << ": |s| mod q = " << rec.size_mod_q
           << ", c_s = " << to_string(rec.c) << ", center in region: "
           << (rec.gamma_in_region ? "yes" : "no");
        if (rec.vF_gamma) os << ", v(F(gamma)) = " << to_string(*rec.vF_gamma);
        os << (rec.passes ? "" : "  <- fails: " + rec.failure) << "\n";
    }
    return os.str();
}

inline std::string render_regions(const DegreeSetResult &res) {
    std::ostringstream os;
    os << "regions (one per cluster orbit):\n";
    for (size_t i = 0; i < res.regions.size(); ++i) {
        const auto &r = res.regions[i];
        os << "  #" << i << " size=" << r.slope << " e=" << r.e << " interval=("
           << (r.lower ? to_string(*r.lower) : "-inf") << ", "
           << (r.upper ? to_string(*r.upper) : "inf") << ")"
           << " slope=" << r.slope << " intercept=" << to_string(r.intercept);
        if (r.vertex_value) os << " vertex=" << to_string(*r.vertex_value);
        os << " r0=" << r.r0 << "\n";
        os << "     center " << r.gamma.str() << (r.gamma_in_region ? " (in region)" : "")
           << " -> degrees " << detail::render_compact(r.absolute) << "\n";
    }
    return os.str();
}

inline std::string render_degree_set(const DegreeSetResult &res) {
    std::ostringstream os;
    os << "degree set: " << res.display << "\n";
    os << "  canonical: " << res.lower.render_canonical() << "\n";
    os << "  exact: "
       << (res.exact == Exactness::exact ? "yes"
                                         : (res.exact == Exactness::inexact ? "no" : "unknown"))
       << " (bound " << res.bound << ")\n";
    auto [idx, cof] = res.lower.index_and_cofinite();
    os << "  index " << idx << ", cofinite in index: " << (cof ? "yes" : "no") << "\n";
    return os.str();
}

inline std::string render_witnesses(const DegreeSetResult &res) {
    std::ostringstream os;
    os << "witnesses (" << res.witnesses.size() << " members up to " << res.bound << "):\n";
    for (const auto &[m, w] : res.witnesses)
        os << "  degree " << m << " [" << w.kind << "]: x0 = " << w.x0.str()
           << ", v(F(x0)) = " << to_string(w.vF) << (w.verified ? "" : "  UNVERIFIED") << "\n";
    os << "obstructions (" << res.obstructions.size() << " excluded degrees up to " << res.bound
       << "): re-verified by direct scans\n";
    return os.str();
}

inline nlohmann::json natset_json(const NatSet &s) {
    nlohmann::json j;
    j["exceptional"] = s.exceptional();
    j["threshold"] = s.threshold();
    j["period"] = s.period();
    j["residues"] = s.residues();
    return j;
}

inline NatSet natset_from_json(const nlohmann::json &j) {
    return NatSet::from_parts(j.at("exceptional").get<std::vector<long>>(), j.at("threshold").get<long>(),
                              j.at("period").get<long>(), j.at("residues").get<std::vector<long>>());
}

inline nlohmann::json report_json(const CurveSpec &c, const ValidationReport &val,
                                  const DegreeSetResult &res) {
    nlohmann::json j;
    j["schema"] = 1;
    j["curve"] = c.name;
    j["q"] = c.q;
    nlohmann::json jv;
    jv["cofinite"] = res.verdict.cofinite;
    jv["certificate"] = res.verdict.certificate;
    if (res.verdict.vF0) jv["vF0"] = to_string(*res.verdict.vF0);
    nlohmann::json recs = nlohmann::json::array();
    for (const auto &rec : res.verdict.invariant_clusters) {
        nlohmann::json r;
        r["size"] = rec.size;
        r["c_s"] = to_string(rec.c);
        r["gamma_in_region"] = rec.gamma_in_region;
        if (rec.vF_gamma) r["vF_gamma"] = to_string(*rec.vF_gamma);
        r["passes"] = rec.passes;
        recs.push_back(r);
    }
    jv["invariant_clusters"] = recs;
    j["verdict"] = jv;

    nlohmann::json regions = nlohmann::json::array();
    for (const auto &r : res.regions) {
        nlohmann::json jr;
        jr["size"] = r.slope;
        jr["e"] = r.e;
        jr["slope"] = r.slope;
        jr["intercept"] = to_string(r.intercept);
        jr["interval"] = {r.lower ? to_string(*r.lower) : "-inf", r.upper ? to_string(*r.upper) : "inf"};
        jr["gamma"] = r.gamma.str();
        jr["gamma_in_region"] = r.gamma_in_region;
        if (r.vertex_value) jr["vertex_value"] = to_string(*r.vertex_value);
        jr["r0"] = r.r0;
        jr["relative"] = natset_json(r.relative);
        jr["absolute"] = natset_json(r.absolute);
        regions.push_back(jr);
    }
    j["regions"] = regions;

    nlohmann::json ds = natset_json(res.lower);
    ds["display"] = res.display;
    ds["exact"] = res.exact == Exactness::exact;
    ds["bound"] = res.bound;
    auto [idx, cof] = res.lower.index_and_cofinite();
    ds["index"] = idx;
    ds["cofinite_in_index"] = cof;
    j["degree_set"] = ds;

    nlohmann::json ws = nlohmann::json::array();
    for (const auto &[m, w] : res.witnesses) {
        nlohmann::json jw;
        jw["degree"] = m;
        jw["x0"] = w.x0.str();
        jw["vF"] = to_string(w.vF);
        jw["verified"] = w.verified;
        jw["kind"] = w.kind;
        ws.push_back(jw);
    }
    j["witnesses"] = ws;

    nlohmann::json validation;
    validation["ok"] = val.ok();
    validation["wild"] = val.wild;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &ch : val.checks) checks.push_back({{"name", ch.name}, {"pass", ch.pass}});
    validation["checks"] = checks;
    validation["warnings"] = val.warnings;
    j["validation"] = validation;
    return j;
}

}  // namespace supdeg
