#pragma once

#include <json.hpp>

#include <string>

#include "indifferent.hpp"
#include "lattes.hpp"
#include "newton_polygon.hpp"
#include "pcf_family.hpp"
#include "ratmap.hpp"
#include "scalar.hpp"
#include "series.hpp"

// JSON report builders shared by the CLI and the format tests. Every number
// is emitted as a decimal string of an exact rational or an exponent; output
// is deterministic (ordered keys, no floating point).
namespace pdyn::reports {

using Json = nlohmann::ordered_json;

inline Json polygon_json(const NewtonPolygon& np) {
    Json segs = Json::array();
    for (const auto& s : np.segments)
        segs.push_back({{"slope", s.slope.str()}, {"length", s.length}});
    return {{"zero_order", np.zero_order}, {"segments", segs}};
}

inline Json disk_json(const Rat& center, const LogRadius& radius) {
    return {{"center", center.str()},
            {"radius_exponent", radius.exponent.str()},
            {"open", radius.open}};
}

inline Json gleason_report(const BigInt& p, std::size_t n, const Rat& center,
                           const LogRadius& radius) {
    Poly g = gleason_factor(n);
    Json rep;
    rep["polynomial"] = "g_" + std::to_string(n);
    rep["degree"] = g.degree();
    if (p == 2) rep["mod2_monomial"] = gleason_mod2_check(n);
    rep["newton_polygon"] = polygon_json(newton_polygon(g.shift(center), p));
    rep["disk"] = disk_json(center, radius);
    rep["roots_in_disk"] = count_pcf_in_disk(g, p, center, radius);
    return rep;
}

inline Json misiurewicz_report(long d, std::size_t m, std::size_t n, const BigInt& p,
                               const Rat& center, const LogRadius& radius) {
    Poly G = orbit_poly(d, m, n);
    Json rep;
    rep["polynomial"] = "G_{" + std::to_string(m) + "," + std::to_string(n) + "}";
    rep["d"] = d;
    rep["degree"] = G.degree();
    rep["newton_polygon"] = polygon_json(newton_polygon(G.shift(center), p));
    rep["disk"] = disk_json(center, radius);
    rep["roots_in_disk"] = count_pcf_in_disk(G, p, center, radius);
    return rep;
}

inline Json newton_report(const Poly& f, const BigInt& p, const Rat& center) {
    Json rep;
    rep["degree"] = f.degree();
    rep["center"] = center.str();
    rep["newton_polygon"] = polygon_json(newton_polygon(f.shift(center), p));
    return rep;
}

inline Json ex72_report_json(std::size_t n) {
    Poly h = ex72_h_poly(n);
    Json rep;
    rep["n"] = n;
    rep["degree"] = h.degree();
    rep["ord_at_0_mod3"] = ex72_mod3_order(h);
    rep["squarefree"] = is_squarefree(h);
    rep["roots_in_unit_open_disk"] =
        count_roots_in_disk(h, BigInt(3), Rat(0), LogRadius::open_disk(0));
    return rep;
}

inline Json ex73_report_json(const BigInt& p) {
    Ex73Report r = ex73_report(p);
    Json locs = Json::array();
    for (const auto& [label, deg] : r.local_degrees)
        locs.push_back({{"point", label}, {"local_degree", deg.str()}});
    return {{"p", p.str()},
            {"identity_f1_zero", r.identity_f1_zero},
            {"identity_f0_gamma", r.identity_f0_gamma},
            {"identity_fq_gamma", r.identity_fq_gamma},
            {"local_degrees", locs},
            {"multiplier", r.multiplier.str()},
            {"multiplier_valuation", r.multiplier_valuation.str()},
            {"repelling", r.repelling}};
}

inline Json point_set_json(const PointSet& s) {
    Json pts = Json::array();
    for (const auto& x : s.points) pts.push_back(x.str());
    Json fs = Json::array();
    for (const auto& f : s.factors) fs.push_back(f.str("x"));
    return {{"points", pts}, {"factors", fs}, {"size", s.size()}};
}

inline Json lattes_report(const LattesSpec& spec, std::size_t budget = 64) {
    RationalMap f = flexible_lattes(spec);
    MilnorVerdict v = milnor_criterion(f, budget);
    PostcriticalReport pr = postcritical_set(f, budget);
    return {{"lambda", spec.curve.lambda.str()},
            {"m", spec.m},
            {"degree", f.degree()},
            {"numerator", f.num().str("x")},
            {"denominator", f.den().str("x")},
            {"strictly_postcritical", point_set_json(pr.strict)},
            {"milnor",
             {{"passes", v.passes},
              {"strictly_postcritical_count", v.strictly_postcritical_count},
              {"all_critical_simple", v.all_critical_simple},
              {"none_strictly_postcritical_critical",
               v.none_strictly_postcritical_critical}}}};
}

inline Json stability_report(const UnicriticalFamily& fam) {
    StabilityCertificate cert = stability_certificate(fam);
    Json chains = Json::array();
    FiniteField F(fam.p);
    for (const auto& ch : cert.chains) {
        Json disks = Json::array();
        for (const auto& u : ch.disks)
            disks.push_back(u.at_infinity ? std::string("inf") : F.str(u.value));
        chains.push_back({{"critical", ch.label},
                          {"M", ch.preperiod},
                          {"N", ch.first_repeat},
                          {"disks", disks},
                          {"inclusion_verified", ch.inclusion_verified}});
    }
    return {{"d", fam.d},
            {"p", fam.p.str()},
            {"a", fam.a.value_or(Rat(0)).str()},
            {"chains", chains}};
}

inline Json verdict_report_json(const VerdictReport& rep) {
    Json j;
    j["c"] = rep.c.str();
    j["outcome"] = rep.outcome_str();
    if (rep.escape) {
        Json vals = Json::array();
        for (const auto& v : rep.escape->valuations) vals.push_back(v.str());
        j["escape"] = {{"valuations", vals}, {"proof", rep.escape->proof_tag}};
        return j;
    }
    j["M"] = rep.M;
    j["N"] = rep.N;
    j["case"] = rep.case_tag->str();
    if (rep.beta) j["beta"] = rep.beta->str();
    if (rep.case_tag->attracting) j["exact_repetition"] = rep.exact_repetition;
    if (rep.verdict) {
        const auto& v = *rep.verdict;
        Json vj;
        vj["n_used"] = v.n_used;
        if (v.approximation_valuation)
            vj["approximation_valuation"] = v.approximation_valuation->str();
        if (v.error_exponent) vj["error_exponent"] = v.error_exponent->str();
        vj["precision_exponent"] = v.precision_exponent.str();
        j["iterative_log"] = vj;
    }
    return j;
}

}  // namespace pdyn::reports
