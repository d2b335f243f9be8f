#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "certify.hpp"
#include "branch.hpp"

namespace bihar {

using nlohmann::json;

/// Intervals serialize as decimal strings with 17 significant digits, which
/// round-trips binary doubles exactly; endpoints are already outward-rounded.
inline json to_json(const Interval& iv) {
    auto fmt = [](double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    if (iv.is_empty()) return json{{"empty", true}};
    return json{{"lo", fmt(iv.lo())}, {"hi", fmt(iv.hi())}, {"rounding", "outward"}};
}

inline json to_json(const BoundEnclosure& b) {
    return json{{"value", to_json(b.value)},
                {"argmax_box", to_json(b.argmax_box)},
                {"subdivisions", b.subdivisions},
                {"depth", b.depth},
                {"converged", b.converged}};
}

inline json to_json(const Certificate& c) {
    json j{{"claim", c.claim},
           {"domain", to_json(c.domain)},
           {"status", to_cstring(c.status)},
           {"subdivisions", c.subdivisions},
           {"max_gap", c.max_gap}};
    if (c.witness) j["witness"] = *c.witness;
    return j;
}

inline json to_json(const DimensionReport& r, bool with_timings = false) {
    json certs = json::array();
    for (const auto& c : r.certificates) {
        json jc = to_json(c);
        if (with_timings) jc["elapsed_seconds"] = c.elapsed_seconds;
        certs.push_back(jc);
    }
    json j{{"N", r.N},
           {"m", to_string(r.m)},
           {"S", to_json(r.S)},
           {"I", to_json(r.I)},
           {"verdict", r.verdict == Verdict::SingularCertified ? "SingularCertified"
                                                               : "Failed"},
           {"certificates", certs}};
    if (r.table_lambda) j["table_lambda"] = *r.table_lambda;
    if (r.table_beta) j["table_beta"] = *r.table_beta;
    return j;
}

inline json to_json(const branch::BranchPoint& p) {
    return json{{"lambda", p.lambda},
                {"u0", p.u0},
                {"u2_0", p.u2_0},
                {"sup_norm", p.sup_norm},
                {"residual", p.residual}};
}

inline json to_json(const branch::ContinuationResult& r) {
    return json{{"lambda_star", r.lambda_star},
                {"fold", to_json(r.fold)},
                {"stalled", r.stalled},
                {"points", r.points.size()}};
}

inline std::string branch_csv(const branch::ContinuationResult& r) {
    std::string out = "lambda,u0,u2_0,sup_norm,residual\n";
    char buf[200];
    for (const auto& p : r.points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", p.lambda,
                      p.u0, p.u2_0, p.sup_norm, p.residual);
        out += buf;
    }
    return out;
}

} // namespace bihar
