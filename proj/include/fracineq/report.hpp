#pragma once

// JSON and CSV serialization of results, and atomic file output. JSON
// numbers go through nlohmann (shortest round-trip decimal, lossless);
// CSV cells are printed with 17 significant digits. Object keys are sorted
// by the library, so serialized reports are byte-stable.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracineq/common.hpp"
#include "fracineq/explorer.hpp"
#include "fracineq/hh_verify.hpp"
#include "fracineq/invexity.hpp"

namespace fracineq {

using json = nlohmann::json;

inline json to_json(const Witness& w) {
    json j{{"x", w.x}, {"y", w.y}, {"t", w.t}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    if (w.t2) j["t2"] = *w.t2;
    return j;
}

inline json to_json(const CertReport& c) {
    json j{{"label", c.label},
           {"status", to_string(c.status)},
           {"samples_used", c.samples_used},
           {"max_violation", c.max_violation},
           {"tolerance", c.tolerance}};
    if (c.witness) j["witness"] = to_json(*c.witness);
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

inline json to_json(const QuadDiag& q) {
    return json{{"name", q.name},
                {"error_estimate", q.error_estimate},
                {"panels", q.panels},
                {"converged", q.converged}};
}

inline json to_json(const VerificationResult& r) {
    json j{{"theorem_id", to_string(r.theorem)},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"margin", r.margin},
           {"status", to_string(r.verdict)},
           {"tol", r.tol}};
    json stages = json::array();
    for (const auto& s : r.stages)
        stages.push_back(json{{"name", s.name}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"margin", s.margin}});
    j["stages"] = stages;
    json hyps = json::array();
    for (const auto& h : r.hypotheses) hyps.push_back(to_json(h));
    j["hypotheses"] = hyps;
    json quads = json::array();
    for (const auto& q : r.quadrature) quads.push_back(to_json(q));
    j["quadrature"] = quads;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline json to_json(const ScanRow& row) {
    json j{{"alpha", row.alpha}};
    if (row.failed) {
        j["status"] = "failed";
        j["error"] = row.error;
        return j;
    }
    j["lhs"] = row.lhs;
    j["rhs"] = row.rhs;
    j["margin"] = row.margin;
    j["status"] = to_string(row.verdict);
    if (row.ratio) j["ratio"] = *row.ratio;
    if (row.result) j["result"] = to_json(*row.result);
    return j;
}

inline json to_json(const SearchOutcome& s) {
    json j{{"found", s.found}, {"evals_used", s.evals_used}};
    if (s.found) {
        json params = json::object();
        for (const auto& [name, value] : s.params) params[name] = value;
        j["params"] = params;
        j["witness_f"] = s.witness_case->f_text;
        j["result"] = to_json(*s.witness_result);
    }
    return j;
}

// ---------------------------------------------------------------------------
// CSV

/// Fixed scan/verify columns: alpha, lhs, rhs, margin, ratio, status.
inline std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "alpha,lhs,rhs,margin,ratio,status\n";
    for (const auto& r : rows) {
        out += fmt17(r.alpha);
        out += ',';
        if (r.failed) {
            out += ",,,,failed\n";
            continue;
        }
        out += fmt17(r.lhs);
        out += ',';
        out += fmt17(r.rhs);
        out += ',';
        out += fmt17(r.margin);
        out += ',';
        out += r.ratio ? fmt17(*r.ratio) : std::string("n/a");
        out += ',';
        out += to_string(r.verdict);
        out += '\n';
    }
    return out;
}

/// A verify result as a single scan-shaped row.
inline std::string verify_csv(const VerificationResult& r, double alpha) {
    ScanRow row;
    row.alpha = alpha;
    row.lhs = r.lhs;
    row.rhs = r.rhs;
    row.margin = r.margin;
    if (r.rhs > 1e-14) row.ratio = r.lhs / r.rhs;
    row.verdict = r.verdict;
    return scan_csv({row});
}

inline std::string cert_csv(const CertReport& c) {
    std::string out =
        "property,status,max_violation,samples_used,tolerance,witness_x,witness_y,witness_t,"
        "witness_t2,witness_lhs,witness_rhs\n";
    out += c.label;
    out += ',';
    out += to_string(c.status);
    out += ',';
    out += fmt17(c.max_violation);
    out += ',';
    out += std::to_string(c.samples_used);
    out += ',';
    out += fmt17(c.tolerance);
    if (c.witness) {
        out += ',';
        out += fmt17(c.witness->x);
        out += ',';
        out += fmt17(c.witness->y);
        out += ',';
        out += fmt17(c.witness->t);
        out += ',';
        out += c.witness->t2 ? fmt17(*c.witness->t2) : std::string();
        out += ',';
        out += fmt17(c.witness->lhs);
        out += ',';
        out += fmt17(c.witness->rhs);
    } else {
        out += ",,,,,,";
    }
    out += '\n';
    return out;
}

inline std::string search_csv(const SearchOutcome& s) {
    std::string out = "found,evals_used,margin,params\n";
    out += s.found ? "true" : "false";
    out += ',';
    out += std::to_string(s.evals_used);
    out += ',';
    out += s.found ? fmt17(s.witness_result->margin) : std::string("n/a");
    out += ',';
    if (s.found) {
        std::string ps;
        for (const auto& [name, value] : s.params) {
            if (!ps.empty()) ps += ';';
            ps += name + "=" + fmt17(value);
        }
        out += ps;
    }
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Atomic file output

/// Write-to-temp then rename, so readers never observe a partial file.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open output file: " + tmp);
        os << content;
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

} // namespace fracineq
