// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/discrepancy.hpp"
#include "dioph/witness.hpp"

namespace dioph {

using json = nlohmann::json;

// --- exact serialization forms --------------------------------------------

inline json enclosure_to_json(const Enclosure& e) {
    return json::array({rat_str(e.lo), rat_str(e.hi)});
}

inline Enclosure enclosure_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("enclosure must be [\"lo\",\"hi\"]");
    return Enclosure(parse_rational(j[0].get<std::string>()),
                     parse_rational(j[1].get<std::string>()));
}

inline json certificate_to_json(const WitnessCertificate& c) {
    json j;
    j["kind"] = c.kind == WitnessKind::Hybrid ? "hybrid" : "mixed";
    j["q"] = c.q.get_str();
    j["k"] = c.k;
    j["product"] = enclosure_to_json(c.product);
    j["bound"] = enclosure_to_json(c.bound);
    j["eps"] = rat_str(c.eps);
    j["exponent"] = rat_str(c.exponent);
    if (!c.alpha_text.empty()) j["alpha"] = c.alpha_text;
    j["beta"] = c.beta_text;
    j["shift"] = c.shift_text;
    if (!c.pseudo_text.empty()) j["pseudo"] = c.pseudo_text;
    json prov;
    prov["type"] =
        c.prov.type == Provenance::Type::DirectScan ? "direct-scan" : "proof-construction";
    if (c.prov.type == Provenance::Type::ProofConstruction) {
        prov["h"] = c.prov.h;
        prov["N_h"] = c.prov.n_h;
    }
    j["provenance"] = prov;
    return j;
}

inline WitnessCertificate certificate_from_json(const json& j) {
    WitnessCertificate c;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "hybrid" || kind == "eq6") c.kind = WitnessKind::Hybrid;
    else if (kind == "mixed" || kind == "eq9") c.kind = WitnessKind::Mixed;
    else throw ParseError("unknown certificate kind '" + kind + "'");
    c.q = parse_integer(j.at("q").get<std::string>());
    c.k = j.at("k").get<long>();
    c.product = enclosure_from_json(j.at("product"));
    c.bound = enclosure_from_json(j.at("bound"));
    c.eps = parse_rational(j.at("eps").get<std::string>());
    c.exponent = parse_rational(j.at("exponent").get<std::string>());
    if (j.contains("alpha")) c.alpha_text = j.at("alpha").get<std::string>();
    c.beta_text = j.at("beta").get<std::string>();
    c.shift_text = j.at("shift").get<std::string>();
    if (j.contains("pseudo")) c.pseudo_text = j.at("pseudo").get<std::string>();
    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        std::string t = p.at("type").get<std::string>();
        c.prov.type = t == "proof-construction" ? Provenance::Type::ProofConstruction
                                                : Provenance::Type::DirectScan;
        if (p.contains("h")) c.prov.h = p.at("h").get<long>();
        if (p.contains("N_h")) c.prov.n_h = p.at("N_h").get<long>();
    }
    return c;
}

inline json min_record_to_json(const MinRecord& r) {
    json j;
    j["q"] = r.q.get_str();
    j["value"] = enclosure_to_json(r.value);
    if (r.bound) {
        j["bound"] = enclosure_to_json(*r.bound);
        j["beats_bound"] = r.beats_bound;
    }
    return j;
}

// --- CSV (RFC 4180 quoting) -------------------------------------------------

inline std::string csv_field(const std::string& s) {
    bool needs_quote = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quote) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

// --- config digest and atomic persistence ----------------------------------

inline std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// nlohmann objects iterate in sorted key order, so dump() is already a
// canonical form: the digest is stable under field reordering.
inline std::string config_digest(const json& config) { return fnv1a64_hex(config.dump()); }

inline void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename to '" + path + "' failed");
}

// Append-only JSON-lines run log, serialized by an advisory file lock.
inline void run_log_append(const std::string& workspace, const json& entry) {
    std::string path = workspace + "/dioph_runs.jsonl";
    std::FILE* f = std::fopen(path.c_str(), "a");
    if (!f) throw std::runtime_error("cannot open run log '" + path + "'");
    int fd = fileno(f);
    flock(fd, LOCK_EX);
    std::string line = entry.dump() + "\n";
    std::fwrite(line.data(), 1, line.size(), f);
    std::fflush(f);
    flock(fd, LOCK_UN);
    std::fclose(f);
}

// Point files: one rational or exact decimal per line; '#' starts a comment.
inline PointSet read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file '" + path + "'");
    std::vector<Rational> xs;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = detail::strip_ws(line);
        if (t.empty()) continue;
        xs.push_back(parse_rational(t));
    }
    return PointSet::exact(xs);
}

} // namespace dioph
