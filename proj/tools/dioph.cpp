// SPDX-License-Identifier: Apache-2.0
//
// dioph: exact-arithmetic experiments around the Littlewood conjecture
// family.  Subcommands: cf, pseudo, scan, disc, witness, report.
//
// Every run writes self-describing output (format version + config digest),
// appends a JSON-lines run log in the workspace, and is bit-reproducible
// from its (config, seed) pair.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dioph/io.hpp"

namespace {

using namespace dioph;

constexpr int kExitParse = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitIo = 4;

std::string iso_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

struct RunContext {
    std::string workspace = ".";
    std::string out_path;       // empty: stdout
    std::string format = "csv"; // csv | json
    long precision_cap = kDefaultPrecisionCap;
    unsigned shards = 0;
    bool no_log = false;
    json config; // effective config, embedded in every output

    std::string digest() const { return config_digest(config); }

    void emit(const std::string& content, std::vector<std::string>& outputs) const {
        if (out_path.empty()) {
            std::cout << content;
        } else {
            atomic_write_file(out_path, content);
            outputs.push_back(out_path);
        }
    }

    std::string csv_header(const std::vector<std::string>& columns) const {
        std::string s;
        s += "# dioph-csv v1 digest=" + digest() + "\r\n";
        s += "# config=" + config.dump() + "\r\n";
        s += csv_row(columns);
        return s;
    }

    json json_envelope() const {
        json j;
        j["format"] = "dioph-json";
        j["version"] = 1;
        j["config_digest"] = digest();
        j["config"] = config;
        return j;
    }

    void log_run(const std::string& command, const json& summary,
                 const std::vector<std::string>& outputs) const {
        if (no_log) return;
        json entry;
        entry["ts"] = iso_timestamp();
        entry["digest"] = digest();
        entry["command"] = command;
        entry["summary"] = summary;
        entry["outputs"] = outputs;
        run_log_append(workspace, entry);
    }
};

// config-file fallback: CLI flags win, then config values, then defaults
template <typename T>
void merge_opt(const CLI::Option* opt, const json& cfg, const char* key, T& var) {
    if (opt != nullptr && opt->count() > 0) return;
    if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

json load_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    in >> j;
    if (!j.is_object()) throw ParseError("config file must hold a JSON object");
    return j;
}

// ---------------------------------------------------------------------------
// cf
// ---------------------------------------------------------------------------

struct CfArgs {
    std::string x;
    long count = 32;
    long max_digits = 4096;
    long m = 3;
    long depth = 64;
    std::uint64_t seed = 1;
};

int run_cf_table(RunContext& ctx, const std::string& sub, const CfArgs& a) {
    DigitStream stream = [&]() -> DigitStream {
        if (sub == "sample")
            return sample_FM(static_cast<unsigned>(a.m), static_cast<std::size_t>(a.depth),
                             a.seed);
        ExactReal x = parse_exact_real(a.x);
        if (x.is_rational()) {
            auto [a0, digits] = expand_rational(x.rational());
            return DigitStream::finite(a0, std::move(digits));
        }
        if (x.is_surd()) return expand_surd(x.surd(), static_cast<std::size_t>(a.max_digits));
        return x.stream();
    }();

    long count = a.count;
    if (auto len = stream.length()) count = std::min<long>(count, static_cast<long>(*len));
    ConvergentTable table = ConvergentTable::build(stream, static_cast<std::size_t>(count));

    json summary;
    summary["digits"] = stream.text();
    summary["rows"] = table.rows().size();

    std::vector<std::string> outputs;
    if (ctx.format == "json") {
        json env = ctx.json_envelope();
        env["stream"] = stream.text();
        if (stream.kind() == DigitStream::Kind::Periodic) {
            json per = json::array();
            for (const auto& d : stream.period()) per.push_back(d.get_str());
            json pre = json::array();
            for (const auto& d : stream.preperiod()) pre.push_back(d.get_str());
            env["preperiod"] = pre;
            env["period"] = per;
        }
        json rows = json::array();
        for (const auto& r : table.rows()) {
            json row;
            row["k"] = r.k;
            row["a"] = r.a.get_str();
            row["p"] = r.p.get_str();
            row["q"] = r.q.get_str();
            rows.push_back(row);
        }
        env["rows"] = rows;
        ctx.emit(env.dump(2) + "\n", outputs);
    } else {
        std::string s = ctx.csv_header({"k", "a_k", "p_k", "q_k"});
        for (const auto& r : table.rows())
            s += csv_row({std::to_string(r.k), r.a.get_str(), r.p.get_str(), r.q.get_str()});
        ctx.emit(s, outputs);
    }
    ctx.log_run("cf " + sub, summary, outputs);
    return 0;
}

// ---------------------------------------------------------------------------
// pseudo
// ---------------------------------------------------------------------------

int run_pseudo_eval(RunContext& ctx, const std::string& pseudo, const std::string& q_text) {
    PseudoAbsSeq d = parse_pseudo(pseudo);
    Integer q = parse_integer(q_text);
    Rational v = pseudo_abs(q, d);
    std::vector<std::string> outputs;
    if (ctx.format == "json") {
        json env = ctx.json_envelope();
        env["pseudo"] = d.text();
        env["q"] = q.get_str();
        env["value"] = rat_str(v);
        ctx.emit(env.dump(2) + "\n", outputs);
    } else {
        std::string s = ctx.csv_header({"q", "pseudo_abs"});
        s += csv_row({q.get_str(), rat_str(v)});
        ctx.emit(s, outputs);
    }
    json summary;
    summary["value"] = rat_str(v);
    ctx.log_run("pseudo eval", summary, outputs);
    return 0;
}

int run_pseudo_check(RunContext& ctx, const std::string& pseudo, long K, const std::string& c) {
    PseudoAbsSeq d = parse_pseudo(pseudo);
    bool unit_ok = unit_identity_check(d, static_cast<std::size_t>(K));
    std::optional<bool> growth_ok;
    if (!c.empty())
        growth_ok = geometric_growth_check(d, parse_rational(c), static_cast<std::size_t>(K));
    std::vector<std::string> outputs;
    json env = ctx.json_envelope();
    env["pseudo"] = d.text();
    env["unit_identity_ok"] = unit_ok;
    if (growth_ok) env["geometric_growth_ok"] = *growth_ok;
    ctx.emit(env.dump(2) + "\n", outputs);
    json summary;
    summary["unit_identity_ok"] = unit_ok;
    ctx.log_run("pseudo check", summary, outputs);
    return unit_ok && (!growth_ok || *growth_ok) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanArgs {
    std::string kind = "dirichlet";
    std::string alpha, beta, gamma = "0", delta = "0", pseudo;
    std::string qmin = "1", qmax = "1000";
    std::string eps;
    std::string candidates = "range"; // range | convergents
    long kmax = 64;
};

ProductSpec build_spec(const ScanArgs& a) {
    ExactReal alpha = parse_exact_real(a.alpha);
    if (a.kind == "dirichlet") return ProductSpec::dirichlet(alpha);
    if (a.kind == "littlewood")
        return ProductSpec::littlewood(alpha, parse_exact_real(a.beta));
    if (a.kind == "hybrid")
        return ProductSpec::hybrid(alpha, parse_exact_real(a.beta), parse_exact_real(a.gamma));
    if (a.kind == "mixed")
        return ProductSpec::mixed(alpha, parse_pseudo(a.pseudo), parse_exact_real(a.delta));
    throw ParseError("unknown product kind '" + a.kind + "'");
}

int run_scan(RunContext& ctx, const ScanArgs& a) {
    ProductSpec spec = build_spec(a);
    ScanOptions opt;
    opt.shards = ctx.shards;
    opt.cap = ctx.precision_cap;
    if (!a.eps.empty()) opt.eps = parse_rational(a.eps);

    std::vector<MinRecord> records;
    if (a.candidates == "convergents") {
        DigitStream stream = [&]() -> DigitStream {
            if (spec.alpha.is_surd()) return expand_surd(spec.alpha.surd());
            if (spec.alpha.is_stream()) return spec.alpha.stream();
            auto [a0, digits] = expand_rational(spec.alpha.rational());
            return DigitStream::finite(a0, std::move(digits));
        }();
        long kmax = a.kmax;
        if (auto len = stream.length()) kmax = std::min<long>(kmax, static_cast<long>(*len));
        ConvergentTable table = ConvergentTable::build(stream, static_cast<std::size_t>(kmax));
        records = convergent_scan(spec, table, opt);
    } else {
        records = scan_min(spec, parse_integer(a.qmin), parse_integer(a.qmax), opt);
    }

    std::vector<std::string> outputs;
    if (ctx.format == "json") {
        json env = ctx.json_envelope();
        json rows = json::array();
        for (const auto& r : records) rows.push_back(min_record_to_json(r));
        env["records"] = rows;
        ctx.emit(env.dump(2) + "\n", outputs);
    } else {
        std::string s =
            ctx.csv_header({"q", "value_lo", "value_hi", "bound_lo", "bound_hi", "beats_bound"});
        for (const auto& r : records) {
            std::string blo, bhi, beats;
            if (r.bound) {
                blo = rat_str(r.bound->lo);
                bhi = rat_str(r.bound->hi);
                beats = r.beats_bound ? "1" : "0";
            }
            s += csv_row({r.q.get_str(), rat_str(r.value.lo), rat_str(r.value.hi), blo, bhi,
                          beats});
        }
        ctx.emit(s, outputs);
    }
    json summary;
    summary["records"] = records.size();
    if (!records.empty()) {
        summary["final_q"] = records.back().q.get_str();
        summary["final_value_hi"] = rat_str(records.back().value.hi);
    }
    ctx.log_run("scan", summary, outputs);
    return 0;
}

// ---------------------------------------------------------------------------
// disc
// ---------------------------------------------------------------------------

int run_disc_exact(RunContext& ctx, const std::string& points_path) {
    PointSet ps = read_points_file(points_path);
    DiscrepancyReport rep = discrepancy_exact(ps);
    std::vector<std::string> outputs;
    json env = ctx.json_envelope();
    env["N"] = rep.n;
    env["value"] = enclosure_to_json(rep.value);
    json w;
    w["left"] = rat_str(rep.witness.left);
    w["right"] = rat_str(rep.witness.right);
    w["left_closed"] = rep.witness.left_closed;
    w["right_closed"] = rep.witness.right_closed;
    w["deficit"] = rep.witness.deficit;
    env["witness_interval"] = w;
    ctx.emit(env.dump(2) + "\n", outputs);
    json summary;
    summary["N"] = rep.n;
    summary["value_hi"] = rat_str(rep.value.hi);
    ctx.log_run("disc exact", summary, outputs);
    return 0;
}

int run_disc_et(RunContext& ctx, const std::string& points_path, long K) {
    PointSet ps = read_points_file(points_path);
    DiscrepancyReport rep = discrepancy_exact(ps);
    auto bounds = erdos_turan_bounds(ps, K);
    // minimizing K and the domination check against the exact value
    long best_k = bounds.front().first;
    Rational best_hi = bounds.front().second.hi;
    bool dominated = true;
    for (const auto& [k, b] : bounds) {
        if (b.hi < best_hi) {
            best_hi = b.hi;
            best_k = k;
        }
        if (rep.value.lo > b.hi) dominated = false;
    }
    std::vector<std::string> outputs;
    if (ctx.format == "json") {
        json env = ctx.json_envelope();
        env["N"] = rep.n;
        env["exact_value"] = enclosure_to_json(rep.value);
        json rows = json::array();
        for (const auto& [k, b] : bounds)
            rows.push_back(json{{"K", k}, {"bound", enclosure_to_json(b)}});
        env["et_bounds"] = rows;
        env["minimizing_K"] = best_k;
        env["dominates_exact_value"] = dominated;
        ctx.emit(env.dump(2) + "\n", outputs);
    } else {
        std::string s = ctx.csv_header({"K", "bound_lo", "bound_hi"});
        for (const auto& [k, b] : bounds)
            s += csv_row({std::to_string(k), rat_str(b.lo), rat_str(b.hi)});
        ctx.emit(s, outputs);
    }
    json summary;
    summary["minimizing_K"] = best_k;
    summary["dominates"] = dominated;
    ctx.log_run("disc et", summary, outputs);
    return 0;
}

struct ScalingArgs {
    std::string a = "pow2";
    long m = 3;
    long samples = 20;
    long nmax = 4096;
    std::uint64_t seed = 1;
    std::string x; // explicit value instead of sampling
    std::string grid;
    long fit_min = 64;
};

int run_disc_scaling(RunContext& ctx, const ScalingArgs& a) {
    std::vector<long> grid;
    if (!a.grid.empty()) {
        for (const auto& t : detail::split(a.grid, ',')) grid.push_back(std::stol(t));
    } else {
        for (long n = 64; n <= a.nmax; n *= 2) grid.push_back(n);
    }
    if (grid.empty() || grid.back() > a.nmax)
        throw ParseError("scaling grid exceeds --Nmax");
    std::vector<Integer> seq = parse_sequence(a.a, static_cast<std::size_t>(a.nmax));

    std::vector<ExactReal> xs;
    if (!a.x.empty()) {
        xs.push_back(parse_exact_real(a.x));
    } else {
        // one deterministic sub-seed per sample
        for (long i = 0; i < a.samples; ++i)
            xs.emplace_back(
                sample_FM(static_cast<unsigned>(a.m), 64, a.seed + static_cast<std::uint64_t>(i)));
    }

    ScalingResult res = scaling_experiment(seq, xs, grid, a.fit_min, ctx.precision_cap);

    std::vector<std::string> outputs;
    if (ctx.format == "json") {
        json env = ctx.json_envelope();
        env["sampling_law"] = a.x.empty() ? "uniform-digits on {1..M} (i.i.d. proxy)" : "explicit";
        json samples = json::array();
        for (std::size_t i = 0; i < res.samples.size(); ++i) {
            const auto& s = res.samples[i];
            json rows = json::array();
            for (const auto& r : s.rows)
                rows.push_back(json{{"N", r.n}, {"D", enclosure_to_json(r.d_value)}});
            samples.push_back(json{{"sample", i}, {"x", s.x_text}, {"rows", rows},
                                   {"slope", s.slope}});
        }
        env["samples"] = samples;
        env["median_slope"] = res.median_slope;
        ctx.emit(env.dump(2) + "\n", outputs);
    } else {
        std::string s = ctx.csv_header({"sample", "x", "N", "D_lo", "D_hi", "slope"});
        for (std::size_t i = 0; i < res.samples.size(); ++i) {
            const auto& sm = res.samples[i];
            char slope[32];
            std::snprintf(slope, sizeof slope, "%.12g", sm.slope);
            for (const auto& r : sm.rows)
                s += csv_row({std::to_string(i), sm.x_text, std::to_string(r.n),
                              rat_str(r.d_value.lo), rat_str(r.d_value.hi), slope});
        }
        ctx.emit(s, outputs);
    }
    json summary;
    summary["samples"] = res.samples.size();
    summary["median_slope"] = res.median_slope;
    ctx.log_run("disc scaling", summary, outputs);
    return 0;
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

struct WitnessArgs {
    std::string alpha, beta, gamma = "0", delta = "0", pseudo;
    std::string eps = "1/5";
    long kmax = 1000;
    std::string c = "2";
    std::string exponent = "theorem"; // theorem | proof
    std::string provenance = "direct"; // direct | proof
};

void emit_certificates(RunContext& ctx, const std::string& command,
                       const std::vector<WitnessCertificate>& certs, const json& extra) {
    std::vector<std::string> outputs;
    json env = ctx.json_envelope();
    for (auto it = extra.begin(); it != extra.end(); ++it) env[it.key()] = it.value();
    json arr = json::array();
    for (const auto& c : certs) arr.push_back(certificate_to_json(c));
    env["certificates"] = arr;
    env["count"] = certs.size();
    ctx.emit(env.dump(2) + "\n", outputs);
    json summary;
    summary["certificates"] = certs.size();
    ctx.log_run(command, summary, outputs);
}

int run_witness_hybrid(RunContext& ctx, const WitnessArgs& a) {
    ExponentForm form = a.exponent == "proof" ? ExponentForm::Proof : ExponentForm::Theorem;
    auto certs = witnesses_hybrid(parse_exact_real(a.alpha), parse_exact_real(a.beta),
                                  parse_exact_real(a.gamma), parse_rational(a.eps),
                                  static_cast<std::size_t>(a.kmax), form,
                                  a.provenance == "proof", ctx.precision_cap);
    emit_certificates(ctx, "witness hybrid", certs, json::object());
    return 0;
}

int run_witness_mixed(RunContext& ctx, const WitnessArgs& a) {
    ExponentForm form = a.exponent == "proof" ? ExponentForm::Proof : ExponentForm::Theorem;
    PseudoAbsSeq d = parse_pseudo(a.pseudo);
    ExactReal beta = parse_exact_real(a.beta);
    ExactReal delta = parse_exact_real(a.delta);
    try {
        auto certs = witnesses_mixed(d, beta, delta, parse_rational(a.eps),
                                     static_cast<std::size_t>(a.kmax), parse_rational(a.c), form,
                                     ctx.precision_cap);
        emit_certificates(ctx, "witness mixed", certs, json::object());
        return 0;
    } catch (const GrowthCheckFailed& e) {
        // no geometric growth rate: only the rate-free liminf record applies
        std::cerr << "note: " << e.what() << "\n";
        auto records =
            liminf_report(d, beta, delta, static_cast<std::size_t>(a.kmax), ctx.precision_cap);
        std::vector<std::string> outputs;
        json env = ctx.json_envelope();
        env["mode"] = "liminf-only";
        env["reason"] = e.what();
        json rows = json::array();
        for (const auto& r : records) rows.push_back(min_record_to_json(r));
        env["records"] = rows;
        ctx.emit(env.dump(2) + "\n", outputs);
        json summary;
        summary["mode"] = "liminf-only";
        summary["records"] = records.size();
        ctx.log_run("witness mixed", summary, outputs);
        return 0;
    }
}

int run_witness_liminf(RunContext& ctx, const WitnessArgs& a) {
    auto records = liminf_report(parse_pseudo(a.pseudo), parse_exact_real(a.beta),
                                 parse_exact_real(a.delta), static_cast<std::size_t>(a.kmax),
                                 ctx.precision_cap);
    std::vector<std::string> outputs;
    if (ctx.format == "json") {
        json env = ctx.json_envelope();
        json rows = json::array();
        for (const auto& r : records) rows.push_back(min_record_to_json(r));
        env["records"] = rows;
        ctx.emit(env.dump(2) + "\n", outputs);
    } else {
        std::string s = ctx.csv_header({"q", "value_lo", "value_hi"});
        for (const auto& r : records)
            s += csv_row({r.q.get_str(), rat_str(r.value.lo), rat_str(r.value.hi)});
        ctx.emit(s, outputs);
    }
    json summary;
    summary["records"] = records.size();
    ctx.log_run("witness liminf", summary, outputs);
    return 0;
}

int run_witness_verify(RunContext& ctx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate file '" + path + "'");
    json doc;
    in >> doc;
    json arr;
    if (doc.is_array()) arr = doc;
    else if (doc.contains("certificates")) arr = doc.at("certificates");
    else arr = json::array({doc});

    long failures = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        WitnessCertificate cert = certificate_from_json(arr[i]);
        VerifyResult res = verify_certificate(cert, ctx.precision_cap);
        if (!res.ok) {
            ++failures;
            std::cout << "FAIL certificate " << i << " (q=" << cert.q.get_str() << ")\n";
            for (const auto& issue : res.issues)
                std::cout << "  failed check: " << issue.check << " -- " << issue.detail << "\n";
        }
    }
    std::cout << (failures ? "FAILED " : "OK ") << arr.size() << " certificate(s), " << failures
              << " failure(s)\n";
    json summary;
    summary["certificates"] = arr.size();
    summary["failures"] = failures;
    std::vector<std::string> outputs;
    ctx.log_run("witness verify", summary, outputs);
    return failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int run_report(RunContext& ctx, const std::vector<std::string>& run_files, long latest) {
    std::vector<std::string> files = run_files;
    if (latest > 0) {
        std::ifstream in(ctx.workspace + "/dioph_runs.jsonl");
        std::vector<json> entries;
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            entries.push_back(json::parse(line));
        }
        for (std::size_t i = entries.size() > static_cast<std::size_t>(latest)
                                 ? entries.size() - latest
                                 : 0;
             i < entries.size(); ++i)
            for (const auto& o : entries[i].value("outputs", json::array()))
                files.push_back(o.get<std::string>());
    }

    std::ostringstream md;
    md << "# dioph report\n\n";
    if (files.empty()) md << "_no runs referenced_\n";
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw std::runtime_error("missing run reference '" + f + "'");
        json doc;
        try {
            in >> doc;
        } catch (...) {
            md << "## " << f << "\n\n(not a JSON run output; skipped)\n\n";
            continue;
        }
        md << "## " << f << "\n\n";
        md << "- config digest: `" << doc.value("config_digest", std::string("?")) << "`\n";
        if (doc.contains("records")) {
            md << "\n| q | value_lo | value_hi |\n|---|---|---|\n";
            for (const auto& r : doc["records"])
                md << "| " << r.value("q", std::string()) << " | " << r["value"][0].get<std::string>()
                   << " | " << r["value"][1].get<std::string>() << " |\n";
        }
        if (doc.contains("certificates")) {
            md << "- certificates: " << doc["certificates"].size() << "\n";
            std::size_t shown = 0;
            for (const auto& c : doc["certificates"]) {
                if (shown++ >= 5) break;
                md << "  - q=" << c.value("q", std::string())
                   << " product_hi=" << c["product"][1].get<std::string>()
                   << " bound_lo=" << c["bound"][0].get<std::string>() << "\n";
            }
        }
        if (doc.contains("samples")) {
            md << "\n| sample | slope |\n|---|---|\n";
            for (const auto& s : doc["samples"])
                md << "| " << s.value("sample", 0) << " | " << s.value("slope", 0.0) << " |\n";
            md << "\n- median slope: " << doc.value("median_slope", 0.0) << "\n";
        }
        if (doc.contains("exact_value"))
            md << "- exact discrepancy: [" << doc["exact_value"][0].get<std::string>() << ", "
               << doc["exact_value"][1].get<std::string>() << "]\n";
        md << "\n";
    }

    std::vector<std::string> outputs;
    ctx.emit(md.str(), outputs);
    json summary;
    summary["runs"] = files.size();
    ctx.log_run("report", summary, outputs);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for Littlewood-type approximation products"};
    app.require_subcommand(1);

    RunContext ctx;
    if (const char* ws = std::getenv("DIOPH_WORKSPACE")) ctx.workspace = ws;
    std::string config_path;
    app.add_option("--workspace", ctx.workspace, "workspace directory (run log location)");
    app.add_option("--config", config_path, "JSON config file; CLI flags override its fields");
    app.add_option("--out", ctx.out_path, "output file (atomic write); default stdout");
    app.add_option("--format", ctx.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--precision-cap", ctx.precision_cap, "refinement cap in bits");
    app.add_option("--shards", ctx.shards, "scan shard count (0 = hardware)");
    app.add_flag("--no-log", ctx.no_log, "do not append to the run log");

    // cf ---------------------------------------------------------------
    CfArgs cf;
    auto* cf_cmd = app.add_subcommand("cf", "continued-fraction expansion and convergents");
    cf_cmd->require_subcommand(1);
    auto* cf_expand = cf_cmd->add_subcommand("expand", "expand a value");
    auto* oe_x = cf_expand->add_option("--x", cf.x, "value literal");
    auto* oe_c = cf_expand->add_option("--count", cf.count, "rows to emit");
    auto* oe_m = cf_expand->add_option("--max-digits", cf.max_digits, "period search cap");
    auto* cf_conv = cf_cmd->add_subcommand("convergents", "convergent table");
    auto* oc_x = cf_conv->add_option("--x", cf.x, "value literal");
    auto* oc_c = cf_conv->add_option("--count", cf.count, "rows to emit");
    auto* cf_sample = cf_cmd->add_subcommand("sample", "seeded bounded-digit sample");
    auto* os_m = cf_sample->add_option("--M", cf.m, "digit bound (>= 3)");
    auto* os_d = cf_sample->add_option("--depth", cf.depth, "digits to materialize");
    auto* os_s = cf_sample->add_option("--seed", cf.seed, "PRNG seed");
    auto* os_c = cf_sample->add_option("--count", cf.count, "rows to emit");

    // pseudo -------------------------------------------------------------
    std::string ps_pseudo, ps_q = "12", ps_c;
    long ps_k = 30;
    auto* ps_cmd = app.add_subcommand("pseudo", "pseudo-absolute values |q|_D");
    ps_cmd->require_subcommand(1);
    auto* ps_eval = ps_cmd->add_subcommand("eval", "evaluate |q|_D");
    auto* op_p = ps_eval->add_option("--pseudo", ps_pseudo, "chain spec");
    auto* op_q = ps_eval->add_option("--q", ps_q, "integer");
    auto* ps_check = ps_cmd->add_subcommand("check", "unit identity and growth checks");
    auto* och_p = ps_check->add_option("--pseudo", ps_pseudo, "chain spec");
    auto* och_k = ps_check->add_option("--K", ps_k, "indices to check");
    auto* och_c = ps_check->add_option("--C", ps_c, "rational growth base for n_k <= C^k");

    // scan -----------------------------------------------------------------
    ScanArgs sc;
    auto* scan_cmd = app.add_subcommand("scan", "running minima of an approximation product");
    auto* osc_kind = scan_cmd->add_option("--kind", sc.kind)
                         ->check(CLI::IsMember({"dirichlet", "littlewood", "hybrid", "mixed"}));
    auto* osc_a = scan_cmd->add_option("--alpha", sc.alpha, "value literal");
    auto* osc_b = scan_cmd->add_option("--beta", sc.beta, "value literal");
    auto* osc_g = scan_cmd->add_option("--gamma", sc.gamma, "hybrid shift");
    auto* osc_d = scan_cmd->add_option("--delta", sc.delta, "mixed shift");
    auto* osc_p = scan_cmd->add_option("--pseudo", sc.pseudo, "chain spec (mixed)");
    auto* osc_qf = scan_cmd->add_option("--qmin", sc.qmin);
    auto* osc_qt = scan_cmd->add_option("--qmax", sc.qmax);
    auto* osc_e = scan_cmd->add_option("--eps", sc.eps, "enables the (log q)^-(1/2-eps) column");
    auto* osc_cand = scan_cmd->add_option("--candidates", sc.candidates)
                         ->check(CLI::IsMember({"range", "convergents"}));
    auto* osc_km = scan_cmd->add_option("--kmax", sc.kmax, "convergent rows when --candidates convergents");

    // disc -----------------------------------------------------------------
    std::string disc_points;
    long disc_k = 100;
    ScalingArgs sca;
    auto* disc_cmd = app.add_subcommand("disc", "exact discrepancy and Erdos-Turan bounds");
    disc_cmd->require_subcommand(1);
    auto* disc_exact = disc_cmd->add_subcommand("exact", "exact discrepancy of a point file");
    auto* od_p = disc_exact->add_option("--points", disc_points, "one rational per line");
    auto* disc_et = disc_cmd->add_subcommand("et", "Erdos-Turan bounds for K = 1..K_max");
    auto* odt_p = disc_et->add_option("--points", disc_points);
    auto* odt_k = disc_et->add_option("--K", disc_k, "largest K");
    auto* disc_scaling = disc_cmd->add_subcommand("scaling", "D_N growth experiment");
    auto* ods_a = disc_scaling->add_option("--a", sca.a, "sequence spec (pow2, n, fib, conv:EXPR)");
    auto* ods_m = disc_scaling->add_option("--M", sca.m, "digit bound for sampled x");
    auto* ods_s = disc_scaling->add_option("--samples", sca.samples);
    auto* ods_n = disc_scaling->add_option("--Nmax", sca.nmax);
    auto* ods_seed = disc_scaling->add_option("--seed", sca.seed);
    auto* ods_x = disc_scaling->add_option("--x", sca.x, "explicit value instead of sampling");
    auto* ods_g = disc_scaling->add_option("--grid", sca.grid, "comma-separated N grid");
    auto* ods_f = disc_scaling->add_option("--fit-min", sca.fit_min, "smallest N used in the fit");

    // witness ----------------------------------------------------------------
    WitnessArgs wa;
    std::string verify_path;
    auto* wit_cmd = app.add_subcommand("witness", "certificates for the target inequalities");
    wit_cmd->require_subcommand(1);
    auto* wit_hyb = wit_cmd->add_subcommand(
        "hybrid", "q ||q a|| ||q b - gamma|| < (log q)^-(1/2-eps) on convergents");
    wit_hyb->alias("eq6");
    auto* ow_a = wit_hyb->add_option("--alpha", wa.alpha);
    auto* ow_b = wit_hyb->add_option("--beta", wa.beta);
    auto* ow_g = wit_hyb->add_option("--gamma", wa.gamma);
    auto* ow_e = wit_hyb->add_option("--eps", wa.eps);
    auto* ow_k = wit_hyb->add_option("--kmax", wa.kmax);
    auto* ow_x = wit_hyb->add_option("--exponent", wa.exponent)
                     ->check(CLI::IsMember({"theorem", "proof"}));
    auto* ow_p = wit_hyb->add_option("--provenance", wa.provenance)
                     ->check(CLI::IsMember({"direct", "proof"}));
    auto* wit_mix = wit_cmd->add_subcommand(
        "mixed", "q |q|_D ||q b - delta|| < (log q)^-(1/2-eps) on the chain");
    wit_mix->alias("eq9");
    auto* om_p = wit_mix->add_option("--pseudo", wa.pseudo);
    auto* om_b = wit_mix->add_option("--beta", wa.beta);
    auto* om_d = wit_mix->add_option("--delta", wa.delta);
    auto* om_e = wit_mix->add_option("--eps", wa.eps);
    auto* om_k = wit_mix->add_option("--kmax", wa.kmax);
    auto* om_c = wit_mix->add_option("--C", wa.c, "growth base for n_k <= C^k");
    auto* om_x = wit_mix->add_option("--exponent", wa.exponent)
                     ->check(CLI::IsMember({"theorem", "proof"}));
    auto* wit_lim = wit_cmd->add_subcommand("liminf", "rate-free running minima over the chain");
    auto* ol_p = wit_lim->add_option("--pseudo", wa.pseudo);
    auto* ol_b = wit_lim->add_option("--beta", wa.beta);
    auto* ol_d = wit_lim->add_option("--delta", wa.delta);
    auto* ol_k = wit_lim->add_option("--kmax", wa.kmax);
    auto* wit_ver = wit_cmd->add_subcommand("verify", "independently re-check a certificate file");
    wit_ver->add_option("file", verify_path, "certificate JSON")->required();

    // report -------------------------------------------------------------------
    std::vector<std::string> report_runs;
    long report_latest = 0;
    auto* rep_cmd = app.add_subcommand("report", "markdown summary of run outputs");
    rep_cmd->add_option("--runs", report_runs, "run output files")->delimiter(',');
    rep_cmd->add_option("--latest", report_latest, "include the last N logged runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        json cfg = load_config_file(config_path);

        // config-file fallbacks for global options
        if (cfg.contains("format") && app.count("--format") == 0)
            ctx.format = cfg["format"].get<std::string>();
        if (cfg.contains("out") && app.count("--out") == 0)
            ctx.out_path = cfg["out"].get<std::string>();
        if (cfg.contains("precision_cap") && app.count("--precision-cap") == 0)
            ctx.precision_cap = cfg["precision_cap"].get<long>();
        if (cfg.contains("shards") && app.count("--shards") == 0)
            ctx.shards = cfg["shards"].get<unsigned>();

        json& c = ctx.config;
        c["format"] = ctx.format;
        c["precision_cap"] = ctx.precision_cap;
        c["shards"] = ctx.shards;

        if (cf_cmd->parsed()) {
            std::string sub = cf_expand->parsed() ? "expand"
                              : cf_conv->parsed() ? "convergents"
                                                  : "sample";
            merge_opt(oe_x, cfg, "x", cf.x);
            merge_opt(oc_x, cfg, "x", cf.x);
            merge_opt(oe_c, cfg, "count", cf.count);
            merge_opt(oc_c, cfg, "count", cf.count);
            merge_opt(os_c, cfg, "count", cf.count);
            merge_opt(oe_m, cfg, "max_digits", cf.max_digits);
            merge_opt(os_m, cfg, "M", cf.m);
            merge_opt(os_d, cfg, "depth", cf.depth);
            merge_opt(os_s, cfg, "seed", cf.seed);
            c["command"] = "cf " + sub;
            if (sub == "sample") {
                c["M"] = cf.m;
                c["depth"] = cf.depth;
                c["seed"] = cf.seed;
            } else {
                c["x"] = cf.x;
                c["max_digits"] = cf.max_digits;
            }
            c["count"] = cf.count;
            return run_cf_table(ctx, sub, cf);
        }
        if (ps_cmd->parsed()) {
            if (ps_eval->parsed()) {
                merge_opt(op_p, cfg, "pseudo", ps_pseudo);
                merge_opt(op_q, cfg, "q", ps_q);
                c["command"] = "pseudo eval";
                c["pseudo"] = ps_pseudo;
                c["q"] = ps_q;
                return run_pseudo_eval(ctx, ps_pseudo, ps_q);
            }
            merge_opt(och_p, cfg, "pseudo", ps_pseudo);
            merge_opt(och_k, cfg, "K", ps_k);
            merge_opt(och_c, cfg, "C", ps_c);
            c["command"] = "pseudo check";
            c["pseudo"] = ps_pseudo;
            c["K"] = ps_k;
            if (!ps_c.empty()) c["C"] = ps_c;
            return run_pseudo_check(ctx, ps_pseudo, ps_k, ps_c);
        }
        if (scan_cmd->parsed()) {
            merge_opt(osc_kind, cfg, "kind", sc.kind);
            merge_opt(osc_a, cfg, "alpha", sc.alpha);
            merge_opt(osc_b, cfg, "beta", sc.beta);
            merge_opt(osc_g, cfg, "gamma", sc.gamma);
            merge_opt(osc_d, cfg, "delta", sc.delta);
            merge_opt(osc_p, cfg, "pseudo", sc.pseudo);
            merge_opt(osc_qf, cfg, "qmin", sc.qmin);
            merge_opt(osc_qt, cfg, "qmax", sc.qmax);
            merge_opt(osc_e, cfg, "eps", sc.eps);
            merge_opt(osc_cand, cfg, "candidates", sc.candidates);
            merge_opt(osc_km, cfg, "kmax", sc.kmax);
            c["command"] = "scan";
            c["kind"] = sc.kind;
            c["alpha"] = sc.alpha;
            if (!sc.beta.empty()) c["beta"] = sc.beta;
            if (sc.kind == "hybrid") c["gamma"] = sc.gamma;
            if (sc.kind == "mixed") {
                c["delta"] = sc.delta;
                c["pseudo"] = sc.pseudo;
            }
            c["qmin"] = sc.qmin;
            c["qmax"] = sc.qmax;
            if (!sc.eps.empty()) c["eps"] = sc.eps;
            c["candidates"] = sc.candidates;
            if (sc.candidates == "convergents") c["kmax"] = sc.kmax;
            return run_scan(ctx, sc);
        }
        if (disc_cmd->parsed()) {
            if (disc_exact->parsed()) {
                merge_opt(od_p, cfg, "points", disc_points);
                c["command"] = "disc exact";
                c["points"] = disc_points;
                return run_disc_exact(ctx, disc_points);
            }
            if (disc_et->parsed()) {
                merge_opt(odt_p, cfg, "points", disc_points);
                merge_opt(odt_k, cfg, "K", disc_k);
                c["command"] = "disc et";
                c["points"] = disc_points;
                c["K"] = disc_k;
                return run_disc_et(ctx, disc_points, disc_k);
            }
            merge_opt(ods_a, cfg, "a", sca.a);
            merge_opt(ods_m, cfg, "M", sca.m);
            merge_opt(ods_s, cfg, "samples", sca.samples);
            merge_opt(ods_n, cfg, "Nmax", sca.nmax);
            merge_opt(ods_seed, cfg, "seed", sca.seed);
            merge_opt(ods_x, cfg, "x", sca.x);
            merge_opt(ods_g, cfg, "grid", sca.grid);
            merge_opt(ods_f, cfg, "fit_min", sca.fit_min);
            c["command"] = "disc scaling";
            c["a"] = sca.a;
            c["M"] = sca.m;
            c["samples"] = sca.samples;
            c["Nmax"] = sca.nmax;
            c["seed"] = sca.seed;
            if (!sca.x.empty()) c["x"] = sca.x;
            c["fit_min"] = sca.fit_min;
            return run_disc_scaling(ctx, sca);
        }
        if (wit_cmd->parsed()) {
            if (wit_hyb->parsed()) {
                merge_opt(ow_a, cfg, "alpha", wa.alpha);
                merge_opt(ow_b, cfg, "beta", wa.beta);
                merge_opt(ow_g, cfg, "gamma", wa.gamma);
                merge_opt(ow_e, cfg, "eps", wa.eps);
                merge_opt(ow_k, cfg, "kmax", wa.kmax);
                merge_opt(ow_x, cfg, "exponent", wa.exponent);
                merge_opt(ow_p, cfg, "provenance", wa.provenance);
                c["command"] = "witness hybrid";
                c["alpha"] = wa.alpha;
                c["beta"] = wa.beta;
                c["gamma"] = wa.gamma;
                c["eps"] = wa.eps;
                c["kmax"] = wa.kmax;
                c["exponent"] = wa.exponent;
                c["provenance"] = wa.provenance;
                return run_witness_hybrid(ctx, wa);
            }
            if (wit_mix->parsed()) {
                merge_opt(om_p, cfg, "pseudo", wa.pseudo);
                merge_opt(om_b, cfg, "beta", wa.beta);
                merge_opt(om_d, cfg, "delta", wa.delta);
                merge_opt(om_e, cfg, "eps", wa.eps);
                merge_opt(om_k, cfg, "kmax", wa.kmax);
                merge_opt(om_c, cfg, "C", wa.c);
                merge_opt(om_x, cfg, "exponent", wa.exponent);
                c["command"] = "witness mixed";
                c["pseudo"] = wa.pseudo;
                c["beta"] = wa.beta;
                c["delta"] = wa.delta;
                c["eps"] = wa.eps;
                c["kmax"] = wa.kmax;
                c["C"] = wa.c;
                c["exponent"] = wa.exponent;
                return run_witness_mixed(ctx, wa);
            }
            if (wit_lim->parsed()) {
                merge_opt(ol_p, cfg, "pseudo", wa.pseudo);
                merge_opt(ol_b, cfg, "beta", wa.beta);
                merge_opt(ol_d, cfg, "delta", wa.delta);
                merge_opt(ol_k, cfg, "kmax", wa.kmax);
                c["command"] = "witness liminf";
                c["pseudo"] = wa.pseudo;
                c["beta"] = wa.beta;
                c["delta"] = wa.delta;
                c["kmax"] = wa.kmax;
                return run_witness_liminf(ctx, wa);
            }
            c["command"] = "witness verify";
            c["file"] = verify_path;
            return run_witness_verify(ctx, verify_path);
        }
        if (rep_cmd->parsed()) {
            c["command"] = "report";
            c["latest"] = report_latest;
            return run_report(ctx, report_runs, report_latest);
        }
        return kExitParse;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << " (partial results discarded)\n";
        return kExitPrecision;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const StreamExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PeriodNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnresolvedOrder& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
