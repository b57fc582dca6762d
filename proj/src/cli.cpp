#include "gramlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gramlab/charpoly.hpp"
#include "gramlab/csv.hpp"
#include "gramlab/distance.hpp"
#include "gramlab/engine.hpp"
#include "gramlab/family.hpp"
#include "gramlab/verify.hpp"
#include "gramlab/version.hpp"

namespace gramlab {
namespace {

using nlohmann::json;

const std::map<std::string, Command> kCommands = {
    {"ratio", Command::ratio},           {"shifted-ratio", Command::shifted_ratio},
    {"bounds", Command::bounds},         {"distance", Command::distance},
    {"charpoly", Command::charpoly},     {"verify", Command::verify},
    {"probe", Command::probe},
};

const char* command_name(Command c) {
    for (const auto& [name, cmd] : kCommands) {
        if (cmd == c) return name.c_str();
    }
    return "?";
}

bool needs_family(Command c) {
    return c == Command::ratio || c == Command::shifted_ratio || c == Command::bounds ||
           c == Command::distance || c == Command::probe;
}

std::string default_out_name(const RunConfig& cfg) {
    return std::string(command_name(cfg.command)) +
           (cfg.format == OutputFormat::json ? ".json" : ".csv");
}

template <class S>
VectorFamily<S> build_family(const RunConfig& cfg) {
    if (cfg.family_kind == "monomial") return VectorFamily<S>::monomial(cfg.m);
    if (cfg.family_kind == "logpower") return VectorFamily<S>::log_power(cfg.m);
    if (cfg.family_kind == "csv") return ingest_csv<S>(cfg.family_path);
    if (cfg.family_kind == "custom") return ingest_family_file<S>(cfg.family_path);
    throw UsageError("no family configured", kExitMissingFamily);
}

/// A finite table caps the window; an n-max the user did not ask for
/// silently clamps to the horizon, an explicit one past it is an error
/// (reported by the engine).
template <class S>
std::size_t effective_n_max(const RunConfig& cfg, const VectorFamily<S>& family) {
    if (auto h = family.horizon()) {
        if (!cfg.n_max_explicit && cfg.n_max > *h) return *h;
    }
    return cfg.n_max;
}

template <class S>
void put_scalar(json& obj, const std::string& key, const S& value) {
    obj[key] = scalar_to_decimal(value);
    if constexpr (scalar_traits<S>::is_exact) {
        obj[key + "_num"] = numerator(value).str();
        obj[key + "_den"] = denominator(value).str();
    }
}

template <class S>
json scalar_list(const std::vector<S>& values) {
    json arr = json::array();
    for (const S& v : values) arr.push_back(scalar_to_string(v));
    return arr;
}

template <class S>
json meta_block(const RunConfig& cfg) {
    json meta;
    meta["version"] = GRAMLAB_VERSION;
    meta["command"] = command_name(cfg.command);
    meta["scalar_mode"] = scalar_traits<S>::name();
    json echo;
    for (const auto& [k, v] : cfg.echo) echo[k] = v;
    meta["config"] = echo;
    return meta;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void emit_json(const RunConfig& cfg, const json& doc) {
    write_text(cfg.out_path, doc.dump(2) + "\n");
}

/// CSV mirror of a JSON document: "# key=value" comment header from the
/// meta block, one column per scalar field of each series row.
void emit_csv(const RunConfig& cfg, const json& doc,
              const std::vector<std::string>& columns) {
    std::string text = "# gramlab " GRAMLAB_VERSION "\n";
    const json& meta = doc.at("meta");
    for (auto it = meta.begin(); it != meta.end(); ++it) {
        if (it.key() == "config") continue;
        text += "# " + it.key() + "=" + it->get<std::string>() + "\n";
    }
    for (auto it = meta.at("config").begin(); it != meta.at("config").end(); ++it) {
        text += "# " + it.key() + "=" + it->get<std::string>() + "\n";
    }
    std::string header;
    for (const std::string& c : columns) {
        if (!header.empty()) header += ",";
        header += c;
    }
    text += header + "\n";
    if (doc.contains("series")) {
        for (const json& row : doc.at("series")) {
            std::string line;
            for (const std::string& c : columns) {
                if (!line.empty()) line += ",";
                if (row.contains(c)) {
                    const json& v = row.at(c);
                    if (v.is_string()) {
                        line += v.get<std::string>();
                    } else {
                        line += v.dump();
                    }
                }
            }
            text += line + "\n";
        }
    }
    write_text(cfg.out_path, text);
}

void emit(const RunConfig& cfg, const json& doc, const std::vector<std::string>& columns) {
    if (cfg.format == OutputFormat::json) {
        emit_json(cfg, doc);
    } else {
        emit_csv(cfg, doc, columns);
    }
}

template <class S>
std::vector<S> parse_scalar_list(const std::string& text) {
    std::vector<S> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(scalar_from_string<S>(detail::trim(cell)));
    if (out.empty()) throw ParseError("empty scalar list");
    return out;
}

EngineOptions engine_options(const RunConfig& cfg) {
    EngineOptions opts;
    opts.anchor_interval = cfg.anchor_interval;
    opts.tol = cfg.tol;
    return opts;
}

template <class S>
int run_ratio(const RunConfig& cfg, bool shifted) {
    VectorFamily<S> family = build_family<S>(cfg);
    const std::size_t n_max = effective_n_max(cfg, family);
    RatioSeries<S> series =
        shifted ? shifted_ratio_series(family, n_max, cfg.drop_index,
                                       engine_options(cfg))
                : ratio_series(family, n_max, cfg.drop_index, engine_options(cfg));

    json doc;
    doc["meta"] = meta_block<S>(cfg);
    doc["meta"]["family"] = family.label();
    json rows = json::array();
    for (const SeriesEntry<S>& e : series.entries) {
        json row;
        row["n"] = e.n;
        put_scalar(row, "value", e.value);
        if (e.t0_norm_sq) {
            put_scalar(row, "t0_norm_sq", *e.t0_norm_sq);
            row["t0_norm"] =
                decimal17(std::sqrt(scalar_traits<S>::to_double(*e.t0_norm_sq)));
        }
        rows.push_back(std::move(row));
    }
    doc["series"] = std::move(rows);
    doc["skipped"] = series.skipped;

    std::vector<std::string> columns = {"n", "value"};
    if constexpr (scalar_traits<S>::is_exact) {
        columns.push_back("value_num");
        columns.push_back("value_den");
    }
    if (!shifted) columns.push_back("t0_norm");
    emit(cfg, doc, columns);

    const SeriesEntry<S>& last = series.entries.back();
    std::cout << command_name(cfg.command) << ": " << family.label() << " drop="
              << series.drop_index << " entries=" << series.entries.size()
              << " final R_" << last.n << " = " << scalar_to_string(last.value) << "\n";
    return kExitOk;
}

template <class S>
int run_bounds(const RunConfig& cfg) {
    VectorFamily<S> family = build_family<S>(cfg);
    BoundednessReport<S> report = boundedness_report(family, effective_n_max(cfg, family),
                                                     cfg.sample_every, engine_options(cfg));

    json doc;
    doc["meta"] = meta_block<S>(cfg);
    doc["meta"]["family"] = family.label();
    json rows = json::array();
    for (const BoundednessRow<S>& r : report.rows) {
        json row;
        row["n"] = r.n;
        row["singular"] = r.singular_reduced;
        row["cauchy_schwarz_ok"] = r.cauchy_schwarz_ok;
        row["envelope_ok"] = r.envelope_ok;
        if (!r.singular_reduced) {
            put_scalar(row, "t0_norm_sq", r.t0_norm_sq);
            S envelope{};
            for (const S& c : r.observed_cs) envelope += c;
            put_scalar(row, "sum_observed_cs", envelope);
            row["t0"] = scalar_list(r.t0);
            row["observed_cs"] = scalar_list(r.observed_cs);
        }
        rows.push_back(std::move(row));
    }
    doc["series"] = std::move(rows);
    doc["all_cauchy_schwarz_ok"] = report.all_cauchy_schwarz_ok;
    doc["all_envelope_ok"] = report.all_envelope_ok;

    emit(cfg, doc,
         {"n", "t0_norm_sq", "sum_observed_cs", "cauchy_schwarz_ok", "envelope_ok",
          "singular"});

    bool ok = report.all_cauchy_schwarz_ok && report.all_envelope_ok;
    std::cout << "bounds: " << family.label() << " rows=" << report.rows.size()
              << " cauchy-schwarz=" << (report.all_cauchy_schwarz_ok ? "ok" : "FAIL")
              << " envelope=" << (report.all_envelope_ok ? "ok" : "FAIL") << "\n";
    return ok ? kExitOk : kExitFailure;
}

template <class S>
int run_distance(const RunConfig& cfg) {
    VectorFamily<S> family = build_family<S>(cfg);
    if (family.rows() < 2) {
        throw UsageError("distance needs a family with at least two rows");
    }
    std::size_t n = effective_n_max(cfg, family);
    if (auto h = family.horizon(); h && !cfg.n_max_explicit) n = *h;
    std::vector<S> f0 = family.projection(0, n);
    std::vector<std::vector<S>> basis;
    for (std::size_t r = 1; r < family.rows(); ++r) basis.push_back(family.projection(r, n));

    DistanceResult<S> d = distance_squared(f0, basis, CrossCheck::on, cfg.tol);
    std::vector<S> cramer = minimizer_cramer(f0, basis, cfg.tol);
    bool cramer_ok = true;
    for (std::size_t k = 0; k < cramer.size(); ++k) {
        cramer_ok =
            cramer_ok && scalar_traits<S>::equal(cramer[k], d.minimizer[k], cfg.tol);
    }

    json doc;
    doc["meta"] = meta_block<S>(cfg);
    doc["meta"]["family"] = family.label();
    json row;
    row["n"] = n;
    put_scalar(row, "d_squared", d.d_squared);
    put_scalar(row, "gram_full", d.gram_full);
    put_scalar(row, "gram_reduced", d.gram_reduced);
    row["t0"] = scalar_list(d.minimizer);
    row["cramer_agrees"] = cramer_ok;
    doc["series"] = json::array({row});

    emit(cfg, doc, {"n", "d_squared", "gram_full", "gram_reduced"});
    std::cout << "distance: " << family.label() << " n=" << n
              << " d^2 = " << scalar_to_string(d.d_squared) << "\n";
    return cramer_ok ? kExitOk : kExitFailure;
}

template <class S>
int run_charpoly(const RunConfig& cfg) {
    if (cfg.matrix_path.empty()) {
        throw UsageError("charpoly requires --matrix FILE");
    }
    RectMatrix<S> c = read_matrix_csv<S>(cfg.matrix_path);
    if (!c.is_square()) {
        throw UsageError("charpoly matrix must be square");
    }
    if (cfg.lambda_csv.empty()) {
        throw UsageError("charpoly requires --lambda \"l1,l2,...\"");
    }
    LambdaWeights<S> lambda{parse_scalar_list<S>(cfg.lambda_csv)};
    if (lambda.size() != c.rows()) {
        throw UsageError("lambda length must equal the matrix order");
    }

    S direct = gen_charpoly_direct(c, lambda);
    json row;
    row["order"] = c.rows();
    put_scalar(row, "p_direct", direct);

    bool all_ok = true;
    if (c.rows() <= kSubsetExpansionCap) {
        S subset = gen_charpoly_subset(c, lambda);
        put_scalar(row, "p_subset", subset);
        bool equal = scalar_traits<S>::equal(direct, subset, cfg.tol);
        row["subset_agrees"] = equal;
        all_ok = all_ok && equal;
    }

    bool positive = true;
    for (const S& v : lambda.values) positive = positive && v > S(0);
    bool symmetric = true;
    for (std::size_t i = 0; i < c.rows() && symmetric; ++i)
        for (std::size_t j = 0; j < i; ++j)
            symmetric = symmetric && scalar_traits<S>::equal(c(i, j), c(j, i), cfg.tol);
    if (positive && symmetric && c.rows() <= kSubsetExpansionCap) {
        SymMatrix<S> sym(c.rows());
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j <= i; ++j) sym.set(i, j, c(i, j));
        RectMatrix<S> inv = inverse_lambda(sym, lambda);
        RectMatrix<S> shifted = detail::add_diag(c, lambda);
        bool identity_ok = true;
        for (std::size_t i = 0; i < c.rows(); ++i) {
            for (std::size_t j = 0; j < c.rows(); ++j) {
                S acc{};
                for (std::size_t k = 0; k < c.rows(); ++k) acc += inv(i, k) * shifted(k, j);
                identity_ok = identity_ok &&
                              scalar_traits<S>::equal(acc, S(i == j ? 1 : 0), cfg.tol);
            }
        }
        row["inverse_identity_ok"] = identity_ok;
        all_ok = all_ok && identity_ok;

        if (!cfg.vector_csv.empty()) {
            std::vector<S> a = parse_scalar_list<S>(cfg.vector_csv);
            if (a.size() != c.rows()) {
                throw UsageError("--vec length must equal the matrix order");
            }
            put_scalar(row, "quadform", quadform_lambda(sym, lambda, a, cfg.tol));
        }
    }

    json doc;
    doc["meta"] = meta_block<S>(cfg);
    doc["series"] = json::array({row});
    emit(cfg, doc, {"order", "p_direct", "p_subset"});
    std::cout << "charpoly: order " << c.rows()
              << " P = " << scalar_to_string(direct)
              << (all_ok ? "" : " [MISMATCH]") << "\n";
    return all_ok ? kExitOk : kExitFailure;
}

int run_verify_cmd(const RunConfig& cfg) {
    VerifyOptions opts;
    opts.seed = cfg.seed;
    opts.instances = cfg.instances;
    opts.max_order = cfg.max_order;
    VerifyReport report = run_verify(opts);

    json doc;
    doc["meta"] = meta_block<Rational>(cfg);
    json rows = json::array();
    for (const SuiteResult& s : report.suites) {
        json row;
        row["suite"] = s.name;
        row["checks"] = s.checks;
        row["failures"] = s.failures;
        rows.push_back(std::move(row));
    }
    doc["series"] = std::move(rows);
    doc["ok"] = report.ok();
    emit(cfg, doc, {"suite", "checks", "failures"});

    std::cout << "verify: " << report.suites.size() << " suites, "
              << report.total_checks << " checks, " << report.total_failures
              << " failures\n";
    return report.ok() ? kExitOk : kExitFailure;
}

int run_probe(const RunConfig& cfg) {
    VectorFamily<double> family = build_family<double>(cfg);
    ProbeReport report =
        l2_escape_probe(family, cfg.samples, effective_n_max(cfg, family), cfg.seed);

    json doc;
    doc["meta"] = meta_block<double>(cfg);
    doc["meta"]["family"] = family.label();
    doc["meta"]["note"] =
        "heuristic evidence only; finite partial sums cannot prove the escape hypothesis";
    json rows = json::array();
    for (const ProbeSample& s : report.samples) {
        json row;
        row["label"] = s.label;
        json coeffs = json::array();
        for (double c : s.coeffs) coeffs.push_back(decimal17(c));
        row["coeffs"] = std::move(coeffs);
        json cps = json::array();
        for (const ProbeCheckpoint& cp : s.checkpoints) {
            cps.push_back(json{{"n", cp.n}, {"partial_sum", decimal17(cp.partial_sum)}});
        }
        row["checkpoints"] = std::move(cps);
        row["growth_slope"] = decimal17(s.growth_slope);
        row["bounded"] = s.bounded;
        rows.push_back(std::move(row));
    }
    doc["series"] = std::move(rows);
    doc["any_bounded"] = report.any_bounded;
    emit(cfg, doc, {"label", "growth_slope", "bounded"});

    std::cout << "probe: " << report.samples.size() << " directions to n="
              << report.n_probe << ", bounded directions "
              << (report.any_bounded ? "FOUND" : "none") << "\n";
    return kExitOk;
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"gramlab: Gram-determinant ratios, hyperplane distances, and "
                 "generalized characteristic polynomials"};
    app.set_config("--config", "", "key=value config file (flags win)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string command;
    app.add_option("command", command,
                   "one of: ratio shifted-ratio bounds distance charpoly verify probe")
        ->required();

    std::string family_kind;
    app.add_option("--family", family_kind, "family kind: monomial logpower csv custom")
        ->check(CLI::IsMember({"monomial", "logpower", "csv", "custom"}));
    long long m = 1;
    app.add_option("--m", m, "m (the family has rows 0..m)")->capture_default_str();
    std::string csv_path;
    app.add_option("--csv", csv_path, "CSV table for --family csv");
    std::string family_file;
    app.add_option("--file", family_file, "family file for --family custom");

    long long n_max = 100;
    auto* n_max_opt =
        app.add_option("--n-max", n_max, "projection horizon")->capture_default_str();
    long long drop_index = 0;
    app.add_option("--drop", drop_index, "row dropped from the denominator Gram")
        ->capture_default_str();
    long long sample_every = 1;
    app.add_option("--sample-every", sample_every, "bounds sampling stride")
        ->capture_default_str();
    long long anchor_interval = 64;
    app.add_option("--anchor-interval", anchor_interval,
                   "steps between full engine recomputations")
        ->capture_default_str();

    std::string mode = "auto";
    app.add_option("--mode", mode, "scalar backend")
        ->check(CLI::IsMember({"exact", "float", "auto"}))
        ->capture_default_str();
    double rel_tol = Tolerance{}.rel;
    app.add_option("--rel-tol", rel_tol, "relative tolerance (float mode)")
        ->capture_default_str();
    double abs_tol = Tolerance{}.abs;
    app.add_option("--abs-tol", abs_tol, "absolute tolerance floor (float mode)")
        ->capture_default_str();
    std::uint64_t seed = 7;
    app.add_option("--seed", seed, "seed for randomized verification/probing")
        ->capture_default_str();

    long long instances = 200;
    app.add_option("--instances", instances, "verify: instances per suite")
        ->capture_default_str();
    long long max_order = 8;
    app.add_option("--max-order", max_order, "verify: max matrix order")
        ->capture_default_str();
    long long samples = 8;
    app.add_option("--samples", samples, "probe: sampled coefficient vectors")
        ->capture_default_str();

    std::string matrix_path;
    app.add_option("--matrix", matrix_path, "charpoly: square matrix CSV");
    std::string lambda_csv;
    app.add_option("--lambda", lambda_csv, "charpoly: comma-separated weights");
    std::string vector_csv;
    app.add_option("--vec", vector_csv, "charpoly: vector for the quadratic form");

    std::string out_path;
    app.add_option("--out", out_path, "output file (default <command>.<format>)");
    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help(), kExitOk);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string("usage error: ") + e.what(), kExitUsage);
    }

    RunConfig cfg;
    auto cmd = kCommands.find(command);
    if (cmd == kCommands.end()) {
        throw UsageError("unknown command '" + command + "'", kExitUsage);
    }
    cfg.command = cmd->second;

    if (n_max <= 0) {
        throw UsageError("--n-max must be positive", kExitBadNMax);
    }
    if (m < 0) {
        throw UsageError("--m must be nonnegative", kExitUsage);
    }
    if (drop_index < 0 || sample_every <= 0 || anchor_interval <= 0 || instances <= 0 ||
        max_order <= 0 || samples <= 0) {
        throw UsageError("numeric options must be positive", kExitUsage);
    }

    cfg.family_kind = family_kind;
    cfg.m = static_cast<std::size_t>(m);
    cfg.n_max = static_cast<std::size_t>(n_max);
    cfg.n_max_explicit = n_max_opt->count() > 0;
    cfg.drop_index = static_cast<std::size_t>(drop_index);
    cfg.sample_every = static_cast<std::size_t>(sample_every);
    cfg.anchor_interval = static_cast<std::size_t>(anchor_interval);
    cfg.seed = seed;
    cfg.instances = static_cast<std::size_t>(instances);
    cfg.max_order = static_cast<std::size_t>(max_order);
    cfg.samples = static_cast<std::size_t>(samples);
    cfg.tol = Tolerance{rel_tol, abs_tol};
    cfg.matrix_path = matrix_path;
    cfg.lambda_csv = lambda_csv;
    cfg.vector_csv = vector_csv;

    if (mode == "exact") cfg.mode = ScalarMode::exact;
    if (mode == "float") cfg.mode = ScalarMode::floating;
    if (mode == "auto") cfg.mode = ScalarMode::automatic;
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

    if (needs_family(cfg.command)) {
        if (family_kind.empty()) {
            throw UsageError("this command requires --family", kExitMissingFamily);
        }
        if (family_kind == "csv") {
            if (csv_path.empty()) {
                throw UsageError("--family csv requires --csv FILE", kExitMissingFamily);
            }
            cfg.family_path = csv_path;
        }
        if (family_kind == "custom") {
            if (family_file.empty()) {
                throw UsageError("--family custom requires --file FILE",
                                 kExitMissingFamily);
            }
            cfg.family_path = family_file;
        }
        if (family_kind == "logpower" && cfg.mode == ScalarMode::exact) {
            throw UsageError("the log-power family has no exact representation; "
                             "use --mode float",
                             kExitUsage);
        }
    }

    std::filesystem::path out(out_path);
    if (out.empty()) out = default_out_name(cfg);
    if (const char* dir = std::getenv("GRAMLAB_OUT_DIR"); dir && out.is_relative()) {
        out = std::filesystem::path(dir) / out;
    }
    cfg.out_path = out;

    cfg.echo["command"] = command;
    if (!family_kind.empty()) cfg.echo["family"] = family_kind;
    if (!cfg.family_path.empty()) cfg.echo["family_path"] = cfg.family_path.string();
    if (needs_family(cfg.command) &&
        (family_kind == "monomial" || family_kind == "logpower")) {
        cfg.echo["m"] = std::to_string(cfg.m);
    }
    if (cfg.command == Command::ratio || cfg.command == Command::shifted_ratio ||
        cfg.command == Command::bounds || cfg.command == Command::probe ||
        (cfg.command == Command::distance && cfg.n_max_explicit)) {
        cfg.echo["n-max"] = std::to_string(cfg.n_max);
    }
    if (cfg.command == Command::ratio || cfg.command == Command::shifted_ratio) {
        cfg.echo["drop"] = std::to_string(cfg.drop_index);
    }
    if (cfg.command == Command::bounds) {
        cfg.echo["sample-every"] = std::to_string(cfg.sample_every);
    }
    if (cfg.command == Command::verify) {
        cfg.echo["instances"] = std::to_string(cfg.instances);
        cfg.echo["max-order"] = std::to_string(cfg.max_order);
    }
    if (cfg.command == Command::probe) {
        cfg.echo["samples"] = std::to_string(cfg.samples);
    }
    if (cfg.command == Command::verify || cfg.command == Command::probe) {
        cfg.echo["seed"] = std::to_string(cfg.seed);
    }
    cfg.echo["mode"] = cfg.use_exact() ? "exact" : "float";
    cfg.echo["format"] = format;
    cfg.echo["out"] = cfg.out_path.string();
    return cfg;
}

int run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::ratio:
        case Command::shifted_ratio: {
            bool shifted = cfg.command == Command::shifted_ratio;
            return cfg.use_exact() ? run_ratio<Rational>(cfg, shifted)
                                   : run_ratio<double>(cfg, shifted);
        }
        case Command::bounds:
            return cfg.use_exact() ? run_bounds<Rational>(cfg) : run_bounds<double>(cfg);
        case Command::distance:
            return cfg.use_exact() ? run_distance<Rational>(cfg)
                                   : run_distance<double>(cfg);
        case Command::charpoly:
            return cfg.use_exact() ? run_charpoly<Rational>(cfg)
                                   : run_charpoly<double>(cfg);
        case Command::verify:
            return run_verify_cmd(cfg);
        case Command::probe:
            return run_probe(cfg);
    }
    throw UsageError("unknown command", kExitUsage);
}

int cli_main(int argc, const char* const* argv) {
    try {
        RunConfig cfg = parse_config(argc, argv);
        return run(cfg);
    } catch (const UsageError& e) {
        if (e.code == kExitOk) {
            std::cout << e.what() << "\n";
        } else {
            std::cerr << "gramlab: " << e.what() << "\n";
        }
        return e.code;
    } catch (const IoError& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitIo;
    } catch (const DegenerateFamilyError& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitFailure;
    } catch (const SingularityError& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitFailure;
    } catch (const IdentityMismatchError& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitFailure;
    } catch (const CapacityError& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "gramlab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "gramlab: internal error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace gramlab
