// trilin: classification, coefficient evaluation, Sol(k) solving and the verification suites.
// Each subcommand parses its flags, calls the library and renders the resulting record.

#include "trilinear/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace trilinear;
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kSmallDimension = 3 };

struct SmallDimension : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checked before any Ambient is built.
Ambient ambient_for(int n) {
    if (n < 4) throw SmallDimension("n must be >= 4, got " + std::to_string(n));
    return Ambient(n);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

Triple parse_triple(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 3) throw ParseError("expected three comma-separated numbers, got '" + text + "'");
    return {parse_crational(parts[0]), parse_crational(parts[1]), parse_crational(parts[2])};
}

std::pair<CRational, CRational> parse_pair(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw ParseError("expected two comma-separated numbers, got '" + text + "'");
    return {parse_crational(parts[0]), parse_crational(parts[1])};
}

MultiIndex parse_multi_index(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 3) throw ParseError("expected a1,a2,a3, got '" + text + "'");
    long v[3];
    for (int i = 0; i < 3; ++i) {
        Rational r = parse_rational(parts[static_cast<std::size_t>(i)]);
        if (!is_integer(r) || sgn(r) < 0) throw ParseError("multi-index entries must be integers >= 0");
        v[i] = to_long(r);
    }
    return {v[0], v[1], v[2]};
}

EvalMode parse_mode(const std::string& m) {
    if (m == "exact") return EvalMode::Exact;
    if (m == "numeric") return EvalMode::Numeric;
    return EvalMode::Auto;
}

SystemVariant parse_variant(const std::string& v) {
    return v == "proof" ? SystemVariant::ProofVariant : SystemVariant::Displayed;
}

// ---- JSON encoders ----------------------------------------------------------

Json encode(const CRational& z) { return to_string(z); }

Json encode(const Triple& t) { return Json::array({encode(t[0]), encode(t[1]), encode(t[2])}); }

Json encode(const Line& d) {
    return {{"eps", d.eps}, {"j", d.j}, {"l", d.l}, {"m", d.m}, {"type", d.type_one() ? "I" : "II"}};
}

Json encode(const Witness& w) {
    Json values = Json::object();
    for (const auto& [key, v] : w.values) values[key] = to_string(v);
    return {{"permutation", w.permutation}, {"variant", w.variant}, {"values", values}};
}

Json encode(const PoleProfile& pp) {
    Json planes = Json::array();
    for (const auto& [j, k] : pp.type_one_planes) planes.push_back({{"slot", j}, {"k", k}});
    return {{"type_one_planes", planes},
            {"type_two_plane", pp.type_two_plane ? Json(*pp.type_two_plane) : Json(nullptr)},
            {"label", pp.label}};
}

Json encode(const CoeffValue& v, long prec) {
    if (const auto* s = std::get_if<StructuredScalar>(&v)) {
        Json gammas = Json::array();
        for (const auto& [x, e] : s->gammas()) gammas.push_back({{"arg", to_string(x)}, {"power", e}});
        BigC approx = s->to_bigc(prec);
        return {{"kind", "exact"},
                {"q", to_string(s->q())},
                {"two_exp", to_string(s->two_exp())},
                {"pi_half_exp", s->pi_half_exp()},
                {"gammas", gammas},
                {"text", s->to_string()},
                {"approx", approx.re.to_string(30)}};
    }
    const BigC& z = std::get<BigC>(v);
    return {{"kind", "numeric"}, {"re", z.re.to_string()}, {"im", z.im.to_string()}, {"precision", z.precision()}};
}

Json encode(const VerifyReport& r) {
    return {{"suite", r.suite},
            {"ok", r.ok()},
            {"checks", r.checks},
            {"failures", r.failures},
            {"max_relative_error", r.max_relative_error},
            {"details", r.details}};
}

Json header(const std::string& command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

// ---- rendering ----------------------------------------------------------------

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string out;
        for (const auto& x : v) out += (out.empty() ? "" : ";") + (x.is_primitive() ? scalar_text(x) : x.dump());
        return out;
    }
    return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (const auto& [key, x] : v.items()) flatten(x, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    out.emplace_back(prefix, scalar_text(v));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// One row per element of doc[rows_key], or a single row for the whole record.
std::string render_csv(const Json& doc, const std::string& rows_key) {
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    if (!rows_key.empty() && doc.contains(rows_key)) {
        for (const auto& r : doc.at(rows_key)) {
            rows.emplace_back();
            flatten(r, "", rows.back());
        }
    } else {
        rows.emplace_back();
        flatten(doc, "", rows.back());
    }
    std::vector<std::string> columns;
    for (const auto& r : rows)
        for (const auto& [k, v] : r)
            if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            auto it = std::find_if(r.begin(), r.end(), [&](const auto& kv) { return kv.first == columns[i]; });
            os << (i ? "," : "") << (it == r.end() ? "" : csv_field(it->second));
        }
        os << "\n";
    }
    return os.str();
}

void render_text(const Json& v, int indent, std::ostream& os) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, x] : v.items()) {
        if (x.is_object()) {
            os << pad << key << ":\n";
            render_text(x, indent + 2, os);
        } else if (x.is_array() && !x.empty() && x.front().is_object()) {
            os << pad << key << ":\n";
            for (const auto& item : x) {
                os << pad << "  -\n";
                render_text(item, indent + 4, os);
            }
        } else {
            os << pad << key << ": " << scalar_text(x) << "\n";
        }
    }
}

struct Output {
    std::string format = "json";
    void emit(const Json& doc, const std::string& rows_key = "") const {
        if (format == "csv")
            std::cout << render_csv(doc, rows_key);
        else if (format == "text")
            render_text(doc, 0, std::cout);
        else
            std::cout << doc.dump(2) << "\n";
    }
};

// ---- commands -------------------------------------------------------------------

struct ClassifyArgs {
    int n = 0;
    std::string lambda, alpha;
};

int cmd_classify(const ClassifyArgs& args, const Output& out) {
    Ambient amb = ambient_for(args.n);
    if (args.lambda.empty() == args.alpha.empty()) throw ParseError("give exactly one of --lambda and --alpha");
    SpectralParam p = args.alpha.empty() ? SpectralParam{parse_triple(args.lambda), amb}
                                         : to_spectral(GeometricParam{parse_triple(args.alpha), amb});
    GeometricParam g = to_geometric(p);
    Stratum s = classify_stratum(p);
    Json lines = Json::array();
    for (const auto& d : s.lines) lines.push_back(encode(d));
    Json doc = header("classify");
    doc["n"] = args.n;
    doc["lambda"] = encode(p.lambda);
    doc["alpha"] = encode(g.alpha);
    doc["stratum"] = to_string(s.tag);
    doc["lines"] = lines;
    doc["witness"] = encode(s.witness);
    doc["pole_profile"] = encode(pole_profile(g));
    doc["dim_tri"] = dim_tri(p);
    doc["dim_tri_diag"] = dim_tri_diag(p);
    out.emit(doc);
    return kOk;
}

struct CoeffArgs {
    int n = 0;
    std::string family, a, lambda, alpha, pair, lm, mode = "auto";
    int slot = 3;
    long k = -1, k1 = -1, k2 = -1, k3 = -1;
};

int cmd_coeff(const CoeffArgs& args, const Output& out, long prec) {
    Ambient amb = ambient_for(args.n);
    MultiIndex a = parse_multi_index(args.a);
    EvalMode mode = parse_mode(args.mode);
    Json params = Json::object();
    auto spectral = [&]() -> SpectralParam {
        if (!args.alpha.empty()) return to_spectral(GeometricParam{parse_triple(args.alpha), amb});
        if (args.lambda.empty()) throw ConstraintError("--lambda or --alpha is required for this family");
        return {parse_triple(args.lambda), amb};
    };
    auto need_k = [&](const char* what) {
        if (args.k < 0) throw ConstraintError(std::string("--k >= 0 is required for ") + what);
        return args.k;
    };
    CoeffValue value;
    if (args.family == "K") {
        SpectralParam p = spectral();
        params["lambda"] = encode(p.lambda);
        value = ktilde_lambda(p, a, mode);
    } else if (args.family == "T" || args.family == "R") {
        if (args.pair.empty()) throw ConstraintError("--pair is required for " + args.family);
        auto pair = parse_pair(args.pair);
        long k = need_k(args.family.c_str());
        params["slot"] = args.slot;
        params["k"] = k;
        params["pair"] = Json::array({encode(pair.first), encode(pair.second)});
        value = args.family == "T" ? ttilde_coeff(args.slot, k, pair, amb, a, mode) : r_coeff(args.slot, k, pair, amb, a, mode);
    } else if (args.family == "S") {
        SpectralParam p = spectral();
        long k = need_k("S");
        params["k"] = k;
        params["lambda"] = encode(p.lambda);
        value = s_coeff(k, p, a, mode);
    } else {
        Z2IIndices z{args.k1, args.k2, args.k3};
        if (!args.lm.empty()) {
            auto lm = parse_triple(args.lm);
            for (const auto& x : lm)
                if (!is_integer(x)) throw ConstraintError("--lm entries must be integers");
            z = z2i_from_lm(to_long(lm[0].re), to_long(lm[1].re), to_long(lm[2].re));
        }
        params["k1"] = z.k1;
        params["k2"] = z.k2;
        params["k3"] = z.k3;
        value = q_coeff(z, amb, a, mode);
    }
    Json doc = header("coeff");
    doc["family"] = args.family;
    doc["n"] = args.n;
    doc["params"] = params;
    doc["a"] = Json::array({a.a1, a.a2, a.a3});
    doc["value"] = encode(value, prec);
    out.emit(doc);
    return kOk;
}

struct SolveArgs {
    int n = 0;
    long k = 0;
    std::string lambda1, lambda2, variant = "displayed";
};

int cmd_solve(const SolveArgs& args, const Output& out) {
    Ambient amb = ambient_for(args.n);
    if (args.k < 0) throw ConstraintError("--k must be >= 0");
    CRational l1 = parse_crational(args.lambda1), l2 = parse_crational(args.lambda2);
    SystemVariant variant = parse_variant(args.variant);
    DimReport rep = nullspace_dim(build_system(l1, l2, args.k, amb.rho, variant));
    auto printed = printed_dim(l1, l2, args.k, amb);
    Json free = Json::array();
    for (const auto& [r, t] : rep.principal) free.push_back(Json::array({r, t}));
    Json doc = header("solve");
    doc["n"] = args.n;
    doc["k"] = args.k;
    doc["lambda1"] = encode(l1);
    doc["lambda2"] = encode(l2);
    doc["lambda3"] = encode(CRational(-amb.rho - 2 * args.k) - l1 - l2);
    doc["variant"] = to_string(variant);
    doc["dim"] = rep.dim;
    doc["free_unknowns"] = free;
    doc["cell"] = printed ? Json(printed->label) : Json(nullptr);
    doc["printed_dim"] = printed ? Json(printed->dim) : Json(nullptr);
    out.emit(doc);
    return kOk;
}

struct TableArgs {
    int n = 0;
    long kmax = 6;
    bool exhaustive = false;
    std::string variant = "displayed";
};

int cmd_table(const TableArgs& args, const Output& out, std::uint64_t seed) {
    Ambient amb = ambient_for(args.n);
    SystemVariant variant = parse_variant(args.variant);
    CellSampler sampler = args.exhaustive ? CellSampler(exhaustive_sampler) : support_and_generic_sampler(seed);
    SolTable t = sol_table(amb, args.kmax, sampler, variant, false);
    Json cells = Json::array();
    for (const auto& c : t.cells)
        cells.push_back({{"k", c.k},
                         {"cell", c.label},
                         {"printed", c.printed},
                         {"samples", c.samples},
                         {"computed", c.dims},
                         {"ok", c.dims.size() == 1 && c.dims.front() == c.printed}});
    bool ok = table_matches(t);
    Json doc = header("table");
    doc["n"] = args.n;
    doc["kmax"] = args.kmax;
    doc["variant"] = to_string(variant);
    doc["sampler"] = args.exhaustive ? "exhaustive" : "support+generic";
    doc["samples"] = t.samples;
    doc["matches"] = ok;
    doc["cells"] = cells;
    out.emit(doc, "cells");
    return ok ? kOk : kVerifyFailed;
}

int cmd_verify(const std::vector<std::string>& suites, const SuiteConfig& cfg, const Output& out) {
    std::vector<std::string> names;
    for (const auto& s : suites) {
        if (s == "all")
            names.insert(names.end(), suite_names().begin(), suite_names().end());
        else
            names.push_back(s);
    }
    Json reports = Json::array();
    bool ok = true;
    for (const auto& name : names) {
        std::clog << "running " << name << "\n";
        VerifyReport r = run_suite(name, cfg);
        ok = ok && r.ok();
        reports.push_back(encode(r));
    }
    Json doc = header("verify");
    doc["seed"] = cfg.seed;
    doc["precision"] = default_precision();
    doc["ok"] = ok;
    doc["suites"] = reports;
    out.emit(doc, "suites");
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Trilinear forms on the sphere: singular set, K-coefficients, Sol(k) systems and verification suites.\n"
        "Numbers are exact rationals \"p/q\"; complex values are written \"p/q+r/si\" without spaces.\n"
        "Triples are comma separated: \"a/b,c/d,e/f\". See FORMATS.md for the output schemas."};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    long precision = default_precision();
    std::uint64_t seed = 1;
    int jobs = 1;
    app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--precision", precision, "Working precision in bits (default 256 or TRILIN_PRECISION_BITS)")
        ->check(CLI::Range(64L, 1L << 20));
    app.add_option("--seed", seed, "Seed for sampled sweeps");
    app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::Range(1, 256));

    ClassifyArgs classify;
    auto* c = app.add_subcommand("classify", "Stratum, lines, witness and multiplicities of a parameter");
    c->add_option("--n", classify.n, "Ambient dimension")->required();
    auto* c_lambda = c->add_option("--lambda", classify.lambda, "Spectral parameter l1,l2,l3");
    auto* c_alpha = c->add_option("--alpha", classify.alpha, "Geometric parameter a1,a2,a3");
    c_lambda->excludes(c_alpha);

    CoeffArgs coeff;
    auto* k = app.add_subcommand("coeff", "One K-coefficient of a family");
    k->add_option("--family", coeff.family, "K, T, R, S or Q")->required()->check(CLI::IsMember({"K", "T", "R", "S", "Q"}));
    k->add_option("--n", coeff.n, "Ambient dimension")->required();
    k->add_option("--a", coeff.a, "Multi-index a1,a2,a3")->required();
    k->add_option("--lambda", coeff.lambda, "Spectral parameter (K, S)");
    k->add_option("--alpha", coeff.alpha, "Geometric parameter (K, S)");
    k->add_option("--slot", coeff.slot, "Distinguished slot (T, R)")->check(CLI::Range(1, 3));
    k->add_option("--k", coeff.k, "Family index k (T, S) or l (R)");
    k->add_option("--pair", coeff.pair, "The two remaining alphas x,y (T, R)");
    k->add_option("--k1", coeff.k1, "Q index k1");
    k->add_option("--k2", coeff.k2, "Q index k2");
    k->add_option("--k3", coeff.k3, "Q index k3");
    k->add_option("--lm", coeff.lm, "Q indices as l1,m2,m3");
    k->add_option("--mode", coeff.mode, "Evaluation mode")->check(CLI::IsMember({"auto", "exact", "numeric"}));

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Dimension of the solution space of the system at (lambda1, lambda2; k)");
    s->add_option("--n", solve.n, "Ambient dimension")->required();
    s->add_option("--k", solve.k, "Level k")->required();
    s->add_option("--lambda1", solve.lambda1)->required();
    s->add_option("--lambda2", solve.lambda2)->required();
    s->add_option("--variant", solve.variant, "System variant")->check(CLI::IsMember({"displayed", "proof"}));

    TableArgs table;
    auto* t = app.add_subcommand("table", "Sample every cell of the dimension table and compare");
    t->add_option("--n", table.n, "Ambient dimension")->required();
    t->add_option("--kmax", table.kmax, "Largest level k")->check(CLI::Range(0L, 12L));
    t->add_option("--variant", table.variant, "System variant")->check(CLI::IsMember({"displayed", "proof"}));
    t->add_flag("--exhaustive", table.exhaustive, "Only the finite support sets, no generic samples");

    std::vector<std::string> suites{"all"};
    SuiteConfig cfg;
    std::string verify_mode = "auto";
    auto* v = app.add_subcommand("verify", "Run verification suites");
    std::vector<std::string> allowed = suite_names();
    allowed.push_back("all");
    v->add_option("--suite", suites, "Suite names (repeatable)")->check(CLI::IsMember(allowed));
    v->add_option("--samples", cfg.samples, "Samples per identity suite")->check(CLI::Range(1L, 100000L));
    v->add_option("--grid", cfg.grid, "Multi-index bound A for identity and lemma suites")->check(CLI::Range(0L, 30L));
    v->add_option("--lmax", cfg.lmax, "Line index bound for the geometry sweep")->check(CLI::Range(0L, 40L));
    v->add_option("--kmax", cfg.kmax, "Table depth")->check(CLI::Range(0L, 12L));
    v->add_option("--mode", verify_mode, "Evaluation mode for identity suites")
        ->check(CLI::IsMember({"auto", "exact", "numeric"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    PrecisionScope scope(precision);
    try {
        if (*c) return cmd_classify(classify, out);
        if (*k) return cmd_coeff(coeff, out, precision);
        if (*s) return cmd_solve(solve, out);
        if (*t) return cmd_table(table, out, seed);
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.mode = parse_mode(verify_mode);
        return cmd_verify(suites, cfg, out);
    } catch (const SmallDimension& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSmallDimension;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "constraint violated: " << e.what() << "\n";
        return kUsage;
    }
}
