#include "jnsharp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "jnsharp/bounds.hpp"
#include "jnsharp/decomposition.hpp"
#include "jnsharp/errors.hpp"
#include "jnsharp/extremal.hpp"
#include "jnsharp/io.hpp"
#include "jnsharp/oscillation.hpp"
#include "jnsharp/random.hpp"
#include "jnsharp/sunrise.hpp"

namespace jnsharp {

namespace {

struct Globals {
    int bits = kDefaultPrecisionBits;
    int digits = 15;
    bool json = false;
    std::string out_path;
};

Rational parse_arg(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
    }
}

Rational parse_gamma(const std::string& text) {
    Rational g = parse_arg(text, "--gamma");
    if (!(g.sign() > 0 && g < Rational(1))) throw PreconditionError("--gamma must lie in (0, 1), got " + g.str());
    return g;
}

Rational parse_tol(const std::string& text) {
    Rational t = parse_arg(text, "--tol");
    if (t.sign() <= 0) throw PreconditionError("--tol must be positive");
    return t;
}

std::vector<Rational> parse_list(const std::string& text, const char* flag) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_arg(item, flag));
    }
    if (out.empty()) throw ParseError(std::string(flag) + ": empty list");
    return out;
}

/// alpha_bar defaults to the certified norm over 2 gamma; a constant function
/// has norm 0 and gets 1 (any positive level works there).
Rational default_alpha_bar(const BmoEnclosure& norm, const Rational& gamma) {
    if (norm.upper.is_zero()) return Rational(1);
    return norm.upper / (Rational(2) * gamma);
}

std::vector<Rational> default_alpha_grid(const Rational& norm_upper) {
    const Rational unit = norm_upper.is_zero() ? Rational(1, 20) : norm_upper / Rational(20);
    std::vector<Rational> out;
    for (int j = 1; j <= 60; ++j) out.push_back(unit * Rational(j));
    return out;
}

/// CSV text (header + rows) to a JSON array of objects with string fields.
Json csv_to_json(const std::string& csv) {
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    std::vector<std::string> header;
    {
        std::stringstream hs(line);
        std::string h;
        while (std::getline(hs, h, ',')) header.push_back(h);
    }
    Json rows = Json::array();
    while (std::getline(ss, line)) {
        std::stringstream ls(line);
        std::string cell;
        Json row = Json::object();
        for (const auto& h : header) {
            std::getline(ls, cell, ',');
            row[h] = cell;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

class Sink {
public:
    Sink(const Globals& g, std::ostream& fallback) : fallback_(fallback) {
        if (!g.out_path.empty()) {
            file_.open(g.out_path, std::ios::binary);
            if (!file_) throw ParseError("cannot write " + g.out_path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit_table(const Globals& g, std::ostream& out, const std::string& csv) {
    Sink sink(g, out);
    if (g.json) {
        sink.stream() << csv_to_json(csv).dump(2) << '\n';
    } else {
        sink.stream() << csv;
    }
}

void emit_json(const Globals& g, std::ostream& out, const Json& j) {
    Sink sink(g, out);
    sink.stream() << j.dump(2) << '\n';
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string file;
    std::string gamma;
    std::string alpha;
    std::string tol = "1/10^9";
    int max_depth = kDefaultMaxDepth;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
    const StepFunction f = load_step_function(a.file);
    const Rational gamma = parse_gamma(a.gamma);
    const Rational tol = parse_tol(a.tol);
    std::optional<Rational> alpha;
    if (!a.alpha.empty()) alpha = parse_arg(a.alpha, "--alpha");
    if (a.max_depth < 1) throw PreconditionError("--max-depth must be >= 1");

    Json report;
    report["input"] = a.file;
    report["gamma"] = gamma.str();
    Json checks = Json::array();
    bool violation = false;
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        if (!pass) violation = true;
    };

    const BmoEnclosure norm = bmo_norm(f, tol);
    report["norm"] = to_json(norm, g.bits);
    record("norm_enclosure", norm.attained <= norm.upper && norm.upper - norm.attained <= tol,
           "[" + norm.attained.str() + ", " + norm.upper.str() + "]");

    const Rational alpha_bar = alpha ? *alpha : default_alpha_bar(norm, gamma);
    report["alpha_bar"] = alpha_bar.str();
    DecompositionParams params{gamma, alpha_bar, a.max_depth};
    params.validate();

    bool incomplete = false;
    try {
        const DecompositionLayers layers = decompose(f, params);
        incomplete = !layers.complete;
        Json g_measures = Json::array();
        for (int k = 1; k <= layers.depth(); ++k) g_measures.push_back(layers.g(k).measure().str());
        report["decomposition"] = {{"complete", layers.complete}, {"depth", layers.depth()}, {"g_measures", g_measures}};
        for (const auto& c : audit(f, layers)) {
            if (c.name == "complete") continue;
            record(c.name, c.pass, c.detail);
        }
        if (layers.complete) report["decomposition"]["min_slack"] = verify_pointwise(f, layers).min_slack.str();
    } catch (const PreconditionError& e) {
        record("packing", false, e.what());
    }

    const Rational center = average(f, f.domain());
    const Rational measure = f.domain().length();
    Json tail = Json::object();
    int tail_failures = 0;
    std::optional<TailComparison> tightest;
    for (const auto& alpha_j : default_alpha_grid(norm.upper)) {
        const Rational measured = distribution(f, center, alpha_j);
        if (norm.upper.is_zero()) {
            if (!measured.is_zero()) ++tail_failures;
            continue;
        }
        auto cmp = compare_tail(measured, alpha_j, norm.upper, measure, g.bits);
        if (!cmp.pass) ++tail_failures;
        if (!tightest || mpfr_cmp(cmp.margin.lo().get(), tightest->margin.lo().get()) < 0) tightest = std::move(cmp);
    }
    tail["grid"] = "alpha = j * B / 20, j = 1..60";
    tail["failures"] = tail_failures;
    if (tightest) {
        tail["tightest"] = {{"measured", tightest->measured.str()},
                            {"bound", to_json(tightest->bound)},
                            {"margin_lo", tightest->margin.lo_str(g.digits)}};
    }
    report["tail"] = tail;
    record("tail_bound", tail_failures == 0, std::to_string(tail_failures) + " grid points above the bound");

    report["checks"] = checks;
    const int code = violation ? kExitViolation : (incomplete ? kExitIncomplete : kExitOk);
    report["complete"] = !incomplete;
    report["pass"] = code == kExitOk;
    emit_json(g, out, report);
    return code;
}

// ---- report -----------------------------------------------------------------

struct ReportArgs {
    std::string min = "1/10";
    std::string max = "10";
    std::string step = "1/100";
    long max_m = 10;
    std::string file;
    std::string alphas;
    std::string tol = "1/10^9";
    std::string level;
    std::string gamma;
    std::string alpha;
    int max_depth = kDefaultMaxDepth;
};

int report_phi(const ReportArgs& a, const Globals& g, std::ostream& out) {
    std::ostringstream csv;
    write_phi_csv(csv, parse_arg(a.min, "--min"), parse_arg(a.max, "--max"), parse_arg(a.step, "--step"), g.bits,
                  g.digits);
    emit_table(g, out, csv.str());
    return kExitOk;
}

int report_cm(const ReportArgs& a, const Globals& g, std::ostream& out) {
    if (a.max_m < 1) throw PreconditionError("--max-m must be >= 1");
    std::ostringstream csv;
    write_cm_csv(csv, a.max_m, g.bits, g.digits);
    emit_table(g, out, csv.str());
    return kExitOk;
}

int report_tail(const ReportArgs& a, const Globals& g, std::ostream& out) {
    const StepFunction f = load_step_function(a.file);
    const BmoEnclosure norm = bmo_norm(f, parse_tol(a.tol));
    if (norm.upper.is_zero()) throw PreconditionError("the function is constant; the tail bound is undefined");
    const auto alphas = a.alphas.empty() ? default_alpha_grid(norm.upper) : parse_list(a.alphas, "--alphas");
    for (const auto& x : alphas) {
        if (x.sign() < 0) throw PreconditionError("--alphas must be nonnegative");
    }
    std::ostringstream csv;
    write_tail_csv(csv, f, norm.upper, alphas, g.bits, g.digits);
    emit_table(g, out, csv.str());
    return kExitOk;
}

int report_norm(const ReportArgs& a, const Globals& g, std::ostream& out) {
    const StepFunction f = load_step_function(a.file);
    emit_json(g, out, to_json(bmo_norm(f, parse_tol(a.tol)), g.bits));
    return kExitOk;
}

int report_sunrise(const ReportArgs& a, const Globals& g, std::ostream& out) {
    const StepFunction f = load_step_function(a.file);
    emit_json(g, out, to_json(sunrise_decompose(f, parse_arg(a.level, "--level"))));
    return kExitOk;
}

int report_decompose(const ReportArgs& a, const Globals& g, std::ostream& out) {
    const StepFunction f = load_step_function(a.file);
    const Rational gamma = parse_gamma(a.gamma);
    Rational alpha_bar;
    if (a.alpha.empty()) {
        alpha_bar = default_alpha_bar(bmo_norm(f, parse_tol(a.tol)), gamma);
    } else {
        alpha_bar = parse_arg(a.alpha, "--alpha");
    }
    if (a.max_depth < 1) throw PreconditionError("--max-depth must be >= 1");
    const DecompositionLayers layers = decompose(f, {gamma, alpha_bar, a.max_depth});
    Json j = to_json(layers);
    if (layers.complete) j["psi"] = to_json(psi(layers));
    emit_json(g, out, j);
    return layers.complete ? kExitOk : kExitIncomplete;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
    int cells = 10;
    std::uint64_t seed = 0;
    std::string domain_a = "0";
    std::string domain_b = "1";
    std::string value_min = "-1";
    std::string value_max = "1";
    long value_steps = 8;
    long grid = 0;
};

int generate_random(const GenerateArgs& a, const Globals& g, std::ostream& out) {
    if (a.cells < 2 || a.cells > 10000) throw PreconditionError("--cells must lie in [2, 10000]");
    RandomSpec spec;
    spec.cells = a.cells;
    spec.seed = a.seed;
    spec.domain_a = parse_arg(a.domain_a, "--domain-a");
    spec.domain_b = parse_arg(a.domain_b, "--domain-b");
    spec.value_min = parse_arg(a.value_min, "--value-min");
    spec.value_max = parse_arg(a.value_max, "--value-max");
    spec.value_steps = a.value_steps;
    spec.grid = a.grid;
    Sink sink(g, out);
    sink.stream() << dump_step_function(random_step_function(spec));
    return kExitOk;
}

int generate_extremal(const Globals& g, std::ostream& out) {
    Sink sink(g, out);
    sink.stream() << dump_step_function(make_extremal());
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact John-Nirenberg toolkit for step functions", "jnsharp"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--precision-bits", g.bits, "Working precision of enclosures")->check(CLI::Range(32, 1 << 16));
    app.add_option("--digits", g.digits, "Significant digits in decimal output")->check(CLI::Range(1, 1000));
    app.add_flag("--json", g.json, "JSON instead of CSV for tables");
    app.add_option("--out", g.out_path, "Write the report to this file");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check every invariant of the decomposition and the tail bound");
    verify->add_option("file", va.file, "Step function JSON")->required();
    verify->add_option("--gamma", va.gamma, "Packing ratio in (0, 1), p/q")->required();
    verify->add_option("--alpha", va.alpha, "Level step (default: norm / (2 gamma))");
    verify->add_option("--max-depth", va.max_depth, "Depth cap");
    verify->add_option("--tol", va.tol, "BMO norm tolerance");

    ReportArgs ra;
    auto* report = app.add_subcommand("report", "Tables and intermediate objects");
    report->require_subcommand(1);
    auto* r_phi = report->add_subcommand("phi", "phi sweep: xi, phi_lo, phi_hi, envelope_hi");
    r_phi->add_option("--min", ra.min);
    r_phi->add_option("--max", ra.max);
    r_phi->add_option("--step", ra.step);
    auto* r_cm = report->add_subcommand("cm", "c_m table: m, c_lo, c_hi");
    r_cm->add_option("--max-m", ra.max_m);
    auto* r_tail = report->add_subcommand("tail", "measured tail against the bound");
    r_tail->add_option("file", ra.file)->required();
    r_tail->add_option("--alphas", ra.alphas, "Comma-separated levels (default: j * B / 20, j = 1..60)");
    r_tail->add_option("--tol", ra.tol);
    auto* r_norm = report->add_subcommand("norm", "certified BMO norm");
    r_norm->add_option("file", ra.file)->required();
    r_norm->add_option("--tol", ra.tol);
    auto* r_sunrise = report->add_subcommand("sunrise", "rising-sun intervals at a level");
    r_sunrise->add_option("file", ra.file)->required();
    r_sunrise->add_option("--level", ra.level)->required();
    auto* r_dec = report->add_subcommand("decompose", "stopping intervals and E/F/G layers");
    r_dec->add_option("file", ra.file)->required();
    r_dec->add_option("--gamma", ra.gamma)->required();
    r_dec->add_option("--alpha", ra.alpha);
    r_dec->add_option("--max-depth", ra.max_depth);
    r_dec->add_option("--tol", ra.tol);

    GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "Write a step function as JSON");
    generate->require_subcommand(1);
    auto* g_ext = generate->add_subcommand("extremal", "chi_[0,1/4) - chi_[3/4,1)");
    auto* g_rnd = generate->add_subcommand("random", "seeded random step function");
    g_rnd->add_option("--cells", ga.cells);
    g_rnd->add_option("--seed", ga.seed);
    g_rnd->add_option("--domain-a", ga.domain_a);
    g_rnd->add_option("--domain-b", ga.domain_b);
    g_rnd->add_option("--value-min", ga.value_min);
    g_rnd->add_option("--value-max", ga.value_max);
    g_rnd->add_option("--value-steps", ga.value_steps);
    g_rnd->add_option("--grid", ga.grid, "Breakpoint grid size (default 4 * cells)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*verify) return cmd_verify(va, g, out);
        if (*r_phi) return report_phi(ra, g, out);
        if (*r_cm) return report_cm(ra, g, out);
        if (*r_tail) return report_tail(ra, g, out);
        if (*r_norm) return report_norm(ra, g, out);
        if (*r_sunrise) return report_sunrise(ra, g, out);
        if (*r_dec) return report_decompose(ra, g, out);
        if (*g_ext) return generate_extremal(g, out);
        if (*g_rnd) return generate_random(ga, g, out);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const PreconditionError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const RangeError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const PrecisionExhausted& e) {
        err << "undetermined: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitInputError;
}

}  // namespace jnsharp
