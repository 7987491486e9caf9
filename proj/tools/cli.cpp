#include "cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lookknave/dynamics.hpp"
#include "lookknave/fixed_point_cache.hpp"
#include "lookknave/knave.hpp"
#include "lookknave/variants.hpp"

namespace lookknave::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Emit { text, json, csv };

const std::map<std::string, Emit> kEmitNames{{"text", Emit::text}, {"json", Emit::json}, {"csv", Emit::csv}};

constexpr const char* kDefaultCachePath = ".lookknave/fixedpoints.txt";

std::filesystem::path cache_path(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("KNAVE_CACHE"); env != nullptr && *env != '\0') {
        return env;
    }
    return kDefaultCachePath;
}

std::string format_ratio(double r) {
    std::ostringstream s;
    s << std::setprecision(12) << r;
    return s.str();
}

std::string rational(std::size_t num, std::size_t den) {
    const std::size_t g = std::gcd(num, den);
    return std::to_string(num / g) + "/" + std::to_string(den / g);
}

// Emits one orbit term in the chosen format.
class TermPrinter {
public:
    TermPrinter(std::ostream& out, Emit emit) : out_(out), emit_(emit) {
        if (emit_ == Emit::csv) {
            out_ << "n,length,bits,ratio\n";
        }
    }

    void print(std::size_t n, const std::string& text) {
        std::optional<std::string> ratio;
        if (prev_length_ != 0) {
            ratio = rational(text.size(), prev_length_);
        }
        prev_length_ = text.size();
        switch (emit_) {
        case Emit::text: out_ << text << '\n'; break;
        case Emit::csv: out_ << n << ',' << text.size() << ',' << text << ',' << ratio.value_or("") << '\n'; break;
        case Emit::json: {
            Json j;
            j["n"] = n;
            j["length"] = text.size();
            j["bits"] = text;
            j["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
            out_ << j.dump() << '\n';
            break;
        }
        }
    }

private:
    std::ostream& out_;
    Emit emit_;
    std::size_t prev_length_ = 0;
};

// Runs s_1 = seed .. s_steps through `step`, printing each term. Returns true
// when the cap stopped the orbit.
template <typename Term, typename Step, typename NextLength, typename ToText>
bool emit_orbit(TermPrinter& printer, Term term, std::size_t steps, std::size_t max_bits, Step step,
                NextLength next_length, ToText to_text) {
    for (std::size_t n = 1; n <= steps; ++n) {
        if (n > 1) {
            if (next_length(term) > max_bits) {
                return true;
            }
            term = step(term);
        } else if (term.size() > max_bits) {
            return true;
        }
        printer.print(n, to_text(term));
    }
    return false;
}

std::size_t decimal_next_length(const std::string& s) {
    std::size_t runs = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        runs += i == 0 || s[i] != s[i - 1];
    }
    return 2 * runs;
}

int cmd_gen(std::ostream& out, std::ostream& err, Variant variant, const std::string& seed, std::size_t steps,
            std::size_t max_bits, Emit emit) {
    auto bits_text = [](const BitString& s) { return s.to_string(); };
    bool capped = false;
    switch (variant) {
    case Variant::knave: {
        BitString start = parse(seed);
        TermPrinter printer(out, emit);
        capped = emit_orbit(printer, std::move(start), steps, max_bits, knave_step, knave_step_length, bits_text);
        break;
    }
    case Variant::looksay2: {
        BitString start = parse(seed);
        TermPrinter printer(out, emit);
        capped = emit_orbit(printer, std::move(start), steps, max_bits, looksay_step_binary, knave_step_length,
                            bits_text);
        break;
    }
    case Variant::looksay10: {
        (void)looksay_step_decimal(seed);
        TermPrinter printer(out, emit);
        capped = emit_orbit(
            printer, seed, steps, max_bits, [](const std::string& s) { return looksay_step_decimal(s); },
            decimal_next_length, [](const std::string& s) { return s; });
        break;
    }
    }
    if (capped) {
        err << "CapExceeded: next term longer than " << max_bits << " symbols\n";
        return exit_cap_exceeded;
    }
    return exit_ok;
}

int cmd_step(std::ostream& out, const std::string& input, Emit emit) {
    const BitString result = knave_step(parse(input));
    if (emit == Emit::json) {
        Json j;
        j["input"] = input;
        j["output"] = result.to_string();
        out << j.dump() << '\n';
    } else if (emit == Emit::csv) {
        out << "input,output\n" << input << ',' << result.to_string() << '\n';
    } else {
        out << result.to_string() << '\n';
    }
    return exit_ok;
}

void print_certificate(std::ostream& out, const FixedPointCertificate& cert, Emit emit, std::string_view source) {
    if (emit == Emit::json) {
        Json j;
        j["parity"] = parity_name(cert.parity);
        j["certified_bits"] = cert.certified_bits;
        j["iterations"] = cert.iterations;
        j["seed"] = cert.seed.to_string();
        j["prefix"] = cert.prefix.to_string();
        j["source"] = source;
        out << j.dump() << '\n';
    } else if (emit == Emit::csv) {
        out << "parity,certified_bits,iterations,seed,prefix,source\n"
            << parity_name(cert.parity) << ',' << cert.certified_bits << ',' << cert.iterations << ','
            << cert.seed.to_string() << ',' << cert.prefix.to_string() << ',' << source << '\n';
    } else {
        out << "parity " << parity_name(cert.parity) << '\n'
            << "certified_bits " << cert.certified_bits << '\n'
            << "iterations " << cert.iterations << '\n'
            << "seed " << cert.seed.to_string() << '\n'
            << "source " << source << '\n'
            << "prefix " << cert.prefix.to_string() << '\n';
    }
}

int cmd_fixedpoint(std::ostream& out, std::ostream& err, const std::string& parity_text, long long bits,
                   const std::string& cache_flag, std::size_t max_iterations, std::size_t max_bits, Emit emit) {
    const Parity parity = parse_parity(parity_text);
    if (bits < 1) {
        err << "InvalidArgument: --bits must be >= 1\n";
        return exit_invalid_input;
    }
    try {
        const auto cached = cached_fixed_point(cache_path(cache_flag), parity, std::size_t(bits), max_iterations,
                                               max_bits);
        print_certificate(out, cached.certificate, emit, cached.from_cache ? "cache" : "computed");
    } catch (const FixedPointCapError& e) {
        print_certificate(out, e.partial(), emit, "partial");
        err << errc_name(e.code()) << ": " << e.what() << '\n';
        return exit_cap_exceeded;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

int report_verdict(std::ostream& out, bool passed) {
    out << (passed ? "PASS" : "FAIL") << '\n';
    return passed ? exit_ok : exit_verification_failed;
}

int verify_table(std::ostream& out) {
    const auto report = check_element_table();
    for (const auto& row : report.rows) {
        out << (row.matches && row.no_shorter ? "ok   " : "DIFF ") << row.fragment << " -> " << row.actual;
        if (!row.matches) {
            out << " (expected " << row.expected << ")";
        }
        if (!row.no_shorter) {
            out << " (shorter than input)";
        }
        out << '\n';
    }
    out << "rows " << report.passed_rows() << '/' << report.rows.size() << '\n';
    return report_verdict(out, report.passed());
}

int verify_ribbits(std::ostream& out, const std::string& seed_text, std::size_t steps, std::size_t max_bits) {
    const BitString seed = parse(seed_text);
    const auto r = check_ribbit_bounds(seed, steps, max_bits);
    out << "terms " << r.first << ".." << r.last << (r.cap_exceeded ? " (stopped at bit cap)" : "") << '\n'
        << "max_ribbit " << r.max_ribbit << " at n=" << r.witness_index << '\n'
        << "max_even_ribbit " << r.max_even_ribbit << " at n=" << r.even_witness_index << '\n';
    if (seed_text != "1") {
        out << "no bound is claimed for this seed\n";
        return exit_ok;
    }
    return report_verdict(out, r.max_ribbit <= 5 && r.max_even_ribbit <= 3);
}

int verify_prefix_lemma(std::ostream& out, std::size_t steps, std::size_t max_bits) {
    const auto report = check_prefix_lemma(parse("1"), steps, max_bits);
    std::size_t failures = 0;
    for (const auto& row : report.rows) {
        if (!row.passed) {
            ++failures;
            out << "m=" << row.m << " bound=" << row.bound << " lcp(s_m,s_m+2)=" << row.lcp_same
                << " lcp(s_m+1,s_m+3)=" << row.lcp_shifted << '\n';
        }
    }
    out << "checked m=1.." << report.rows.size() << ", failures " << failures
        << (report.cap_exceeded ? " (stopped at bit cap)" : "") << '\n';
    return report_verdict(out, report.passed());
}

int verify_attraction(std::ostream& out, std::size_t steps, std::size_t max_bits) {
    AttractionOptions options;
    options.basin.steps = steps;
    options.basin.max_bits = max_bits;
    options.basin.parallel = true;
    const auto r = check_attraction(options);
    out << "random seeds " << r.random_seeds << " (rng seed " << options.rng_seed << ")\n"
        << "descent violations " << r.descent_violations << '\n'
        << "no iterate starting 10 within " << options.prefix_max_steps << " steps: " << r.missing_10_prefix << '\n'
        << "no iterate starting 1011110 or 101110: " << r.missing_canonical_prefix << '\n'
        << "basin seeds " << r.basin_seeds << ": even " << r.basin.even << ", odd " << r.basin.odd << ", undecided "
        << r.basin.undecided << '\n';
    for (const auto& s : r.counterexamples) {
        out << "counterexample " << s << '\n';
    }
    return report_verdict(out, r.passed());
}

// ---------------------------------------------------------------------------
// basin, growth, metric

int cmd_basin(std::ostream& out, std::ostream& err, const BasinOptions& options, const std::string& cache_flag,
              Emit emit) {
    const std::size_t want = std::max<std::size_t>(options.threshold_bits, 1024);
    FixedPointPrefixes fixed;
    if (!cache_flag.empty()) {
        fixed.even = cached_fixed_point(cache_flag, Parity::even, want).certificate.prefix;
        fixed.odd = cached_fixed_point(cache_flag, Parity::odd, want).certificate.prefix;
    } else {
        fixed = compute_fixed_points(want);
    }
    const auto results = classify_basin(fixed, options);
    const auto summary = summarize(results);

    if (emit == Emit::csv) {
        out << "seed,attractor,steps_used,agreement_bits\n";
    }
    for (const auto& r : results) {
        switch (emit) {
        case Emit::text:
            out << r.seed.to_string() << ' ' << attractor_name(r.attractor) << ' ' << r.steps_used << ' '
                << r.agreement_bits << '\n';
            break;
        case Emit::csv:
            out << r.seed.to_string() << ',' << attractor_name(r.attractor) << ',' << r.steps_used << ','
                << r.agreement_bits << '\n';
            break;
        case Emit::json: {
            Json j;
            j["seed"] = r.seed.to_string();
            j["attractor"] = attractor_name(r.attractor);
            j["steps_used"] = r.steps_used;
            j["agreement_bits"] = r.agreement_bits;
            out << j.dump() << '\n';
            break;
        }
        }
    }
    std::ostringstream line;
    line << "summary even=" << summary.even << " odd=" << summary.odd << " undecided=" << summary.undecided;
    switch (emit) {
    case Emit::text: out << line.str() << '\n'; break;
    case Emit::csv: err << line.str() << '\n'; break;
    case Emit::json: {
        Json j;
        j["summary"] = {{"even", summary.even}, {"odd", summary.odd}, {"undecided", summary.undecided}};
        out << j.dump() << '\n';
        break;
    }
    }
    return exit_ok;
}

int cmd_growth(std::ostream& out, std::ostream& err, Variant variant, const std::string& seed, std::size_t steps,
               std::size_t max_bits, Emit emit) {
    const auto series = growth_ratios(variant, seed, steps, max_bits);
    if (emit == Emit::csv) {
        out << "n,length,ratio\n";
    }
    for (const auto& p : series.points) {
        const std::string ratio = p.ratio ? format_ratio(*p.ratio) : "";
        switch (emit) {
        case Emit::text: out << p.n << ' ' << p.length << ' ' << (p.ratio ? ratio : "-") << '\n'; break;
        case Emit::csv: out << p.n << ',' << p.length << ',' << ratio << '\n'; break;
        case Emit::json: {
            Json j;
            j["n"] = p.n;
            j["length"] = p.length;
            j["ratio"] = p.ratio ? Json(*p.ratio) : Json(nullptr);
            out << j.dump() << '\n';
            break;
        }
        }
    }
    if (series.cap_exceeded) {
        err << "CapExceeded: orbit stopped after n=" << series.points.size() << '\n';
    }
    const GrowthEstimate est = estimate_lambda(series.points);
    switch (emit) {
    case Emit::text:
        out << "lambda_hat " << format_ratio(est.lambda_hat) << '\n'
            << "window " << est.n_lo << ".." << est.n_hi << '\n'
            << "residual " << format_ratio(est.residual) << '\n';
        break;
    case Emit::csv:
        err << "lambda_hat=" << format_ratio(est.lambda_hat) << " window=" << est.n_lo << ".." << est.n_hi
            << " residual=" << format_ratio(est.residual) << '\n';
        break;
    case Emit::json: {
        Json j;
        j["lambda_hat"] = est.lambda_hat;
        j["window"] = {est.n_lo, est.n_hi};
        j["ratios"] = est.ratios;
        j["residual"] = est.residual;
        out << j.dump() << '\n';
        break;
    }
    }
    return series.cap_exceeded ? exit_cap_exceeded : exit_ok;
}

int cmd_metric(std::ostream& out, const std::string& a_text, const std::string& b_text, Emit emit) {
    const BitString a = parse(a_text);
    const BitString b = parse(b_text);
    const Distance d = metric(a, b);
    if (emit == Emit::json) {
        Json j;
        j["equal"] = d.is_zero();
        j["exponent"] = d.exponent ? Json(*d.exponent) : Json(nullptr);
        j["lcp"] = lcp(a, b);
        out << j.dump() << '\n';
    } else if (emit == Emit::csv) {
        out << "equal,exponent,lcp\n"
            << (d.is_zero() ? "true" : "false") << ',' << (d.exponent ? std::to_string(*d.exponent) : "") << ','
            << lcp(a, b) << '\n';
    } else if (d.is_zero()) {
        out << "equal\n";
    } else {
        out << "exponent " << *d.exponent << '\n';
    }
    return exit_ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Look-Knave sequences: the complement-description map, its fixed points, and growth constants",
                 "lookknave"};
    app.require_subcommand(1);

    Emit emit = Emit::text;
    auto add_emit = [&](CLI::App* sub) {
        sub->add_option("--emit", emit, "Output format")->transform(CLI::CheckedTransformer(kEmitNames));
    };

    std::string variant_text = "knave";
    std::string seed = "1";
    std::size_t steps = 100;
    std::size_t max_bits = default_max_bits;
    const std::vector<std::string> variant_names{"knave", "looksay10", "looksay2"};

    auto* gen = app.add_subcommand("gen", "Print the orbit s_1 = seed, s_2, ...");
    gen->add_option("--variant", variant_text, "knave | looksay10 | looksay2")
        ->check(CLI::IsMember(variant_names));
    gen->add_option("--seed", seed, "First term");
    gen->add_option("--steps", steps, "Number of terms");
    gen->add_option("--max-bits", max_bits, "Stop before a term longer than this");
    add_emit(gen);

    std::string input;
    auto* step = app.add_subcommand("step", "Apply the Knave map once");
    step->add_option("--input", input, "Bit string")->required();
    add_emit(step);

    std::string parity_text;
    long long want_bits = 1024;
    std::string cache_flag;
    std::size_t max_iterations = default_max_iterations;
    auto* fixedpoint = app.add_subcommand("fixedpoint", "Certified prefix of S_even or S_odd");
    fixedpoint->add_option("--parity", parity_text, "even | odd")
        ->required()
        ->check(CLI::IsMember({"even", "odd"}));
    fixedpoint->add_option("--bits", want_bits, "Certified bits wanted");
    fixedpoint->add_option("--cache", cache_flag, "Cache file (default $KNAVE_CACHE or .lookknave/fixedpoints.txt)");
    fixedpoint->add_option("--max-iterations", max_iterations, "Double-step cap");
    fixedpoint->add_option("--max-bits", max_bits, "Term length cap");
    add_emit(fixedpoint);

    std::string suite;
    std::optional<std::size_t> verify_steps;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "table | ribbits | prefixlemma | attraction")
        ->required()
        ->check(CLI::IsMember({"table", "ribbits", "prefixlemma", "attraction"}));
    verify->add_option("--steps", verify_steps, "Orbit length (ribbits 200, prefixlemma 60, attraction 100)");
    verify->add_option("--seed", seed, "Seed for the ribbits suite");
    verify->add_option("--max-bits", max_bits, "Term length cap");

    BasinOptions basin_options;
    auto* basin = app.add_subcommand("basin", "Classify every short seed by its k^2 limit");
    basin->add_option("--max-len", basin_options.max_len, "Longest seed length");
    basin->add_option("--steps", basin_options.steps, "Double-step cap per seed");
    basin->add_option("--threshold", basin_options.threshold_bits, "Agreement bits needed to classify");
    basin->add_option("--max-bits", basin_options.max_bits, "Term length cap");
    basin->add_option("--cache", cache_flag, "Fixed-point cache file");
    basin->add_flag("--parallel", basin_options.parallel, "Classify seeds on all cores");
    add_emit(basin);

    auto* growth = app.add_subcommand("growth", "Term lengths and the fitted growth constant");
    growth->add_option("--variant", variant_text, "knave | looksay10 | looksay2")
        ->check(CLI::IsMember(variant_names));
    growth->add_option("--seed", seed, "First term");
    growth->add_option("--steps", steps, "Number of terms");
    growth->add_option("--max-bits", max_bits, "Stop before a term longer than this");
    add_emit(growth);

    std::string a_text;
    std::string b_text;
    auto* metric_cmd = app.add_subcommand("metric", "Prefix distance under the implied-tail convention");
    metric_cmd->add_option("--a", a_text, "First bit string")->required();
    metric_cmd->add_option("--b", b_text, "Second bit string")->required();
    add_emit(metric_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_invalid_input;
    }

    try {
        if (*gen) {
            return cmd_gen(out, err, parse_variant(variant_text), seed, steps, max_bits, emit);
        }
        if (*step) {
            return cmd_step(out, input, emit);
        }
        if (*fixedpoint) {
            return cmd_fixedpoint(out, err, parity_text, want_bits, cache_flag, max_iterations, max_bits, emit);
        }
        if (*verify) {
            if (suite == "table") {
                return verify_table(out);
            }
            if (suite == "ribbits") {
                return verify_ribbits(out, seed, verify_steps.value_or(200), max_bits);
            }
            if (suite == "prefixlemma") {
                return verify_prefix_lemma(out, verify_steps.value_or(60), max_bits);
            }
            return verify_attraction(out, verify_steps.value_or(100), max_bits);
        }
        if (*basin) {
            return cmd_basin(out, err, basin_options, cache_flag, emit);
        }
        if (*growth) {
            return cmd_growth(out, err, parse_variant(variant_text), seed, steps, max_bits, emit);
        }
        if (*metric_cmd) {
            return cmd_metric(out, a_text, b_text, emit);
        }
    } catch (const FixedPointCapError& e) {
        err << errc_name(e.code()) << ": " << e.what() << '\n';
        return exit_cap_exceeded;
    } catch (const Error& e) {
        err << errc_name(e.code()) << ": " << e.what() << '\n';
        const bool cap = e.code() == Errc::cap_exceeded || e.code() == Errc::memory_cap_exceeded ||
                         e.code() == Errc::iteration_cap_exceeded;
        return cap ? exit_cap_exceeded : exit_invalid_input;
    }
    return exit_invalid_input;
}

} // namespace lookknave::cli
