#include "betafrac/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "betafrac/beta_symbolic.hpp"
#include "betafrac/coding.hpp"
#include "betafrac/detail/random.hpp"
#include "betafrac/dimension.hpp"
#include "betafrac/io.hpp"
#include "betafrac/measures.hpp"
#include "betafrac/skew_system.hpp"

namespace betafrac::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMinImageSide = 16;
constexpr std::size_t kMaxImageSide = 16384;
constexpr std::size_t kMaxSamples = 1'000'000'000;
constexpr std::size_t kRenderPoints = 100'000;
constexpr std::size_t kCloudPoints = 1'000'000;
constexpr std::size_t kEntropyDigits = 1'000'000;
constexpr std::size_t kVerifyWindows = 10'000;
constexpr std::size_t kParryDigits = 1'000'000;
constexpr double kDefaultSlopeTol = 0.05;
constexpr double kDefaultTopologicalTol = 5e-3;

const char* command_name(Command c) {
    switch (c) {
        case Command::render: return "render";
        case Command::dimension: return "dimension";
        case Command::entropy: return "entropy";
        case Command::verify: return "verify";
    }
    return "?";
}

const char* method_name(Method m) {
    switch (m) {
        case Method::rectangles: return "rectangles";
        case Method::cloud: return "cloud";
        case Method::formula: return "formula";
    }
    return "?";
}

std::size_t parse_size(const std::string& text) {
    std::size_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw UsageError("expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

std::string base_path(const RunConfig& cfg) {
    return cfg.out.empty() ? std::string("betafrac-") + command_name(cfg.command) : cfg.out;
}

Json params_json(const Params& p) {
    return Json{{"beta", p.beta()}, {"tau", p.tau()}};
}

Json report_json(const RunConfig& cfg, Json metrics, bool pass) {
    Json j;
    j["command"] = command_name(cfg.command);
    j["params"] = params_json(cfg.params);
    j["seed"] = cfg.seed;
    j["metrics"] = std::move(metrics);
    j["pass"] = pass;
    return j;
}

void write_json(const std::string& path, const Json& j) {
    io::write_atomic(path, j.dump(2) + "\n");
}

std::size_t samples_or(const RunConfig& cfg, std::size_t fallback) {
    const std::size_t n = cfg.samples == 0 ? fallback : cfg.samples;
    if (n > kMaxSamples) throw ResourceError("--samples above " + std::to_string(kMaxSamples));
    return n;
}

void print_warnings(std::ostream& log, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) log << "warning: " << w << '\n';
}

// ---- verify suites ----------------------------------------------------------

struct SuiteOutcome {
    Json metrics;
    bool pass = false;
};

std::vector<Params> standard_or(const RunConfig& cfg, std::vector<Params> standard) {
    if (cfg.params_explicit) return {cfg.params};
    return standard;
}

SuiteOutcome suite_conjugacy(const RunConfig& cfg) {
    const std::size_t windows = samples_or(cfg, kVerifyWindows);
    SuiteOutcome outcome{Json::array(), true};
    const auto grid = standard_or(cfg, {{1.5, 0.25}, {kGoldenRatio, 1.0 / 3.0}, {1.9, 0.45}});
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const Params& p = grid[g];
        const ParryMeasure measure(p.beta());
        const std::size_t width = 2 * truncation_depth(p.beta());
        double worst = 0.0;
        std::size_t first = 0, second = 0, excluded = 0;
        for (std::size_t i = 0; i < windows; ++i) {
            const auto w = sample_admissible(measure, width, detail::mix_seed(cfg.seed, g * windows + i));
            const ConjugacyResult r = check_conjugacy(w, p);
            if (r.excluded) {
                ++excluded;
                continue;
            }
            worst = std::max(worst, r.residual);
            ++(r.second_branch ? second : first);
        }
        const bool pass = worst < 1e-10 && first > 0 && second > 0;
        outcome.pass = outcome.pass && pass;
        outcome.metrics.push_back(Json{{"params", params_json(p)},
                                       {"windows", windows},
                                       {"max_residual", worst},
                                       {"first_branch", first},
                                       {"second_branch", second},
                                       {"excluded", excluded},
                                       {"pass", pass}});
    }
    return outcome;
}

SuiteOutcome suite_injectivity(const RunConfig& cfg) {
    SuiteOutcome outcome{Json::object(), true};

    const Params exhaustive = cfg.params_explicit ? cfg.params : Params(kGoldenRatio, 1.0 / 3.0);
    constexpr std::int64_t lo = -6;
    constexpr std::size_t width = 12;
    const auto windows = admissible_windows(exhaustive.beta(), lo, width, Admissibility::strict);
    double min_sep = std::numeric_limits<double>::infinity();
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        for (std::size_t j = i + 1; j < windows.size(); ++j) {
            min_sep = std::min(min_sep, check_injectivity(windows[i], windows[j], exhaustive));
            ++pairs;
        }
    }
    const bool exhaustive_pass = pairs > 0 && min_sep > 0.0;
    outcome.metrics["exhaustive"] = Json{{"params", params_json(exhaustive)},
                                         {"lo", lo},
                                         {"width", width},
                                         {"windows", windows.size()},
                                         {"pairs", pairs},
                                         {"min_separation", pairs > 0 ? min_sep : 0.0},
                                         {"pass", exhaustive_pass}};
    outcome.pass = exhaustive_pass;

    const std::size_t trials = samples_or(cfg, kVerifyWindows);
    Json statistical = Json::array();
    const auto grid = standard_or(cfg, {{1.5, 0.25}, {1.9, 0.45}});
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const Params& p = grid[g];
        const ParryMeasure measure(p.beta());
        const std::size_t w = 2 * truncation_depth(p.beta());
        double sep = std::numeric_limits<double>::infinity();
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const std::uint64_t base = detail::mix_seed(cfg.seed ^ 0x5eedULL, g * trials + i);
            const auto a = sample_admissible(measure, w, detail::mix_seed(base, 0));
            const auto b = sample_admissible(measure, w, detail::mix_seed(base, 1));
            if (a.same_sequence(b)) continue;
            sep = std::min(sep, check_injectivity(a, b, p));
            ++distinct;
        }
        const bool pass = distinct > 0 && sep > 0.0;
        outcome.pass = outcome.pass && pass;
        statistical.push_back(Json{{"params", params_json(p)},
                                   {"pairs", trials},
                                   {"distinct_pairs", distinct},
                                   {"min_separation", distinct > 0 ? sep : 0.0},
                                   {"pass", pass}});
    }
    outcome.metrics["statistical"] = std::move(statistical);
    return outcome;
}

SuiteOutcome suite_mixing(const RunConfig& cfg) {
    constexpr std::size_t max_word = 3;
    constexpr std::size_t n_max = 30;
    constexpr std::size_t gap_limit = 5;
    SuiteOutcome outcome{Json::array(), true};
    std::vector<double> betas;
    for (const Params& p : standard_or(cfg, {{kGoldenRatio, 0.25}, {1.9, 0.25}})) betas.push_back(p.beta());
    for (double beta : betas) {
        std::vector<DigitString> words;
        for (std::size_t len = 1; len <= max_word; ++len) {
            for (const auto& w : admissible_windows(beta, 0, len, Admissibility::strict)) {
                words.emplace_back(std::vector<std::uint8_t>(w.bits().begin(), w.bits().end()));
            }
        }
        std::size_t worst = 0, pairs = 0, unresolved = 0;
        for (const auto& a : words) {
            for (const auto& b : words) {
                const MixingGap gap = cylinder_mixing_gap(a, b, beta, n_max);
                ++pairs;
                if (!gap.gap) {
                    ++unresolved;
                    continue;
                }
                worst = std::max(worst, *gap.gap);
            }
        }
        const bool pass = unresolved == 0 && worst <= gap_limit;
        outcome.pass = outcome.pass && pass;
        outcome.metrics.push_back(Json{{"beta", beta},
                                       {"words", words.size()},
                                       {"pairs", pairs},
                                       {"max_gap", worst},
                                       {"unresolved_pairs", unresolved},
                                       {"n_max", n_max},
                                       {"gap_limit", gap_limit},
                                       {"pass", pass}});
    }
    return outcome;
}

std::vector<Params> covering_grid() {
    std::vector<Params> grid;
    for (double beta : {1.3, 1.5, kGoldenRatio, 1.8, 1.95}) {
        for (double tau : {0.1, 0.25, 1.0 / 3.0, 0.45}) grid.emplace_back(beta, tau);
    }
    return grid;
}

SuiteOutcome suite_covering(const RunConfig& cfg) {
    constexpr std::size_t max_depth = 10;
    SuiteOutcome outcome{Json::object(), true};
    double worst_cover = 0.0, worst_grid = 0.0;
    std::size_t checks = 0, failures = 0;
    Json failed = Json::array();
    for (const Params& p : standard_or(cfg, covering_grid())) {
        for (std::size_t n = 0; n <= max_depth; ++n) {
            const CoveringCheck c = covering_check(p, n);
            ++checks;
            const double bound = static_cast<double>(c.bound);
            worst_cover = std::max(worst_cover, static_cast<double>(c.cover_count) / bound);
            worst_grid = std::max(worst_grid, static_cast<double>(c.grid_count) / bound);
            if (!c.holds) {
                ++failures;
                failed.push_back(Json{{"params", params_json(p)}, {"n", n}, {"cover_count", c.cover_count},
                                      {"bound", c.bound}});
            }
        }
    }
    outcome.pass = failures == 0;
    outcome.metrics = Json{{"checks", checks},
                           {"max_depth", max_depth},
                           {"failures", failures},
                           {"max_cover_ratio", worst_cover},
                           {"max_grid_ratio", worst_grid},
                           {"failed", std::move(failed)},
                           {"pass", outcome.pass}};
    return outcome;
}

SuiteOutcome suite_parry(const RunConfig& cfg) {
    constexpr std::size_t block = 12;
    constexpr double entropy_tol = 0.05;
    constexpr double invariance_tol = 0.01;
    SuiteOutcome outcome{Json::array(), true};
    std::vector<double> betas;
    for (const Params& p : standard_or(cfg, {{kGoldenRatio, 0.25}, {1.9, 0.25}})) betas.push_back(p.beta());
    for (std::size_t g = 0; g < betas.size(); ++g) {
        const double beta = betas[g];
        const ParryMeasure measure(beta);
        const DigitString d = sample_parry(measure, kParryDigits, detail::mix_seed(cfg.seed, 2 * g));
        const EntropyReport r = entropy_report(beta, d, block);
        const InvarianceCheck inv = density_invariance(beta, kParryDigits, detail::mix_seed(cfg.seed, 2 * g + 1));
        const double entropy_error = std::abs(r.block_entropy_rate - r.target);
        const double invariance = std::max(inv.orbit_cdf_deviation, inv.push_cdf_deviation);
        const bool pass = entropy_error <= entropy_tol && invariance < invariance_tol;
        outcome.pass = outcome.pass && pass;
        outcome.metrics.push_back(Json{{"beta", beta},
                                       {"digits", kParryDigits},
                                       {"block_len", block},
                                       {"block_entropy_rate", r.block_entropy_rate},
                                       {"target", r.target},
                                       {"entropy_error", entropy_error},
                                       {"orbit_cdf_deviation", inv.orbit_cdf_deviation},
                                       {"push_cdf_deviation", inv.push_cdf_deviation},
                                       {"histogram_density_deviation", inv.histogram_density_deviation},
                                       {"bins", inv.bins},
                                       {"pass", pass}});
    }
    return outcome;
}

}  // namespace

// ---- parsing ----------------------------------------------------------------

std::vector<std::size_t> parse_depths(const std::string& text) {
    std::vector<std::size_t> depths;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const std::size_t a = parse_size(text.substr(0, dots));
        const std::size_t b = parse_size(text.substr(dots + 2));
        if (a > b) throw UsageError("--depths range '" + text + "' is empty");
        if (b - a > 64) throw UsageError("--depths range '" + text + "' is too long");
        for (std::size_t n = a; n <= b; ++n) depths.push_back(n);
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = text.find(',', start);
            const auto end = comma == std::string::npos ? text.size() : comma;
            depths.push_back(parse_size(text.substr(start, end - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (depths.empty()) throw UsageError("--depths needs at least one depth");
    return depths;
}

double parse_real(const std::string& text) {
    if (text == "phi" || text == "golden") return kGoldenRatio;
    const auto number = [&](const std::string& s) {
        double v = 0.0;
        const char* first = s.data();
        const char* last = first + s.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (s.empty() || ec != std::errc{} || ptr != last) {
            throw UsageError("expected a number, a fraction p/q or 'phi', got '" + text + "'");
        }
        return v;
    };
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const double den = number(text.substr(slash + 1));
        if (den == 0.0) throw UsageError("zero denominator in '" + text + "'");
        return number(text.substr(0, slash)) / den;
    }
    return number(text);
}

std::optional<RunConfig> parse_command_line(std::span<const std::string> args, std::ostream& out) {
    RunConfig cfg;
    std::string beta_text = "phi", tau_text = "1/3", depths_text, method_text = "rectangles",
                suite_text = "all";
    double tol = 0.0;

    CLI::App app{"Beta-shift skew-product attractors: rendering, dimension, entropy, verification",
                 "betafrac"};
    app.set_config("--config", "", "key=value file; command-line flags override it");
    auto* beta_opt = app.add_option("--beta", beta_text, "beta in (1, 2); accepts 'phi'")
                         ->capture_default_str();
    auto* tau_opt = app.add_option("--tau", tau_text, "tau in (0, 0.5); accepts p/q")
                        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--out", cfg.out, "output path prefix (default betafrac-<command>)");
    auto* depths_opt = app.add_option("--depths", depths_text, "box-counting depths: a..b or n1,n2,...");
    app.add_option("--samples", cfg.samples,
                   "points (render, dimension), digits (entropy) or windows per pair (verify)");
    app.add_option("--block-len", cfg.block_len, "block length k for block entropy")->capture_default_str();
    app.add_option("--word-len", cfg.word_len, "word length n for the count ratio")->capture_default_str();
    app.add_option("--block-tol", cfg.block_tol, "block-entropy tolerance in --check mode")
        ->capture_default_str();
    app.add_flag("--check", cfg.check, "exit 1 when the estimate misses the tolerance");
    auto* tol_opt = app.add_option("--tol", tol, "slope (dimension) or topological-entropy (entropy) tolerance");
    app.add_option("--method", method_text, "dimension method")
        ->check(CLI::IsMember({"rectangles", "cloud", "formula"}))
        ->capture_default_str();
    app.add_option("--width", cfg.width, "image width")->capture_default_str();
    app.add_option("--height", cfg.height, "image height")->capture_default_str();
    app.add_option("--burn-in", cfg.burn_in, "iterations discarded per start")->capture_default_str();
    app.add_option("--keep", cfg.keep, "states recorded per start")->capture_default_str();
    app.add_flag("--csv", cfg.write_csv, "render: also write the point cloud as CSV");

    auto* render = app.add_subcommand("render", "PGM image of the attractor")->fallthrough();
    auto* dimension = app.add_subcommand("dimension", "box-counting dimension")->fallthrough();
    auto* entropy = app.add_subcommand("entropy", "word-count and Parry block entropy")->fallthrough();
    auto* verify = app.add_subcommand("verify", "numerical certificate suites")->fallthrough();
    verify->add_option("suite", suite_text, "conjugacy | injectivity | mixing | covering | parry | all")
        ->check(CLI::IsMember({"conjugacy", "injectivity", "mixing", "covering", "parry", "all"}))
        ->capture_default_str();
    app.require_subcommand(1, 1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::Error& e) {
        throw UsageError(e.what());
    }

    if (render->parsed()) cfg.command = Command::render;
    if (dimension->parsed()) cfg.command = Command::dimension;
    if (entropy->parsed()) cfg.command = Command::entropy;
    if (verify->parsed()) cfg.command = Command::verify;

    const double beta = parse_real(beta_text);
    const double tau = parse_real(tau_text);
    if (!(beta > 1.0 && beta < 2.0)) {
        throw UsageError("--beta must lie in the open interval (1, 2), got " + beta_text);
    }
    if (!(tau > 0.0 && tau < 0.5)) {
        throw UsageError("--tau must lie in the open interval (0, 0.5), got " + tau_text);
    }
    cfg.params = Params(beta, tau);
    cfg.params_explicit = beta_opt->count() > 0 || tau_opt->count() > 0;

    if (depths_opt->count() > 0) cfg.depths = parse_depths(depths_text);
    if (tol_opt->count() > 0) {
        if (!(tol >= 0.0)) throw UsageError("--tol must be non-negative");
        cfg.tol = tol;
    }
    if (!(cfg.block_tol >= 0.0)) throw UsageError("--block-tol must be non-negative");
    cfg.method = method_text == "cloud" ? Method::cloud
                 : method_text == "formula" ? Method::formula
                                            : Method::rectangles;
    static constexpr std::array<std::pair<const char*, Suite>, 6> suites{{
        {"conjugacy", Suite::conjugacy},
        {"injectivity", Suite::injectivity},
        {"mixing", Suite::mixing},
        {"covering", Suite::covering},
        {"parry", Suite::parry},
        {"all", Suite::all},
    }};
    for (const auto& [name, suite] : suites) {
        if (suite_text == name) cfg.suite = suite;
    }
    return cfg;
}

// ---- commands ---------------------------------------------------------------

int run_render(const RunConfig& cfg, std::ostream& log) {
    if (cfg.width < kMinImageSide || cfg.height < kMinImageSide) {
        throw UsageError("--width and --height must be at least " + std::to_string(kMinImageSide));
    }
    if (cfg.width > kMaxImageSide || cfg.height > kMaxImageSide) {
        throw ResourceError("image sides above " + std::to_string(kMaxImageSide));
    }
    if (cfg.keep == 0) throw UsageError("--keep must be at least 1");
    const std::size_t starts = samples_or(cfg, kRenderPoints);
    if (cfg.keep > kMaxSamples / std::max<std::size_t>(starts, 1)) {
        throw ResourceError("--samples times --keep above " + std::to_string(kMaxSamples));
    }
    const PointCloud cloud = attract_cloud(cfg.params, starts, cfg.burn_in, cfg.keep, cfg.seed);
    const io::GrayImage image = io::render_visits(cloud, cfg.width, cfg.height);
    const std::string base = base_path(cfg);
    io::write_atomic(base + ".pgm", io::encode_pgm(image));
    log << "wrote " << base << ".pgm (" << cloud.points.size() << " points, " << cfg.width << "x"
        << cfg.height << ")\n";
    if (cfg.write_csv) {
        io::write_atomic(base + ".csv", io::cloud_csv(cloud));
        log << "wrote " << base << ".csv\n";
    }
    return kExitPass;
}

int run_dimension(const RunConfig& cfg, std::ostream& log) {
    const double theoretical = theoretical_dimension(cfg.params);
    if (cfg.method == Method::formula) {
        log << io::format_real(theoretical) << '\n';
        return kExitPass;
    }
    const BoxReport report =
        cfg.method == Method::rectangles
            ? boxdim_estimate(cfg.params, cfg.depths, BoxSource::rectangles)
            : boxdim_estimate(cfg.params, cfg.depths, BoxSource::cloud, samples_or(cfg, kCloudPoints), cfg.seed);
    const double tol = cfg.tol.value_or(kDefaultSlopeTol);
    const double error = std::abs(report.slope - report.theoretical);
    const bool pass = error <= tol;

    const std::string base = base_path(cfg);
    io::write_atomic(base + ".csv", io::box_report_csv(report));
    Json metrics{{"method", method_name(cfg.method)},
                 {"depths", report.depths},
                 {"counts", report.counts},
                 {"slope", report.slope},
                 {"theoretical", report.theoretical},
                 {"abs_error", error},
                 {"tolerance", tol},
                 {"warnings", report.warnings}};
    if (cfg.method == Method::cloud) metrics["points"] = samples_or(cfg, kCloudPoints);
    write_json(base + ".json", report_json(cfg, std::move(metrics), pass));

    print_warnings(log, report.warnings);
    log << "slope " << io::format_real(report.slope) << " theoretical " << io::format_real(theoretical)
        << " |error| " << io::format_real(error) << (pass ? " within " : " exceeds ") << "tolerance "
        << io::format_real(tol) << '\n';
    return cfg.check && !pass ? kExitCheckFailure : kExitPass;
}

int run_entropy(const RunConfig& cfg, std::ostream& log) {
    const std::size_t digits = samples_or(cfg, kEntropyDigits);
    if (cfg.block_len == 0 || cfg.block_len > 63) throw UsageError("--block-len must lie in [1, 63]");
    if (digits < cfg.block_len) throw UsageError("--samples must be at least --block-len");
    if (cfg.word_len == 0) throw UsageError("--word-len must be at least 1");

    const double beta = cfg.params.beta();
    const double topological = topological_entropy_estimate(beta, cfg.word_len);
    const ParryMeasure measure(beta);
    const DigitString d = sample_parry(measure, digits, cfg.seed);
    std::vector<EntropyReport> reports;
    for (std::size_t k = 1; k <= cfg.block_len; ++k) reports.push_back(entropy_report(beta, d, k));
    const EntropyReport& last = reports.back();

    const double tol = cfg.tol.value_or(kDefaultTopologicalTol);
    const double top_error = std::abs(topological - last.target);
    const double block_error = std::abs(last.block_entropy_rate - last.target);
    const bool pass = top_error <= tol && block_error <= cfg.block_tol;

    const std::string base = base_path(cfg);
    io::write_atomic(base + ".csv", io::entropy_csv(reports));
    io::write_atomic(base + "_density.csv", io::density_csv(measure));
    Json metrics{{"target", last.target},
                 {"word_len", cfg.word_len},
                 {"topological_estimate", topological},
                 {"topological_error", top_error},
                 {"topological_tolerance", tol},
                 {"block_len", last.block_len},
                 {"sample_len", last.sample_len},
                 {"block_entropy_rate", last.block_entropy_rate},
                 {"block_error", block_error},
                 {"block_tolerance", cfg.block_tol},
                 {"warnings", last.warnings}};
    write_json(base + ".json", report_json(cfg, std::move(metrics), pass));

    print_warnings(log, last.warnings);
    log << "target ln(beta) " << io::format_real(last.target) << '\n'
        << "word-count estimate (n=" << cfg.word_len << ") " << io::format_real(topological) << '\n'
        << "block entropy (k=" << last.block_len << ", " << digits << " digits) "
        << io::format_real(last.block_entropy_rate) << '\n';
    return cfg.check && !pass ? kExitCheckFailure : kExitPass;
}

int run_verify(const RunConfig& cfg, std::ostream& log) {
    using SuiteFn = SuiteOutcome (*)(const RunConfig&);
    static constexpr std::array<std::tuple<const char*, Suite, SuiteFn>, 5> suites{{
        {"conjugacy", Suite::conjugacy, suite_conjugacy},
        {"injectivity", Suite::injectivity, suite_injectivity},
        {"mixing", Suite::mixing, suite_mixing},
        {"covering", Suite::covering, suite_covering},
        {"parry", Suite::parry, suite_parry},
    }};
    Json metrics = Json::object();
    bool pass = true;
    for (const auto& [name, suite, fn] : suites) {
        if (cfg.suite != Suite::all && cfg.suite != suite) continue;
        SuiteOutcome outcome = fn(cfg);
        pass = pass && outcome.pass;
        log << name << ": " << (outcome.pass ? "pass" : "FAIL") << '\n';
        metrics[name] = std::move(outcome.metrics);
    }
    const std::string base = base_path(cfg);
    write_json(base + ".json", report_json(cfg, std::move(metrics), pass));
    log << "wrote " << base << ".json\n";
    return pass ? kExitPass : kExitCheckFailure;
}

int run(const RunConfig& cfg, std::ostream& log) {
    switch (cfg.command) {
        case Command::render: return run_render(cfg, log);
        case Command::dimension: return run_dimension(cfg, log);
        case Command::entropy: return run_entropy(cfg, log);
        case Command::verify: return run_verify(cfg, log);
    }
    return kExitUsage;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    try {
        const auto cfg = parse_command_line(args, out);
        if (!cfg) return kExitPass;
        return run(*cfg, out);
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    }
}

}  // namespace betafrac::cli
