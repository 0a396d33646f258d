#include "sboxforge/cli.hpp"

#include "sboxforge/generator.hpp"
#include "sboxforge/metrics.hpp"
#include "sboxforge/reference.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace sboxforge::cli {

namespace {

struct InvalidArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const CliConfig& config, std::ostream& out, std::string_view data) {
    if (config.output) {
        io::write_file(*config.output, data);
    } else {
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
    }
}

chaos::MapParams key_of(const CliConfig& config) {
    try {
        return chaos::MapParams(config.x0, config.a, config.b, config.mode);
    } catch (const std::invalid_argument& e) {
        throw InvalidArguments(e.what());
    }
}

gen::GenConfig gen_config_of(const CliConfig& config) {
    gen::GenConfig cfg;
    cfg.max_iterations = config.max_iterations;
    cfg.refine = config.refine;
    cfg.refine_max_passes = config.refine_max_passes;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw InvalidArguments(e.what());
    }
    return cfg;
}

int run_generate(const CliConfig& config, std::ostream& out) {
    const auto sbox = gen::generate(key_of(config), gen_config_of(config));
    emit(config, out, io::encode(sbox.table(), config.format.value_or(io::TableFormat::Hex)));
    return kOk;
}

int run_analyze(const CliConfig& config, std::ostream& out) {
    if (!config.input) {
        throw InvalidArguments("analyze requires --in");
    }
    if (config.format && *config.format != io::TableFormat::Json) {
        throw InvalidArguments("reports are emitted as json");
    }
    const auto table = io::read_table(*config.input, config.input_format);
    emit(config, out, io::report_to_json(metrics::full_report(table)));
    return kOk;
}

int run_bifurcate(const CliConfig& config, std::ostream& out) {
    chaos::BifurcationScan scan{config.a_min, config.a_max, config.a_steps, config.x0,
                                config.samples, config.transient, config.mode};
    std::vector<chaos::BifurcationRecord> records;
    try {
        // Validates x0 the same way a key does.
        chaos::MapParams(config.x0, config.a_min, 1.0, config.mode);
        records = chaos::bifurcation_scan(scan);
    } catch (const std::invalid_argument& e) {
        throw InvalidArguments(e.what());
    }
    emit(config, out, io::bifurcation_to_csv(records));
    return kOk;
}

int run_lyapunov(const CliConfig& config, std::ostream& out) {
    const auto key = key_of(config);
    chaos::LyapunovEstimate estimate{};
    try {
        estimate = chaos::lyapunov(key, config.iterations);
    } catch (const std::invalid_argument& e) {
        throw InvalidArguments(e.what());
    }
    emit(config, out, io::lyapunov_to_json(estimate, key));
    return kOk;
}

int run_bench(const CliConfig& config, std::ostream& out) {
    if (config.bench_count == 0) {
        throw InvalidArguments("bench needs --count >= 1");
    }
    const auto cfg = gen_config_of(config);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> x0_dist(1e-6, 1.0 - 1e-6);
    std::uniform_real_distribution<double> a_dist(0.01, 1.99);
    std::uniform_real_distribution<double> log_b_dist(3.0, 9.0);

    std::set<Octets> distinct;
    std::size_t stalled = 0;
    std::chrono::steady_clock::duration elapsed{};
    for (std::size_t i = 0; i < config.bench_count; ++i) {
        const double x0 = x0_dist(rng);
        const double a = a_dist(rng);
        const double b = std::pow(10.0, log_b_dist(rng));
        const chaos::MapParams key(x0, a, b, config.mode);
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto sbox = config.refine ? gen::generate(key, cfg) : gen::generate_initial(key, cfg);
            elapsed += std::chrono::steady_clock::now() - start;
            distinct.insert(sbox.table().values());
        } catch (const std::runtime_error&) {
            elapsed += std::chrono::steady_clock::now() - start;
            ++stalled;
        }
    }

    const double total = std::chrono::duration<double>(elapsed).count();
    const double mean_us = total / static_cast<double>(config.bench_count) * 1e6;
    char line[256];
    std::ostringstream report;
    std::snprintf(line, sizeof line, "bench: %zu %s S-boxes, mode %s, %zu distinct, %zu failed\n",
                  config.bench_count, config.refine ? "final" : "initial",
                  std::string(chaos::to_string(config.mode)).c_str(), distinct.size(), stalled);
    report << line;
    std::snprintf(line, sizeof line, "total %.3f s, mean %.2f us per S-box\n", total, mean_us);
    report << line;
    emit(config, out, report.str());
    return kOk;
}

int run_fixtures(const CliConfig& config, std::ostream& out) {
    if (config.list_fixtures) {
        emit(config, out,
             "final    published S-box with its published metrics\n"
             "initial  published S-box, no published metrics\n"
             "aes      Rijndael S-box (metrics cross-check)\n");
        return kOk;
    }

    const RawTable* table = nullptr;
    try {
        table = &reference::fixture_table(config.fixture);
    } catch (const std::invalid_argument& e) {
        throw InvalidArguments(e.what());
    }

    if (!config.audit && !config.strict) {
        emit(config, out, io::encode(*table, config.format.value_or(io::TableFormat::Hex)));
        return kOk;
    }

    std::optional<reference::ReferenceFixture> fixture;
    for (auto& f : reference::fixtures()) {
        if (f.name == config.fixture) {
            fixture = f;
        }
    }
    if (!fixture || !fixture->expected) {
        throw InvalidArguments("fixture '" + config.fixture + "' has no published metrics to audit");
    }

    const auto result = reference::audit(*fixture);
    std::ostringstream text;
    text << "fixture " << fixture->name << ": " << result.checked << " published values checked, "
         << result.mismatches.size() << " mismatched\n";
    for (const auto& m : result.mismatches) {
        text << "  " << m.field;
        if (!m.cell.empty()) {
            text << ' ' << m.cell;
        }
        text << ": published " << m.expected << ", computed " << m.actual << '\n';
    }
    emit(config, out, text.str());
    return config.strict && !result.passed() ? kAuditMismatch : kOk;
}

void add_key_options(CLI::App* cmd, CliConfig& c, std::string& mode) {
    cmd->add_option("--x0", c.x0, "initial state, 0 < x0 < 1");
    cmd->add_option("--a", c.a, "control parameter, 0 < a < 2");
    cmd->add_option("--b", c.b, "scaling multiplier, 0 < b <= 1e9");
    cmd->add_option("--mode", mode, "update rule: alg1 or eq1");
}

} // namespace

ParseOutcome parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig c;
    std::string mode = "alg1";
    std::string format;
    std::string in_format;
    std::string input;
    std::string output;

    CLI::App app{"Key-dependent S-box generator and S-box analyser"};
    app.name(args.empty() ? "sbox-forge" : args.front());
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "generate an S-box from a key");
    add_key_options(generate, c, mode);
    generate->add_flag("--refine", c.refine, "remove fixed points and raise nonlinearity");
    generate->add_option("--max-iterations", c.max_iterations, "cap on chaotic draws");
    generate->add_option("--refine-max-passes", c.refine_max_passes, "cap on refinement passes");
    generate->add_option("--format", format, "hex, bin or json");
    generate->add_option("--out", output, "output file (default stdout)");

    auto* analyze = app.add_subcommand("analyze", "compute every security metric of a table");
    analyze->add_option("--in", input, "input table file")->required();
    analyze->add_option("--in-format", in_format, "hex, bin or json (default: detect)");
    analyze->add_option("--format", format, "report format (json)");
    analyze->add_option("--out", output, "output file (default stdout)");

    auto* bifurcate = app.add_subcommand("bifurcate", "emit bifurcation data as CSV");
    bifurcate->add_option("--a-min", c.a_min);
    bifurcate->add_option("--a-max", c.a_max);
    bifurcate->add_option("--a-steps", c.a_steps);
    bifurcate->add_option("--x0", c.x0);
    bifurcate->add_option("--samples", c.samples);
    bifurcate->add_option("--transient", c.transient);
    bifurcate->add_option("--mode", mode, "update rule: alg1 or eq1");
    bifurcate->add_option("--out", output, "output file (default stdout)");

    auto* lyap = app.add_subcommand("lyapunov", "estimate the Lyapunov exponent");
    add_key_options(lyap, c, mode);
    lyap->add_option("-n,--iterations", c.iterations, "iterations (>= 1000)");
    lyap->add_option("--out", output, "output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "time S-box generation over random keys");
    bench->add_option("--count", c.bench_count, "number of S-boxes");
    bench->add_option("--seed", c.seed, "seed for the key sampler");
    bench->add_option("--mode", mode, "update rule: alg1 or eq1");
    bench->add_flag("--refine", c.refine, "time the refined (final) S-box");
    bench->add_option("--max-iterations", c.max_iterations, "cap on chaotic draws");
    bench->add_option("--out", output, "output file (default stdout)");

    auto* fixtures = app.add_subcommand("fixtures", "export or audit the reference tables");
    fixtures->add_option("--name", c.fixture, "final, initial or aes");
    fixtures->add_flag("--list", c.list_fixtures, "list fixture names");
    fixtures->add_flag("--audit", c.audit, "compare published metrics with computed ones");
    fixtures->add_flag("--strict", c.strict, "like --audit, exit 1 on any mismatch");
    fixtures->add_option("--format", format, "hex, bin or json");
    fixtures->add_option("--out", output, "output file (default stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {std::nullopt, code == 0 ? kOk : kInvalidArguments};
    }

    try {
        c.mode = chaos::parse_mode(mode);
        if (!format.empty()) {
            c.format = io::parse_format(format);
        }
        if (!in_format.empty()) {
            c.input_format = io::parse_format(in_format);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kInvalidArguments};
    }
    if (!input.empty()) {
        c.input = input;
    }
    if (!output.empty()) {
        c.output = output;
    }

    if (generate->parsed()) {
        c.subcommand = Subcommand::Generate;
    } else if (analyze->parsed()) {
        c.subcommand = Subcommand::Analyze;
    } else if (bifurcate->parsed()) {
        c.subcommand = Subcommand::Bifurcate;
    } else if (lyap->parsed()) {
        c.subcommand = Subcommand::Lyapunov;
    } else if (bench->parsed()) {
        c.subcommand = Subcommand::Bench;
    } else {
        c.subcommand = Subcommand::Fixtures;
    }
    return {c, kOk};
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.subcommand) {
        case Subcommand::Generate:
            return run_generate(config, out);
        case Subcommand::Analyze:
            return run_analyze(config, out);
        case Subcommand::Bifurcate:
            return run_bifurcate(config, out);
        case Subcommand::Lyapunov:
            return run_lyapunov(config, out);
        case Subcommand::Bench:
            return run_bench(config, out);
        case Subcommand::Fixtures:
            return run_fixtures(config, out);
        }
    } catch (const InvalidArguments& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    } catch (const io::MalformedInput& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedInput;
    } catch (const gen::GenerationStalled& e) {
        err << "error: " << e.what() << '\n';
        return kGenerationFailed;
    } catch (const gen::RefinementFailed& e) {
        err << "error: " << e.what() << '\n';
        return kGenerationFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }
    return kInvalidArguments;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto parsed = parse(args, out, err);
    if (!parsed.config) {
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

} // namespace sboxforge::cli
