// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: sboxforge_acceptance <path to sbox-forge>

#include "oracle/brute_force.hpp"
#include "sboxforge/chaos.hpp"
#include "sboxforge/generator.hpp"
#include "sboxforge/io.hpp"
#include "sboxforge/metrics.hpp"
#include "sboxforge/parallel.hpp"
#include "sboxforge/reference.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sboxforge;
namespace m = sboxforge::metrics;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

int failures = 0;

void report(int id, const char* title, Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << o.detail.str() << '\n';
    for (const auto& n : o.notes) {
        std::cout << "        " << n << '\n';
    }
    failures += o.pass ? 0 : 1;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream s;
    s << '{';
    for (std::size_t i = 0; i < v.size(); ++i) {
        s << (i ? ", " : "") << v[i];
    }
    s << '}';
    return s.str();
}

struct CommandResult {
    int status = -1;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    CommandResult r;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.output.append(buf, n);
    }
    r.status = pclose(pipe);
    return r;
}

const m::MetricsReport& final_report() {
    static const m::MetricsReport r = m::full_report(reference::paper_final_sbox());
    return r;
}

const reference::PublishedMetrics& published() { return reference::published_final_metrics(); }

void print_audit_listing(const std::string& field_prefix) {
    const auto result = reference::audit(reference::fixtures().front());
    for (const auto& mm : result.mismatches) {
        if (mm.field.rfind(field_prefix, 0) == 0) {
            std::cout << "        audit: " << mm.field << (mm.cell.empty() ? "" : " " + mm.cell) << " published "
                      << mm.expected << ", computed " << mm.actual << '\n';
        }
    }
}

void criterion_nl() {
    Outcome o;
    const auto start = Clock::now();
    const auto r = m::full_report(reference::paper_final_sbox());
    const double elapsed = seconds_since(start);
    const std::vector<int> want(published().nl_per_bit.begin(), published().nl_per_bit.end());
    o.detail << "nl_per_bit " << join(r.nl_per_bit) << " nl_min " << r.nl_min << " (published " << join(want)
             << " min " << published().nl_min << "), full_report " << elapsed * 1e3 << " ms";
    o.require(r.bijective, "fixture is not bijective");
    o.require(r.nl_per_bit == want, "nl_per_bit differs from the published row");
    o.require(r.nl_min == published().nl_min, "nl_min differs from the published value");
    o.require(elapsed < 1.0, "full_report took longer than 1 s");
    report(1, "fixture nonlinearity", o);
    if (!o.pass) {
        print_audit_listing("nl_");
    }
}

void criterion_lap() {
    Outcome o;
    const auto& r = final_report();
    o.detail << "lap " << r.lap.exact() << " = " << r.lap.value() << " (published " << published().lap << ")";
    o.require(r.lap == m::Ratio{36, 256}, "lap is not 36/256");
    o.require(std::abs(r.lap.value() - published().lap) <= reference::kPrintedTolerance,
              "lap outside the printed tolerance");
    report(2, "fixture LAP", o);
}

void criterion_dap() {
    Outcome o;
    const auto& r = final_report();
    const int want = published().differential_uniformity;
    o.detail << "differential uniformity " << r.differential_uniformity << ", dap " << r.dap.exact()
             << " (published " << want << ", " << want << "/256)";
    o.require(r.differential_uniformity == want, "differential uniformity differs from the published value");
    o.require(r.dap == m::Ratio{want, 256}, "dap differs from the published value");
    report(3, "fixture DAP and differential uniformity", o);
    if (!o.pass) {
        print_audit_listing("differential");
    }
}

void criterion_sac() {
    Outcome o;
    const auto& r = final_report();
    const auto& printed = published().sac;
    int off = 0;
    double worst = 0.0;
    int relabelled_off = 0;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double d = std::abs(r.sac.entry(i, j).value() - printed[i][j]);
            worst = std::max(worst, d);
            off += d > reference::kPrintedTolerance;
            relabelled_off += std::abs(r.sac.entry(i ^ 4, j).value() - printed[i][j]) > reference::kPrintedTolerance;
        }
    }
    o.detail << "(0,0) " << r.sac.entry(0, 0).exact() << " = " << r.sac.entry(0, 0).value() << ", (0,1) "
             << r.sac.entry(0, 1).exact() << " = " << r.sac.entry(0, 1).value() << "; " << off
             << "/64 cells off by > 1e-4 (max " << worst << ")";
    o.require(r.sac.entry(0, 0) == m::Ratio{28, 64}, "entry (0,0) is not 0.4375");
    o.require(r.sac.entry(0, 1) == m::Ratio{33, 64}, "entry (0,1) is not 0.5156");
    o.require(off == 0, "matrix differs from the printed table");
    for (int c : r.sac.counts.cells()) {
        o.require(c % 4 == 0, "entry not a multiple of 1/64");
    }
    if (!o.pass) {
        o.notes.push_back("with input bit i read as i^4 the printed matrix has " + std::to_string(relabelled_off) +
                          "/64 cells off");
    }
    report(4, "fixture SAC matrix", o);
}

void criterion_bic_sac() {
    Outcome o;
    const auto& r = final_report();
    o.detail << "bic_sac_avg " << r.bic_sac_avg.exact() << " = " << r.bic_sac_avg.value() << " (published "
             << published().bic_sac_avg << ")";
    o.require(std::abs(r.bic_sac_avg.value() - published().bic_sac_avg) <= reference::kBicSacAverageTolerance,
              "average outside tolerance");
    report(5, "fixture BIC-SAC average", o);
}

void criterion_fixed_points() {
    Outcome o;
    const auto& r = final_report();
    o.detail << r.fixed_point_count() << " fixed points " << join(r.fixed_points) << " (published "
             << published().fixed_point_count << ")";
    o.require(r.fixed_point_count() == published().fixed_point_count, "fixture has fixed points");
    report(6, "fixture fixed points", o);
}

bool equals_oracle(const oracle::Table& t, std::string& why) {
    const auto nl = m::nonlinearity(t);
    std::vector<int> nl_oracle;
    for (unsigned mask = 1; mask < t.size(); ++mask) {
        nl_oracle.push_back(oracle::nonlinearity(oracle::coordinate(t, mask)));
    }
    const int width = oracle::width_of(t);
    for (int bit = 0; bit < width; ++bit) {
        if (nl.per_bit[bit] != nl_oracle[(1u << bit) - 1]) {
            why = "nl bit " + std::to_string(bit);
            return false;
        }
    }
    for (unsigned mask = 1; mask < t.size(); ++mask) {
        const auto f = m::component(t, mask);
        const auto g = oracle::coordinate(t, mask);
        if (m::nonlinearity(f) != nl_oracle[mask - 1] || m::walsh_spectrum(f) != oracle::walsh(g) ||
            m::algebraic_degree(f) != oracle::degree(g)) {
            why = "component " + std::to_string(mask);
            return false;
        }
    }
    if (m::algebraic_degree(t).per_bit != oracle::degree_per_bit(t)) {
        why = "degree";
        return false;
    }
    const auto sac = m::sac_matrix(t);
    const auto sac_o = oracle::sac_counts(t);
    const auto bnl = m::bic_nl(t);
    const auto bnl_o = oracle::bic_nl(t);
    const auto bsac = m::bic_sac(t);
    const auto bsac_o = oracle::bic_sac_counts(t);
    for (int i = 0; i < width; ++i) {
        for (int j = 0; j < width; ++j) {
            if (sac.counts.at(i, j) != sac_o[i][j] || bnl.matrix.at(i, j) != bnl_o[i][j] ||
                bsac.counts.at(i, j) != bsac_o[i][j]) {
                why = "sac/bic cell " + std::to_string(i) + "," + std::to_string(j);
                return false;
            }
        }
    }
    const m::LinearApproximationTable lat(t);
    const m::DifferenceTable ddt(t);
    const auto lat_o = oracle::lat(t);
    const auto ddt_o = oracle::ddt(t);
    for (unsigned a = 0; a < t.size(); ++a) {
        for (unsigned b = 0; b < t.size(); ++b) {
            if (lat.at(a, b) != lat_o[a][b] || ddt.at(a, b) != ddt_o[a][b]) {
                why = "lat/ddt cell";
                return false;
            }
        }
    }
    const std::int64_t size = static_cast<std::int64_t>(t.size());
    if (m::lap(t) != m::Ratio{oracle::max_abs_lat(t), size} || m::differential_uniformity(t) != oracle::uniformity(t) ||
        m::dap(t) != m::Ratio{oracle::uniformity(t), size}) {
        why = "lap/dap";
        return false;
    }
    std::vector<int> fixed;
    for (std::size_t x = 0; x < t.size(); ++x) {
        if (t[x] == x) {
            fixed.push_back(static_cast<int>(x));
        }
    }
    if (m::fixed_points(t) != fixed) {
        why = "fixed points";
        return false;
    }
    return true;
}

void criterion_oracle() {
    Outcome o;
    const auto start = Clock::now();
    std::vector<oracle::Table> tables;
    const auto id = oracle::identity(16);
    for (unsigned i = 0; i < 16; ++i) {
        for (unsigned j = i + 1; j < 16; ++j) {
            auto t = id;
            std::swap(t[i], t[j]);
            tables.push_back(t);
        }
    }
    std::mt19937_64 rng(0xacce97);
    for (int k = 0; k < 100; ++k) {
        tables.push_back(oracle::random_permutation(16, rng));
    }
    int mismatched = 0;
    for (std::size_t k = 0; k < tables.size(); ++k) {
        std::string why;
        if (!equals_oracle(tables[k], why)) {
            if (++mismatched <= 5) {
                o.notes.push_back("table " + std::to_string(k) + ": " + why);
            }
        }
    }
    const double elapsed = seconds_since(start);
    o.detail << tables.size() << " 4-bit permutations, " << mismatched << " mismatched, " << elapsed << " s";
    o.require(tables.size() == 220, "wrong table count");
    o.require(mismatched == 0, "metric differs from its oracle");
    o.require(elapsed < 10.0, "slower than 10 s");
    report(7, "oracle equivalence on 4-bit tables", o);
}

void criterion_parseval() {
    Outcome o;
    std::mt19937_64 rng(0x9a55e7a1);
    std::vector<oracle::Table> boxes;
    for (int k = 0; k < 1000; ++k) {
        boxes.push_back(oracle::random_permutation(256, rng));
    }
    std::atomic<int> energy_bad{0};
    std::atomic<int> balance_bad{0};
    parallel_for(boxes.size(), [&](std::size_t k) {
        for (unsigned mask = 1; mask < 256; ++mask) {
            const auto w = m::walsh_spectrum(m::component(boxes[k], mask));
            const long long energy =
                std::accumulate(w.begin(), w.end(), 0LL, [](long long s, int v) { return s + 1LL * v * v; });
            energy_bad += energy != 65536;
            balance_bad += w[0] != 0;
        }
    });
    o.detail << "1000 S-boxes x 255 components: " << energy_bad << " Parseval violations, " << balance_bad
             << " unbalanced";
    o.require(energy_bad == 0, "Parseval identity violated");
    o.require(balance_bad == 0, "bijective component not balanced");
    report(8, "Walsh energy and balancedness", o);
}

int agreement(const SBox& l, const SBox& r) {
    int same = 0;
    for (std::size_t i = 0; i < kTableSize; ++i) {
        same += l[i] == r[i];
    }
    return same;
}

void criterion_generation() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(0x6e4e7a7e);
    std::uniform_real_distribution<double> x0(1e-6, 1.0 - 1e-6 - 1e-9);
    std::uniform_real_distribution<double> a(0.01, 1.99);
    std::uniform_real_distribution<double> log_b(3.0, 9.0);
    std::vector<chaos::MapParams> keys;
    for (int k = 0; k < 1000; ++k) {
        keys.emplace_back(x0(rng), a(rng), std::pow(10.0, log_b(rng)), k % 2 ? chaos::MapMode::Eq1 : chaos::MapMode::Alg1);
    }

    const gen::GenConfig cfg;
    std::atomic<int> not_bijective{0}, not_deterministic{0}, with_fixed{0}, nl_lowered{0}, stalled{0}, improved{0};
    parallel_for(keys.size(), [&](std::size_t k) {
        try {
            const auto initial = gen::generate_initial(keys[k], cfg);
            const auto refined = gen::refine(initial, cfg, keys[k]);
            not_bijective += !is_bijective(initial.table()) || !is_bijective(refined.table());
            not_deterministic += gen::generate_initial(keys[k], cfg) != initial || gen::generate(keys[k], cfg) != refined;
            with_fixed += !m::fixed_points(refined.span()).empty();
            const int before = m::nonlinearity(initial.span()).min;
            const int after = m::nonlinearity(refined.span()).min;
            nl_lowered += after < before;
            improved += after > before;
        } catch (const gen::GenerationStalled&) {
            ++stalled;
        }
    });

    std::vector<int> agree(100);
    parallel_for(agree.size(), [&](std::size_t k) {
        const auto& key = keys[k];
        agree[k] = agreement(gen::generate_initial(key, cfg), gen::generate_initial(key.with_x0(key.x0() + 1e-9), cfg));
    });
    const double mean_agreement = std::accumulate(agree.begin(), agree.end(), 0.0) / agree.size() / 256.0;

    o.detail << "1000 keys: " << stalled << " stalled, " << not_bijective << " non-bijective, " << not_deterministic
             << " non-deterministic, " << with_fixed << " refined with fixed points, " << nl_lowered
             << " with lowered min NL (" << improved << " raised); mean agreement at dx0=1e-9 "
             << mean_agreement * 100.0 << "%; " << seconds_since(start) << " s";
    o.require(stalled == 0, "generation stalled");
    o.require(not_bijective == 0, "non-bijective output");
    o.require(not_deterministic == 0, "output not deterministic");
    o.require(with_fixed == 0, "refined table has fixed points");
    o.require(nl_lowered == 0, "refinement lowered min NL");
    o.require(mean_agreement <= 0.05, "neighbouring keys agree on more than 5% of positions");
    report(9, "generation properties", o);
}

void criterion_chaos(const std::string& cli) {
    Outcome o;
    const chaos::MapParams key(0.33, 1.0, 1e6, chaos::MapMode::Alg1);
    const auto l1 = chaos::lyapunov(key, 100000);
    const auto l2 = chaos::lyapunov(key, 200000);
    const double variation = std::abs(l2.value - l1.value) / std::abs(l1.value);

    const auto csv_path = std::filesystem::temp_directory_path() / "sboxforge_acceptance_bifurcation.csv";
    const std::size_t a_steps = 400;
    const std::size_t samples = 100;
    const auto cmd = run_command("\"" + cli + "\" bifurcate --a-min 0.1 --a-max 1.9 --a-steps " +
                                 std::to_string(a_steps) + " --samples " + std::to_string(samples) +
                                 " --x0 0.33 --mode alg1 --out \"" + csv_path.string() + "\"");
    std::size_t rows = 0;
    std::size_t out_of_range = 0;
    bool header_ok = false;
    try {
        std::istringstream in(io::read_file(csv_path));
        std::string line;
        header_ok = static_cast<bool>(std::getline(in, line)) && line == "a,x";
        while (std::getline(in, line)) {
            const double x = std::stod(line.substr(line.find(',') + 1));
            out_of_range += !(x >= 0.0 && x < 1.0);
            ++rows;
        }
    } catch (const std::exception& e) {
        o.require(false, std::string("could not read bifurcation CSV: ") + e.what());
    }
    std::filesystem::remove(csv_path);

    o.detail << "lyapunov " << l1.value << " (1e5) vs " << l2.value << " (2e5), variation " << variation * 100.0
             << "%; bifurcate " << rows << " rows, " << out_of_range << " outside [0,1)";
    o.require(cmd.status == 0, "bifurcate exited with an error");
    o.require(l1.value > 0.0 && l2.value > 0.0, "exponent not positive");
    o.require(variation < 0.10, "exponent varies by 10% or more");
    o.require(header_ok, "CSV header missing");
    o.require(rows == a_steps * samples, "row count is not a_steps x samples");
    o.require(out_of_range == 0, "x outside [0,1)");
    report(10, "chaos diagnostics", o);
}

void criterion_bench(const std::string& cli) {
    Outcome o;
    const auto start = Clock::now();
    const auto r = run_command("\"" + cli + "\" bench --count 100000");
    const double elapsed = seconds_since(start);
    std::string text = r.output;
    while (!text.empty() && text.back() == '\n') {
        text.pop_back();
    }
    for (auto& c : text) {
        c = c == '\n' ? ';' : c;
    }
    o.detail << text << " (wall " << elapsed << " s, informational)";
    o.require(r.status == 0, "bench exited with an error");
    o.require(r.output.find("mean") != std::string::npos, "bench printed no timing");
    report(11, "bench", o);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: " << argv[0] << " <path to sbox-forge>\n";
        return 2;
    }
    const std::string cli = argv[1];
    std::cout.setf(std::ios::fixed);
    std::cout.precision(6);

    criterion_nl();
    criterion_lap();
    criterion_dap();
    criterion_sac();
    criterion_bic_sac();
    criterion_fixed_points();
    criterion_oracle();
    criterion_parseval();
    criterion_generation();
    criterion_chaos(cli);
    criterion_bench(cli);

    std::cout << (11 - failures) << "/11 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
