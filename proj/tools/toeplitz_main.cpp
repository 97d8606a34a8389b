// Command-line front end: sequence construction, analysis, correlation and
// verification runs, all reproducible from flags alone.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "toeplitz/builder.hpp"
#include "toeplitz/complexity.hpp"
#include "toeplitz/correlation.hpp"
#include "toeplitz/mixing.hpp"
#include "toeplitz/mobius.hpp"
#include "toeplitz/sequence_io.hpp"
#include "toeplitz/structure.hpp"

using namespace toeplitz;

namespace {

// exit codes: 0 ok, 1 verification failed, 2 usage, 3 bad scale spec,
// 4 file-format violation, 5 precondition violated, 6 internal error
enum ExitCode {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kBadScale = 3,
    kBadFile = 4,
    kBadArgument = 5,
    kInternal = 6,
};

struct ScaleSpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Scale parse_scale_or_throw(const std::string& spec, std::int64_t window) {
    try {
        return Scale::parse(spec, window);
    } catch (const std::invalid_argument& e) {
        throw ScaleSpecError(e.what());
    }
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + csv + "'");
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

void write_filling(const std::string& path, const PartialFilling& f,
                   std::map<std::string, std::string> extra_meta) {
    SequenceFile file;
    std::set<int> symbols;
    std::int64_t unfilled = 0;
    for (std::int64_t i = 1; i <= f.window(); ++i) {
        if (f.filled(i))
            symbols.insert(f.symbol(i));
        else
            ++unfilled;
    }
    if (symbols.empty()) symbols.insert(0);
    int placeholder = 0;
    if (unfilled > 0) {
        placeholder = *symbols.rbegin() + 1;
        symbols.insert(placeholder);
        extra_meta["unfilled"] = std::to_string(placeholder);
    }
    file.alphabet.assign(symbols.begin(), symbols.end());
    file.payload.resize(static_cast<std::size_t>(f.window()));
    for (std::int64_t i = 1; i <= f.window(); ++i)
        file.payload[static_cast<std::size_t>(i - 1)] =
            f.filled(i) ? f.symbol(i) : static_cast<std::int8_t>(placeholder);
    file.metadata = std::move(extra_meta);
    file.metadata["scale"] = f.scale().spec();
    file.metadata["construction"] = f.construction();
    write_sequence_file(path, file);
}

void write_csv(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

int run_sieve(std::int64_t n_max, std::int64_t segment, unsigned threads,
              const std::string& out) {
    auto table = mobius_sieve(n_max, segment, threads);
    SequenceFile file;
    file.alphabet = {-1, 0, 1};
    file.payload = table.to_sequence();
    file.metadata["construction"] = "mobius";
    file.metadata["n_max"] = std::to_string(n_max);
    write_sequence_file(out, file);
    std::printf("sieve: wrote mu(1..%lld) to %s\n", static_cast<long long>(n_max), out.c_str());
    return kOk;
}

int run_build_block(const std::string& q_csv, const std::string& r_csv,
                    const std::string& blocks_arg, std::int64_t window, const std::string& out) {
    auto qs = parse_int_list(q_csv);
    std::vector<BlockStep> steps;
    if (blocks_arg == "auto") {
        std::vector<std::int64_t> rs(qs.size(), 1);
        if (!r_csv.empty()) rs = parse_int_list(r_csv);
        if (rs.size() != qs.size())
            throw std::invalid_argument("--r must list one value per q");
        std::vector<QR> qr;
        for (std::size_t i = 0; i < qs.size(); ++i) qr.push_back({qs[i], rs[i]});
        steps = schedule_ones(qr, qr.size());
    } else {
        std::ifstream in(blocks_arg);
        if (!in) throw FormatError("blocks file: cannot open '" + blocks_arg + "'");
        std::string line;
        std::size_t i = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (i >= qs.size()) throw std::invalid_argument("more blocks than q values");
            steps.push_back({qs[i++], parse_block(line)});
        }
        if (steps.empty()) throw FormatError("blocks file: no blocks in '" + blocks_arg + "'");
    }
    auto f = build_block_scheme(steps, window);
    write_filling(out, f, {{"q", q_csv}});
    std::printf("build block: %zu steps, %lld unfilled cells of %lld, wrote %s\n", f.step_count(),
                static_cast<long long>(f.unfilled_count()), static_cast<long long>(f.window()),
                out.c_str());
    return kOk;
}

int run_build_readout(const std::string& scale_spec, const std::string& y_arg,
                      std::int64_t window, const std::string& out, const std::string& z_out) {
    Scale scale = parse_scale_or_throw(scale_spec, window);
    PartialFilling f = [&] {
        if (y_arg == "mobius") {
            auto table = mobius_sieve(window);
            return mobius_fill(scale, window, table);
        }
        if (y_arg == "example72") {
            auto ci = find_claim_indices(scale, 16, window);
            return std::move(build_example_7_2(scale, window, ci.k).filling);
        }
        if (y_arg.rfind("file:", 0) == 0) {
            auto yfile = read_sequence_file(y_arg.substr(5));
            return build_readout(yfile.payload, scale, window);
        }
        throw std::invalid_argument("--y must be mobius, example72 or file:PATH");
    }();
    write_filling(out, f, {});
    if (!z_out.empty()) {
        SequenceFile zfile;
        zfile.alphabet = {0, 1};
        zfile.payload = initial_indicator(f);
        zfile.metadata["scale"] = scale.spec();
        zfile.metadata["construction"] = "initial-indicator";
        write_sequence_file(z_out, zfile);
    }
    std::printf("build readout: %zu steps over window %lld, wrote %s\n", f.step_count(),
                static_cast<long long>(window), out.c_str());
    return kOk;
}

int run_analyze(const std::string& in, const std::string& scale_spec, const std::string& z_path,
                std::int64_t banach, const std::string& report_path, const std::string& csv_path) {
    auto file = read_sequence_file(in);
    Scale scale = parse_scale_or_throw(scale_spec, static_cast<std::int64_t>(file.payload.size()));
    DensityReport rep;
    if (!z_path.empty()) {
        auto z = read_sequence_file(z_path);
        auto f = filling_from_indicator(file.payload, z.payload, scale);
        rep = regularity_defect(f, banach);
        rep.subject = "declared:" + in;
    } else {
        rep = empirical_density_report(file.payload, scale, banach);
        rep.subject = "empirical:" + in;
    }
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot open '" + report_path + "'");
    out << rep.to_text();
    if (!csv_path.empty()) write_csv(csv_path, rep.to_csv());
    std::ostringstream d;
    d << rep.defect;
    std::printf("analyze: defect %s, report in %s\n", d.str().c_str(), report_path.c_str());
    return kOk;
}

int run_correlate_files(const std::string& a_path, const std::string& b_path,
                        const std::string& schedule_arg, const std::string& out) {
    auto a = read_sequence_file(a_path);
    auto b = read_sequence_file(b_path);
    SampleSchedule schedule;
    if (!schedule_arg.empty() && schedule_arg != "geometric")
        schedule.explicit_points = parse_int_list(schedule_arg);
    auto series = correlate(a.payload, b.payload, schedule);
    std::ostringstream csv;
    csv << "n,A_n\n";
    for (std::size_t i = 0; i < series.sample_points.size(); ++i)
        csv << series.sample_points[i] << ',' << series.averages[i] << '\n';
    write_csv(out, csv.str());
    auto [lo, hi] = series.tail_range();
    std::printf("correlate: %zu samples, A_n(final) = %.6g, tail range [%.6g, %.6g]\n",
                series.sample_points.size(), series.last_average(), lo, hi);
    return kOk;
}

int run_correlate_sarnak(const std::string& scale_spec, std::int64_t n, const std::string& out) {
    Scale scale = parse_scale_or_throw(scale_spec, n);
    auto table = mobius_sieve(n);
    auto filling = mobius_fill(scale, n, table);
    auto check = strong_correlation_check(filling, table, n);
    if (!out.empty()) {
        auto x = filling.to_sequence();
        auto series = correlate(x, table.to_sequence());
        std::ostringstream csv;
        csv << "n,A_n\n";
        for (std::size_t i = 0; i < series.sample_points.size(); ++i)
            csv << series.sample_points[i] << ',' << series.averages[i] << '\n';
        write_csv(out, csv.str());
    }
    std::printf("sarnak: A_n = %.6f, bound 6/pi^2 - 2*rho = %.6f, rho in [%.8f, %.8f]\n",
                check.average, check.bound, check.rho_lower, check.rho_upper);
    std::printf("sarnak: verdict %s (tolerance %.3f)\n", check.holds ? "holds" : "FAILS",
                check.tolerance);
    return check.holds ? kOk : kVerificationFailed;
}

int run_census(const std::string& in, std::int64_t n_min, std::int64_t n_max,
               std::optional<double> zero_cap, const std::string& out) {
    auto file = read_sequence_file(in);
    std::ostringstream csv;
    csv << "n,count,entropy_estimate\n";
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        auto rep = block_census(file.payload, n, zero_cap);
        csv << n << ',' << rep.count << ',' << rep.entropy_estimate() << '\n';
    }
    write_csv(out, csv.str());
    std::printf("census: lengths %lld..%lld of %s written to %s\n",
                static_cast<long long>(n_min), static_cast<long long>(n_max), in.c_str(),
                out.c_str());
    return kOk;
}

// indicator-bearing readout for the scale-based lemma checks
PartialFilling readout_for_scale(const std::string& scale_spec, std::int64_t window) {
    Scale scale = parse_scale_or_throw(scale_spec, window);
    return build_readout(Sequence(static_cast<std::size_t>(window), 0), scale, window);
}

int run_verify(const std::string& lemma, const std::string& scale_spec, std::int64_t window,
               std::int64_t k, std::int64_t j_max, std::int64_t m, std::int64_t m_max,
               std::int64_t prime_limit, const std::string& periods_csv,
               const std::string& residues_csv, std::int64_t mult, std::int64_t offset,
               const std::string& progressions_csv, std::int64_t n) {
    bool ok = false;
    if (lemma == "shiftz1") {
        auto f = readout_for_scale(scale_spec, window);
        auto r = verify_zero_frequency(f, static_cast<std::size_t>(k));
        std::ostringstream m1, m2;
        m1 << r.measured;
        m2 << r.formula;
        std::printf("shiftz1: measured %s, formula %s\n", m1.str().c_str(), m2.str().c_str());
        ok = r.equal;
    } else if (lemma == "shiftz2") {
        auto f = readout_for_scale(scale_spec, window);
        ok = verify_replacement(f, static_cast<std::size_t>(k), j_max);
        std::printf("shiftz2: zeros of B_{k,0} persist in B_{k,j} for j <= %lld: %s\n",
                    static_cast<long long>(j_max), ok ? "yes" : "no");
    } else if (lemma == "shiftz5") {
        auto f = readout_for_scale(scale_spec, window);
        auto z = initial_indicator(f);
        auto pos = sparse_pattern_search(z, m);
        if (pos)
            std::printf("shiftz5: m=%lld pattern found at position %lld\n",
                        static_cast<long long>(m), static_cast<long long>(*pos));
        else
            std::printf("shiftz5: m=%lld pattern absent within window %lld\n",
                        static_cast<long long>(m), static_cast<long long>(window));
        ok = pos.has_value();
    } else if (lemma == "staszek1") {
        ok = density_independence_check(parse_int_list(periods_csv), parse_int_list(residues_csv));
        std::printf("staszek1: intersection density equals the product: %s\n", ok ? "yes" : "no");
    } else if (lemma == "staszek2") {
        auto primes = primes_up_to(prime_limit);
        auto r = tail_product_bound(k, static_cast<std::int64_t>(primes.size()), primes);
        std::printf("staszek2: lower estimate %.9f vs bound %.9f\n", r.lower_estimate, r.bound);
        ok = r.holds;
    } else if (lemma == "nowy") {
        std::vector<Progression> progressions;
        std::stringstream ss(progressions_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("progressions must be p:r pairs");
            progressions.push_back(
                {std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1))});
        }
        auto r = progression_hit_density(mult, offset, progressions, n);
        std::printf("nowy: empirical %.6f vs bound %.6f\n", r.empirical.to_double(), r.bound);
        ok = r.empirical.to_double() <= r.bound + 1e-2;
    } else if (lemma == "claim") {
        Scale scale = parse_scale_or_throw(scale_spec, window);
        auto ci = find_claim_indices(scale, static_cast<std::size_t>(m_max), window);
        std::printf("claim: k =");
        for (auto v : ci.k) std::printf(" %lld", static_cast<long long>(v));
        std::printf(" (%s after %lld steps)\n", ci.complete ? "complete" : "partial",
                    static_cast<long long>(ci.steps_simulated));
        ok = ci.complete;
        for (std::size_t i = 1; i < ci.k.size(); ++i)
            if (ci.k[i] <= ci.k[i - 1] + static_cast<std::int64_t>(i)) ok = false;
    } else {
        throw std::invalid_argument("unknown lemma '" + lemma + "'");
    }
    std::printf("verify %s: %s\n", lemma.c_str(), ok ? "HOLDS" : "FAILS");
    return ok ? kOk : kVerificationFailed;
}

int run_mixing(const std::string& in, const std::string& scale_spec, const std::string& plan_path,
               const std::string& auto_arg, bool invert, const std::string& out,
               const std::string& plan_out) {
    auto file = read_sequence_file(in);
    Sequence x = file.payload;
    const std::int64_t N = static_cast<std::int64_t>(x.size());

    std::string spec = scale_spec;
    if (spec.empty()) {
        auto it = file.metadata.find("scale");
        if (it == file.metadata.end())
            throw std::invalid_argument("no --scale and no scale in the input metadata");
        spec = it->second;
    }
    Scale scale = parse_scale_or_throw(spec, N);

    std::vector<WindowPlan> plans;
    if (!plan_path.empty()) {
        std::ifstream pin(plan_path);
        if (!pin) throw FormatError("plan file: cannot open '" + plan_path + "'");
        std::string line;
        while (std::getline(pin, line))
            if (!line.empty()) plans.push_back(WindowPlan::from_text(line));
        for (const auto& p : plans) x = apply_window_shift(x, p, invert);
    } else {
        // auto planning: "r:q[:anchor],..." applied in order
        std::stringstream ss(auto_arg);
        std::string item;
        std::size_t k = 1;
        while (std::getline(ss, item, ',')) {
            std::stringstream is(item);
            std::string r_s, q_s, a_s;
            std::getline(is, r_s, ':');
            std::getline(is, q_s, ':');
            std::int64_t anchor = std::getline(is, a_s, ':') ? std::stoll(a_s) : N / 2;
            auto plan = plan_step(x, k++, std::stoll(r_s), std::stoll(q_s), scale, plans, anchor);
            x = apply_window_shift(x, plan, invert);
            plans.push_back(plan);
        }
        if (plans.empty()) throw std::invalid_argument("either --plan or --auto is required");
    }

    SequenceFile result;
    result.alphabet = file.alphabet;
    result.payload = x;
    result.metadata = file.metadata;
    result.metadata["construction"] = "mixing";
    write_sequence_file(out, result);
    if (!plan_out.empty()) {
        std::ofstream pout(plan_out);
        for (const auto& p : plans) pout << p.to_text() << '\n';
    }
    std::printf("mixing: %zu plans, total density %.6f, wrote %s\n", plans.size(),
                total_density(plans), out.c_str());
    return kOk;
}

int run_reproduce_figures() {
    int failures = 0;
    auto diff = [&](const char* name, const std::string& got, const std::string& expect) {
        bool same = got == expect;
        std::printf("%s: %s\n", name, same ? "ok" : "MISMATCH");
        if (!same) {
            std::printf("  expected %s\n  got      %s\n", expect.c_str(), got.c_str());
            ++failures;
        }
    };

    auto f1 = build_block_scheme({{7, parse_block("0100")}}, 67);
    diff("figure-1 prefix", f1.render(),
         "0100***0100***0100***0100***0100***0100***0100***0100***0100***0100");

    auto f2 = build_block_scheme({{7, parse_block("0100")}, {6, parse_block("000100000")}}, 67);
    diff("figure-2 prefix", f2.render(),
         "0100000010010001000000100***0100***0100***0100000010010001000000100");

    auto s = Scale::parse("3^k", 100);
    auto f3 = build_readout(Sequence(40, 0), s, 35);
    std::string steps;
    for (std::int64_t i = 1; i <= 35; ++i) {
        if (i > 1) steps += ' ';
        steps += std::to_string(f3.step_of(i));
        if (f3.initial(i)) steps += 'b';
    }
    diff("readout diagram (step indices, b = initial)", steps,
         "1b 2b 3b 1 4b 5b 1 6b 7b 1 2 8b 1 9b 10b 1 11b 12b 1 2 13b 1 14b 15b 1 16b 17b 1 2 3 1 "
         "18b 19b 1 20b");

    return failures == 0 ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz sequence construction and analysis over adding-machine scales"};
    app.require_subcommand(1);

    // sieve
    auto* sieve = app.add_subcommand("sieve", "compute a Mobius table and write it as a sequence");
    std::int64_t sieve_n = 0, sieve_segment = std::int64_t(1) << 20;
    unsigned sieve_threads = std::max(1u, std::thread::hardware_concurrency());
    std::string sieve_out;
    sieve->add_option("--n-max", sieve_n, "table size")->required()->check(CLI::PositiveNumber);
    sieve->add_option("--segment-size", sieve_segment, "sieve segment length");
    sieve->add_option("--threads", sieve_threads, "worker threads");
    sieve->add_option("--out", sieve_out, "output sequence file")->required();

    // build block | build readout
    auto* build = app.add_subcommand("build", "construct a sequence");
    build->require_subcommand(1);
    auto* block = build->add_subcommand("block", "staged block scheme");
    std::string block_q, block_r, block_blocks = "auto", block_out;
    std::int64_t block_window = 0;
    block->add_option("--q", block_q, "comma list of q_k")->required();
    block->add_option("--r", block_r, "comma list of r_k (auto mode; default all 1)");
    block->add_option("--blocks", block_blocks, "'auto' or a file with one block per line");
    block->add_option("--window", block_window, "window length")
        ->required()
        ->check(CLI::PositiveNumber);
    block->add_option("--out", block_out, "output sequence file")->required();

    auto* readout = build->add_subcommand("readout", "first-free-position scheme");
    std::string ro_scale, ro_y = "mobius", ro_out, ro_zout;
    std::int64_t ro_window = 0;
    readout->add_option("--scale", ro_scale, "scale spec: list or rule")->required();
    readout->add_option("--y", ro_y, "mobius | example72 | file:PATH");
    readout->add_option("--window", ro_window, "window length")
        ->required()
        ->check(CLI::PositiveNumber);
    readout->add_option("--out", ro_out, "output sequence file")->required();
    readout->add_option("--z-out", ro_zout, "companion initial-indicator file");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "periodic-part density report");
    std::string an_in, an_scale, an_z, an_report, an_csv;
    std::int64_t an_banach = 0;
    analyze->add_option("--in", an_in, "input sequence file")->required();
    analyze->add_option("--scale", an_scale, "scale spec")->required();
    analyze->add_option("--z", an_z, "initial-indicator file (declared mode)");
    analyze->add_option("--banach", an_banach, "sub-window length for Banach estimates");
    analyze->add_option("--report", an_report, "report output path")->required();
    analyze->add_option("--csv", an_csv, "per-level CSV output path");

    // correlate
    auto* correlate_cmd = app.add_subcommand("correlate", "Cesaro correlation series");
    std::string co_a, co_b, co_schedule = "geometric", co_out, co_scale;
    std::int64_t co_n = 0;
    bool co_sarnak = false;
    correlate_cmd->add_option("--a", co_a, "first sequence file");
    correlate_cmd->add_option("--b", co_b, "second sequence file");
    correlate_cmd->add_option("--schedule", co_schedule, "'geometric' or comma list of n");
    correlate_cmd->add_option("--out", co_out, "CSV output path");
    correlate_cmd->add_flag("--sarnak", co_sarnak, "strong-correlation pipeline");
    correlate_cmd->add_option("--scale", co_scale, "scale spec (sarnak mode)");
    correlate_cmd->add_option("--n", co_n, "window (sarnak mode)");

    // census
    auto* census = app.add_subcommand("census", "distinct-block counts");
    std::string ce_in, ce_out;
    std::int64_t ce_min = 0, ce_max = 0;
    double ce_cap = -1.0;
    census->add_option("--in", ce_in, "input sequence file")->required();
    census->add_option("--n-min", ce_min, "smallest block length")->required();
    census->add_option("--n-max", ce_max, "largest block length")->required();
    census->add_option("--zero-cap", ce_cap, "count only blocks with zero-frequency <= cap");
    census->add_option("--out", ce_out, "CSV output path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "measured-vs-formula lemma checks");
    std::string ve_lemma, ve_scale = "3^k", ve_periods, ve_residues, ve_progressions;
    std::int64_t ve_window = 20000, ve_k = 1, ve_jmax = 1, ve_m = 1, ve_mmax = 3;
    std::int64_t ve_prime_limit = 1000000, ve_mult = 1, ve_offset = 0, ve_n = 100000;
    verify
        ->add_option("--lemma", ve_lemma, "shiftz1|shiftz2|shiftz5|staszek1|staszek2|nowy|claim")
        ->required();
    verify->add_option("--scale", ve_scale, "scale spec (shiftz*, claim)");
    verify->add_option("--window", ve_window, "window (shiftz*, claim)");
    verify->add_option("--k", ve_k, "level index (shiftz1, shiftz2, staszek2)");
    verify->add_option("--j-max", ve_jmax, "block count (shiftz2)");
    verify->add_option("--m", ve_m, "pattern size (shiftz5)");
    verify->add_option("--m-max", ve_mmax, "target m (claim)");
    verify->add_option("--prime-limit", ve_prime_limit, "prime cutoff (staszek2)");
    verify->add_option("--periods", ve_periods, "comma list (staszek1)");
    verify->add_option("--residues", ve_residues, "comma list (staszek1)");
    verify->add_option("--mult", ve_mult, "multiplier M (nowy)");
    verify->add_option("--offset", ve_offset, "offset r (nowy)");
    verify->add_option("--progressions", ve_progressions, "p:r pairs, comma separated (nowy)");
    verify->add_option("--n", ve_n, "scan length (nowy)");

    // mixing
    auto* mixing = app.add_subcommand("mixing", "window-shift conjugacy steps");
    std::string mi_in, mi_scale, mi_plan, mi_auto, mi_out, mi_plan_out;
    bool mi_invert = false;
    mixing->add_option("--in", mi_in, "input sequence file")->required();
    mixing->add_option("--scale", mi_scale, "scale spec (defaults to input metadata)");
    mixing->add_option("--plan", mi_plan, "plan file, one plan per line");
    mixing->add_option("--auto", mi_auto, "r:q[:anchor] steps, comma separated");
    mixing->add_flag("--invert", mi_invert, "apply inverse rotations");
    mixing->add_option("--out", mi_out, "output sequence file")->required();
    mixing->add_option("--plan-out", mi_plan_out, "write the applied plans");

    // reproduce-figures
    app.add_subcommand("reproduce-figures",
                       "rebuild the staged prefixes and diff against fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (sieve->parsed()) return run_sieve(sieve_n, sieve_segment, sieve_threads, sieve_out);
        if (block->parsed())
            return run_build_block(block_q, block_r, block_blocks, block_window, block_out);
        if (readout->parsed()) return run_build_readout(ro_scale, ro_y, ro_window, ro_out, ro_zout);
        if (analyze->parsed())
            return run_analyze(an_in, an_scale, an_z, an_banach, an_report, an_csv);
        if (correlate_cmd->parsed()) {
            if (co_sarnak) {
                if (co_scale.empty() || co_n <= 0)
                    throw std::invalid_argument("--sarnak needs --scale and --n");
                return run_correlate_sarnak(co_scale, co_n, co_out);
            }
            if (co_a.empty() || co_b.empty() || co_out.empty())
                throw std::invalid_argument("correlate needs --a, --b and --out");
            return run_correlate_files(co_a, co_b, co_schedule, co_out);
        }
        if (census->parsed())
            return run_census(ce_in, ce_min, ce_max,
                              ce_cap < 0 ? std::nullopt : std::optional<double>(ce_cap), ce_out);
        if (verify->parsed())
            return run_verify(ve_lemma, ve_scale, ve_window, ve_k, ve_jmax, ve_m, ve_mmax,
                              ve_prime_limit, ve_periods, ve_residues, ve_mult, ve_offset,
                              ve_progressions, ve_n);
        if (mixing->parsed())
            return run_mixing(mi_in, mi_scale, mi_plan, mi_auto, mi_invert, mi_out, mi_plan_out);
        if (app.got_subcommand("reproduce-figures")) return run_reproduce_figures();
        std::fprintf(stderr, "no subcommand selected\n");
        return kUsage;
    } catch (const ScaleSpecError& e) {
        std::fprintf(stderr, "scale spec error: %s\n", e.what());
        return kBadScale;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "file format error: %s\n", e.what());
        return kBadFile;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "argument error: %s\n", e.what());
        return kBadArgument;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInternal;
    }
}
