// qna: snapshot a threshold network, reconstruct its realized code sets with
// Grover search, and classify its dynamic potential with the two-part
// Deutsch-Jozsa protocol. Reports are single JSON objects on stdout;
// diagnostics go to stderr.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qna/qna.hpp>

namespace {

using qna::Json;

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct LoadedInput {
    std::string path;
    Json doc;
    Json record; // {"path", "digest"} for the report
};

LoadedInput load_input(const std::string& path) {
    const std::string bytes = qna::read_file(path);
    Json doc = qna::parse_json_text(bytes, path);
    Json record{{"path", path}, {"digest", "fnv1a64:" + qna::fnv1a64_hex(bytes)}};
    return LoadedInput{path, std::move(doc), std::move(record)};
}

void emit(const Json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qna::ValidationError("cannot write '" + out_path + "'");
    out << doc.dump(2) << "\n";
}

Json dj_run_json(const qna::DJRunResult& run) {
    Json j{{"p_zero", run.p_zero}, {"constant", run.verdict_constant}};
    if (run.shots > 0) {
        j["shots"] = run.shots;
        j["all_zero_shots"] = run.all_zero_shots;
        if (run.false_constant_probability) {
            j["false_constant_probability"] = *run.false_constant_probability;
        }
    }
    return j;
}

Json classification_json(const qna::Classification& c) {
    Json j{{"verdict", qna::to_string(c.verdict)},
           {"runs",
            Json{{"fill_zero", dj_run_json(c.run_fill_zero)},
                 {"fill_one", dj_run_json(c.run_fill_one)}}}};
    if (c.disambiguation_note) j["disambiguation_note"] = *c.disambiguation_note;
    return j;
}

Json sets_summary_json(const qna::RealizedSets& sets) {
    Json mult = Json::object();
    for (const auto& [code, count] : sets.multiplicity) mult[std::to_string(code)] = count;
    return Json{{"bits", sets.bit_width},
                {"realized_count", sets.realized.size()},
                {"complement_count", sets.complement.size()},
                {"realized", sets.realized},
                {"multiplicities", std::move(mult)}};
}

Json membership_json(const qna::MembershipReport& report) {
    Json targets = Json::array();
    for (const auto& e : report.entries) {
        targets.push_back(Json{{"code", e.target},
                               {"present", e.present},
                               {"iterations", e.iterations},
                               {"attempts", e.attempts},
                               {"oracle_calls", e.oracle_calls}});
    }
    return Json{{"mode", qna::to_string(report.mode)},
                {"repetitions", report.repetitions},
                {"search_space", report.search_space},
                {"targets", std::move(targets)},
                {"total_oracle_calls", report.total_oracle_calls}};
}

int run_gen(int nodes, double density, double weight_min, double weight_max, double threshold,
            double range_min, double range_max, std::uint64_t seed, const std::string& out_path) {
    if (nodes < 1) throw qna::ValidationError("--nodes must be >= 1");
    if (density < 0.0 || density > 1.0) throw qna::ValidationError("--density must be in [0, 1]");
    if (weight_max < weight_min) throw qna::ValidationError("weight range is empty");
    qna::SeededRng rng(seed);
    qna::Network net;
    net.node_count = nodes;
    net.threshold = threshold;
    net.range_min = range_min;
    net.range_max = range_max;
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            if (i == j) continue;
            if (rng.next_unit() < density) {
                net.edges.push_back({i, j, weight_min + (weight_max - weight_min) * rng.next_unit()});
            }
        }
    }
    net.validate();
    emit(qna::network_to_json(net), out_path);
    return 0;
}

int run_evolve(const std::string& net_path, int steps, const std::string& init,
               std::uint64_t seed, int scale, int bits, const std::string& out_path) {
    if (steps < 0) throw qna::ValidationError("--steps must be >= 0");
    const qna::Network net = qna::network_from_json(load_input(net_path).doc);
    const qna::Encoding encoding =
        bits > 0 ? qna::Encoding::full_range(bits, net.range_min, net.range_max)
                 : qna::Encoding(net.range_min, net.range_max, scale);
    qna::NodeStates initial(static_cast<std::size_t>(net.node_count), 0);
    if (init == "ones") {
        std::fill(initial.begin(), initial.end(), std::uint8_t{1});
    } else if (init == "random") {
        qna::SeededRng rng(seed);
        for (auto& bit : initial) bit = rng.next_unit() < 0.5 ? 1 : 0;
    } else if (init != "zeros") {
        throw qna::ValidationError("--init must be one of random, ones, zeros");
    }
    const qna::Snapshot snap = qna::evolve(net, initial, steps, encoding);
    emit(qna::snapshot_to_json(snap), out_path);
    return 0;
}

int run_sets(const std::string& snap_path, const std::string& backend, const std::string& mode,
             int reps, std::uint64_t seed) {
    WallTimer timer;
    const LoadedInput input = load_input(snap_path);
    const qna::Snapshot snap = qna::snapshot_from_json(input.doc);
    Json report{{"command", "sets"},
                {"inputs", Json::array({input.record})},
                {"seed", seed},
                {"backend", backend},
                {"encoding", Json{{"scale", snap.encoding.scale()}, {"bits", snap.encoding.bit_width()}}}};
    if (backend == "classical") {
        report["sets"] = sets_summary_json(qna::realized_sets_classical(snap));
    } else if (backend == "grover") {
        if (mode != "list" && mode != "domain") {
            throw qna::ValidationError("--grover-mode must be list or domain");
        }
        qna::GroverConfig config;
        config.mode = mode == "domain" ? qna::GroverMode::Domain : qna::GroverMode::List;
        config.repetitions = reps;
        config.seed = seed;
        const qna::MembershipReport membership = qna::sweep_membership(snap, config);
        report["sets"] = sets_summary_json(qna::realized_sets_from_report(membership, snap));
        report["membership"] = membership_json(membership);
        const double n_space = static_cast<double>(membership.search_space);
        const double worst_rounds = std::floor(std::numbers::pi / 4.0 * std::sqrt(n_space));
        const double code_space = static_cast<double>(std::uint64_t{1} << membership.bit_width);
        report["query_cost"] =
            Json{{"classical_scan", code_space * static_cast<double>(snap.codes.size())},
                 {"grover_oracle_calls", membership.total_oracle_calls},
                 {"grover_worst_case_bound", code_space * reps * worst_rounds}};
    } else {
        throw qna::ValidationError("--backend must be classical or grover");
    }
    report["wall_time_ms"] = timer.ms();
    std::cout << report.dump(2) << "\n";
    return 0;
}

int run_classify(const std::string& snap_path, double threshold, const std::string& backend,
                 const std::string& mode, int shots, std::uint64_t seed) {
    WallTimer timer;
    const LoadedInput input = load_input(snap_path);
    const qna::Snapshot snap = qna::snapshot_from_json(input.doc);
    if (threshold < 0.0 || threshold > 1.0) {
        throw qna::ValidationError("--threshold must be in the normalized range [0, 1]");
    }
    const qna::Code threshold_code = snap.encoding.encode(threshold);
    const qna::RealizedSets sets = qna::realized_sets_classical(snap);

    Json report{{"command", "classify"},
                {"inputs", Json::array({input.record})},
                {"seed", seed},
                {"backend", backend},
                {"mode", mode},
                {"encoding", Json{{"scale", snap.encoding.scale()}, {"bits", snap.encoding.bit_width()}}},
                {"threshold", Json{{"value", threshold}, {"code", threshold_code}}},
                {"sets", Json{{"realized_count", sets.realized.size()},
                              {"complement_count", sets.complement.size()}}}};

    const qna::DJMode dj_mode = mode == "sampled" ? qna::DJMode::Sampled : qna::DJMode::Exact;
    if (mode != "exact" && mode != "sampled") {
        throw qna::ValidationError("--mode must be exact or sampled");
    }

    std::optional<qna::Verdict> quantum_verdict;
    std::optional<qna::Verdict> classical_verdict;
    Json classification = Json::object();
    if (backend == "quantum" || backend == "both") {
        qna::SeededRng rng(seed);
        const qna::Classification c =
            qna::classify_quantum(snap, threshold_code, sets, dj_mode, rng, shots);
        Json cj = classification_json(c);
        if (dj_mode == qna::DJMode::Sampled) cj["shots"] = shots;
        classification["quantum"] = std::move(cj);
        quantum_verdict = c.verdict;
    }
    if (backend == "classical" || backend == "both") {
        const qna::Classification c = qna::classify_classical(snap, threshold_code);
        classification["classical"] = classification_json(c);
        classical_verdict = c.verdict;
    }
    if (classification.empty()) {
        throw qna::ValidationError("--backend must be quantum, classical, or both");
    }
    report["classification"] = std::move(classification);

    int exit_code = 0;
    if (quantum_verdict && classical_verdict) {
        const bool agree = *quantum_verdict == *classical_verdict;
        report["agreement"] = agree;
        if (!agree) exit_code = 4;
    }
    report["wall_time_ms"] = timer.ms();
    std::cout << report.dump(2) << "\n";
    if (exit_code != 0) {
        std::cerr << "backend disagreement: quantum=" << qna::to_string(*quantum_verdict)
                  << " classical=" << qna::to_string(*classical_verdict) << "\n";
    }
    return exit_code;
}

int run_estimate(double population, double active, int bits, double list_size, int reps) {
    WallTimer timer;
    if (population < 0) throw qna::ValidationError("--population must be >= 0");
    if (active < 0 || active > population) {
        throw qna::ValidationError("--active must be in [0, population]");
    }
    if (bits < 1 || bits > 24) throw qna::ValidationError("--bits must be in [1, 24]");
    if (list_size < 1) list_size = std::max(population, 1.0);

    // log10 of C(population, active) via log-gamma.
    const double log10_combinations =
        (std::lgamma(population + 1.0) - std::lgamma(active + 1.0) -
         std::lgamma(population - active + 1.0)) /
        std::numbers::ln10;

    double padded = 2.0;
    while (padded < list_size) padded *= 2.0;
    if (list_size <= 1.0) padded = 1.0;
    const double code_space = static_cast<double>(std::uint64_t{1} << bits);
    const double worst_rounds = std::floor(std::numbers::pi / 4.0 * std::sqrt(padded));
    const double classical_scan = code_space * list_size;
    const double grover_calls = code_space * reps * worst_rounds;

    Json report{{"command", "estimate"},
                {"inputs", Json::array()},
                {"population", population},
                {"active", active},
                {"bits", bits},
                {"list_size", list_size},
                {"repetitions", reps},
                {"log10_combinations", log10_combinations},
                {"query_cost", Json{{"classical_scan", classical_scan},
                                    {"grover_oracle_calls", grover_calls},
                                    {"speedup", grover_calls > 0 ? classical_scan / grover_calls : 0.0}}}};
    report["wall_time_ms"] = timer.ms();
    std::cout << report.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum inference of threshold-network dynamic potential"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a seeded random network document");
    int gen_nodes = 0;
    double gen_density = 0.0;
    double gen_wmin = 0.0, gen_wmax = 1.0;
    double gen_threshold = 0.5;
    double gen_rmin = 0.0, gen_rmax = 1.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--nodes", gen_nodes, "Node count")->required();
    gen->add_option("--density", gen_density, "Edge probability per ordered pair")->required();
    gen->add_option("--weight-min", gen_wmin, "Minimum edge weight");
    gen->add_option("--weight-max", gen_wmax, "Maximum edge weight");
    gen->add_option("--threshold", gen_threshold, "Firing threshold");
    gen->add_option("--range-min", gen_rmin, "Summation range minimum");
    gen->add_option("--range-max", gen_rmax, "Summation range maximum");
    gen->add_option("--seed", gen_seed, "Random seed")->envname("QNA_SEED");
    gen->add_option("-o,--output", gen_out, "Write the document here instead of stdout");

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Run the dynamics and emit a snapshot document");
    std::string evolve_net;
    int evolve_steps = 0;
    std::string evolve_init = "random";
    std::uint64_t evolve_seed = 0;
    int evolve_scale = 100;
    int evolve_bits = 0;
    std::string evolve_out;
    evolve->add_option("network", evolve_net, "Network JSON file")->required();
    evolve->add_option("--steps", evolve_steps, "Number of update steps")->required();
    evolve->add_option("--init", evolve_init, "Initial firing state: random, ones, zeros");
    evolve->add_option("--seed", evolve_seed, "Random seed for --init random")->envname("QNA_SEED");
    auto* scale_opt = evolve->add_option("--scale", evolve_scale, "Quantization steps above zero");
    evolve->add_option("--bits", evolve_bits, "Full-capacity bit width (scale = 2^bits - 1)")
        ->envname("QNA_BITS")
        ->excludes(scale_opt);
    evolve->add_option("-o,--output", evolve_out, "Write the document here instead of stdout");

    // sets
    auto* sets = app.add_subcommand("sets", "Partition the code space into realized and absent codes");
    std::string sets_snap;
    std::string sets_backend = "classical";
    std::string sets_mode = "list";
    int sets_reps = 3;
    std::uint64_t sets_seed = 0;
    sets->add_option("snapshot", sets_snap, "Snapshot JSON file")->required();
    sets->add_option("--backend", sets_backend, "classical or grover");
    sets->add_option("--grover-mode", sets_mode, "list or domain search space");
    sets->add_option("--reps", sets_reps, "Verification re-runs per target")->check(CLI::PositiveNumber);
    sets->add_option("--seed", sets_seed, "Random seed")->envname("QNA_SEED");

    // classify
    auto* classify = app.add_subcommand("classify", "Classify the snapshot as quiescent, epileptic, or sustaining");
    std::string cls_snap;
    double cls_threshold = 0.0;
    std::string cls_backend = "both";
    std::string cls_mode = "exact";
    int cls_shots = 64;
    std::uint64_t cls_seed = 0;
    classify->add_option("snapshot", cls_snap, "Snapshot JSON file")->required();
    classify->add_option("--threshold", cls_threshold, "Firing threshold in normalized units")->required();
    classify->add_option("--backend", cls_backend, "quantum, classical, or both");
    classify->add_option("--mode", cls_mode, "exact or sampled readout");
    classify->add_option("--shots", cls_shots, "Measurement shots in sampled mode")->check(CLI::PositiveNumber);
    classify->add_option("--seed", cls_seed, "Random seed")->envname("QNA_SEED");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Encoding-space size and query-cost comparison");
    double est_population = 0.0;
    double est_active = 0.0;
    int est_bits = 7;
    double est_list = 0.0;
    int est_reps = 3;
    estimate->add_option("--population", est_population, "Number of nodes")->required();
    estimate->add_option("--active", est_active, "Number of simultaneously firing nodes")->required();
    estimate->add_option("--bits", est_bits, "Code bit width")->envname("QNA_BITS");
    estimate->add_option("--list-size", est_list, "Snapshot list length (defaults to population)");
    estimate->add_option("--reps", est_reps, "Verification re-runs per target")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            return run_gen(gen_nodes, gen_density, gen_wmin, gen_wmax, gen_threshold, gen_rmin,
                           gen_rmax, gen_seed, gen_out);
        }
        if (evolve->parsed()) {
            return run_evolve(evolve_net, evolve_steps, evolve_init, evolve_seed, evolve_scale,
                              evolve_bits, evolve_out);
        }
        if (sets->parsed()) {
            return run_sets(sets_snap, sets_backend, sets_mode, sets_reps, sets_seed);
        }
        if (classify->parsed()) {
            return run_classify(cls_snap, cls_threshold, cls_backend, cls_mode, cls_shots, cls_seed);
        }
        if (estimate->parsed()) {
            return run_estimate(est_population, est_active, est_bits, est_list, est_reps);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qna::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const qna::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
