// Command-line harness: single QLS runs, k-sweeps over random ensembles, the
// classical baseline, and report verification.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qls/experiment.hpp"

namespace {

struct GraphSourceFlags {
    std::string graph_path;
    std::string random_spec;  // "N,D"
};

void add_graph_source(CLI::App* cmd, GraphSourceFlags& flags) {
    auto* graph = cmd->add_option("--graph", flags.graph_path, "edge-list file (one \"u v\" per line)");
    auto* random = cmd->add_option("--random", flags.random_spec,
                                   "generate a random D-regular graph: N,D");
    graph->excludes(random);
    random->excludes(graph);
}

std::pair<int, int> parse_random_spec(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("--random expects N,D");
    }
    try {
        const int n = std::stoi(spec.substr(0, comma));
        const int d = std::stoi(spec.substr(comma + 1));
        return {n, d};
    } catch (const std::exception&) {
        throw std::invalid_argument("--random expects integers N,D");
    }
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) {
            throw std::invalid_argument("--k expects INT[,INT...]");
        }
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("--k expects integers");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

qls::RecombineMode parse_recombine(const std::string& mode) {
    if (mode == "clamped") {
        return qls::RecombineMode::Clamped;
    }
    if (mode == "paper-literal") {
        return qls::RecombineMode::PaperLiteral;
    }
    throw std::invalid_argument("--recombine expects clamped or paper-literal");
}

qls::Graph load_graph(const GraphSourceFlags& flags, std::uint64_t master_seed) {
    if (!flags.graph_path.empty()) {
        return qls::from_edge_list(qls::read_text_file(flags.graph_path));
    }
    if (!flags.random_spec.empty()) {
        const auto [n, d] = parse_random_spec(flags.random_spec);
        qls::Rng rng(qls::derive_seed(master_seed, qls::kGraphStream, 0));
        return qls::random_regular(n, d, rng);
    }
    throw std::invalid_argument("need --graph PATH or --random N,D");
}

// Sweep CSV paths derived from the JSON output path: base_curve.csv and
// base_final.csv next to base.json.
std::pair<std::string, std::string> csv_paths(const std::string& out_path) {
    std::string base = out_path;
    const std::string ext = ".json";
    if (base.size() > ext.size() && base.compare(base.size() - ext.size(), ext.size(), ext) == 0) {
        base.resize(base.size() - ext.size());
    }
    return {base + "_curve.csv", base + "_final.csv"};
}

struct CommonFlags {
    GraphSourceFlags source;
    std::uint64_t seed = 1;
    int ns = 2;
    std::string k_list = "4";
    int rounds = 5;
    int shots = 1024;
    int trials = 1;
    int instances = 1;
    std::string recombine = "clamped";
    int opt_max_evals = 0;
    int threads = 0;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool sweep) {
    add_graph_source(cmd, flags.source);
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--ns", flags.ns, "neighborhood radius");
    cmd->add_option("--k", flags.k_list, sweep ? "partial-mixer counts: INT[,INT...]"
                                               : "max partial mixers per neighborhood");
    cmd->add_option("--rounds", flags.rounds, "permutation rounds per neighborhood");
    cmd->add_option("--shots", flags.shots, "samples per extraction (0 = exact mode)");
    cmd->add_option("--trials", flags.trials, "independent executions per graph and k");
    if (sweep) {
        cmd->add_option("--instances", flags.instances, "random graph instances");
    }
    cmd->add_option("--recombine", flags.recombine, "clamped | paper-literal");
    cmd->add_option("--opt-max-evals", flags.opt_max_evals,
                    "optimizer evaluation budget (0 = default)");
    cmd->add_option("--threads", flags.threads, "parallel cells (0 = hardware)");
    cmd->add_option("--out", flags.out_path, "output path for the JSON report");
}

qls::ExperimentSpec to_spec(const CommonFlags& flags, bool single_k) {
    qls::ExperimentSpec spec;
    spec.graph_path = flags.source.graph_path;
    if (!flags.source.random_spec.empty()) {
        const auto [n, d] = parse_random_spec(flags.source.random_spec);
        spec.use_generator = true;
        spec.gen_n = n;
        spec.gen_degree = d;
    }
    spec.instances = flags.instances;
    spec.trials = flags.trials;
    spec.k_values = parse_k_list(flags.k_list);
    if (single_k && spec.k_values.size() != 1) {
        throw std::invalid_argument("run expects a single k; use the sweep command for lists");
    }
    spec.ns = flags.ns;
    spec.rounds = flags.rounds;
    spec.shots = flags.shots;
    spec.master_seed = flags.seed;
    spec.recombine = parse_recombine(flags.recombine);
    spec.opt_max_evals = flags.opt_max_evals;
    spec.threads = flags.threads;
    return spec;
}

void print_final_summary(const qls::Json& report) {
    for (const auto& row : report["aggregates"]["final_by_k"]) {
        std::cout << "k=" << row["k"].get<int>()
                  << "  mean_final_R_BH=" << qls::format_fixed(row["mean_final_ratio"].get<double>())
                  << "  std=" << qls::format_fixed(row["std_final_ratio"].get<double>()) << "\n";
    }
}

int cmd_run(const CommonFlags& flags) {
    const qls::ExperimentSpec spec = to_spec(flags, /*single_k=*/true);
    const qls::ExperimentResult result = qls::run_experiment(spec);

    const auto& instance = result.report["instances"][0];
    std::cout << "n=" << instance["n"].get<int>() << "  E_BH=" << instance["e_bh"].get<int>()
              << "\n";
    for (const auto& run : instance["runs"]) {
        std::cout << "trial " << run["trial"].get<int>() << ": E_QLS=" << run["e_qls"].get<int>()
                  << "  R_BH=" << qls::format_fixed(run["final_ratio"].get<double>()) << "\n";
    }
    print_final_summary(result.report);
    if (!flags.out_path.empty()) {
        qls::write_text_file(flags.out_path, result.report.dump(2) + "\n");
        std::cout << "report: " << flags.out_path << "\n";
    }
    return 0;
}

int cmd_sweep(const CommonFlags& flags) {
    const qls::ExperimentSpec spec = to_spec(flags, /*single_k=*/false);
    const qls::ExperimentResult result = qls::run_experiment(spec);
    print_final_summary(result.report);
    if (!flags.out_path.empty()) {
        qls::write_text_file(flags.out_path, result.report.dump(2) + "\n");
        const auto [curve_path, final_path] = csv_paths(flags.out_path);
        qls::write_text_file(curve_path, result.curve_csv);
        qls::write_text_file(final_path, result.final_csv);
        std::cout << "report: " << flags.out_path << "\ncurve csv: " << curve_path
                  << "\nfinal csv: " << final_path << "\n";
    }
    return 0;
}

int cmd_baseline(const GraphSourceFlags& source, std::uint64_t seed, const std::string& out_path) {
    const qls::Graph g = load_graph(source, seed);
    const qls::BaselineResult result = qls::boppana_halldorsson(g);
    if (!qls::is_independent_set(g, result.independent_set)) {
        throw std::logic_error("baseline produced a dependent set");
    }
    std::cout << result.size << "\n";
    for (std::size_t i = 0; i < result.independent_set.size(); ++i) {
        std::cout << result.independent_set[i]
                  << (i + 1 == result.independent_set.size() ? "\n" : " ");
    }
    if (!out_path.empty()) {
        qls::Json report{{"schema", qls::kReportSchemaVersion},
                         {"e_bh", result.size},
                         {"independent_set", result.independent_set}};
        qls::write_text_file(out_path, report.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const std::string& report_path) {
    const qls::Json report = qls::Json::parse(qls::read_text_file(report_path));
    std::string why;
    if (qls::verify_report(report, &why)) {
        std::cout << "report consistent\n";
        return 0;
    }
    std::cerr << "report inconsistent: " << why << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum local search for maximum independent set"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run QLS on a single graph");
    add_common(run, run_flags, /*sweep=*/false);

    CommonFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "k-sweep over a random graph ensemble");
    add_common(sweep, sweep_flags, /*sweep=*/true);

    GraphSourceFlags baseline_source;
    std::uint64_t baseline_seed = 1;
    std::string baseline_out;
    CLI::App* baseline = app.add_subcommand("baseline", "Boppana-Halldorsson independent set");
    add_graph_source(baseline, baseline_source);
    baseline->add_option("--seed", baseline_seed, "seed for --random generation");
    baseline->add_option("--out", baseline_out, "optional JSON output path");

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "check a report's aggregate consistency");
    verify->add_option("report", verify_path, "report JSON path")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            return cmd_run(run_flags);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_flags);
        }
        if (baseline->parsed()) {
            return cmd_baseline(baseline_source, baseline_seed, baseline_out);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_path);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
