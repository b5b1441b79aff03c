// Experiment harness: single runs, k-sweeps over graph ensembles, aggregate
// curves, and JSON/CSV emission. All randomness fans out from one master seed
// through counter-based derivation, so ensembles reproduce piecewise no matter
// how cells are scheduled.
#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qls/baseline.hpp"
#include "qls/graph.hpp"
#include "qls/qls.hpp"
#include "qls/random.hpp"

namespace qls {

using Json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

// Seed-stream tags for derive_seed.
inline constexpr std::uint64_t kGraphStream = 0x67726170;  // "grap"
inline constexpr std::uint64_t kTrialStream = 0x7472696c;  // "tril"

struct ExperimentSpec {
    std::string graph_path;  // edge-list file; empty means use the generator
    bool use_generator = false;
    int gen_n = 0;
    int gen_degree = 0;

    int instances = 1;
    int trials = 1;
    std::vector<int> k_values{4};
    int ns = 2;
    int rounds = 5;
    int shots = 1024;
    std::uint64_t master_seed = 1;
    RecombineMode recombine = RecombineMode::Clamped;
    int opt_max_evals = 0;  // 0 = optimizer default
    int threads = 0;        // parallel cells; 0 = hardware concurrency

    QlsConfig qls_config(int k) const {
        QlsConfig cfg;
        cfg.ns = ns;
        cfg.k = k;
        cfg.rounds = rounds;
        cfg.shots = shots;
        cfg.recombine = recombine;
        cfg.optimizer.max_evals = opt_max_evals;
        return cfg;
    }
};

inline void validate(const ExperimentSpec& spec) {
    if (spec.instances < 1 || spec.trials < 1) {
        throw std::invalid_argument("experiment: instances and trials must be >= 1");
    }
    if (spec.k_values.empty()) {
        throw std::invalid_argument("experiment: k list must be non-empty");
    }
    if (!spec.use_generator && spec.graph_path.empty()) {
        throw std::invalid_argument("experiment: need a graph file or generator parameters");
    }
    if (!spec.use_generator && spec.instances != 1) {
        throw std::invalid_argument("experiment: a fixed graph file allows only one instance");
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

// Locale-independent fixed-point rendering with '.' decimal separator.
inline std::string format_fixed(double value, int precision = 6) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed,
                                   precision);
    return std::string(buf, res.ptr);
}

namespace detail {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
};

inline MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) {
        return out;
    }
    for (double v : values) {
        out.mean += v;
    }
    out.mean /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) {
        acc += (v - out.mean) * (v - out.mean);
    }
    out.std = std::sqrt(acc / static_cast<double>(values.size()));
    return out;
}

// Per-iteration ratio curve of one run, padded to `length` with the final
// value (the global set stops changing once the run has terminated).
inline std::vector<double> padded_curve(const std::vector<IterationRecord>& trace,
                                        std::size_t length) {
    std::vector<double> curve;
    curve.reserve(length);
    for (const auto& rec : trace) {
        curve.push_back(rec.running_ratio);
    }
    const double last = curve.empty() ? 0.0 : curve.back();
    while (curve.size() < length) {
        curve.push_back(last);
    }
    return curve;
}

inline void run_cells_parallel(int cell_count, int threads, const std::function<void(int)>& work) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) {
        hw = 1;
    }
    const int workers = std::min(cell_count, threads > 0 ? threads : hw);
    if (workers <= 1) {
        for (int i = 0; i < cell_count; ++i) {
            work(i);
        }
        return;
    }
    std::atomic<int> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const int i = cursor.fetch_add(1);
                if (i >= cell_count) {
                    return;
                }
                work(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace detail

struct ExperimentResult {
    Json report;
    std::string curve_csv;  // k,iteration,mean_ratio,std_ratio
    std::string final_csv;  // k,mean_final_ratio,std_final_ratio
};

inline Json iteration_to_json(const IterationRecord& rec) {
    return Json{{"iteration", rec.iteration},
                {"root", rec.root},
                {"neighborhood_size", rec.neighborhood_size},
                {"active_mixers", rec.active_mixers},
                {"round_best_hw", rec.round_best_hw},
                {"nodes_added", rec.nodes_added},
                {"global_size", rec.global_size},
                {"running_ratio", rec.running_ratio},
                {"objective_evals", rec.objective_evals}};
}

// Runs the full instances x k x trials grid and assembles the schema-1 report
// plus the two aggregate CSV documents.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
    validate(spec);

    struct Instance {
        Graph graph;
        std::uint64_t graph_seed = 0;
        int e_bh = 0;
    };
    std::vector<Instance> instances(spec.instances);
    for (int i = 0; i < spec.instances; ++i) {
        if (spec.use_generator) {
            instances[i].graph_seed = derive_seed(spec.master_seed, kGraphStream, i);
            Rng rng(instances[i].graph_seed);
            instances[i].graph = random_regular(spec.gen_n, spec.gen_degree, rng);
        } else {
            instances[i].graph = from_edge_list(read_text_file(spec.graph_path));
        }
        instances[i].e_bh = boppana_halldorsson(instances[i].graph).size;
    }

    struct Cell {
        int instance = 0;
        int k_index = 0;
        int trial = 0;
        std::uint64_t seed = 0;
        RunResult run;
    };
    const int k_count = static_cast<int>(spec.k_values.size());
    std::vector<Cell> cells(static_cast<std::size_t>(spec.instances) * k_count * spec.trials);
    int idx = 0;
    for (int i = 0; i < spec.instances; ++i) {
        for (int kj = 0; kj < k_count; ++kj) {
            for (int t = 0; t < spec.trials; ++t) {
                cells[idx].instance = i;
                cells[idx].k_index = kj;
                cells[idx].trial = t;
                cells[idx].seed = derive_seed(spec.master_seed, kTrialStream, i, kj, t);
                ++idx;
            }
        }
    }
    detail::run_cells_parallel(static_cast<int>(cells.size()), spec.threads, [&](int c) {
        Cell& cell = cells[c];
        Rng rng(cell.seed);
        cell.run = run_qls(instances[cell.instance].graph, spec.qls_config(spec.k_values[cell.k_index]),
                           rng);
    });

    Json config{{"source", spec.use_generator ? "random" : "file"},
                {"graph_path", spec.graph_path},
                {"n", spec.use_generator ? spec.gen_n : instances[0].graph.node_count()},
                {"degree", spec.use_generator ? spec.gen_degree : -1},
                {"instances", spec.instances},
                {"trials", spec.trials},
                {"k_values", spec.k_values},
                {"ns", spec.ns},
                {"rounds", spec.rounds},
                {"shots", spec.shots},
                {"seed", spec.master_seed},
                {"recombine", spec.recombine == RecombineMode::Clamped ? "clamped" : "paper-literal"},
                {"opt_max_evals", spec.opt_max_evals}};

    Json instances_json = Json::array();
    for (int i = 0; i < spec.instances; ++i) {
        Json runs = Json::array();
        for (const Cell& cell : cells) {
            if (cell.instance != i) {
                continue;
            }
            Json iterations = Json::array();
            for (const auto& rec : cell.run.trace) {
                iterations.push_back(iteration_to_json(rec));
            }
            const int e_qls = static_cast<int>(cell.run.solution.selected.size());
            runs.push_back(Json{{"k", spec.k_values[cell.k_index]},
                                {"trial", cell.trial},
                                {"seed", cell.seed},
                                {"e_qls", e_qls},
                                {"final_ratio", instances[i].e_bh > 0
                                                    ? bh_ratio(e_qls, instances[i].e_bh)
                                                    : 0.0},
                                {"selected", std::vector<int>(cell.run.solution.selected.begin(),
                                                              cell.run.solution.selected.end())},
                                {"iterations", iterations}});
        }
        instances_json.push_back(Json{{"instance", i},
                                      {"graph_seed", instances[i].graph_seed},
                                      {"n", instances[i].graph.node_count()},
                                      {"edges", instances[i].graph.edge_count()},
                                      {"e_bh", instances[i].e_bh},
                                      {"runs", runs}});
    }

    // Aggregates per k: final-ratio statistics and the padded per-iteration
    // mean curve across all (instance, trial) cells.
    Json final_by_k = Json::array();
    Json curve_by_k = Json::array();
    std::string curve_csv = "k,iteration,mean_ratio,std_ratio\n";
    std::string final_csv = "k,mean_final_ratio,std_final_ratio\n";
    for (int kj = 0; kj < k_count; ++kj) {
        std::vector<const Cell*> group;
        std::size_t max_len = 0;
        for (const Cell& cell : cells) {
            if (cell.k_index == kj) {
                group.push_back(&cell);
                max_len = std::max(max_len, cell.run.trace.size());
            }
        }
        std::vector<double> finals;
        for (const Cell* cell : group) {
            const int e_bh = instances[cell->instance].e_bh;
            const int e_qls = static_cast<int>(cell->run.solution.selected.size());
            finals.push_back(e_bh > 0 ? bh_ratio(e_qls, e_bh) : 0.0);
        }
        const auto fs = detail::mean_std(finals);
        final_by_k.push_back(Json{{"k", spec.k_values[kj]},
                                  {"mean_final_ratio", fs.mean},
                                  {"std_final_ratio", fs.std}});
        final_csv += std::to_string(spec.k_values[kj]) + "," + format_fixed(fs.mean) + "," +
                     format_fixed(fs.std) + "\n";

        std::vector<std::vector<double>> curves;
        curves.reserve(group.size());
        for (const Cell* cell : group) {
            curves.push_back(detail::padded_curve(cell->run.trace, max_len));
        }
        for (std::size_t it = 0; it < max_len; ++it) {
            std::vector<double> column;
            column.reserve(curves.size());
            for (const auto& curve : curves) {
                column.push_back(curve[it]);
            }
            const auto cs = detail::mean_std(column);
            curve_by_k.push_back(Json{{"k", spec.k_values[kj]},
                                      {"iteration", static_cast<int>(it) + 1},
                                      {"mean_ratio", cs.mean},
                                      {"std_ratio", cs.std}});
            curve_csv += std::to_string(spec.k_values[kj]) + "," + std::to_string(it + 1) + "," +
                         format_fixed(cs.mean) + "," + format_fixed(cs.std) + "\n";
        }
    }

    ExperimentResult result;
    result.report = Json{{"schema", kReportSchemaVersion},
                         {"config", config},
                         {"instances", instances_json},
                         {"aggregates", Json{{"final_by_k", final_by_k}, {"curve_by_k", curve_by_k}}}};
    result.curve_csv = std::move(curve_csv);
    result.final_csv = std::move(final_csv);
    return result;
}

// Recomputes every aggregate row from the per-trial traces embedded in the
// report and checks it against the stored value. Returns false (with a reason)
// on any mismatch.
inline bool verify_report(const Json& report, std::string* why = nullptr) {
    auto fail = [&](const std::string& reason) {
        if (why != nullptr) {
            *why = reason;
        }
        return false;
    };
    if (!report.contains("schema") || report["schema"] != kReportSchemaVersion) {
        return fail("unknown schema version");
    }
    if (!report.contains("instances") || !report.contains("aggregates")) {
        return fail("missing instances or aggregates");
    }
    constexpr double kTol = 1e-12;

    struct RunView {
        int k = 0;
        double final_ratio = 0.0;
        std::vector<double> curve;
    };
    std::vector<RunView> runs;
    for (const auto& inst : report["instances"]) {
        const int e_bh = inst["e_bh"].get<int>();
        for (const auto& run : inst["runs"]) {
            RunView view;
            view.k = run["k"].get<int>();
            const int e_qls = run["e_qls"].get<int>();
            const double expect_ratio = e_bh > 0 ? static_cast<double>(e_qls) / e_bh : 0.0;
            view.final_ratio = run["final_ratio"].get<double>();
            if (std::abs(view.final_ratio - expect_ratio) > kTol) {
                return fail("stored final_ratio disagrees with e_qls/e_bh");
            }
            int last_size = 0;
            for (const auto& rec : run["iterations"]) {
                view.curve.push_back(rec["running_ratio"].get<double>());
                const int size = rec["global_size"].get<int>();
                if (size != last_size + rec["nodes_added"].get<int>()) {
                    return fail("global_size does not accumulate nodes_added");
                }
                last_size = size;
            }
            runs.push_back(std::move(view));
        }
    }

    for (const auto& row : report["aggregates"]["final_by_k"]) {
        const int k = row["k"].get<int>();
        std::vector<double> finals;
        for (const auto& run : runs) {
            if (run.k == k) {
                finals.push_back(run.final_ratio);
            }
        }
        const auto fs = detail::mean_std(finals);
        if (std::abs(fs.mean - row["mean_final_ratio"].get<double>()) > kTol ||
            std::abs(fs.std - row["std_final_ratio"].get<double>()) > kTol) {
            return fail("final_by_k aggregate mismatch at k=" + std::to_string(k));
        }
    }
    for (const auto& row : report["aggregates"]["curve_by_k"]) {
        const int k = row["k"].get<int>();
        const std::size_t it = row["iteration"].get<std::size_t>() - 1;
        std::vector<double> column;
        for (const auto& run : runs) {
            if (run.k != k) {
                continue;
            }
            if (run.curve.empty()) {
                column.push_back(0.0);
            } else {
                column.push_back(it < run.curve.size() ? run.curve[it] : run.curve.back());
            }
        }
        const auto cs = detail::mean_std(column);
        if (std::abs(cs.mean - row["mean_ratio"].get<double>()) > kTol ||
            std::abs(cs.std - row["std_ratio"].get<double>()) > kTol) {
            return fail("curve_by_k aggregate mismatch at k=" + std::to_string(k));
        }
    }
    if (why != nullptr) {
        *why = "ok";
    }
    return true;
}

}  // namespace qls
