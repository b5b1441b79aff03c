#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "qls/qls.hpp"
#include "test_helpers.hpp"

using namespace qls;
using namespace qls::testing;

namespace {

QlsConfig small_config() {
    QlsConfig cfg;
    cfg.ns = 2;
    cfg.k = 3;
    cfg.rounds = 2;
    cfg.shots = 256;
    cfg.optimizer.max_evals = 300;
    return cfg;
}

bool traces_equal(const std::vector<IterationRecord>& a, const std::vector<IterationRecord>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].iteration != b[i].iteration || a[i].root != b[i].root ||
            a[i].neighborhood_size != b[i].neighborhood_size ||
            a[i].active_mixers != b[i].active_mixers ||
            a[i].round_best_hw != b[i].round_best_hw || a[i].nodes_added != b[i].nodes_added ||
            a[i].global_size != b[i].global_size ||
            a[i].running_ratio != b[i].running_ratio ||
            a[i].objective_evals != b[i].objective_evals) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("next_root picks the unique distance-ns node") {
    const Graph g = path_graph(5);
    Rng rng(1);
    CHECK(next_root(g, 0, {}, 2, rng) == 2);
}

TEST_CASE("next_root falls back to unvisited nodes when the frontier is used up") {
    const Graph g = path_graph(5);
    Rng rng(2);
    const std::set<int> visited{0, 1, 2};
    // Distance-2 frontier of node 0 is {2}, already visited.
    const int root = next_root(g, 0, visited, 2, rng);
    CHECK((root == 3 || root == 4));
}

TEST_CASE("next_root rejects a fully visited graph") {
    const Graph g = path_graph(3);
    Rng rng(3);
    CHECK_THROWS_AS(next_root(g, 0, {0, 1, 2}, 1, rng), std::invalid_argument);
}

TEST_CASE("extraction returns the clamped basis state when nothing mixes") {
    const std::vector<int> clamp{1, 3};
    const StateVector psi = init_state(5, clamp);
    Rng rng(4);
    CHECK(extract_best_bitstring(psi, 0, rng).bits == from_bit_string("01010"));
    CHECK(extract_best_bitstring(psi, 64, rng).bits == from_bit_string("01010"));
}

TEST_CASE("merge_local unions bits and marks the ball visited") {
    const Graph g = path_graph(5);
    const Neighborhood nb = ball(g, 2, 1);  // nodes [2,1,3]
    GlobalSolution global;

    merge_local(g, global, nb, 0, RecombineMode::Clamped);
    CHECK(global.selected.empty());
    CHECK(global.visited == std::set<int>{1, 2, 3});

    merge_local(g, global, nb, 0b001, RecombineMode::Clamped);  // local 0 = node 2
    CHECK(global.selected == std::set<int>{2});
    merge_local(g, global, nb, 0b001, RecombineMode::Clamped);  // idempotent
    CHECK(global.selected == std::set<int>{2});
}

TEST_CASE("merge_local flags conflicting additions in clamped mode") {
    const Graph g = path_graph(3);
    const Neighborhood nb = ball(g, 0, 1);  // nodes [0,1]
    GlobalSolution global;
    global.selected = {1};
    CHECK_THROWS_AS(merge_local(g, global, nb, 0b01, RecombineMode::Clamped), std::logic_error);
}

TEST_CASE("merge_local drops conflicting additions in paper-literal mode") {
    const Graph g = path_graph(3);
    const Neighborhood nb = ball(g, 0, 1);
    GlobalSolution global;
    global.selected = {1};
    merge_local(g, global, nb, 0b01, RecombineMode::PaperLiteral);
    CHECK(global.selected == std::set<int>{1});  // earlier-committed node wins
    CHECK(global.visited == std::set<int>{0, 1});
}

TEST_CASE("neighborhood_round with a single eligible node flips exactly that node") {
    const Graph g = path_graph(5);
    const Neighborhood nb = ball(g, 2, 1);  // eligible: local 0 only
    GlobalSolution global;
    QlsConfig cfg = small_config();
    cfg.k = 1;
    cfg.rounds = 3;
    Rng rng(5);
    const RoundOutcome outcome = neighborhood_round(nb, global, cfg, rng);
    CHECK(outcome.bits == 0b001);
    CHECK(outcome.active_mixers == 1);
    CHECK(outcome.round_best_hw.size() == 3);
}

TEST_CASE("more rounds never yield a worse bitstring on the same seed stream") {
    const Graph g = cycle_graph(7);
    const Neighborhood nb = ball(g, 0, 2);
    GlobalSolution global;
    QlsConfig one = small_config();
    one.rounds = 1;
    QlsConfig three = small_config();
    three.rounds = 3;
    Rng rng1(42);
    Rng rng3(42);
    const RoundOutcome a = neighborhood_round(nb, global, one, rng1);
    const RoundOutcome b = neighborhood_round(nb, global, three, rng3);
    CHECK(detail::hamming_weight(b.bits) >= detail::hamming_weight(a.bits));
    CHECK(b.round_best_hw[0] == a.round_best_hw[0]);
}

TEST_CASE("run_qls selects every node of an edgeless graph") {
    const Graph g = edgeless_graph(5);
    Rng rng(7);
    const RunResult result = run_qls(g, small_config(), rng);
    CHECK(result.solution.selected == std::set<int>{0, 1, 2, 3, 4});
    CHECK(result.solution.visited.size() == 5);
}

TEST_CASE("run_qls on the triangle finds exactly one node") {
    const Graph g = complete_graph(3);
    QlsConfig cfg = small_config();
    cfg.ns = 1;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        const RunResult result = run_qls(g, cfg, rng);
        CHECK(result.solution.selected.size() == 1);
        CHECK(is_independent_set(g, std::vector<int>(result.solution.selected.begin(),
                                                     result.solution.selected.end())));
    }
}

TEST_CASE("run_qls solves the 3-path exactly") {
    const Graph g = path_graph(3);
    QlsConfig cfg = small_config();
    cfg.ns = 2;
    cfg.k = 3;
    cfg.rounds = 2;
    Rng rng(11);
    const RunResult result = run_qls(g, cfg, rng);
    CHECK(result.solution.selected == std::set<int>{0, 2});
    CHECK(static_cast<int>(result.solution.selected.size()) ==
          static_cast<int>(exact_mis(g).size()));
}

TEST_CASE("run_qls in exact-support mode solves the 3-path") {
    const Graph g = path_graph(3);
    QlsConfig cfg = small_config();
    cfg.shots = 0;  // extraction from the exact support instead of samples
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Rng rng(seed);
        const RunResult result = run_qls(g, cfg, rng);
        CHECK(result.solution.selected == std::set<int>{0, 2});
    }
}

TEST_CASE("run_qls shrinks the ball on dense graphs instead of truncating") {
    // Radius-2 balls cover nearly all 40 nodes here, so every iteration must
    // fall back to radius 1 (~15 qubits) to fit the cap.
    Rng graph_rng(29);
    const Graph g = random_gnp(40, 0.35, graph_rng);
    const Neighborhood full = ball(g, 0, 2);
    REQUIRE(full.size() > kMaxQubits);

    QlsConfig cfg = small_config();
    cfg.rounds = 1;
    cfg.shots = 64;
    cfg.optimizer.max_evals = 40;
    Rng rng(8);
    const RunResult result = run_qls(g, cfg, rng);
    CHECK(result.solution.visited.size() == 40);
    CHECK(is_independent_set(g, std::vector<int>(result.solution.selected.begin(),
                                                 result.solution.selected.end())));
    for (const auto& rec : result.trace) {
        CHECK(rec.neighborhood_size <= kMaxQubits);
    }
}

TEST_CASE("run_qls validates its configuration") {
    const Graph g = path_graph(3);
    Rng rng(1);
    QlsConfig cfg = small_config();
    cfg.ns = 0;
    CHECK_THROWS_AS(run_qls(g, cfg, rng), std::invalid_argument);
}

TEST_CASE("trace is monotone, feasible, consistent, and short enough") {
    Rng graph_rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 6 + static_cast<int>(uniform_below(graph_rng, 9));
        const Graph g = random_gnp(n, 0.25, graph_rng);
        Rng rng(100 + rep);
        const RunResult result = run_qls(g, small_config(), rng);

        CHECK(result.solution.visited.size() == static_cast<std::size_t>(n));
        CHECK(result.trace.size() <= static_cast<std::size_t>(n));
        CHECK(is_independent_set(g, std::vector<int>(result.solution.selected.begin(),
                                                     result.solution.selected.end())));
        int prev_size = 0;
        for (std::size_t i = 0; i < result.trace.size(); ++i) {
            const auto& rec = result.trace[i];
            CHECK(rec.iteration == static_cast<int>(i) + 1);
            CHECK(rec.global_size >= prev_size);
            CHECK(rec.global_size == prev_size + rec.nodes_added);
            prev_size = rec.global_size;
        }
        CHECK(prev_size == static_cast<int>(result.solution.selected.size()));
    }
}

TEST_CASE("qls never beats the exact optimum on small graphs") {
    Rng graph_rng(17);
    QlsConfig cfg = small_config();
    cfg.optimizer.max_evals = 150;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 4 + static_cast<int>(uniform_below(graph_rng, 13));  // 4..16
        const Graph g = random_gnp(n, 0.3, graph_rng);
        Rng rng(500 + rep);
        const RunResult result = run_qls(g, cfg, rng);
        CHECK(result.solution.selected.size() <= exact_mis(g).size());
    }
}

TEST_CASE("identical seeds give identical traces") {
    Rng graph_rng(19);
    const Graph g = random_gnp(12, 0.25, graph_rng);
    Rng a(77);
    Rng b(77);
    const RunResult ra = run_qls(g, small_config(), a);
    const RunResult rb = run_qls(g, small_config(), b);
    CHECK(ra.solution.selected == rb.solution.selected);
    CHECK(traces_equal(ra.trace, rb.trace));
}

TEST_CASE("paper-literal mode still produces a valid independent set") {
    Rng graph_rng(23);
    const Graph g = random_gnp(14, 0.25, graph_rng);
    QlsConfig cfg = small_config();
    cfg.recombine = RecombineMode::PaperLiteral;
    Rng rng(3);
    const RunResult result = run_qls(g, cfg, rng);
    CHECK(is_independent_set(g, std::vector<int>(result.solution.selected.begin(),
                                                 result.solution.selected.end())));
    CHECK(result.solution.visited.size() == 14);
}
