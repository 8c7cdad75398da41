// Copyright 2026 The ghzdeco Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <climits>
#include <functional>
#include <random>

#include "ghzdeco/error.hpp"
#include "ghzdeco/topology.hpp"

using namespace ghzdeco;

namespace {

// Brute force: enumerate every simple path of n qubits over the undirected
// graph and return the fewest links that run against the native direction.
int brute_force_min_reversals(const CouplingGraph &g, int n) {
    int best = INT_MAX;
    std::vector<int> path;
    std::vector<char> used(64, 0);
    std::function<void(int)> walk = [&](int cost) {
        if (static_cast<int>(path.size()) == n) {
            best = std::min(best, cost);
            return;
        }
        for (int v : g.nodes()) {
            if (used[v]) continue;
            const int u = path.back();
            if (!g.adjacent(u, v)) continue;
            used[v] = 1;
            path.push_back(v);
            walk(cost + (g.has_edge(u, v) ? 0 : 1));
            path.pop_back();
            used[v] = 0;
        }
    };
    for (int s : g.nodes()) {
        used[s] = 1;
        path = {s};
        walk(0);
        used[s] = 0;
    }
    return best;
}

CouplingGraph random_graph(std::mt19937_64 &rng, int nodes, double density) {
    std::vector<int> labels(nodes);
    for (int i = 0; i < nodes; ++i) labels[i] = i;
    std::vector<CouplingGraph::Edge> edges;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int a = 0; a < nodes; ++a) {
        for (int b = a + 1; b < nodes; ++b) {
            if (u(rng) < density) edges.push_back(u(rng) < 0.5 ? CouplingGraph::Edge{a, b} : CouplingGraph::Edge{b, a});
        }
    }
    return CouplingGraph(labels, edges, "random");
}

}  // namespace

TEST(Topology, BundledGraphShape) {
    const auto &g = ibmqx5();
    EXPECT_EQ(g.node_count(), 16u);
    EXPECT_EQ(g.edges().size(), 22u);
    EXPECT_TRUE(g.has_edge(1, 2));
    EXPECT_TRUE(g.has_edge(5, 4));
    EXPECT_FALSE(g.has_edge(4, 5));
    EXPECT_EQ(g.neighbors(3), (std::vector<int>{2, 4, 14}));
}

TEST(Topology, MinimalChainsMatchBruteForceOnIbmqx5) {
    for (int n = 1; n <= 9; ++n) {
        const QubitChain c = find_chain(ibmqx5(), n);
        ASSERT_EQ(static_cast<int>(c.size()), n);
        EXPECT_EQ(c.reversal_count, brute_force_min_reversals(ibmqx5(), n)) << "N=" << n;
        EXPECT_EQ(make_chain(ibmqx5(), c.qubits), c);
    }
}

TEST(Topology, MinimalChainsMatchBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const CouplingGraph g = random_graph(rng, 7, 0.35);
        for (int n = 1; n <= 7; ++n) {
            const int oracle = brute_force_min_reversals(g, n);
            if (oracle == INT_MAX) {
                EXPECT_THROW(find_chain(g, n), Error);
                continue;
            }
            EXPECT_EQ(find_chain(g, n).reversal_count, oracle) << "trial " << trial << " N=" << n;
        }
    }
}

TEST(Topology, ReversingEveryEdgeKeepsTheMinimalCost) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const CouplingGraph g = random_graph(rng, 8, 0.4);
        const CouplingGraph r = g.reversed();
        for (int n = 2; n <= 6; ++n) {
            int a = -1, b = -1;
            try {
                a = find_chain(g, n).reversal_count;
            } catch (const Error &) {
            }
            try {
                b = find_chain(r, n).reversal_count;
            } catch (const Error &) {
            }
            EXPECT_EQ(a, b) << "trial " << trial << " N=" << n;
        }
    }
    for (int n = 1; n <= 9; ++n) {
        EXPECT_EQ(find_chain(ibmqx5(), n).reversal_count, find_chain(ibmqx5().reversed(), n).reversal_count);
    }
}

TEST(Topology, ReferenceChains) {
    for (int n = 1; n <= 9; ++n) {
        const auto ref = reference_chain(n);
        ASSERT_TRUE(ref.has_value());
        EXPECT_NO_THROW(make_chain(ibmqx5(), *ref));
    }
    EXPECT_EQ(*reference_chain(5), (std::vector<int>{1, 2, 3, 4, 5}));
    EXPECT_EQ(make_chain(ibmqx5(), *reference_chain(5)).reversal_count, 1);
    EXPECT_FALSE(reference_chain(10).has_value());
}

TEST(Topology, AnchoredChainStartsAtAnchor) {
    const QubitChain c = find_chain(ibmqx5(), 6, 8);
    EXPECT_EQ(c.qubits.front(), 8);
    EXPECT_GE(c.reversal_count, brute_force_min_reversals(ibmqx5(), 6));
    EXPECT_EQ(make_chain(ibmqx5(), c.qubits), c);
}

TEST(Topology, TrivialAndImpossibleRequests) {
    EXPECT_EQ(find_chain(ibmqx5(), 1).reversal_count, 0);
    try {
        find_chain(ibmqx5(), 17);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.category(), ErrorCategory::NoChain);
    }
    try {
        find_chain(ibmqx5(), 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.category(), ErrorCategory::Validation);
    }
    const CouplingGraph split({0, 1, 2, 3}, {{0, 1}, {2, 3}});
    try {
        find_chain(split, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.category(), ErrorCategory::NoChain);
    }
}

TEST(Topology, MakeChainRejectsBrokenPaths) {
    EXPECT_THROW(make_chain(ibmqx5(), {0, 2}), Error);
    EXPECT_THROW(make_chain(ibmqx5(), {1, 2, 1}), Error);
    EXPECT_THROW(make_chain(ibmqx5(), {99}), Error);
}

TEST(Topology, GraphJsonRoundTripAndErrors) {
    const CouplingGraph back = load_graph(ibmqx5().to_json());
    EXPECT_EQ(back.edges(), ibmqx5().edges());
    EXPECT_EQ(back.nodes(), ibmqx5().nodes());

    auto category_of = [](std::string_view text) {
        try {
            load_graph(text);
        } catch (const Error &e) {
            return e.category();
        }
        return ErrorCategory::Io;
    };
    EXPECT_EQ(category_of("{\"nodes\": [0, 1], \"edges\": [[0, 1]"), ErrorCategory::Parse);
    EXPECT_EQ(category_of(R"({"nodes": [0, 1], "edges": [[0, 2]]})"), ErrorCategory::Validation);
    EXPECT_EQ(category_of(R"({"nodes": [0, 1], "edges": [[1, 1]]})"), ErrorCategory::Validation);
    EXPECT_EQ(category_of(R"({"nodes": [0, 0], "edges": []})"), ErrorCategory::Validation);
    EXPECT_EQ(category_of(R"({"nodes": [0, 1], "edges": [[0, 1], [0, 1]]})"), ErrorCategory::Validation);
}
