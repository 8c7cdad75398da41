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

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ghzdeco {

/// Directed qubit-coupling graph. An edge (control, target) means a CNOT with
/// that control and target is natively available.
class CouplingGraph {
  public:
    using Edge = std::pair<int, int>;

    CouplingGraph() = default;

    /// Throws Error{Validation} on duplicate nodes, self-loops, duplicate
    /// edges or edges whose endpoints are not declared nodes.
    CouplingGraph(std::vector<int> nodes, const std::vector<Edge> &edges, std::string name = {});

    const std::string &name() const { return name_; }
    const std::vector<int> &nodes() const { return nodes_; }
    const std::set<Edge> &edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }

    bool has_node(int label) const;
    bool has_edge(int control, int target) const { return edges_.contains({control, target}); }
    /// True when the two nodes are coupled in either direction.
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

    /// Undirected neighbours of a node in ascending label order.
    std::vector<int> neighbors(int label) const;

    /// Same nodes, every edge direction flipped.
    CouplingGraph reversed() const;

    /// Serializes back to the graph-file format.
    std::string to_json() const;

  private:
    std::string name_;
    std::vector<int> nodes_;
    std::set<Edge> edges_;
};

/// A simple path through a coupling graph, used as the GHZ preparation chain.
struct QubitChain {
    std::vector<int> qubits;
    /// Number of consecutive pairs (a, b) that are only coupled as b -> a.
    int reversal_count = 0;

    std::size_t size() const { return qubits.size(); }
    bool operator==(const QubitChain &) const = default;
};

/// Parses a graph document of the form
/// `{"nodes": [ints], "edges": [[control, target], ...]}`.
/// Errors carry the offending location (byte offset or `edges[i]`).
CouplingGraph load_graph(std::string_view text);
CouplingGraph load_graph_file(const std::string &path);

/// The bundled 16-qubit ibmqx5 coupling map.
const CouplingGraph &ibmqx5();

/// Checks that `qubits` is a simple path on `graph` and counts reversed links.
/// Throws Error{Validation} otherwise.
QubitChain make_chain(const CouplingGraph &graph, std::vector<int> qubits);

/// Exhaustive search for the simple path of `n` qubits with the fewest
/// reversed links, ties broken by the lexicographically smallest label
/// sequence. When `anchor` is given the path must start there.
/// Throws Error{NoChain} if no such path exists.
QubitChain find_chain(const CouplingGraph &graph, int n, std::optional<int> anchor = std::nullopt);

/// Chains used on ibmqx5 in the original experiment, for N = 1..9.
/// Returns nullopt for other N.
std::optional<std::vector<int>> reference_chain(int n);

}  // namespace ghzdeco
