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

#include "ghzdeco/topology.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "ghzdeco/error.hpp"
#include "ibmqx5_data.hpp"
#include "json.hpp"

namespace ghzdeco {

using nlohmann::json;

CouplingGraph::CouplingGraph(std::vector<int> nodes, const std::vector<Edge> &edges, std::string name)
    : name_(std::move(name)), nodes_(std::move(nodes)) {
    std::set<int> seen;
    for (int n : nodes_) {
        if (!seen.insert(n).second) {
            throw Error(ErrorCategory::Validation, "duplicate node " + std::to_string(n));
        }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto &[c, t] = edges[i];
        std::string where = "edges[" + std::to_string(i) + "]";
        if (!seen.contains(c) || !seen.contains(t)) {
            throw Error(ErrorCategory::Validation,
                        where + ": endpoint " + std::to_string(seen.contains(c) ? t : c) + " is not a declared node");
        }
        if (c == t) {
            throw Error(ErrorCategory::Validation, where + ": self-loop on node " + std::to_string(c));
        }
        if (!edges_.insert(edges[i]).second) {
            throw Error(ErrorCategory::Validation,
                        where + ": duplicate edge [" + std::to_string(c) + "," + std::to_string(t) + "]");
        }
    }
}

bool CouplingGraph::has_node(int label) const {
    return std::find(nodes_.begin(), nodes_.end(), label) != nodes_.end();
}

std::vector<int> CouplingGraph::neighbors(int label) const {
    std::set<int> out;
    for (const auto &[c, t] : edges_) {
        if (c == label) out.insert(t);
        if (t == label) out.insert(c);
    }
    return {out.begin(), out.end()};
}

CouplingGraph CouplingGraph::reversed() const {
    std::vector<Edge> flipped;
    flipped.reserve(edges_.size());
    for (const auto &[c, t] : edges_) flipped.emplace_back(t, c);
    return CouplingGraph(nodes_, flipped, name_.empty() ? name_ : name_ + "-reversed");
}

std::string CouplingGraph::to_json() const {
    json doc;
    if (!name_.empty()) doc["name"] = name_;
    doc["nodes"] = nodes_;
    json edges = json::array();
    for (const auto &[c, t] : edges_) edges.push_back({c, t});
    doc["edges"] = edges;
    return doc.dump(2);
}

namespace {

int read_label(const json &value, const std::string &where) {
    if (!value.is_number_integer()) {
        throw Error(ErrorCategory::Parse, where + ": expected an integer qubit label");
    }
    auto v = value.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw Error(ErrorCategory::Parse, where + ": label out of range");
    }
    return static_cast<int>(v);
}

}  // namespace

CouplingGraph load_graph(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCategory::Parse, "graph: byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCategory::Parse, "graph: top level must be an object");

    std::vector<int> nodes;
    if (doc.contains("nodes")) {
        const auto &arr = doc["nodes"];
        if (!arr.is_array()) throw Error(ErrorCategory::Parse, "nodes: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            nodes.push_back(read_label(arr[i], "nodes[" + std::to_string(i) + "]"));
        }
    }
    std::vector<CouplingGraph::Edge> edges;
    if (doc.contains("edges")) {
        const auto &arr = doc["edges"];
        if (!arr.is_array()) throw Error(ErrorCategory::Parse, "edges: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = "edges[" + std::to_string(i) + "]";
            if (!arr[i].is_array() || arr[i].size() != 2) {
                throw Error(ErrorCategory::Parse, where + ": expected [control, target]");
            }
            edges.emplace_back(read_label(arr[i][0], where), read_label(arr[i][1], where));
        }
    }
    std::string name = doc.value("name", std::string{});
    return CouplingGraph(std::move(nodes), edges, std::move(name));
}

CouplingGraph load_graph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCategory::Io, "cannot open graph file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return load_graph(buf.str());
    } catch (const Error &e) {
        throw Error(e.category(), path + ": " + e.what());
    }
}

const CouplingGraph &ibmqx5() {
    static const CouplingGraph graph = load_graph(detail::kIbmqx5GraphJson);
    return graph;
}

QubitChain make_chain(const CouplingGraph &graph, std::vector<int> qubits) {
    std::set<int> seen;
    for (int q : qubits) {
        if (!graph.has_node(q)) {
            throw Error(ErrorCategory::Validation, "chain qubit " + std::to_string(q) + " is not in the graph");
        }
        if (!seen.insert(q).second) {
            throw Error(ErrorCategory::Validation, "chain visits qubit " + std::to_string(q) + " twice");
        }
    }
    QubitChain chain{std::move(qubits), 0};
    for (std::size_t i = 1; i < chain.qubits.size(); ++i) {
        int a = chain.qubits[i - 1];
        int b = chain.qubits[i];
        if (graph.has_edge(a, b)) continue;
        if (!graph.has_edge(b, a)) {
            throw Error(ErrorCategory::Validation,
                        "qubits " + std::to_string(a) + " and " + std::to_string(b) + " are not coupled");
        }
        ++chain.reversal_count;
    }
    return chain;
}

namespace {

struct ChainSearch {
    const CouplingGraph &graph;
    std::size_t target_length;
    std::vector<int> path;
    std::set<int> on_path;
    int cost = 0;
    std::optional<QubitChain> best;

    void extend() {
        if (best && cost >= best->reversal_count) return;
        if (path.size() == target_length) {
            best = QubitChain{path, cost};
            return;
        }
        int tail = path.back();
        for (int next : graph.neighbors(tail)) {
            if (on_path.contains(next)) continue;
            int step = graph.has_edge(tail, next) ? 0 : 1;
            path.push_back(next);
            on_path.insert(next);
            cost += step;
            extend();
            cost -= step;
            on_path.erase(next);
            path.pop_back();
        }
    }
};

}  // namespace

QubitChain find_chain(const CouplingGraph &graph, int n, std::optional<int> anchor) {
    if (n < 1) throw Error(ErrorCategory::Validation, "chain length must be at least 1");
    if (static_cast<std::size_t>(n) > graph.node_count()) {
        throw Error(ErrorCategory::NoChain, "no chain of " + std::to_string(n) + " qubits: graph has only " +
                                                std::to_string(graph.node_count()) + " nodes");
    }
    std::vector<int> starts;
    if (anchor) {
        if (!graph.has_node(*anchor)) {
            throw Error(ErrorCategory::Validation, "anchor " + std::to_string(*anchor) + " is not in the graph");
        }
        starts.push_back(*anchor);
    } else {
        starts = graph.nodes();
        std::sort(starts.begin(), starts.end());
    }

    ChainSearch search{graph, static_cast<std::size_t>(n), {}, {}, 0, std::nullopt};
    for (int s : starts) {
        search.path = {s};
        search.on_path = {s};
        search.cost = 0;
        search.extend();
        if (search.best && search.best->reversal_count == 0) break;
    }
    if (!search.best) {
        throw Error(ErrorCategory::NoChain, "no simple path of " + std::to_string(n) + " qubits exists");
    }
    return *search.best;
}

std::optional<std::vector<int>> reference_chain(int n) {
    switch (n) {
        case 1:
        case 2:
        case 3:
        case 4:
        case 5:
        case 6: {
            std::vector<int> chain(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) chain[static_cast<std::size_t>(i)] = i + 1;
            return chain;
        }
        case 7:
            return std::vector<int>{4, 13, 12, 11, 10, 9, 8};
        case 8:
            return std::vector<int>{3, 4, 13, 12, 11, 10, 9, 8};
        case 9:
            return std::vector<int>{4, 3, 14, 13, 12, 11, 10, 9, 8};
        default:
            return std::nullopt;
    }
}

}  // namespace ghzdeco
