#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinch/matrix.hpp"
#include "pinch/polynomial.hpp"

namespace pinch {

struct GraphEdge {
    std::string id;
    std::string a, b;         // endpoints (equal for a self-loop)
    std::string mass;         // mass symbol; empty = massless
    GaussianRational lambda = GaussianRational(1);  // propagator exponent
};

// Multigraph with external structure.  Vertices and edges keep their input
// order; all deterministic constructions below are stated relative to it.
struct FeynmanGraph {
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;
    std::map<std::string, int> external;  // vertex id -> number of external legs
    int dimension = 4;

    std::size_t vertex_index(const std::string& id) const;
    int phi(const std::string& v) const;
    int n_external() const;  // sum of external leg counts
    void validate() const;
};

FeynmanGraph parse_graph_json(const std::string& text);
FeynmanGraph load_graph_file(const std::string& path);
std::string graph_to_json(const FeynmanGraph& g);

bool is_connected(const FeynmanGraph& g);
int component_count(const FeynmanGraph& g);
int loop_number(const FeynmanGraph& g);  // h1 = |E| - |V| + components
// Connected with no bridge (self-loops never count as bridges).
bool is_one_particle_irreducible(const FeynmanGraph& g);

// Momentum routing.  Every edge e carries K_e + P_e where K_e is an integer
// combination of loop momenta k_1..k_h1 (chords carry exactly their own) and
// P_e an integer combination of the external vertex momenta.  Momentum
// conservation holds at every vertex except the base; overall conservation is
// not imposed.
struct Routing {
    std::string base;
    std::vector<int> tree;    // edge indices of the spanning tree
    std::vector<int> chords;  // edge indices, input order; chord j carries k_{j+1}
    // Flow along the edge orientation (listed endpoint a -> b):
    std::vector<std::map<int, int>> loop_coeffs;  // edge -> {loop index -> coefficient}
    std::vector<std::map<std::string, int>> ext_coeffs;  // edge -> {vertex id -> coefficient}
};

Routing build_routing(const FeynmanGraph& g);
Routing build_routing(const FeynmanGraph& g, const std::string& base);
// Checks p_v + sum_e E_{e,v} (K_e + P_e) = 0 at every non-base vertex.
bool routing_conserves(const FeynmanGraph& g, const Routing& r);
// Human-readable "k1 + pa - pb" form of the momentum on one edge.
std::string edge_momentum_str(const FeynmanGraph& g, const Routing& r, int edge);

// First Symanzik polynomial in alpha variables a1..aN (edge input order):
// sum over spanning trees of the product of alphas off the tree.
Polynomial symanzik_first(const FeynmanGraph& g);
std::vector<std::vector<int>> spanning_trees(const FeynmanGraph& g);
// h1 x h1 matrix with entries sum_e alpha_e c_j^(e) c_l^(e); its determinant
// equals the first Symanzik polynomial.
SymbolicMatrix symanzik_gram(const FeynmanGraph& g, const Routing& r);
VarId alpha_var(std::size_t edge_index);  // a1, a2, ...

// Superficial degree of divergence: sum of Re(lambda_e) - (D/2) h1.
mpq_class omega_of(const FeynmanGraph& g);
mpq_class omega_of_subset(const FeynmanGraph& g, const std::vector<int>& edge_subset);

// Edge-subset view as a standalone graph (touched vertices, external zeroed).
FeynmanGraph subgraph_of(const FeynmanGraph& g, const std::vector<int>& edge_subset);

// Proper nonempty edge subsets, ascending bitmask order, whose connected
// components are all 1PI with h1 >= 1 and omega <= 0.
std::vector<std::vector<int>> divergent_subsets(const FeynmanGraph& g);

// Contract each component of the subset to a single vertex (named after the
// first member in input order, accumulating external legs).
FeynmanGraph contract(const FeynmanGraph& g, const std::vector<int>& edge_subset);

// Canonical form under vertex relabeling respecting masses, exponents and
// external structure; equal keys == isomorphic.  Brute force, |V| <= 8.
std::string canonical_key(const FeynmanGraph& g);
bool is_isomorphic(const FeynmanGraph& a, const FeynmanGraph& b);

// All connected multigraphs (self-loops and parallel edges allowed) with at
// most max_v vertices and max_e edges, up to isomorphism.  Edges carry a
// uniform mass symbol "m" and exponent 1; external legs per vertex = phi.
std::vector<FeynmanGraph> connected_multigraphs(int max_v, int max_e, int dimension, int phi);

}  // namespace pinch
