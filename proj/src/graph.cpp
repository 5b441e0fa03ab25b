#include "pinch/graph.hpp"

#include "pinch/parse.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pinch {

using nlohmann::json;

std::size_t FeynmanGraph::vertex_index(const std::string& id) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k] == id) return k;
    throw std::invalid_argument("unknown vertex id \"" + id + "\"");
}

int FeynmanGraph::phi(const std::string& v) const {
    auto it = external.find(v);
    return it == external.end() ? 0 : it->second;
}

int FeynmanGraph::n_external() const {
    int n = 0;
    for (auto& [v, k] : external) n += k;
    return n;
}

void FeynmanGraph::validate() const {
    std::set<std::string> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size())
        throw std::invalid_argument("graph: duplicate vertex id");
    std::set<std::string> es;
    for (auto& e : edges) {
        if (e.id.empty()) throw std::invalid_argument("graph: edge with empty id");
        if (!es.insert(e.id).second)
            throw std::invalid_argument("graph: duplicate edge id \"" + e.id + "\"");
        if (!vs.count(e.a) || !vs.count(e.b))
            throw std::invalid_argument("graph: edge \"" + e.id + "\" references unknown vertex");
    }
    for (auto& [v, k] : external) {
        if (!vs.count(v))
            throw std::invalid_argument("graph: external entry references unknown vertex \"" + v +
                                        "\"");
        if (k < 0) throw std::invalid_argument("graph: negative external leg count");
    }
    if (dimension < 1) throw std::invalid_argument("graph: dimension must be positive");
}

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw std::invalid_argument("unknown field \"" + it.key() + "\" in " + where);
    }
}

}  // namespace

FeynmanGraph parse_graph_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("graph file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("graph file: top level must be an object");
    reject_unknown_keys(j, {"kind", "vertices", "edges", "external", "dimension"}, "graph");
    if (j.contains("kind") && j["kind"] != "graph")
        throw std::invalid_argument("graph file: kind must be \"graph\"");
    FeynmanGraph g;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::invalid_argument("graph file: missing \"vertices\" array");
    for (auto& v : j["vertices"]) g.vertices.push_back(v.get<std::string>());
    if (!j.contains("edges") || !j["edges"].is_array())
        throw std::invalid_argument("graph file: missing \"edges\" array");
    for (auto& je : j["edges"]) {
        reject_unknown_keys(je, {"id", "ends", "mass", "exponent"}, "edge");
        GraphEdge e;
        e.id = je.at("id").get<std::string>();
        auto ends = je.at("ends");
        if (!ends.is_array() || ends.size() != 2)
            throw std::invalid_argument("graph file: edge \"" + e.id +
                                        "\" needs exactly two endpoints");
        e.a = ends[0].get<std::string>();
        e.b = ends[1].get<std::string>();
        if (je.contains("mass")) e.mass = je["mass"].get<std::string>();
        if (je.contains("exponent"))
            e.lambda = parse_complex_literal(je["exponent"].get<std::string>());
        g.edges.push_back(std::move(e));
    }
    if (j.contains("external")) {
        for (auto it = j["external"].begin(); it != j["external"].end(); ++it)
            g.external[it.key()] = it.value().get<int>();
    }
    if (j.contains("dimension")) g.dimension = j["dimension"].get<int>();
    g.validate();
    return g;
}

FeynmanGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph_json(ss.str());
}

std::string graph_to_json(const FeynmanGraph& g) {
    json j;
    j["kind"] = "graph";
    j["vertices"] = g.vertices;
    j["edges"] = json::array();
    for (auto& e : g.edges) {
        json je;
        je["id"] = e.id;
        je["ends"] = {e.a, e.b};
        if (!e.mass.empty()) je["mass"] = e.mass;
        je["exponent"] = e.lambda.str();
        j["edges"].push_back(je);
    }
    json ext = json::object();
    for (auto& [v, k] : g.external)
        if (k > 0) ext[v] = k;
    j["external"] = ext;
    j["dimension"] = g.dimension;
    return j.dump(2) + "\n";
}

namespace {

// Union-find over vertex indices.
struct DSU {
    std::vector<int> p;
    explicit DSU(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

}  // namespace

int component_count(const FeynmanGraph& g) {
    DSU d(g.vertices.size());
    for (auto& e : g.edges) d.unite(g.vertex_index(e.a), g.vertex_index(e.b));
    std::set<int> roots;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) roots.insert(d.find(v));
    return static_cast<int>(roots.size());
}

bool is_connected(const FeynmanGraph& g) {
    return g.vertices.empty() ? true : component_count(g) == 1;
}

int loop_number(const FeynmanGraph& g) {
    return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) +
           component_count(g);
}

bool is_one_particle_irreducible(const FeynmanGraph& g) {
    if (!is_connected(g)) return false;
    // An edge is a bridge iff removing it increases the component count.
    for (std::size_t drop = 0; drop < g.edges.size(); ++drop) {
        if (g.edges[drop].a == g.edges[drop].b) continue;
        DSU d(g.vertices.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (e == drop) continue;
            d.unite(g.vertex_index(g.edges[e].a), g.vertex_index(g.edges[e].b));
        }
        std::set<int> roots;
        for (std::size_t v = 0; v < g.vertices.size(); ++v) roots.insert(d.find(v));
        if (roots.size() > 1) return false;
    }
    return true;
}

Routing build_routing(const FeynmanGraph& g) {
    if (g.vertices.empty()) throw std::invalid_argument("routing: empty graph");
    return build_routing(g, g.vertices[0]);
}

Routing build_routing(const FeynmanGraph& g, const std::string& base) {
    g.validate();
    if (!is_connected(g)) throw std::invalid_argument("routing: graph must be connected");
    std::size_t nv = g.vertices.size(), ne = g.edges.size();
    std::size_t b0 = g.vertex_index(base);

    Routing r;
    r.base = base;
    r.loop_coeffs.resize(ne);
    r.ext_coeffs.resize(ne);

    // Spanning tree by breadth-first search; at each frontier vertex the edge
    // list is scanned in reverse input order, so the highest-numbered usable
    // edge becomes the tree edge and early-listed parallel edges stay chords.
    std::vector<bool> visited(nv, false), in_tree(ne, false);
    std::vector<std::size_t> queue{b0};
    visited[b0] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t v = queue[qi];
        for (std::size_t e = ne; e-- > 0;) {
            std::size_t x = g.vertex_index(g.edges[e].a), y = g.vertex_index(g.edges[e].b);
            if (x == y) continue;
            std::size_t other;
            if (x == v)
                other = y;
            else if (y == v)
                other = x;
            else
                continue;
            if (visited[other]) continue;
            visited[other] = true;
            in_tree[e] = true;
            r.tree.push_back(static_cast<int>(e));
            queue.push_back(other);
        }
    }
    for (std::size_t e = 0; e < ne; ++e)
        if (!in_tree[e]) r.chords.push_back(static_cast<int>(e));

    // Chords carry their own loop momentum.
    for (std::size_t j = 0; j < r.chords.size(); ++j)
        r.loop_coeffs[r.chords[j]][static_cast<int>(j)] = 1;

    // Tree-edge flows from conservation, resolving leaf vertices first.
    auto inc = [&](std::size_t e, std::size_t v) -> int {
        // Sign of edge e at vertex v: +1 into v (head), -1 out of v (tail).
        std::size_t x = g.vertex_index(g.edges[e].a), y = g.vertex_index(g.edges[e].b);
        if (x == y) return 0;
        if (y == v) return 1;
        if (x == v) return -1;
        return 0;
    };
    std::vector<bool> resolved(ne, false);
    for (std::size_t e = 0; e < ne; ++e)
        if (!in_tree[e]) resolved[e] = true;
    std::vector<bool> done_vertex(nv, false);
    for (std::size_t round = 0; round < r.tree.size(); ++round) {
        // Find a non-base vertex with exactly one unresolved incident edge.
        std::size_t pick_v = nv, pick_e = ne;
        for (std::size_t v = 0; v < nv && pick_v == nv; ++v) {
            if (v == b0 || done_vertex[v]) continue;
            std::size_t cnt = 0, last = ne;
            for (int te : r.tree) {
                if (resolved[te]) continue;
                if (inc(te, v) != 0) {
                    ++cnt;
                    last = te;
                }
            }
            if (cnt == 1) {
                pick_v = v;
                pick_e = last;
            }
        }
        if (pick_v == nv) throw std::logic_error("routing: no leaf vertex found");
        // p_v + sum_e inc(e,v) f_e = 0  =>  f_pick = -inc^{-1} (p_v + rest)
        std::map<int, int> kacc;
        std::map<std::string, int> pacc;
        if (g.phi(g.vertices[pick_v]) > 0) pacc[g.vertices[pick_v]] += 1;
        for (std::size_t e = 0; e < ne; ++e) {
            if (e == pick_e) continue;
            int s = inc(e, pick_v);
            if (s == 0 || !resolved[e]) continue;
            for (auto& [l, c] : r.loop_coeffs[e]) kacc[l] += s * c;
            for (auto& [pv, c] : r.ext_coeffs[e]) pacc[pv] += s * c;
        }
        int s = inc(pick_e, pick_v);
        for (auto& [l, c] : kacc)
            if (c != 0) r.loop_coeffs[pick_e][l] = -s * c;
        for (auto& [pv, c] : pacc)
            if (c != 0) r.ext_coeffs[pick_e][pv] = -s * c;
        resolved[pick_e] = true;
        done_vertex[pick_v] = true;
    }
    return r;
}

bool routing_conserves(const FeynmanGraph& g, const Routing& r) {
    std::size_t nv = g.vertices.size(), ne = g.edges.size();
    std::size_t b0 = g.vertex_index(r.base);
    for (std::size_t v = 0; v < nv; ++v) {
        if (v == b0) continue;
        std::map<int, int> kacc;
        std::map<std::string, int> pacc;
        if (g.phi(g.vertices[v]) > 0) pacc[g.vertices[v]] += 1;
        for (std::size_t e = 0; e < ne; ++e) {
            std::size_t x = g.vertex_index(g.edges[e].a), y = g.vertex_index(g.edges[e].b);
            int s = 0;
            if (x != y) {
                if (y == v) s = 1;
                else if (x == v) s = -1;
            }
            if (s == 0) continue;
            for (auto& [l, c] : r.loop_coeffs[e]) kacc[l] += s * c;
            for (auto& [pv, c] : r.ext_coeffs[e]) pacc[pv] += s * c;
        }
        for (auto& [l, c] : kacc)
            if (c != 0) return false;
        for (auto& [pv, c] : pacc)
            if (c != 0) return false;
    }
    return true;
}

std::string edge_momentum_str(const FeynmanGraph& g, const Routing& r, int edge) {
    (void)g;
    std::string out;
    auto append = [&](const std::string& sym, int c) {
        if (c == 0) return;
        std::string mag = std::abs(c) == 1 ? sym : std::to_string(std::abs(c)) + "*" + sym;
        if (out.empty())
            out = (c < 0 ? "-" : "") + mag;
        else
            out += (c < 0 ? " - " : " + ") + mag;
    };
    for (auto& [l, c] : r.loop_coeffs[edge]) append("k" + std::to_string(l + 1), c);
    for (auto& [pv, c] : r.ext_coeffs[edge]) append("p" + pv, c);
    return out.empty() ? "0" : out;
}

VarId alpha_var(std::size_t edge_index) {
    return intern_var("a" + std::to_string(edge_index + 1));
}

std::vector<std::vector<int>> spanning_trees(const FeynmanGraph& g) {
    if (!is_connected(g)) throw std::invalid_argument("spanning_trees: graph must be connected");
    std::size_t nv = g.vertices.size(), ne = g.edges.size();
    std::size_t want = nv - 1;
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == want) {
            DSU d(nv);
            std::size_t merges = 0;
            for (int e : pick)
                if (d.unite(g.vertex_index(g.edges[e].a), g.vertex_index(g.edges[e].b))) ++merges;
            if (merges == want) out.push_back(pick);
            return;
        }
        for (std::size_t e = from; e < ne; ++e) {
            if (g.edges[e].a == g.edges[e].b) continue;  // self-loops never in a tree
            pick.push_back(static_cast<int>(e));
            rec(e + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

Polynomial symanzik_first(const FeynmanGraph& g) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) alpha_var(e);
    auto trees = spanning_trees(g);
    Polynomial u;
    for (auto& t : trees) {
        std::vector<bool> in_t(g.edges.size(), false);
        for (int e : t) in_t[e] = true;
        Polynomial prod(GaussianRational::one());
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (!in_t[e]) prod *= Polynomial::variable(alpha_var(e));
        u += prod;
    }
    return u;
}

SymbolicMatrix symanzik_gram(const FeynmanGraph& g, const Routing& r) {
    std::size_t h = r.chords.size();
    SymbolicMatrix B(h, h);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        Polynomial ae = Polynomial::variable(alpha_var(e));
        for (auto& [j, cj] : r.loop_coeffs[e])
            for (auto& [l, cl] : r.loop_coeffs[e]) {
                Polynomial add = ae.scaled(GaussianRational(static_cast<long>(cj) *
                                                            static_cast<long>(cl)));
                B.at(j, l) = B.at(j, l) + RationalFunction(add);
            }
    }
    return B;
}

mpq_class omega_of(const FeynmanGraph& g) {
    mpq_class w(0);
    for (auto& e : g.edges) {
        if (!e.lambda.is_real())
            throw std::invalid_argument("omega: exponent with nonzero imaginary part");
        w += e.lambda.re();
    }
    w -= mpq_class(g.dimension, 2) * loop_number(g);
    w.canonicalize();
    return w;
}

FeynmanGraph subgraph_of(const FeynmanGraph& g, const std::vector<int>& edge_subset) {
    FeynmanGraph s;
    s.dimension = g.dimension;
    std::set<std::string> touched;
    for (int e : edge_subset) {
        touched.insert(g.edges[e].a);
        touched.insert(g.edges[e].b);
    }
    for (auto& v : g.vertices)
        if (touched.count(v)) s.vertices.push_back(v);
    for (int e : edge_subset) s.edges.push_back(g.edges[e]);
    return s;
}

mpq_class omega_of_subset(const FeynmanGraph& g, const std::vector<int>& edge_subset) {
    return omega_of(subgraph_of(g, edge_subset));
}

namespace {

// Split an edge subset into connected components (as edge-index lists).
std::vector<std::vector<int>> edge_components(const FeynmanGraph& g,
                                              const std::vector<int>& subset) {
    DSU d(g.vertices.size());
    for (int e : subset) d.unite(g.vertex_index(g.edges[e].a), g.vertex_index(g.edges[e].b));
    std::map<int, std::vector<int>> by_root;
    for (int e : subset) by_root[d.find(g.vertex_index(g.edges[e].a))].push_back(e);
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (int e : subset) {
        int root = d.find(g.vertex_index(g.edges[e].a));
        if (seen.insert(root).second) out.push_back(by_root[root]);
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> divergent_subsets(const FeynmanGraph& g) {
    std::size_t ne = g.edges.size();
    if (ne > 20) throw std::invalid_argument("divergent_subsets: too many edges");
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << ne); ++mask) {
        std::vector<int> subset;
        for (std::size_t e = 0; e < ne; ++e)
            if (mask & (std::uint64_t(1) << e)) subset.push_back(static_cast<int>(e));
        bool ok = true;
        for (auto& comp : edge_components(g, subset)) {
            FeynmanGraph cg = subgraph_of(g, comp);
            if (loop_number(cg) < 1 || !is_one_particle_irreducible(cg) ||
                omega_of(cg) > 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(subset));
    }
    return out;
}

FeynmanGraph contract(const FeynmanGraph& g, const std::vector<int>& edge_subset) {
    std::vector<bool> in_sub(g.edges.size(), false);
    for (int e : edge_subset) in_sub[e] = true;
    DSU d(g.vertices.size());
    for (int e : edge_subset) d.unite(g.vertex_index(g.edges[e].a), g.vertex_index(g.edges[e].b));
    // Representative = first vertex (input order) of each merged class.
    std::vector<int> rep(g.vertices.size(), -1);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        int root = d.find(static_cast<int>(v));
        if (rep[root] == -1) rep[root] = static_cast<int>(v);
    }
    auto rep_of = [&](const std::string& id) {
        return g.vertices[rep[d.find(static_cast<int>(g.vertex_index(id)))]];
    };
    FeynmanGraph out;
    out.dimension = g.dimension;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (rep[d.find(static_cast<int>(v))] == static_cast<int>(v))
            out.vertices.push_back(g.vertices[v]);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (in_sub[e]) continue;
        GraphEdge ne = g.edges[e];
        ne.a = rep_of(ne.a);
        ne.b = rep_of(ne.b);
        out.edges.push_back(std::move(ne));
    }
    for (auto& [v, k] : g.external) {
        if (k == 0) continue;
        out.external[rep_of(v)] += k;
    }
    return out;
}

std::string canonical_key(const FeynmanGraph& g) {
    std::size_t nv = g.vertices.size();
    if (nv > 8) throw std::invalid_argument("canonical_key: more than 8 vertices");
    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::vector<std::string> edge_keys;
        for (auto& e : g.edges) {
            int x = perm[g.vertex_index(e.a)], y = perm[g.vertex_index(e.b)];
            if (x > y) std::swap(x, y);
            edge_keys.push_back(std::to_string(x) + "-" + std::to_string(y) + ":" + e.mass + ":" +
                                e.lambda.str());
        }
        std::sort(edge_keys.begin(), edge_keys.end());
        std::vector<int> ext(nv, 0);
        for (auto& [v, k] : g.external) ext[perm[g.vertex_index(v)]] = k;
        std::string key = "v" + std::to_string(nv) + ";D" + std::to_string(g.dimension) + ";e[";
        for (auto& ek : edge_keys) key += ek + ",";
        key += "];x[";
        for (int x : ext) key += std::to_string(x) + ",";
        key += "]";
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool is_isomorphic(const FeynmanGraph& a, const FeynmanGraph& b) {
    return canonical_key(a) == canonical_key(b);
}

std::vector<FeynmanGraph> connected_multigraphs(int max_v, int max_e, int dimension, int phi) {
    std::vector<FeynmanGraph> out;
    std::set<std::string> seen;
    for (int nv = 1; nv <= max_v; ++nv) {
        // Slots: unordered vertex pairs including self-loops, lexicographic.
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < nv; ++i)
            for (int j = i; j < nv; ++j) slots.emplace_back(i, j);
        std::vector<int> mult(slots.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int remaining) {
            if (slot == slots.size()) {
                FeynmanGraph g;
                g.dimension = dimension;
                for (int v = 0; v < nv; ++v) {
                    g.vertices.push_back("v" + std::to_string(v + 1));
                    if (phi > 0) g.external[g.vertices.back()] = phi;
                }
                int eid = 0;
                for (std::size_t s = 0; s < slots.size(); ++s)
                    for (int c = 0; c < mult[s]; ++c) {
                        GraphEdge e;
                        e.id = "e" + std::to_string(++eid);
                        e.a = g.vertices[slots[s].first];
                        e.b = g.vertices[slots[s].second];
                        e.mass = "m";
                        g.edges.push_back(std::move(e));
                    }
                if (!is_connected(g)) return;
                if (seen.insert(canonical_key(g)).second) out.push_back(std::move(g));
                return;
            }
            for (int m = 0; m <= remaining; ++m) {
                mult[slot] = m;
                rec(slot + 1, remaining - m);
            }
            mult[slot] = 0;
        };
        rec(0, max_e);
    }
    return out;
}

}  // namespace pinch
