#pragma once

// Signature grids with rotation systems, and #CSP instances.

#include "holant/signature.hpp"

#include <map>
#include <string>
#include <vector>

namespace holant {

// Named signatures shared by the vertices of a grid or the constraints of a CSP.
struct Registry {
    std::vector<std::string> names;
    std::vector<Signature> sigs;

    int find(const std::string& name) const {
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == name) return static_cast<int>(k);
        return -1;
    }

    // Returns the index of `name`, adding it if absent. An existing entry must agree.
    int add(const std::string& name, const Signature& f) {
        int k = find(name);
        if (k >= 0) {
            if (sigs[static_cast<std::size_t>(k)] != f) throw DomainError("registry: conflicting entries for " + name);
            return k;
        }
        names.push_back(name);
        sigs.push_back(f);
        return static_cast<int>(sigs.size() - 1);
    }

    const Signature& operator[](int k) const { return sigs[static_cast<std::size_t>(k)]; }
    std::size_t size() const { return sigs.size(); }
};

struct GridVertex {
    int sig = 0;             // registry index
    std::vector<int> edges;  // counterclockwise, starting at the first variable
    int side = -1;           // 0: left (rows), 1: right (columns), -1: unlabeled
};

// Edges are numbered 0..num_edges-1. An internal edge occurs in exactly two
// vertex slots (twice at one vertex for a self-loop); a dangling edge occurs
// once and is listed in `dangling`, whose order is the gate's variable order.
struct SignatureGrid {
    Registry registry;
    std::vector<GridVertex> vertices;
    int num_edges = 0;
    std::vector<int> dangling;

    const Signature& sig(int v) const { return registry[vertices[static_cast<std::size_t>(v)].sig]; }

    int add_vertex(int sig_index, std::vector<int> edges, int side = -1) {
        vertices.push_back({sig_index, std::move(edges), side});
        return static_cast<int>(vertices.size() - 1);
    }

    int new_edge() { return num_edges++; }

    // (vertex, slot) pairs for each edge.
    std::vector<std::vector<std::pair<int, int>>> incidences() const {
        std::vector<std::vector<std::pair<int, int>>> inc(static_cast<std::size_t>(num_edges));
        for (std::size_t v = 0; v < vertices.size(); ++v)
            for (std::size_t k = 0; k < vertices[v].edges.size(); ++k) {
                int e = vertices[v].edges[k];
                if (e < 0 || e >= num_edges) throw DomainError("grid: vertex " + std::to_string(v) + " uses unknown edge " + std::to_string(e));
                inc[static_cast<std::size_t>(e)].emplace_back(static_cast<int>(v), static_cast<int>(k));
            }
        return inc;
    }

    // Structural checks: arities, edge multiplicities, dangling list.
    void validate() const {
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            const auto& vx = vertices[v];
            if (vx.sig < 0 || vx.sig >= static_cast<int>(registry.size()))
                throw DomainError("grid: vertex " + std::to_string(v) + " has no signature");
            if (registry[vx.sig].arity() != static_cast<int>(vx.edges.size()))
                throw DomainError("grid: vertex " + std::to_string(v) + " has degree " + std::to_string(vx.edges.size()) +
                                  " but its signature has arity " + std::to_string(registry[vx.sig].arity()));
        }
        auto inc = incidences();
        std::vector<char> is_dangling(static_cast<std::size_t>(num_edges), 0);
        for (int e : dangling) {
            if (e < 0 || e >= num_edges) throw DomainError("grid: unknown dangling edge " + std::to_string(e));
            if (is_dangling[static_cast<std::size_t>(e)]) throw DomainError("grid: dangling edge listed twice");
            is_dangling[static_cast<std::size_t>(e)] = 1;
        }
        for (int e = 0; e < num_edges; ++e) {
            std::size_t want = is_dangling[static_cast<std::size_t>(e)] ? 1 : 2;
            if (inc[static_cast<std::size_t>(e)].size() != want)
                throw DomainError("grid: edge " + std::to_string(e) + " has " + std::to_string(inc[static_cast<std::size_t>(e)].size()) +
                                  " endpoints, expected " + std::to_string(want));
        }
    }

    // Every internal edge joins side 0 to side 1.
    bool is_bipartite_labeled() const {
        auto inc = incidences();
        for (int e = 0; e < num_edges; ++e) {
            const auto& ends = inc[static_cast<std::size_t>(e)];
            if (ends.size() != 2) return false;
            int a = vertices[static_cast<std::size_t>(ends[0].first)].side;
            int b = vertices[static_cast<std::size_t>(ends[1].first)].side;
            if (a < 0 || b < 0 || a == b) return false;
        }
        for (const auto& v : vertices)
            if (v.side < 0) return false;
        return true;
    }
};

// Rotation system on darts. vertex v's slot k is a dart; faces are orbits of
// "cross the edge, then step to the next slot counterclockwise".
struct Embedding {
    std::vector<std::vector<int>> rotation;  // per vertex: edge ids, ccw

    struct Stats {
        int vertices = 0, edges = 0, faces = 0, components = 0;
        bool planar = false;
    };

    // Faces as lists of darts (vertex, slot).
    std::vector<std::vector<std::pair<int, int>>> faces() const {
        std::map<int, std::vector<std::pair<int, int>>> ends;
        for (std::size_t v = 0; v < rotation.size(); ++v)
            for (std::size_t k = 0; k < rotation[v].size(); ++k)
                ends[rotation[v][k]].emplace_back(static_cast<int>(v), static_cast<int>(k));
        for (auto& [e, d] : ends)
            if (d.size() != 2) throw DomainError("embedding: edge " + std::to_string(e) + " does not have two ends");
        auto twin = [&](std::pair<int, int> d) {
            const auto& pair = ends.at(rotation[static_cast<std::size_t>(d.first)][static_cast<std::size_t>(d.second)]);
            return pair[0] == d ? pair[1] : pair[0];
        };
        std::vector<std::vector<char>> seen(rotation.size());
        for (std::size_t v = 0; v < rotation.size(); ++v) seen[v].assign(rotation[v].size(), 0);
        std::vector<std::vector<std::pair<int, int>>> out;
        for (std::size_t v = 0; v < rotation.size(); ++v)
            for (std::size_t k = 0; k < rotation[v].size(); ++k) {
                if (seen[v][k]) continue;
                std::vector<std::pair<int, int>> face;
                std::pair<int, int> d{static_cast<int>(v), static_cast<int>(k)};
                while (!seen[static_cast<std::size_t>(d.first)][static_cast<std::size_t>(d.second)]) {
                    seen[static_cast<std::size_t>(d.first)][static_cast<std::size_t>(d.second)] = 1;
                    face.push_back(d);
                    auto t = twin(d);
                    int deg = static_cast<int>(rotation[static_cast<std::size_t>(t.first)].size());
                    d = {t.first, (t.second + 1) % deg};
                }
                out.push_back(std::move(face));
            }
        return out;
    }

    Stats stats() const {
        Stats s;
        s.vertices = static_cast<int>(rotation.size());
        std::vector<int> parent(rotation.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            return v;
        };
        std::map<int, int> first_end;
        int slots = 0;
        for (std::size_t v = 0; v < rotation.size(); ++v)
            for (int e : rotation[v]) {
                ++slots;
                auto it = first_end.find(e);
                if (it == first_end.end())
                    first_end[e] = static_cast<int>(v);
                else
                    parent[static_cast<std::size_t>(find(it->second))] = find(static_cast<int>(v));
            }
        s.edges = slots / 2;
        for (std::size_t v = 0; v < rotation.size(); ++v)
            if (find(static_cast<int>(v)) == static_cast<int>(v)) ++s.components;
        int isolated = 0;
        for (const auto& r : rotation)
            if (r.empty()) ++isolated;
        s.faces = static_cast<int>(faces().size()) + isolated;  // an isolated vertex bounds one face
        s.planar = s.vertices - s.edges + s.faces == 2 * s.components;
        return s;
    }

    bool is_planar() const { return stats().planar; }
};

// The grid's rotation system; dangling edges are closed off at one extra
// vertex in reversed order, so a planar gate keeps them on its outer face in
// counterclockwise order.
inline Embedding grid_embedding(const SignatureGrid& g) {
    Embedding emb;
    for (const auto& v : g.vertices) emb.rotation.push_back(v.edges);
    if (!g.dangling.empty()) emb.rotation.emplace_back(g.dangling.rbegin(), g.dangling.rend());
    return emb;
}

inline bool is_planar(const SignatureGrid& g) {
    g.validate();
    return grid_embedding(g).is_planar();
}

// #CSP instance: constraint k applies registry signature `sig` to the tuple `on`.
struct CspInstance {
    int vars = 0;
    Registry registry;
    struct Constraint {
        int sig = 0;
        std::vector<int> on;
    };
    std::vector<Constraint> constraints;

    void validate() const {
        if (vars < 0) throw DomainError("csp: negative variable count");
        for (std::size_t c = 0; c < constraints.size(); ++c) {
            const auto& k = constraints[c];
            if (k.sig < 0 || k.sig >= static_cast<int>(registry.size()))
                throw DomainError("csp: constraint " + std::to_string(c) + " has no signature");
            if (registry[k.sig].arity() != static_cast<int>(k.on.size()))
                throw DomainError("csp: constraint " + std::to_string(c) + " has the wrong number of variables");
            for (int v : k.on)
                if (v < 0 || v >= vars) throw DomainError("csp: constraint " + std::to_string(c) + " uses variable " + std::to_string(v) + " out of range");
        }
    }
};

inline std::string equality_name(int d) { return "=" + std::to_string(d); }

// Variables become Equality vertices (side 0), constraints stay on side 1.
// Each variable's edges are ordered by (constraint, slot).
inline SignatureGrid csp_to_grid(const CspInstance& inst) {
    inst.validate();
    SignatureGrid g;
    g.registry = inst.registry;
    std::vector<std::vector<int>> var_edges(static_cast<std::size_t>(inst.vars));
    std::vector<std::vector<int>> con_edges;
    for (const auto& c : inst.constraints) {
        std::vector<int> es;
        for (int v : c.on) {
            int e = g.new_edge();
            es.push_back(e);
            var_edges[static_cast<std::size_t>(v)].push_back(e);
        }
        con_edges.push_back(std::move(es));
    }
    for (int v = 0; v < inst.vars; ++v) {
        int d = static_cast<int>(var_edges[static_cast<std::size_t>(v)].size());
        int s = g.registry.add(equality_name(d), Signature::equality(d));
        g.add_vertex(s, var_edges[static_cast<std::size_t>(v)], 0);
    }
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) g.add_vertex(inst.constraints[c].sig, con_edges[c], 1);
    return g;
}

// Puts an =2 vertex (side 0) in the middle of every internal edge; the
// original vertices move to side 1. Dangling edges are left alone.
inline SignatureGrid two_stretch(const SignatureGrid& in) {
    in.validate();
    SignatureGrid g = in;
    int eq2 = g.registry.add(equality_name(2), Signature::equality(2));
    for (auto& v : g.vertices) v.side = 1;
    std::vector<char> is_dangling(static_cast<std::size_t>(in.num_edges), 0);
    for (int e : in.dangling) is_dangling[static_cast<std::size_t>(e)] = 1;
    auto inc = in.incidences();
    for (int e = 0; e < in.num_edges; ++e) {
        if (is_dangling[static_cast<std::size_t>(e)]) continue;
        auto [v2, k2] = inc[static_cast<std::size_t>(e)][1];
        int fresh = g.new_edge();
        g.vertices[static_cast<std::size_t>(v2)].edges[static_cast<std::size_t>(k2)] = fresh;
        g.add_vertex(eq2, {e, fresh}, 0);
    }
    return g;
}

// Replaces each listed internal edge u - v by u - w - v with w carrying the
// binary signature `b` (w's first edge goes to the first endpoint).
inline SignatureGrid subdivide_edges(const SignatureGrid& in, const std::vector<int>& edges, const std::string& name,
                                     const Signature& b) {
    if (b.arity() != 2) throw DomainError("subdivide_edges: signature must be binary");
    in.validate();
    SignatureGrid g = in;
    int s = g.registry.add(name, b);
    auto inc = in.incidences();
    for (int e : edges) {
        if (e < 0 || e >= in.num_edges || inc[static_cast<std::size_t>(e)].size() != 2)
            throw DomainError("subdivide_edges: edge " + std::to_string(e) + " is not internal");
        auto [v2, k2] = inc[static_cast<std::size_t>(e)][1];
        int fresh = g.new_edge();
        g.vertices[static_cast<std::size_t>(v2)].edges[static_cast<std::size_t>(k2)] = fresh;
        g.add_vertex(s, {e, fresh});
    }
    return g;
}

} // namespace holant
