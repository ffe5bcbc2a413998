#pragma once

#include "siltkit/errors.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace siltkit {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

/// Finite quiver.  Vertices and arrows are addressed by position; names are
/// kept for input and output.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_arrows() const { return static_cast<int>(arrows.size()); }

    int vertex_index(const std::string& name) const {
        auto it = std::find(vertices.begin(), vertices.end(), name);
        if (it == vertices.end())
            throw UnknownVertex("'" + name + "'");
        return static_cast<int>(it - vertices.begin());
    }

    int arrow_index(const std::string& name) const {
        for (int i = 0; i < num_arrows(); ++i)
            if (arrows[static_cast<std::size_t>(i)].name == name)
                return i;
        return -1;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= num_vertices())
            throw UnknownVertex("index " + std::to_string(v));
    }

    /// Ids pairwise distinct, endpoints declared.
    void validate() const {
        std::set<std::string> names(vertices.begin(), vertices.end());
        if (names.size() != vertices.size())
            throw InvalidArgument("duplicate vertex id");
        std::set<std::string> arrow_names;
        for (const auto& a : arrows) {
            if (!arrow_names.insert(a.name).second)
                throw InvalidArgument("duplicate arrow id '" + a.name + "'");
            if (a.source < 0 || a.source >= num_vertices() || a.target < 0 || a.target >= num_vertices())
                throw UnknownVertex("endpoint of arrow '" + a.name + "'");
        }
    }
};

/// A path written target-to-source: arrows[0] is traversed last.  Trivial
/// paths have no arrows and source == target.
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }

    static Path trivial(int v) { return Path{v, v, {}}; }

    /// p * q, defined when p.source == q.target (first q, then p).
    friend Path concat(const Path& p, const Path& q) {
        Path r{q.source, p.target, p.arrows};
        r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
        return r;
    }

    /// Degree-lexicographic: (length, arrow ids, endpoints).
    friend bool operator<(const Path& a, const Path& b) {
        return std::make_tuple(a.arrows.size(), a.arrows, a.target, a.source) <
               std::make_tuple(b.arrows.size(), b.arrows, b.target, b.source);
    }
    friend bool operator==(const Path& a, const Path& b) {
        return a.source == b.source && a.target == b.target && a.arrows == b.arrows;
    }
};

inline std::string path_name(const Quiver& q, const Path& p) {
    if (p.arrows.empty())
        return "e_" + q.vertices[static_cast<std::size_t>(p.source)];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i)
            s += ';';
        s += q.arrows[static_cast<std::size_t>(p.arrows[i])].name;
    }
    return s;
}

} // namespace siltkit
