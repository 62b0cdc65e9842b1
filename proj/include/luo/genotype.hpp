#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"

namespace luo {

// Binary decision vector over the initially-agricultural cells: bit i = 1 means
// "transform the i-th agricultural cell (row-major) into urban".
using Genotype = std::vector<std::uint8_t>;

inline int unitation(const Genotype& g) {
    return std::accumulate(g.begin(), g.end(), 0,
                           [](int acc, std::uint8_t b) { return acc + (b != 0); });
}

inline bool is_feasible(const Genotype& g, const Instance& inst) {
    return unitation(g) == inst.budget();
}

inline void check_genotype(const Genotype& g, const Instance& inst, const char* op) {
    if (static_cast<int>(g.size()) != inst.gene_count())
        throw std::invalid_argument(std::string(op) + ": genotype length does not match instance");
}

inline std::string genotype_to_string(const Genotype& g) {
    std::string s(g.size(), '0');
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i]) s[i] = '1';
    return s;
}

inline Genotype genotype_from_string(const std::string& s) {
    Genotype g(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            g[i] = 1;
        else if (s[i] != '0')
            throw ParseError("genotype string must contain only '0' and '1'");
    }
    return g;
}

// Category grid after applying a genotype to an instance.
struct DecodedMap {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> cat;

    std::uint8_t at(int flat) const { return cat[static_cast<std::size_t>(flat)]; }
    std::uint8_t at(int r, int c) const { return at(r * cols + c); }
    int size() const { return rows * cols; }
};

inline void decode_into(const Genotype& g, const Instance& inst, DecodedMap& out) {
    check_genotype(g, inst, "decode");
    out.rows = inst.rows();
    out.cols = inst.cols();
    out.cat = inst.categories();
    const auto& genes = inst.gene_cells();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i]) out.cat[static_cast<std::size_t>(genes[i])] = kUrban;
}

inline DecodedMap decode(const Genotype& g, const Instance& inst) {
    DecodedMap m;
    decode_into(g, inst, m);
    return m;
}

// Count of von Neumann neighbors of `flat` holding category `code`.
inline int count_adjacent(const DecodedMap& m, int flat, std::uint8_t code) {
    const int r = flat / m.cols, c = flat % m.cols;
    int cnt = 0;
    if (r > 0) cnt += m.at(flat - m.cols) == code;
    if (c > 0) cnt += m.at(flat - 1) == code;
    if (c + 1 < m.cols) cnt += m.at(flat + 1) == code;
    if (r + 1 < m.rows) cnt += m.at(flat + m.cols) == code;
    return cnt;
}

// Maximal connected components (von Neumann) of all urban cells, fixed urban
// included. Components are sorted internally and ordered by their first cell.
inline std::vector<std::vector<int>> urban_regions(const DecodedMap& m) {
    std::vector<std::vector<int>> regions;
    std::vector<char> visited(static_cast<std::size_t>(m.size()), 0);
    std::vector<int> stack;
    for (int start = 0; start < m.size(); ++start) {
        if (m.at(start) != kUrban || visited[static_cast<std::size_t>(start)]) continue;
        std::vector<int> component;
        stack.assign(1, start);
        visited[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            component.push_back(cur);
            const int r = cur / m.cols, c = cur % m.cols;
            const int nb[4] = {r > 0 ? cur - m.cols : -1, c > 0 ? cur - 1 : -1,
                               c + 1 < m.cols ? cur + 1 : -1, r + 1 < m.rows ? cur + m.cols : -1};
            for (int next : nb) {
                if (next < 0 || visited[static_cast<std::size_t>(next)]) continue;
                if (m.at(next) != kUrban) continue;
                visited[static_cast<std::size_t>(next)] = 1;
                stack.push_back(next);
            }
        }
        std::sort(component.begin(), component.end());
        regions.push_back(std::move(component));
    }
    return regions;
}

// Disjoint clusters of genotype positions treated as atomic units in crossover.
using MaskSet = std::vector<std::vector<int>>;

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Connected components of the cell set marked in `in_set`, optionally allowing
// paths through fixed urban connector cells. Emits components of gene positions.
inline MaskSet cell_components(const Instance& inst, const std::vector<char>& in_set,
                               bool bridge_fixed_urban) {
    MaskSet masks;
    std::vector<char> visited(static_cast<std::size_t>(inst.size()), 0);
    std::vector<int> stack;
    for (int start = 0; start < inst.size(); ++start) {
        if (!in_set[static_cast<std::size_t>(start)] || visited[static_cast<std::size_t>(start)])
            continue;
        std::vector<int> positions;
        stack.assign(1, start);
        visited[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            if (in_set[static_cast<std::size_t>(cur)]) {
                const int gene = inst.gene_at(cur);
                if (gene >= 0) positions.push_back(gene);
            }
            const int r = cur / inst.cols(), c = cur % inst.cols();
            const int nb[4] = {r > 0 ? cur - inst.cols() : -1, c > 0 ? cur - 1 : -1,
                               c + 1 < inst.cols() ? cur + 1 : -1,
                               r + 1 < inst.rows() ? cur + inst.cols() : -1};
            for (int next : nb) {
                if (next < 0 || visited[static_cast<std::size_t>(next)]) continue;
                const bool member = in_set[static_cast<std::size_t>(next)];
                const bool connector =
                    bridge_fixed_urban && inst.category(next) == kUrban;
                if (!member && !connector) continue;
                visited[static_cast<std::size_t>(next)] = 1;
                stack.push_back(next);
            }
        }
        if (!positions.empty()) {
            std::sort(positions.begin(), positions.end());
            masks.push_back(std::move(positions));
        }
    }
    std::sort(masks.begin(), masks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return masks;
}

}  // namespace detail

// SRC clustering: one mask per merged urban region across both parents' decoded
// maps, restricted to genotype positions. Fixed urban cells carry no positions
// and act only as connectors; regions of the two parents sharing any position
// are merged so the resulting family is disjoint.
inline MaskSet cluster_src(const Genotype& a, const Genotype& b, const Instance& inst) {
    check_genotype(a, inst, "cluster_src");
    check_genotype(b, inst, "cluster_src");
    MaskSet raw;
    DecodedMap m;
    for (const Genotype* g : {&a, &b}) {
        decode_into(*g, inst, m);
        for (auto& region : urban_regions(m)) {
            std::vector<int> positions;
            for (int cell : region) {
                const int gene = inst.gene_at(cell);
                if (gene >= 0) positions.push_back(gene);
            }
            if (!positions.empty()) raw.push_back(std::move(positions));
        }
    }
    detail::UnionFind uf(inst.gene_count());
    for (const auto& mask : raw)
        for (std::size_t i = 1; i < mask.size(); ++i) uf.unite(mask[0], mask[i]);
    std::vector<std::vector<int>> grouped(static_cast<std::size_t>(inst.gene_count()));
    for (const auto& mask : raw)
        for (int p : mask) {
            auto& bucket = grouped[static_cast<std::size_t>(uf.find(p))];
            if (bucket.empty() || bucket.back() != p) bucket.push_back(p);
        }
    MaskSet out;
    for (auto& bucket : grouped) {
        if (bucket.empty()) continue;
        std::sort(bucket.begin(), bucket.end());
        bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
        out.push_back(std::move(bucket));
    }
    return out;
}

// DRC clustering: connected components of the cells whose genotype bits differ.
// By default fixed urban cells do not bridge components; the alternative
// reading is preserved behind `bridge_fixed_urban`.
inline MaskSet cluster_drc(const Genotype& a, const Genotype& b, const Instance& inst,
                           bool bridge_fixed_urban = false) {
    check_genotype(a, inst, "cluster_drc");
    check_genotype(b, inst, "cluster_drc");
    std::vector<char> differs(static_cast<std::size_t>(inst.size()), 0);
    const auto& genes = inst.gene_cells();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) differs[static_cast<std::size_t>(genes[i])] = 1;
    return detail::cell_components(inst, differs, bridge_fixed_urban);
}

// IDRC clustering: DRC components split by direction of difference (a=1,b=0 vs
// a=0,b=1) and re-clustered within each direction class.
inline MaskSet cluster_idrc(const Genotype& a, const Genotype& b, const Instance& inst,
                            bool bridge_fixed_urban = false) {
    check_genotype(a, inst, "cluster_idrc");
    check_genotype(b, inst, "cluster_idrc");
    MaskSet coarse = cluster_drc(a, b, inst, bridge_fixed_urban);
    MaskSet out;
    std::vector<char> in_set(static_cast<std::size_t>(inst.size()), 0);
    const auto& genes = inst.gene_cells();
    for (const auto& mask : coarse) {
        MaskSet split;
        for (int direction = 0; direction < 2; ++direction) {
            std::fill(in_set.begin(), in_set.end(), 0);
            bool any = false;
            for (int p : mask) {
                const bool from_a = a[static_cast<std::size_t>(p)] != 0;
                if (from_a == (direction == 0)) {
                    in_set[static_cast<std::size_t>(genes[static_cast<std::size_t>(p)])] = 1;
                    any = true;
                }
            }
            if (!any) continue;
            for (auto& sub : detail::cell_components(inst, in_set, bridge_fixed_urban))
                split.push_back(std::move(sub));
        }
        std::sort(split.begin(), split.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
        for (auto& sub : split) out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace luo
