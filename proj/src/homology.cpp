#include "sdtop/homology.hpp"

#include <stdexcept>

namespace sdtop {

void Gf2ChainComplex::verify() const {
    if (boundary.size() != sizes.size()) throw std::logic_error("chain complex: shape mismatch");
    for (std::size_t p = 0; p < sizes.size(); ++p) {
        if (static_cast<int>(boundary[p].size()) != sizes[p])
            throw std::logic_error("chain complex: boundary row count mismatch");
        int below = p == 0 ? 0 : sizes[p - 1];
        for (const auto& row : boundary[p])
            for (int idx : row)
                if (idx < 0 || idx >= below) throw std::logic_error("chain complex: boundary index out of range");
    }
    // dd = 0: the boundary of each cell's boundary cancels mod 2.
    for (std::size_t p = 2; p < sizes.size(); ++p) {
        int below2 = sizes[p - 2];
        std::vector<char> acc(static_cast<std::size_t>(below2), 0);
        for (const auto& row : boundary[p]) {
            for (int f : row)
                for (int g : boundary[p - 1][static_cast<std::size_t>(f)])
                    acc[static_cast<std::size_t>(g)] ^= 1;
            for (int f : row)
                for (int g : boundary[p - 1][static_cast<std::size_t>(f)]) {
                    if (acc[static_cast<std::size_t>(g)]) throw std::logic_error("chain complex: dd != 0");
                    acc[static_cast<std::size_t>(g)] = 0;
                }
        }
    }
}

Gf2Matrix Gf2ChainComplex::boundary_matrix(int p) const {
    int rows = sizes[static_cast<std::size_t>(p)];
    int cols = p == 0 ? 0 : sizes[static_cast<std::size_t>(p - 1)];
    Gf2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c : boundary[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)]) m.set(r, c);
    return m;
}

std::vector<int> Gf2ChainComplex::betti() const {
    int top = top_degree();
    std::vector<int> ranks(static_cast<std::size_t>(top + 2), 0);
    for (int p = 1; p <= top; ++p) {
        Gf2RankAccumulator acc(sizes[static_cast<std::size_t>(p - 1)]);
        std::vector<std::uint64_t> row(static_cast<std::size_t>(acc.words()));
        for (const auto& cell : boundary[static_cast<std::size_t>(p)]) {
            std::fill(row.begin(), row.end(), 0);
            for (int f : cell) row[static_cast<std::size_t>(f >> 6)] ^= (1ULL << (f & 63));
            acc.add_row(row);
        }
        ranks[static_cast<std::size_t>(p)] = acc.rank();
    }
    std::vector<int> b(static_cast<std::size_t>(top + 1));
    for (int p = 0; p <= top; ++p)
        b[static_cast<std::size_t>(p)] =
            sizes[static_cast<std::size_t>(p)] - ranks[static_cast<std::size_t>(p)] - ranks[static_cast<std::size_t>(p + 1)];
    return b;
}

Gf2ChainComplex chain_complex_of(const SimplicialComplex& k) {
    Gf2ChainComplex cc;
    int n = k.dim();
    if (n < 0) return cc;
    cc.sizes.resize(static_cast<std::size_t>(n + 1));
    cc.boundary.resize(static_cast<std::size_t>(n + 1));
    for (int p = 0; p <= n; ++p) {
        const auto& simps = k.simplices(p);
        cc.sizes[static_cast<std::size_t>(p)] = static_cast<int>(simps.size());
        auto& rows = cc.boundary[static_cast<std::size_t>(p)];
        rows.resize(simps.size());
        if (p == 0) continue;
        for (std::size_t i = 0; i < simps.size(); ++i) {
            auto& row = rows[i];
            row.reserve(simps[i].size());
            for (std::size_t j = 0; j < simps[i].size(); ++j)
                row.push_back(k.index_of(simps[i].facet_dropping(j)));
        }
    }
    return cc;
}

std::vector<int> betti(const SimplicialComplex& k) {
    return chain_complex_of(k).betti();
}

std::vector<int> relative_betti(const SimplicialComplex& k, const SimplicialComplex& l) {
    if (!k.has_subcomplex(l)) throw std::invalid_argument("relative_betti: L is not a subcomplex of K");
    int n = k.dim();
    Gf2ChainComplex cc;
    if (n < 0) return {};
    cc.sizes.resize(static_cast<std::size_t>(n + 1));
    cc.boundary.resize(static_cast<std::size_t>(n + 1));
    // Quotient basis: simplices of K not in L, with boundary projected off L.
    std::vector<std::vector<int>> quotient_index(static_cast<std::size_t>(n + 1));
    for (int p = 0; p <= n; ++p) {
        const auto& simps = k.simplices(p);
        quotient_index[static_cast<std::size_t>(p)].assign(simps.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < simps.size(); ++i)
            if (!l.contains(simps[i])) quotient_index[static_cast<std::size_t>(p)][i] = next++;
        cc.sizes[static_cast<std::size_t>(p)] = next;
    }
    for (int p = 0; p <= n; ++p) {
        const auto& simps = k.simplices(p);
        auto& rows = cc.boundary[static_cast<std::size_t>(p)];
        rows.resize(static_cast<std::size_t>(cc.sizes[static_cast<std::size_t>(p)]));
        if (p == 0) continue;
        for (std::size_t i = 0; i < simps.size(); ++i) {
            if (quotient_index[static_cast<std::size_t>(p)][i] < 0) continue;
            auto& row = rows[static_cast<std::size_t>(quotient_index[static_cast<std::size_t>(p)][i])];
            for (std::size_t j = 0; j < simps[i].size(); ++j) {
                int fi = k.index_of(simps[i].facet_dropping(j));
                int qi = quotient_index[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(fi)];
                if (qi >= 0) row.push_back(qi);
            }
        }
    }
    return cc.betti();
}

Components connected_components(const SimplicialComplex& k) {
    Components out;
    if (k.is_empty()) return out;
    const auto& verts = k.simplices(0);
    std::unordered_map<VertexId, int> pos;
    pos.reserve(verts.size() * 2);
    for (std::size_t i = 0; i < verts.size(); ++i) pos.emplace(verts[i][0], static_cast<int>(i));
    UnionFind uf(static_cast<int>(verts.size()));
    for (const auto& e : k.simplices(1)) uf.unite(pos.at(e[0]), pos.at(e[1]));
    std::unordered_map<int, int> root_label;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        auto it = root_label.find(r);
        int label;
        if (it == root_label.end()) {
            label = out.count++;
            root_label.emplace(r, label);
        } else {
            label = it->second;
        }
        out.vertex_component.emplace(verts[i][0], label);
    }
    out.simplex_component.resize(static_cast<std::size_t>(k.dim() + 1));
    for (int d = 0; d <= k.dim(); ++d) {
        const auto& simps = k.simplices(d);
        auto& comp = out.simplex_component[static_cast<std::size_t>(d)];
        comp.resize(simps.size());
        for (std::size_t i = 0; i < simps.size(); ++i)
            comp[i] = root_label.at(uf.find(pos.at(simps[i][0])));
    }
    return out;
}

}  // namespace sdtop
