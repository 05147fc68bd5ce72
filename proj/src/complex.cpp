#include "sdtop/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace sdtop {

void SimplicialComplex::build_index() {
    index_.clear();
    index_.resize(by_dim_.size());
    offsets_.assign(by_dim_.size() + 1, 0);
    for (std::size_t d = 0; d < by_dim_.size(); ++d) {
        auto& simps = by_dim_[d];
        std::sort(simps.begin(), simps.end());
        index_[d].reserve(simps.size() * 2);
        for (std::size_t i = 0; i < simps.size(); ++i) index_[d].emplace(simps[i], static_cast<int>(i));
        offsets_[d + 1] = offsets_[d] + static_cast<long long>(simps.size());
    }
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& maximal) {
    std::unordered_set<Simplex, SimplexHash> seen;
    // Close downward: every subset of a stored simplex is stored.
    std::vector<Simplex> stack(maximal.begin(), maximal.end());
    while (!stack.empty()) {
        Simplex s = std::move(stack.back());
        stack.pop_back();
        if (!seen.insert(s).second) continue;
        if (s.dim() > 0)
            for (auto& f : s.facets())
                if (!seen.count(f)) stack.push_back(f);
    }
    SimplicialComplex k;
    int maxdim = -1;
    for (const auto& s : seen) maxdim = std::max(maxdim, s.dim());
    k.by_dim_.resize(static_cast<std::size_t>(maxdim + 1));
    for (const auto& s : seen) k.by_dim_[static_cast<std::size_t>(s.dim())].push_back(s);
    k.build_index();
    return k;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
    SimplicialComplex k;
    int maxdim = -1;
    for (const auto& s : simplices) maxdim = std::max(maxdim, s.dim());
    k.by_dim_.resize(static_cast<std::size_t>(maxdim + 1));
    for (auto& s : simplices) {
        int d = s.dim();
        k.by_dim_[static_cast<std::size_t>(d)].push_back(std::move(s));
    }
    k.build_index();
    for (int d = 1; d <= k.dim(); ++d)
        for (const auto& s : k.simplices(d))
            for (std::size_t i = 0; i < s.size(); ++i)
                if (!k.contains(s.facet_dropping(i)))
                    throw std::invalid_argument("simplex set is not face-closed");
    for (std::size_t d = 0; d < k.by_dim_.size(); ++d)
        if (k.by_dim_[d].size() != k.index_[d].size())
            throw std::invalid_argument("duplicate simplex in input");
    return k;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
    static const std::vector<Simplex> kEmpty;
    if (d < 0 || d > dim()) return kEmpty;
    return by_dim_[static_cast<std::size_t>(d)];
}

long long SimplicialComplex::total_count() const {
    return offsets_.empty() ? 0 : offsets_.back();
}

int SimplicialComplex::index_of(const Simplex& s) const {
    int d = s.dim();
    if (d < 0 || d > dim()) return -1;
    const auto& m = index_[static_cast<std::size_t>(d)];
    auto it = m.find(s);
    return it == m.end() ? -1 : it->second;
}

FVector SimplicialComplex::f_vector(long long f_minus_one) const {
    FVector f;
    f.entries.push_back(f_minus_one);
    for (int d = 0; d <= dim(); ++d) f.entries.push_back(count(d));
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0) ? count(d) : -count(d);
    return chi;
}

bool SimplicialComplex::has_subcomplex(const SimplicialComplex& sub) const {
    for (int d = 0; d <= sub.dim(); ++d)
        for (const auto& s : sub.simplices(d))
            if (!contains(s)) return false;
    return true;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int d = 0; d <= dim(); ++d) {
        for (const auto& s : simplices(d)) {
            if (d == dim()) {
                out.push_back(s);
                continue;
            }
            // Maximal iff no stored simplex of dimension d+1 has s as a facet.
            bool has_cofacet = false;
            const auto& above = simplices(d + 1);
            if (!above.empty()) {
                // Scan cofaces by extending s with each vertex seen in the complex.
                for (const auto& v0 : simplices(0)) {
                    VertexId v = v0[0];
                    if (s.has_vertex(v)) continue;
                    if (contains(s.with_vertex(v))) {
                        has_cofacet = true;
                        break;
                    }
                }
            }
            if (!has_cofacet) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialComplex standard_simplex(int n) {
    if (n < 0) throw std::invalid_argument("standard_simplex: n must be >= 0");
    std::vector<VertexId> all(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i;
    return SimplicialComplex::from_maximal({Simplex::from_sorted(all)});
}

SimplicialComplex boundary_complex(int n) {
    if (n < 1) throw std::invalid_argument("boundary_complex: n must be >= 1 (empty boundary)");
    std::vector<VertexId> all(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i;
    Simplex top = Simplex::from_sorted(all);
    return SimplicialComplex::from_maximal(top.facets());
}

SimplicialComplex skeleton(const SimplicialComplex& k, int i) {
    if (i < 0 || i > k.dim()) throw std::invalid_argument("skeleton: index out of range");
    std::vector<Simplex> simps;
    for (int d = 0; d <= i; ++d)
        for (const auto& s : k.simplices(d)) simps.push_back(s);
    return SimplicialComplex::from_simplices(std::move(simps));
}

SimplicialComplex cone(const SimplicialComplex& k, VertexId apex) {
    if (k.is_empty()) throw std::invalid_argument("cone: empty complex");
    if (k.contains(Simplex::vertex(apex))) throw std::invalid_argument("cone: apex collides with a vertex of K");
    std::vector<Simplex> simps{Simplex::vertex(apex)};
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& s : k.simplices(d)) {
            simps.push_back(s);
            simps.push_back(s.with_vertex(apex));
        }
    return SimplicialComplex::from_simplices(std::move(simps));
}

SimplicialComplex subcomplex_from_flags(const SimplicialComplex& k, const std::vector<char>& keep) {
    std::vector<Simplex> simps;
    for (int d = 0; d <= k.dim(); ++d) {
        const auto& all = k.simplices(d);
        for (std::size_t i = 0; i < all.size(); ++i)
            if (keep[static_cast<std::size_t>(k.flat_id(d, static_cast<int>(i)))]) simps.push_back(all[i]);
    }
    return SimplicialComplex::from_simplices(std::move(simps));
}

SimplicialComplex closure_in(const SimplicialComplex& k, const std::vector<Simplex>& members) {
    for (const auto& m : members)
        if (!k.contains(m)) throw std::invalid_argument("closure_in: member not in ambient complex");
    return SimplicialComplex::from_maximal(members);
}

}  // namespace sdtop
