#include "sdtop/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sdtop {

std::vector<Simplex> SubdivisionResult::flag_of(const Simplex& sd_simplex) const {
    std::vector<Simplex> flag;
    flag.reserve(sd_simplex.size());
    for (VertexId v : sd_simplex.vertices()) flag.push_back(vertex_parent[static_cast<std::size_t>(v)]);
    std::sort(flag.begin(), flag.end(),
              [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    return flag;
}

const Simplex& SubdivisionResult::top_parent_of(const Simplex& sd_simplex) const {
    const Simplex* best = nullptr;
    for (VertexId v : sd_simplex.vertices()) {
        const Simplex& p = vertex_parent[static_cast<std::size_t>(v)];
        if (!best || p.size() > best->size()) best = &p;
    }
    return *best;
}

const Simplex& SubdivisionResult::min_parent_of(const Simplex& sd_simplex) const {
    const Simplex* best = nullptr;
    for (VertexId v : sd_simplex.vertices()) {
        const Simplex& p = vertex_parent[static_cast<std::size_t>(v)];
        if (!best || p.size() < best->size()) best = &p;
    }
    return *best;
}

namespace {

// Enumerate the nonempty proper faces of a simplex.
void for_each_proper_face(const Simplex& s, const std::function<void(Simplex&&)>& fn) {
    std::size_t m = s.size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
        std::vector<VertexId> verts;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) verts.push_back(s[i]);
        fn(Simplex::from_sorted(std::move(verts)));
    }
}

}  // namespace

SubdivisionResult subdivide(const SimplicialComplex& k) {
    if (k.is_empty()) throw std::invalid_argument("subdivide: empty complex");
    SubdivisionResult out;

    // One new vertex per parent simplex, ids in lexicographic order.
    std::vector<Simplex> parents;
    parents.reserve(static_cast<std::size_t>(k.total_count()));
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& s : k.simplices(d)) parents.push_back(s);
    std::sort(parents.begin(), parents.end());
    out.vertex_parent = parents;
    out.parent_to_vertex.reserve(parents.size() * 2);
    for (std::size_t i = 0; i < parents.size(); ++i)
        out.parent_to_vertex.emplace(parents[i], static_cast<int>(i));

    // Simplices of Sd(K) are the strict flags of K. Flags with maximum
    // element s are the singleton {s} plus every flag at a proper face of s
    // extended by s; indexing by the maximum makes each flag appear once.
    std::vector<std::vector<std::vector<VertexId>>> flags_at(parents.size());
    std::vector<Simplex> all_flags;
    for (int d = 0; d <= k.dim(); ++d) {
        for (const auto& s : k.simplices(d)) {
            int vid = out.parent_to_vertex.at(s);
            auto& mine = flags_at[static_cast<std::size_t>(vid)];
            mine.push_back({vid});
            for_each_proper_face(s, [&](Simplex&& face) {
                if (!k.contains(face)) return;
                int fvid = out.parent_to_vertex.at(face);
                for (const auto& g : flags_at[static_cast<std::size_t>(fvid)]) {
                    std::vector<VertexId> ext(g);
                    ext.push_back(vid);
                    mine.push_back(std::move(ext));
                }
            });
        }
    }
    std::size_t total = 0;
    for (const auto& v : flags_at) total += v.size();
    all_flags.reserve(total);
    for (auto& v : flags_at)
        for (auto& g : v) all_flags.push_back(Simplex(std::move(g)));

    out.complex = SimplicialComplex::from_simplices(std::move(all_flags));
    return out;
}

SubdivisionChain subdivide_iter(const SimplicialComplex& k, int d, long long top_cell_budget) {
    if (d < 0) throw std::invalid_argument("subdivide_iter: d must be >= 0");
    if (k.is_empty()) throw std::invalid_argument("subdivide_iter: empty complex");
    long long fact = 1;
    for (int i = 2; i <= k.dim() + 1; ++i) fact *= i;
    long long projected = k.count(k.dim());
    for (int i = 0; i < d; ++i) {
        if (projected > top_cell_budget / fact)
            throw BudgetExceeded("subdivide_iter: projected top-cell count exceeds budget");
        projected *= fact;
    }
    SubdivisionChain chain;
    chain.base = k;
    for (int i = 0; i < d; ++i) {
        const SimplicialComplex& cur = chain.final_complex();
        chain.steps.push_back(subdivide(cur));
    }
    return chain;
}

std::vector<char> transport_subcomplex_flags(const SimplicialComplex& k,
                                             const SubdivisionResult& s,
                                             const std::vector<char>& in_sub) {
    std::vector<char> vertex_in(s.vertex_parent.size());
    for (std::size_t v = 0; v < s.vertex_parent.size(); ++v)
        vertex_in[v] = in_sub[static_cast<std::size_t>(k.flat_id(s.vertex_parent[v]))];
    const SimplicialComplex& sd = s.complex;
    std::vector<char> out(static_cast<std::size_t>(sd.total_count()), 0);
    for (int dd = 0; dd <= sd.dim(); ++dd) {
        const auto& simps = sd.simplices(dd);
        for (std::size_t i = 0; i < simps.size(); ++i) {
            bool all = true;
            for (VertexId v : simps[i].vertices())
                if (!vertex_in[static_cast<std::size_t>(v)]) {
                    all = false;
                    break;
                }
            if (all) out[static_cast<std::size_t>(sd.flat_id(dd, static_cast<int>(i)))] = 1;
        }
    }
    return out;
}

SimplicialComplex transport_subcomplex(const SubdivisionResult& s, const SimplicialComplex& sub) {
    std::vector<Simplex> simps;
    const SimplicialComplex& sd = s.complex;
    for (int dd = 0; dd <= sd.dim(); ++dd) {
        for (const auto& g : sd.simplices(dd)) {
            bool all = true;
            for (VertexId v : g.vertices())
                if (!sub.contains(s.vertex_parent[static_cast<std::size_t>(v)])) {
                    all = false;
                    break;
                }
            if (all) simps.push_back(g);
        }
    }
    return SimplicialComplex::from_simplices(std::move(simps));
}

namespace {

// Chains of nonempty subsets of an a-set, strictly increasing, of length b,
// ending at the full set.
long long chains_ending_at_full(int a, int b,
                                std::vector<std::vector<long long>>& memo) {
    if (b < 1 || b > a) return 0;
    if (b == 1) return 1;
    long long& m = memo[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    if (m >= 0) return m;
    long long total = 0;
    for (int r = 1; r < a; ++r)
        total += binomial(a, r) * chains_ending_at_full(r, b - 1, memo);
    m = total;
    return total;
}

}  // namespace

LambdaMatrix lambda_matrix(int n) {
    if (n < 0) throw std::invalid_argument("lambda_matrix: n must be >= 0");
    LambdaMatrix lm;
    lm.n = n;
    int sz = n + 2;
    lm.entries.assign(static_cast<std::size_t>(sz), std::vector<long long>(static_cast<std::size_t>(sz), 0));
    lm.entries[0][0] = 1;  // Delta_{-1} has a unique face in dimension -1.
    std::vector<std::vector<long long>> memo(static_cast<std::size_t>(sz),
                                             std::vector<long long>(static_cast<std::size_t>(sz), -1));
    for (int a = 1; a < sz; ++a)
        for (int b = 1; b < sz; ++b)
            lm.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                chains_ending_at_full(a, b, memo);
    return lm;
}

std::vector<long long> apply_lambda(const FVector& ext_f, const LambdaMatrix& lambda) {
    std::size_t sz = lambda.entries.size();
    if (ext_f.size() > sz) throw std::invalid_argument("apply_lambda: f-vector longer than matrix");
    std::vector<long long> out(sz, 0);
    for (std::size_t i = 0; i < ext_f.size(); ++i)
        for (std::size_t j = 0; j < sz; ++j) out[j] += ext_f.entries[i] * lambda.entries[i][j];
    return out;
}

AsymptoticFaceVector asymptotic_face_vector(int n) {
    if (n < 1) throw std::invalid_argument("asymptotic_face_vector: n must be >= 1");
    LambdaMatrix lm = lambda_matrix(n);
    int sz = n + 2;
    long long fact = 1;
    for (int i = 2; i <= n + 1; ++i) fact *= i;
    // Left eigenvector x Lambda = (n+1)! x, i.e. kernel of Lambda^t - (n+1)! I.
    RatMat a(static_cast<std::size_t>(sz), RatVec(static_cast<std::size_t>(sz), Rat(0)));
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Rat(lm.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            if (i == j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= fact;
        }
    auto kernel = rat_kernel(std::move(a));
    if (kernel.size() != 1)
        throw std::logic_error("asymptotic_face_vector: eigenvalue (n+1)! is not simple");
    RatVec v = kernel[0];
    Rat last = v[static_cast<std::size_t>(sz - 1)];
    if (last == 0) throw std::logic_error("asymptotic_face_vector: degenerate eigenvector");
    for (auto& x : v) x /= last;
    if (v[0] != 0) throw std::logic_error("asymptotic_face_vector: q_{-1} must vanish");
    AsymptoticFaceVector out;
    out.n = n;
    out.q.assign(v.begin() + 1, v.end());
    return out;
}

}  // namespace sdtop
