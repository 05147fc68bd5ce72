#include "sdtop/random_hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "sdtop/gf2.hpp"

namespace sdtop {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(seed ^ 0x6a09e667f3bcc908ULL);
    h = mix(h ^ stream);
    h = mix(h ^ index);
    return h;
}

bool bernoulli_zero(std::uint64_t u, const BernoulliMeasure& measure) {
    // u * den < num * 2^64, exact in 128-bit arithmetic. num/den fit 64 bits
    // for any CLI-supplied nu; reduce first if not.
    BigInt num = rat_num(measure.nu), den = rat_den(measure.nu);
    if (den > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw std::invalid_argument("bernoulli_zero: denominator too large");
    auto n64 = num.convert_to<std::uint64_t>();
    auto d64 = den.convert_to<std::uint64_t>();
    unsigned __int128 lhs = static_cast<unsigned __int128>(u) * d64;
    unsigned __int128 rhs = static_cast<unsigned __int128>(n64) << 64;
    return lhs < rhs;
}

namespace {

void fill_cochain_bits(std::vector<std::uint8_t>& bits, const BernoulliMeasure& measure,
                       std::uint64_t seed, std::uint64_t stream) {
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = bernoulli_zero(counter_hash(seed, stream, i), measure) ? 0 : 1;
}

}  // namespace

SdCarrier::SdCarrier(SimplicialComplex base, int k, std::vector<std::uint8_t> marks)
    : base_(std::move(base)), k_(k), base_marks_(std::move(marks)) {
    if (base_.is_empty()) throw std::invalid_argument("SdCarrier: empty base complex");
    if (k_ < 1 || k_ > base_.dim()) throw std::invalid_argument("SdCarrier: k out of range");
    if (!base_marks_.empty() && base_marks_.size() != static_cast<std::size_t>(base_.total_count()))
        throw std::invalid_argument("SdCarrier: marks size mismatch");
    sd_ = subdivide(base_);

    const auto& ksimps = base_.simplices(k_);
    k_simplex_faces_.resize(ksimps.size());
    for (std::size_t i = 0; i < ksimps.size(); ++i)
        for (std::size_t j = 0; j < ksimps[i].size(); ++j)
            k_simplex_faces_[i].push_back(base_.index_of(ksimps[i].facet_dropping(j)));

    k_faces_of_base_.resize(static_cast<std::size_t>(base_.total_count()));
    for (int d = k_; d <= base_.dim(); ++d) {
        const auto& simps = base_.simplices(d);
        for (std::size_t i = 0; i < simps.size(); ++i) {
            auto& faces = k_faces_of_base_[static_cast<std::size_t>(base_.flat_id(d, static_cast<int>(i)))];
            if (d == k_) {
                faces.push_back(static_cast<int>(i));
                continue;
            }
            // All k-faces: (k+1)-subsets of the vertex set.
            std::vector<int> subset(static_cast<std::size_t>(k_ + 1));
            for (int t = 0; t <= k_; ++t) subset[static_cast<std::size_t>(t)] = t;
            while (true) {
                std::vector<VertexId> verts(static_cast<std::size_t>(k_ + 1));
                for (int t = 0; t <= k_; ++t)
                    verts[static_cast<std::size_t>(t)] = simps[i][static_cast<std::size_t>(subset[static_cast<std::size_t>(t)])];
                faces.push_back(base_.index_of(Simplex::from_sorted(std::move(verts))));
                int pos = k_;
                while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == d + pos - k_) --pos;
                if (pos < 0) break;
                ++subset[static_cast<std::size_t>(pos)];
                for (int t = pos + 1; t <= k_; ++t)
                    subset[static_cast<std::size_t>(t)] = subset[static_cast<std::size_t>(t - 1)] + 1;
            }
        }
    }

    const auto& sdc = sd_.complex;
    sd_vertex_parent_.resize(sd_.vertex_parent.size());
    for (std::size_t v = 0; v < sd_.vertex_parent.size(); ++v)
        sd_vertex_parent_[v] = base_.flat_id(sd_.vertex_parent[v]);
    // Vertex ids of Sd coincide with 0-simplex indices (singleton lex order).
    for (std::size_t v = 0; v < sd_vertex_parent_.size(); ++v)
        if (sdc.index_of(Simplex::vertex(static_cast<VertexId>(v))) != static_cast<int>(v))
            throw std::logic_error("SdCarrier: sd vertex indexing mismatch");

    sd_min_parent_.resize(static_cast<std::size_t>(sdc.total_count()));
    for (int d = 0; d <= sdc.dim(); ++d) {
        const auto& simps = sdc.simplices(d);
        for (std::size_t i = 0; i < simps.size(); ++i) {
            long long best = -1;
            std::size_t best_size = 0;
            for (VertexId v : simps[i].vertices()) {
                const Simplex& p = sd_.vertex_parent[static_cast<std::size_t>(v)];
                if (best < 0 || p.size() < best_size) {
                    best = sd_vertex_parent_[static_cast<std::size_t>(v)];
                    best_size = p.size();
                }
            }
            sd_min_parent_[static_cast<std::size_t>(sdc.flat_id(d, static_cast<int>(i)))] = best;
        }
    }

    if (!base_marks_.empty()) {
        sd_vertex_marks_.resize(sd_vertex_parent_.size());
        for (std::size_t v = 0; v < sd_vertex_parent_.size(); ++v)
            sd_vertex_marks_[v] = base_marks_[static_cast<std::size_t>(sd_vertex_parent_[v])];
    }

    sd_chain_ = chain_complex_of(sdc);
    base_chain_ = chain_complex_of(base_);

    base_vertex_indices_.resize(static_cast<std::size_t>(base_.total_count()));
    for (int d = 0; d <= base_.dim(); ++d) {
        const auto& simps = base_.simplices(d);
        for (std::size_t i = 0; i < simps.size(); ++i) {
            auto& vs = base_vertex_indices_[static_cast<std::size_t>(base_.flat_id(d, static_cast<int>(i)))];
            for (VertexId v : simps[i].vertices()) vs.push_back(base_.index_of(Simplex::vertex(v)));
        }
    }
}

std::shared_ptr<const SdCarrier> SdCarrier::over_complex(const SimplicialComplex& base, int k) {
    return std::shared_ptr<const SdCarrier>(new SdCarrier(base, k, {}));
}

std::shared_ptr<const SdCarrier> SdCarrier::over_marked_complex(const SimplicialComplex& base, int k,
                                                                std::vector<std::uint8_t> base_marks) {
    return std::shared_ptr<const SdCarrier>(new SdCarrier(base, k, std::move(base_marks)));
}

std::shared_ptr<const SdCarrier> SdCarrier::over_simplex(int n, int d, int k, long long budget) {
    if (n < 1) throw std::invalid_argument("SdCarrier: n must be >= 1");
    auto chain = subdivide_iter(standard_simplex(n), d, budget);
    // Track the boundary subcomplex through the registries.
    SimplicialComplex cur = chain.base;
    auto bdry = boundary_complex(n);
    std::vector<char> in_bdry(static_cast<std::size_t>(cur.total_count()), 0);
    for (int dd = 0; dd <= bdry.dim(); ++dd)
        for (const auto& s : bdry.simplices(dd)) in_bdry[static_cast<std::size_t>(cur.flat_id(s))] = 1;
    for (const auto& step : chain.steps) {
        in_bdry = transport_subcomplex_flags(cur, step, in_bdry);
        cur = step.complex;
    }
    std::vector<std::uint8_t> marks(in_bdry.begin(), in_bdry.end());
    return std::shared_ptr<const SdCarrier>(new SdCarrier(chain.final_complex(), k, std::move(marks)));
}

Cochain sample_cochain(const SimplicialComplex& k, int deg_k, const BernoulliMeasure& measure,
                       std::uint64_t seed) {
    if (deg_k < 1 || deg_k > k.dim()) throw std::invalid_argument("sample_cochain: k out of range");
    Cochain eps;
    eps.k = deg_k;
    eps.bits.resize(static_cast<std::size_t>(k.count(deg_k - 1)));
    fill_cochain_bits(eps.bits, measure, seed, 0);
    return eps;
}

int coboundary_value(const SimplicialComplex& k, const Cochain& eps, const Simplex& sigma) {
    if (sigma.dim() != eps.k) throw std::invalid_argument("coboundary_value: simplex dimension must equal k");
    if (!k.contains(sigma)) throw std::invalid_argument("coboundary_value: simplex not in complex");
    int acc = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        acc ^= eps.bits[static_cast<std::size_t>(k.index_of(sigma.facet_dropping(i)))];
    return acc;
}

namespace {

// Scratch buffers shared across evaluations on one carrier.
struct EvalWorkspace {
    std::vector<std::uint8_t> hot_k;       // per k-simplex: <d eps, sigma> != 0
    std::vector<char> hot_base;            // per base flat id
    std::vector<char> v_member;            // per sd flat id
    std::vector<char> base_keep;           // per base flat id (K_0)
    std::vector<int> comp_parent;          // union-find over sd vertices
    std::vector<std::uint8_t> comp_marks;
    std::vector<char> comp_interior;
    std::vector<std::uint64_t> row;
};

void compute_hot(const SdCarrier& c, const std::vector<std::uint8_t>& bits, EvalWorkspace& ws) {
    const auto& kfaces = c.k_simplex_faces();
    ws.hot_k.assign(kfaces.size(), 0);
    for (std::size_t i = 0; i < kfaces.size(); ++i) {
        int acc = 0;
        for (int f : kfaces[i]) acc ^= bits[static_cast<std::size_t>(f)];
        ws.hot_k[i] = static_cast<std::uint8_t>(acc);
    }
    const auto& table = c.k_faces_of_base();
    ws.hot_base.assign(table.size(), 0);
    for (std::size_t s = 0; s < table.size(); ++s)
        for (int f : table[s])
            if (ws.hot_k[static_cast<std::size_t>(f)]) {
                ws.hot_base[s] = 1;
                break;
            }
}

void compute_v_member(const SdCarrier& c, EvalWorkspace& ws) {
    const auto& minp = c.sd_min_parent();
    ws.v_member.assign(minp.size(), 0);
    for (std::size_t i = 0; i < minp.size(); ++i)
        ws.v_member[i] = ws.hot_base[static_cast<std::size_t>(minp[i])];
}

int uf_find(std::vector<int>& parent, int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
    }
    return x;
}

// Restricted rank of the degree-p sd boundary over the member subcomplex.
int restricted_rank(const SdCarrier& c, const std::vector<char>& member, int p, EvalWorkspace& ws) {
    const auto& chain = c.sd_chain();
    if (p < 1 || p > chain.top_degree()) return 0;
    const auto& sdc = c.sd_complex();
    int cols = chain.sizes[static_cast<std::size_t>(p - 1)];
    Gf2RankAccumulator acc(cols);
    ws.row.assign(static_cast<std::size_t>(acc.words()), 0);
    const auto& rows = chain.boundary[static_cast<std::size_t>(p)];
    long long off = sdc.flat_id(p, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!member[static_cast<std::size_t>(off + static_cast<long long>(i))]) continue;
        std::fill(ws.row.begin(), ws.row.end(), 0);
        for (int f : rows[i]) ws.row[static_cast<std::size_t>(f >> 6)] ^= (1ULL << (f & 63));
        acc.add_row(ws.row);
    }
    return acc.rank();
}

long long member_count(const SdCarrier& c, const std::vector<char>& member, int p) {
    const auto& sdc = c.sd_complex();
    if (p < 0 || p > sdc.dim()) return 0;
    long long off = sdc.flat_id(p, 0), cnt = 0;
    for (long long i = 0; i < sdc.count(p); ++i) cnt += member[static_cast<std::size_t>(off + i)];
    return cnt;
}

int restricted_betti(const SdCarrier& c, const std::vector<char>& member, int p, EvalWorkspace& ws) {
    long long cells = member_count(c, member, p);
    if (cells == 0) return 0;
    return static_cast<int>(cells) - restricted_rank(c, member, p, ws) -
           restricted_rank(c, member, p + 1, ws);
}

// Union-find over V's 1-skeleton; aggregates vertex marks per component.
void compute_components(const SdCarrier& c, const std::vector<char>& member, EvalWorkspace& ws) {
    const auto& sdc = c.sd_complex();
    int nv = static_cast<int>(c.sd_vertex_parent().size());
    ws.comp_parent.resize(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i) ws.comp_parent[static_cast<std::size_t>(i)] = i;
    const auto& edges = sdc.simplices(1);
    long long off = sdc.dim() >= 1 ? sdc.flat_id(1, 0) : 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!member[static_cast<std::size_t>(off + static_cast<long long>(i))]) continue;
        int a = uf_find(ws.comp_parent, edges[i][0]);
        int b = uf_find(ws.comp_parent, edges[i][1]);
        if (a != b) ws.comp_parent[static_cast<std::size_t>(b)] = a;
    }
    ws.comp_marks.assign(static_cast<std::size_t>(nv), 0);
    const auto& vmarks = c.sd_vertex_marks();
    if (!vmarks.empty()) {
        for (int v = 0; v < nv; ++v) {
            if (!member[static_cast<std::size_t>(v)]) continue;
            ws.comp_marks[static_cast<std::size_t>(uf_find(ws.comp_parent, v))] |= vmarks[static_cast<std::size_t>(v)];
        }
    }
}

long long eval_with_ws(const SdCarrier& c, const std::vector<std::uint8_t>& bits,
                       const QuantitySpec& spec, EvalWorkspace& ws) {
    switch (spec.kind) {
        case Quantity::BettiK0:
        case Quantity::FaceCountK0: {
            if (c.k() != 1)
                throw std::invalid_argument("K_0 quantities are defined for k = 1 only");
            const auto& table = c.base_vertex_indices();
            ws.base_keep.assign(table.size(), 0);
            for (std::size_t s = 0; s < table.size(); ++s) {
                bool z = false, o = false;
                for (int vi : table[s]) (bits[static_cast<std::size_t>(vi)] ? o : z) = true;
                ws.base_keep[s] = !(z && o);
            }
            const auto& base = c.base();
            if (spec.kind == Quantity::FaceCountK0) {
                if (spec.p < 0 || spec.p > base.dim()) return 0;
                long long off = base.flat_id(spec.p, 0), cnt = 0;
                for (long long i = 0; i < base.count(spec.p); ++i)
                    cnt += ws.base_keep[static_cast<std::size_t>(off + i)];
                return cnt;
            }
            // b_p(K_0): restricted ranks over the base chain complex.
            const auto& chain = c.base_chain();
            auto rank_at = [&](int p) -> int {
                if (p < 1 || p > chain.top_degree()) return 0;
                Gf2RankAccumulator acc(chain.sizes[static_cast<std::size_t>(p - 1)]);
                ws.row.assign(static_cast<std::size_t>(acc.words()), 0);
                const auto& rows = chain.boundary[static_cast<std::size_t>(p)];
                long long off = base.flat_id(p, 0);
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (!ws.base_keep[static_cast<std::size_t>(off + static_cast<long long>(i))]) continue;
                    std::fill(ws.row.begin(), ws.row.end(), 0);
                    for (int f : rows[i]) ws.row[static_cast<std::size_t>(f >> 6)] ^= (1ULL << (f & 63));
                    acc.add_row(ws.row);
                }
                return acc.rank();
            };
            if (spec.p < 0 || spec.p > base.dim()) return 0;
            long long off = base.flat_id(spec.p, 0), cells = 0;
            for (long long i = 0; i < base.count(spec.p); ++i)
                cells += ws.base_keep[static_cast<std::size_t>(off + i)];
            if (cells == 0) return 0;
            return cells - rank_at(spec.p) - rank_at(spec.p + 1);
        }
        case Quantity::BettiV:
        case Quantity::BettiTildeV:
        case Quantity::EulerV: {
            compute_hot(c, bits, ws);
            compute_v_member(c, ws);
            if (spec.kind == Quantity::EulerV) {
                long long chi = 0;
                for (int d = 0; d <= c.sd_complex().dim(); ++d) {
                    long long cnt = member_count(c, ws.v_member, d);
                    chi += (d % 2 == 0) ? cnt : -cnt;
                }
                return chi;
            }
            if (spec.kind == Quantity::BettiV) return restricted_betti(c, ws.v_member, spec.p, ws);
            // BettiTildeV: restrict to components avoiding the marked boundary.
            if (!c.has_marks())
                throw std::invalid_argument("betti_tilde requires a carrier with boundary marks");
            compute_components(c, ws.v_member, ws);
            int nv = static_cast<int>(c.sd_vertex_parent().size());
            ws.comp_interior.assign(static_cast<std::size_t>(nv), 0);
            for (int v = 0; v < nv; ++v)
                if (ws.v_member[static_cast<std::size_t>(v)]) {
                    int r = uf_find(ws.comp_parent, v);
                    ws.comp_interior[static_cast<std::size_t>(r)] =
                        (ws.comp_marks[static_cast<std::size_t>(r)] & 1) == 0;
                }
            if (spec.p == 0) {
                long long cnt = 0;
                for (int v = 0; v < nv; ++v)
                    if (ws.v_member[static_cast<std::size_t>(v)] && uf_find(ws.comp_parent, v) == v &&
                        ws.comp_interior[static_cast<std::size_t>(v)])
                        ++cnt;
                return cnt;
            }
            // Keep only simplices whose component is interior.
            const auto& sdc = c.sd_complex();
            std::vector<char> interior_member(ws.v_member);
            for (int d = 0; d <= sdc.dim(); ++d) {
                const auto& simps = sdc.simplices(d);
                long long off = sdc.count(d) > 0 ? sdc.flat_id(d, 0) : 0;
                for (std::size_t i = 0; i < simps.size(); ++i) {
                    auto idx = static_cast<std::size_t>(off + static_cast<long long>(i));
                    if (!interior_member[idx]) continue;
                    int r = uf_find(ws.comp_parent, simps[i][0]);
                    if (!ws.comp_interior[static_cast<std::size_t>(r)]) interior_member[idx] = 0;
                }
            }
            return restricted_betti(c, interior_member, spec.p, ws);
        }
    }
    throw std::logic_error("eval_quantity: unknown quantity");
}

}  // namespace

long long eval_quantity(const SdCarrier& carrier, const std::vector<std::uint8_t>& bits,
                        const QuantitySpec& spec) {
    EvalWorkspace ws;
    return eval_with_ws(carrier, bits, spec, ws);
}

HypersurfaceComplex build_hypersurface(std::shared_ptr<const SdCarrier> carrier, const Cochain& eps) {
    if (eps.k != carrier->k()) throw std::invalid_argument("build_hypersurface: cochain degree mismatch");
    if (static_cast<int>(eps.bits.size()) != carrier->cochain_length())
        throw std::invalid_argument("build_hypersurface: cochain length mismatch");
    EvalWorkspace ws;
    compute_hot(*carrier, eps.bits, ws);
    compute_v_member(*carrier, ws);
    HypersurfaceComplex v;
    v.carrier = std::move(carrier);
    v.member = std::move(ws.v_member);
    return v;
}

HypersurfaceComplex build_hypersurface(const SimplicialComplex& k, const Cochain& eps) {
    return build_hypersurface(SdCarrier::over_complex(k, eps.k), eps);
}

bool HypersurfaceComplex::is_empty() const {
    for (char c : member)
        if (c) return false;
    return true;
}

std::vector<long long> HypersurfaceComplex::face_counts() const {
    std::vector<long long> out;
    const auto& sdc = carrier->sd_complex();
    for (int d = 0; d <= sdc.dim(); ++d) out.push_back(member_count(*carrier, member, d));
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

SimplicialComplex HypersurfaceComplex::as_complex() const {
    return subcomplex_from_flags(carrier->sd_complex(), member);
}

std::vector<int> betti(const HypersurfaceComplex& v) {
    EvalWorkspace ws;
    auto counts = v.face_counts();
    std::vector<int> out;
    for (int p = 0; p < static_cast<int>(counts.size()); ++p)
        out.push_back(restricted_betti(*v.carrier, v.member, p, ws));
    return out;
}

std::vector<int> betti_tilde(const HypersurfaceComplex& v) {
    const auto& c = *v.carrier;
    if (!c.has_marks()) throw std::invalid_argument("betti_tilde requires a carrier with boundary marks");
    auto counts = v.face_counts();
    if (counts.empty()) return {};
    EvalWorkspace ws;
    compute_components(c, v.member, ws);
    int nv = static_cast<int>(c.sd_vertex_parent().size());
    ws.comp_interior.assign(static_cast<std::size_t>(nv), 0);
    for (int w = 0; w < nv; ++w)
        if (v.member[static_cast<std::size_t>(w)]) {
            int r = uf_find(ws.comp_parent, w);
            ws.comp_interior[static_cast<std::size_t>(r)] =
                (ws.comp_marks[static_cast<std::size_t>(r)] & 1) == 0;
        }
    std::vector<char> interior_member(v.member);
    const auto& sdc = c.sd_complex();
    for (int d = 0; d <= sdc.dim(); ++d) {
        const auto& simps = sdc.simplices(d);
        long long off = sdc.count(d) > 0 ? sdc.flat_id(d, 0) : 0;
        for (std::size_t i = 0; i < simps.size(); ++i) {
            auto idx = static_cast<std::size_t>(off + static_cast<long long>(i));
            if (!interior_member[idx]) continue;
            int r = uf_find(ws.comp_parent, simps[i][0]);
            if (!ws.comp_interior[static_cast<std::size_t>(r)]) interior_member[idx] = 0;
        }
    }
    std::vector<int> out;
    for (int p = 0; p < static_cast<int>(counts.size()); ++p)
        out.push_back(restricted_betti(c, interior_member, p, ws));
    return out;
}

SimplicialComplex filtration_level(const SimplicialComplex& k, const Cochain& eps, int i) {
    if (eps.k != 1) throw std::invalid_argument("filtration_level: defined for k = 1 only");
    int n = k.dim();
    int top = (n + 2) / 2;  // ceil((n+1)/2)
    if (i < 0 || i > top) throw std::invalid_argument("filtration_level: level out of range");
    std::vector<Simplex> simps;
    for (int d = 0; d <= n; ++d)
        for (const auto& s : k.simplices(d)) {
            int zeros = 0, ones = 0;
            for (VertexId v : s.vertices())
                (eps.bits[static_cast<std::size_t>(k.index_of(Simplex::vertex(v)))] ? ones : zeros)++;
            if (std::min(zeros, ones) <= i) simps.push_back(s);
        }
    return SimplicialComplex::from_simplices(std::move(simps));
}

Gf2ChainComplex shifted_relative_complex(const SimplicialComplex& k, const Cochain& eps) {
    if (eps.k != 1) throw std::invalid_argument("shifted_relative_complex: defined for k = 1 only");
    int n = k.dim();
    Gf2ChainComplex cc;
    if (n < 1) return cc;
    // Degree p basis: (p+1)-simplices where eps is non-constant.
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(n));
    auto nonconstant = [&](const Simplex& s) {
        bool z = false, o = false;
        for (VertexId v : s.vertices())
            (eps.bits[static_cast<std::size_t>(k.index_of(Simplex::vertex(v)))] ? o : z) = true;
        return z && o;
    };
    cc.sizes.assign(static_cast<std::size_t>(n), 0);
    cc.boundary.resize(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        const auto& simps = k.simplices(p + 1);
        idx[static_cast<std::size_t>(p)].assign(simps.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < simps.size(); ++i)
            if (nonconstant(simps[i])) idx[static_cast<std::size_t>(p)][i] = next++;
        cc.sizes[static_cast<std::size_t>(p)] = next;
        cc.boundary[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(next));
    }
    for (int p = 1; p < n; ++p) {
        const auto& simps = k.simplices(p + 1);
        for (std::size_t i = 0; i < simps.size(); ++i) {
            int my = idx[static_cast<std::size_t>(p)][i];
            if (my < 0) continue;
            auto& row = cc.boundary[static_cast<std::size_t>(p)][static_cast<std::size_t>(my)];
            for (std::size_t j = 0; j < simps[i].size(); ++j) {
                int fi = k.index_of(simps[i].facet_dropping(j));
                int qi = idx[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(fi)];
                if (qi >= 0) row.push_back(qi);
            }
        }
    }
    cc.verify();
    return cc;
}

QuantitySpec parse_quantity(const std::string& name) {
    auto parse_p = [&](std::size_t prefix, std::size_t suffix) {
        return std::stoi(name.substr(prefix, name.size() - prefix - suffix));
    };
    if (name == "chiV") return {Quantity::EulerV, 0};
    if (name.rfind("btilde", 0) == 0 && name.back() == 'V')
        return {Quantity::BettiTildeV, parse_p(6, 1)};
    if (name.rfind("b", 0) == 0 && name.back() == 'V') return {Quantity::BettiV, parse_p(1, 1)};
    if (name.rfind("b", 0) == 0 && name.size() > 3 && name.substr(name.size() - 2) == "K0")
        return {Quantity::BettiK0, parse_p(1, 2)};
    if (name.rfind("f", 0) == 0 && name.size() > 3 && name.substr(name.size() - 2) == "K0")
        return {Quantity::FaceCountK0, parse_p(1, 2)};
    throw std::invalid_argument("unknown quantity: " + name);
}

std::string quantity_name(const QuantitySpec& spec) {
    switch (spec.kind) {
        case Quantity::BettiV: return "b" + std::to_string(spec.p) + "V";
        case Quantity::BettiTildeV: return "btilde" + std::to_string(spec.p) + "V";
        case Quantity::BettiK0: return "b" + std::to_string(spec.p) + "K0";
        case Quantity::FaceCountK0: return "f" + std::to_string(spec.p) + "K0";
        case Quantity::EulerV: return "chiV";
    }
    return "?";
}

ExpectationEstimate expect_exact(const SdCarrier& carrier, const QuantitySpec& spec,
                                 const BernoulliMeasure& measure, int budget_log2) {
    int m = carrier.cochain_length();
    if (m > budget_log2)
        throw BudgetExceeded("expect_exact: 2^" + std::to_string(m) +
                             " cochains exceed the enumeration budget; use Monte Carlo");
    BigInt a = rat_num(measure.nu);
    BigInt b = rat_den(measure.nu);
    BigInt c = b - a;
    std::vector<BigInt> pow_a(static_cast<std::size_t>(m + 1)), pow_c(static_cast<std::size_t>(m + 1));
    pow_a[0] = 1;
    pow_c[0] = 1;
    for (int i = 1; i <= m; ++i) {
        pow_a[static_cast<std::size_t>(i)] = pow_a[static_cast<std::size_t>(i - 1)] * a;
        pow_c[static_cast<std::size_t>(i)] = pow_c[static_cast<std::size_t>(i - 1)] * c;
    }
    EvalWorkspace ws;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(m), 0);
    BigInt total = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        int ones = 0;
        for (int i = 0; i < m; ++i) {
            bits[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 1 : 0;
            ones += bits[static_cast<std::size_t>(i)];
        }
        long long val = eval_with_ws(carrier, bits, spec, ws);
        if (val != 0)
            total += pow_a[static_cast<std::size_t>(m - ones)] * pow_c[static_cast<std::size_t>(ones)] * val;
    }
    ExpectationEstimate est;
    est.mode = EstimateMode::Exact;
    est.mean = Rat(total, big_pow(b, static_cast<unsigned>(m)));
    return est;
}

ExpectationEstimate expect_monte_carlo(const SdCarrier& carrier, const QuantitySpec& spec,
                                       const BernoulliMeasure& measure, long long samples,
                                       std::uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("expect_monte_carlo: samples must be >= 1");
    if (threads < 1) threads = 1;
    int m = carrier.cochain_length();
    std::vector<long long> sums(static_cast<std::size_t>(threads), 0);
    std::vector<long long> sq_sums(static_cast<std::size_t>(threads), 0);
    auto worker = [&](int t) {
        EvalWorkspace ws;
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(m));
        long long lo = samples * t / threads, hi = samples * (t + 1) / threads;
        long long s = 0, s2 = 0;
        for (long long i = lo; i < hi; ++i) {
            fill_cochain_bits(bits, measure, seed, static_cast<std::uint64_t>(i) + 1);
            long long val = eval_with_ws(carrier, bits, spec, ws);
            s += val;
            s2 += val * val;
        }
        sums[static_cast<std::size_t>(t)] = s;
        sq_sums[static_cast<std::size_t>(t)] = s2;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    long long sum = 0, sq = 0;
    for (int t = 0; t < threads; ++t) {
        sum += sums[static_cast<std::size_t>(t)];
        sq += sq_sums[static_cast<std::size_t>(t)];
    }
    ExpectationEstimate est;
    est.mode = EstimateMode::MonteCarlo;
    est.samples = samples;
    est.seed = seed;
    est.mean = Rat(sum, samples);
    if (samples > 1) {
        double n = static_cast<double>(samples);
        double mean = static_cast<double>(sum) / n;
        double var = (static_cast<double>(sq) - n * mean * mean) / (n - 1.0);
        if (var < 0) var = 0;
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

Rat euler_identity_residual(const SimplicialComplex& k, const BernoulliMeasure& measure,
                            int budget_log2) {
    auto carrier = SdCarrier::over_complex(k, 1);
    auto e_chi = expect_exact(*carrier, {Quantity::EulerV, 0}, measure, budget_log2);
    const Rat& nu = measure.nu;
    Rat q_minus_nu(0), q_nu_minus_one(0);
    for (int p = 0; p <= k.dim(); ++p) {
        q_minus_nu += Rat(k.count(p)) * rat_pow(-nu, static_cast<unsigned>(p));
        q_nu_minus_one += Rat(k.count(p)) * rat_pow(nu - 1, static_cast<unsigned>(p));
    }
    Rat rhs = nu * q_minus_nu + (1 - nu) * q_nu_minus_one;
    return Rat(k.euler_characteristic()) + e_chi.mean - rhs;
}

ExpectationEstimate percolation_probability(int n, int m_prime, int m, int sigma_index, int k,
                                            const BernoulliMeasure& measure, long long samples,
                                            std::uint64_t seed, int threads, long long budget) {
    if (n < 1 || m_prime < 1 || m < 0) throw std::invalid_argument("percolation: need n >= 1, m' >= 1, m >= 0");
    if (k < 1 || k > n) throw std::invalid_argument("percolation: k out of range");
    auto chain = subdivide_iter(standard_simplex(n), m_prime, budget);
    // Boundary of Delta_n, transported to Sd^{m'}(Delta_n).
    SimplicialComplex cur = chain.base;
    auto bdry = boundary_complex(n);
    std::vector<char> in_bdry(static_cast<std::size_t>(cur.total_count()), 0);
    for (int dd = 0; dd <= bdry.dim(); ++dd)
        for (const auto& s : bdry.simplices(dd)) in_bdry[static_cast<std::size_t>(cur.flat_id(s))] = 1;
    for (const auto& step : chain.steps) {
        in_bdry = transport_subcomplex_flags(cur, step, in_bdry);
        cur = step.complex;
    }
    const SimplicialComplex& a = chain.final_complex();
    if (sigma_index < 0 || sigma_index >= a.count(n))
        throw std::invalid_argument("percolation: sigma is not a top cell of Sd^{m'}(Delta_n)");
    Simplex sigma = a.simplices(n)[static_cast<std::size_t>(sigma_index)];

    // C = Sd^{m'}(Delta_n) minus the open cell sigma.
    std::vector<Simplex> simps;
    for (int d = 0; d <= a.dim(); ++d)
        for (const auto& s : a.simplices(d))
            if (!(d == n && s == sigma)) simps.push_back(s);
    SimplicialComplex c_complex = SimplicialComplex::from_simplices(std::move(simps));

    // Mark channels on C: bit 0 the ambient boundary, bit 1 the cell boundary.
    std::vector<std::uint8_t> marks(static_cast<std::size_t>(c_complex.total_count()), 0);
    for (int d = 0; d <= c_complex.dim(); ++d)
        for (const auto& s : c_complex.simplices(d)) {
            std::uint8_t bit = 0;
            if (in_bdry[static_cast<std::size_t>(a.flat_id(s))]) bit |= 1;
            if (d < n && s.is_face_of(sigma)) bit |= 2;
            if (bit) marks[static_cast<std::size_t>(c_complex.flat_id(s))] = bit;
        }

    // Subdivide C m times, transporting both channels.
    SimplicialComplex base = c_complex;
    for (int i = 0; i < m; ++i) {
        auto step = subdivide(base);
        std::vector<char> ch0(marks.size()), ch1(marks.size());
        for (std::size_t t = 0; t < marks.size(); ++t) {
            ch0[t] = marks[t] & 1;
            ch1[t] = (marks[t] >> 1) & 1;
        }
        auto t0 = transport_subcomplex_flags(base, step, ch0);
        auto t1 = transport_subcomplex_flags(base, step, ch1);
        marks.assign(t0.size(), 0);
        for (std::size_t t = 0; t < t0.size(); ++t)
            marks[t] = static_cast<std::uint8_t>((t0[t] ? 1 : 0) | (t1[t] ? 2 : 0));
        base = step.complex;
    }
    auto carrier = SdCarrier::over_marked_complex(base, k, std::move(marks));

    if (samples < 1) throw std::invalid_argument("percolation: samples must be >= 1");
    if (threads < 1) threads = 1;
    int len = carrier->cochain_length();
    std::vector<long long> hits(static_cast<std::size_t>(threads), 0);
    auto worker = [&](int t) {
        EvalWorkspace ws;
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(len));
        long long lo = samples * t / threads, hi = samples * (t + 1) / threads;
        long long h = 0;
        for (long long i = lo; i < hi; ++i) {
            fill_cochain_bits(bits, measure, seed, static_cast<std::uint64_t>(i) + 1);
            compute_hot(*carrier, bits, ws);
            compute_v_member(*carrier, ws);
            compute_components(*carrier, ws.v_member, ws);
            int nv = static_cast<int>(carrier->sd_vertex_parent().size());
            bool percolates = false;
            for (int v = 0; v < nv && !percolates; ++v) {
                if (!ws.v_member[static_cast<std::size_t>(v)]) continue;
                if (uf_find(ws.comp_parent, v) != v) continue;
                percolates = (ws.comp_marks[static_cast<std::size_t>(v)] & 3) == 3;
            }
            h += percolates ? 1 : 0;
        }
        hits[static_cast<std::size_t>(t)] = h;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    long long hit = 0;
    for (long long h : hits) hit += h;
    ExpectationEstimate est;
    est.mode = EstimateMode::MonteCarlo;
    est.samples = samples;
    est.seed = seed;
    est.mean = Rat(hit, samples);
    double n_d = static_cast<double>(samples);
    double phat = static_cast<double>(hit) / n_d;
    est.std_error = std::sqrt(std::max(phat * (1 - phat), 0.0) / n_d);
    return est;
}

}  // namespace sdtop
