#include "sdtop/tiling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sdtop {

int Tile::type() const { return std::popcount(removed_mask); }

std::vector<VertexId> Tile::required_vertices() const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < top.size(); ++i)
        if (removed_mask & (1u << i)) out.push_back(top[i]);
    return out;
}

std::vector<Simplex> Tile::removed_facets() const {
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < top.size(); ++i)
        if (removed_mask & (1u << i)) out.push_back(top.facet_dropping(i));
    return out;
}

bool Tile::covers(const Simplex& face) const {
    if (!face.is_face_of(top)) return false;
    for (std::size_t i = 0; i < top.size(); ++i)
        if ((removed_mask & (1u << i)) && !face.has_vertex(top[i])) return false;
    return true;
}

Tiling::Tiling(std::shared_ptr<const SimplicialComplex> ambient, std::vector<Tile> tiles,
               std::optional<std::vector<char>> region)
    : ambient_(std::move(ambient)), tiles_(std::move(tiles)), region_(std::move(region)) {
    if (!ambient_) throw std::invalid_argument("Tiling: null ambient");
    if (region_ && region_->size() != static_cast<std::size_t>(ambient_->total_count()))
        throw std::invalid_argument("Tiling: region size mismatch");
    int d = -1;
    for (const auto& t : tiles_) {
        if (!ambient_->contains(t.top)) throw std::invalid_argument("Tiling: tile top not in ambient");
        if (d < 0) d = t.top.dim();
        if (t.top.dim() != d) throw std::invalid_argument("Tiling: mixed tile dimensions");
    }
}

int Tiling::tile_dim() const { return tiles_.empty() ? -1 : tiles_[0].top.dim(); }

HVector Tiling::h_vector() const {
    int n = tile_dim();
    if (n < 0) n = ambient_->dim();
    HVector h(static_cast<std::size_t>(n + 2), 0);
    for (const auto& t : tiles_) ++h[static_cast<std::size_t>(t.type())];
    return h;
}

FVector Tiling::covered_f_vector(long long f_minus_one) const {
    FVector f;
    f.entries.push_back(f_minus_one);
    for (int d = 0; d <= ambient_->dim(); ++d) {
        if (!region_) {
            f.entries.push_back(ambient_->count(d));
            continue;
        }
        long long cnt = 0;
        for (int i = 0; i < ambient_->count(d); ++i)
            cnt += (*region_)[static_cast<std::size_t>(ambient_->flat_id(d, i))];
        f.entries.push_back(cnt);
    }
    while (f.entries.size() > 1 && f.entries.back() == 0) f.entries.pop_back();
    return f;
}

long long Tiling::covered_euler_characteristic() const {
    auto f = covered_f_vector(0);
    long long chi = 0;
    for (std::size_t i = 1; i < f.entries.size(); ++i)
        chi += (i % 2 == 1) ? f.entries[i] : -f.entries[i];
    return chi;
}

std::string TilingReport::summary() const {
    if (ok) return "ok";
    std::string s = "violations: " + std::to_string(violations.size());
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
        s += " [";
        for (VertexId v : violations[i].face.vertices()) s += std::to_string(v) + " ";
        s += "covered " + std::to_string(violations[i].covered) +
             (violations[i].expected ? " want 1]" : " want 0]");
    }
    return s;
}

TilingReport validate_tiling(const Tiling& t) {
    const auto& amb = t.ambient();
    TilingReport report;
    std::vector<int> covered(static_cast<std::size_t>(amb.total_count()), 0);
    for (const auto& tile : t.tiles()) {
        auto req = tile.required_vertices();
        std::vector<VertexId> rest;
        for (std::size_t i = 0; i < tile.top.size(); ++i)
            if (!(tile.removed_mask & (1u << i))) rest.push_back(tile.top[i]);
        std::size_t m = rest.size();
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<VertexId> verts(req);
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1u << i)) verts.push_back(rest[i]);
            if (verts.empty()) continue;
            Simplex face{std::move(verts)};
            int idx = amb.index_of(face);
            if (idx < 0) {
                report.ok = false;
                if (report.violations.size() < 32) report.violations.push_back({face, -1, false});
                continue;
            }
            ++covered[static_cast<std::size_t>(amb.flat_id(face.dim(), idx))];
        }
    }
    for (int d = 0; d <= amb.dim(); ++d) {
        const auto& simps = amb.simplices(d);
        for (std::size_t i = 0; i < simps.size(); ++i) {
            long long flat = amb.flat_id(d, static_cast<int>(i));
            int want = t.in_region(flat) ? 1 : 0;
            int got = covered[static_cast<std::size_t>(flat)];
            if (got != want) {
                report.ok = false;
                if (report.violations.size() < 32)
                    report.violations.push_back({simps[i], got, want == 1});
            }
        }
    }
    return report;
}

long long tile_face_count(int n, int s, int j) {
    if (n < 1 || s < 0 || s > n + 1 || j < 0 || j > n)
        throw std::invalid_argument("tile_face_count: out of range");
    if (j < s - 1) return 0;
    return binomial(n + 1 - s, n - j);
}

Tiling tile_boundary_sphere(int m) {
    if (m < 1) throw std::invalid_argument("tile_boundary_sphere: m must be >= 1");
    auto amb = std::make_shared<SimplicialComplex>(boundary_complex(m));
    std::vector<Tile> tiles;
    // Facet i of Delta_m, with the intersections with the earlier facets
    // removed: those are the facets of F_i opposite the vertices 0..i-1.
    for (int i = 0; i <= m; ++i) {
        std::vector<VertexId> verts;
        for (int v = 0; v <= m; ++v)
            if (v != i) verts.push_back(v);
        Tile t;
        t.top = Simplex::from_sorted(std::move(verts));
        t.removed_mask = (i > 0) ? ((1u << i) - 1u) : 0u;
        tiles.push_back(std::move(t));
    }
    return Tiling(std::move(amb), std::move(tiles));
}

namespace {

std::map<std::pair<int, int>, std::vector<TilePerm>> g_tiling_memo;
std::mutex g_tiling_mutex;

// Assumes g_tiling_mutex is held by the caller.
const std::vector<TilePerm>& sd_standard_tiling_locked(int n, int s) {
    auto key = std::make_pair(n, s);
    auto it = g_tiling_memo.find(key);
    if (it != g_tiling_memo.end()) return it->second;

    std::vector<TilePerm> tiles;
    if (n == 1) {
        TilePerm a, b;
        a.perm = {0, 1};
        b.perm = {1, 0};
        switch (s) {
            case 0: a.removed = 0b00; b.removed = 0b01; break;
            case 1: a.removed = 0b01; b.removed = 0b10; break;
            default: a.removed = 0b11; b.removed = 0b10; break;
        }
        tiles = {a, b};
    } else {
        // Cone construction: tile each Sd(T^{n-1}_j) on facet j of Delta_n
        // (letters relabeled around j, the barycenter letter appended last)
        // and remove the cone bases over the facets j < s.
        for (int j = 0; j <= n; ++j) {
            const auto& sub = sd_standard_tiling_locked(n - 1, j);
            for (const auto& tp : sub) {
                TilePerm out;
                for (int t = 0; t < n; ++t) {
                    int letter = tp.perm[static_cast<std::size_t>(t)];
                    out.perm[static_cast<std::size_t>(t)] =
                        static_cast<std::uint8_t>(letter < j ? letter : letter + 1);
                }
                out.perm[static_cast<std::size_t>(n)] = static_cast<std::uint8_t>(j);
                out.removed = tp.removed;
                if (j < s) out.removed |= static_cast<std::uint16_t>(1u << n);
                tiles.push_back(out);
            }
        }
    }
    auto [pos, inserted] = g_tiling_memo.emplace(key, std::move(tiles));
    return pos->second;
}

// Materialize a perm-encoded tile through phi (letters to ambient vertices)
// and the subdivision registry.
Tile materialize_tile(const TilePerm& tp, int n, const std::vector<VertexId>& phi,
                      const SubdivisionResult& sd) {
    std::vector<std::pair<VertexId, bool>> verts;  // (sd vertex, removed?)
    std::vector<VertexId> prefix;
    for (int t = 0; t <= n; ++t) {
        prefix.push_back(phi[static_cast<std::size_t>(tp.perm[static_cast<std::size_t>(t)])]);
        std::vector<VertexId> sorted(prefix);
        std::sort(sorted.begin(), sorted.end());
        int vid = sd.vertex_of(Simplex::from_sorted(std::move(sorted)));
        if (vid < 0) throw std::logic_error("materialize_tile: flag element missing from registry");
        verts.emplace_back(vid, (tp.removed >> t) & 1);
    }
    std::sort(verts.begin(), verts.end());
    Tile tile;
    std::vector<VertexId> ids;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        ids.push_back(verts[i].first);
        if (verts[i].second) mask |= (1u << i);
    }
    tile.top = Simplex::from_sorted(std::move(ids));
    tile.removed_mask = mask;
    return tile;
}

std::vector<VertexId> identity_phi(int n) {
    std::vector<VertexId> phi(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) phi[static_cast<std::size_t>(i)] = i;
    return phi;
}

}  // namespace

const std::vector<TilePerm>& sd_standard_tiling(int n, int s) {
    if (n < 1 || s < 0 || s > n + 1) throw std::invalid_argument("sd_standard_tiling: out of range");
    if (n + 1 > 8) throw std::invalid_argument("sd_standard_tiling: n too large for the perm encoding");
    std::lock_guard<std::mutex> lock(g_tiling_mutex);
    return sd_standard_tiling_locked(n, s);
}

Tiling sd_tile_tiling(int n, int s) {
    if (n < 1 || s < 0 || s > n + 1) throw std::invalid_argument("sd_tile_tiling: out of range");
    auto base = standard_simplex(n);
    auto sd = subdivide(base);
    auto amb = std::make_shared<SimplicialComplex>(sd.complex);
    auto phi = identity_phi(n);
    std::vector<Tile> tiles;
    for (const auto& tp : sd_standard_tiling(n, s)) tiles.push_back(materialize_tile(tp, n, phi, sd));
    std::optional<std::vector<char>> region;
    if (s > 0) {
        // Sd(T^n_s) is the set of flags whose top element contains 0..s-1.
        std::vector<char> r(static_cast<std::size_t>(amb->total_count()), 0);
        for (int d = 0; d <= amb->dim(); ++d) {
            const auto& simps = amb->simplices(d);
            for (std::size_t i = 0; i < simps.size(); ++i) {
                const Simplex& top = sd.top_parent_of(simps[i]);
                bool all = true;
                for (int v = 0; v < s && all; ++v) all = top.has_vertex(v);
                if (all) r[static_cast<std::size_t>(amb->flat_id(d, static_cast<int>(i)))] = 1;
            }
        }
        region = std::move(r);
    }
    return Tiling(std::move(amb), std::move(tiles), std::move(region));
}

Tiling induce_sd_tiling(const Tiling& t, const SubdivisionResult& s) {
    const auto& parent = t.ambient();
    if (s.vertex_parent.size() != static_cast<std::size_t>(parent.total_count()))
        throw std::invalid_argument("induce_sd_tiling: subdivision does not match the tiling's ambient");
    for (const auto& p : s.vertex_parent)
        if (!parent.contains(p))
            throw std::invalid_argument("induce_sd_tiling: subdivision does not match the tiling's ambient");
    int n = t.tile_dim();
    std::vector<Tile> tiles;
    for (const auto& tile : t.tiles()) {
        int type = tile.type();
        // Letters 0..type-1 map to the tile's required vertices, the rest to
        // the remaining vertices, both ascending.
        std::vector<VertexId> phi;
        for (std::size_t i = 0; i < tile.top.size(); ++i)
            if (tile.removed_mask & (1u << i)) phi.push_back(tile.top[i]);
        for (std::size_t i = 0; i < tile.top.size(); ++i)
            if (!(tile.removed_mask & (1u << i))) phi.push_back(tile.top[i]);
        for (const auto& tp : sd_standard_tiling(n, type))
            tiles.push_back(materialize_tile(tp, n, phi, s));
    }
    auto amb = std::make_shared<SimplicialComplex>(s.complex);
    std::optional<std::vector<char>> region;
    if (t.has_region()) {
        std::vector<char> r(static_cast<std::size_t>(amb->total_count()), 0);
        for (int d = 0; d <= amb->dim(); ++d) {
            const auto& simps = amb->simplices(d);
            for (std::size_t i = 0; i < simps.size(); ++i) {
                const Simplex& top = s.top_parent_of(simps[i]);
                if (t.in_region(parent.flat_id(top)))
                    r[static_cast<std::size_t>(amb->flat_id(d, static_cast<int>(i)))] = 1;
            }
        }
        region = std::move(r);
    }
    return Tiling(std::move(amb), std::move(tiles), std::move(region));
}

Tiling induce_skeleton_tiling(const Tiling& t, int i) {
    int n = t.tile_dim() < 0 ? t.ambient().dim() : t.tile_dim();
    if (i < 0 || i >= n) throw std::invalid_argument("induce_skeleton_tiling: index out of range");
    auto cur_tiles = t.tiles();
    auto cur_ambient = t.ambient_ptr();
    std::optional<std::vector<char>> cur_region =
        t.has_region() ? std::optional<std::vector<char>>(t.region()) : std::nullopt;
    for (int m = n; m > i; --m) {
        // Drop each tile's open top cell; the kept facets, in ascending order
        // of the opposite vertex, additionally lose the earlier kept facets.
        std::vector<Tile> next;
        for (const auto& tile : cur_tiles) {
            std::vector<std::size_t> kept;
            for (std::size_t pos = 0; pos < tile.top.size(); ++pos)
                if (!(tile.removed_mask & (1u << pos))) kept.push_back(pos);
            for (std::size_t r = 0; r < kept.size(); ++r) {
                Tile child;
                child.top = tile.top.facet_dropping(kept[r]);
                std::uint32_t mask = 0;
                std::size_t out_pos = 0;
                for (std::size_t pos = 0; pos < tile.top.size(); ++pos) {
                    if (pos == kept[r]) continue;
                    bool removed = (tile.removed_mask & (1u << pos)) != 0;
                    for (std::size_t q = 0; q < r; ++q)
                        if (pos == kept[q]) removed = true;
                    if (removed) mask |= (1u << out_pos);
                    ++out_pos;
                }
                child.removed_mask = mask;
                next.push_back(std::move(child));
            }
        }
        auto amb = std::make_shared<SimplicialComplex>(skeleton(*cur_ambient, m - 1));
        // Simplices of dimension <= m-1 keep their flat ids in the skeleton.
        if (cur_region) cur_region->resize(static_cast<std::size_t>(amb->total_count()));
        cur_tiles = std::move(next);
        cur_ambient = std::move(amb);
    }
    return Tiling(std::move(cur_ambient), std::move(cur_tiles), std::move(cur_region));
}

FVector h_to_f(const HVector& h, int n) {
    if (static_cast<int>(h.size()) != n + 2) throw std::invalid_argument("h_to_f: h-vector length mismatch");
    FVector f;
    for (int i = 0; i <= n + 1; ++i) {
        long long v = 0;
        for (int s = 0; s <= n + 1; ++s)
            v += h[static_cast<std::size_t>(s)] * binomial(n + 1 - s, n + 1 - i);
        f.entries.push_back(v);
    }
    return f;
}

IntMat h_matrix_geometric(int n) {
    IntMat out(static_cast<std::size_t>(n + 2), std::vector<long long>(static_cast<std::size_t>(n + 2), 0));
    for (int s = 0; s <= n + 1; ++s)
        for (const auto& tp : sd_standard_tiling(n, s))
            ++out[static_cast<std::size_t>(s)][static_cast<std::size_t>(std::popcount(tp.removed))];
    return out;
}

IntMat h_matrix_recursive(int n) {
    IntMat h{{1, 1, 0}, {0, 2, 0}, {0, 1, 1}};
    for (int m = 1; m < n; ++m) {
        int sz = m + 3;
        IntMat next(static_cast<std::size_t>(sz), std::vector<long long>(static_cast<std::size_t>(sz), 0));
        // Row s of H_{m+1}: the rows j < s of H_m shifted one step right plus
        // the remaining rows unshifted.
        for (int s = 0; s < sz; ++s)
            for (int j = 0; j <= m + 1; ++j)
                for (int c = 0; c <= m + 1; ++c) {
                    int cc = j < s ? c + 1 : c;
                    next[static_cast<std::size_t>(s)][static_cast<std::size_t>(cc)] +=
                        h[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
                }
        h = std::move(next);
    }
    return h;
}

HMatrix h_matrix(int n) {
    if (n < 1) throw std::invalid_argument("h_matrix: n must be >= 1");
    HMatrix out;
    out.n = n;
    out.entries = h_matrix_recursive(n);
    auto geo = h_matrix_geometric(n);
    if (!int_mat_eq(out.entries, geo))
        throw std::logic_error("h_matrix: geometric and recursive routes disagree");
    return out;
}

IntMat f_matrix(int n) {
    if (n < 1) throw std::invalid_argument("f_matrix: n must be >= 1");
    IntMat out(static_cast<std::size_t>(n + 2), std::vector<long long>(static_cast<std::size_t>(n + 2), 0));
    for (int i = 1; i <= n + 2; ++i)
        for (int j = 1; j <= n + 2; ++j)
            out[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                binomial(n + 2 - i, n + 2 - j);
    return out;
}

std::vector<Rat> eigen_h(int n) {
    auto h = h_matrix(n);
    int sz = n + 2;
    long long fact = 1;
    for (int i = 2; i <= n + 1; ++i) fact *= i;
    RatMat a(static_cast<std::size_t>(sz), RatVec(static_cast<std::size_t>(sz), Rat(0)));
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Rat(h.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            if (i == j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= fact;
        }
    auto kernel = rat_kernel(std::move(a));
    if (kernel.size() != 1) throw std::logic_error("eigen_h: eigenvalue (n+1)! is not simple");
    RatVec v = kernel[0];
    Rat sum(0);
    for (const auto& x : v) sum += x;
    if (sum == 0) throw std::logic_error("eigen_h: eigenvector sums to zero");
    for (auto& x : v) x /= sum;
    return v;
}

SpectrumReport eigen_spectrum_check(int n, int max_n) {
    SpectrumReport report;
    auto fail = [&](const std::string& what) {
        report.ok = false;
        report.failures.push_back(what);
    };
    if (n < 1 || n > max_n) {
        fail("n out of range");
        return report;
    }
    auto h = h_matrix(n).entries;
    auto f = f_matrix(n);
    auto lambda = lambda_matrix(n).entries;
    int sz = n + 2;
    long long fact = 1;
    for (int i = 2; i <= n + 1; ++i) fact *= i;

    if (!int_mat_eq(int_mat_mul(h, f), int_mat_mul(f, lambda))) fail("H F != F Lambda");

    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j)
            if (h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                h[static_cast<std::size_t>(sz - 1 - i)][static_cast<std::size_t>(sz - 1 - j)]) {
                fail("entry symmetry h_ij = h_{n+3-i,n+3-j} fails");
                i = sz;
                break;
            }

    // Reversal commutation J H = H J.
    IntMat j_mat(static_cast<std::size_t>(sz), std::vector<long long>(static_cast<std::size_t>(sz), 0));
    for (int i = 0; i < sz; ++i) j_mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(sz - 1 - i)] = 1;
    if (!int_mat_eq(int_mat_mul(j_mat, h), int_mat_mul(h, j_mat))) fail("H does not commute with the reversal");

    for (int i = 0; i < sz; ++i) {
        long long row_sum = 0;
        for (int j = 0; j < sz; ++j) row_sum += h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (row_sum != fact) {
            fail("H * ones != (n+1)! * ones");
            break;
        }
    }

    for (int i = 0; i < sz; ++i) {
        if (f[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 1) fail("F diagonal not 1");
        for (int j = 0; j < i; ++j)
            if (f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
                fail("F not upper triangular");
                i = sz;
                break;
            }
    }

    // Float convergence of H^d / (n+1)!^d to ones * (h^n)^t. The gap ratio
    // is 1/(n+1) per step, so 40 steps suffice for every n here.
    auto hn = eigen_h(n);
    std::vector<std::vector<double>> m(static_cast<std::size_t>(sz),
                                       std::vector<double>(static_cast<std::size_t>(sz), 0));
    for (int i = 0; i < sz; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    for (int step = 0; step < 40; ++step) {
        std::vector<std::vector<double>> next(static_cast<std::size_t>(sz),
                                              std::vector<double>(static_cast<std::size_t>(sz), 0));
        for (int i = 0; i < sz; ++i)
            for (int k2 = 0; k2 < sz; ++k2) {
                double mik = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k2)];
                if (mik == 0) continue;
                for (int j = 0; j < sz; ++j)
                    next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        mik *
                        static_cast<double>(h[static_cast<std::size_t>(k2)][static_cast<std::size_t>(j)]) /
                        static_cast<double>(fact);
            }
        m = std::move(next);
    }
    double max_err = 0;
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j)
            max_err = std::max(max_err,
                               std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                                        rational_to_double(hn[static_cast<std::size_t>(j)])));
    if (max_err > 1e-9) fail("H^d/(n+1)!^d does not converge to ones * h^t");

    return report;
}

}  // namespace sdtop
