#ifndef SDTOP_TILING_HPP
#define SDTOP_TILING_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdtop/complex.hpp"
#include "sdtop/exact_linalg.hpp"
#include "sdtop/subdivision.hpp"

namespace sdtop {

/// A tile: a top simplex with some of its facets removed. Bit i of
/// removed_mask marks the facet opposite vertex i of `top` (sorted order)
/// as removed, so the tile's open faces are exactly the faces containing
/// every marked vertex. The type is the number of removed facets.
struct Tile {
    Simplex top;
    std::uint32_t removed_mask = 0;

    int type() const;
    /// Vertices that every open face must contain.
    std::vector<VertexId> required_vertices() const;
    std::vector<Simplex> removed_facets() const;
    bool covers(const Simplex& face) const;
};

using HVector = std::vector<long long>;

/// A set of tiles partitioning the open faces of a region of the ambient
/// complex. The region defaults to the whole complex; half-open regions
/// (subdivided tiles) carry an explicit per-flat-id membership vector.
class Tiling {
public:
    Tiling(std::shared_ptr<const SimplicialComplex> ambient, std::vector<Tile> tiles,
           std::optional<std::vector<char>> region = std::nullopt);

    const SimplicialComplex& ambient() const { return *ambient_; }
    std::shared_ptr<const SimplicialComplex> ambient_ptr() const { return ambient_; }
    const std::vector<Tile>& tiles() const { return tiles_; }
    bool has_region() const { return region_.has_value(); }
    const std::vector<char>& region() const { return *region_; }
    bool in_region(long long flat) const {
        return region_ ? (*region_)[static_cast<std::size_t>(flat)] != 0 : true;
    }
    /// Dimension of the tiles (all tops have equal dimension).
    int tile_dim() const;

    HVector h_vector() const;
    /// Face counts of the covered region, with f_{-1} set to the convention
    /// value (h_0 for the tiling identities).
    FVector covered_f_vector(long long f_minus_one) const;
    long long covered_euler_characteristic() const;

private:
    std::shared_ptr<const SimplicialComplex> ambient_;
    std::vector<Tile> tiles_;
    std::optional<std::vector<char>> region_;
};

struct TilingViolation {
    Simplex face;
    int covered = 0;       // times covered
    bool expected = true;  // whether the region expects coverage
};

struct TilingReport {
    bool ok = true;
    std::vector<TilingViolation> violations;  // capped
    std::string summary() const;
};

/// Exhaustive partition check: every simplex of the region is covered by
/// exactly one tile, and nothing outside the region is covered.
TilingReport validate_tiling(const Tiling& t);

/// Number of open j-faces of the tile T^n_s: C(n+1-s, n-j) for j >= s-1.
long long tile_face_count(int n, int s, int j);

/// The tiling of the boundary sphere using each tile type exactly once:
/// facet i of Delta_m keeps only the intersections with later facets.
Tiling tile_boundary_sphere(int m);

/// The tiling of Sd(T^n_s) inside Sd(Delta_n) from the inductive cone
/// construction; contains T^n_0 (resp. T^n_{n+1}) exactly when s = 0
/// (resp. s = n+1), and then exactly once.
Tiling sd_tile_tiling(int n, int s);

/// The induced tiling of Sd(ambient): each tile is subdivided by the
/// standard tiling of its type, transported through the tile's top cell.
/// Satisfies h(Sd T) = h(T) * H_n.
Tiling induce_sd_tiling(const Tiling& t, const SubdivisionResult& s);

/// The induced tiling on the i-skeleton: drop each tile's open top cell and
/// tile its kept facets in canonical order, then recurse down to dimension i.
Tiling induce_skeleton_tiling(const Tiling& t, int i);

/// f-vector from an h-vector via the h-polynomial identity
/// sum h_s X^{n+1-s} = sum f_{i-1} (X-1)^{n+1-i}, with f_{-1} = h_0.
FVector h_to_f(const HVector& h, int n);

/// Tile transition matrix: row s+1 is the h-vector of the tiling of
/// Sd(T^n_s). Computed independently by the geometric construction and by
/// the row recursion from H_1; the two routes must agree.
struct HMatrix {
    int n = 0;
    IntMat entries;
};

HMatrix h_matrix(int n);
IntMat h_matrix_geometric(int n);
IntMat h_matrix_recursive(int n);

/// Tile face-count matrix F_n[i][j] = C(n+2-i, n+2-j) (1-indexed), row s the
/// extended face vector of T^n_{s-1}; unipotent upper triangular.
IntMat f_matrix(int n);

/// The normalized (n+1)!-eigenvector of H_n^t: exact kernel solve, entries
/// sum to 1, first and last entries vanish, palindrome under reversal.
std::vector<Rat> eigen_h(int n);

struct SpectrumReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Exact identity checks: H_n F_n = F_n Lambda_n, the entry symmetry
/// h_{ij} = h_{n+3-i,n+3-j}, reversal commutation, H_n * ones = (n+1)! ones,
/// and the float convergence of H_n^d / (n+1)!^d to ones * (h^n)^t.
SpectrumReport eigen_spectrum_check(int n, int max_n = 7);

// Internals shared with the packing constructions: the standard tiling of
// Sd(T^n_s) in permutation coordinates. A tile's top is the full flag of
// prefixes of `perm`; bit t of `removed` marks the prefix of length t+1.
struct TilePerm {
    std::array<std::uint8_t, 8> perm{};
    std::uint16_t removed = 0;
};

const std::vector<TilePerm>& sd_standard_tiling(int n, int s);

}  // namespace sdtop

#endif  // SDTOP_TILING_HPP
