#ifndef SDTOP_SIMPLEX_HPP
#define SDTOP_SIMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sdtop {

using VertexId = int;

/// An abstract simplex: a strictly increasing sequence of vertex ids.
/// Equality is structural; the sorted encoding is the canonical form.
class Simplex {
public:
    Simplex() = default;

    /// Builds from an arbitrary vertex list; sorts and rejects duplicates.
    explicit Simplex(std::vector<VertexId> verts) : v_(std::move(verts)) {
        std::sort(v_.begin(), v_.end());
        if (v_.empty()) throw std::invalid_argument("empty simplex");
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (v_[i] == v_[i - 1]) throw std::invalid_argument("duplicate vertex in simplex");
        if (v_.front() < 0) throw std::invalid_argument("negative vertex id");
    }

    static Simplex vertex(VertexId v) { return Simplex(std::vector<VertexId>{v}); }

    int dim() const { return static_cast<int>(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    VertexId operator[](std::size_t i) const { return v_[i]; }
    const std::vector<VertexId>& vertices() const { return v_; }

    bool has_vertex(VertexId v) const { return std::binary_search(v_.begin(), v_.end(), v); }

    /// Subset test: is this a face of `other`?
    bool is_face_of(const Simplex& other) const {
        return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
    }

    /// The facet obtained by dropping the i-th vertex (dim must be >= 1).
    Simplex facet_dropping(std::size_t i) const {
        std::vector<VertexId> w;
        w.reserve(v_.size() - 1);
        for (std::size_t j = 0; j < v_.size(); ++j)
            if (j != i) w.push_back(v_[j]);
        return from_sorted(std::move(w));
    }

    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        if (dim() == 0) return out;
        out.reserve(v_.size());
        for (std::size_t i = 0; i < v_.size(); ++i) out.push_back(facet_dropping(i));
        return out;
    }

    Simplex with_vertex(VertexId v) const {
        std::vector<VertexId> w(v_);
        w.push_back(v);
        return Simplex(std::move(w));
    }

    /// Common face spanned by shared vertices; empty vector if disjoint.
    std::vector<VertexId> intersection(const Simplex& other) const {
        std::vector<VertexId> out;
        std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                              std::back_inserter(out));
        return out;
    }

    bool operator==(const Simplex& o) const { return v_ == o.v_; }
    bool operator!=(const Simplex& o) const { return v_ != o.v_; }
    bool operator<(const Simplex& o) const { return v_ < o.v_; }

    /// Trusted constructor for already-sorted strictly increasing input.
    static Simplex from_sorted(std::vector<VertexId> verts) {
        Simplex s;
        s.v_ = std::move(verts);
        return s;
    }

private:
    std::vector<VertexId> v_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (VertexId v : s.vertices()) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace sdtop

#endif  // SDTOP_SIMPLEX_HPP
