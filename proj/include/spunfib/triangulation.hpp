#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spunfib/perm.hpp"

namespace spunfib {

// Face f of a tetrahedron is the face opposite vertex f.
// so face 3 = (012), face 2 = (013), face 1 = (023), face 0 = (123).
// Gluings store the full vertex map from the source tetrahedron to the target.

struct FaceSlot {
    int tet = -1;
    int face = -1;
    bool operator==(const FaceSlot& o) const { return tet == o.tet && face == o.face; }
    bool operator!=(const FaceSlot& o) const { return !(*this == o); }
    bool operator<(const FaceSlot& o) const {
        return tet != o.tet ? tet < o.tet : face < o.face;
    }
};

struct Gluing {
    int tet = -1;   // target tetrahedron
    Perm4 perm;     // vertex map source -> target; sends source face to target face
};

enum class TriKind { Ideal, Material, Mixed };

class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(int n) : glue_(n) {}

    int size() const { return static_cast<int>(glue_.size()); }

    int add_tetrahedron() {
        glue_.emplace_back();
        return size() - 1;
    }

    const std::optional<Gluing>& gluing(int tet, int face) const { return glue_[tet][face]; }
    bool is_glued(int tet, int face) const { return glue_[tet][face].has_value(); }

    // Glues (tet,face) to its image under perm; records both directions.
    void glue(int tet, int face, int dst, const Perm4& perm);
    void unglue(int tet, int face);

    // Destination face index of a gluing: image of the opposite vertex.
    static int image_face(int face, const Perm4& perm) { return perm[face]; }

    // Validation (spec'd checks): throws std::runtime_error on failure.
    void validate() const;

    bool is_orientable() const;
    // Per-tet orientation signs (+1/-1); throws if non-orientable.
    std::vector<int> orientations() const;

    std::vector<FaceSlot> boundary_faces() const;

    std::string to_table() const;

    static Triangulation parse(const std::string& text);
    static Triangulation parse_file(const std::string& path);

private:
    std::vector<std::array<std::optional<Gluing>, 4>> glue_;
};

// Vertices of face f in ascending order (the paper's (abc) notation).
std::array<int, 3> face_vertices(int face);

} // namespace spunfib
