#pragma once

#include "qhe/linalg.hpp"
#include "qhe/presentation.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qhe {

/// A basis element b with e_target · b · e_source = b.
struct BasisElement {
    int source = 0;
    int target = 0;
    int level = 0;         // filtration level: b lies in I_level and outside I_{level+1}
    int grade = 0;         // degree for graded algebras
    bool radical = true;   // false exactly for the vertex idempotents
    std::string label;
};

struct VertexInfo {
    std::string name;
    bool tilde = false;
};

/// Finite-dimensional basic algebra given by structure constants.
///
/// Conventions: a path [a1, a2] traverses a1 then a2 and equals the product
/// a2 · a1; the hom-space from x to y is e_y A e_x. The basis consists of the
/// vertex idempotents together with a basis of the radical, and every basis
/// element lives in a single slot e_y A e_x.
///
/// Construct, fill products with add_product, then call finalize(). After
/// that the object is read-only.
class FiniteDimAlgebra {
public:
    using Row = std::vector<std::pair<int, SparseVec>>;

    FiniteDimAlgebra() = default;
    FiniteDimAlgebra(Field field, std::string name, std::vector<VertexInfo> vertices, std::vector<BasisElement> basis);

    void add_product(int u, int v, const Scalar& c, int w);
    void set_product(int u, int v, SparseVec p);
    void finalize();

    const Field& field() const { return field_; }
    const std::string& name() const { return name_; }
    void rename(std::string n) { name_ = std::move(n); }

    int dim() const { return static_cast<int>(basis_.size()); }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    const std::vector<VertexInfo>& vertices() const { return vertices_; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(int b) const { return basis_[b]; }
    int unit(int vertex) const { return units_[vertex]; }
    int vertex_index(const std::string& name) const;
    int find_label(const std::string& label) const;  // -1 if absent

    /// u · v as a sparse coordinate vector, or nullptr when zero.
    const SparseVec* product(int u, int v) const;
    const Row& row(int u) const { return table_[u]; }
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    Vec multiply(const Vec& a, const Vec& b) const;

    const std::vector<int>& hom(int x, int y) const { return hom_[static_cast<size_t>(y) * vertices_.size() + x]; }
    const std::vector<int>& from(int x) const { return from_[x]; }
    const std::vector<int>& into(int y) const { return into_[y]; }
    /// Position of b inside hom(source, target).
    int hom_position(int b) const { return hom_pos_[b]; }

    /// Radical basis elements outside rad^2, chosen per slot: together they
    /// generate the algebra over the idempotents.
    const std::vector<int>& generators() const { return generators_; }
    const std::vector<int>& generators_from(int x) const { return generators_from_[x]; }

    /// 1 + the largest level, i.e. the length of the stored filtration.
    int filtration_length() const;

    /// Relations of the defining presentation only involve paths of length >= 2.
    bool admissible() const { return admissible_; }
    void set_admissible(bool a) { admissible_ = a; }
    /// Relations are homogeneous for the grading.
    bool homogeneous() const { return homogeneous_; }
    void set_homogeneous(bool h) { homogeneous_ = h; }

    FiniteDimAlgebra opposite() const;

    std::vector<BasisElement>& mutable_basis() { return basis_; }

private:
    Field field_;
    std::string name_;
    std::vector<VertexInfo> vertices_;
    std::vector<BasisElement> basis_;
    std::vector<Row> table_;
    std::vector<int> units_;
    std::vector<std::vector<int>> hom_, from_, into_;
    std::vector<int> hom_pos_;
    std::vector<int> generators_;
    std::vector<std::vector<int>> generators_from_;
    bool admissible_ = true;
    bool homogeneous_ = true;
};

FiniteDimAlgebra compute_basis(const Presentation& p);

/// Σ_k e_k as a coordinate vector.
SparseVec identity_element(const FiniteDimAlgebra& a);

/// Full check of the unit and of associativity on all composable triples.
/// Returns an empty string on success, otherwise a description of the first
/// violation.
std::string check_structure(const FiniteDimAlgebra& a);

struct Subquotient {
    FiniteDimAlgebra algebra;
    std::vector<int> kept;           // old basis index of each new basis element
    std::vector<int> vertex_of;      // old vertex index of each new vertex
};

/// e A e for e the sum of the idempotents of the listed vertices.
Subquotient corner(const FiniteDimAlgebra& a, const std::vector<int>& vertices);

/// Two-sided ideal generated by the given elements.
Echelon ideal_generated(const FiniteDimAlgebra& a, const std::vector<SparseVec>& gens);

/// A / I. The basis of the quotient is the classes of the non-pivot basis
/// elements of I; vertices whose idempotent lies in I are dropped.
Subquotient quotient_algebra(const FiniteDimAlgebra& a, const Echelon& ideal);

/// Coordinates in the quotient basis of the class of an element of A.
SparseVec project_to_quotient(const FiniteDimAlgebra& a, const Echelon& ideal, const Subquotient& q,
                              const SparseVec& v);

struct MapCheck {
    bool ok = false;
    std::string failure;  // empty when ok
};

/// Verifies that the linear map sending basis element b of `from` to
/// images[b] in `to` is an isomorphism of unital algebras.
MapCheck verify_algebra_map(const FiniteDimAlgebra& from, const FiniteDimAlgebra& to,
                            const std::vector<SparseVec>& images);

/// Map between algebras that matches basis labels. Throws if a label is missing.
std::vector<SparseVec> label_matching(const FiniteDimAlgebra& from, const FiniteDimAlgebra& to);

nlohmann::json to_json(const FiniteDimAlgebra& a);

}  // namespace qhe
