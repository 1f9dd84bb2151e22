#pragma once

#include "qhe/envelope.hpp"
#include "qhe/qh.hpp"

#include <string>
#include <vector>

namespace qhe {

/// A subalgebra of a windowed category spanned by some of its basis
/// elements. All subalgebras built here are of this monomial kind, so the
/// inclusion of each hom space is a 0/1 matrix.
struct SubalgebraEmbedding {
    std::string name;
    const WindowedCategory* ambient = nullptr;
    std::vector<int> elements;   // ambient basis indices, increasing
    std::vector<int> position;   // ambient index -> index in sub, or -1
    AlgebraPtr sub;              // same objects as the ambient category
    std::size_t closure_checked = 0;

    bool contains(int b) const { return position[b] >= 0; }
    int dim() const { return static_cast<int>(elements.size()); }
    /// Inclusion of hom_sub(x, y) into hom_ambient(x, y).
    Mat inclusion(int x, int y) const;
};

/// Builds the embedding from a list of ambient elements after checking that
/// their span is closed under multiplication and contains every idempotent.
/// Throws SplittingNotClosed otherwise.
SubalgebraEmbedding make_embedding(const WindowedCategory& c, std::string name, std::vector<int> elements,
                                   Exec exec = Exec::parallel);

/// Band of N copies of S per row: the idempotents in the down-going slots of
/// offsets 0..N-1. Over 𝔇 only the ℭ part is used.
SubalgebraEmbedding build_tildeB(const WindowedCategory& c, Exec exec = Exec::parallel);

/// The diagonal copy of A_0 (the vertex idempotents).
SubalgebraEmbedding build_S(const WindowedCategory& c, Exec exec = Exec::parallel);

/// Lower band with the graded pieces A_s in the up-going slots of offset s.
/// Throws NotGraded unless the base is graded with a homogeneous basis and
/// FiltrationMismatch unless I_j is the sum of the A_i, i >= j.
SubalgebraEmbedding build_B_graded(const WindowedCategory& c, Exec exec = Exec::parallel);

/// Over 𝔇: A_s ⊕ A*_{N-1-s} in the up-going slot of offset s.
SubalgebraEmbedding build_Bbar(const WindowedCategory& d, Exec exec = Exec::parallel);

struct DirectedReport {
    bool directed = false;
    std::string direction;  // "increasing", "decreasing", "both" (no radical) or "none"
    std::size_t increasing = 0, decreasing = 0, flat = 0;
    std::string failure;
};

/// Every non-identity basis element must join objects with different keys,
/// and all of them in the same direction.
DirectedReport check_directed(const FiniteDimAlgebra& a, const std::vector<long>& key);
DirectedReport check_directed(const SubalgebraEmbedding& s, const QHContext& q);

/// Ambient module induced from the simple at obj along the subalgebra, on
/// the given side: the projective modulo the submodule generated by the
/// radical of the subalgebra at obj.
ModuleRep induce_simple(const SubalgebraEmbedding& s, Side side, int obj);

struct InductionCheck {
    int obj = -1;
    bool ok = false;
    bool exact = false;  // equal as modules, not only isomorphic
    std::vector<int> dims_induced, dims_expected;
    std::string failure;
};

/// Induced module against the standard module of the same side.
InductionCheck compare_induction(const SubalgebraEmbedding& s, const QHContext& q, Side side, int obj);
/// Dual of the module induced on the other side against the costandard
/// module of this side.
InductionCheck compare_coinduction(const SubalgebraEmbedding& s, const QHContext& q, Side side, int obj);

enum class SubalgebraRole { borel, delta };
const char* to_string(SubalgebraRole r);

struct BorelCertificate {
    std::string subalgebra;
    std::string ambient;
    std::string role;
    std::string order;
    bool pass = false;
    DirectedReport directed;
    std::vector<InductionCheck> inductions;   // Borel: left; Δ-subalgebra: right
    std::vector<InductionCheck> dual_checks;  // Δ-subalgebra only
    std::string failure;
};

/// An exact Borel subalgebra must be directed upwards in the order and
/// induce left simples to left standards; a Δ-subalgebra is directed
/// downwards, induces right simples to right standards and, dually, the
/// coinduced left simples are the left costandards.
BorelCertificate certify_subalgebra(const SubalgebraEmbedding& s, const QHContext& q, SubalgebraRole role,
                                    Exec exec = Exec::parallel);

struct SlotDecomposition {
    int x = 0, z = 0;           // objects; the slot is hom(x, z)
    int ambient_dim = 0;
    int tensor_dim = 0;         // Σ_y dim L(y,z) · dim R(x,y)
    int rank = 0;               // rank of the multiplication map
    bool ok() const { return ambient_dim == tensor_dim && rank == ambient_dim; }
};

struct TriangularCertificate {
    bool ok = false;
    std::string left, right, ambient;
    std::vector<SlotDecomposition> slots;
    std::string failure;
};

/// Multiplication L ⊗_S R → ambient, l ⊗ r ↦ l·r, on every interior slot with
/// both ends interior. S must be spanned by the idempotents, so the tensor
/// product splits over intermediate objects.
TriangularCertificate triangular_decomposition(const SubalgebraEmbedding& left, const SubalgebraEmbedding& right,
                                               const SubalgebraEmbedding& s, Exec exec = Exec::parallel);

/// Each vertex component of B̃ is the line quiver with all compositions of N
/// arrows zero: compares the corner of B̃ at one base vertex with the
/// algebra computed from that presentation.
CheckReport check_line_components(const SubalgebraEmbedding& tilde_b);

struct BorelSuite {
    bool pass = false;
    std::vector<BorelCertificate> certificates;
    std::vector<TriangularCertificate> triangular;
    std::string failure;
};

/// First order: B̃ is a Δ-subalgebra of ℭ and 𝔇, 𝓑 and 𝓑̄ are exact Borel
/// subalgebras; plus both triangular decompositions (the freeness witness).
/// `d` is 𝔇 over the tilde extension; pass nullptr to skip 𝔇.
BorelSuite first_order_suite(const WindowedCategory& c, const WindowedCategory* d, Exec exec = Exec::parallel);

/// Second order: roles swapped.
BorelSuite second_order_suite(const WindowedCategory& c, const WindowedCategory* d, Exec exec = Exec::parallel);

nlohmann::json to_json(const SubalgebraEmbedding& s);
nlohmann::json to_json(const BorelCertificate& c, const WindowedCategory& w);
nlohmann::json to_json(const BorelSuite& s, const WindowedCategory& c, const WindowedCategory* d);
nlohmann::json to_json(const TriangularCertificate& c, const WindowedCategory& w);

}  // namespace qhe
