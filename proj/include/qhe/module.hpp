#pragma once

#include "qhe/algebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qhe {

using AlgebraPtr = std::shared_ptr<const FiniteDimAlgebra>;

/// A subspace of a module, one echelon basis per vertex (local coordinates).
using Subspace = std::vector<Echelon>;

/// Finite-dimensional left module: a space V_x per vertex and, for each basis
/// element b : x → y, a matrix V_x → V_y. Right modules are represented as
/// left modules over the opposite algebra.
class ModuleRep {
public:
    ModuleRep() = default;
    ModuleRep(AlgebraPtr algebra, std::vector<int> dims);

    const FiniteDimAlgebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const Field& field() const { return alg_->field(); }

    int dim(int vertex) const { return dims_[vertex]; }
    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;
    std::vector<int> support() const;

    /// Zero matrices are stored empty.
    const Mat& action(int b) const { return act_[b]; }
    void set_action(int b, Mat m);
    /// b · v for v in V_{source(b)}.
    Vec act(int b, const Vec& v) const;

    bool operator==(const ModuleRep& o) const { return dims_ == o.dims_ && act_ == o.act_; }

private:
    AlgebraPtr alg_;
    std::vector<int> dims_;
    std::vector<Mat> act_;
};

/// Empty string when the action is unital and respects products.
std::string verify_module(const ModuleRep& m);

ModuleRep projective(const AlgebraPtr& a, int vertex);
ModuleRep simple(const AlgebraPtr& a, int vertex);

Subspace zero_subspace(const ModuleRep& m);
Subspace full_subspace(const ModuleRep& m);
int subspace_dim(const Subspace& s);
bool contains(const Field& f, const Subspace& big, const Subspace& small);

/// Smallest submodule containing the given subspace (closure under generators).
Subspace generated_submodule(const ModuleRep& m, Subspace seed);

/// Restriction to a submodule; the basis is the echelon rows.
ModuleRep submodule(const ModuleRep& m, const Subspace& s);
/// M / U with basis the classes of the non-pivot coordinates.
ModuleRep quotient(const ModuleRep& m, const Subspace& u);
/// Coordinates in quotient(m, u) of the class of v ∈ M_x.
Vec project(const ModuleRep& m, const Subspace& u, int vertex, const Vec& v);

/// Linear dual, a left module over the opposite algebra.
ModuleRep dual(const ModuleRep& m, const AlgebraPtr& opposite);

/// rad M = J M, via the generators; `brute` uses every radical basis element.
Subspace radical(const ModuleRep& m, bool brute = false);
Subspace radical_of(const ModuleRep& m, const Subspace& s, bool brute = false);
Subspace socle(const ModuleRep& m);

/// Dimension vectors of the radical layers rad^j M / rad^{j+1} M.
std::vector<std::vector<int>> radical_layers(const ModuleRep& m, bool brute = false);

/// A homomorphism as one matrix N_x × M_x per vertex.
using Hom = std::vector<Mat>;

std::vector<Hom> hom_basis(const ModuleRep& m, const ModuleRep& n);
bool is_homomorphism(const ModuleRep& m, const ModuleRep& n, const Hom& h);
bool is_bijective(const ModuleRep& m, const ModuleRep& n, const Hom& h);
Subspace kernel_of(const ModuleRep& m, const ModuleRep& n, const Hom& h);
Subspace image_of(const ModuleRep& m, const ModuleRep& n, const Hom& h);
Hom combine(const Field& f, const std::vector<Hom>& basis, const std::vector<Scalar>& coeffs);

std::optional<Hom> find_isomorphism(const ModuleRep& m, const ModuleRep& n, unsigned long seed = 1);
std::optional<Hom> find_injection(const ModuleRep& m, const ModuleRep& n, unsigned long seed = 1);
std::optional<Hom> find_surjection(const ModuleRep& m, const ModuleRep& n, unsigned long seed = 1);

/// Largest submodule of m contained in the subspace v.
Subspace largest_submodule_within(const ModuleRep& m, const Subspace& v);

/// A subspace of submodule(m, u), given in its local coordinates, as a
/// subspace of m.
Subspace to_ambient(const Field& f, const Subspace& u, const Subspace& local);

/// Dimension vector of M / rad M.
std::vector<int> top_dims(const ModuleRep& m);

/// Module over `to` obtained by letting `to`'s basis element i act as
/// `images` says: used to view modules along algebra maps. Each entry of
/// `pullback` lists, for a basis element of the new algebra, its expression in
/// the old one.
ModuleRep restrict_along(const ModuleRep& m, const AlgebraPtr& to, const std::vector<SparseVec>& pullback,
                         const std::vector<int>& vertex_map);

nlohmann::json to_json(const ModuleRep& m);

}  // namespace qhe
