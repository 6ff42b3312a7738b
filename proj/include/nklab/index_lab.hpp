#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nklab/lagrangian.hpp"
#include "nklab/maslov.hpp"
#include "nklab/surface.hpp"
#include "nklab/variation.hpp"

namespace nklab {

/// Finite-dimensional truncation of the admissible variation space.
struct BasisSpec {
    std::vector<NormalField> fields;
    double gram_tolerance = 1e-8;
};

/// Discretized second-variation data over a basis: the symmetric form Q, the
/// L2 Gram matrix of the fields, and the L2 Gram matrix of their D-images.
struct QuadFormMatrix {
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> gram;
    std::vector<std::vector<double>> dgram;
    std::vector<std::string> names;
    std::size_t nodes = 0;

    std::size_t size() const { return q.size(); }
    double symmetry_residual() const;
    double q_max() const;  // infinity norm of Q
};

/// Q_ij by polarization of the boundary-free second variation; requires every
/// basis field to be admissible for the given Lagrangian.
QuadFormMatrix assemble_quadratic_form(const SurfacePatch& patch,
                                       const LagrangianPatch& lag,
                                       const BasisSpec& basis,
                                       std::size_t nodes, double h = 1e-3,
                                       double admissibility_tol = 1e-8);

/// Documented cutoff separating discretization noise from true negativity.
double default_eig_tol(const QuadFormMatrix& qf);

/// Generalized spectrum of (Q, Gram), ascending.
std::vector<double> generalized_spectrum(const QuadFormMatrix& qf);

/// Count of generalized eigenvalues below -eig_tol: a certified lower bound
/// for the Morse index on the spanned subspace.
int morse_index_lower_bound(const QuadFormMatrix& qf, double eig_tol);

/// Generalized singular values of the discretized D operator, ascending.
std::vector<double> d_singular_values(const QuadFormMatrix& qf);
/// Number of singular values below sv_tol: numerically detected D-kernel
/// dimension inside the basis.
int d_kernel_dimension(const QuadFormMatrix& qf, double sv_tol = 1e-5);

/// Expected real Fredholm index 2 chi + mu(N, F) of the boundary problem.
int riemann_roch_expected(int chi, int maslov_normal);

struct IndexReport {
    int negative_count = 0;
    std::vector<double> eigenvalues;        // generalized spectrum of (Q, Gram)
    std::vector<double> d_svals;            // singular values of D on the basis
    int maslov_tangent = 0;
    int maslov_normal = 0;
    int maslov_total = 0;
    bool additivity = false;
    int kernel_dimension = 0;
    int rr_expected = 0;
    bool bound_satisfied = false;           // negative_count >= maslov_total
    std::string verdict;
};

/// Verdict branch logic, exposed for direct testing.
std::string index_verdict(int negative_count, int maslov_total);

/// Full pipeline: assemble Q over the basis, count negative directions,
/// compute the Maslov indices of the boundary pairs, and emit the verdict.
IndexReport verify_index_bound(const SurfacePatch& patch,
                               const LagrangianPatch& lag,
                               const BasisSpec& basis, std::size_t nodes,
                               int maslov_samples, double h = 1e-3);

}  // namespace nklab
