#pragma once

#include <array>
#include <string>

#include "nklab/kernels.hpp"
#include "nklab/vec7.hpp"

namespace nklab {

/// Imaginary-octonion algebra on R^7.  The whole convention stack derives from
/// one fixed associative 3-form
///     phi0 = e123 + e145 + e167 + e246 - e257 - e347 - e356
/// via phi0(x,y,z) = <x cross y, z>; the multiplication table, the Hodge-dual
/// 4-form, and all downstream structures (J, omega, Upsilon, cone forms) are
/// computed from it, never written down twice.

/// The seven oriented index triples (a,b,c) with phi0(e_a,e_b,e_c) = s.
struct PhiTriple {
    int a, b, c;
    double s;
};
const std::array<PhiTriple, 7>& phi_triples();

/// e_a x e_b structure constants in the layout the batched kernels consume.
const kern::CrossTriples& cross_triples();

/// 7-dimensional cross product x x y = Im part of the octonion commutator half.
Vec7 cross(const Vec7& x, const Vec7& y);

/// Octonion (1 real + 7 imaginary components) and its product, used to verify
/// that the cross product really is the commutator half of a normed algebra.
struct Oct {
    double re = 0.0;
    Vec7 im;
};
Oct oct_mult(const Oct& a, const Oct& b);

/// Signed-index multiplication table of the imaginary units as text:
/// row i, column j holds k with e_i x e_j = sign(k) e_|k| (0 on the diagonal).
std::string mult_table_string();

/// Alternating forms stored as dense fully antisymmetric coefficient tensors,
/// so multilinear evaluation is a plain contraction and the determinant-style
/// shuffle convention is automatic.
struct AltForm2 {
    std::array<std::array<double, 7>, 7> c{};
    double operator()(const Vec7& x, const Vec7& y) const;
};

struct AltForm3 {
    std::array<std::array<std::array<double, 7>, 7>, 7> c{};
    double operator()(const Vec7& x, const Vec7& y, const Vec7& z) const;
    /// Sets the coefficient on a sorted index triple and all its permutations.
    void set_antisym(int i, int j, int k, double v);
};

struct AltForm4 {
    std::array<std::array<std::array<std::array<double, 7>, 7>, 7>, 7> c{};
    double operator()(const Vec7& w, const Vec7& x, const Vec7& y,
                      const Vec7& z) const;
    void set_antisym(int i, int j, int k, int l, double v);
};

/// The fixed 3-form phi0 and its Euclidean Hodge dual (standard orientation
/// e1 ^ ... ^ e7).
const AltForm3& phi0();
const AltForm4& star_phi0();

/// Hodge star of a 3-form for the Euclidean metric and standard orientation.
AltForm4 hodge_star(const AltForm3& f);

/// Interior products v -| f.
AltForm2 contract(const Vec7& v, const AltForm3& f);
AltForm3 contract(const Vec7& v, const AltForm4& f);

/// (A ^ B ^ C)(e1,...,e7) for a 2-form, 2-form, 3-form (shuffle convention).
double wedge7(const AltForm2& A, const AltForm2& B, const AltForm3& C);
/// (A ^ B)(e1,...,e7) for a 3-form and a 4-form.
double wedge7(const AltForm3& A, const AltForm4& B);

/// B_phi(v,w) = 1/6 (v -| phi) ^ (w -| phi) ^ phi, as a coefficient against
/// the standard volume form.  For phi0 this recovers the Euclidean metric.
double g2_bilinear(const AltForm3& phi, const Vec7& v, const Vec7& w);

/// Gram-Schmidt of k independent vectors; throws DegenerateInputError when the
/// residual at any step falls below 1e-8 times the input scale.
std::array<Vec7, 3> orthonormalize3(const Vec7& b1, const Vec7& b2,
                                    const Vec7& b3);
std::array<Vec7, 4> orthonormalize4(const Vec7& b1, const Vec7& b2,
                                    const Vec7& b3, const Vec7& b4);

/// phi0 evaluated on the orthonormalization of a 3-plane basis; the plane is
/// associative iff the absolute value is 1.
double associative_value(const Vec7& b1, const Vec7& b2, const Vec7& b3);
bool is_associative_plane(const Vec7& b1, const Vec7& b2, const Vec7& b3,
                          double tol);

/// max |phi0| over the four orthonormalized basis triples of a 4-plane; the
/// plane is coassociative iff this vanishes.
double coassociative_residual(const std::array<Vec7, 4>& basis);
bool is_coassociative_plane(const std::array<Vec7, 4>& basis, double tol);

}  // namespace nklab
