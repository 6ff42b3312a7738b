#include "nklab/octonion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nklab/errors.hpp"

namespace nklab {

const std::array<PhiTriple, 7>& phi_triples() {
    // phi0 = e123 + e145 + e167 + e246 - e257 - e347 - e356 (indices 0-based).
    static const std::array<PhiTriple, 7> t = {{{0, 1, 2, 1.0},
                                                {0, 3, 4, 1.0},
                                                {0, 5, 6, 1.0},
                                                {1, 3, 5, 1.0},
                                                {1, 4, 6, -1.0},
                                                {2, 3, 6, -1.0},
                                                {2, 4, 5, -1.0}}};
    return t;
}

const kern::CrossTriples& cross_triples() {
    static const kern::CrossTriples ct = [] {
        kern::CrossTriples out{};
        const auto& ts = phi_triples();
        for (int m = 0; m < 7; ++m) {
            out.a[m] = ts[m].a;
            out.b[m] = ts[m].b;
            out.c[m] = ts[m].c;
            out.s[m] = ts[m].s;
        }
        return out;
    }();
    return ct;
}

Vec7 cross(const Vec7& x, const Vec7& y) {
    Vec7 out;
    for (const auto& t : phi_triples()) {
        out[t.c] += t.s * (x[t.a] * y[t.b] - x[t.b] * y[t.a]);
        out[t.a] += t.s * (x[t.b] * y[t.c] - x[t.c] * y[t.b]);
        out[t.b] += t.s * (x[t.c] * y[t.a] - x[t.a] * y[t.c]);
    }
    return out;
}

Oct oct_mult(const Oct& a, const Oct& b) {
    Oct out;
    out.re = a.re * b.re - dot(a.im, b.im);
    out.im = a.re * b.im + b.re * a.im + cross(a.im, b.im);
    return out;
}

std::string mult_table_string() {
    std::ostringstream os;
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
            int entry = 0;
            if (i != j) {
                const Vec7 v = cross(basis_vec(i), basis_vec(j));
                for (int k = 0; k < 7; ++k) {
                    if (v[k] > 0.5) entry = k + 1;
                    if (v[k] < -0.5) entry = -(k + 1);
                }
            }
            os << (entry >= 0 ? "+" : "-") << std::abs(entry)
               << (j == 6 ? "" : " ");
        }
        os << "\n";
    }
    return os.str();
}

double AltForm2::operator()(const Vec7& x, const Vec7& y) const {
    double acc = 0.0;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) acc += c[i][j] * x[i] * y[j];
    return acc;
}

double AltForm3::operator()(const Vec7& x, const Vec7& y,
                            const Vec7& z) const {
    double acc = 0.0;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            if (i == j) continue;
            for (int k = 0; k < 7; ++k) acc += c[i][j][k] * x[i] * y[j] * z[k];
        }
    return acc;
}

double AltForm4::operator()(const Vec7& w, const Vec7& x, const Vec7& y,
                            const Vec7& z) const {
    double acc = 0.0;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            if (i == j) continue;
            for (int k = 0; k < 7; ++k)
                for (int l = 0; l < 7; ++l)
                    acc += c[i][j][k][l] * w[i] * x[j] * y[k] * z[l];
        }
    return acc;
}

namespace {

int perm_sign(std::vector<int> p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

}  // namespace

void AltForm3::set_antisym(int i, int j, int k, double v) {
    const int idx[3] = {i, j, k};
    int perm[3] = {0, 1, 2};
    std::sort(perm, perm + 3);
    do {
        c[idx[perm[0]]][idx[perm[1]]][idx[perm[2]]] =
            perm_sign({perm[0], perm[1], perm[2]}) * v;
    } while (std::next_permutation(perm, perm + 3));
}

void AltForm4::set_antisym(int i, int j, int k, int l, double v) {
    const int idx[4] = {i, j, k, l};
    int perm[4] = {0, 1, 2, 3};
    std::sort(perm, perm + 4);
    do {
        c[idx[perm[0]]][idx[perm[1]]][idx[perm[2]]][idx[perm[3]]] =
            perm_sign({perm[0], perm[1], perm[2], perm[3]}) * v;
    } while (std::next_permutation(perm, perm + 4));
}

const AltForm3& phi0() {
    static const AltForm3 f = [] {
        AltForm3 out;
        for (const auto& t : phi_triples()) out.set_antisym(t.a, t.b, t.c, t.s);
        return out;
    }();
    return f;
}

AltForm4 hodge_star(const AltForm3& f) {
    AltForm4 out;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) {
                const double v = f.c[i][j][k];
                if (v == 0.0) continue;
                std::vector<int> perm = {i, j, k};
                std::vector<int> comp;
                for (int m = 0; m < 7; ++m)
                    if (m != i && m != j && m != k) comp.push_back(m);
                perm.insert(perm.end(), comp.begin(), comp.end());
                out.set_antisym(comp[0], comp[1], comp[2], comp[3],
                                perm_sign(perm) * v);
            }
    return out;
}

const AltForm4& star_phi0() {
    static const AltForm4 f = hodge_star(phi0());
    return f;
}

AltForm2 contract(const Vec7& v, const AltForm3& f) {
    AltForm2 out;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 7; ++k) acc += v[k] * f.c[k][i][j];
            out.c[i][j] = acc;
        }
    return out;
}

AltForm3 contract(const Vec7& v, const AltForm4& f) {
    AltForm3 out;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            for (int k = 0; k < 7; ++k) {
                double acc = 0.0;
                for (int l = 0; l < 7; ++l) acc += v[l] * f.c[l][i][j][k];
                out.c[i][j][k] = acc;
            }
    return out;
}

double wedge7(const AltForm2& A, const AltForm2& B, const AltForm3& C) {
    // Shuffle sum over ordered partitions of {0..6} into blocks of 2, 2, 3.
    double acc = 0.0;
    for (int a1 = 0; a1 < 7; ++a1)
        for (int a2 = a1 + 1; a2 < 7; ++a2)
            for (int b1 = 0; b1 < 7; ++b1) {
                if (b1 == a1 || b1 == a2) continue;
                for (int b2 = b1 + 1; b2 < 7; ++b2) {
                    if (b2 == a1 || b2 == a2) continue;
                    std::vector<int> rest;
                    for (int m = 0; m < 7; ++m)
                        if (m != a1 && m != a2 && m != b1 && m != b2)
                            rest.push_back(m);
                    const double cval = C.c[rest[0]][rest[1]][rest[2]];
                    if (cval == 0.0) continue;
                    std::vector<int> perm = {a1, a2, b1, b2,
                                             rest[0], rest[1], rest[2]};
                    acc += perm_sign(perm) * A.c[a1][a2] * B.c[b1][b2] * cval;
                }
            }
    return acc;
}

double wedge7(const AltForm3& A, const AltForm4& B) {
    double acc = 0.0;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) {
                const double aval = A.c[i][j][k];
                if (aval == 0.0) continue;
                std::vector<int> perm = {i, j, k};
                std::vector<int> comp;
                for (int m = 0; m < 7; ++m)
                    if (m != i && m != j && m != k) comp.push_back(m);
                perm.insert(perm.end(), comp.begin(), comp.end());
                acc += perm_sign(perm) * aval *
                       B.c[comp[0]][comp[1]][comp[2]][comp[3]];
            }
    return acc;
}

double g2_bilinear(const AltForm3& phi, const Vec7& v, const Vec7& w) {
    return wedge7(contract(v, phi), contract(w, phi), phi) / 6.0;
}

namespace {

std::vector<Vec7> gram_schmidt(const std::vector<Vec7>& in) {
    double scale = 0.0;
    for (const auto& v : in) scale = std::max(scale, norm(v));
    if (scale == 0.0) throw DegenerateInputError("all-zero basis");
    std::vector<Vec7> out;
    for (Vec7 v : in) {
        for (const auto& u : out) v -= dot(v, u) * u;
        const double n = norm(v);
        if (n < 1e-8 * scale)
            throw DegenerateInputError(
                "rank-deficient basis in orthonormalization");
        out.push_back(v * (1.0 / n));
    }
    return out;
}

}  // namespace

std::array<Vec7, 3> orthonormalize3(const Vec7& b1, const Vec7& b2,
                                    const Vec7& b3) {
    auto v = gram_schmidt({b1, b2, b3});
    return {v[0], v[1], v[2]};
}

std::array<Vec7, 4> orthonormalize4(const Vec7& b1, const Vec7& b2,
                                    const Vec7& b3, const Vec7& b4) {
    auto v = gram_schmidt({b1, b2, b3, b4});
    return {v[0], v[1], v[2], v[3]};
}

double associative_value(const Vec7& b1, const Vec7& b2, const Vec7& b3) {
    const auto u = orthonormalize3(b1, b2, b3);
    return phi0()(u[0], u[1], u[2]);
}

bool is_associative_plane(const Vec7& b1, const Vec7& b2, const Vec7& b3,
                          double tol) {
    return std::abs(std::abs(associative_value(b1, b2, b3)) - 1.0) <= tol;
}

double coassociative_residual(const std::array<Vec7, 4>& basis) {
    const auto u = orthonormalize4(basis[0], basis[1], basis[2], basis[3]);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                worst = std::max(worst, std::abs(phi0()(u[i], u[j], u[k])));
    return worst;
}

bool is_coassociative_plane(const std::array<Vec7, 4>& basis, double tol) {
    return coassociative_residual(basis) <= tol;
}

}  // namespace nklab
