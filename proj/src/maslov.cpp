#include "nklab/maslov.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "nklab/errors.hpp"
#include "nklab/octonion.hpp"
#include "nklab/sphere.hpp"

namespace nklab {

namespace {

struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

Quat operator*(const Quat& a, const Quat& b) {
    return Quat{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat operator+(const Quat& a, const Quat& b) {
    return Quat{a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

Quat operator*(double c, const Quat& a) {
    return Quat{c * a.w, c * a.x, c * a.y, c * a.z};
}

/// Model imaginary quaternion of J on the normal bundle for surfaces inside
/// the associative S^3 spanned by e1, e2, e3.
Quat model_m(const Vec7& u) { return Quat{0.0, u.c[0], u.c[1], -u.c[2]}; }

Quat normal_to_quat(const Vec7& v) {
    return Quat{v.c[3], v.c[4], v.c[5], v.c[6]};
}

Vec7 quat_to_normal(const Quat& q) {
    Vec7 v{};
    v.c[3] = q.w;
    v.c[4] = q.x;
    v.c[5] = q.y;
    v.c[6] = q.z;
    return v;
}

struct TransportState {
    Vec7 tangent;
    Quat n1, n2;
};

TransportState operator+(const TransportState& a, const TransportState& b) {
    return TransportState{a.tangent + b.tangent, a.n1 + b.n1, a.n2 + b.n2};
}

TransportState operator*(double c, const TransportState& a) {
    return TransportState{c * a.tangent, c * a.n1, c * a.n2};
}

/// Right-hand side of the meridian transport at parameter tau: canonical
/// connection transport for the tangent vector, quaternion model for the
/// normal pair.
TransportState transport_rhs(const SurfacePatch& patch, double s, double t0,
                             double t1, double tau, const TransportState& st) {
    const double t = t1 + tau * (t0 - t1);
    const Jet2S j = patch.jets(s, t);
    const Vec7& p = j.p;
    const Vec7 cdot = (t0 - t1) * j.ut;
    // tangent: sphere parallel transport corrected by half the torsion
    const Vec7 toc = cross(cdot, cross(p, st.tangent));
    const Vec7 toc_t = toc - dot(toc, p) * p;
    const Vec7 vdot =
        (-dot(st.tangent, cdot)) * p - 0.5 * toc_t;
    // normal: qdot = (1/2) m mdot q
    const Quat m = model_m(p);
    Quat mdot{};
    mdot.x = cdot.c[0];
    mdot.y = cdot.c[1];
    mdot.z = -cdot.c[2];
    const Quat mm = m * mdot;
    return TransportState{vdot, 0.5 * (mm * st.n1), 0.5 * (mm * st.n2)};
}

void require_associative_ambient(const SurfacePatch& patch) {
    const Domain d = patch.domain();
    for (int i = 0; i < 4; ++i) {
        const double s = d.s0 + (d.s1 - d.s0) * (0.13 + 0.21 * i);
        const double t = d.t0 + (d.t1 - d.t0) * (0.17 + 0.19 * i);
        const Vec7 p = patch.point(s, t);
        for (int a = 3; a < 7; ++a) {
            if (std::abs(p.c[a]) > 1e-10) {
                throw PreconditionError(
                    "quaternion normal model requires the surface to lie in "
                    "the span of e1, e2, e3");
            }
        }
    }
}

std::vector<Vec7> orthonormal_normal_basis(const Jet2S& j) {
    std::vector<Vec7> out;
    for (int a = 0; a < 7 && out.size() < 4; ++a) {
        Vec7 w = project_normal_space(j, basis_vec(a));
        for (const Vec7& b : out) w = w - dot(w, b) * b;
        const double n = norm(w);
        if (n < 0.3) continue;
        out.push_back((1.0 / n) * w);
    }
    if (out.size() != 4) {
        throw FrameError("could not build a normal-space frame");
    }
    return out;
}

/// Align cur to prev by the orthogonal Procrustes rotation; preserves the
/// spanned subspace and (up to sign, which the squared determinant ignores)
/// the frame class.
std::vector<Vec7> procrustes_align(const std::vector<Vec7>& cur,
                                   const std::vector<Vec7>& prev) {
    const int k = static_cast<int>(cur.size());
    Eigen::MatrixXd m(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) m(a, b) = dot(cur[a], prev[b]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd o = svd.matrixU() * svd.matrixV().transpose();
    std::vector<Vec7> out(cur.size(), Vec7{});
    for (int b = 0; b < k; ++b) {
        Vec7 acc{};
        for (int a = 0; a < k; ++a) acc = acc + o(a, b) * cur[a];
        out[b] = acc;
    }
    return out;
}

std::function<Vec7(const Vec7&, const Vec7&)> geometric_j() {
    return [](const Vec7& base, const Vec7& v) {
        return almost_J(SpherePoint(base), v);
    };
}

}  // namespace

BoundaryTrivialization transport_boundary_trivialization(
    const SurfacePatch& patch, int samples, int rk_steps) {
    if (samples < 8) throw PreconditionError("too few boundary samples");
    if (!patch.has_boundary()) {
        throw PreconditionError("boundary trivialization needs a boundary");
    }
    const Domain d = patch.domain();
    // the far edge t = t1 must collapse to a single pole point
    const Vec7 pole = patch.point(d.s0, d.t1);
    for (double frac : {0.29, 0.61, 0.83}) {
        const Vec7 q = patch.point(d.s0 + frac * (d.s1 - d.s0), d.t1);
        if (norm(q - pole) > 1e-8) {
            throw PreconditionError(
                "transport trivialization requires a polar edge at t = t1");
        }
    }
    require_associative_ambient(patch);

    // fixed pole frames shared by every meridian
    const Jet2S jp = patch.jets(d.s0, d.t1);
    const double nut = norm(jp.ut);
    if (nut < 1e-10) throw DegenerateInputError("degenerate polar meridian");
    const Vec7 u1_pole = (1.0 / nut) * jp.ut;
    // tangent plane at the pole from two meridian directions
    const Jet2S jq =
        patch.jets(d.s0 + 0.25 * (d.s1 - d.s0), d.t1);
    Vec7 tp2 = jq.ut - dot(jq.ut, u1_pole) * u1_pole;
    const double ntp2 = norm(tp2);
    if (ntp2 < 0.3) throw FrameError("pole tangent plane is degenerate");
    tp2 = (1.0 / ntp2) * tp2;
    const SpherePoint pole_pt(pole);
    std::vector<Vec7> vpole;
    for (int a = 0; a < 7 && vpole.size() < 2; ++a) {
        Vec7 w = basis_vec(a);
        w = w - dot(w, pole) * pole;
        w = w - dot(w, u1_pole) * u1_pole;
        w = w - dot(w, tp2) * tp2;
        for (const Vec7& b : vpole) {
            w = w - dot(w, b) * b;
            const Vec7 jb = almost_J(pole_pt, b);
            w = w - dot(w, jb) * jb;
        }
        const double n = norm(w);
        if (n < 0.3) continue;
        vpole.push_back((1.0 / n) * w);
    }
    if (vpole.size() != 2) throw FrameError("pole normal frame incomplete");

    BoundaryTrivialization out;
    out.s.resize(samples);
    out.base.resize(samples);
    out.u1.resize(samples);
    out.v.resize(samples);
    const double h = 1.0 / rk_steps;
    for (int i = 0; i < samples; ++i) {
        const double s = d.s0 + (d.s1 - d.s0) * i / samples;
        TransportState st{u1_pole, normal_to_quat(vpole[0]),
                          normal_to_quat(vpole[1])};
        for (int k = 0; k < rk_steps; ++k) {
            const double tau = k * h;
            const TransportState k1 = transport_rhs(patch, s, d.t0, d.t1, tau, st);
            const TransportState k2 = transport_rhs(patch, s, d.t0, d.t1,
                                                    tau + 0.5 * h,
                                                    st + 0.5 * h * k1);
            const TransportState k3 = transport_rhs(patch, s, d.t0, d.t1,
                                                    tau + 0.5 * h,
                                                    st + 0.5 * h * k2);
            const TransportState k4 =
                transport_rhs(patch, s, d.t0, d.t1, tau + h, st + h * k3);
            st = st + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.s[i] = s;
        out.base[i] = patch.point(s, d.t0);
        out.u1[i] = st.tangent;
        out.v[i] = {quat_to_normal(st.n1), quat_to_normal(st.n2)};
    }
    return out;
}

double quaternion_model_residual(const SurfacePatch& patch, int samples) {
    require_associative_ambient(patch);
    const Domain d = patch.domain();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double fs = (i + 0.5) / samples;
        const double s = d.s0 + (d.s1 - d.s0) * fs;
        const double t =
            d.t0 + (d.t1 - d.t0) * (0.02 + 0.9 * std::fmod(0.618 * i, 1.0));
        const Jet2S j = patch.jets(s, t);
        const SpherePoint p(j.p);
        const Quat m = model_m(j.p);
        for (const Vec7& w : orthonormal_normal_basis(j)) {
            const Vec7 jw = almost_J(p, w);
            const Vec7 mw = quat_to_normal(m * normal_to_quat(w));
            worst = std::max(worst, norm(jw - mw));
        }
    }
    return worst;
}

MaslovLoopData tangent_loop_data(const SurfacePatch& patch, int samples,
                                 int rk_steps) {
    const BoundaryTrivialization triv =
        transport_boundary_trivialization(patch, samples, rk_steps);
    const Domain d = patch.domain();
    MaslovLoopData out;
    out.name = "tangent";
    out.loop = triv.s;
    out.base = triv.base;
    out.J = geometric_j();
    out.bundle_frames.resize(samples);
    out.lagrangian_frames.resize(samples);
    for (int i = 0; i < samples; ++i) {
        out.bundle_frames[i] = {triv.u1[i]};
        const Jet2S j = patch.jets(triv.s[i], d.t0);
        out.lagrangian_frames[i] = {(1.0 / norm(j.us)) * j.us};
    }
    return out;
}

MaslovLoopData normal_loop_data(const SurfacePatch& patch,
                                const LagrangianPatch& lag, int samples,
                                int rk_steps) {
    const BoundaryTrivialization triv =
        transport_boundary_trivialization(patch, samples, rk_steps);
    const Domain d = patch.domain();
    MaslovLoopData out;
    out.name = "normal";
    out.loop = triv.s;
    out.base = triv.base;
    out.J = geometric_j();
    out.bundle_frames.resize(samples);
    out.lagrangian_frames.resize(samples);
    for (int i = 0; i < samples; ++i) {
        out.bundle_frames[i] = {triv.v[i][0], triv.v[i][1]};
        const Jet2S j = patch.jets(triv.s[i], d.t0);
        const auto tl = lag.tangent_basis(j.p);
        const std::vector<Vec7> nb = orthonormal_normal_basis(j);
        std::vector<Vec7> f = subspace_intersection(
            std::vector<Vec7>(tl.begin(), tl.end()), nb);
        if (f.size() != 2) {
            throw FrameError(
                "intersection of the Lagrangian tangent with the normal space "
                "is not rank 2");
        }
        if (i > 0) f = procrustes_align(f, out.lagrangian_frames[i - 1]);
        out.lagrangian_frames[i] = std::move(f);
    }
    return out;
}

MaslovLoopData full_loop_data(const SurfacePatch& patch,
                              const LagrangianPatch& lag, int samples,
                              int rk_steps) {
    const BoundaryTrivialization triv =
        transport_boundary_trivialization(patch, samples, rk_steps);
    const Domain d = patch.domain();
    MaslovLoopData out;
    out.name = "full";
    out.loop = triv.s;
    out.base = triv.base;
    out.J = geometric_j();
    out.bundle_frames.resize(samples);
    out.lagrangian_frames.resize(samples);
    for (int i = 0; i < samples; ++i) {
        out.bundle_frames[i] = {triv.u1[i], triv.v[i][0], triv.v[i][1]};
        const Jet2S j = patch.jets(triv.s[i], d.t0);
        const auto tl = lag.tangent_basis(j.p);
        std::vector<Vec7> f(tl.begin(), tl.end());
        if (i > 0) f = procrustes_align(f, out.lagrangian_frames[i - 1]);
        out.lagrangian_frames[i] = std::move(f);
    }
    return out;
}

MaslovLoopData disk_model_loop(int samples) {
    MaslovLoopData out;
    out.name = "disk-model";
    out.J = geometric_j();
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < samples; ++i) {
        const double th = two_pi * i / samples;
        out.loop.push_back(th);
        out.base.push_back(basis_vec(2));
        out.bundle_frames.push_back({basis_vec(0)});
        out.lagrangian_frames.push_back(
            {std::cos(th) * basis_vec(0) + std::sin(th) * basis_vec(1)});
    }
    return out;
}

MaslovLoopData gauge_rotated(const MaslovLoopData& data,
                             const std::function<double(double)>& theta) {
    MaslovLoopData out = data;
    for (std::size_t i = 0; i < data.loop.size(); ++i) {
        const double th = theta(data.loop[i]);
        const double c = std::cos(th), sn = std::sin(th);
        for (Vec7& u : out.bundle_frames[i]) {
            u = c * u + sn * data.J(data.base[i], u);
        }
    }
    return out;
}

MaslovResult maslov_index(const MaslovLoopData& data, double int_tol) {
    const std::size_t m = data.loop.size();
    if (m < 8) throw PreconditionError("too few loop samples");
    if (data.base.size() != m || data.bundle_frames.size() != m ||
        data.lagrangian_frames.size() != m) {
        throw PreconditionError("inconsistent loop data sizes");
    }
    const std::size_t k = data.bundle_frames[0].size();
    for (std::size_t i = 0; i < m; ++i) {
        if (data.bundle_frames[i].size() != k ||
            data.lagrangian_frames[i].size() != k) {
            throw PreconditionError("inconsistent frame ranks");
        }
    }

    // continuity of the trivialization and of the real subbundle
    auto projector = [&](std::size_t i) {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(7, 7);
        for (const Vec7& f : data.lagrangian_frames[i]) {
            for (int a = 0; a < 7; ++a) {
                for (int b = 0; b < 7; ++b) p(a, b) += f.c[a] * f.c[b];
            }
        }
        return p;
    };
    // A per-step jump of 0.5 corresponds to a subspace rotation of roughly
    // 0.25 rad, which keeps every det^2 phase increment far below pi and the
    // winding unambiguous.  Genuine discontinuities (a J-rotated seam, a
    // subbundle flip) produce jumps of order sqrt(2) and are refused.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t nx = (i + 1) % m;
        for (std::size_t a = 0; a < k; ++a) {
            if (norm(data.bundle_frames[i][a] - data.bundle_frames[nx][a]) >
                0.5) {
                throw SamplingError(
                    "trivialization frames jump between samples; refine");
            }
        }
        if ((projector(i) - projector(nx)).norm() > 0.5) {
            throw SamplingError(
                "real subbundle jumps between samples; refine");
        }
    }

    // totally-real condition: J(F) has no component along F
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            const Vec7 jf =
                data.J(data.base[i], data.lagrangian_frames[i][a]);
            double r2 = 0.0;
            for (std::size_t b = 0; b < k; ++b) {
                const double c = dot(jf, data.lagrangian_frames[i][b]);
                r2 += c * c;
            }
            if (std::sqrt(r2) > 1e-6) {
                throw ModelViolationError(
                    "real subbundle is not totally real at a sample");
            }
        }
    }

    // squared determinant of the Lagrangian frame in the trivialization
    std::vector<std::complex<double>> w(m);
    double min_det = 1e300;
    for (std::size_t i = 0; i < m; ++i) {
        Eigen::MatrixXcd a(k, k);
        for (std::size_t row = 0; row < k; ++row) {
            const Vec7& u = data.bundle_frames[i][row];
            const Vec7 ju = data.J(data.base[i], u);
            for (std::size_t col = 0; col < k; ++col) {
                const Vec7& f = data.lagrangian_frames[i][col];
                a(static_cast<int>(row), static_cast<int>(col)) =
                    std::complex<double>(dot(f, u), dot(f, ju));
            }
        }
        const std::complex<double> det = a.determinant();
        min_det = std::min(min_det, std::abs(det));
        w[i] = det * det;
    }
    if (min_det < 1e-6) {
        throw ModelViolationError(
            "Lagrangian frame is degenerate in the trivialization");
    }

    double total = 0.0;
    double max_step = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t nx = (i + 1) % m;
        const double d = std::arg(w[nx] / w[i]);
        max_step = std::max(max_step, std::abs(d));
        total += d;
    }
    if (max_step > 1.5) {
        throw SamplingError("winding step too large; refine the loop");
    }
    const double raw = total / (2.0 * std::numbers::pi);
    const long long nearest = std::llround(raw);
    const double defect = std::abs(raw - static_cast<double>(nearest));
    if (defect > int_tol) {
        throw SamplingError("winding is not close to an integer; refine");
    }
    MaslovResult res;
    res.index = static_cast<int>(nearest);
    res.winding_defect = defect;
    res.min_det = min_det;
    res.max_step_phase = max_step;
    return res;
}

MaslovDecomposition maslov_decomposition_check(const SurfacePatch& patch,
                                               const LagrangianPatch& lag,
                                               int samples, int rk_steps) {
    const MaslovResult t =
        maslov_index(tangent_loop_data(patch, samples, rk_steps));
    const MaslovResult n =
        maslov_index(normal_loop_data(patch, lag, samples, rk_steps));
    const MaslovResult f =
        maslov_index(full_loop_data(patch, lag, samples, rk_steps));
    MaslovDecomposition out;
    out.tangent = t.index;
    out.normal = n.index;
    out.full = f.index;
    out.additive = (out.full == out.tangent + out.normal);
    return out;
}

}  // namespace nklab
