#include "nklab/catalog.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "nklab/errors.hpp"
#include "nklab/octonion.hpp"

namespace nklab {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Great 2-sphere of the coordinate 3-plane spanned by the given ambient axes,
/// in latitude/longitude coordinates: u = cos t (cos s A0 + sin s A1) + sin t A2.
AnalyticPatch::JetMap geodesic_map(std::array<int, 3> axes) {
    return [axes](const Jet2& s, const Jet2& t) {
        const Jet2 cs = cos(s), ss = sin(s), ct = cos(t), st = sin(t);
        V7<Jet2> u;
        u[axes[0]] = ct * cs;
        u[axes[1]] = ct * ss;
        u[axes[2]] = st;
        return u;
    };
}

std::shared_ptr<SurfacePatch> make_geodesic(std::string id, std::string descr,
                                            std::array<int, 3> axes,
                                            Domain dom, bool boundary) {
    return std::make_shared<AnalyticPatch>(std::move(id), std::move(descr),
                                           dom, boundary, geodesic_map(axes));
}

std::vector<CatalogEntry> build_entries() {
    std::vector<CatalogEntry> out;

    const Domain closed{0.0, 2.0 * kPi, -0.5 * kPi, 0.5 * kPi};
    const Domain half{0.0, 2.0 * kPi, 0.0, 0.5 * kPi};
    const GeodesicBall equator_ball{SpherePoint(basis_vec(2)), 0.5 * kPi};

    {
        CatalogEntry e;
        e.id = "geodesic-s2-assoc";
        e.kind = CatalogKind::patch;
        e.description =
            "closed great 2-sphere of span(e1,e2,e3); J-holomorphic, cone is "
            "associative";
        e.make = [d = e.description] {
            return make_geodesic("geodesic-s2-assoc", d, {0, 1, 2},
                                 Domain{0.0, 2.0 * kPi, -0.5 * kPi, 0.5 * kPi},
                                 false);
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "geodesic-s2-nonholo";
        e.kind = CatalogKind::patch;
        e.description =
            "closed great 2-sphere of span(e1,e2,e4); minimal but not "
            "J-holomorphic, cone is non-associative";
        e.make = [d = e.description] {
            return make_geodesic("geodesic-s2-nonholo", d, {0, 1, 3},
                                 Domain{0.0, 2.0 * kPi, -0.5 * kPi, 0.5 * kPi},
                                 false);
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "halfsphere-freeboundary";
        e.kind = CatalogKind::patch;
        e.description =
            "half great 2-sphere, boundary on the equator great circle; "
            "free-boundary orthogonality test bed";
        e.ball = equator_ball;
        e.make = [d = e.description, half] {
            return make_geodesic("halfsphere-freeboundary", d, {0, 1, 2}, half,
                                 true);
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "halfsphere-lag";
        e.kind = CatalogKind::patch;
        e.description =
            "half great 2-sphere, boundary on a totally geodesic Lagrangian "
            "link; index-bound test bed";
        e.ball = equator_ball;
        e.lagrangian_paired = true;
        e.make = [d = e.description, half] {
            return make_geodesic("halfsphere-lag", d, {0, 1, 2}, half, true);
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "cap-umbilic";
        e.kind = CatalogKind::patch;
        e.description =
            "polar cap with boundary on a distance sphere of radius pi/3; "
            "umbilicity test bed (A = cot(pi/3) Id on the boundary sphere)";
        e.ball = GeodesicBall{SpherePoint(basis_vec(2)), kPi / 3.0};
        e.make = [d = e.description] {
            return make_geodesic("cap-umbilic", d, {0, 1, 2},
                                 Domain{0.0, 2.0 * kPi, kPi / 6.0, 0.5 * kPi},
                                 true);
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "tilted-control";
        e.kind = CatalogKind::patch;
        e.description =
            "half great 2-sphere tilted by 0.15 rad out of the associative "
            "3-plane; negative control that the rigidity probe must flag";
        e.ball = equator_ball;
        e.make = [d = e.description, half] {
            const double alpha = 0.15;
            const double ca = std::cos(alpha), sa = std::sin(alpha);
            return std::make_shared<AnalyticPatch>(
                "tilted-control", d, half, true,
                [ca, sa](const Jet2& s, const Jet2& t) {
                    const Jet2 cs = cos(s), ss = sin(s);
                    const Jet2 ct = cos(t), st = sin(t);
                    V7<Jet2> u;
                    u[0] = ct * cs;
                    u[1] = ct * ss;
                    u[2] = st * ca;
                    u[3] = st * sa;
                    return u;
                });
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "small-cmc";
        e.kind = CatalogKind::patch;
        e.description =
            "closed small 2-sphere at height 0.4 along e4; constant mean "
            "curvature, non-minimal control";
        e.make = [d = e.description, closed] {
            const double c = 0.4;
            const double r = std::sqrt(1.0 - c * c);
            return std::make_shared<AnalyticPatch>(
                "small-cmc", d, closed, false,
                [c, r](const Jet2& s, const Jet2& t) {
                    const Jet2 cs = cos(s), ss = sin(s);
                    const Jet2 ct = cos(t), st = sin(t);
                    V7<Jet2> u;
                    u[0] = r * (ct * cs);
                    u[1] = r * (ct * ss);
                    u[2] = r * st;
                    u[3] = Jet2(c);
                    return u;
                });
        };
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "lagrangian-s3";
        e.kind = CatalogKind::lagrangian;
        e.description =
            "totally geodesic Lagrangian link: unit 3-sphere of the first "
            "coassociative coordinate 4-plane through e1, e2";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.id = "octonion-table";
        e.kind = CatalogKind::table;
        e.description =
            "signed-index multiplication table of the seven imaginary "
            "octonion units";
        out.push_back(std::move(e));
    }
    return out;
}

const char* kind_name(CatalogKind k) {
    switch (k) {
        case CatalogKind::patch: return "patch";
        case CatalogKind::lagrangian: return "lagrangian";
        case CatalogKind::table: return "table";
    }
    return "?";
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = build_entries();
    return entries;
}

bool catalog_has(const std::string& id) {
    for (const auto& e : catalog_entries()) {
        if (e.id == id) return true;
    }
    return false;
}

const CatalogEntry& catalog_entry(const std::string& id) {
    for (const auto& e : catalog_entries()) {
        if (e.id == id) return e;
    }
    throw UsageError("unknown catalog id: " + id);
}

std::shared_ptr<SurfacePatch> catalog_patch(const std::string& id) {
    const CatalogEntry& e = catalog_entry(id);
    if (e.kind != CatalogKind::patch || !e.make) {
        throw UsageError("catalog entry is not a surface patch: " + id);
    }
    return e.make();
}

std::optional<GeodesicBall> catalog_ball(const std::string& id) {
    return catalog_entry(id).ball;
}

const LagrangianPatch& catalog_lagrangian() {
    static const LagrangianPatch lag(find_coassociative_plane().axes);
    return lag;
}

std::string catalog_list_text() {
    std::ostringstream os;
    for (const auto& e : catalog_entries()) {
        os << e.id << "  [" << kind_name(e.kind) << "]  " << e.description
           << "\n";
    }
    return os.str();
}

std::string catalog_dump_text(const std::string& id) {
    const CatalogEntry& e = catalog_entry(id);
    if (e.kind == CatalogKind::table) {
        return mult_table_string();
    }
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["kind"] = kind_name(e.kind);
    j["description"] = e.description;
    if (e.kind == CatalogKind::lagrangian) {
        const LagrangianPatch& lag = catalog_lagrangian();
        nlohmann::ordered_json axes = nlohmann::ordered_json::array();
        for (int a : lag.axes()) axes.push_back(a + 1);  // 1-based unit labels
        j["span_units"] = std::move(axes);
        j["embedding"] = "hyperspherical angles (a, b, c)";
        nlohmann::ordered_json samples = nlohmann::ordered_json::array();
        for (double a : {0.3, 1.1}) {
            for (double b : {0.4, 2.0}) {
                const Vec7 q = lag.embed(a, b, 0.7);
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (double x : q.c) row.push_back(x);
                samples.push_back(std::move(row));
            }
        }
        j["sample_points"] = std::move(samples);
        return j.dump(2) + "\n";
    }
    const auto patch = e.make();
    const Domain d = patch->domain();
    j["domain"] = {{"s0", d.s0}, {"s1", d.s1}, {"t0", d.t0}, {"t1", d.t1}};
    j["has_boundary"] = patch->has_boundary();
    if (e.ball) {
        nlohmann::ordered_json center = nlohmann::ordered_json::array();
        for (double x : e.ball->center.p.c) center.push_back(x);
        j["ball"] = {{"center", std::move(center)},
                     {"radius", e.ball->radius}};
    }
    j["lagrangian_paired"] = e.lagrangian_paired;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (int is = 0; is < 3; ++is) {
        for (int it = 0; it < 3; ++it) {
            const double s = d.s0 + (d.s1 - d.s0) * (0.25 + 0.25 * is);
            const double t = d.t0 + (d.t1 - d.t0) * (0.25 + 0.25 * it);
            const Vec7 p = patch->point(s, t);
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            row.push_back(s);
            row.push_back(t);
            for (double x : p.c) row.push_back(x);
            samples.push_back(std::move(row));
        }
    }
    j["sample_points"] = std::move(samples);
    return j.dump(2) + "\n";
}

}  // namespace nklab
