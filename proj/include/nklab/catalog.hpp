#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nklab/lagrangian.hpp"
#include "nklab/surface.hpp"

namespace nklab {

/// What a catalog entry resolves to: a surface patch, the Lagrangian link, or
/// a plain text table.
enum class CatalogKind { patch, lagrangian, table };

/// One pinned test-bed configuration.  Entries are fixed data, never derived
/// from run parameters, so every suite and every report sees the same objects.
struct CatalogEntry {
    std::string id;
    CatalogKind kind = CatalogKind::patch;
    std::string description;
    /// Free-boundary pairing: the geodesic ball whose boundary sphere the
    /// patch boundary is expected to sit on (patches with boundary only).
    std::optional<GeodesicBall> ball;
    /// True when the patch boundary lies on the catalog Lagrangian link and
    /// the entry is meant for index/Maslov runs.
    bool lagrangian_paired = false;
    /// Factory (patch entries only; empty otherwise).
    std::function<std::shared_ptr<SurfacePatch>()> make;
};

const std::vector<CatalogEntry>& catalog_entries();
bool catalog_has(const std::string& id);
/// Throws UsageError for unknown ids.
const CatalogEntry& catalog_entry(const std::string& id);
/// Throws UsageError for unknown ids and for non-patch entries.
std::shared_ptr<SurfacePatch> catalog_patch(const std::string& id);
std::optional<GeodesicBall> catalog_ball(const std::string& id);

/// The totally geodesic Lagrangian link used by every boundary pairing: the
/// unit sphere of the first coassociative coordinate 4-plane through e1, e2
/// found by the deterministic search.  Built once, cached.
const LagrangianPatch& catalog_lagrangian();

/// Human-readable one-line-per-entry listing.
std::string catalog_list_text();
/// Machine-readable dump: JSON for patch/lagrangian entries, plain text for
/// the multiplication table.
std::string catalog_dump_text(const std::string& id);

}  // namespace nklab
