#pragma once

// Level surfaces of constant OWID over the (c1, c2, c3) cube at fixed s.

#include "owid/channels.hpp"
#include "owid/oracle.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace owid {

/// Sphere-search settings used per grid point; coarser than the oracle
/// default because the reduced objective is cheap and smooth.
inline OptimizerConfig surface_optimizer_defaults() {
    OptimizerConfig cfg;
    cfg.coarse_polar_steps = 16;
    cfg.coarse_azimuth_steps = 32;
    return cfg;
}

struct SurfaceSpec {
    double s = 0.0;
    double target = 0.03;  // bits
    int resolution = 96;   // cells per axis
    Evaluator evaluator = Evaluator::reduced_oracle;
    double band = 1e-3;    // bits, point-cloud tolerance
    OptimizerConfig optimizer = surface_optimizer_defaults();
    unsigned threads = 1;

    /// Throws ArgumentError unless target > 0, band > 0, resolution >= 16.
    void validate() const;
};

/// OWID of the X state (s, c). Empty for unphysical c. In closed_form mode
/// also empty outside the closed-form region (closure of the condition).
std::optional<double> owid_field(double s, const Vec3& c, Evaluator evaluator,
                                 const OptimizerConfig& cfg = surface_optimizer_defaults());

struct SurfacePoint {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double owid = 0.0;
};

struct LevelSurfaceSample {
    int resolution = 0;
    std::vector<SurfacePoint> points;                 // grid points within the band
    std::vector<SurfacePoint> vertices;               // iso-surface vertices
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<std::uint8_t> physical_mask;          // per grid point, x fastest
    std::size_t physical_count = 0;
    std::size_t superlevel_count = 0;                 // physical points with owid >= target
    std::size_t fallback_count = 0;                   // closed_form points that needed the oracle
    std::string diagnostic;

    bool empty() const { return points.empty() && triangles.empty(); }
};

/// Evaluates the field on a (resolution+1)^3 corner-aligned grid over
/// [-1, 1]^3 and extracts the target level by marching tetrahedra (six per
/// cube). Deterministic for a fixed spec regardless of thread count.
LevelSurfaceSample sample_level_surface(const SurfaceSpec& spec);

enum class ExportFormat { csv_points, obj_mesh };

void write_points_csv(std::ostream& os, const LevelSurfaceSample& sample);
void write_obj(std::ostream& os, const LevelSurfaceSample& sample);

/// Throws IoError with the path on failure, ArgumentError for an OBJ export
/// of a sample without triangles.
void export_surface(const LevelSurfaceSample& sample, ExportFormat format, const std::filesystem::path& path);

} // namespace owid
