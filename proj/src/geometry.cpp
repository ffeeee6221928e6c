#include "owid/geometry.hpp"

#include "owid/errors.hpp"
#include "owid/format.hpp"
#include "owid/parallel.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <unordered_map>

namespace owid {

namespace {

// Kuhn split of the unit cube along the 0-7 diagonal; corner = dx + 2dy + 4dz.
constexpr std::array<std::array<int, 4>, 6> kTetrahedra{{
    {0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7},
}};

constexpr double kNotDefined = std::numeric_limits<double>::quiet_NaN();

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

class Grid {
public:
    explicit Grid(int resolution) : n_(static_cast<std::size_t>(resolution) + 1), res_(resolution) {}

    std::size_t size() const { return n_ * n_ * n_; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return i + n_ * (j + n_ * k); }
    double coordinate(std::size_t i) const { return -1.0 + 2.0 * static_cast<double>(i) / res_; }
    Vec3 position(std::size_t g) const {
        return {coordinate(g % n_), coordinate((g / n_) % n_), coordinate(g / (n_ * n_))};
    }

private:
    std::size_t n_;
    int res_;
};

// Iso-surface vertices shared between tetrahedra through their grid edge.
class MeshBuilder {
public:
    MeshBuilder(LevelSurfaceSample& out, const Grid& grid, const std::vector<double>& field, double target)
        : out_(out), grid_(grid), field_(field), target_(target) {}

    void add_tetrahedron(const std::array<std::size_t, 4>& g) {
        std::array<bool, 4> inside{};
        int count = 0;
        for (int i = 0; i < 4; ++i) {
            inside[i] = field_[g[i]] >= target_;
            count += inside[i];
        }
        if (count == 0 || count == 4) return;

        std::array<int, 4> in{}, outv{};
        int ni = 0, no = 0;
        for (int i = 0; i < 4; ++i) (inside[i] ? in[ni++] : outv[no++]) = i;

        Vec3 gradient{};
        for (int i = 0; i < 4; ++i) {
            const Vec3 p = grid_.position(g[i]);
            const double w = inside[i] ? 1.0 / ni : -1.0 / no;
            for (int d = 0; d < 3; ++d) gradient[d] += w * p[d];
        }

        auto v = [&](int a, int b) { return edge_vertex(g[a], g[b]); };
        if (ni == 1) {
            emit(v(in[0], outv[0]), v(in[0], outv[1]), v(in[0], outv[2]), gradient);
        } else if (ni == 3) {
            emit(v(outv[0], in[0]), v(outv[0], in[1]), v(outv[0], in[2]), gradient);
        } else {
            const auto ac = v(in[0], outv[0]), ad = v(in[0], outv[1]);
            const auto bc = v(in[1], outv[0]), bd = v(in[1], outv[1]);
            emit(ac, ad, bd, gradient);
            emit(ac, bd, bc, gradient);
        }
    }

private:
    std::uint32_t edge_vertex(std::size_t ga, std::size_t gb) {
        if (ga > gb) std::swap(ga, gb);
        const std::uint64_t key = (static_cast<std::uint64_t>(ga) << 32) | static_cast<std::uint64_t>(gb);
        if (auto it = index_.find(key); it != index_.end()) return it->second;
        const double va = field_[ga], vb = field_[gb];
        const double t = (target_ - va) / (vb - va);
        const Vec3 pa = grid_.position(ga), pb = grid_.position(gb);
        const auto id = static_cast<std::uint32_t>(out_.vertices.size());
        out_.vertices.push_back({pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]),
                                 pa[2] + t * (pb[2] - pa[2]), target_});
        index_.emplace(key, id);
        return id;
    }

    Vec3 vertex_position(std::uint32_t id) const {
        const auto& p = out_.vertices[id];
        return {p.c1, p.c2, p.c3};
    }

    // Orients the triangle so its normal points towards larger OWID.
    void emit(std::uint32_t a, std::uint32_t b, std::uint32_t c, const Vec3& gradient) {
        if (a == b || b == c || a == c) return;
        const Vec3 pa = vertex_position(a);
        const Vec3 normal = cross(sub(vertex_position(b), pa), sub(vertex_position(c), pa));
        if (dot(normal, gradient) < 0.0) std::swap(b, c);
        out_.triangles.push_back({a, b, c});
    }

    LevelSurfaceSample& out_;
    const Grid& grid_;
    const std::vector<double>& field_;
    double target_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

} // namespace

void SurfaceSpec::validate() const {
    if (!std::isfinite(s)) throw ArgumentError("surface s must be finite");
    if (!(target > 0.0) || !std::isfinite(target)) throw ArgumentError("surface target must be > 0");
    if (!(band > 0.0)) throw ArgumentError("surface band must be > 0");
    if (resolution < 16) throw ArgumentError("surface resolution must be >= 16");
    optimizer.validate();
}

std::optional<double> owid_field(double s, const Vec3& c, Evaluator evaluator, const OptimizerConfig& cfg) {
    const XStateParams p{s, c[0], c[1], c[2]};
    if (!is_physical(p)) return std::nullopt;
    if (evaluator == Evaluator::closed_form) {
        if (!check_x_condition(p).closure) return std::nullopt;
        return owid_x_state(p, BoundaryPolicy::allow_boundary).value;
    }
    return std::max(min_measured_entropy_x_reduced(p, cfg) - entropy_x_state(p), 0.0);
}

LevelSurfaceSample sample_level_surface(const SurfaceSpec& spec) {
    spec.validate();
    OptimizerConfig inner = spec.optimizer;
    inner.threads = 1;

    const Grid grid(spec.resolution);
    std::vector<double> field(grid.size(), kNotDefined);
    std::vector<std::uint8_t> fallback(grid.size(), 0);
    parallel_for(grid.size(), spec.threads, [&](std::size_t g) {
        const Vec3 c = grid.position(g);
        std::optional<double> v = owid_field(spec.s, c, spec.evaluator, inner);
        if (!v && spec.evaluator == Evaluator::closed_form) {
            v = owid_field(spec.s, c, Evaluator::reduced_oracle, inner);
            fallback[g] = v.has_value();
        }
        if (v) field[g] = *v;
    });

    LevelSurfaceSample out;
    out.resolution = spec.resolution;
    out.physical_mask.resize(grid.size());
    double field_max = 0.0;
    double field_min = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double v = field[g];
        const bool defined = !std::isnan(v);
        out.physical_mask[g] = defined;
        if (!defined) continue;
        ++out.physical_count;
        out.fallback_count += fallback[g];
        field_max = std::max(field_max, v);
        field_min = std::min(field_min, v);
        if (v >= spec.target) ++out.superlevel_count;
        if (std::abs(v - spec.target) <= spec.band) {
            const Vec3 c = grid.position(g);
            out.points.push_back({c[0], c[1], c[2], v});
        }
    }

    MeshBuilder mesh(out, grid, field, spec.target);
    const auto r = static_cast<std::size_t>(spec.resolution);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < r; ++i) {
                std::array<std::size_t, 8> corner{};
                bool complete = true;
                for (int c = 0; c < 8; ++c) {
                    corner[c] = grid.index(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
                    complete = complete && out.physical_mask[corner[c]];
                }
                if (!complete) continue;
                for (const auto& tet : kTetrahedra)
                    mesh.add_tetrahedron({corner[tet[0]], corner[tet[1]], corner[tet[2]], corner[tet[3]]});
            }

    if (out.empty()) {
        if (out.physical_count == 0)
            out.diagnostic = "no physical grid point for s = " + format_g12(spec.s);
        else if (out.superlevel_count == 0)
            out.diagnostic = "no grid point reaches OWID " + format_g12(spec.target) + " (field maximum " +
                             format_g12(field_max) + ")";
        else if (out.superlevel_count == out.physical_count)
            out.diagnostic = "every physical grid point exceeds OWID " + format_g12(spec.target) +
                             " (field minimum " + format_g12(field_min) + ")";
        else
            out.diagnostic = "OWID " + format_g12(spec.target) + " is not crossed inside any fully physical cell";
    }
    return out;
}

void write_points_csv(std::ostream& os, const LevelSurfaceSample& sample) {
    os << "c1,c2,c3,owid\n";
    for (const auto& p : sample.points)
        os << format_g12(p.c1) << ',' << format_g12(p.c2) << ',' << format_g12(p.c3) << ','
           << format_g12(p.owid) << '\n';
}

void write_obj(std::ostream& os, const LevelSurfaceSample& sample) {
    os << "# OWID level surface: " << sample.vertices.size() << " vertices, " << sample.triangles.size()
       << " faces\n";
    for (const auto& v : sample.vertices)
        os << "v " << format_g12(v.c1) << ' ' << format_g12(v.c2) << ' ' << format_g12(v.c3) << '\n';
    for (const auto& t : sample.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void export_surface(const LevelSurfaceSample& sample, ExportFormat format, const std::filesystem::path& path) {
    if (format == ExportFormat::obj_mesh && sample.triangles.empty())
        throw ArgumentError("cannot export an OBJ mesh without triangles");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    if (format == ExportFormat::csv_points)
        write_points_csv(out, sample);
    else
        write_obj(out, sample);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

} // namespace owid
