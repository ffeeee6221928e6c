// extern "C" surface over the owid C++ core.

#include "owid/owid.h"

#include "owid/channels.hpp"
#include "owid/closed_form.hpp"
#include "owid/errors.hpp"
#include "owid/geometry.hpp"
#include "owid/oracle.hpp"
#include "owid/states.hpp"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

struct owid_state {
    owid::DensityMatrix4 rho;
};

struct owid_surface {
    owid::LevelSurfaceSample sample;
};

namespace {

thread_local std::string g_last_error;

owid_status fail(owid_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs f, mapping exceptions from the core onto status codes.
template <typename F>
owid_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return OWID_OK;
    } catch (const owid::ArgumentError& e) {
        return fail(OWID_ERR_ARGUMENT, e.what());
    } catch (const owid::DomainError& e) {
        return fail(OWID_ERR_DOMAIN, e.what());
    } catch (const owid::PreconditionError& e) {
        return fail(OWID_ERR_PRECONDITION, e.what());
    } catch (const owid::ConvergenceError& e) {
        return fail(OWID_ERR_CONVERGENCE, e.what());
    } catch (const owid::IoError& e) {
        return fail(OWID_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(OWID_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OWID_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OWID_ERR_INTERNAL, "unknown error");
    }
}

template <typename... Ptrs>
bool any_null(const Ptrs*... ptrs) {
    return ((ptrs == nullptr) || ...);
}

#define OWID_REQUIRE(...)                                                     \
    do {                                                                      \
        if (any_null(__VA_ARGS__)) return fail(OWID_ERR_ARGUMENT, "null pointer argument"); \
    } while (0)

owid::BellDiagonalParams to_cpp(const owid_bell_params& p) { return {p.c1, p.c2, p.c3}; }
owid::XStateParams to_cpp(const owid_x_params& p) { return {p.s, p.c1, p.c2, p.c3}; }
owid_x_params to_c(const owid::XStateParams& p) { return {p.s, p.c1, p.c2, p.c3}; }

owid::OptimizerConfig to_cpp(const owid_optimizer_config* cfg) {
    owid::OptimizerConfig out;
    if (cfg == nullptr) return out;
    out.coarse_polar_steps = cfg->polar_steps;
    out.coarse_azimuth_steps = cfg->azimuth_steps;
    out.refine_iterations = cfg->refine_iterations;
    out.refine_tolerance = cfg->refine_tolerance;
    out.threads = cfg->threads;
    return out;
}

owid_optimizer_config to_c(const owid::OptimizerConfig& cfg) {
    return {cfg.coarse_polar_steps, cfg.coarse_azimuth_steps, cfg.refine_iterations, cfg.refine_tolerance,
            cfg.threads};
}

owid::Evaluator to_evaluator(int e) {
    switch (e) {
    case OWID_EVAL_CLOSED_FORM:
        return owid::Evaluator::closed_form;
    case OWID_EVAL_REDUCED_ORACLE:
        return owid::Evaluator::reduced_oracle;
    default:
        throw owid::ArgumentError("unknown evaluator " + std::to_string(e));
    }
}

owid::BoundaryPolicy to_policy(int allow_boundary) {
    return allow_boundary ? owid::BoundaryPolicy::allow_boundary : owid::BoundaryPolicy::strict;
}

void copy_spectrum(const owid::Spectrum<4>& s, double out[4]) {
    for (int i = 0; i < 4; ++i) out[i] = s[i];
}

owid_deficit to_c(const owid::Deficit& d) { return {d.value, d.raw, OWID_EVAL_CLOSED_FORM}; }

void fill_event(const owid::EventReport& r, owid_event* out) {
    out->found = r.found ? 1 : 0;
    out->p_star = r.p_star;
    out->residual = r.residual;
    std::memset(out->note, 0, sizeof out->note);
    std::strncpy(out->note, r.note.c_str(), sizeof out->note - 1);
}

} // namespace

extern "C" {

const char* owid_version(void) { return "1.0.0"; }

const char* owid_last_error(void) { return g_last_error.c_str(); }

const char* owid_status_name(owid_status status) {
    switch (status) {
    case OWID_OK: return "ok";
    case OWID_ERR_ARGUMENT: return "argument";
    case OWID_ERR_DOMAIN: return "domain";
    case OWID_ERR_PRECONDITION: return "precondition";
    case OWID_ERR_CONVERGENCE: return "convergence";
    case OWID_ERR_IO: return "io";
    case OWID_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void owid_optimizer_config_default(owid_optimizer_config* cfg) {
    if (cfg) *cfg = to_c(owid::OptimizerConfig{});
}

void owid_surface_spec_default(owid_surface_spec* spec) {
    if (!spec) return;
    const owid::SurfaceSpec d;
    spec->s = d.s;
    spec->target = d.target;
    spec->band = d.band;
    spec->resolution = d.resolution;
    spec->evaluator = OWID_EVAL_REDUCED_ORACLE;
    spec->threads = d.threads;
    spec->optimizer = to_c(d.optimizer);
}

/* ---- states ---- */

owid_status owid_state_from_bell(const owid_bell_params* p, owid_state** out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = new owid_state{owid::bell_diagonal_density(to_cpp(*p))}; });
}

owid_status owid_state_from_x(const owid_x_params* p, owid_state** out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = new owid_state{owid::x_state_density(to_cpp(*p))}; });
}

owid_status owid_state_from_matrix(const double re[16], const double im[16], owid_state** out) {
    OWID_REQUIRE(re, im, out);
    return guarded([&] {
        owid::Matrix4 m;
        for (std::size_t i = 0; i < 16; ++i) m(i / 4, i % 4) = owid::Complex(re[i], im[i]);
        *out = new owid_state{owid::DensityMatrix4::from_matrix(m)};
    });
}

void owid_state_free(owid_state* state) { delete state; }

owid_status owid_state_matrix(const owid_state* state, double re[16], double im[16]) {
    OWID_REQUIRE(state, re, im);
    return guarded([&] {
        const auto& m = state->rho.matrix();
        for (std::size_t i = 0; i < 16; ++i) {
            re[i] = m(i / 4, i % 4).real();
            im[i] = m(i / 4, i % 4).imag();
        }
    });
}

owid_status owid_state_spectrum(const owid_state* state, double out[4]) {
    OWID_REQUIRE(state, out);
    return guarded([&] { copy_spectrum(state->rho.spectrum(), out); });
}

owid_status owid_state_entropy(const owid_state* state, double* out) {
    OWID_REQUIRE(state, out);
    return guarded([&] { *out = owid::von_neumann_entropy(state->rho); });
}

owid_status owid_state_bloch(const owid_state* state, double r[3], double s[3], double t[9]) {
    OWID_REQUIRE(state, r, s, t);
    return guarded([&] {
        const owid::BlochDecomposition b = owid::bloch_decompose(state->rho);
        for (int i = 0; i < 3; ++i) {
            r[i] = b.r[i];
            s[i] = b.s[i];
            for (int j = 0; j < 3; ++j) t[3 * i + j] = b.t[i][j];
        }
    });
}

owid_status owid_bell_spectrum(const owid_bell_params* p, double out[4]) {
    OWID_REQUIRE(p, out);
    return guarded([&] { copy_spectrum(owid::bell_diagonal_spectrum(to_cpp(*p)), out); });
}

owid_status owid_x_spectrum(const owid_x_params* p, double out[4]) {
    OWID_REQUIRE(p, out);
    return guarded([&] { copy_spectrum(owid::x_state_spectrum(to_cpp(*p)), out); });
}

owid_status owid_x_condition(const owid_x_params* p, unsigned* violated) {
    OWID_REQUIRE(p, violated);
    return guarded([&] {
        const owid::XConditionReport r = owid::check_x_condition(to_cpp(*p));
        unsigned mask = 0;
        if (!r.c1_below_c2) mask |= OWID_COND_C1_BELOW_C2;
        if (!r.c2_below_c3) mask |= OWID_COND_C2_BELOW_C3;
        if (!r.s_nonzero) mask |= OWID_COND_S_NONZERO;
        if (!r.s_below_bound) mask |= OWID_COND_S_BELOW_BOUND;
        if (!r.closure) mask |= OWID_COND_CLOSURE;
        *violated = mask;
    });
}

/* ---- closed forms ---- */

owid_status owid_bell_entropy(const owid_bell_params* p, double* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = owid::entropy_bell_diagonal(to_cpp(*p)); });
}

owid_status owid_bell_min_measured_entropy(const owid_bell_params* p, double* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = owid::min_measured_entropy_bell(to_cpp(*p)); });
}

owid_status owid_bell_deficit(const owid_bell_params* p, owid_deficit* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = to_c(owid::owid_bell_diagonal(to_cpp(*p))); });
}

owid_status owid_f_phi_theta(double phi, double theta, double* out) {
    OWID_REQUIRE(out);
    return guarded([&] { *out = owid::f_phi_theta(phi, theta); });
}

owid_status owid_x_entropy(const owid_x_params* p, double* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = owid::entropy_x_state(to_cpp(*p)); });
}

owid_status owid_x_min_measured_entropy(const owid_x_params* p, int allow_boundary, double* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = owid::min_measured_entropy_x(to_cpp(*p), to_policy(allow_boundary)); });
}

owid_status owid_x_deficit(const owid_x_params* p, int allow_boundary, owid_deficit* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = to_c(owid::owid_x_state(to_cpp(*p), to_policy(allow_boundary))); });
}

owid_status owid_x_concurrence(const owid_x_params* p, double* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = owid::concurrence_x_state(to_cpp(*p)); });
}

/* ---- oracle ---- */

owid_status owid_measured_entropy(const owid_state* state, const double n[3], double* out) {
    OWID_REQUIRE(state, n, out);
    return guarded([&] {
        *out = owid::measured_entropy(state->rho, owid::MeasurementDirection::from_unit({n[0], n[1], n[2]}));
    });
}

owid_status owid_oracle_deficit(const owid_state* state, const owid_optimizer_config* cfg,
                                owid_oracle_result* out) {
    OWID_REQUIRE(state, out);
    return guarded([&] {
        *out = owid_oracle_result{};
        owid::OracleResult r;
        try {
            r = owid::owid_oracle(state->rho, to_cpp(cfg));
        } catch (const owid::ConvergenceError& e) {
            // best_value() is the smallest measured entropy seen.
            out->state_entropy = owid::von_neumann_entropy(state->rho);
            out->min_measured_entropy = e.best_value();
            out->raw = e.best_value() - out->state_entropy;
            out->value = std::max(out->raw, 0.0);
            throw;
        }
        out->value = r.value;
        out->raw = r.raw;
        out->min_measured_entropy = r.min_measured_entropy;
        out->state_entropy = r.state_entropy;
        for (int i = 0; i < 3; ++i) out->argmin[i] = r.argmin[i];
        out->iterations = r.iterations;
    });
}

owid_status owid_oracle_discord(const owid_state* state, const owid_optimizer_config* cfg, double* out) {
    OWID_REQUIRE(state, out);
    return guarded([&] { *out = owid::discord_oracle(state->rho, to_cpp(cfg)); });
}

owid_status owid_oracle_concurrence(const owid_state* state, double* out) {
    OWID_REQUIRE(state, out);
    return guarded([&] { *out = owid::concurrence_oracle(state->rho); });
}

owid_status owid_x_min_measured_entropy_reduced(const owid_x_params* p, const owid_optimizer_config* cfg,
                                                double* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = owid::min_measured_entropy_x_reduced(to_cpp(*p), to_cpp(cfg)); });
}

/* ---- channel ---- */

owid_status owid_p_of_time(double gamma, double t, double* out) {
    OWID_REQUIRE(out);
    return guarded([&] { *out = owid::p_of_time(gamma, t); });
}

owid_status owid_phase_flip_params(const owid_x_params* p, double strength, owid_x_params* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { *out = to_c(owid::apply_phase_flip_x(to_cpp(*p), strength)); });
}

owid_status owid_phase_flip_state(const owid_state* state, double strength, owid_state** out) {
    OWID_REQUIRE(state, out);
    return guarded([&] { *out = new owid_state{owid::apply_phase_flip(state->rho, strength)}; });
}

owid_status owid_phase_flip_deficit(const owid_x_params* p, double strength, const owid_optimizer_config* cfg,
                                    owid_deficit* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] {
        const owid::ChannelDeficit d = owid::owid_under_phase_flip(to_cpp(*p), strength, to_cpp(cfg));
        *out = {d.value, d.raw,
                d.source == owid::Evaluator::closed_form ? OWID_EVAL_CLOSED_FORM : OWID_EVAL_REDUCED_ORACLE};
    });
}

owid_status owid_trajectory(const owid_x_params* p, const double* grid, size_t n, const owid_optimizer_config* cfg,
                            owid_trajectory_point* out) {
    OWID_REQUIRE(p);
    if (n > 0 && (grid == nullptr || out == nullptr)) return fail(OWID_ERR_ARGUMENT, "null pointer argument");
    return guarded([&] {
        const auto points = owid::dynamics_trajectory(to_cpp(*p), std::span<const double>(grid, n), to_cpp(cfg));
        for (std::size_t i = 0; i < n; ++i) out[i] = {points[i].p, points[i].owid, points[i].concurrence};
    });
}

owid_status owid_write_trajectory_csv(const owid_trajectory_point* points, size_t n, const char* path) {
    OWID_REQUIRE(path);
    if (n > 0 && points == nullptr) return fail(OWID_ERR_ARGUMENT, "null pointer argument");
    return guarded([&] {
        std::vector<owid::TrajectoryPoint> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pts.push_back({points[i].p, points[i].owid, points[i].concurrence});
        owid::write_trajectory_csv(std::filesystem::path(path), pts);
    });
}

owid_status owid_find_sudden_death(const owid_x_params* p, owid_event* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { fill_event(owid::find_sudden_death(to_cpp(*p)), out); });
}

owid_status owid_find_crossing(const owid_x_params* p, const owid_optimizer_config* cfg, owid_event* out) {
    OWID_REQUIRE(p, out);
    return guarded([&] { fill_event(owid::find_crossing(to_cpp(*p), to_cpp(cfg)), out); });
}

/* ---- surfaces ---- */

owid_status owid_field(double s, const double c[3], int evaluator, const owid_optimizer_config* cfg, double* out,
                       int* defined) {
    OWID_REQUIRE(c, out, defined);
    return guarded([&] {
        const owid::OptimizerConfig oc = cfg ? to_cpp(cfg) : owid::surface_optimizer_defaults();
        const std::optional<double> v = owid::owid_field(s, {c[0], c[1], c[2]}, to_evaluator(evaluator), oc);
        *defined = v.has_value() ? 1 : 0;
        *out = v.value_or(0.0);
    });
}

owid_status owid_surface_sample(const owid_surface_spec* spec, owid_surface** out) {
    OWID_REQUIRE(spec, out);
    return guarded([&] {
        owid::SurfaceSpec s;
        s.s = spec->s;
        s.target = spec->target;
        s.band = spec->band;
        s.resolution = spec->resolution;
        s.evaluator = to_evaluator(spec->evaluator);
        s.threads = spec->threads;
        s.optimizer = to_cpp(&spec->optimizer);
        *out = new owid_surface{owid::sample_level_surface(s)};
    });
}

void owid_surface_free(owid_surface* surface) { delete surface; }

size_t owid_surface_point_count(const owid_surface* surface) {
    return surface ? surface->sample.points.size() : 0;
}

owid_status owid_surface_point(const owid_surface* surface, size_t i, double out[4]) {
    OWID_REQUIRE(surface, out);
    if (i >= surface->sample.points.size()) return fail(OWID_ERR_ARGUMENT, "surface point index out of range");
    const auto& p = surface->sample.points[i];
    out[0] = p.c1;
    out[1] = p.c2;
    out[2] = p.c3;
    out[3] = p.owid;
    return OWID_OK;
}

size_t owid_surface_vertex_count(const owid_surface* surface) {
    return surface ? surface->sample.vertices.size() : 0;
}

size_t owid_surface_triangle_count(const owid_surface* surface) {
    return surface ? surface->sample.triangles.size() : 0;
}

size_t owid_surface_physical_count(const owid_surface* surface) {
    return surface ? surface->sample.physical_count : 0;
}

size_t owid_surface_superlevel_count(const owid_surface* surface) {
    return surface ? surface->sample.superlevel_count : 0;
}

size_t owid_surface_fallback_count(const owid_surface* surface) {
    return surface ? surface->sample.fallback_count : 0;
}

const char* owid_surface_diagnostic(const owid_surface* surface) {
    return surface ? surface->sample.diagnostic.c_str() : "";
}

owid_status owid_surface_export(const owid_surface* surface, int format, const char* path) {
    OWID_REQUIRE(surface, path);
    return guarded([&] {
        owid::ExportFormat f;
        switch (format) {
        case OWID_EXPORT_CSV_POINTS: f = owid::ExportFormat::csv_points; break;
        case OWID_EXPORT_OBJ_MESH: f = owid::ExportFormat::obj_mesh; break;
        default: throw owid::ArgumentError("unknown export format " + std::to_string(format));
        }
        owid::export_surface(surface->sample, f, path);
    });
}

} // extern "C"
