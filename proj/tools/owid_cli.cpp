// owid command-line front end. Talks to the library only through owid.h.
//
//   owid compute  --params '{"family":"x","s":0.3,"c":[0.3,-0.4,0.56]}'
//   owid oracle   --params ... | --matrix-file rho.json
//   owid dynamics --params ... --p-grid 0:1:0.001 --out traj.csv
//   owid events   --params ...
//   owid surface  --s 0.3 --target 0.03 --resolution 64 --format obj --out a.obj
//
// Exit codes: 0 success (also for an empty surface), 2 invalid input,
// 3 numerical non-convergence.

#include "owid/format.hpp"
#include "owid/owid.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitConvergence = 3;

struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    int exit_code;
};

void check(owid_status status) {
    if (status == OWID_OK) return;
    const std::string msg = std::string(owid_status_name(status)) + ": " + owid_last_error();
    throw CliError(status == OWID_ERR_CONVERGENCE ? kExitConvergence : kExitInvalid, msg);
}

double num(double x) { return owid::round_g12(x); }

ordered_json vec(const double* v, std::size_t n) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) a.push_back(num(v[i]));
    return a;
}

struct StateParams {
    std::string family;  // "bell" or "x"
    double s = 0.0;
    double c[3] = {0.0, 0.0, 0.0};

    owid_x_params x() const { return {s, c[0], c[1], c[2]}; }
    owid_bell_params bell() const { return {c[0], c[1], c[2]}; }

    ordered_json to_json() const {
        ordered_json j;
        j["family"] = family;
        if (family == "x") j["s"] = num(s);
        j["c"] = vec(c, 3);
        return j;
    }
};

struct StateHandle {
    owid_state* ptr = nullptr;
    StateHandle() = default;
    StateHandle(const StateHandle&) = delete;
    StateHandle& operator=(const StateHandle&) = delete;
    ~StateHandle() { owid_state_free(ptr); }
};

struct SurfaceHandle {
    owid_surface* ptr = nullptr;
    SurfaceHandle() = default;
    SurfaceHandle(const SurfaceHandle&) = delete;
    SurfaceHandle& operator=(const SurfaceHandle&) = delete;
    ~SurfaceHandle() { owid_surface_free(ptr); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(kExitInvalid, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CliError(kExitInvalid, what + " is not valid JSON: " + e.what());
    }
}

double number_field(const ordered_json& j, const char* key) {
    if (!j.at(key).is_number()) throw CliError(kExitInvalid, std::string("params: '") + key + "' must be a number");
    return j.at(key).get<double>();
}

StateParams parse_params(const ordered_json& j, const std::string& family_flag) {
    if (!j.is_object()) throw CliError(kExitInvalid, "params must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "family" && key != "s" && key != "c")
            throw CliError(kExitInvalid, "params: unknown key '" + key + "'");

    StateParams p;
    if (j.contains("family")) {
        if (!j["family"].is_string()) throw CliError(kExitInvalid, "params: 'family' must be a string");
        p.family = j["family"].get<std::string>();
        if (!family_flag.empty() && family_flag != p.family)
            throw CliError(kExitInvalid, "--family " + family_flag + " conflicts with params family " + p.family);
    } else {
        p.family = family_flag;
    }
    if (p.family != "bell" && p.family != "x")
        throw CliError(kExitInvalid, "family must be \"bell\" or \"x\" (use --family or the params 'family' key)");

    if (!j.contains("c") || !j["c"].is_array() || j["c"].size() != 3)
        throw CliError(kExitInvalid, "params: 'c' must be an array of three numbers");
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j["c"][i].is_number()) throw CliError(kExitInvalid, "params: 'c' must be an array of three numbers");
        p.c[i] = j["c"][i].get<double>();
    }
    if (j.contains("s")) {
        p.s = number_field(j, "s");
        if (p.family == "bell" && p.s != 0.0)
            throw CliError(kExitInvalid, "params: Bell-diagonal states have s = 0");
    }
    return p;
}

struct Options {
    std::string family;
    std::string params;
    std::string params_file;
    std::string matrix_file;
    std::string out;
    std::string format = "csv";
    std::string evaluator = "reduced_oracle";
    std::string p_grid = "0:1:0.001";
    double s = 0.0;
    double target = 0.03;
    double band = 1e-3;
    int resolution = 96;
    unsigned threads = 1;
    owid_optimizer_config optimizer{};
    std::optional<int> polar_steps, azimuth_steps, refine_iterations;
    std::optional<double> refine_tolerance;
};

owid_optimizer_config optimizer_from(const Options& o, owid_optimizer_config base) {
    if (o.polar_steps) base.polar_steps = *o.polar_steps;
    if (o.azimuth_steps) base.azimuth_steps = *o.azimuth_steps;
    if (o.refine_iterations) base.refine_iterations = *o.refine_iterations;
    if (o.refine_tolerance) base.refine_tolerance = *o.refine_tolerance;
    base.threads = o.threads;
    return base;
}

owid_optimizer_config oracle_config(const Options& o) {
    owid_optimizer_config cfg;
    owid_optimizer_config_default(&cfg);
    return optimizer_from(o, cfg);
}

StateParams load_params(const Options& o) {
    if (!o.params.empty() && !o.params_file.empty())
        throw CliError(kExitInvalid, "use only one of --params and --params-file");
    if (o.params.empty() && o.params_file.empty())
        throw CliError(kExitInvalid, "state parameters required (--params or --params-file)");
    const std::string text = o.params.empty() ? read_file(o.params_file) : o.params;
    return parse_params(parse_json(text, "params"), o.family);
}

void make_state(const StateParams& p, StateHandle& h) {
    if (p.family == "bell") {
        const owid_bell_params b = p.bell();
        check(owid_state_from_bell(&b, &h.ptr));
    } else {
        const owid_x_params x = p.x();
        check(owid_state_from_x(&x, &h.ptr));
    }
}

ordered_json condition_json(unsigned violated) {
    ordered_json j;
    j["holds"] = violated == 0;
    ordered_json names = ordered_json::array();
    if (violated & OWID_COND_C1_BELOW_C2) names.push_back("|c1| < |c2|");
    if (violated & OWID_COND_C2_BELOW_C3) names.push_back("|c2| < |c3|");
    if (violated & OWID_COND_S_NONZERO) names.push_back("0 < |s|");
    if (violated & OWID_COND_S_BELOW_BOUND) names.push_back("|s| < 1 - |c3|");
    j["violated"] = names;
    return j;
}

void emit(const ordered_json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw CliError(kExitInvalid, "cannot open " + out + " for writing");
    f << text;
}

int cmd_compute(const Options& o) {
    const StateParams p = load_params(o);
    StateHandle state;
    make_state(p, state);

    ordered_json r;
    r["command"] = "compute";
    r["params"] = p.to_json();
    double spectrum[4];
    check(owid_state_spectrum(state.ptr, spectrum));
    r["spectrum"] = vec(spectrum, 4);

    const owid_x_params x = p.x();
    double concurrence = 0.0;
    check(owid_x_concurrence(&x, &concurrence));

    if (p.family == "bell") {
        const owid_bell_params b = p.bell();
        double entropy = 0.0, min_measured = 0.0;
        owid_deficit d{};
        check(owid_bell_entropy(&b, &entropy));
        check(owid_bell_min_measured_entropy(&b, &min_measured));
        check(owid_bell_deficit(&b, &d));
        r["entropy"] = num(entropy);
        r["min_measured_entropy"] = num(min_measured);
        r["owid"] = {{"value", num(d.value)}, {"raw", num(d.raw)}, {"provenance", "closed_form"}};
    } else {
        unsigned violated = 0;
        double entropy = 0.0;
        check(owid_x_condition(&x, &violated));
        check(owid_x_entropy(&x, &entropy));
        r["condition"] = condition_json(violated);
        r["entropy"] = num(entropy);
        if (violated == 0) {
            double min_measured = 0.0;
            owid_deficit d{};
            check(owid_x_min_measured_entropy(&x, 0, &min_measured));
            check(owid_x_deficit(&x, 0, &d));
            r["min_measured_entropy"] = num(min_measured);
            r["owid"] = {{"value", num(d.value)}, {"raw", num(d.raw)}, {"provenance", "closed_form"}};
        } else {
            const owid_optimizer_config cfg = oracle_config(o);
            double min_measured = 0.0;
            check(owid_x_min_measured_entropy_reduced(&x, &cfg, &min_measured));
            const double raw = min_measured - entropy;
            r["min_measured_entropy"] = num(min_measured);
            r["owid"] = {{"value", num(std::max(raw, 0.0))}, {"raw", num(raw)}, {"provenance", "oracle"}};
        }
    }
    r["concurrence"] = num(concurrence);
    emit(r, o.out);
    return 0;
}

void load_matrix(const std::string& path, StateHandle& h) {
    const ordered_json j = parse_json(read_file(path), "matrix file");
    double re[16] = {}, im[16] = {};
    auto fill = [&](const char* key, double* dst, bool required) {
        if (!j.contains(key)) {
            if (required) throw CliError(kExitInvalid, std::string("matrix file needs '") + key + "'");
            return;
        }
        const auto& rows = j[key];
        if (!rows.is_array() || rows.size() != 4)
            throw CliError(kExitInvalid, std::string("matrix '") + key + "' must be 4 rows of 4 numbers");
        for (std::size_t r = 0; r < 4; ++r) {
            if (!rows[r].is_array() || rows[r].size() != 4)
                throw CliError(kExitInvalid, std::string("matrix '") + key + "' must be 4 rows of 4 numbers");
            for (std::size_t c = 0; c < 4; ++c) {
                if (!rows[r][c].is_number())
                    throw CliError(kExitInvalid, std::string("matrix '") + key + "' entries must be numbers");
                dst[4 * r + c] = rows[r][c].get<double>();
            }
        }
    };
    fill("re", re, true);
    fill("im", im, false);
    check(owid_state_from_matrix(re, im, &h.ptr));
}

int cmd_oracle(const Options& o) {
    StateHandle state;
    std::optional<StateParams> params;
    ordered_json r;
    r["command"] = "oracle";
    if (!o.matrix_file.empty()) {
        if (!o.params.empty() || !o.params_file.empty())
            throw CliError(kExitInvalid, "use either a matrix file or state parameters, not both");
        load_matrix(o.matrix_file, state);
        r["input"] = "matrix";
    } else {
        params = load_params(o);
        make_state(*params, state);
        r["input"] = "params";
        r["params"] = params->to_json();
    }

    const owid_optimizer_config cfg = oracle_config(o);
    owid_oracle_result res{};
    const owid_status st = owid_oracle_deficit(state.ptr, &cfg, &res);
    if (st == OWID_ERR_CONVERGENCE) {
        r["owid"] = num(res.value);
        r["owid_raw"] = num(res.raw);
        r["converged"] = false;
        r["min_measured_entropy"] = num(res.min_measured_entropy);
        r["entropy"] = num(res.state_entropy);
        emit(r, o.out);
        check(st);
    }
    check(st);

    double discord = 0.0, concurrence = 0.0;
    check(owid_oracle_discord(state.ptr, &cfg, &discord));
    check(owid_oracle_concurrence(state.ptr, &concurrence));

    r["owid"] = num(res.value);
    r["owid_raw"] = num(res.raw);
    r["converged"] = true;
    r["argmin"] = vec(res.argmin, 3);
    r["min_measured_entropy"] = num(res.min_measured_entropy);
    r["entropy"] = num(res.state_entropy);
    r["discord"] = num(discord);
    r["concurrence"] = num(concurrence);

    ordered_json closed = nullptr;
    if (params) {
        owid_deficit d{};
        owid_status cs = OWID_ERR_PRECONDITION;
        if (params->family == "bell") {
            const owid_bell_params b = params->bell();
            cs = owid_bell_deficit(&b, &d);
        } else {
            const owid_x_params x = params->x();
            cs = owid_x_deficit(&x, 0, &d);
        }
        if (cs == OWID_OK) closed = {{"owid", num(d.value)}, {"delta", num(std::abs(d.value - res.value))}};
    }
    r["closed_form"] = closed;
    emit(r, o.out);
    return 0;
}

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw CliError(kExitInvalid, "--p-grid must look like start:stop:step (got '" + spec + "')");
    if (!(step > 0.0) || stop < start || start < 0.0 || stop > 1.0)
        throw CliError(kExitInvalid, "--p-grid needs 0 <= start <= stop <= 1 and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-6));
    std::vector<double> grid;
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(std::min(stop, start + static_cast<double>(i) * step));
    return grid;
}

int cmd_dynamics(const Options& o) {
    const StateParams p = load_params(o);
    const owid_x_params x = p.x();
    const std::vector<double> grid = parse_grid(o.p_grid);
    const owid_optimizer_config cfg = oracle_config(o);
    std::vector<owid_trajectory_point> points(grid.size());
    check(owid_trajectory(&x, grid.data(), grid.size(), &cfg, points.data()));

    if (o.out.empty()) {
        std::cout << "p,owid_bits,concurrence\n";
        for (const auto& pt : points)
            std::cout << owid::format_g12(pt.p) << ',' << owid::format_g12(pt.owid) << ','
                      << owid::format_g12(pt.concurrence) << '\n';
        return 0;
    }
    check(owid_write_trajectory_csv(points.data(), points.size(), o.out.c_str()));
    ordered_json r;
    r["command"] = "dynamics";
    r["params"] = p.to_json();
    r["rows"] = points.size();
    r["out"] = o.out;
    emit(r, "");
    return 0;
}

ordered_json event_json(const owid_event& e) {
    ordered_json j;
    j["found"] = e.found != 0;
    j["p_star"] = e.found ? ordered_json(num(e.p_star)) : ordered_json(nullptr);
    j["residual"] = e.found ? ordered_json(num(e.residual)) : ordered_json(nullptr);
    j["note"] = std::string(e.note);
    return j;
}

int cmd_events(const Options& o) {
    const StateParams p = load_params(o);
    const owid_x_params x = p.x();
    const owid_optimizer_config cfg = oracle_config(o);
    owid_event death{}, crossing{};
    check(owid_find_sudden_death(&x, &death));
    check(owid_find_crossing(&x, &cfg, &crossing));
    ordered_json r;
    r["command"] = "events";
    r["params"] = p.to_json();
    r["sudden_death"] = event_json(death);
    r["crossing"] = event_json(crossing);
    emit(r, o.out);
    return 0;
}

int cmd_surface(const Options& o) {
    if (o.out.empty()) throw CliError(kExitInvalid, "surface needs --out");
    owid_surface_spec spec;
    owid_surface_spec_default(&spec);
    spec.s = o.s;
    spec.target = o.target;
    spec.band = o.band;
    spec.resolution = o.resolution;
    spec.threads = o.threads;
    spec.evaluator = o.evaluator == "closed_form" ? OWID_EVAL_CLOSED_FORM : OWID_EVAL_REDUCED_ORACLE;
    spec.optimizer = optimizer_from(o, spec.optimizer);
    spec.optimizer.threads = 1;

    SurfaceHandle surface;
    check(owid_surface_sample(&spec, &surface.ptr));

    const std::string diagnostic = owid_surface_diagnostic(surface.ptr);
    const bool obj = o.format == "obj";
    const bool empty = !diagnostic.empty();
    const bool written = !(obj && owid_surface_triangle_count(surface.ptr) == 0);
    if (written)
        check(owid_surface_export(surface.ptr, obj ? OWID_EXPORT_OBJ_MESH : OWID_EXPORT_CSV_POINTS, o.out.c_str()));
    if (empty) std::cerr << "owid: warning: empty surface: " << diagnostic << "\n";

    ordered_json r;
    r["command"] = "surface";
    r["s"] = num(o.s);
    r["target"] = num(o.target);
    r["resolution"] = o.resolution;
    r["evaluator"] = o.evaluator;
    r["format"] = o.format;
    r["points"] = owid_surface_point_count(surface.ptr);
    r["vertices"] = owid_surface_vertex_count(surface.ptr);
    r["triangles"] = owid_surface_triangle_count(surface.ptr);
    r["physical"] = owid_surface_physical_count(surface.ptr);
    r["superlevel"] = owid_surface_superlevel_count(surface.ptr);
    r["fallback"] = owid_surface_fallback_count(surface.ptr);
    r["out"] = written ? ordered_json(o.out) : ordered_json(nullptr);
    r["warning"] = empty ? ordered_json(diagnostic) : ordered_json(nullptr);
    emit(r, "");
    return 0;
}

void add_state_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--family", o.family, "State family: bell or x")->check(CLI::IsMember({"bell", "x"}));
    cmd->add_option("--params", o.params, R"(Inline JSON, e.g. {"family":"x","s":0.3,"c":[0.3,-0.4,0.56]})");
    cmd->add_option("--params-file", o.params_file, "File holding the params JSON");
}

void add_optimizer_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--polar-steps", o.polar_steps, "Coarse grid polar steps (>= 8)");
    cmd->add_option("--azimuth-steps", o.azimuth_steps, "Coarse grid azimuth steps (>= 8)");
    cmd->add_option("--refine-iterations", o.refine_iterations, "Simplex iteration cap");
    cmd->add_option("--refine-tolerance", o.refine_tolerance, "Simplex value spread in bits");
    cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-way information deficit, discord and concurrence for two-qubit states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(owid_version()));
    Options o;

    auto* compute = app.add_subcommand("compute", "Closed-form entropy, OWID and concurrence");
    add_state_flags(compute, o);
    add_optimizer_flags(compute, o);
    compute->add_option("--out", o.out, "Write the JSON report here instead of stdout");

    auto* oracle = app.add_subcommand("oracle", "Brute-force OWID, discord and concurrence");
    add_state_flags(oracle, o);
    add_optimizer_flags(oracle, o);
    oracle->add_option("--matrix-file", o.matrix_file, R"(JSON {"re":[[4x4]],"im":[[4x4]]})");
    oracle->add_option("--out", o.out, "Write the JSON report here instead of stdout");

    auto* dynamics = app.add_subcommand("dynamics", "OWID and concurrence under the phase-flip channel (CSV)");
    add_state_flags(dynamics, o);
    add_optimizer_flags(dynamics, o);
    dynamics->add_option("--p-grid", o.p_grid, "start:stop:step in [0,1]")->capture_default_str();
    dynamics->add_option("--out", o.out, "CSV path (stdout when omitted)");

    auto* events = app.add_subcommand("events", "Entanglement sudden death and OWID/concurrence crossing");
    add_state_flags(events, o);
    add_optimizer_flags(events, o);
    events->add_option("--out", o.out, "Write the JSON report here instead of stdout");

    auto* surface = app.add_subcommand("surface", "Constant-OWID level surface over (c1,c2,c3)");
    surface->add_option("--s", o.s, "Local Bloch component s of qubit b")->required();
    surface->add_option("--target", o.target, "OWID level in bits")->required();
    surface->add_option("--resolution", o.resolution, "Cells per axis (>= 16)")->capture_default_str();
    surface->add_option("--band", o.band, "Point-cloud tolerance in bits")->capture_default_str();
    surface->add_option("--evaluator", o.evaluator, "closed_form or reduced_oracle")
        ->check(CLI::IsMember({"closed_form", "reduced_oracle"}))
        ->capture_default_str();
    surface->add_option("--format", o.format, "csv (points) or obj (mesh)")
        ->check(CLI::IsMember({"csv", "obj"}))
        ->capture_default_str();
    surface->add_option("--out", o.out, "Output path")->required();
    add_optimizer_flags(surface, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*compute) return cmd_compute(o);
        if (*oracle) return cmd_oracle(o);
        if (*dynamics) return cmd_dynamics(o);
        if (*events) return cmd_events(o);
        if (*surface) return cmd_surface(o);
    } catch (const CliError& e) {
        std::cerr << "owid: error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "owid: error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
