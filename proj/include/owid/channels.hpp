#pragma once

// Local phase-flip decoherence on both qubits of an X state, the resulting
// OWID/concurrence trajectories, and detection of entanglement sudden death
// and of the point where the OWID overtakes the concurrence.

#include "owid/closed_form.hpp"
#include "owid/oracle.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace owid {

/// p = 1 - exp(-gamma t). Throws ArgumentError on negative input.
double p_of_time(double gamma, double t);

struct PhaseFlipKraus {
    std::array<Matrix4, 2> side_a;  // diag(sqrt(1-p/2))(x)I, diag(sqrt(p/2), -sqrt(p/2))(x)I
    std::array<Matrix4, 2> side_b;  // same operators acting on qubit b
};

/// Throws ArgumentError unless 0 <= p <= 1.
PhaseFlipKraus kraus_phase_flip(double p);

/// (s, c1, c2, c3) -> (s, (1-p)^2 c1, (1-p)^2 c2, c3).
XStateParams apply_phase_flip_x(const XStateParams& params, double p);

/// sum_k K rho K^dagger. Throws ArgumentError if sum_k K^dagger K differs
/// from the identity by more than 1e-10.
DensityMatrix4 apply_channel_kraus(const DensityMatrix4& rho, std::span<const Matrix4> kraus);

/// Side-a Kraus set, then side-b.
DensityMatrix4 apply_phase_flip(const DensityMatrix4& rho, double p);

enum class Evaluator { closed_form, reduced_oracle };

struct ChannelDeficit {
    double value = 0.0;
    double raw = 0.0;
    Evaluator source = Evaluator::closed_form;
    std::string warning;  // set when the closed form did not apply
};

/// OWID of the decohered state via the explicit channel expression. When the
/// decohered parameters leave the closed-form region (closure of the
/// condition), falls back to the reduced sphere search and sets `warning`.
ChannelDeficit owid_under_phase_flip(const XStateParams& params, double p,
                                     const OptimizerConfig& cfg = {});

/// 2 max sqrt(lambda) - sum sqrt(lambda) before clamping at zero.
double concurrence_margin_under_phase_flip(const XStateParams& params, double p);
double concurrence_under_phase_flip(const XStateParams& params, double p);

struct TrajectoryPoint {
    double p = 0.0;
    double owid = 0.0;         // bits
    double concurrence = 0.0;
};

/// Throws ArgumentError unless the grid is sorted and inside [0, 1].
std::vector<TrajectoryPoint> dynamics_trajectory(const XStateParams& params,
                                                 std::span<const double> p_grid,
                                                 const OptimizerConfig& cfg = {});

/// start, start + step, ... up to and including stop (within step/1e6).
std::vector<double> uniform_grid(double start, double stop, double step);

enum class EventKind { sudden_death, crossing };

struct EventReport {
    EventKind kind = EventKind::sudden_death;
    bool found = false;
    double p_star = 0.0;
    double residual = 0.0;
    std::string note;
};

inline constexpr double kEventTolerance = 1e-8;

/// Smallest p where the concurrence reaches zero.
EventReport find_sudden_death(const XStateParams& params);
/// Point where concurrence - OWID changes sign before sudden death (or p=1).
EventReport find_crossing(const XStateParams& params, const OptimizerConfig& cfg = {});

/// Columns p,owid_bits,concurrence with %.12g values.
void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> points);
void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectoryPoint> points);

} // namespace owid
