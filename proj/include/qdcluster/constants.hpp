#pragma once

// Physical constants and unit conversions.
//
// All dynamics run with hbar = 1, so energies are angular frequencies
// (rad/s). Conversion from micro-eV happens only at the parameter
// boundary, never inside propagators.

namespace qdc {

inline constexpr double pi = 3.14159265358979323846;

// hbar in ueV * s (CODATA)
inline constexpr double hbar_uev_s = 6.582119569e-10;
// h in ueV * s
inline constexpr double h_uev_s = 4.135667696e-9;
// resistance quantum h/e^2 in ohms
inline constexpr double r_quantum_ohm = 25812.807;

inline constexpr double uev_to_rad_per_s(double e_uev) { return e_uev / hbar_uev_s; }
inline constexpr double rad_per_s_to_uev(double w) { return w * hbar_uev_s; }
// ordinary-frequency conversion, used only where stated (decoherence budget)
inline constexpr double uev_to_hz(double e_uev) { return e_uev / h_uev_s; }

}  // namespace qdc
