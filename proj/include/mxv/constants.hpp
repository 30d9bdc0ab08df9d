#pragma once

namespace mxv::units {

inline constexpr double kBohrToAng = 0.529177210903;
inline constexpr double kHartreeToEv = 27.211386245988;

inline constexpr double bohr_to_ang(double bohr) { return bohr * kBohrToAng; }
inline constexpr double ang_to_bohr(double ang) { return ang / kBohrToAng; }
inline constexpr double hartree_to_ev(double ha) { return ha * kHartreeToEv; }

}  // namespace mxv::units
