#pragma once

namespace outline_energy {

inline constexpr const char* kVersion = "0.1.0";

} // namespace outline_energy
