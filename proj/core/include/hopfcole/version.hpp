#pragma once

namespace hopfcole {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hopfcole
