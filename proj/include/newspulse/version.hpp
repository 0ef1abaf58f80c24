#pragma once

namespace newspulse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace newspulse
