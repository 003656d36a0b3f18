#pragma once

namespace stueckelberg {

// Embedded in every output file's metadata block.
inline constexpr const char* kVersionTag = "stueckelberg 1.0.0";

}  // namespace stueckelberg
