#pragma once

#include <filesystem>

#include "erel/mask.hpp"

namespace erel {

/// Reads an 8-bit grayscale frame, dispatching on the file extension:
/// .pgm (binary P5) or .png (any PNG, converted to 8-bit gray).
FrameImage read_frame_image(const std::filesystem::path& path);

FrameImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const FrameImage& img);

FrameImage read_png(const std::filesystem::path& path);

} // namespace erel
