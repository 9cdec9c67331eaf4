#pragma once

#include <filesystem>

#include "mtaer/video_cube.hpp"

namespace mtaer {

enum class CubeFormat {
    cube_binary,   // single .mtvc file, see docs/formats.md
    pgm_sequence,  // directory of frame_NNNNNN.pgm files plus manifest.json
};

/// Loads a cube from disk. PGM samples are normalized to [0, 1] by the
/// format's maxval; the frame rate comes from manifest.json. Malformed or
/// truncated inputs throw std::runtime_error and never yield a partial cube.
VideoCube read_cube(const std::filesystem::path& path, CubeFormat format);

/// Convenience: picks pgm_sequence for directories, cube_binary otherwise.
VideoCube read_cube(const std::filesystem::path& path);

/// Writes the cube-binary format. Samples are stored as little-endian
/// 32-bit floats, so read_cube(write_cube(c)) reproduces c exactly when c
/// holds float-precision samples, and to within one float rounding otherwise.
void write_cube(const VideoCube& cube, const std::filesystem::path& path);

}  // namespace mtaer
