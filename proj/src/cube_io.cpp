#include "mtaer/cube_io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mtaer {
namespace {

constexpr char kMagic[4] = {'M', 'T', 'V', 'C'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "cube-binary I/O assumes a little-endian host");

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("cube I/O: " + path.string() + ": " + what);
}

std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

float read_f32(std::istream& in) {
    float v = 0.0f;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

VideoCube read_cube_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) fail(path, "bad magic, not an MTVC file");
    const std::uint32_t version = read_u32(in);
    if (version != kVersion) fail(path, "unsupported version " + std::to_string(version));

    VideoCube cube;
    cube.width = read_u32(in);
    cube.height = read_u32(in);
    cube.num_frames = read_u32(in);
    cube.frame_rate = static_cast<double>(read_f32(in));
    const std::uint32_t reserved = read_u32(in);
    if (!in) fail(path, "truncated header");
    if (reserved != 0) fail(path, "reserved header bytes must be zero");
    if (cube.width < 1 || cube.height < 1 || cube.num_frames < 2) {
        fail(path, "invalid dimensions in header");
    }
    if (!(cube.frame_rate > 0.0)) fail(path, "frame_rate must be positive");

    const std::size_t count = cube.sample_count();
    std::vector<float> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(float)) {
        fail(path, "truncated payload: header promises " + std::to_string(count) +
                       " samples");
    }
    in.peek();
    if (!in.eof()) fail(path, "trailing bytes after payload");

    cube.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const float v = payload[i];
        if (!std::isfinite(v)) fail(path, "non-finite sample at index " + std::to_string(i));
        cube.samples[i] = static_cast<double>(v);
    }
    return cube;
}

// Binary P5 only. Comments and arbitrary whitespace in the header are
// allowed; maxval up to 65535 (two-byte samples are big-endian per the spec).
struct PgmImage {
    std::size_t width = 0, height = 0;
    unsigned maxval = 0;
    std::vector<std::uint16_t> pixels;
};

int pgm_next_header_char(std::istream& in) {
    int c = in.get();
    while (c == '#') {  // comment runs to end of line
        while (c != '\n' && c != EOF) c = in.get();
        if (c != EOF) c = in.get();
    }
    return c;
}

unsigned long pgm_read_number(std::istream& in, const std::filesystem::path& path) {
    int c = pgm_next_header_char(in);
    while (c != EOF && std::isspace(c)) c = pgm_next_header_char(in);
    if (c == EOF || !std::isdigit(c)) fail(path, "malformed PGM header");
    unsigned long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + static_cast<unsigned long>(c - '0');
        c = in.get();
    }
    if (c != EOF && !std::isspace(c)) fail(path, "malformed PGM header");
    return value;
}

PgmImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open frame");
    char p = 0, five = 0;
    in.get(p);
    in.get(five);
    if (p != 'P' || five != '5') fail(path, "not a binary P5 PGM");
    PgmImage img;
    img.width = pgm_read_number(in, path);
    img.height = pgm_read_number(in, path);
    img.maxval = static_cast<unsigned>(pgm_read_number(in, path));
    if (img.width < 1 || img.height < 1) fail(path, "invalid PGM dimensions");
    if (img.maxval < 1 || img.maxval > 65535) fail(path, "invalid PGM maxval");

    const std::size_t count = img.width * img.height;
    img.pixels.resize(count);
    if (img.maxval < 256) {
        std::vector<std::uint8_t> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count) fail(path, "truncated PGM payload");
        for (std::size_t i = 0; i < count; ++i) img.pixels[i] = raw[i];
    } else {
        std::vector<std::uint8_t> raw(count * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 2));
        if (static_cast<std::size_t>(in.gcount()) != count * 2) fail(path, "truncated PGM payload");
        for (std::size_t i = 0; i < count; ++i) {
            img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
        }
    }
    return img;
}

std::string frame_name(std::size_t index) {
    std::ostringstream name;
    name << "frame_";
    std::string digits = std::to_string(index);
    for (std::size_t i = digits.size(); i < 6; ++i) name << '0';
    name << digits << ".pgm";
    return name.str();
}

VideoCube read_pgm_sequence(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) fail(dir, "not a directory");
    const auto manifest_path = dir / "manifest.json";
    std::ifstream mf(manifest_path);
    if (!mf) fail(manifest_path, "missing manifest.json");
    nlohmann::json manifest;
    try {
        mf >> manifest;
    } catch (const nlohmann::json::exception& e) {
        fail(manifest_path, std::string("invalid JSON: ") + e.what());
    }
    if (!manifest.contains("fps") || !manifest.contains("frames")) {
        fail(manifest_path, "manifest must contain \"fps\" and \"frames\"");
    }
    const double fps = manifest["fps"].get<double>();
    const std::size_t frames = manifest["frames"].get<std::size_t>();
    if (!(fps > 0.0)) fail(manifest_path, "fps must be positive");
    if (frames < 2) fail(manifest_path, "at least 2 frames required");

    VideoCube cube;
    cube.frame_rate = fps;
    cube.num_frames = frames;
    for (std::size_t t = 0; t < frames; ++t) {
        const auto frame_path = dir / frame_name(t);
        if (!std::filesystem::exists(frame_path)) fail(frame_path, "missing frame listed in manifest");
        PgmImage img = read_pgm(frame_path);
        if (t == 0) {
            cube.width = img.width;
            cube.height = img.height;
            cube.samples.reserve(cube.sample_count());
        } else if (img.width != cube.width || img.height != cube.height) {
            fail(frame_path, "frame dimensions differ from frame 0");
        }
        const double inv_maxval = 1.0 / static_cast<double>(img.maxval);
        for (std::uint16_t v : img.pixels) {
            cube.samples.push_back(static_cast<double>(v) * inv_maxval);
        }
    }
    return cube;
}

}  // namespace

VideoCube read_cube(const std::filesystem::path& path, CubeFormat format) {
    VideoCube cube = format == CubeFormat::cube_binary ? read_cube_binary(path)
                                                       : read_pgm_sequence(path);
    validate(cube);
    return cube;
}

VideoCube read_cube(const std::filesystem::path& path) {
    return read_cube(path, std::filesystem::is_directory(path)
                               ? CubeFormat::pgm_sequence
                               : CubeFormat::cube_binary);
}

void write_cube(const VideoCube& cube, const std::filesystem::path& path) {
    validate(cube);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open file for writing");

    out.write(kMagic, 4);
    auto put_u32 = [&out](std::uint32_t v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    };
    put_u32(kVersion);
    put_u32(static_cast<std::uint32_t>(cube.width));
    put_u32(static_cast<std::uint32_t>(cube.height));
    put_u32(static_cast<std::uint32_t>(cube.num_frames));
    const float rate = static_cast<float>(cube.frame_rate);
    out.write(reinterpret_cast<const char*>(&rate), sizeof(rate));
    put_u32(0);  // reserved

    std::vector<float> payload(cube.samples.size());
    for (std::size_t i = 0; i < cube.samples.size(); ++i) {
        payload[i] = static_cast<float>(cube.samples[i]);
    }
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    out.flush();
    if (!out) fail(path, "write failed");
}

}  // namespace mtaer
