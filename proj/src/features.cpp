#include "momentforge/features.hpp"

#include "momentforge/errors.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace momentforge {
namespace {

constexpr char kMagic[4] = {'M', 'L', 'F', '1'};

uint32_t read_u32le(const unsigned char* p) {
    return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) |
           (uint32_t(p[3]) << 24);
}

float read_f32le(const unsigned char* p) {
    const uint32_t bits = read_u32le(p);
    float f;
    std::memcpy(&f, &bits, sizeof f);
    return f;
}

void write_u32le(std::ostream& os, uint32_t v) {
    const char buf[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                         char((v >> 24) & 0xff)};
    os.write(buf, 4);
}

void write_f32le(std::ostream& os, float f) {
    uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    write_u32le(os, bits);
}

} // namespace

FeatureMatrix load_features(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("load_features: cannot open " + path.string());
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

    if (raw.size() < 4 || std::memcmp(raw.data(), kMagic, 4) != 0) {
        throw ParseError("load_features: bad magic in " + path.string());
    }
    if (raw.size() < 16) {
        throw ParseError("load_features: truncated header in " + path.string());
    }
    FeatureMatrix fm;
    fm.clip_id = path.stem().string();
    fm.num_steps = static_cast<int>(read_u32le(raw.data() + 4));
    fm.dim = static_cast<int>(read_u32le(raw.data() + 8));
    fm.step_seconds = read_f32le(raw.data() + 12);
    if (fm.num_steps <= 0 || fm.dim <= 0 || !(fm.step_seconds > 0.0f)) {
        throw ValidationError("load_features: non-positive T, D, or step_seconds in " +
                              path.string());
    }
    const size_t count = static_cast<size_t>(fm.num_steps) * fm.dim;
    if (raw.size() != 16 + count * 4) {
        throw ParseError("load_features: payload is " + std::to_string(raw.size() - 16) +
                         " bytes, expected " + std::to_string(count * 4) + " in " +
                         path.string());
    }
    fm.values.resize(count);
    for (size_t i = 0; i < count; ++i) {
        const float v = read_f32le(raw.data() + 16 + i * 4);
        if (!std::isfinite(v)) {
            throw ValidationError("load_features: non-finite value at step " +
                                  std::to_string(i / fm.dim) + ", dim " +
                                  std::to_string(i % fm.dim) + " in " + path.string());
        }
        fm.values[i] = v;
    }
    return fm;
}

void save_features(const FeatureMatrix& fm, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("save_features: cannot open " + path.string());
    out.write(kMagic, 4);
    write_u32le(out, static_cast<uint32_t>(fm.num_steps));
    write_u32le(out, static_cast<uint32_t>(fm.dim));
    write_f32le(out, static_cast<float>(fm.step_seconds));
    for (const float v : fm.values) write_f32le(out, v);
    if (!out) throw ParseError("save_features: write failed for " + path.string());
}

} // namespace momentforge
