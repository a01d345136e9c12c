#include "voicegraph/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "voicegraph/errors.hpp"

namespace vg {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
}

} // namespace

AudioClip load_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedWav("cannot open wav file: " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw MalformedWav("not a RIFF/WAVE file: " + path.string());
    }

    bool have_fmt = false;
    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    const unsigned char* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t size = read_u32(bytes.data() + pos + 4);
        pos += 8;
        if (pos + size > bytes.size()) throw MalformedWav("truncated chunk in " + path.string());
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16) throw MalformedWav("fmt chunk too small in " + path.string());
            const unsigned char* f = bytes.data() + pos;
            format = read_u16(f);
            channels = read_u16(f + 2);
            sample_rate = read_u32(f + 4);
            bits = read_u16(f + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = bytes.data() + pos;
            data_size = size;
        }
        pos += size + (size & 1); // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr) throw MalformedWav("missing fmt/data chunk in " + path.string());
    if (format != 1 || bits != 16) {
        throw UnsupportedEncoding("only PCM 16-bit supported, got format " + std::to_string(format) +
                                  " with " + std::to_string(bits) + " bits in " + path.string());
    }
    if (channels == 0 || sample_rate == 0) throw MalformedWav("bad fmt fields in " + path.string());
    if (data_size % (2u * channels) != 0) throw MalformedWav("data size misaligned in " + path.string());

    const std::size_t n_frames = data_size / (2u * channels);
    if (n_frames < 2) throw MalformedWav("fewer than 2 samples in " + path.string());

    AudioClip clip;
    clip.sample_rate = static_cast<int>(sample_rate);
    clip.source_id = path.stem().string();
    clip.samples.resize(static_cast<Eigen::Index>(n_frames));
    for (std::size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (std::uint16_t ch = 0; ch < channels; ++ch) {
            const unsigned char* p = data + 2 * (i * channels + ch);
            const std::int16_t s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
            acc += static_cast<double>(s);
        }
        clip.samples[static_cast<Eigen::Index>(i)] = acc / channels / 32768.0;
    }
    return clip;
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip) {
    if (clip.sample_rate <= 0) throw ConfigError("bad sample_rate in write_wav");
    const std::uint32_t n = static_cast<std::uint32_t>(clip.samples.size());
    std::vector<unsigned char> out;
    out.reserve(44 + 2 * n);
    const char* riff = "RIFF";
    out.insert(out.end(), riff, riff + 4);
    put_u32(out, 36 + 2 * n);
    const char* wavefmt = "WAVEfmt ";
    out.insert(out.end(), wavefmt, wavefmt + 8);
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    const char* datahdr = "data";
    out.insert(out.end(), datahdr, datahdr + 4);
    put_u32(out, 2 * n);
    for (Eigen::Index i = 0; i < clip.samples.size(); ++i) {
        const double x = std::clamp(clip.samples[i], -1.0, 1.0);
        const std::int16_t s = static_cast<std::int16_t>(std::lrint(x * 32767.0));
        put_u16(out, static_cast<std::uint16_t>(s));
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write wav file: " + path.string());
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

} // namespace vg
