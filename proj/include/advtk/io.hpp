#ifndef ADVTK_IO_HPP
#define ADVTK_IO_HPP

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "advtk/model.hpp"
#include "advtk/tensor.hpp"

namespace advtk {

namespace io {

inline void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline std::uint32_t get_u32le(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

inline void put_f32le(std::string& out, float f) {
    put_u32le(out, std::bit_cast<std::uint32_t>(f));
}

inline float get_f32le(const unsigned char* p) {
    return std::bit_cast<float>(get_u32le(p));
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (f.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

}  // namespace io

// ---------------------------------------------------------------------------
// "ADVT1" tensor container: 5-byte magic, u8 rank, rank x u32 LE dims, then
// the 32-bit-real blob (little endian). Lossless round trip.

inline std::string encode_advt(const Tensor& t) {
    std::string out = "ADVT1";
    out.push_back(static_cast<char>(t.rank()));
    for (int d : t.shape()) io::put_u32le(out, static_cast<std::uint32_t>(d));
    out.reserve(out.size() + t.data().size() * 4);
    for (float v : t.data()) io::put_f32le(out, v);
    return out;
}

inline Tensor decode_advt(const std::string& bytes, const std::string& origin) {
    auto fail = [&](const std::string& what) { throw IoError(origin + ": " + what); };
    if (bytes.size() < 6 || bytes.compare(0, 5, "ADVT1") != 0)
        fail("not an ADVT1 tensor container");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    int rank = p[5];
    std::size_t off = 6;
    if (rank < 1) fail("invalid rank 0");
    if (bytes.size() < off + static_cast<std::size_t>(rank) * 4) fail("truncated dims");
    Shape shape(static_cast<std::size_t>(rank));
    long long n = 1;
    for (int i = 0; i < rank; ++i) {
        shape[static_cast<std::size_t>(i)] = static_cast<int>(io::get_u32le(p + off));
        if (shape[static_cast<std::size_t>(i)] <= 0) fail("non-positive dim");
        n *= shape[static_cast<std::size_t>(i)];
        off += 4;
    }
    if (bytes.size() != off + static_cast<std::size_t>(n) * 4)
        fail("payload size does not match dims");
    std::vector<float> data(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) data[static_cast<std::size_t>(i)] = io::get_f32le(p + off + i * 4);
    return Tensor(std::move(shape), std::move(data));
}

inline void write_advt(const std::filesystem::path& path, const Tensor& t) {
    io::write_file(path, encode_advt(t));
}

inline Tensor read_advt(const std::filesystem::path& path) {
    return decode_advt(io::read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// 8-bit images. PPM (P6) for RGB patches, PGM (P5) for grayscale maps.

// Round-half-up quantization of a 0-255 real.
inline unsigned char quantize8(float v) {
    long r = std::lround(v);
    if (r < 0) r = 0;
    if (r > 255) r = 255;
    return static_cast<unsigned char>(r);
}

inline void write_ppm(const std::filesystem::path& path, const Tensor& image) {
    if (image.rank() != 3 || image.dim(0) != 3)
        throw DimensionError("ppm: expected [3,H,W], got " + shape_str(image.shape()));
    int h = image.dim(1), w = image.dim(2);
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(3 * h * w));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c)
                out.push_back(static_cast<char>(quantize8(image.at3(c, y, x))));
    io::write_file(path, out);
}

namespace io {

inline int next_pnm_int(const std::string& s, std::size_t& pos, const std::string& origin) {
    while (pos < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        } else if (s[pos] == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    int v = 0;
    bool any = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        v = v * 10 + (s[pos] - '0');
        ++pos;
        any = true;
    }
    if (!any) throw IoError(origin + ": malformed PNM header");
    return v;
}

}  // namespace io

inline Tensor read_ppm(const std::filesystem::path& path) {
    std::string s = io::read_file(path);
    if (s.size() < 2 || s[0] != 'P' || s[1] != '6')
        throw IoError(path.string() + ": not a binary PPM (P6)");
    std::size_t pos = 2;
    int w = io::next_pnm_int(s, pos, path.string());
    int h = io::next_pnm_int(s, pos, path.string());
    int maxval = io::next_pnm_int(s, pos, path.string());
    if (maxval != 255) throw IoError(path.string() + ": expected maxval 255");
    ++pos;  // single whitespace after maxval
    if (s.size() < pos + static_cast<std::size_t>(3 * w * h))
        throw IoError(path.string() + ": truncated pixel data");
    Tensor t(Shape{3, h, w});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c)
                t.at3(c, y, x) =
                    static_cast<float>(static_cast<unsigned char>(s[pos++]));
    return t;
}

// Grayscale export, rescaled so the max maps to 255 (all-zero maps stay zero).
inline void write_pgm_normalized(const std::filesystem::path& path, const Tensor& map) {
    if (map.rank() != 2)
        throw DimensionError("pgm: expected [H,W], got " + shape_str(map.shape()));
    int h = map.dim(0), w = map.dim(1);
    float mx = 0.0f;
    for (float v : map.data()) mx = std::max(mx, v);
    float s = mx > 0.0f ? 255.0f / mx : 0.0f;
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (int i = 0; i < map.numel(); ++i)
        out.push_back(static_cast<char>(quantize8(map[i] * s)));
    io::write_file(path, out);
}

// ---------------------------------------------------------------------------
// "ADVP1" model checkpoint: magic, u32 LE header length, JSON header (spec,
// seed, epoch count), then parameter blobs as little-endian 32-bit reals in
// spec order.

namespace io {

inline nlohmann::json spec_to_json(const ModelSpec& spec) {
    nlohmann::json layers = nlohmann::json::array();
    for (const LayerSpec& l : spec.layers) {
        nlohmann::json j{{"kind", l.kind_name()}};
        if (l.kind == LayerSpec::Kind::Conv) {
            j["out_channels"] = l.out_channels;
            j["kernel"] = l.kernel;
            j["stride"] = l.stride;
            j["pad"] = l.pad;
        } else if (l.kind == LayerSpec::Kind::Dense) {
            j["out_features"] = l.out_features;
        }
        layers.push_back(j);
    }
    return nlohmann::json{{"input", spec.input},
                          {"layers", layers},
                          {"classes", spec.classes},
                          {"pixel_norm", spec.pixel_norm}};
}

inline ModelSpec spec_from_json(const nlohmann::json& j, const std::string& origin) {
    ModelSpec spec;
    try {
        spec.input = j.at("input").get<Shape>();
        spec.classes = j.at("classes").get<int>();
        spec.pixel_norm = j.at("pixel_norm").get<float>();
        for (const auto& lj : j.at("layers")) {
            std::string kind = lj.at("kind").get<std::string>();
            if (kind == "conv") {
                spec.layers.push_back(LayerSpec::conv(
                    lj.at("out_channels").get<int>(), lj.at("kernel").get<int>(),
                    lj.at("stride").get<int>(), lj.at("pad").get<int>()));
            } else if (kind == "relu") {
                spec.layers.push_back(LayerSpec::relu());
            } else if (kind == "maxpool2") {
                spec.layers.push_back(LayerSpec::maxpool2());
            } else if (kind == "flatten") {
                spec.layers.push_back(LayerSpec::flatten());
            } else if (kind == "dense") {
                spec.layers.push_back(LayerSpec::dense(lj.at("out_features").get<int>()));
            } else {
                throw IoError(origin + ": unknown layer kind '" + kind + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(origin + ": malformed checkpoint header: " + e.what());
    }
    return spec;
}

}  // namespace io

inline void save_checkpoint(const std::filesystem::path& path, const Model& m) {
    nlohmann::json header{{"spec", io::spec_to_json(m.spec)},
                          {"seed", m.seed},
                          {"epochs", m.epochs_trained}};
    std::string hs = header.dump();
    std::string out = "ADVP1";
    io::put_u32le(out, static_cast<std::uint32_t>(hs.size()));
    out += hs;
    for (const Tensor& p : m.params)
        for (float v : p.data()) io::put_f32le(out, v);
    io::write_file(path, out);
}

inline Model load_checkpoint(const std::filesystem::path& path) {
    std::string bytes = io::read_file(path);
    if (bytes.size() < 9 || bytes.compare(0, 5, "ADVP1") != 0)
        throw IoError(path.string() + ": not an ADVP1 checkpoint");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::uint32_t hlen = io::get_u32le(p + 5);
    if (bytes.size() < 9 + hlen) throw IoError(path.string() + ": truncated header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(bytes.substr(9, hlen));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": bad header JSON: " + e.what());
    }
    Model m;
    m.spec = io::spec_from_json(header.at("spec"), path.string());
    m.spec.validate();
    m.seed = header.value("seed", std::uint64_t{0});
    m.epochs_trained = header.value("epochs", 0);

    // Rebuild parameter shapes from the spec, then slurp the blobs.
    Model shaped = build_model(m.spec, 0);
    std::size_t off = 9 + hlen;
    for (Tensor& t : shaped.params) {
        std::size_t need = static_cast<std::size_t>(t.numel()) * 4;
        if (bytes.size() < off + need)
            throw IoError(path.string() + ": truncated parameter blob");
        for (int i = 0; i < t.numel(); ++i) t[i] = io::get_f32le(p + off + i * 4);
        off += need;
    }
    if (off != bytes.size()) throw IoError(path.string() + ": trailing bytes after parameters");
    m.params = std::move(shaped.params);
    return m;
}

// ---------------------------------------------------------------------------
// Minimal CSV helpers. All toolkit schemas are plain comma-separated fields
// with no quoting; UTF-8 with LF line endings.

inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Reads a CSV with an exact expected header; returns data rows.
inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                                      const std::string& expected_header) {
    std::string s = io::read_file(path);
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= s.size()) {
        std::size_t nl = s.find('\n', pos);
        std::string line =
            nl == std::string::npos ? s.substr(pos) : s.substr(pos, nl - pos);
        pos = nl == std::string::npos ? s.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno;
        if (lineno == 1) {
            if (line != expected_header)
                throw IoError(path.string() + ":1: expected header '" + expected_header +
                              "', got '" + line + "'");
            continue;
        }
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

}  // namespace advtk

#endif  // ADVTK_IO_HPP
