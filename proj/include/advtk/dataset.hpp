#ifndef ADVTK_DATASET_HPP
#define ADVTK_DATASET_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "advtk/io.hpp"
#include "advtk/rng.hpp"
#include "advtk/tensor.hpp"

namespace advtk {

// One labeled image patch. Generated patches additionally carry the
// generator's placement log: a spatial tumour-pixel mask and blob counts.
struct LabeledPatch {
    std::string id;
    Tensor image;  // [3,H,W], values in [0,255]
    int label = 0;
    std::vector<std::uint8_t> tumour_mask;  // H*W, empty for loaded datasets
    int tumour_blobs = 0;
    int distractor_blobs = 0;
};

struct Dataset {
    std::vector<LabeledPatch> patches;
    std::string provenance;

    std::size_t size() const { return patches.size(); }
    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(patches.size());
        for (const auto& p : patches) out.push_back(p.label);
        return out;
    }
    bool has_both_classes() const {
        bool pos = false, neg = false;
        for (const auto& p : patches) (p.label ? pos : neg) = true;
        return pos && neg;
    }
};

// Synthetic histology-like patches. Positives carry >= 5 dark elliptical
// "tumour" blobs; negatives carry only light round distractor blobs and no
// tumour blobs, mirroring the count-based labeling rule.
struct SynthConfig {
    int patch_size = 32;
    int positives = 240;
    int negatives = 180;
    double radius_min = 2.0;
    double radius_max = 4.0;
    int tumour_min = 5;  // must stay >= 5
    int tumour_max = 9;
    int distractor_min = 3;
    int distractor_max = 8;
    double noise = 8.0;
    std::uint64_t seed = 0;

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (patch_size < 8) v.push_back("patch_size must be >= 8");
        if (positives < 0 || negatives < 0) v.push_back("class counts must be >= 0");
        if (radius_min < 1.0) v.push_back("radius_min must be >= 1");
        if (radius_max < radius_min) v.push_back("radius_max must be >= radius_min");
        if (2.0 * radius_max >= patch_size)
            v.push_back("blob radius too large for the patch size");
        if (tumour_min < 5) v.push_back("tumour_min must be >= 5 (labeling rule)");
        if (tumour_max < tumour_min) v.push_back("tumour_max must be >= tumour_min");
        if (distractor_min < 0) v.push_back("distractor_min must be >= 0");
        if (distractor_max < distractor_min)
            v.push_back("distractor_max must be >= distractor_min");
        if (noise < 0.0) v.push_back("noise must be >= 0");
        return v;
    }
    void validate() const {
        auto v = violations();
        if (!v.empty()) {
            std::string msg = "synth config:";
            for (const auto& s : v) msg += "\n  - " + s;
            throw ConfigError(msg);
        }
    }
};

namespace detail {

inline void draw_ellipse(Tensor& img, std::vector<std::uint8_t>* mask, double cx, double cy,
                         double rx, double ry, const float rgb[3], float alpha) {
    int h = img.dim(1), w = img.dim(2);
    int y0 = std::max(0, static_cast<int>(cy - ry - 1));
    int y1 = std::min(h - 1, static_cast<int>(cy + ry + 1));
    int x0 = std::max(0, static_cast<int>(cx - rx - 1));
    int x1 = std::min(w - 1, static_cast<int>(cx + rx + 1));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            double dx = (x - cx) / rx;
            double dy = (y - cy) / ry;
            double d2 = dx * dx + dy * dy;
            if (d2 > 1.0) continue;
            // soft edge over the outer 30% of the radius
            float edge = static_cast<float>(std::min(1.0, (1.0 - std::sqrt(d2)) / 0.3));
            float a = alpha * edge;
            for (int c = 0; c < 3; ++c)
                img.at3(c, y, x) = (1.0f - a) * img.at3(c, y, x) + a * rgb[c];
            if (mask && a > 0.45f) (*mask)[static_cast<std::size_t>(y * w + x)] = 1;
        }
    }
}

inline LabeledPatch synth_patch(const SynthConfig& cfg, int label, int index,
                                std::uint64_t stream_index) {
    Rng rng(derive_seed(cfg.seed, "synth.patch", stream_index));
    int s = cfg.patch_size;
    LabeledPatch p;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s_%04d", label ? "pos" : "neg", index);
    p.id = buf;
    p.label = label;
    p.image = Tensor(Shape{3, s, s});
    p.tumour_mask.assign(static_cast<std::size_t>(s * s), 0);

    // eosin-tinted background with per-patch tint and pixel noise
    float base[3] = {231.0f + rng.uniform(-6.0f, 6.0f), 205.0f + rng.uniform(-6.0f, 6.0f),
                     214.0f + rng.uniform(-6.0f, 6.0f)};
    float amp = static_cast<float>(cfg.noise);
    for (int y = 0; y < s; ++y)
        for (int x = 0; x < s; ++x)
            for (int c = 0; c < 3; ++c)
                p.image.at3(c, y, x) = base[c] + rng.uniform(-amp, amp);

    auto rad = [&] { return rng.uniform(static_cast<float>(cfg.radius_min),
                                        static_cast<float>(cfg.radius_max)); };
    auto center = [&](double r) {
        return rng.uniform(static_cast<float>(r), static_cast<float>(s - r));
    };

    // light pink round distractors, both classes
    p.distractor_blobs =
        cfg.distractor_min + rng.uniform_int(cfg.distractor_max - cfg.distractor_min + 1);
    for (int i = 0; i < p.distractor_blobs; ++i) {
        double r = rad();
        float rgb[3] = {236.0f + rng.uniform(-8.0f, 8.0f), 160.0f + rng.uniform(-10.0f, 10.0f),
                        186.0f + rng.uniform(-8.0f, 8.0f)};
        draw_ellipse(p.image, nullptr, center(r), center(r), r, r, rgb, 0.85f);
    }

    // dark "tumour" nuclei ellipses, positives only
    if (label == 1) {
        p.tumour_blobs = cfg.tumour_min + rng.uniform_int(cfg.tumour_max - cfg.tumour_min + 1);
        for (int i = 0; i < p.tumour_blobs; ++i) {
            double rx = rad(), ry = rad();
            double r = std::max(rx, ry);
            float rgb[3] = {82.0f + rng.uniform(-12.0f, 12.0f), 48.0f + rng.uniform(-10.0f, 10.0f),
                            118.0f + rng.uniform(-12.0f, 12.0f)};
            draw_ellipse(p.image, &p.tumour_mask, center(r), center(r), rx, ry, rgb, 0.92f);
        }
    }

    for (float& v : p.image.data()) v = std::min(255.0f, std::max(0.0f, v));
    return p;
}

}  // namespace detail

inline Dataset generate(const SynthConfig& cfg) {
    cfg.validate();
    Dataset d;
    d.provenance = "synthetic seed=" + std::to_string(cfg.seed);
    d.patches.reserve(static_cast<std::size_t>(cfg.positives + cfg.negatives));
    std::uint64_t stream = 0;
    for (int i = 0; i < cfg.positives; ++i)
        d.patches.push_back(detail::synth_patch(cfg, 1, i, stream++));
    for (int i = 0; i < cfg.negatives; ++i)
        d.patches.push_back(detail::synth_patch(cfg, 0, i, stream++));
    return d;
}

enum class SaveFormat { Quantized8Bit, FloatRaw };

// Writes labels.csv (id,filename,label) plus one image file per patch.
inline void save_dir(const Dataset& d, const std::filesystem::path& dir, SaveFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory: " + dir.string());
    std::string csv = "id,filename,label\n";
    for (const LabeledPatch& p : d.patches) {
        std::string fname = p.id + (format == SaveFormat::Quantized8Bit ? ".ppm" : ".advt");
        if (format == SaveFormat::Quantized8Bit)
            write_ppm(dir / fname, p.image);
        else
            write_advt(dir / fname, p.image);
        csv += p.id + "," + fname + "," + std::to_string(p.label) + "\n";
    }
    io::write_file(dir / "labels.csv", csv);
}

// Loads a directory written by save_dir (or hand-assembled to the same
// schema). Patches come back in labels.csv order; 8-bit channels are
// promoted to reals.
inline Dataset load_dir(const std::filesystem::path& dir) {
    auto csv_path = dir / "labels.csv";
    auto rows = read_csv(csv_path, "id,filename,label");
    Dataset d;
    d.provenance = dir.string();
    int lineno = 1;
    for (const auto& row : rows) {
        ++lineno;
        auto where = csv_path.string() + ":" + std::to_string(lineno);
        if (row.size() != 3) throw IoError(where + ": expected 3 fields, got " +
                                           std::to_string(row.size()));
        LabeledPatch p;
        p.id = row[0];
        if (row[2] != "0" && row[2] != "1")
            throw IoError(where + ": label must be 0 or 1, got '" + row[2] + "'");
        p.label = row[2] == "1" ? 1 : 0;
        auto img_path = dir / row[1];
        if (!std::filesystem::exists(img_path))
            throw IoError(where + ": missing image file " + img_path.string());
        if (img_path.extension() == ".ppm")
            p.image = read_ppm(img_path);
        else if (img_path.extension() == ".advt")
            p.image = read_advt(img_path);
        else
            throw IoError(where + ": unsupported image format " + img_path.string());
        d.patches.push_back(std::move(p));
    }
    return d;
}

// Stratified train/test split; deterministic per seed; disjoint, exhaustive.
inline std::pair<Dataset, Dataset> split(const Dataset& d, double fraction,
                                         std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ContractError("split: fraction must be in (0,1), got " +
                            std::to_string(fraction));
    std::vector<int> by_class[2];
    for (std::size_t i = 0; i < d.patches.size(); ++i)
        by_class[d.patches[i].label].push_back(static_cast<int>(i));
    std::vector<int> train_idx, test_idx;
    for (int c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, "split.class", static_cast<std::uint64_t>(c)));
        rng.shuffle(by_class[c]);
        auto n_train =
            static_cast<std::size_t>(std::llround(fraction * double(by_class[c].size())));
        for (std::size_t i = 0; i < by_class[c].size(); ++i)
            (i < n_train ? train_idx : test_idx).push_back(by_class[c][i]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    Dataset train, test;
    train.provenance = d.provenance + " [train]";
    test.provenance = d.provenance + " [test]";
    for (int i : train_idx) train.patches.push_back(d.patches[static_cast<std::size_t>(i)]);
    for (int i : test_idx) test.patches.push_back(d.patches[static_cast<std::size_t>(i)]);
    return {std::move(train), std::move(test)};
}

}  // namespace advtk

#endif  // ADVTK_DATASET_HPP
