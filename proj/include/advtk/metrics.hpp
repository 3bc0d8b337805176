#ifndef ADVTK_METRICS_HPP
#define ADVTK_METRICS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "advtk/dataset.hpp"
#include "advtk/parallel.hpp"
#include "advtk/train.hpp"

namespace advtk {

inline double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.size() != labels.size())
        throw ContractError("accuracy: " + std::to_string(predictions.size()) +
                            " predictions vs " + std::to_string(labels.size()) + " labels");
    if (predictions.empty()) throw ContractError("accuracy: empty inputs");
    int hit = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (predictions[i] == labels[i]) ++hit;
    return double(hit) / double(labels.size());
}

// AUC-ROC in the pairwise-concordance (Mann-Whitney) form: the probability
// that a random positive outscores a random negative, ties counting 0.5.
// Computed from tie-averaged ranks; exactly equals the O(n^2) pair count.
inline double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw ContractError("auc_roc: " + std::to_string(scores.size()) + " scores vs " +
                            std::to_string(labels.size()) + " labels");
    std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) throw ContractError("auc_roc: labels must be 0 or 1");
        n_pos += static_cast<std::size_t>(l);
    }
    std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw ContractError("auc_roc: both classes must be present");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // average ranks within tie groups; ranks are 1-based
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[idx[j + 1]] == scores[idx[i]]) ++j;
        double avg_rank = 0.5 * (double(i + 1) + double(j + 1));
        for (std::size_t k = i; k <= j; ++k)
            if (labels[idx[k]] == 1) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    double u = rank_sum_pos - double(n_pos) * double(n_pos + 1) / 2.0;
    return u / (double(n_pos) * double(n_neg));
}

struct FoldSplit {
    std::vector<int> train;
    std::vector<int> test;
};

// Stratified k-fold: per class, a seeded shuffle dealt round-robin, so every
// test fold's class counts are within one sample of the global proportion.
inline std::vector<FoldSplit> stratified_kfold(const std::vector<int>& labels, int k,
                                               std::uint64_t seed) {
    if (k < 2) throw ContractError("stratified_kfold: k must be >= 2");
    std::vector<int> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw ContractError("stratified_kfold: labels must be 0 or 1");
        by_class[labels[i]].push_back(static_cast<int>(i));
    }
    for (int c = 0; c < 2; ++c)
        if (static_cast<int>(by_class[c].size()) < k)
            throw DataError("stratified_kfold: class " + std::to_string(c) + " has " +
                            std::to_string(by_class[c].size()) + " members, need >= " +
                            std::to_string(k));
    std::vector<std::vector<int>> fold_members(static_cast<std::size_t>(k));
    for (int c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, "kfold.class", static_cast<std::uint64_t>(c)));
        rng.shuffle(by_class[c]);
        for (std::size_t i = 0; i < by_class[c].size(); ++i)
            fold_members[i % static_cast<std::size_t>(k)].push_back(by_class[c][i]);
    }
    std::vector<FoldSplit> out(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) {
        auto& m = fold_members[static_cast<std::size_t>(f)];
        std::sort(m.begin(), m.end());
        out[static_cast<std::size_t>(f)].test = m;
        for (int g = 0; g < k; ++g) {
            if (g == f) continue;
            for (int i : fold_members[static_cast<std::size_t>(g)])
                out[static_cast<std::size_t>(f)].train.push_back(i);
        }
        auto& tr = out[static_cast<std::size_t>(f)].train;
        std::sort(tr.begin(), tr.end());
    }
    return out;
}

struct Metrics {
    std::vector<double> fold_accuracy;  // runs*k entries, run-major
    std::vector<double> fold_auc;
    double accuracy_mean = 0.0, accuracy_std = 0.0;
    double auc_mean = 0.0, auc_std = 0.0;
};

namespace detail {

inline void mean_std(const std::vector<double>& v, double& mean, double& std_out) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= double(v.size());
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= double(v.size());  // population form
    mean = m;
    std_out = std::sqrt(var);
}

inline Dataset subset(const Dataset& d, const std::vector<int>& idx, const char* tag) {
    Dataset out;
    out.provenance = d.provenance + " [" + tag + "]";
    for (int i : idx) out.patches.push_back(d.patches[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace detail

// Repeated stratified cross-validation. Each (run, fold) derives its own
// model-init and shuffle streams, so folds may be trained concurrently
// without changing any result.
inline Metrics cross_validate(const ModelSpec& spec, const Dataset& data, int runs, int k,
                              const TrainConfig& cfg, int threads = 1) {
    if (runs < 1) throw ContractError("cross_validate: runs must be >= 1");
    spec.validate();
    cfg.validate();
    auto labels = data.labels();
    Metrics m;
    m.fold_accuracy.assign(static_cast<std::size_t>(runs * k), 0.0);
    m.fold_auc.assign(static_cast<std::size_t>(runs * k), 0.0);

    // all splits first, so parallel workers never touch shared RNG state
    std::vector<FoldSplit> all_splits;
    all_splits.reserve(static_cast<std::size_t>(runs * k));
    for (int r = 0; r < runs; ++r) {
        auto splits = stratified_kfold(labels, k,
                                       derive_seed(cfg.seed, "cv.split", static_cast<std::uint64_t>(r)));
        for (auto& s : splits) all_splits.push_back(std::move(s));
    }

    parallel_for(runs * k, threads, [&](int job) {
        const FoldSplit& fs = all_splits[static_cast<std::size_t>(job)];
        Dataset train_set = detail::subset(data, fs.train, "cv-train");
        Dataset test_set = detail::subset(data, fs.test, "cv-test");
        Model init = build_model(spec, derive_seed(cfg.seed, "cv.init", static_cast<std::uint64_t>(job)));
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(cfg.seed, "cv.train", static_cast<std::uint64_t>(job));
        TrainResult tr = train(init, train_set, fold_cfg);
        std::vector<int> preds, truth;
        std::vector<double> pos_scores;
        for (const LabeledPatch& p : test_set.patches) {
            Prediction pr = predict(tr.model, p.image);
            preds.push_back(pr.label);
            truth.push_back(p.label);
            pos_scores.push_back(pr.probs[1]);
        }
        m.fold_accuracy[static_cast<std::size_t>(job)] = accuracy(preds, truth);
        m.fold_auc[static_cast<std::size_t>(job)] = auc_roc(pos_scores, truth);
    });

    detail::mean_std(m.fold_accuracy, m.accuracy_mean, m.accuracy_std);
    detail::mean_std(m.fold_auc, m.auc_mean, m.auc_std);
    return m;
}

}  // namespace advtk

#endif  // ADVTK_METRICS_HPP
