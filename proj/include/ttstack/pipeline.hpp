#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ttstack/dataset.hpp"
#include "ttstack/errors.hpp"
#include "ttstack/image.hpp"
#include "ttstack/rng.hpp"

namespace ttstack {

struct PipelineConfig {
    double split_ratio = 0.8;
    int target_size = 32;
    int batch_size = 64;
    double rotation_limit = 5.0;   // degrees
    double flip_probability = 0.5;
    std::uint64_t seed = 42;

    void validate() const {
        if (!(split_ratio > 0.0 && split_ratio < 1.0))
            throw ConfigError("pipeline.split_ratio must be in (0,1)");
        if (target_size <= 0)
            throw ConfigError("pipeline.target_size must be positive");
        if (batch_size <= 0)
            throw ConfigError("pipeline.batch_size must be positive");
        if (rotation_limit < 0.0)
            throw ConfigError("pipeline.rotation_limit must be >= 0");
        if (flip_probability < 0.0 || flip_probability > 1.0)
            throw ConfigError("pipeline.flip_probability must be in [0,1]");
    }
};

// Per-class split: floor(ratio * count) samples to train, remainder to val,
// membership chosen by a seeded per-class shuffle.
inline std::pair<Dataset, Dataset> stratified_split(const Dataset& ds,
                                                    double ratio,
                                                    std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("split ratio must be in (0,1)");
    const auto counts = ds.class_counts();
    for (int cls : {0, 1})
        if (counts[static_cast<std::size_t>(cls)] < 2)
            throw DataError("class " + ds.class_names[static_cast<std::size_t>(cls)] +
                            " has fewer than 2 samples; cannot split");

    std::vector<std::size_t> train_idx, val_idx;
    for (int cls : {0, 1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ds.samples.size(); ++i)
            if (ds.samples[i].label == cls) members.push_back(i);
        const std::size_t n_train = static_cast<std::size_t>(
            std::floor(ratio * static_cast<double>(members.size())));
        if (n_train == 0 || n_train == members.size())
            throw DataError("split ratio leaves class " +
                            ds.class_names[static_cast<std::size_t>(cls)] +
                            " empty on one side");
        Rng rng(derive_seed(seed, "class/" + std::to_string(cls)));
        rng.shuffle(members);
        train_idx.insert(train_idx.end(), members.begin(),
                         members.begin() + static_cast<std::ptrdiff_t>(n_train));
        val_idx.insert(val_idx.end(),
                       members.begin() + static_cast<std::ptrdiff_t>(n_train),
                       members.end());
    }
    // keep the original corpus order within each split
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(val_idx.begin(), val_idx.end());

    Dataset train, val;
    train.class_names = ds.class_names;
    val.class_names = ds.class_names;
    for (std::size_t i : train_idx) train.samples.push_back(ds.samples[i]);
    for (std::size_t i : val_idx) val.samples.push_back(ds.samples[i]);
    return {std::move(train), std::move(val)};
}

// Upsamples the minority class with replacement until the classes match.
// Originals keep their ids; drawn duplicates get an "#<k>" suffix so ids stay
// unique while the duplicate rows remain visible downstream.
inline Dataset balance_by_upsampling(const Dataset& train, std::uint64_t seed) {
    const auto counts = train.class_counts();
    if (counts[0] == 0 || counts[1] == 0)
        throw DataError("cannot balance a single-class training set");

    Dataset out = train;
    if (counts[0] == counts[1]) return out;

    const int minority = counts[0] < counts[1] ? 0 : 1;
    const std::size_t deficit =
        counts[static_cast<std::size_t>(1 - minority)] -
        counts[static_cast<std::size_t>(minority)];
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < train.samples.size(); ++i)
        if (train.samples[i].label == minority) pool.push_back(i);

    Rng rng(seed);
    std::vector<std::size_t> dup_count(train.samples.size(), 0);
    for (std::size_t k = 0; k < deficit; ++k) {
        const std::size_t pick =
            pool[static_cast<std::size_t>(rng.uniform_int(pool.size()))];
        LabeledSample copy = train.samples[pick];
        copy.id += "#" + std::to_string(++dup_count[pick]);
        out.samples.push_back(std::move(copy));
    }
    return out;
}

// Training-time augmentation: horizontal flip with flip_probability, then a
// rotation drawn uniformly from [-rotation_limit, +rotation_limit] degrees.
// Both draws are always consumed so the stream layout is input-independent.
inline GrayImage augment(const GrayImage& img, Rng& rng,
                         const PipelineConfig& cfg) {
    const bool do_flip = rng.uniform() < cfg.flip_probability;
    const double angle = (2.0 * rng.uniform() - 1.0) * cfg.rotation_limit;
    GrayImage out = do_flip ? flip_horizontal(img) : img;
    return rotate(out, angle);
}

struct Batch {
    std::vector<NormalizedImage> images;
    std::vector<int> labels;
    std::vector<std::string> ids;
};

// Training mode shuffles (deterministically per seed and epoch) and applies
// augment -> resize -> normalize; eval mode keeps dataset order and applies
// resize -> normalize only.
inline std::vector<Batch> make_batches(const Dataset& ds,
                                       const PipelineConfig& cfg, bool training,
                                       std::uint64_t seed, int epoch = 0) {
    if (ds.samples.empty()) throw DataError("cannot batch an empty dataset");
    cfg.validate();

    std::vector<std::size_t> order(ds.samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng augment_rng(derive_seed(seed, "augment/epoch/" + std::to_string(epoch)));
    if (training) {
        Rng shuffle_rng(
            derive_seed(seed, "shuffle/epoch/" + std::to_string(epoch)));
        shuffle_rng.shuffle(order);
    }

    std::vector<Batch> batches;
    const std::size_t n = order.size();
    for (std::size_t start = 0; start < n;
         start += static_cast<std::size_t>(cfg.batch_size)) {
        const std::size_t stop =
            std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
        Batch b;
        for (std::size_t k = start; k < stop; ++k) {
            const LabeledSample& s = ds.samples[order[k]];
            GrayImage img = training ? augment(s.image, augment_rng, cfg)
                                     : s.image;
            img = resize_bilinear(img, cfg.target_size);
            b.images.push_back(normalize(img));
            b.labels.push_back(s.label);
            b.ids.push_back(s.id);
        }
        batches.push_back(std::move(b));
    }
    return batches;
}

}  // namespace ttstack
