#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "ttstack/errors.hpp"
#include "ttstack/image.hpp"

namespace ttstack {

// Binary labels: 1 is the positive class (the sorted-first directory name,
// e.g. "Cancer"), 0 the negative one.
struct LabeledSample {
    std::string id;
    GrayImage image;
    int label = 0;
};

struct Dataset {
    std::vector<LabeledSample> samples;
    std::array<std::string, 2> class_names{"class_0", "class_1"};

    std::array<std::size_t, 2> class_counts() const {
        std::array<std::size_t, 2> counts{0, 0};
        for (const auto& s : samples) counts[static_cast<std::size_t>(s.label)]++;
        return counts;
    }

    void validate() const {
        std::unordered_set<std::string> ids;
        for (const auto& s : samples) {
            if (s.label != 0 && s.label != 1)
                throw DataError("label out of {0,1} for sample " + s.id);
            if (!ids.insert(s.id).second)
                throw DataError("duplicate sample id: " + s.id);
            s.image.validate();
        }
    }
};

// Loads a two-class corpus laid out as <root>/<class_name>/*.pgm.
// Samples come out in lexicographic relative-path order; ids are the
// relative paths.
inline Dataset load_dataset(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        throw DataError("corpus root is not a directory: " + root.string());

    std::vector<std::string> class_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory())
            class_dirs.push_back(entry.path().filename().string());
    std::sort(class_dirs.begin(), class_dirs.end());
    if (class_dirs.size() != 2)
        throw DataError("corpus must contain exactly two class directories, found " +
                        std::to_string(class_dirs.size()) + " in " + root.string());

    Dataset ds;
    // positive class (label 1) = lexicographically first name; the mapping is
    // echoed in every report
    ds.class_names[1] = class_dirs[0];
    ds.class_names[0] = class_dirs[1];

    struct Entry {
        std::string rel;
        fs::path abs;
        int label;
    };
    std::vector<Entry> entries;
    for (int label : {1, 0}) {
        const std::string& cls = ds.class_names[static_cast<std::size_t>(label)];
        for (const auto& f : fs::directory_iterator(root / cls)) {
            if (!f.is_regular_file()) continue;
            entries.push_back({cls + "/" + f.path().filename().string(),
                               f.path(), label});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.rel < b.rel; });

    for (const auto& e : entries) {
        LabeledSample s;
        s.id = e.rel;
        s.label = e.label;
        try {
            s.image = read_pgm(e.abs);
        } catch (const DataError& err) {
            throw DataError(std::string("failed to decode ") + e.rel + ": " +
                            err.what());
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

}  // namespace ttstack
