#include "tsrnn/split.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace tsrnn {

SplitMode parse_split_mode(const std::string& name) {
    if (name == "by-sequence") return SplitMode::BySequence;
    if (name == "by-subject") return SplitMode::BySubject;
    if (name == "by-view") return SplitMode::ByView;
    throw ConfigError("unknown split mode: " + name);
}

std::vector<FoldSplit> split_folds(const Dataset& ds, int k, SplitMode mode, unsigned seed) {
    if (k < 2) throw InvalidInputError("fold count must be >= 2");
    const int n = static_cast<int>(ds.sequences.size());
    std::mt19937 rng(seed);

    // Map each sequence to a group; by-sequence makes every sequence its own group.
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        int key = i;
        if (mode == SplitMode::BySubject) key = ds.sequences[i].subject_id;
        else if (mode == SplitMode::ByView) key = ds.sequences[i].view_id;
        groups[key].push_back(i);
    }
    if (static_cast<int>(groups.size()) < k)
        throw InvalidInputError("not enough groups (" + std::to_string(groups.size()) +
                                ") for " + std::to_string(k) + " folds");

    std::vector<int> group_ids;
    group_ids.reserve(groups.size());
    for (const auto& [key, _] : groups) group_ids.push_back(key);
    std::shuffle(group_ids.begin(), group_ids.end(), rng);

    std::vector<FoldSplit> folds(k);
    for (size_t g = 0; g < group_ids.size(); ++g) {
        const auto& members = groups[group_ids[g]];
        int fold = static_cast<int>(g % k);
        for (int f = 0; f < k; ++f) {
            auto& dst = (f == fold) ? folds[f].test : folds[f].train;
            dst.insert(dst.end(), members.begin(), members.end());
        }
    }
    for (auto& f : folds) {
        std::sort(f.train.begin(), f.train.end());
        std::sort(f.test.begin(), f.test.end());
    }
    return folds;
}

}  // namespace tsrnn
