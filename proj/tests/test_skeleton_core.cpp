#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "test_util.hpp"
#include "tsrnn/dataset_io.hpp"
#include "tsrnn/preprocess.hpp"
#include "tsrnn/split.hpp"

using namespace tsrnn;
using namespace tsrnn::testutil;

TEST_CASE("normalize_center removes a constant translation") {
    auto g = tiny_path_graph();
    SkeletonSequence seq = make_sequence(4, 3, 4);
    for (int t = 0; t < 4; ++t)
        for (int j = 0; j < 3; ++j) seq.frames.block<1, 3>(t, j * 3) << 1.0, 2.0, 3.0;
    auto out = normalize_center(seq, g);
    CHECK(out.frames.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("normalize_center subtracts the mean of the center joints") {
    auto g = tiny_path_graph();
    g.center_joints = {0, 1, 2};
    SkeletonSequence seq;
    seq.joint_count = 3;
    seq.dims = 3;
    seq.valid_length = 1;
    seq.frames = Mat::Zero(1, 9);
    seq.frames << 0, 0, 0, 3, 0, 0, 0, 3, 0;
    auto out = normalize_center(seq, g);
    Mat expected(1, 9);
    expected << -1, -1, 0, 2, -1, 0, -1, 2, 0;
    CHECK((out.frames - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("normalize_center is idempotent and translation invariant") {
    auto g = tiny_path_graph();
    for (unsigned seed = 0; seed < 5; ++seed) {
        SkeletonSequence seq = make_sequence(6, 3, 4, 0, seed);
        auto once = normalize_center(seq, g);
        auto twice = normalize_center(once, g);
        CHECK((once.frames - twice.frames).cwiseAbs().maxCoeff() < 1e-12);

        SkeletonSequence shifted = seq;
        for (int t = 0; t < seq.valid_length; ++t)
            for (int j = 0; j < 3; ++j)
                shifted.frames.block<1, 3>(t, j * 3).array() += 7.5;
        auto norm_shifted = normalize_center(shifted, g);
        CHECK((once.frames - norm_shifted.frames).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("normalize_center rejects 6D input and empty centers") {
    auto g = tiny_path_graph();
    auto seq6 = make_sequence(2, 3, 2, 0, 0, 6);
    CHECK_THROWS_AS(normalize_center(seq6, g), InvalidInputError);
    auto g2 = g;
    g2.center_joints.clear();
    CHECK_THROWS_AS(normalize_center(make_sequence(2, 3, 2), g2), ConfigError);
}

TEST_CASE("resample identity at matching length") {
    auto seq = make_sequence(35, 3, 35);
    auto out = resample_to_length(seq, 35);
    CHECK(out.valid_length == 35);
    CHECK((out.frames - seq.frames).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("resample subsamples at floor(i*L/T)") {
    auto seq = make_sequence(200, 2, 200);
    auto out = resample_to_length(seq, 100);
    CHECK(out.valid_length == 100);
    CHECK(out.total_length() == 100);
    for (int i = 0; i < 100; ++i)
        CHECK((out.frames.row(i) - seq.frames.row(2 * i)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("resample pads short sequences with exact zeros") {
    auto seq = make_sequence(60, 2, 60);
    auto out = resample_to_length(seq, 100);
    CHECK(out.valid_length == 60);
    CHECK(out.total_length() == 100);
    CHECK((out.frames.topRows(60) - seq.frames).cwiseAbs().maxCoeff() == 0.0);
    CHECK(out.frames.bottomRows(40).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(resample_to_length(seq, 0), InvalidInputError);
}

TEST_CASE("resample preserves frame order") {
    std::mt19937 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const int L = 5 + static_cast<int>(rng() % 80);
        const int T = 1 + static_cast<int>(rng() % 80);
        SkeletonSequence seq = make_sequence(L, 1, L);
        for (int t = 0; t < L; ++t) seq.frames(t, 0) = t;  // frame index marker
        auto out = resample_to_length(seq, T);
        for (int i = 1; i < out.valid_length; ++i)
            CHECK(out.frames(i, 0) > out.frames(i - 1, 0));
    }
}

TEST_CASE("concat_two_person interleaves the coordinate halves") {
    auto a = make_sequence(1, 2, 1, 3, 1);
    auto b = make_sequence(1, 2, 1, 3, 2);
    auto out = concat_two_person(a, b);
    CHECK(out.dims == 6);
    for (int j = 0; j < 2; ++j) {
        CHECK((out.frames.block<1, 3>(0, j * 6) - a.frames.block<1, 3>(0, j * 3))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK((out.frames.block<1, 3>(0, j * 6 + 3) - b.frames.block<1, 3>(0, j * 3))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }

    SUBCASE("zero second person zeroes the trailing channels") {
        SkeletonSequence zero = a;
        zero.frames.setZero();
        // keep one valid coordinate so validation passes
        auto out2 = concat_two_person(a, zero);
        for (int j = 0; j < 2; ++j)
            CHECK(out2.frames.block<1, 3>(0, j * 6 + 3).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("identical persons duplicate the halves") {
        auto out2 = concat_two_person(a, a);
        for (int j = 0; j < 2; ++j)
            CHECK((out2.frames.block<1, 3>(0, j * 6) - out2.frames.block<1, 3>(0, j * 6 + 3))
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
    }
    SUBCASE("label and shape mismatches are rejected") {
        auto c = make_sequence(1, 2, 1, 4, 2);
        CHECK_THROWS_AS(concat_two_person(a, c), InvalidInputError);
        auto d = make_sequence(2, 2, 2, 3, 2);
        CHECK_THROWS_AS(concat_two_person(a, d), InvalidInputError);
    }
}

TEST_CASE("dataset round-trips through jsonl") {
    Dataset ds;
    ds.graph = tiny_path_graph();
    ds.class_count = 2;
    ds.class_names = {"x", "y"};
    ds.sequences.push_back(make_sequence(4, 3, 4, 1, 9));

    const std::string path = (std::filesystem::temp_directory_path() / "tsrnn_ds.jsonl").string();
    save_dataset(ds, path);
    auto loaded = load_dataset(path);
    CHECK(loaded.class_count == 2);
    REQUIRE(loaded.sequences.size() == 1);
    CHECK((loaded.sequences[0].frames - ds.sequences[0].frames).cwiseAbs().maxCoeff() == 0.0);
    CHECK(loaded.sequences[0].label == 1);
    CHECK(loaded.graph.joint_count == 3);

    SUBCASE("save/load/save is byte-stable") {
        const std::string path2 =
            (std::filesystem::temp_directory_path() / "tsrnn_ds2.jsonl").string();
        save_dataset(loaded, path2);
        std::ifstream f1(path), f2(path2);
        std::string s1((std::istreambuf_iterator<char>(f1)), {});
        std::string s2((std::istreambuf_iterator<char>(f2)), {});
        CHECK(s1 == s2);
        std::remove(path2.c_str());
    }
    std::remove(path.c_str());
}

TEST_CASE("loader rejects an out-of-range label") {
    Dataset ds;
    ds.graph = tiny_path_graph();
    ds.class_count = 2;
    ds.sequences.push_back(make_sequence(2, 3, 2, 1, 5));
    const std::string path =
        (std::filesystem::temp_directory_path() / "tsrnn_bad.jsonl").string();
    save_dataset(ds, path);
    {
        std::ifstream in(path);
        std::string header, record;
        std::getline(in, header);
        std::getline(in, record);
        in.close();
        auto pos = record.find("\"label\":1");
        REQUIRE(pos != std::string::npos);
        record.replace(pos, 9, "\"label\":2");
        std::ofstream out(path);
        out << header << "\n" << record << "\n";
    }
    CHECK_THROWS_AS(load_dataset(path), DataError);
    std::remove(path.c_str());
}

TEST_CASE("empty sequence list is a valid dataset") {
    Dataset ds;
    ds.graph = tiny_path_graph();
    ds.class_count = 2;
    const std::string path =
        (std::filesystem::temp_directory_path() / "tsrnn_empty.jsonl").string();
    save_dataset(ds, path);
    auto loaded = load_dataset(path);
    CHECK(loaded.sequences.empty());
    std::remove(path.c_str());
}

namespace {

Dataset split_fixture(int n) {
    Dataset ds;
    ds.graph = tiny_path_graph();
    ds.class_count = 2;
    for (int i = 0; i < n; ++i) {
        auto seq = make_sequence(3, 3, 3, i % 2, i);
        seq.subject_id = 1 + i % 4;
        seq.view_id = i % 2;
        ds.sequences.push_back(std::move(seq));
    }
    return ds;
}

}  // namespace

TEST_CASE("split_folds partitions by sequence") {
    auto ds = split_fixture(4);
    auto folds = split_folds(ds, 2, SplitMode::BySequence, 7);
    REQUIRE(folds.size() == 2);
    std::set<int> covered;
    for (const auto& f : folds) {
        CHECK(f.test.size() == 2);
        CHECK(f.train.size() == 2);
        for (int i : f.test) {
            CHECK(covered.insert(i).second);  // disjoint across folds
            CHECK(std::find(f.train.begin(), f.train.end(), i) == f.train.end());
        }
    }
    CHECK(covered.size() == 4);
}

TEST_CASE("split_folds is deterministic under a fixed seed") {
    auto ds = split_fixture(20);
    auto a = split_folds(ds, 5, SplitMode::BySequence, 42);
    auto b = split_folds(ds, 5, SplitMode::BySequence, 42);
    for (size_t f = 0; f < a.size(); ++f) {
        CHECK(a[f].train == b[f].train);
        CHECK(a[f].test == b[f].test);
    }
}

TEST_CASE("by-subject folds never leak a subject") {
    auto ds = split_fixture(16);  // subjects 1..4
    auto folds = split_folds(ds, 2, SplitMode::BySubject, 3);
    for (const auto& f : folds) {
        std::set<int> train_subj, test_subj;
        for (int i : f.train) train_subj.insert(ds.sequences[i].subject_id);
        for (int i : f.test) test_subj.insert(ds.sequences[i].subject_id);
        CHECK(train_subj.size() == 2);
        CHECK(test_subj.size() == 2);
        for (int s : test_subj) CHECK(train_subj.count(s) == 0);
    }
}

TEST_CASE("split_folds rejects too few groups") {
    auto ds = split_fixture(8);  // views 0,1 only
    CHECK_THROWS_AS(split_folds(ds, 3, SplitMode::ByView, 0), InvalidInputError);
    CHECK_THROWS_AS(split_folds(ds, 1, SplitMode::BySequence, 0), InvalidInputError);
}
