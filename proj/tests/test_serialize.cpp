#include <doctest.h>

#include <map>
#include <set>

#include "test_util.hpp"
#include "tsrnn/serialize.hpp"

using namespace tsrnn;
using namespace tsrnn::testutil;

TEST_CASE("chain order of a single-part path is the path or its reverse") {
    SkeletonGraph g;
    g.joint_count = 3;
    g.joint_names = {"a", "b", "c"};
    g.edges = {{0, 1}, {1, 2}};
    g.parts[static_cast<int>(BodyPart::Trunk)] = {0, 1, 2};
    g.root_joint = 0;
    g.center_joints = {0};

    auto order = chain_order(g);
    const std::vector<int> fwd{0, 1, 2}, rev{2, 1, 0};
    CHECK((order.order == fwd || order.order == rev));
}

TEST_CASE("chain order on the synthetic 20-joint graph: arms, trunk, legs") {
    auto g = make_synthetic_graph(20);
    auto order = chain_order(g);
    REQUIRE(order.length() == 20);

    // permutation
    std::set<int> seen(order.order.begin(), order.order.end());
    CHECK(seen.size() == 20);

    // part blocks appear in serialization order with within-part adjacency
    auto owner = g.joint_part();
    int pos = 0;
    for (int p = 0; p < kPartCount; ++p) {
        const int size = static_cast<int>(g.parts[p].size());
        for (int k = 0; k < size; ++k, ++pos) {
            CHECK(owner[order.order[pos]] == p);
            if (k > 0) CHECK(g.adjacent(order.order[pos - 1], order.order[pos]));
        }
    }
    // arms first, trunk in the middle, legs last
    CHECK(owner[order.order.front()] == static_cast<int>(BodyPart::LeftArm));
    CHECK(owner[order.order.back()] == static_cast<int>(BodyPart::RightLeg));
}

TEST_CASE("chain order rejects a star-shaped part") {
    SkeletonGraph g;
    g.joint_count = 4;
    g.joint_names = {"hub", "s1", "s2", "s3"};
    g.edges = {{0, 1}, {0, 2}, {0, 3}};
    g.parts[static_cast<int>(BodyPart::Trunk)] = {0, 1, 2, 3};
    g.root_joint = 0;
    g.center_joints = {0};
    CHECK_THROWS_AS(chain_order(g), DataError);
}

TEST_CASE("traversal of a single joint") {
    SkeletonGraph g;
    g.joint_count = 1;
    g.joint_names = {"root"};
    g.parts[static_cast<int>(BodyPart::Trunk)] = {0};
    g.root_joint = 0;
    g.center_joints = {0};
    auto order = traversal_order(g);
    CHECK(order.order == std::vector<int>{0});
}

TEST_CASE("traversal of a 3-joint path is the hand Euler tour") {
    auto g = tiny_path_graph();
    auto order = traversal_order(g);
    CHECK(order.order == std::vector<int>{1, 0, 1, 2, 1});
}

TEST_CASE("traversal properties on random trees") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 29);
        auto g = random_tree(n, rng);
        auto order = traversal_order(g);

        CHECK(order.length() == 2 * n - 1);
        CHECK(order.order.front() == g.root_joint);
        CHECK(order.order.back() == g.root_joint);

        std::map<std::pair<int, int>, int> edge_uses;
        std::set<int> visited;
        visited.insert(order.order.front());
        for (int i = 1; i < order.length(); ++i) {
            int a = order.order[i - 1], b = order.order[i];
            CHECK(g.adjacent(a, b));
            edge_uses[{std::min(a, b), std::max(a, b)}]++;
            visited.insert(b);
        }
        CHECK(static_cast<int>(visited.size()) == n);
        CHECK(edge_uses.size() == g.edges.size());
        for (const auto& [e, uses] : edge_uses) CHECK(uses == 2);
    }
}

TEST_CASE("spatial input: degenerate window equals the center frame") {
    auto g = tiny_path_graph();
    auto seq = make_sequence(4, 3, 4, 0, 5);
    auto order = traversal_order(g);
    auto in = build_spatial_input(seq, order, 1, 2);
    REQUIRE(in.steps.rows() == order.length());
    for (int s = 0; s < order.length(); ++s)
        CHECK((in.steps.block<1, 3>(s, 0) -
               seq.frames.block<1, 3>(2, order.order[s] * 3))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
}

TEST_CASE("spatial input clips the left edge with zeros") {
    auto g = tiny_path_graph();
    auto seq = make_sequence(6, 3, 6, 0, 6);
    auto order = chain_order(g);
    auto in = build_spatial_input(seq, order, 5, 0);  // window [-2, 3)
    for (int s = 0; s < order.length(); ++s)
        CHECK(in.steps.block<1, 6>(s, 0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spatial input matches a hand-built concatenation") {
    SkeletonGraph g;
    g.joint_count = 2;
    g.joint_names = {"r", "t"};
    g.edges = {{0, 1}};
    g.parts[static_cast<int>(BodyPart::Trunk)] = {0};
    g.parts[static_cast<int>(BodyPart::LeftArm)] = {1};
    g.root_joint = 0;
    g.center_joints = {0};

    SkeletonSequence seq;
    seq.joint_count = 2;
    seq.dims = 3;
    seq.valid_length = 4;
    seq.frames = Mat::Zero(4, 6);
    for (int t = 0; t < 4; ++t) seq.frames.row(t) << t, 10 + t, 20 + t, 30 + t, 40 + t, 50 + t;

    JointOrder order{{0, 1}, OrderKind::Chain};
    auto in = build_spatial_input(seq, order, 3, 1);  // frames 0,1,2
    Mat expected(2, 9);
    expected << 0, 10, 20, 1, 11, 21, 2, 12, 22,
                30, 40, 50, 31, 41, 51, 32, 42, 52;
    CHECK((in.steps - expected).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(build_spatial_input(seq, order, 3, 4), InvalidInputError);
    CHECK_THROWS_AS(build_spatial_input(seq, order, 0, 1), InvalidInputError);
}

TEST_CASE("spatial input of an all-zero sequence is all zeros") {
    auto g = tiny_path_graph();
    SkeletonSequence seq = make_sequence(5, 3, 5);
    seq.frames.setZero();
    auto in = build_spatial_input(seq, traversal_order(g), 3, 2);
    CHECK(in.steps.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("time-shift equivariance for fully in-range windows") {
    auto g = tiny_path_graph();
    auto order = traversal_order(g);
    auto seq = make_sequence(10, 3, 10, 0, 21);
    const int k = 3;
    SkeletonSequence shifted = seq;
    shifted.frames.setZero();
    for (int t = 0; t + k < 10; ++t) shifted.frames.row(t + k) = seq.frames.row(t);
    auto a = build_spatial_input(seq, order, 3, 4);
    auto b = build_spatial_input(shifted, order, 3, 4 + k);
    CHECK((a.steps - b.steps).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spatial centers: eval grid and deterministic random") {
    CHECK(spatial_centers(35, 35, CenterMode::EvalGrid, 0) == std::vector<int>{17});
    CHECK(spatial_centers(100, 25, CenterMode::EvalGrid, 0) ==
          std::vector<int>({12, 37, 62, 87}));
    auto a = spatial_centers(50, 10, CenterMode::TrainRandom, 99);
    auto b = spatial_centers(50, 10, CenterMode::TrainRandom, 99);
    REQUIRE(a.size() == 1);
    CHECK(a == b);
    CHECK(a[0] >= 0);
    CHECK(a[0] < 50);
    CHECK_THROWS_AS(spatial_centers(5, 6, CenterMode::EvalGrid, 0), InvalidInputError);
}
