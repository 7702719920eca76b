#include <catch2/catch.hpp>

#include <filesystem>
#include <set>

#include "conceptkit/clustering.hpp"
#include "test_util.hpp"

using namespace conceptkit;

TEST_CASE("ward: well-separated pairs merge first") {
    ConceptBasis b;
    b.names = {"a", "b", "c", "d"};
    b.vectors = {{0.0}, {0.1}, {10.0}, {10.1}};
    const auto dg = ward_cluster(b);
    REQUIRE(dg.merges.size() == 3);
    // the two tight pairs merge first, in either order
    std::set<std::pair<std::size_t, std::size_t>> first_two = {
        {dg.merges[0].left, dg.merges[0].right}, {dg.merges[1].left, dg.merges[1].right}};
    REQUIRE(first_two == std::set<std::pair<std::size_t, std::size_t>>{{1, 2}, {3, 4}});
    REQUIRE(dg.merges[2].left == 5);
    REQUIRE(dg.merges[2].right == 6);
    REQUIRE(dg.merges[2].size == 4);
}

TEST_CASE("ward: two points merge at half the squared distance") {
    ConceptBasis b;
    b.names = {"a", "b"};
    b.vectors = {{1.0, 2.0}, {4.0, 6.0}};
    const auto dg = ward_cluster(b);
    REQUIRE(dg.merges.size() == 1);
    REQUIRE(dg.merges[0].height == Approx(25.0 / 2.0));
}

TEST_CASE("ward matches the naive recompute-from-scratch oracle") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto eng = make_engine(seed);
        std::uniform_int_distribution<std::size_t> pick_k(2, 20);
        const auto b = testutil::random_basis(pick_k(eng), 3, seed * 31);
        const auto fast = ward_cluster(b);
        const auto naive = testutil::naive_ward(b);
        REQUIRE(fast.merges.size() == naive.size());
        for (std::size_t i = 0; i < naive.size(); ++i) {
            REQUIRE(fast.merges[i].left == naive[i].left);
            REQUIRE(fast.merges[i].right == naive[i].right);
            REQUIRE(fast.merges[i].height ==
                    Approx(naive[i].height).epsilon(1e-9).margin(1e-12));
            REQUIRE(fast.merges[i].size == naive[i].size);
        }
    }
}

TEST_CASE("ward invariants: merge count, telescoping sizes, monotone heights") {
    const auto b = testutil::random_basis(12, 4, 77);
    const auto dg = ward_cluster(b);
    REQUIRE(dg.merges.size() == 11);
    REQUIRE(dg.merges.back().size == 12);
    for (std::size_t i = 1; i < dg.merges.size(); ++i)
        REQUIRE(dg.merges[i].height >= dg.merges[i - 1].height - 1e-12);
    // every cluster id consumed exactly once
    std::vector<int> used(2 * 12, 0);
    for (const auto& m : dg.merges) {
        ++used[m.left];
        ++used[m.right];
    }
    for (std::size_t id = 1; id < 2 * 12 - 1; ++id) REQUIRE(used[id] == 1);
}

TEST_CASE("ward is invariant to concept permutation up to leaf relabeling") {
    const auto b = testutil::random_basis(9, 3, 55);
    ConceptBasis shuffled;
    std::vector<std::size_t> perm = {4, 7, 0, 8, 2, 6, 1, 3, 5};
    for (std::size_t j : perm) {
        shuffled.vectors.push_back(b.vectors[j]);
        shuffled.names.push_back(b.names[j]);
    }
    const auto d1 = ward_cluster(b);
    const auto d2 = ward_cluster(shuffled);
    // heights must coincide as multisets of the merge sequence
    for (std::size_t i = 0; i < d1.merges.size(); ++i)
        REQUIRE(d1.merges[i].height == Approx(d2.merges[i].height).margin(1e-9));
    // leaf names resolve to the same partner pairs on the first merge
    auto leaf_name = [](const Dendrogram& dg, std::size_t id) {
        return id <= dg.leaves.size() ? dg.leaves[id - 1] : std::string("internal");
    };
    std::vector<std::string> first1{leaf_name(d1, d1.merges[0].left), leaf_name(d1, d1.merges[0].right)};
    std::vector<std::string> first2{leaf_name(d2, d2.merges[0].left), leaf_name(d2, d2.merges[0].right)};
    std::sort(first1.begin(), first1.end());
    std::sort(first2.begin(), first2.end());
    REQUIRE(first1 == first2);
}

TEST_CASE("ward input validation") {
    ConceptBasis b;
    b.names = {"only"};
    b.vectors = {{1.0}};
    REQUIRE_THROWS_WITH(ward_cluster(b), Catch::Contains("k >= 2"));
    b.names = {"a", "b"};
    b.vectors = {{1.0}, {std::numeric_limits<double>::quiet_NaN()}};
    REQUIRE_THROWS_WITH(ward_cluster(b), Catch::Contains("non-finite"));
}

TEST_CASE("dendrogram export round trip preserves unicode names") {
    ConceptBasis b;
    b.names = {"weiß", "schwarz", "grün"};
    b.vectors = {{0.0}, {0.2}, {5.0}};
    const auto dg = ward_cluster(b);
    const std::string path = "roundtrip_dendro.json";
    export_dendrogram(dg, path);
    const auto loaded = load_dendrogram(path);
    REQUIRE(loaded.leaves == dg.leaves);
    REQUIRE(loaded.merges.size() == dg.merges.size());
    for (std::size_t i = 0; i < dg.merges.size(); ++i) {
        REQUIRE(loaded.merges[i].left == dg.merges[i].left);
        REQUIRE(loaded.merges[i].right == dg.merges[i].right);
        REQUIRE(loaded.merges[i].height == dg.merges[i].height);
        REQUIRE(loaded.merges[i].size == dg.merges[i].size);
    }
    std::filesystem::remove(path);
}

TEST_CASE("dendrogram export matches the golden fixture byte for byte") {
    ConceptBasis b;
    b.names = {"a", "b", "c", "d"};
    b.vectors = {{0.0}, {1.0}, {10.0}, {11.0}};
    const std::string got = dendrogram_to_json(ward_cluster(b));
    const std::string golden =
        "{\n"
        "  \"leaves\": [\n"
        "    \"a\",\n"
        "    \"b\",\n"
        "    \"c\",\n"
        "    \"d\"\n"
        "  ],\n"
        "  \"merges\": [\n"
        "    [\n"
        "      1,\n"
        "      2,\n"
        "      0.5,\n"
        "      2\n"
        "    ],\n"
        "    [\n"
        "      3,\n"
        "      4,\n"
        "      0.5,\n"
        "      2\n"
        "    ],\n"
        "    [\n"
        "      5,\n"
        "      6,\n"
        "      100.0,\n"
        "      4\n"
        "    ]\n"
        "  ]\n"
        "}\n";
    REQUIRE(got == golden);
}
