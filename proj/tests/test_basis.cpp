#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>

#include "conceptkit/basis.hpp"
#include "conceptkit/basis_io.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/metrics.hpp"
#include "test_util.hpp"

using namespace conceptkit;

namespace {
ConceptDataset tiny_dataset() {
    ConceptDataset d;
    d.features = Matrix(3, 1);
    d.concepts = BinaryMatrix(3, 2);
    d.concepts(0, 0) = 1;
    d.concepts(0, 1) = 1;
    d.concepts(1, 1) = 1;
    d.concepts(2, 0) = 1;
    d.labels = {1, 1, 1};
    d.concept_names = {"a", "b"};
    return d;
}
}  // namespace

TEST_CASE("label basis extracts concept columns") {
    const auto b = label_basis(tiny_dataset());
    REQUIRE(b.dim() == 3);
    REQUIRE(b.vectors[0] == std::vector<double>{1, 0, 1});
    REQUIRE(b.vectors[1] == std::vector<double>{1, 1, 0});
}

TEST_CASE("identical concept columns give identical label vectors") {
    ConceptDataset d = tiny_dataset();
    d.concepts(1, 1) = 0;
    d.concepts(1, 0) = 0;
    d.concepts(2, 1) = 1;  // now both columns are [1,0,1]
    const auto b = label_basis(d);
    REQUIRE(b.vectors[0] == b.vectors[1]);
    REQUIRE(vector_distance(VectorMetric::euclidean, b.vectors[0], b.vectors[1]) == 0.0);
    REQUIRE(vector_distance(VectorMetric::manhattan, b.vectors[0], b.vectors[1]) == 0.0);
}

TEST_CASE("label basis on perfectly correlated pairs has equal partner vectors") {
    const auto d = gen_correlated_pairs(5, 300, 1.0, 0.1, 3);
    const auto b = label_basis(d);
    for (std::size_t j = 0; j < 5; ++j) REQUIRE(b.vectors[j] == b.vectors[5 + j]);
}

TEST_CASE("concept2vec rejects never-active concepts") {
    ConceptDataset d = tiny_dataset();
    d.concepts(0, 1) = 0;
    d.concepts(1, 1) = 0;
    SkipgramConfig cfg;
    REQUIRE_THROWS_WITH(concept2vec(d, cfg), Catch::Contains("never active"));
}

TEST_CASE("concept2vec with zero learning rate returns the initialization") {
    const auto d = gen_correlated_pairs(4, 100, 1.0, 0.1, 5);
    SkipgramConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.seed = 9;
    const auto b = concept2vec(d, cfg);
    REQUIRE(b.vectors == skipgram_init(d.num_concepts(), cfg));
}

TEST_CASE("concept2vec is deterministic given the seed") {
    const auto d = gen_correlated_pairs(4, 200, 0.9, 0.1, 5);
    SkipgramConfig cfg;
    cfg.seed = 4;
    REQUIRE(concept2vec(d, cfg).vectors == concept2vec(d, cfg).vectors);
}

TEST_CASE("co-occurring concepts embed closer than never co-occurring ones") {
    ProfileDistribution p;
    p.profiles = {{{1, 1, 0, 0}, 0.5}, {{0, 0, 1, 1}, 0.5}};
    const auto d = sample_profiles(p, 400, 5);
    SkipgramConfig cfg;
    cfg.seed = 9;
    const auto b = concept2vec(d, cfg);
    const double together = vector_distance(VectorMetric::cosine_distance, b.vectors[0], b.vectors[1]);
    const double apart = vector_distance(VectorMetric::cosine_distance, b.vectors[0], b.vectors[2]);
    REQUIRE(together < apart);
}

TEST_CASE("concept2vec loss on a frozen pair sample is non-increasing at small lr") {
    const auto d = gen_correlated_pairs(5, 400, 1.0, 0.1, 11);
    SkipgramConfig cfg;
    cfg.learning_rate = 0.005;
    cfg.seed = 3;
    const auto res = concept2vec_with_history(d, cfg);
    REQUIRE(res.epoch_losses.size() == cfg.epochs);
    for (std::size_t e = 1; e < res.epoch_losses.size(); ++e)
        REQUIRE(res.epoch_losses[e] <= res.epoch_losses[e - 1] + 1e-12);
}

TEST_CASE("skipgram pair-loss gradient matches central finite differences") {
    auto table = skipgram_init(3, SkipgramConfig{4, 1, 0.1, 1, 7});
    const std::vector<ConceptPair> pairs = {{0, 1, 1.0}, {0, 2, 0.0}, {1, 2, 1.0}, {2, 0, 0.0}};

    std::vector<std::vector<double>> analytic;
    skipgram_batch_loss(table, pairs, &analytic);

    // flatten, run FD on the flat parameter vector
    std::vector<double> flat;
    for (const auto& row : table) flat.insert(flat.end(), row.begin(), row.end());
    auto loss_of = [&](const std::vector<double>& params) {
        std::vector<std::vector<double>> t(3, std::vector<double>(4));
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t c = 0; c < 4; ++c) t[j][c] = params[j * 4 + c];
        return skipgram_batch_loss(t, pairs);
    };
    const auto numeric = testutil::finite_difference_gradient(loss_of, flat, 1e-6);
    std::vector<double> flat_analytic;
    for (const auto& row : analytic) flat_analytic.insert(flat_analytic.end(), row.begin(), row.end());
    REQUIRE(testutil::relative_gradient_error(flat_analytic, numeric) < 1e-5);
}

TEST_CASE("basis construction does not mutate the dataset") {
    const auto d = gen_correlated_pairs(4, 100, 1.0, 0.1, 5);
    const auto copy_concepts = d.concepts;
    const auto copy_features = d.features.data;
    SkipgramConfig cfg;
    cfg.seed = 2;
    (void)concept2vec(d, cfg);
    (void)label_basis(d);
    REQUIRE(d.concepts == copy_concepts);
    REQUIRE(d.features.data == copy_features);
}

TEST_CASE("basis export/import round trip") {
    ConceptBasis b;
    b.names = {"alpha", "beta", "gamma"};
    b.vectors = {{0.25, -1.5}, {1.0 / 3.0, 2e-17}, {4.0, 5.0}};
    const std::string path = "roundtrip_basis.json";
    export_basis(b, path);
    const auto loaded = import_basis(path);
    REQUIRE(loaded.names == b.names);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t c = 0; c < 2; ++c)
            REQUIRE(loaded.vectors[j][c] == Approx(b.vectors[j][c]).margin(1e-12));
    std::filesystem::remove(path);
}

TEST_CASE("basis import rejects ragged, duplicate, and non-finite input") {
    const std::string path = "bad_basis.json";
    auto write = [&](const std::string& body) {
        std::ofstream out(path);
        out << body;
    };
    write(R"({"dim":2,"concepts":[{"name":"a","vector":[1,2]},{"name":"b","vector":[1,2,3]}]})");
    REQUIRE_THROWS_WITH(import_basis(path), Catch::Contains("ragged"));
    write(R"({"dim":2,"concepts":[{"name":"a","vector":[1,2]},{"name":"a","vector":[3,4]}]})");
    REQUIRE_THROWS_WITH(import_basis(path), Catch::Contains("duplicate"));
    write(R"({"dim":1,"concepts":[{"name":"a","vector":[1]},{"name":"b","vector":[null]}]})");
    REQUIRE_THROWS_WITH(import_basis(path), Catch::Contains("non-finite"));
    std::filesystem::remove(path);
}

TEST_CASE("basis dimension contracts") {
    const auto d = gen_correlated_pairs(3, 120, 1.0, 0.1, 13);
    REQUIRE(label_basis(d).dim() == d.n());
    SkipgramConfig cfg;
    cfg.embed_dim = 7;
    cfg.epochs = 2;
    cfg.seed = 1;
    REQUIRE(concept2vec(d, cfg).dim() == 7);
}
