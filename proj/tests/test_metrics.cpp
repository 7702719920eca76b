#include <catch2/catch.hpp>

#include <algorithm>
#include <numeric>

#include "conceptkit/basis.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/metrics.hpp"
#include "conceptkit/predictor.hpp"
#include "test_util.hpp"

using namespace conceptkit;

namespace {

ConceptBasis basis_1d(std::initializer_list<double> points) {
    ConceptBasis b;
    std::size_t j = 0;
    for (double p : points) {
        b.vectors.push_back({p});
        b.names.push_back("c" + std::to_string(++j));
    }
    return b;
}

// exhaustive nearest-neighbour oracle
std::vector<std::size_t> brute_neighbors(const ConceptBasis& b, VectorMetric m, std::size_t j,
                                         std::size_t t) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t o = 0; o < b.size(); ++o)
        if (o != j) all.emplace_back(vector_distance(m, b.vectors[j], b.vectors[o]), o);
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < std::min(t, all.size()); ++i) out.push_back(all[i].second);
    return out;
}

}  // namespace

TEST_CASE("vector distances: closed-form values") {
    REQUIRE(vector_distance(VectorMetric::euclidean, {0, 0}, {3, 4}) == Approx(5.0));
    REQUIRE(vector_distance(VectorMetric::manhattan, {1, 2}, {4, 0}) == Approx(5.0));
    REQUIRE(vector_distance(VectorMetric::cosine_distance, {1, 2, 3}, {2, 4, 6}) ==
            Approx(0.0).margin(1e-12));
    REQUIRE_THROWS_AS(vector_distance(VectorMetric::euclidean, {1}, {1, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(vector_distance(VectorMetric::cosine_distance, {0, 0}, {1, 2}),
                      std::invalid_argument);
}

TEST_CASE("neighbor table on the 1-d example matches the exhaustive oracle") {
    const auto b = basis_1d({0, 1, 3, 10});
    const auto table = neighbor_table(b, VectorMetric::euclidean, 1);
    REQUIRE(table.neighbors[0] == std::vector<std::size_t>{1});
    REQUIRE(table.neighbors[1] == std::vector<std::size_t>{0});
    REQUIRE(table.neighbors[2] == std::vector<std::size_t>{1});
    REQUIRE(table.neighbors[3] == std::vector<std::size_t>{2});
    for (std::size_t j = 0; j < 4; ++j)
        REQUIRE(table.neighbors[j] == brute_neighbors(b, VectorMetric::euclidean, j, 1));
}

TEST_CASE("neighbor table saturates at k-1 and never contains self") {
    const auto b = testutil::random_basis(6, 3, 17);
    const auto table = neighbor_table(b, VectorMetric::euclidean, 10);
    for (std::size_t j = 0; j < 6; ++j) {
        REQUIRE(table.neighbors[j].size() == 5);
        REQUIRE(std::find(table.neighbors[j].begin(), table.neighbors[j].end(), j) ==
                table.neighbors[j].end());
    }
}

TEST_CASE("neighbor ties break toward the lower concept index") {
    const auto b = basis_1d({0, -1, 1});  // concepts 2 and 3 equidistant from 1
    const auto table = neighbor_table(b, VectorMetric::euclidean, 1);
    REQUIRE(table.neighbors[0] == std::vector<std::size_t>{1});
}

TEST_CASE("basis distance: worked 1-d example") {
    const auto b1 = basis_1d({0, 1, 3, 10});
    const auto b2 = basis_1d({0, 1, 3, 4});
    // only concept 3's neighbour changes (2 -> 4)
    REQUIRE(basis_distance(b1, b2, VectorMetric::euclidean, 1) == Approx(0.25));
    REQUIRE(basis_distance(b1, b1, VectorMetric::euclidean, 1) == 0.0);
}

TEST_CASE("basis distance is 1 for disjoint neighbour structures") {
    // b1 clusters (1,2) and (3,4); b2 clusters (1,3) and (2,4)
    ConceptBasis b1, b2;
    b1.names = b2.names = {"a", "b", "c", "d"};
    b1.vectors = {{0}, {0.1}, {10}, {10.1}};
    b2.vectors = {{0}, {10.1}, {0.1}, {10}};
    REQUIRE(basis_distance(b1, b2, VectorMetric::euclidean, 1) == Approx(1.0));
}

TEST_CASE("basis distance axioms on random pairs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto eng = make_engine(seed);
        std::uniform_int_distribution<std::size_t> pick_k(2, 30), pick_d(1, 8);
        const std::size_t k = pick_k(eng), dim = pick_d(eng);
        std::uniform_int_distribution<std::size_t> pick_t(1, k - 1);
        const std::size_t t = pick_t(eng);
        const auto b1 = testutil::random_basis(k, dim, seed * 1000 + 1);
        const auto b2 = testutil::random_basis(k, dim, seed * 1000 + 2);
        for (auto metric :
             {VectorMetric::euclidean, VectorMetric::manhattan, VectorMetric::cosine_distance}) {
            const double ab = basis_distance(b1, b2, metric, t);
            REQUIRE(ab >= 0.0);
            REQUIRE(ab <= 1.0);
            REQUIRE(ab == Approx(basis_distance(b2, b1, metric, t)).margin(1e-15));
            REQUIRE(basis_distance(b1, b1, metric, t) == 0.0);
        }
    }
}

TEST_CASE("basis distance is invariant to a common concept permutation") {
    const auto b1 = testutil::random_basis(8, 3, 101);
    const auto b2 = testutil::random_basis(8, 3, 102);
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    auto eng = make_engine(7);
    std::shuffle(perm.begin(), perm.end(), eng);
    ConceptBasis p1, p2;
    for (std::size_t j : perm) {
        p1.vectors.push_back(b1.vectors[j]);
        p1.names.push_back(b1.names[j]);
        p2.vectors.push_back(b2.vectors[j]);
        p2.names.push_back(b2.names[j]);
    }
    for (std::size_t t : {1UL, 3UL, 7UL})
        REQUIRE(basis_distance(p1, p2, VectorMetric::euclidean, t) ==
                Approx(basis_distance(b1, b2, VectorMetric::euclidean, t)).margin(1e-12));
}

TEST_CASE("neighbor tables are invariant under positive vector scaling") {
    const auto b = testutil::random_basis(10, 4, 55);
    ConceptBasis scaled = b;
    for (auto& v : scaled.vectors)
        for (auto& x : v) x *= 3.7;
    for (auto metric : {VectorMetric::euclidean, VectorMetric::cosine_distance}) {
        const auto t1 = neighbor_table(b, metric, 3);
        const auto t2 = neighbor_table(scaled, metric, 3);
        REQUIRE(t1.neighbors == t2.neighbors);
    }
}

TEST_CASE("stability of a seed-independent builder is exactly 1") {
    const auto d = gen_correlated_pairs(5, 200, 1.0, 0.1, 3);
    auto builder = [](const ConceptDataset& dd, std::uint64_t) { return label_basis(dd); };
    REQUIRE(stability(builder, d, {1, 2, 3, 4, 5}, VectorMetric::euclidean, 3) == 1.0);
}

TEST_CASE("stability of random bases matches the hypergeometric overlap") {
    const auto d = gen_correlated_pairs(10, 50, 1.0, 0.1, 3);  // k = 20
    auto builder = [](const ConceptDataset& dd, std::uint64_t s) {
        return testutil::random_basis(dd.num_concepts(), 6, s);
    };
    std::vector<std::uint64_t> seeds(46);
    std::iota(seeds.begin(), seeds.end(), 1);  // 46 seeds -> 1035 pairs
    const double st = stability(builder, d, seeds, VectorMetric::euclidean, 3);
    // random neighbour sets of size t=3 among k-1=19: E|overlap| = t^2/(k-1)
    const double expected = 3.0 * 3.0 / 19.0 / 3.0;
    REQUIRE(st == Approx(expected).margin(0.03));
}

TEST_CASE("robustness is 1 under the identity perturbation") {
    const auto d = gen_correlated_pairs(5, 200, 1.0, 0.1, 3);
    auto builder = [](const ConceptDataset& dd, std::uint64_t) { return label_basis(dd); };
    REQUIRE(robustness(builder, d, {0.0, 0.0}, VectorMetric::euclidean, 3, 1) == 1.0);
}

TEST_CASE("label basis robustness at the default flip rate is high") {
    const auto d = gen_correlated_pairs(10, 2000, 1.0, 0.1, 42);
    auto builder = [](const ConceptDataset& dd, std::uint64_t) { return label_basis(dd); };
    REQUIRE(robustness(builder, d, {0.01, -1.0}, VectorMetric::euclidean, 1, 7) >= 0.9);
}

TEST_CASE("label basis robustness decays with the flip rate on average") {
    std::vector<double> means;
    for (double flip : {0.01, 0.05, 0.1, 0.25, 0.5}) {
        double mean = 0;
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            const auto d = gen_correlated_pairs(10, 1000, 1.0, 0.1, 900 + seed);
            auto builder = [](const ConceptDataset& dd, std::uint64_t) { return label_basis(dd); };
            mean += robustness(builder, d, {flip, 0.0}, VectorMetric::euclidean, 1, seed) / 5.0;
        }
        means.push_back(mean);
    }
    for (std::size_t i = 1; i < means.size(); ++i) REQUIRE(means[i] <= means[i - 1] + 1e-9);
    REQUIRE(means.front() > 0.9);
    REQUIRE(means.back() < means.front());
}

TEST_CASE("responsiveness of a corruption-blind builder is 0") {
    const auto d = gen_correlated_pairs(5, 200, 1.0, 0.1, 3);
    auto builder = [](const ConceptDataset& dd, std::uint64_t) {
        return testutil::random_basis(dd.num_concepts(), 4, 99);
    };
    REQUIRE(responsiveness(builder, d, VectorMetric::euclidean, 3, 1) == 0.0);
}

TEST_CASE("label basis responds strongly to full corruption") {
    const auto d = gen_correlated_pairs(10, 2000, 1.0, 0.1, 42);
    auto builder = [](const ConceptDataset& dd, std::uint64_t) { return label_basis(dd); };
    REQUIRE(responsiveness(builder, d, VectorMetric::euclidean, 3, 7) > 0.5);
}

TEST_CASE("importance vectors: constant predictor algebra") {
    // f(g(x)) == p for every sample -> s_l = (2|A_j| - n) * p_l
    const auto d = testutil::random_dataset(40, 3, 7);
    ConceptPredictor g;
    g.weights = Matrix(3, 3);  // zero weights -> all probabilities 0.5
    LabelPredictor f;
    f.weights = Matrix(4, 2);  // zero weights -> uniform distribution
    const auto imp = importance_vectors(g, f, d);
    for (std::size_t j = 0; j < 3; ++j) {
        std::size_t active = 0;
        for (std::size_t i = 0; i < d.n(); ++i) active += d.concepts(i, j);
        const double expected = (2.0 * active - d.n()) * 0.5;
        REQUIRE(imp.s[j][0] == Approx(expected).margin(1e-9));
        REQUIRE(imp.s[j][1] == Approx(expected).margin(1e-9));
    }
}

TEST_CASE("importance vectors match a brute-force re-summation") {
    const auto d = testutil::random_dataset(60, 4, 19);
    const auto g = train_concept_predictor(d, 20, 0.5, 3).predictor;
    const auto f = train_label_predictor(d, 20, 0.5, 3).predictor;
    const auto imp = importance_vectors(g, f, d);

    const std::size_t L = f.num_labels();
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<double> with(L, 0.0), without(L, 0.0);
        for (std::size_t i = 0; i < d.n(); ++i) {
            const auto out = f.predict_distribution(g.predict_probs(d.features.row(i)));
            for (std::size_t l = 0; l < L; ++l)
                (d.concepts(i, j) ? with[l] : without[l]) += out[l];
        }
        for (std::size_t l = 0; l < L; ++l) REQUIRE(imp.s[j][l] == with[l] - without[l]);
    }
}

TEST_CASE("degenerate concepts are flagged and produce one-sided sums") {
    auto d = testutil::random_dataset(30, 2, 23);
    for (std::size_t i = 0; i < d.n(); ++i) d.concepts(i, 0) = 1;  // always active
    const auto g = train_concept_predictor(d, 5, 0.1, 3).predictor;
    const auto f = train_label_predictor(d, 5, 0.1, 3).predictor;
    const auto imp = importance_vectors(g, f, d);
    REQUIRE(imp.degenerate == std::vector<std::size_t>{0});
    double total = 0;
    for (std::size_t i = 0; i < d.n(); ++i)
        total += f.predict_distribution(g.predict_probs(d.features.row(i)))[0];
    REQUIRE(imp.s[0][0] == Approx(total));  // empty negative side
}

TEST_CASE("faithfulness of a basis against itself is 1") {
    const auto b = testutil::random_basis(6, 2, 31);
    ImportanceBasis imp;
    imp.names = b.names;
    imp.s = b.vectors;
    REQUIRE(faithfulness(b, imp, VectorMetric::euclidean, 2) == 1.0);
}

TEST_CASE("label basis is more faithful than a random basis on correlated pairs") {
    const auto d = gen_correlated_pairs(10, 1000, 1.0, 0.3, 21);
    const auto g = train_concept_predictor(d, 100, 1.0, 5).predictor;
    const auto f = train_label_predictor(d, 150, 1.0, 5).predictor;
    const auto imp = importance_vectors(g, f, d);
    const double f_label = faithfulness(label_basis(d), imp, VectorMetric::euclidean, 1);
    const double f_random = faithfulness(testutil::random_basis(20, 8, 123), imp,
                                         VectorMetric::euclidean, 1);
    REQUIRE(f_label > f_random);
}

TEST_CASE("concept agreement: duplicated partner vectors give 1") {
    ConceptBasis b;
    b.names = {"a", "b", "c", "d"};
    b.vectors = {{1, 0}, {1, 0}, {5, 5}, {5, 5}};
    REQUIRE(concept_agreement(b, {{0, 1}, {2, 3}}, VectorMetric::euclidean) == 1.0);
}

TEST_CASE("concept agreement counts exactly the misdirected concepts") {
    // 10 well-separated pairs, then concepts 1 and 2 are moved next to the
    // wrong partners: exactly 2 of 20 nearest neighbours are wrong -> 0.9
    ConceptBasis b;
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
    for (std::size_t p = 0; p < 10; ++p) {
        b.vectors.push_back({100.0 * p, 0.0});
        b.vectors.push_back({100.0 * p, 0.5});
        b.names.push_back("left_" + std::to_string(p));
        b.names.push_back("right_" + std::to_string(p));
        pairing.emplace_back(2 * p, 2 * p + 1);
    }
    // "left_0" moves near pair 3, but stays farther from its members than
    // they are from each other, so only left_0 and right_0 point wrong
    b.vectors[0] = {100.0 * 3, 2.0};
    const double agreement = concept_agreement(b, pairing, VectorMetric::euclidean);
    REQUIRE(agreement == Approx(0.9));
}

TEST_CASE("label basis on perfectly correlated pairs has full agreement") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto d = gen_correlated_pairs(10, 500, 1.0, 0.1, seed);
        std::vector<std::pair<std::size_t, std::size_t>> pairing;
        for (std::size_t j = 0; j < 10; ++j) pairing.emplace_back(j, 10 + j);
        REQUIRE(concept_agreement(label_basis(d), pairing, VectorMetric::euclidean) == 1.0);
    }
}

TEST_CASE("metric report CSV format") {
    MetricReportRow row;
    row.metric = "stability";
    row.basis_name = "label";
    row.dataset = "pairs";
    row.t = 3;
    row.delta_v = VectorMetric::euclidean;
    row.value = 0.5;
    row.stderr_ = 0.25;
    row.seed_count = 5;
    REQUIRE(metric_report_csv({row}) ==
            "metric,basis_name,dataset,t,delta_v,value,stderr,seed_count\n"
            "stability,label,pairs,3,euclidean,0.5,0.25,5\n");
}
