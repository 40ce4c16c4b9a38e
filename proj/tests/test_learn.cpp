#include <doctest.h>

#include <cmath>
#include <set>

#include "hyperlet/learn.hpp"
#include "hyperlet/rng.hpp"
#include "oracles.hpp"

using namespace hyperlet;

namespace {

/// Linear-kernel Gram matrix over 2-D points.
KernelMatrix linear_gram(const std::vector<std::pair<double, double>>& points) {
    KernelMatrix km;
    const int n = static_cast<int>(points.size());
    for (int i = 0; i < n; ++i) km.ids.push_back("p" + std::to_string(i));
    km.values = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            km.values.at(i, j) = points[static_cast<std::size_t>(i)].first * points[static_cast<std::size_t>(j)].first +
                                 points[static_cast<std::size_t>(i)].second * points[static_cast<std::size_t>(j)].second +
                                 1.0;  // affine term keeps separable sets separable through the origin
    return km;
}

KernelMatrix random_psd_gram(int n, std::uint64_t seed, std::vector<int>* labels) {
    SplitMix64 rng(seed);
    const int dim = 5;
    std::vector<std::vector<double>> x(static_cast<std::size_t>(n), std::vector<double>(dim));
    for (auto& row : x)
        for (auto& v : row) v = rng.next_double() * 2.0 - 1.0;
    KernelMatrix km;
    for (int i = 0; i < n; ++i) km.ids.push_back("r" + std::to_string(i));
    km.values = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dot = 0;
            for (int d = 0; d < dim; ++d) dot += x[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] *
                                                 x[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
            km.values.at(i, j) = dot;
        }
    labels->clear();
    for (int i = 0; i < n; ++i) labels->push_back(rng.bounded(2) == 0 ? -1 : 1);
    // both classes present
    (*labels)[0] = 1;
    (*labels)[1] = -1;
    return km;
}

}  // namespace

TEST_SUITE("learn") {

TEST_CASE("two-point toy problem is symmetric") {
    KernelMatrix km;
    km.ids = {"a", "b"};
    km.values = Matrix(2, 2);
    km.values.at(0, 0) = 1.0;
    km.values.at(1, 1) = 1.0;
    LabeledDataset d{{"a", "b"}, {1, -1}};
    auto model = svm_train(km, d);
    CHECK(std::abs(model.coef[0]) == doctest::Approx(std::abs(model.coef[1])).epsilon(1e-12));
    Matrix rows(2, 2);
    rows.at(0, 0) = 1.0;
    rows.at(1, 1) = 1.0;
    auto deci = decision_values(model, rows);
    CHECK(deci[0] == doctest::Approx(-deci[1]).epsilon(1e-9));
    CHECK(deci[0] > 0);
}

TEST_CASE("separable toy set trains to AUC 1") {
    std::vector<std::pair<double, double>> points;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        points.push_back({1.0 + 0.1 * i, 1.0});
        labels.push_back(1);
        points.push_back({-1.0 - 0.1 * i, -1.0});
        labels.push_back(-1);
    }
    auto km = linear_gram(points);
    LabeledDataset d{km.ids, labels};
    auto model = svm_train(km, d);
    auto deci = decision_values(model, km.values);
    CHECK(auc(deci, labels) == 1.0);
    auto probs = predict(model, km.values);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        CHECK(probs[i] > 0.0);
        CHECK(probs[i] < 1.0);
        CHECK((labels[i] > 0) == (probs[i] > 0.5));
    }
}

TEST_CASE("unlabeled examples are excluded from training") {
    std::vector<std::pair<double, double>> points{{1, 1}, {-1, -1}, {2, 2}, {-2, -2}};
    auto km = linear_gram(points);
    LabeledDataset d{km.ids, {1, -1, 0, 0}};
    auto model = svm_train(km, d);
    CHECK(model.train_ids == std::vector<std::string>{"p0", "p1"});
}

TEST_CASE("single-class training is rejected") {
    std::vector<std::pair<double, double>> points{{1, 1}, {2, 2}};
    auto km = linear_gram(points);
    LabeledDataset d{km.ids, {1, 1}};
    CHECK_THROWS_AS(svm_train(km, d), data_error);
}

TEST_CASE("non-PSD kernels are detected") {
    KernelMatrix km;
    km.ids = {"a", "b"};
    km.values = Matrix(2, 2);
    km.values.at(0, 0) = 1.0;
    km.values.at(1, 1) = 1.0;
    km.values.at(0, 1) = km.values.at(1, 0) = 3.0;  // eigenvalues 4 and -2
    LabeledDataset d{{"a", "b"}, {1, -1}};
    CHECK_THROWS_AS(svm_train(km, d), numeric_error);
}

TEST_CASE("default capacity replicates 1 / mean self-similarity") {
    std::vector<std::pair<double, double>> points{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    auto km = linear_gram(points);  // diagonal entries all 2
    LabeledDataset d{km.ids, {1, -1, 1, -1}};
    auto model = svm_train(km, d);
    CHECK(model.capacity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("SMO dual objective matches the projected-gradient oracle") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::vector<int> labels;
        auto km = random_psd_gram(30, seed, &labels);
        LabeledDataset d{km.ids, labels};
        auto model = svm_train(km, d, std::nullopt, 1e-10, 2000000);
        std::vector<int> y = labels;
        double reference = oracle::svm_dual_objective_pg(km.values, y, model.capacity, 60000);
        CHECK(model.dual_objective == doctest::Approx(reference).epsilon(1e-6));
    }
}

TEST_CASE("KKT conditions hold at the reported tolerance") {
    std::vector<int> labels;
    auto km = random_psd_gram(40, 9, &labels);
    LabeledDataset d{km.ids, labels};
    const double tol = 1e-6;
    auto model = svm_train(km, d, std::nullopt, tol, 2000000);
    REQUIRE(model.converged);
    // recompute margins: y_i f(x_i) >= 1 - tol for alpha = 0, <= 1 + tol at the box
    auto deci = decision_values(model, km.values);
    for (std::size_t i = 0; i < model.coef.size(); ++i) {
        double a = std::abs(model.coef[i]);
        double yf = (labels[i] > 0 ? 1.0 : -1.0) * deci[i];
        if (a < 1e-12) CHECK(yf >= 1.0 - tol - 1e-6);
        else if (a > model.capacity - 1e-12) CHECK(yf <= 1.0 + tol + 1e-6);
        else CHECK(yf == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("platt calibration midpoint and monotonicity") {
    SvmModel model;
    model.train_ids = {"a"};
    model.coef = {1.0};
    model.bias = 0.0;
    model.platt_a = -2.0;
    model.platt_b = 0.0;
    Matrix rows(3, 1);
    rows.at(0, 0) = -1.0;
    rows.at(1, 0) = 0.0;
    rows.at(2, 0) = 2.0;
    auto probs = predict(model, rows);
    CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(probs[0] < probs[1]);
    CHECK(probs[1] < probs[2]);
}

TEST_CASE("auc worked values and invariances") {
    CHECK(auc({0.9, 0.8, 0.3, 0.2}, {1, -1, 1, -1}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(auc({0.9, 0.8, 0.2, 0.1}, {1, 1, -1, -1}) == 1.0);
    CHECK(auc({0.5, 0.5, 0.5, 0.5}, {1, -1, 1, -1}) == doctest::Approx(0.5).epsilon(1e-15));
    // invariant under strictly increasing transforms
    std::vector<double> scores{0.1, 0.4, 0.35, 0.8, 0.65};
    std::vector<int> labels{-1, 1, -1, 1, 1};
    double base = auc(scores, labels);
    std::vector<double> transformed;
    for (double s : scores) transformed.push_back(std::exp(3.0 * s) - 7.0);
    CHECK(auc(transformed, labels) == doctest::Approx(base).epsilon(1e-15));
    CHECK_THROWS_AS(auc({0.5, 0.2}, {1, 1}), data_error);
}

TEST_CASE("cross-validation folds partition the data and are seeded") {
    std::vector<int> labels;
    auto km = random_psd_gram(57, 23, &labels);
    LabeledDataset d{km.ids, labels};
    auto r1 = cross_validate(km, d, 5, 99, true, 2);
    auto r2 = cross_validate(km, d, 5, 99, true, 1);
    CHECK(r1.fold_aucs == r2.fold_aucs);  // seed- and schedule-deterministic
    CHECK(r1.mean_auc == r2.mean_auc);
    auto r3 = cross_validate(km, d, 5, 100, true, 1);
    CHECK(r1.fold_aucs != r3.fold_aucs);  // different seed, different folds
    CHECK(static_cast<int>(r1.fold_aucs.size()) == 5);
}

TEST_CASE("separable data cross-validates to AUC 1") {
    std::vector<std::pair<double, double>> points;
    std::vector<int> labels;
    SplitMix64 rng(5);
    for (int i = 0; i < 40; ++i) {
        double jitter = rng.next_double() * 0.2;
        if (i % 2 == 0) {
            points.push_back({1.0 + jitter, 0.5});
            labels.push_back(1);
        } else {
            points.push_back({-1.0 - jitter, -0.5});
            labels.push_back(-1);
        }
    }
    auto km = linear_gram(points);
    LabeledDataset d{km.ids, labels};
    auto result = cross_validate(km, d, 10, 7, true, 2);
    CHECK(result.mean_auc == 1.0);
}

TEST_CASE("label permutation yields chance-level AUC") {
    std::vector<int> labels;
    auto km = random_psd_gram(200, 77, &labels);
    // random labels against random features: mean AUC should hover near 0.5
    LabeledDataset d{km.ids, labels};
    auto result = cross_validate(km, d, 10, 5, true, 2);
    CHECK(result.mean_auc >= 0.35);
    CHECK(result.mean_auc <= 0.65);
}

TEST_CASE("degenerate folds are rejected with a diagnostic") {
    std::vector<std::pair<double, double>> points{{1, 1}, {2, 2}, {3, 3}, {-1, -1}, {-2, -2}, {-3, -3}};
    auto km = linear_gram(points);
    LabeledDataset d{km.ids, {1, 1, 1, 1, 1, -1}};  // one negative cannot stratify into 3 folds
    CHECK_THROWS_WITH_AS(cross_validate(km, d, 3, 1, true, 1), doctest::Contains("degenerate fold"),
                         data_error);
}

TEST_CASE("roc points are monotone from (0,0) to (1,1)") {
    std::vector<int> labels;
    auto km = random_psd_gram(60, 31, &labels);
    LabeledDataset d{km.ids, labels};
    auto result = cross_validate(km, d, 5, 3, true, 1);
    REQUIRE(!result.roc_points.empty());
    CHECK(result.roc_points.front() == std::pair<double, double>{0.0, 0.0});
    CHECK(result.roc_points.back().first == doctest::Approx(1.0));
    CHECK(result.roc_points.back().second == doctest::Approx(1.0));
    for (std::size_t i = 1; i < result.roc_points.size(); ++i) {
        CHECK(result.roc_points[i].first >= result.roc_points[i - 1].first);
        CHECK(result.roc_points[i].second >= result.roc_points[i - 1].second);
    }
}

TEST_CASE("pu_relabel maps unlabeled to negative") {
    LabeledDataset d{{"a", "b", "c"}, {1, 0, -1}};
    auto pu = pu_relabel(d);
    CHECK(pu.labels == std::vector<int>{1, -1, -1});
}

TEST_CASE("cluster_alphabet basics") {
    std::vector<std::pair<std::string, std::map<std::string, double>>> vecs{
        {"a", {{"x", 1.0}}},
        {"b", {{"x", 2.0}}},
        {"c", {{"y", 1.0}}},
        {"d", {{"y", 3.0}, {"x", 0.01}}},
    };
    // k = n: every item its own label
    auto own = cluster_alphabet(vecs, 4);
    std::set<std::string> distinct;
    for (const auto& [id, label] : own) distinct.insert(label);
    CHECK(distinct.size() == 4);

    // duplicates merge first
    auto two = cluster_alphabet(vecs, 2);
    CHECK(two["a"] == two["b"]);
    CHECK(two["c"] == two["d"]);
    CHECK(two["a"] != two["c"]);

    CHECK_THROWS_AS(cluster_alphabet(vecs, 0), data_error);
    CHECK_THROWS_AS(cluster_alphabet(vecs, 5), data_error);
    CHECK_THROWS_AS(cluster_alphabet({{"a", {}}}, 1), data_error);
}

TEST_CASE("cluster_alphabet recovers well-separated clusters and ignores input order") {
    SplitMix64 rng(44);
    std::vector<std::pair<std::string, std::map<std::string, double>>> vecs;
    std::map<std::string, int> truth;
    for (int i = 0; i < 30; ++i) {
        int cluster = i % 3;
        std::map<std::string, double> v;
        std::string axis = cluster == 0 ? "x" : cluster == 1 ? "y" : "z";
        v[axis] = 1.0 + rng.next_double() * 0.05;
        v["noise"] = rng.next_double() * 0.01;
        std::string id = "i" + std::to_string(i);
        vecs.push_back({id, v});
        truth[id] = cluster;
    }
    auto labels = cluster_alphabet(vecs, 3);
    // same ground-truth cluster, same label
    for (const auto& [id_a, cluster_a] : truth)
        for (const auto& [id_b, cluster_b] : truth)
            CHECK((labels[id_a] == labels[id_b]) == (cluster_a == cluster_b));

    auto reversed = vecs;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(cluster_alphabet(reversed, 3) == labels);

    // label names ordered by decreasing cluster size
    std::map<std::string, int> sizes;
    for (const auto& [id, label] : labels) ++sizes[label];
    CHECK(sizes.count("L0") == 1);
    CHECK(sizes.count("L1") == 1);
    CHECK(sizes.count("L2") == 1);
}

}  // TEST_SUITE
