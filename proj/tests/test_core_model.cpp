#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "helpers.hpp"
#include "panfis/learner.hpp"
#include "panfis/model.hpp"
#include "panfis/serialization.hpp"

using namespace panfis;
using namespace panfis::testing;

TEST_CASE("config validation accepts defaults and rejects bad fields") {
  Config config;
  config.input_dim = 2;
  CHECK_NOTHROW(config.validate());

  auto broken = [&](auto&& mutate) {
    Config c = config;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  };
  broken([](Config& c) { c.g1 = -0.1; });
  broken([](Config& c) { c.g2 = -1e-9; });
  broken([](Config& c) { c.epsilon = 0.0; });
  broken([](Config& c) { c.epsilon = 1.0; });
  broken([](Config& c) { c.merge_threshold = 0.0; });
  broken([](Config& c) { c.merge_threshold = 1.0; });
  broken([](Config& c) { c.omega = 0.0; });
  broken([](Config& c) { c.mahalanobis_r = 0.0; });
  broken([](Config& c) { c.input_dim = 0; });
}

TEST_CASE("rule invariants are enforced") {
  const Rule good = example_rule();
  CHECK_NOTHROW(validate_rule(good, 2));

  Rule r = good;
  r.support = 0;
  CHECK_THROWS_AS(validate_rule(r, 2), std::invalid_argument);

  r = good;
  r.inv_cov(0, 1) += 1e-6;  // asymmetric beyond 1e-10
  CHECK_THROWS_AS(validate_rule(r, 2), std::invalid_argument);

  r = good;
  r.inv_cov = Eigen::Matrix2d{{1.0, 2.0}, {2.0, 1.0}};  // eigenvalues 3, -1
  CHECK_THROWS_WITH_AS(validate_rule(r, 2), doctest::Contains("not positive definite"),
                       std::invalid_argument);

  r = good;
  r.weights = Eigen::Vector2d(0.0, 0.0);
  CHECK_THROWS_AS(validate_rule(r, 2), std::invalid_argument);

  r = good;
  CHECK_THROWS_WITH_AS(validate_rule(r, 3), doctest::Contains("dimension mismatch"),
                       std::invalid_argument);
}

TEST_CASE("symmetry and definiteness checks match eigenvalue facts") {
  CHECK(is_symmetric(Eigen::Matrix2d{{1.0, 0.5}, {0.5, 1.0}}));
  CHECK_FALSE(is_symmetric(Eigen::Matrix2d{{1.0, 0.5}, {0.5 + 1e-8, 1.0}}));
  // [[1,2],[2,1]] has eigenvalues 3 and -1: symmetric but indefinite.
  CHECK(is_symmetric(Eigen::Matrix2d{{1.0, 2.0}, {2.0, 1.0}}));
  CHECK_FALSE(is_positive_definite(Eigen::Matrix2d{{1.0, 2.0}, {2.0, 1.0}}));
  CHECK(is_positive_definite(Eigen::Matrix2d{{2.0, 1.0}, {1.0, 2.0}}));
}

TEST_CASE("observe_range tracks per-dimension min and max") {
  Model model;
  model.config.input_dim = 2;
  CHECK_FALSE(model.has_range());

  const std::vector<Eigen::Vector2d> xs = {
      {0.5, -1.0}, {0.2, 3.0}, {0.9, 0.0}, {0.2, -2.5}};
  double lo0 = xs[0][0], hi0 = xs[0][0], lo1 = xs[0][1], hi1 = xs[0][1];
  for (const auto& x : xs) {
    model.observe_range(x);
    lo0 = std::min(lo0, x[0]);
    hi0 = std::max(hi0, x[0]);
    lo1 = std::min(lo1, x[1]);
    hi1 = std::max(hi1, x[1]);
  }
  CHECK(model.has_range());
  CHECK(model.range_min[0] == lo0);
  CHECK(model.range_max[0] == hi0);
  CHECK(model.range_min[1] == lo1);
  CHECK(model.range_max[1] == hi1);
}

TEST_CASE("empty model round-trips") {
  Model model;
  model.config.input_dim = 3;
  const std::string doc = save_model(model);
  const Model loaded = load_model(doc);
  CHECK(loaded.rules.empty());
  CHECK(loaded == model);
}

TEST_CASE("printed example rule round-trips bit-equal") {
  Model model = example_model();
  model.samples_seen = 42;
  const Model loaded = load_model(save_model(model));
  REQUIRE(loaded.rules.size() == 1);
  CHECK(loaded.rules[0].center == model.rules[0].center);
  CHECK(loaded.rules[0].inv_cov == model.rules[0].inv_cov);
  CHECK(loaded.rules[0].weights == model.rules[0].weights);
  CHECK(loaded.rules[0].rls_cov == model.rules[0].rls_cov);
  CHECK(loaded.rules[0].support == 1);
  CHECK(loaded.samples_seen == 42);
  CHECK(loaded == model);
}

TEST_CASE("save-load-save is a fixed point after real training") {
  Model model;
  model.config.input_dim = 3;
  model.config.g1 = 1e-3;
  model.config.g2 = 1e-6;

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int n = 0; n < 500; ++n) {
    const Eigen::Vector3d x(uniform(rng), uniform(rng), uniform(rng));
    const double target = x.sum() + 0.1 * uniform(rng);
    train_sample(model, x, target);
  }
  REQUIRE(model.samples_seen == 500);

  const std::string first = save_model(model);
  const std::string second = save_model(load_model(first));
  CHECK(first == second);
}

TEST_CASE("load rejects invariant violations with diagnostics") {
  Model model = example_model();
  const std::string doc = save_model(model);

  SUBCASE("indefinite inv_cov") {
    std::string bad = doc;
    const auto pos = bad.find("7.4");
    REQUIRE(pos != std::string::npos);
    // center stays, inv_cov becomes [[1,2],[2,1]] (eigenvalues 3 and -1)
    Model m = example_model();
    m.rules[0].inv_cov = Eigen::Matrix2d{{1.0, 2.0}, {2.0, 1.0}};
    CHECK_THROWS_WITH_AS(save_model(m), doctest::Contains("not positive definite"),
                         std::invalid_argument);
    // and a hand-edited document is rejected on load
    std::string handmade = doc;
    auto replace = [&](const std::string& from, const std::string& to) {
      const auto at = handmade.find(from);
      REQUIRE(at != std::string::npos);
      handmade.replace(at, from.size(), to);
    };
    replace("7.4", "1.0");
    replace("0.19", "2.0");
    replace("0.19", "2.0");
    replace("7.4", "1.0");
    CHECK_THROWS_WITH_AS(load_model(handmade),
                         doctest::Contains("not positive definite"),
                         std::invalid_argument);
  }

  SUBCASE("mixed rule dimensions") {
    Model m = example_model();
    Rule three;
    three.center = Eigen::Vector3d::Zero();
    three.inv_cov = Eigen::Matrix3d::Identity();
    three.support = 1;
    three.weights = Eigen::Vector4d::Zero();
    three.rls_cov = Eigen::Matrix4d::Identity();
    m.rules.push_back(three);
    CHECK_THROWS_WITH_AS(save_model(m), doctest::Contains("dimension mismatch"),
                         std::invalid_argument);
  }

  SUBCASE("unsupported format version") {
    std::string bad = doc;
    const auto pos = bad.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 19, "\"format_version\": 2");
    CHECK_THROWS_AS(load_model(bad), std::runtime_error);
  }

  SUBCASE("missing keys and malformed json") {
    CHECK_THROWS_AS(load_model("{"), std::runtime_error);
    CHECK_THROWS_AS(load_model("[]"), std::runtime_error);
    CHECK_THROWS_AS(load_model("{\"format_version\": 1}"), std::runtime_error);
  }
}

TEST_CASE("hand-authored documents without input_range load") {
  const std::string doc = R"({
    "format_version": 1,
    "config": {"g1": 0.01, "g2": 0.01, "epsilon": 0.6, "merge_threshold": 0.8,
               "omega": 1e5, "mahalanobis_r": 1.0, "input_dim": 2},
    "samples_seen": 0,
    "rules": [{
      "center": [0.29, 0.292],
      "inv_cov": [[7.4, 0.19], [0.19, 7.4]],
      "support": 1,
      "weights": [0.03, 0.17, 0.04],
      "rls_cov": [[1e5, 0, 0], [0, 1e5, 0], [0, 0, 1e5]]
    }]
  })";
  const Model loaded = load_model(doc);
  CHECK(loaded.rules.size() == 1);
  CHECK_FALSE(loaded.has_range());
  CHECK(loaded.rules[0].center[0] == 0.29);
}

TEST_CASE("model equality is field-by-field") {
  const Model a = example_model();
  Model b = example_model();
  CHECK(a == b);
  b.rules[0].weights[1] += 1e-16;
  CHECK_FALSE(a == b);
}
