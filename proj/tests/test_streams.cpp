#include <gtest/gtest.h>

#include <sstream>

#include "suds/error.hpp"
#include "suds/learners/logistic.hpp"
#include "suds/streams/generators.hpp"
#include "suds/streams/loaders.hpp"

using namespace suds;

namespace {

const std::string kFixtures = SUDS_TEST_FIXTURES;

StreamSpec spec(std::size_t length, std::vector<DriftPoint> schedule = {}, std::uint64_t seed = 1) {
  StreamSpec s;
  s.length = length;
  s.seed = seed;
  s.drift_schedule = std::move(schedule);
  return s;
}

}  // namespace

// ---- SEA ---------------------------------------------------------------------

TEST(Sea, NoiselessLabelsFollowThresholdRule) {
  SeaSpec s;
  s.stream = spec(5000);
  s.noise = 0.0;
  for (const auto& t : gen_sea(s)) {
    const auto& x = t.sample.feature_vector();
    ASSERT_EQ(x.size(), 3u);
    for (double v : x) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 10.0);
    }
    EXPECT_EQ(*t.sample.label(), x[0] + x[1] <= 8.0 ? 0 : 1);
    EXPECT_FALSE(t.is_noise);
  }
}

TEST(Sea, NoiseRateMatchesBinomialExpectation) {
  SeaSpec s;
  s.stream = spec(100000, {}, 7);
  const auto stream = gen_sea(s);
  std::size_t flipped = 0;
  for (const auto& t : stream) {
    const auto& x = t.sample.feature_vector();
    const ClassId clean = x[0] + x[1] <= 8.0 ? 0 : 1;
    const bool differs = *t.sample.label() != clean;
    EXPECT_EQ(differs, t.is_noise);
    flipped += differs;
  }
  // Binomial(1e5, 0.1): sd = 95, so the window is about 5 sd wide.
  EXPECT_NEAR(flipped / 100000.0, 0.10, 0.005);
}

TEST(Sea, ThresholdsFollowConceptBlocks) {
  SeaSpec s;
  EXPECT_EQ(s.thresholds, (std::vector<double>{8.0, 9.0, 7.0, 9.5}));
  s.stream = spec(4000, {{1000, 0}, {2000, 0}, {3000, 0}});
  s.noise = 0.0;
  for (const auto& t : gen_sea(s)) {
    const std::size_t block = t.sample.index() / 1000;
    EXPECT_EQ(t.concept_id, static_cast<int>(block));
    const auto& x = t.sample.feature_vector();
    EXPECT_EQ(*t.sample.label(), x[0] + x[1] <= s.thresholds[block] ? 0 : 1);
  }
}

TEST(Sea, RejectsInvalidSpec) {
  SeaSpec s;
  s.stream = spec(100, {{50, 0}, {40, 0}});
  EXPECT_THROW(gen_sea(s), Error);
  s.stream = spec(100, {{100, 0}});
  EXPECT_THROW(gen_sea(s), Error);
  s.stream = spec(100);
  s.noise = 1.0;
  EXPECT_THROW(gen_sea(s), Error);
}

TEST(Generators, Reproducible) {
  SeaSpec s;
  s.stream = spec(2000, {{500, 200}}, 3);
  const auto a = gen_sea(s), b = gen_sea(s);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].sample.feature_vector(), b[i].sample.feature_vector());
    EXPECT_EQ(a[i].concept_id, b[i].concept_id);
  }
}

// ---- hyperplane -------------------------------------------------------------------

TEST(Hyperplane, StationaryConceptIsLinearlyLearnable) {
  HyperplaneSpec h;
  h.stream = spec(4000, {}, 2);
  h.dim = 5;
  const auto stream = gen_hyperplane(h);
  std::vector<Vector> X;
  std::vector<int> y;
  for (std::size_t i = 0; i < 2000; ++i) {
    X.push_back(stream[i].sample.feature_vector());
    y.push_back(*stream[i].sample.label());
  }
  LogisticConfig c;
  c.max_epochs = 5000;
  c.learning_rate = 1.0;
  const auto m = logistic_fit(X, y, c);
  std::size_t correct = 0;
  for (std::size_t i = 2000; i < 4000; ++i) {
    correct += (m.score(stream[i].sample.features()) >= 0.5) == (*stream[i].sample.label() == 1);
  }
  EXPECT_GE(correct / 2000.0, 0.95);
}

TEST(Hyperplane, ConceptIdAdvancesAtCheckpoints) {
  HyperplaneSpec h;
  h.stream = spec(900, {{300, 0}, {600, 0}});
  h.rate = 0.01;
  for (const auto& t : gen_hyperplane(h)) EXPECT_EQ(t.concept_id, static_cast<int>(t.sample.index() / 300));
}

TEST(Hyperplane, PointOnThePlaneIsPositive) {
  HyperplaneSpec h;
  h.dim = 2;
  h.stream = spec(10);
  const HyperplaneGenerator g(h);
  const Vector on{0.25, 0.75};
  EXPECT_EQ(g.classify(on), 1);
  const Vector below{0.25, 0.7};
  EXPECT_EQ(g.classify(below), 0);
}

TEST(Hyperplane, RejectsInvalidDimension) {
  HyperplaneSpec h;
  h.dim = 1;
  EXPECT_THROW(gen_hyperplane(h), Error);
  h.dim = 3;
  h.rate = -1.0;
  EXPECT_THROW(gen_hyperplane(h), Error);
}

// ---- switching RBF ---------------------------------------------------------------------

namespace {

RbfSwitchSpec two_cluster_switch(std::vector<DriftPoint> schedule, std::size_t length, std::uint64_t seed) {
  RbfSwitchSpec r;
  r.stream = spec(length, std::move(schedule), seed);
  r.sigma = 0.1;
  // Two centers 20 sigma apart; their classes swap at each drift.
  r.centers = {{{{0.0, 0.0}, 0}, {{2.0, 0.0}, 1}}, {{{0.0, 0.0}, 1}, {{2.0, 0.0}, 0}}};
  return r;
}

}  // namespace

TEST(RbfSwitch, AbruptSwapTagsEveryLaterSample) {
  for (const auto& t : gen_rbf_switch(two_cluster_switch({{5000, 0}}, 8000, 1))) {
    EXPECT_EQ(t.concept_id, t.sample.index() >= 5000 ? 1 : 0);
  }
}

TEST(RbfSwitch, GradualTransitionMixesMonotonically) {
  const auto stream = gen_rbf_switch(two_cluster_switch({{1000, 500}}, 2000, 4));
  std::vector<double> share;
  for (std::size_t block = 0; block < 5; ++block) {
    double fresh = 0.0;
    for (std::size_t i = 1000 + block * 100; i < 1100 + block * 100; ++i) fresh += stream[i].concept_id;
    share.push_back(fresh / 100.0);
  }
  bool saw_old = false, saw_new = false;
  for (std::size_t i = 1000; i < 1500; ++i) (stream[i].concept_id ? saw_new : saw_old) = true;
  EXPECT_TRUE(saw_old && saw_new);
  for (std::size_t k = 1; k < share.size(); ++k) EXPECT_GE(share[k] + 0.1, share[k - 1]);
  EXPECT_LT(share.front(), 0.3);
  EXPECT_GT(share.back(), 0.7);
  for (std::size_t i = 0; i < 1000; ++i) EXPECT_EQ(stream[i].concept_id, 0);
  for (std::size_t i = 1500; i < 2000; ++i) EXPECT_EQ(stream[i].concept_id, 1);
}

TEST(RbfSwitch, FarCentersAreNearlyBayesPerfect) {
  RbfSwitchSpec r;
  r.stream = spec(5000, {}, 9);
  r.sigma = 0.1;
  r.centers = {{{{0.0, 0.0}, 0}, {{2.0, 0.0}, 1}, {{0.0, 2.0}, 1}, {{2.0, 2.0}, 0}}};
  std::size_t correct = 0;
  for (const auto& t : gen_rbf_switch(r)) {
    const auto x = t.sample.features();
    double best = 1e300;
    ClassId label = 0;
    for (const auto& c : r.centers.front()) {
      const double d = squared_distance(x, c.position);
      if (d < best) {
        best = d;
        label = c.label;
      }
    }
    correct += label == *t.sample.label();
  }
  EXPECT_GE(correct / 5000.0, 0.999);
}

TEST(RbfSwitch, RandomLayoutsAndValidation) {
  RbfSwitchSpec r;
  r.stream = spec(100, {{50, 0}});
  r.k = 1;
  EXPECT_THROW(gen_rbf_switch(r), Error);
  r.k = 4;
  r.dim = 3;
  const auto s = gen_rbf_switch(r);
  EXPECT_EQ(s.size(), 100u);
  EXPECT_EQ(s.front().sample.dim(), 3u);
}

TEST(Schedule, NoConceptChangeOutsideTransitions) {
  SeaSpec s;
  s.stream = spec(6000, {{1000, 300}, {3000, 0}, {4500, 100}}, 5);
  const auto stream = gen_sea(s);
  for (std::size_t i = 1; i < stream.size(); ++i) {
    if (stream[i].concept_id == stream[i - 1].concept_id) continue;
    const bool inside = (i >= 1000 && i < 1300) || i == 3000 || (i >= 4500 && i < 4600);
    EXPECT_TRUE(inside) << "change at " << i;
  }
}

TEST(Schedule, EvenSpacing) {
  const auto s = even_schedule(50000, 5, 500);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].at_index, 10000u);
  EXPECT_EQ(s[3].at_index, 40000u);
  EXPECT_EQ(s[2].width, 500u);
}

// ---- CSV ------------------------------------------------------------------------------------

TEST(Csv, FirstSeenClassIds) {
  std::istringstream in("1,2,a\n3,4,b\n5,6,a\n");
  const auto ds = load_csv(in);
  ASSERT_EQ(ds.samples.size(), 3u);
  EXPECT_EQ(ds.dim, 2u);
  EXPECT_EQ(*ds.samples[0].label(), 0);
  EXPECT_EQ(*ds.samples[1].label(), 1);
  EXPECT_EQ(*ds.samples[2].label(), 0);
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.samples[2].index(), 2u);
}

TEST(Csv, MissingCellNamesTheRow) {
  std::istringstream in("1,2,a\n3,b\n5,6,a\n");
  try {
    load_csv(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(Csv, RejectsNonNumericAndEmpty) {
  std::istringstream bad("1,x,a\n");
  EXPECT_THROW(load_csv(bad), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(load_csv(empty), ParseError);
}

TEST(Csv, HeaderOption) {
  std::istringstream in("f1,f2,label\r\n1,2,up\r\n3,4,down\r\n");
  CsvOptions o;
  o.header = true;
  const auto ds = load_csv(in, o);
  EXPECT_EQ(ds.samples.size(), 2u);
  std::istringstream again("f1,f2,label\n1,2,up\n");
  EXPECT_THROW(load_csv(again), ParseError);
}

TEST(Csv, ElectricityFormatFixture) {
  const auto ds = load_dataset(kFixtures + "/elec_sample.csv");
  EXPECT_EQ(ds.dim, 8u);
  EXPECT_EQ(ds.samples.size(), 6u);
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"UP", "DOWN"}));
  EXPECT_EQ(*ds.samples[5].label(), 1);
}

// ---- ARFF -----------------------------------------------------------------------------------

TEST(Arff, MinimalFile) {
  const auto ds = load_dataset(kFixtures + "/tiny.arff");
  EXPECT_EQ(ds.dim, 1u);
  ASSERT_EQ(ds.samples.size(), 2u);
  EXPECT_EQ(*ds.samples[0].label(), 1);  // declared order: no, yes
  EXPECT_DOUBLE_EQ(ds.samples[1].feature_vector()[0], -1.25);
}

TEST(Arff, NominalFeatureIsOneHot) {
  std::istringstream in(
      "@relation r\n@attribute colour {red,green,blue}\n@attribute v real\n@attribute class {a,b}\n"
      "@data\ngreen,1.5,a\n'blue',2,b\n");
  const auto ds = load_arff(in);
  EXPECT_EQ(ds.dim, 4u);
  EXPECT_EQ(ds.samples[0].feature_vector(), (Vector{0.0, 1.0, 0.0, 1.5}));
  EXPECT_EQ(ds.samples[1].feature_vector(), (Vector{0.0, 0.0, 1.0, 2.0}));
}

TEST(Arff, RejectsUnsupportedInput) {
  std::istringstream sparse("@relation r\n@attribute x numeric\n@attribute class {a,b}\n@data\n{0 1.0, 1 a}\n");
  EXPECT_THROW(load_arff(sparse), ParseError);
  std::istringstream str("@relation r\n@attribute s string\n@attribute class {a,b}\n@data\nfoo,a\n");
  EXPECT_THROW(load_arff(str), ParseError);
  std::istringstream date("@relation r\n@attribute d date\n@attribute class {a,b}\n@data\n");
  EXPECT_THROW(load_arff(date), ParseError);
  std::istringstream no_data("@relation r\n@attribute x numeric\n@attribute class {a,b}\n");
  EXPECT_THROW(load_arff(no_data), ParseError);
  std::istringstream garbage("@relation r\n@attribute x\n");
  EXPECT_THROW(load_arff(garbage), ParseError);
}
