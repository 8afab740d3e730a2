#include <gtest/gtest.h>

#include "pwcn/error.hpp"
#include "pwcn/metrics.hpp"

namespace pwcn::metrics {
namespace {

// Hand-computed reference values, kept as exact fractions.
struct Fixture {
  ConfusionMatrix confusion;
  double accuracy;
  std::vector<double> f1;
  double macro_f1;
};

std::vector<Fixture> fixtures() {
  return {
      // P = [2/3, 1, 0], R = [1, 1/2, 0]
      {{{2, 0, 0}, {1, 1, 0}, {0, 0, 0}}, 0.75, {0.8, 2.0 / 3.0, 0.0},
       (0.8 + 2.0 / 3.0) / 3.0},
      {{{5, 0, 0}, {0, 3, 0}, {0, 0, 2}}, 1.0, {1, 1, 1}, 1.0},
      // every prediction is class 0
      {{{4, 0, 0}, {3, 0, 0}, {3, 0, 0}}, 0.4, {4.0 / 7.0, 0, 0}, 4.0 / 21.0},
      // P = [3/5, 2/4, 1/2], R = [3/4, 2/4, 1/3]
      {{{3, 1, 0}, {1, 2, 1}, {1, 1, 1}}, 6.0 / 11.0, {2.0 / 3.0, 0.5, 0.4},
       (2.0 / 3.0 + 0.5 + 0.4) / 3.0},
      // nothing right
      {{{0, 2, 0}, {0, 0, 2}, {2, 0, 0}}, 0.0, {0, 0, 0}, 0.0},
      // P = [10/12, 5/10, 8/9], R = [10/12, 5/8, 8/11]
      {{{10, 2, 0}, {2, 5, 1}, {0, 3, 8}}, 23.0 / 31.0,
       {10.0 / 12.0, 5.0 / 9.0, 0.8}, (10.0 / 12.0 + 5.0 / 9.0 + 0.8) / 3.0},
  };
}

TEST(Metrics, FixtureConfusionMatrices) {
  for (const auto& f : fixtures()) {
    const auto r = report_from_confusion(f.confusion);
    EXPECT_NEAR(r.accuracy, f.accuracy, 1e-9);
    EXPECT_NEAR(r.macro_f1, f.macro_f1, 1e-9);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(r.per_class[c].f1, f.f1[c], 1e-9);
  }
}

TEST(Metrics, RoundedFixtureValues) {
  const auto r = report_from_confusion({{2, 0, 0}, {1, 1, 0}, {0, 0, 0}});
  EXPECT_NEAR(r.per_class[1].f1, 0.6667, 5e-5);
  EXPECT_NEAR(r.macro_f1, 0.4889, 5e-5);
  EXPECT_EQ(r.per_class[0].support, 2u);
  EXPECT_EQ(r.per_class[2].support, 0u);
  EXPECT_EQ(r.total, 4u);
}

TEST(Metrics, PredictionsBuildConfusion) {
  const std::vector<int> gold{0, 0, 1, 1};
  const std::vector<int> pred{0, 0, 0, 1};
  const auto r = evaluate_predictions(gold, pred, 3);
  EXPECT_EQ(r.confusion, (ConfusionMatrix{{2, 0, 0}, {1, 1, 0}, {0, 0, 0}}));
  EXPECT_DOUBLE_EQ(r.accuracy, 0.75);
}

TEST(Metrics, ConfusionSumsToTotalAndAccuracyIsTrace) {
  std::vector<int> gold, pred;
  for (int i = 0; i < 97; ++i) {
    gold.push_back((i * 7) % 3);
    pred.push_back((i * 5 + i / 4) % 3);
  }
  const auto r = evaluate_predictions(gold, pred, 3);
  std::size_t sum = 0, trace = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t p = 0; p < 3; ++p) sum += r.confusion[g][p];
    trace += r.confusion[g][g];
  }
  EXPECT_EQ(sum, 97u);
  EXPECT_DOUBLE_EQ(r.accuracy, static_cast<double>(trace) / 97.0);
}

TEST(Metrics, Errors) {
  EXPECT_THROW(report_from_confusion({}), ArgumentError);
  EXPECT_THROW(report_from_confusion({{1, 2}, {3}}), ArgumentError);
  const std::vector<int> a{0, 1}, b{0}, bad{0, 3};
  EXPECT_THROW(evaluate_predictions(a, b, 3), ArgumentError);
  EXPECT_THROW(evaluate_predictions(a, bad, 3), ArgumentError);
}

TEST(Metrics, TsvHasAccuracyAndMacroF1) {
  const auto r = report_from_confusion({{2, 0, 0}, {1, 1, 0}, {0, 0, 0}});
  const std::vector<std::string> names{"negative", "neutral", "positive"};
  const auto tsv = format_report_tsv(r, names);
  EXPECT_NE(tsv.find("accuracy\t0.75"), std::string::npos) << tsv;
  EXPECT_NE(tsv.find("macro_f1\t"), std::string::npos);
  const auto text = format_report(r, names);
  EXPECT_NE(text.find("neutral"), std::string::npos);
}

}  // namespace
}  // namespace pwcn::metrics
