#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pwcn::metrics {

// rows = gold class, cols = predicted class
using ConfusionMatrix = std::vector<std::vector<std::size_t>>;

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count
};

struct EvalReport {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::size_t total = 0;
  std::vector<ClassScores> per_class;
  ConfusionMatrix confusion;
};

// Macro-F1 is the unweighted mean over every class; a zero denominator in
// precision, recall or F1 yields 0. Throws ArgumentError on a non-square
// or empty matrix.
EvalReport report_from_confusion(const ConfusionMatrix& confusion);

ConfusionMatrix confusion_matrix(std::span<const int> gold,
                                 std::span<const int> predicted,
                                 int num_classes);

EvalReport evaluate_predictions(std::span<const int> gold,
                                std::span<const int> predicted,
                                int num_classes);

// Human-readable table; `class_names` may be empty.
std::string format_report(const EvalReport& report,
                          std::span<const std::string> class_names = {});

// "metric<TAB>value" lines.
std::string format_report_tsv(const EvalReport& report,
                              std::span<const std::string> class_names = {});

}  // namespace pwcn::metrics
