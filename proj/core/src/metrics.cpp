#include "pwcn/metrics.hpp"

#include <cstdio>
#include <sstream>

#include "pwcn/error.hpp"

namespace pwcn::metrics {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::string class_label(std::span<const std::string> names, std::size_t c) {
  return c < names.size() ? names[c] : "class" + std::to_string(c);
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

EvalReport report_from_confusion(const ConfusionMatrix& confusion) {
  const std::size_t k = confusion.size();
  if (k == 0) throw ArgumentError("empty confusion matrix");
  for (const auto& row : confusion) {
    if (row.size() != k) throw ArgumentError("confusion matrix is not square");
  }

  EvalReport report;
  report.confusion = confusion;
  std::size_t correct = 0;
  std::vector<std::size_t> predicted(k, 0);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t p = 0; p < k; ++p) {
      report.total += confusion[g][p];
      predicted[p] += confusion[g][p];
    }
    correct += confusion[g][g];
  }
  report.accuracy = safe_div(static_cast<double>(correct),
                             static_cast<double>(report.total));

  double f1_sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    ClassScores s;
    for (std::size_t p = 0; p < k; ++p) s.support += confusion[c][p];
    const double tp = static_cast<double>(confusion[c][c]);
    s.precision = safe_div(tp, static_cast<double>(predicted[c]));
    s.recall = safe_div(tp, static_cast<double>(s.support));
    s.f1 = safe_div(2.0 * s.precision * s.recall, s.precision + s.recall);
    f1_sum += s.f1;
    report.per_class.push_back(s);
  }
  report.macro_f1 = f1_sum / static_cast<double>(k);
  return report;
}

ConfusionMatrix confusion_matrix(std::span<const int> gold,
                                 std::span<const int> predicted,
                                 int num_classes) {
  if (gold.size() != predicted.size()) {
    throw ArgumentError("gold and predicted label counts differ");
  }
  if (num_classes < 1) throw ArgumentError("need at least one class");
  ConfusionMatrix m(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] < 0 || gold[i] >= num_classes || predicted[i] < 0 ||
        predicted[i] >= num_classes) {
      throw ArgumentError("label out of range");
    }
    ++m[gold[i]][predicted[i]];
  }
  return m;
}

EvalReport evaluate_predictions(std::span<const int> gold,
                                std::span<const int> predicted,
                                int num_classes) {
  return report_from_confusion(confusion_matrix(gold, predicted, num_classes));
}

std::string format_report(const EvalReport& report,
                          std::span<const std::string> class_names) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "accuracy  %.4f   macro-F1  %.4f   (n=%zu)\n",
                report.accuracy, report.macro_f1, report.total);
  out << line;
  std::snprintf(line, sizeof(line), "%-10s %9s %9s %9s %8s\n", "class",
                "precision", "recall", "f1", "support");
  out << line;
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& s = report.per_class[c];
    std::snprintf(line, sizeof(line), "%-10s %9.4f %9.4f %9.4f %8zu\n",
                  class_label(class_names, c).c_str(), s.precision, s.recall,
                  s.f1, s.support);
    out << line;
  }
  out << "confusion (rows = gold):\n";
  for (std::size_t g = 0; g < report.confusion.size(); ++g) {
    std::snprintf(line, sizeof(line), "%-10s", class_label(class_names, g).c_str());
    out << line;
    for (std::size_t v : report.confusion[g]) {
      std::snprintf(line, sizeof(line), " %8zu", v);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

std::string format_report_tsv(const EvalReport& report,
                              std::span<const std::string> class_names) {
  std::ostringstream out;
  out << "accuracy\t" << fixed(report.accuracy, 6) << '\n';
  out << "macro_f1\t" << fixed(report.macro_f1, 6) << '\n';
  out << "total\t" << report.total << '\n';
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const std::string name = class_label(class_names, c);
    const auto& s = report.per_class[c];
    out << name << ".precision\t" << fixed(s.precision, 6) << '\n';
    out << name << ".recall\t" << fixed(s.recall, 6) << '\n';
    out << name << ".f1\t" << fixed(s.f1, 6) << '\n';
    out << name << ".support\t" << s.support << '\n';
  }
  for (std::size_t g = 0; g < report.confusion.size(); ++g) {
    for (std::size_t p = 0; p < report.confusion[g].size(); ++p) {
      out << "confusion." << class_label(class_names, g) << '.'
          << class_label(class_names, p) << '\t' << report.confusion[g][p]
          << '\n';
    }
  }
  return out.str();
}

}  // namespace pwcn::metrics
