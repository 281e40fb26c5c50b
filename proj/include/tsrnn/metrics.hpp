#pragma once

#include <string>
#include <vector>

#include "tsrnn/types.hpp"

namespace tsrnn {

struct EvalReport {
    double accuracy = 0.0;
    std::vector<double> per_class_accuracy;
    std::vector<std::vector<long>> confusion;  // [true][predicted]
    std::vector<double> precision, recall, f1;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
};

// Confusion matrix plus macro-averaged precision/recall/F1; 0/0 ratios are 0.
EvalReport evaluate(const std::vector<int>& predictions, const std::vector<int>& labels,
                    int class_count);

void write_confusion_csv(const EvalReport& report, const std::string& path);
void write_metrics_csv(const EvalReport& report, const std::string& path,
                       const std::vector<std::string>& class_names = {});
void write_lambda_sweep_csv(const std::vector<double>& lambda_grid,
                            const std::vector<double>& accuracies, const std::string& path);

}  // namespace tsrnn
