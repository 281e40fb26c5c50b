#include "tsrnn/metrics.hpp"

#include <cstdio>
#include <fstream>

namespace tsrnn {

EvalReport evaluate(const std::vector<int>& predictions, const std::vector<int>& labels,
                    int class_count) {
    if (predictions.size() != labels.size())
        throw InvalidInputError("evaluate: prediction/label length mismatch");
    if (class_count < 1) throw InvalidInputError("evaluate: class_count must be positive");

    EvalReport r;
    r.confusion.assign(class_count, std::vector<long>(class_count, 0));
    long correct = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
        const int t = labels[i], p = predictions[i];
        if (t < 0 || t >= class_count || p < 0 || p >= class_count)
            throw InvalidInputError("evaluate: class index out of range");
        ++r.confusion[t][p];
        if (t == p) ++correct;
    }
    r.accuracy = labels.empty() ? 0.0
                                : static_cast<double>(correct) / static_cast<double>(labels.size());

    r.per_class_accuracy.resize(class_count);
    r.precision.resize(class_count);
    r.recall.resize(class_count);
    r.f1.resize(class_count);
    auto ratio = [](long num, long den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    for (int c = 0; c < class_count; ++c) {
        long tp = r.confusion[c][c], row = 0, col = 0;
        for (int k = 0; k < class_count; ++k) {
            row += r.confusion[c][k];
            col += r.confusion[k][c];
        }
        r.per_class_accuracy[c] = ratio(tp, row);
        r.precision[c] = ratio(tp, col);
        r.recall[c] = ratio(tp, row);
        const double pr = r.precision[c] + r.recall[c];
        r.f1[c] = pr == 0.0 ? 0.0 : 2.0 * r.precision[c] * r.recall[c] / pr;
        r.macro_precision += r.precision[c];
        r.macro_recall += r.recall[c];
        r.macro_f1 += r.f1[c];
    }
    r.macro_precision /= class_count;
    r.macro_recall /= class_count;
    r.macro_f1 /= class_count;
    return r;
}

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write CSV: " + path);
    out.precision(17);
    return out;
}

}  // namespace

void write_confusion_csv(const EvalReport& report, const std::string& path) {
    auto out = open_csv(path);
    for (const auto& row : report.confusion) {
        for (size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << "\n";
    }
}

void write_metrics_csv(const EvalReport& report, const std::string& path,
                       const std::vector<std::string>& class_names) {
    auto out = open_csv(path);
    out << "class,precision,recall,f1,accuracy\n";
    for (size_t c = 0; c < report.precision.size(); ++c) {
        const std::string name =
            c < class_names.size() ? class_names[c] : "class" + std::to_string(c);
        out << name << "," << report.precision[c] << "," << report.recall[c] << ","
            << report.f1[c] << "," << report.per_class_accuracy[c] << "\n";
    }
    out << "macro," << report.macro_precision << "," << report.macro_recall << ","
        << report.macro_f1 << "," << report.accuracy << "\n";
}

void write_lambda_sweep_csv(const std::vector<double>& lambda_grid,
                            const std::vector<double>& accuracies, const std::string& path) {
    if (lambda_grid.size() != accuracies.size())
        throw InvalidInputError("lambda sweep: grid/accuracy size mismatch");
    auto out = open_csv(path);
    out << "lambda,accuracy\n";
    char lam[32];
    for (size_t i = 0; i < lambda_grid.size(); ++i) {
        // grid values are round decimals; 10 significant digits absorb the
        // 1-ulp error of forming them by repeated addition
        std::snprintf(lam, sizeof(lam), "%.10g", lambda_grid[i]);
        out << lam << "," << accuracies[i] << "\n";
    }
}

}  // namespace tsrnn
