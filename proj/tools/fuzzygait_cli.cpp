// Command-line front end: extract features from raw recordings, train and
// update models, run the evaluation experiments, export interpretable rule
// reports. All file outputs are written atomically (temp file + rename).

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzygait/fuzzygait.hpp"

namespace fg = fuzzygait;

namespace {

std::set<fg::Dataset> parse_dataset_filter(const std::string& spec) {
  std::set<fg::Dataset> filter;
  if (spec.empty()) return filter;
  std::stringstream ss(spec);
  std::string tag;
  while (std::getline(ss, tag, ',')) filter.insert(fg::dataset_from_string(tag));
  return filter;
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(fg::parse_double_strict(item));
  return out;
}

std::string pct(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

void print_metrics_block(std::ostream& os, const fg::MetricsReport& m) {
  os << "Samples    " << m.total() << "  (tp=" << m.tp << " tn=" << m.tn << " fp=" << m.fp
     << " fn=" << m.fn << ")\n";
  os << "Accuracy   " << pct(m.accuracy) << "\n";
  os << "Precision  " << pct(m.precision) << (m.precision_defined ? "" : "  (undefined: no positive predictions)") << "\n";
  os << "Recall     " << pct(m.recall) << (m.recall_defined ? "" : "  (undefined: no positive samples)") << "\n";
  os << "F1 Score   " << pct(m.f1) << (m.f1_defined ? "" : "  (undefined)") << "\n";
  if (m.tn + m.fp > 0 && m.tp + m.fn > 0) {
    const double h_total = static_cast<double>(m.tn + m.fp);
    const double p_total = static_cast<double>(m.tp + m.fn);
    os << "Confusion matrix (% of true class):\n";
    os << "              H        P\n";
    os << "  True H  " << pct(static_cast<double>(m.tn) / h_total) << "    "
       << pct(static_cast<double>(m.fp) / h_total) << "\n";
    os << "  True P  " << pct(static_cast<double>(m.fn) / p_total) << "    "
       << pct(static_cast<double>(m.tp) / p_total) << "\n";
  }
}

std::string metrics_csv(const fg::MetricsReport& m) {
  std::string out = "metric,value\n";
  out += "tp," + std::to_string(m.tp) + "\n";
  out += "tn," + std::to_string(m.tn) + "\n";
  out += "fp," + std::to_string(m.fp) + "\n";
  out += "fn," + std::to_string(m.fn) + "\n";
  out += "accuracy," + fg::format_double(100.0 * m.accuracy) + "\n";
  out += "precision," + fg::format_double(100.0 * m.precision) + "\n";
  out += "recall," + fg::format_double(100.0 * m.recall) + "\n";
  out += "f1," + fg::format_double(100.0 * m.f1) + "\n";
  return out;
}

std::vector<fg::FeatureRow> load_rows(const std::string& path, const std::string& datasets) {
  auto rows = fg::filter_rows(fg::read_feature_csv(path), parse_dataset_filter(datasets));
  if (rows.empty()) throw fg::DataError("no feature rows left after dataset filtering");
  return rows;
}

// Every run logs its fully resolved configuration so any output can be
// reproduced from the log line alone.
void log_config(const std::string& subcommand, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::cerr << "config: subcommand=" << subcommand;
  for (const auto& [k, v] : kv) std::cerr << " " << k << "=" << (v.empty() ? "-" : v);
  std::cerr << "\n";
}

struct FcmOptions {
  double m = 2.0;
  double tol = 1e-5;
  std::size_t max_iter = 300;

  void attach(CLI::App* cmd) {
    cmd->add_option("--fcm-m", m, "Fuzzy partition exponent (> 1)");
    cmd->add_option("--fcm-tol", tol, "Convergence tolerance on center movement");
    cmd->add_option("--fcm-max-iter", max_iter, "Iteration cap for the clustering");
  }
  fg::FcmConfig to_config(std::uint64_t seed) const {
    fg::FcmConfig cfg;
    cfg.fuzzifier = m;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval type-2 fuzzy gait classifier for Parkinson's screening"};
  app.require_subcommand(1);

  // ---- extract ----
  struct {
    std::string data_dir, out, raw_out, labels, datasets;
    double trim_s = 20.0;
    int median_window = 10;
    double turnaround_k = 3.0;
    bool no_turnaround = false;
    double swing_threshold = 20.0;
  } ex;
  auto* extract = app.add_subcommand("extract", "Parse recordings and emit the clinical feature CSV");
  extract->add_option("--data-dir", ex.data_dir, "Directory with 19-column vGRF text files")->required();
  extract->add_option("--out", ex.out, "Output feature CSV")->required();
  extract->add_option("--raw-out", ex.raw_out, "Optional sidecar CSV with the unreduced z1..z14");
  extract->add_option("--labels", ex.labels, "Optional subject_id,cohort,dataset CSV overriding filename cohorts");
  extract->add_option("--datasets", ex.datasets, "Comma list of dataset tags to keep (Ga,Ju,Si)");
  extract->add_option("--trim-s", ex.trim_s, "Seconds trimmed from each end");
  extract->add_option("--median-window", ex.median_window, "Median filter window in samples");
  extract->add_option("--turnaround-k", ex.turnaround_k, "MAD factor for turnaround stride excision");
  extract->add_flag("--no-turnaround-removal", ex.no_turnaround, "Skip turnaround excision");
  extract->add_option("--swing-threshold-n", ex.swing_threshold, "Force threshold separating swing from stance");
  extract->callback([&] {
    log_config("extract", {{"data-dir", ex.data_dir},
                           {"out", ex.out},
                           {"raw-out", ex.raw_out},
                           {"labels", ex.labels},
                           {"datasets", ex.datasets},
                           {"trim-s", fg::format_double(ex.trim_s)},
                           {"median-window", std::to_string(ex.median_window)},
                           {"turnaround-k", fg::format_double(ex.turnaround_k)},
                           {"turnaround-removal", ex.no_turnaround ? "off" : "on"},
                           {"swing-threshold-n", fg::format_double(ex.swing_threshold)}});
    fg::LabelTable labels;
    if (!ex.labels.empty()) labels = fg::load_label_csv(ex.labels);
    const auto recordings = fg::load_dataset(ex.data_dir, parse_dataset_filter(ex.datasets),
                                             ex.labels.empty() ? nullptr : &labels, &std::cerr);
    fg::PreprocessConfig pre;
    pre.trim_s = ex.trim_s;
    pre.median_window = ex.median_window;
    pre.turnaround_mad_k = ex.turnaround_k;
    pre.remove_turnarounds = !ex.no_turnaround;

    std::vector<fg::FeatureRow> rows;
    std::vector<std::pair<fg::FeatureRow, fg::RawFeatures>> raw_rows;
    for (const auto& rec : recordings) {
      try {
        const auto res = fg::extract_features(rec, pre, ex.swing_threshold);
        rows.push_back(res.row);
        raw_rows.emplace_back(res.row, res.raw);
      } catch (const fg::Error& e) {
        std::cerr << "warning: skipping " << rec.subject_id << " walk: " << e.what() << "\n";
      }
    }
    if (rows.empty()) throw fg::DataError("feature extraction failed for every recording");
    fg::write_file_atomic(ex.out, fg::write_feature_csv(rows));
    if (!ex.raw_out.empty()) fg::write_file_atomic(ex.raw_out, fg::write_raw_feature_csv(raw_rows));
    std::cerr << "extracted " << rows.size() << " of " << recordings.size() << " recordings\n";
  });

  // ---- train ----
  struct {
    std::string features, out, datasets;
    std::size_t rules = 0;
    double sigma1 = 0.01, sigma2 = 0.1;
    std::uint64_t seed = 42;
    FcmOptions fcm;
  } tr;
  auto* train = app.add_subcommand("train", "Learn a rule base from a feature CSV");
  train->add_option("--features", tr.features, "Feature CSV")->required();
  train->add_option("--out", tr.out, "Output model JSON")->required();
  train->add_option("--rules", tr.rules, "Number of fuzzy rules")->required();
  train->add_option("--sigma1", tr.sigma1, "Lower membership width");
  train->add_option("--sigma2", tr.sigma2, "Upper membership width");
  train->add_option("--seed", tr.seed, "Clustering seed");
  train->add_option("--datasets", tr.datasets, "Comma list of dataset tags to keep");
  tr.fcm.attach(train);
  train->callback([&] {
    log_config("train", {{"features", tr.features},
                         {"out", tr.out},
                         {"rules", std::to_string(tr.rules)},
                         {"sigma1", fg::format_double(tr.sigma1)},
                         {"sigma2", fg::format_double(tr.sigma2)},
                         {"seed", std::to_string(tr.seed)},
                         {"datasets", tr.datasets},
                         {"fcm-m", fg::format_double(tr.fcm.m)},
                         {"fcm-tol", fg::format_double(tr.fcm.tol)},
                         {"fcm-max-iter", std::to_string(tr.fcm.max_iter)}});
    const auto rows = load_rows(tr.features, tr.datasets);
    fg::BatchConfig cfg;
    cfg.rule_count = tr.rules;
    cfg.sigma1 = tr.sigma1;
    cfg.sigma2 = tr.sigma2;
    cfg.fcm = tr.fcm.to_config(tr.seed);
    const fg::RuleBase rb = fg::train_model(rows, cfg, &std::cerr);
    fg::save_rule_base(rb, tr.out);
    std::cerr << "trained " << rb.rules.size() << " rules from " << rows.size() << " samples\n";
  });

  // ---- predict ----
  struct {
    std::string model, features, out, explain_out, datasets;
  } pr;
  auto* predict = app.add_subcommand("predict", "Classify feature rows with a trained model");
  predict->add_option("--model", pr.model, "Model JSON")->required();
  predict->add_option("--features", pr.features, "Feature CSV")->required();
  predict->add_option("--out", pr.out, "Predictions CSV (stdout when omitted)");
  predict->add_option("--explain", pr.explain_out, "Write per-sample rule-ranking explanations to this JSON file");
  predict->add_option("--datasets", pr.datasets, "Comma list of dataset tags to keep");
  predict->callback([&] {
    log_config("predict", {{"model", pr.model},
                           {"features", pr.features},
                           {"out", pr.out},
                           {"explain", pr.explain_out},
                           {"datasets", pr.datasets}});
    const fg::RuleBase rb = fg::load_rule_base(pr.model);
    const auto rows = load_rows(pr.features, pr.datasets);

    std::string csv = "subject_id,dataset,label,y_lower,y_upper,y,decision,no_coverage\n";
    nlohmann::json explanations = nlohmann::json::array();
    std::vector<int> truths, preds;
    for (const auto& row : rows) {
      const fg::FeatureVector fv = fg::normalize_row(row, rb.normalization);
      const fg::InferenceTrace t = fg::infer(fv.x, rb);
      csv += row.subject_id + "," + fg::to_string(row.dataset) + "," + std::to_string(row.label) +
             "," + fg::format_double(t.y_lower) + "," + fg::format_double(t.y_upper) + "," +
             fg::format_double(t.y) + "," + fg::to_string(t.decision) + "," +
             (t.no_coverage ? "1" : "0") + "\n";
      truths.push_back(row.label);
      preds.push_back(fg::decision_sign(t.decision));
      if (!pr.explain_out.empty()) {
        nlohmann::json j = fg::explanation_to_json(fg::explain(fv.x, rb));
        j["subject_id"] = row.subject_id;
        j["dataset"] = fg::to_string(row.dataset);
        explanations.push_back(std::move(j));
      }
    }
    if (pr.out.empty()) {
      std::cout << csv;
    } else {
      fg::write_file_atomic(pr.out, csv);
    }
    if (!pr.explain_out.empty()) fg::write_file_atomic(pr.explain_out, explanations.dump(2) + "\n");
    print_metrics_block(std::cerr, fg::compute_metrics(truths, preds));
  });

  // ---- crossval ----
  struct {
    std::string features, out, datasets, group_by = "subject";
    std::size_t rules = 0;
    double sigma1 = 0.01, sigma2 = 0.1;
    std::uint64_t seed = 42;
    FcmOptions fcm;
  } cv;
  auto* crossval = app.add_subcommand("crossval", "Leave-one-group-out cross-validation");
  crossval->add_option("--features", cv.features, "Feature CSV")->required();
  crossval->add_option("--rules", cv.rules, "Number of fuzzy rules")->required();
  crossval->add_option("--group-by", cv.group_by, "Held-out unit: subject or sample");
  crossval->add_option("--seed", cv.seed, "Clustering seed");
  crossval->add_option("--sigma1", cv.sigma1, "Lower membership width");
  crossval->add_option("--sigma2", cv.sigma2, "Upper membership width");
  crossval->add_option("--datasets", cv.datasets, "Comma list of dataset tags to keep");
  crossval->add_option("--out", cv.out, "Optional metrics CSV");
  cv.fcm.attach(crossval);
  crossval->callback([&] {
    log_config("crossval", {{"features", cv.features},
                            {"rules", std::to_string(cv.rules)},
                            {"group-by", cv.group_by},
                            {"seed", std::to_string(cv.seed)},
                            {"sigma1", fg::format_double(cv.sigma1)},
                            {"sigma2", fg::format_double(cv.sigma2)},
                            {"datasets", cv.datasets},
                            {"out", cv.out},
                            {"fcm-m", fg::format_double(cv.fcm.m)},
                            {"fcm-tol", fg::format_double(cv.fcm.tol)},
                            {"fcm-max-iter", std::to_string(cv.fcm.max_iter)}});
    const auto rows = load_rows(cv.features, cv.datasets);
    fg::BatchConfig cfg;
    cfg.rule_count = cv.rules;
    cfg.sigma1 = cv.sigma1;
    cfg.sigma2 = cv.sigma2;
    cfg.fcm = cv.fcm.to_config(cv.seed);
    const auto res = fg::loocv(rows, cfg, fg::grouping_from_string(cv.group_by), &std::cerr);
    print_metrics_block(std::cout, res.metrics);
    if (!cv.out.empty()) fg::write_file_atomic(cv.out, metrics_csv(res.metrics));
  });

  // ---- update ----
  struct {
    std::string model, features, out, log, datasets, phi = "mean";
    double theta = 0.1, epsilon = 1.0;
  } up;
  auto* update = app.add_subcommand("update", "Stream labeled samples through the online learner");
  update->add_option("--model", up.model, "Input model JSON")->required();
  update->add_option("--features", up.features, "Feature CSV with new labeled samples")->required();
  update->add_option("--out", up.out, "Output model JSON")->required();
  update->add_option("--theta", up.theta, "Coverage threshold below which a rule is added");
  update->add_option("--epsilon", up.epsilon, "Width scale for added rules");
  update->add_option("--phi", up.phi, "Firing strength used for coverage: mean, lower or upper");
  update->add_option("--log", up.log, "Optional change-log CSV (one row per added rule)");
  update->add_option("--datasets", up.datasets, "Comma list of dataset tags to keep");
  update->callback([&] {
    log_config("update", {{"model", up.model},
                          {"features", up.features},
                          {"out", up.out},
                          {"theta", fg::format_double(up.theta)},
                          {"epsilon", fg::format_double(up.epsilon)},
                          {"phi", up.phi},
                          {"log", up.log},
                          {"datasets", up.datasets}});
    fg::RuleBase rb = fg::load_rule_base(up.model);
    const auto rows = load_rows(up.features, up.datasets);
    fg::OnlineConfig cfg;
    cfg.theta_c = up.theta;
    cfg.epsilon = up.epsilon;
    cfg.phi = fg::phi_mode_from_string(up.phi);

    std::string changelog = "subject_id,dataset,coverage,new_rule_index\n";
    std::size_t correct = 0, covered = 0, added = 0;
    for (const auto& row : rows) {
      const fg::FeatureVector fv = fg::normalize_row(row, rb.normalization);
      const fg::UpdateOutcome outcome = fg::online_update(rb, fv, cfg);
      switch (outcome.kind) {
        case fg::UpdateKind::NoChangeCorrect: ++correct; break;
        case fg::UpdateKind::NoChangeCovered: ++covered; break;
        case fg::UpdateKind::RuleAdded:
          ++added;
          changelog += row.subject_id + "," + fg::to_string(row.dataset) + "," +
                       fg::format_double(*outcome.coverage) + "," +
                       std::to_string(*outcome.rule_index + 1) + "\n";
          break;
      }
    }
    fg::save_rule_base(rb, up.out);
    if (!up.log.empty()) fg::write_file_atomic(up.log, changelog);
    std::cerr << "processed " << rows.size() << " samples: " << correct << " correct, " << covered
              << " misclassified-but-covered, " << added << " rules added (rule base now "
              << rb.rules.size() << ")\n";
  });

  // ---- sweep-rules ----
  struct {
    std::string features, out, summary_out, datasets, r_list, group_by = "subject";
    std::size_t r_min = 1, r_max = 15, runs = 10;
    std::uint64_t seed = 42;
    double sigma1 = 0.01, sigma2 = 0.1;
    FcmOptions fcm;
  } sw;
  auto* sweep = app.add_subcommand("sweep-rules", "Cross-validated F1 across rule counts");
  sweep->add_option("--features", sw.features, "Feature CSV")->required();
  sweep->add_option("--r-min", sw.r_min, "Smallest rule count");
  sweep->add_option("--r-max", sw.r_max, "Largest rule count");
  sweep->add_option("--r-list", sw.r_list, "Explicit comma list of rule counts (overrides the range)");
  sweep->add_option("--runs", sw.runs, "Independent seeded runs per rule count");
  sweep->add_option("--seed", sw.seed, "Base seed (run s uses seed+s)");
  sweep->add_option("--sigma1", sw.sigma1, "Lower membership width");
  sweep->add_option("--sigma2", sw.sigma2, "Upper membership width");
  sweep->add_option("--group-by", sw.group_by, "Held-out unit: subject or sample");
  sweep->add_option("--datasets", sw.datasets, "Comma list of dataset tags to keep");
  sweep->add_option("--out", sw.out, "Long-format CSV: rules,seed,f1")->required();
  sweep->add_option("--summary-out", sw.summary_out, "Optional summary CSV: rules,f1_mean,f1_std");
  sw.fcm.attach(sweep);
  sweep->callback([&] {
    log_config("sweep-rules", {{"features", sw.features},
                               {"r-min", std::to_string(sw.r_min)},
                               {"r-max", std::to_string(sw.r_max)},
                               {"r-list", sw.r_list},
                               {"runs", std::to_string(sw.runs)},
                               {"seed", std::to_string(sw.seed)},
                               {"sigma1", fg::format_double(sw.sigma1)},
                               {"sigma2", fg::format_double(sw.sigma2)},
                               {"group-by", sw.group_by},
                               {"datasets", sw.datasets},
                               {"out", sw.out},
                               {"summary-out", sw.summary_out}});
    const auto rows = load_rows(sw.features, sw.datasets);
    std::vector<std::size_t> rule_counts;
    if (!sw.r_list.empty()) {
      for (double v : parse_double_list(sw.r_list)) rule_counts.push_back(static_cast<std::size_t>(v));
    } else {
      if (sw.r_min < 1 || sw.r_max < sw.r_min) throw fg::ConfigError("invalid rule-count range");
      for (std::size_t r = sw.r_min; r <= sw.r_max; ++r) rule_counts.push_back(r);
    }
    fg::BatchConfig cfg;
    cfg.sigma1 = sw.sigma1;
    cfg.sigma2 = sw.sigma2;
    cfg.fcm = sw.fcm.to_config(sw.seed);
    const auto res = fg::sweep_rule_count(rows, rule_counts, sw.runs, cfg,
                                          fg::grouping_from_string(sw.group_by), &std::cerr);
    std::string long_csv = "rules,seed,f1\n";
    std::string summary = "rules,f1_mean,f1_std\n";
    for (const auto& row : res.rows) {
      for (std::size_t s = 0; s < row.f1_per_seed.size(); ++s)
        long_csv += std::to_string(row.rule_count) + "," + std::to_string(sw.seed + s) + "," +
                    fg::format_double(100.0 * row.f1_per_seed[s]) + "\n";
      summary += std::to_string(row.rule_count) + "," + fg::format_double(100.0 * row.f1_mean) +
                 "," + fg::format_double(100.0 * row.f1_std) + "\n";
    }
    fg::write_file_atomic(sw.out, long_csv);
    if (!sw.summary_out.empty()) fg::write_file_atomic(sw.summary_out, summary);
    std::cout << "recommended rules: " << res.recommended_rule_count << "\n";
  });

  // ---- noise-exp ----
  struct {
    std::string features, out, datasets, noise = "0.1,0.3", group_by = "subject";
    std::size_t rules = 10;
    std::uint64_t seed = 42;
    double sigma1 = 0.01, sigma2 = 0.1;
    FcmOptions fcm;
  } ne;
  auto* noise = app.add_subcommand("noise-exp", "IT2-vs-T1 robustness under Gaussian feature noise");
  noise->add_option("--features", ne.features, "Feature CSV")->required();
  noise->add_option("--rules", ne.rules, "Number of fuzzy rules");
  noise->add_option("--noise", ne.noise, "Comma list of noise widths");
  noise->add_option("--seed", ne.seed, "Seed for training and noise streams");
  noise->add_option("--sigma1", ne.sigma1, "Lower membership width");
  noise->add_option("--sigma2", ne.sigma2, "Upper membership width");
  noise->add_option("--group-by", ne.group_by, "Held-out unit: subject or sample");
  noise->add_option("--datasets", ne.datasets, "Comma list of dataset tags to keep");
  noise->add_option("--out", ne.out, "Output CSV")->required();
  ne.fcm.attach(noise);
  noise->callback([&] {
    log_config("noise-exp", {{"features", ne.features},
                             {"rules", std::to_string(ne.rules)},
                             {"noise", ne.noise},
                             {"seed", std::to_string(ne.seed)},
                             {"sigma1", fg::format_double(ne.sigma1)},
                             {"sigma2", fg::format_double(ne.sigma2)},
                             {"group-by", ne.group_by},
                             {"datasets", ne.datasets},
                             {"out", ne.out}});
    const auto rows = load_rows(ne.features, ne.datasets);
    fg::BatchConfig cfg;
    cfg.rule_count = ne.rules;
    cfg.sigma1 = ne.sigma1;
    cfg.sigma2 = ne.sigma2;
    cfg.fcm = ne.fcm.to_config(ne.seed);
    const auto res = fg::noise_experiment(rows, cfg, parse_double_list(ne.noise),
                                          fg::grouping_from_string(ne.group_by), &std::cerr);
    std::string csv = "noise,dataset,variant,tp,tn,fp,fn,accuracy,precision,recall,f1\n";
    for (const auto& c : res.cells) {
      csv += fg::format_double(c.noise_sigma) + "," +
             (c.dataset ? fg::to_string(*c.dataset) : std::string("all")) + "," +
             fg::to_string(c.variant) + "," + std::to_string(c.metrics.tp) + "," +
             std::to_string(c.metrics.tn) + "," + std::to_string(c.metrics.fp) + "," +
             std::to_string(c.metrics.fn) + "," + fg::format_double(100.0 * c.metrics.accuracy) +
             "," + fg::format_double(100.0 * c.metrics.precision) + "," +
             fg::format_double(100.0 * c.metrics.recall) + "," +
             fg::format_double(100.0 * c.metrics.f1) + "\n";
    }
    fg::write_file_atomic(ne.out, csv);
  });

  // ---- export-rules ----
  struct {
    std::string model, sets_out, grid_out;
    std::size_t samples = 201;
  } er;
  auto* export_rules = app.add_subcommand("export-rules", "Emit fuzzy-set curves and the rule grid");
  export_rules->add_option("--model", er.model, "Model JSON")->required();
  export_rules->add_option("--sets-out", er.sets_out, "Fuzzy-set curve CSV (feature,rule,x,mu_lower,mu_upper)");
  export_rules->add_option("--grid-out", er.grid_out, "Rule grid CSV (one row per rule)");
  export_rules->add_option("--samples", er.samples, "Points per membership curve");
  export_rules->callback([&] {
    log_config("export-rules", {{"model", er.model},
                                {"sets-out", er.sets_out},
                                {"grid-out", er.grid_out},
                                {"samples", std::to_string(er.samples)}});
    if (er.sets_out.empty() && er.grid_out.empty())
      throw fg::ConfigError("nothing to export: give --sets-out and/or --grid-out");
    const fg::RuleBase rb = fg::load_rule_base(er.model);
    if (!er.sets_out.empty())
      fg::write_file_atomic(er.sets_out, fg::write_fuzzy_sets_csv(fg::export_fuzzy_sets(rb, er.samples)));
    if (!er.grid_out.empty())
      fg::write_file_atomic(er.grid_out, fg::write_rule_grid_csv(fg::export_rule_grid(rb)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const fg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
